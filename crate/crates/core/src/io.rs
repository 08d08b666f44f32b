//! JSON input files. Every file is hashed as read so reports can name the
//! exact inputs.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cover::{Cover, CoverSeq, Region, RegionSpec};
use crate::error::{Error, Result};
use crate::netting::SigmaDecomposition;
use crate::registry;
use crate::space::{SampledSpace, SpaceFile, SubsetHandle};

pub const BUILTIN_PREFIX: &str = "builtin:";

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Parses `path`; errors name the file and the line/column.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<(T, String)> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let value = serde_json::from_slice(&bytes).map_err(|e| {
        Error::Parse(format!(
            "{}:{}:{}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    Ok((value, digest(&bytes)))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// `builtin:<label>` or a path to a space file.
pub fn load_space(arg: &str, point_cap: usize) -> Result<(SampledSpace, String)> {
    if let Some(label) = arg.strip_prefix(BUILTIN_PREFIX) {
        let space = registry::builtin(label, point_cap)?;
        return Ok((space, arg.to_string()));
    }
    let (file, digest): (SpaceFile, String) = read_json(Path::new(arg))?;
    if file.points.len() > point_cap {
        return Err(Error::Resource(format!(
            "{} points exceed the cap of {point_cap}",
            file.points.len()
        )));
    }
    Ok((SampledSpace::from_file(&file)?, digest))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverFile {
    pub regions: Vec<RegionSpec>,
}

impl CoverFile {
    pub fn from_cover(cover: &Cover) -> Self {
        CoverFile {
            regions: cover.regions.iter().map(Region::to_spec).collect(),
        }
    }

    /// Cover of the whole sample.
    pub fn to_cover(&self, space: &SampledSpace) -> Result<Cover> {
        let regions = self
            .regions
            .iter()
            .map(|r| Region::from_spec(space, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cover::whole(space, regions))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoversFile {
    pub covers: Vec<CoverFile>,
}

impl CoversFile {
    pub fn from_seq(seq: &CoverSeq) -> Self {
        CoversFile {
            covers: seq.covers.iter().map(CoverFile::from_cover).collect(),
        }
    }

    pub fn to_seq(&self, space: &SampledSpace) -> Result<CoverSeq> {
        if self.covers.is_empty() {
            return Err(Error::InvalidInput("cover sequence is empty".into()));
        }
        Ok(CoverSeq::new(
            self.covers
                .iter()
                .map(|c| c.to_cover(space))
                .collect::<Result<Vec<_>>>()?,
        ))
    }
}

/// `chain[n-1]` lists the indices of `X_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainFile {
    pub chain: Vec<Vec<usize>>,
}

impl ChainFile {
    pub fn from_decomposition(d: &SigmaDecomposition) -> Self {
        ChainFile {
            chain: d.chain.iter().map(SubsetHandle::indices).collect(),
        }
    }

    pub fn to_decomposition(&self, space: &SampledSpace) -> Result<SigmaDecomposition> {
        let chain = self
            .chain
            .iter()
            .map(|level| SubsetHandle::from_indices(space.len(), level.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        SigmaDecomposition::from_chain(space, chain)
    }
}

/// `picks[n-1]` lists region indices of cover `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PicksFile {
    pub picks: Vec<Vec<usize>>,
}

/// Per level, the selected balls.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectionsFile {
    pub selections: Vec<Vec<RegionSpec>>,
}

impl SelectionsFile {
    pub fn to_regions(&self, space: &SampledSpace) -> Result<Vec<Vec<Region>>> {
        self.selections
            .iter()
            .map(|sel| sel.iter().map(|r| Region::from_spec(space, r)).collect())
            .collect()
    }
}
