//! Seeded random covers for tests and demos. All values are multiples of
//! 1/1000 so they survive the JSON round trip unchanged.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cover::{covers_check, Cover, CoverSeq, Region};
use crate::error::{Error, Result};
use crate::rational::{q, qi, Q};
use crate::space::SampledSpace;

pub use rand::SeedableRng;

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn milli(k: i64) -> Q {
    q(k, 1000)
}

/// 2 to 6 intervals with cut points in `[0.1, 0.9]` at least 0.15 apart;
/// neighbours overlap by 0.01 to 0.1 around each cut. The outer ends reach
/// past `[0, 1]`.
pub fn random_interval_cover(space: &SampledSpace, rng: &mut InstanceRng) -> Result<Cover> {
    if space.dim() != 1 {
        return Err(Error::InvalidInput(
            "interval covers need a one-dimensional space".into(),
        ));
    }
    let pieces = rng.gen_range(2..=6usize);
    let cuts = loop {
        let mut cuts: Vec<i64> = (0..pieces - 1).map(|_| rng.gen_range(100..=900)).collect();
        cuts.sort_unstable();
        if cuts.windows(2).all(|w| w[1] - w[0] >= 150) {
            break cuts;
        }
    };
    let reach: Vec<(i64, i64)> = cuts
        .iter()
        .map(|_| (rng.gen_range(5..=50), rng.gen_range(5..=50)))
        .collect();
    let mut regions = Vec::with_capacity(pieces);
    for i in 0..pieces {
        let lo = if i == 0 {
            qi(-1)
        } else {
            milli(cuts[i - 1] - reach[i - 1].0)
        };
        let hi = if i + 1 == pieces {
            qi(2)
        } else {
            milli(cuts[i] + reach[i].1)
        };
        regions.push(Region::open_box(space, vec![lo], vec![hi])?);
    }
    let cover = Cover::whole(space, regions);
    cover.validate(space)?;
    Ok(cover)
}

/// Four boxes from one split per axis at `0.4..0.6`, each box reaching
/// `0.2..0.3` past the split.
pub fn random_box_cover(space: &SampledSpace, rng: &mut InstanceRng) -> Result<Cover> {
    let d = space.dim();
    if d != 2 {
        return Err(Error::InvalidInput(
            "box covers need a two-dimensional space".into(),
        ));
    }
    let mut sides: Vec<[(Q, Q); 2]> = Vec::with_capacity(d);
    for _ in 0..d {
        let split = rng.gen_range(400..=600);
        let w = rng.gen_range(200..=300);
        sides.push([(qi(-1), milli(split + w)), (milli(split - w), qi(2))]);
    }
    let mut regions = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            let (x, y) = (&sides[0][a], &sides[1][b]);
            regions.push(Region::open_box(
                space,
                vec![x.0.clone(), y.0.clone()],
                vec![x.1.clone(), y.1.clone()],
            )?);
        }
    }
    let cover = Cover::whole(space, regions);
    cover.validate(space)?;
    Ok(cover)
}

/// Balls of radius `0.1..0.3` at random sample points, topped up until the
/// sample is covered.
pub fn random_ball_cover(space: &SampledSpace, rng: &mut InstanceRng) -> Result<Cover> {
    let mut regions = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let c = rng.gen_range(0..space.len());
        regions.push(Region::ball(space, c, milli(rng.gen_range(100..=300)))?);
    }
    while let Err(p) = covers_check(space, &regions, &space.full()) {
        regions.push(Region::ball(space, p, milli(rng.gen_range(100..=300)))?);
    }
    Ok(Cover::whole(space, regions))
}

/// Covers drawn from the generators that fit the space's dimension.
pub fn random_cover_seq(
    space: &SampledSpace,
    horizon: usize,
    rng: &mut InstanceRng,
) -> Result<CoverSeq> {
    let covers = (0..horizon)
        .map(|_| match (space.dim(), rng.gen_bool(0.5)) {
            (1, true) => random_interval_cover(space, rng),
            (2, true) => random_box_cover(space, rng),
            _ => random_ball_cover(space, rng),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverSeq::new(covers))
}

/// Random sub-lists of each cover; each region is kept with probability `keep`.
pub fn random_picks(covers: &CoverSeq, keep: f64, rng: &mut InstanceRng) -> Vec<Vec<usize>> {
    covers
        .covers
        .iter()
        .map(|c| (0..c.len()).filter(|_| rng.gen_bool(keep)).collect())
        .collect()
}

/// A random permutation of `0..n`.
pub fn shuffled(n: usize, rng: &mut InstanceRng) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}
