//! Disjoint open refinements from shifted brick families.
//!
//! On a `d`-dimensional sample the `d + 1` brick classes are translates of
//! one lattice of open boxes with period `s`: class `c` is shifted by
//! `c * s / (d + 1)` on every axis and each brick is shrunk by `g` on every
//! side. A point is missed by class `c` only if some coordinate lies within
//! `g` of a class-`c` boundary; boundaries of different classes are
//! `s / (d + 1) > 2g` apart, so each axis rules out at most one class and
//! some class keeps the point.
//!
//! Below the sample resolution the lattice cannot be fine enough. There the
//! construction falls back to one class of tiny boxes around sample points
//! ([`Regime::Discrete`]); zero-dimensional Cantor samples use one class of
//! boxes around clusters ([`Regime::Clusters`]).

use std::collections::BTreeSet;

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::cover::{
    covers_check, find_parent, lebesgue_number, Cover, CoverSeq, DisjointFamily, Region,
};
use crate::error::{Error, Result};
use crate::rational::{self, ceil_int, floor_int, qi, Q};
use crate::space::{SampledSpace, SpaceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Bricks,
    Discrete,
    Clusters,
}

/// Tuning shared by every refinement entry point.
#[derive(Clone, Debug)]
pub struct ScOptions {
    /// Required gap between members of one family.
    pub margin: Q,
    /// Allow the sub-resolution fallback instead of failing.
    pub fallback: bool,
}

impl ScOptions {
    pub fn for_space(space: &SampledSpace) -> Self {
        ScOptions {
            margin: space.mesh().clone(),
            fallback: true,
        }
    }

    pub fn strict(space: &SampledSpace) -> Self {
        ScOptions {
            margin: space.mesh().clone(),
            fallback: false,
        }
    }
}

/// Brick layout at one resolution.
#[derive(Clone, Debug, Serialize)]
pub struct BrickGrid {
    pub dim: usize,
    pub regime: Regime,
    /// Lattice period for bricks, box side for the fallbacks.
    #[serde(with = "rational::serde_q")]
    pub cell_side: Q,
    /// Shrink (bricks) or expansion (fallbacks) applied to every box.
    #[serde(with = "rational::serde_q")]
    pub gap: Q,
    /// Per class shift along every axis.
    #[serde(with = "rational::serde_q_vec")]
    pub shifts: Vec<Q>,
    pub classes: Vec<Vec<Region>>,
}

/// Cantor samples and single points need no more than one class.
pub fn zero_dimensional(space: &SampledSpace) -> bool {
    matches!(space.kind(), SpaceKind::Cantor { .. }) || space.len() <= 1
}

/// Number of classes (and covers per block) the construction uses.
pub fn class_count(space: &SampledSpace) -> usize {
    if zero_dimensional(space) {
        1
    } else {
        space.dim() + 1
    }
}

/// Sample resolution: the smallest Chebyshev gap as a rational.
fn axis_unit(space: &SampledSpace) -> Q {
    Q::new(space.min_axis_separation().into(), space.scale().into())
}

/// Brick lattice with period `s < lambda / (2d)`, or `None` when the
/// largest admissible period is below the sample resolution.
fn brick_layout(space: &SampledSpace, lambda: &Q, margin: &Q) -> Result<Option<BrickGrid>> {
    let d = space.dim();
    let unit = axis_unit(space);
    let gap = margin / qi(2);
    let bound = lambda / qi(2 * d as i64);
    let step = &unit * qi(d as i64 + 1);
    // largest q with (d+1) q unit < bound; smallest q with q unit > margin
    let q_max = ceil_int(&(&bound / &step)) - BigInt::one();
    let q_min = floor_int(&(margin / &unit)) + BigInt::one();
    if q_max < q_min {
        return Ok(None);
    }
    let shift = Q::from_integer(q_max) * &unit;
    let side = &shift * qi(d as i64 + 1);
    let mut shifts = Vec::with_capacity(d + 1);
    let mut classes = Vec::with_capacity(d + 1);
    for c in 0..=d {
        let offset = &shift * qi(c as i64);
        let mut cells: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for p in 0..space.len() {
            let mut index = Vec::with_capacity(d);
            let inside = (0..d).all(|a| {
                let x = space.coord(p, a);
                let k = floor_int(&((&x - &offset) / &side));
                let lo = Q::from_integer(k.clone()) * &side + &offset;
                index.push(k);
                x > &lo + &gap && x < lo + &side - &gap
            });
            if inside {
                cells.insert(index);
            }
        }
        let boxes = cells
            .into_iter()
            .map(|index| {
                let lo: Vec<Q> = index
                    .iter()
                    .map(|k| Q::from_integer(k.clone()) * &side + &offset + &gap)
                    .collect();
                let hi: Vec<Q> = lo.iter().map(|l| l + &side - &gap - &gap).collect();
                Region::open_box(space, lo, hi)
            })
            .collect::<Result<Vec<_>>>()?;
        shifts.push(offset);
        classes.push(boxes);
    }
    Ok(Some(BrickGrid {
        dim: d,
        regime: Regime::Bricks,
        cell_side: side,
        gap,
        shifts,
        classes,
    }))
}

/// One class: a box of half-width `g` around every sample point.
fn discrete_layout(space: &SampledSpace, lambda: &Q, margin: &Q) -> Result<BrickGrid> {
    let d = space.dim();
    let mut gap = lambda / qi(2 * d as i64);
    if space.len() > 1 {
        gap = gap.min((axis_unit(space) - margin) / qi(2));
    }
    if !gap.is_positive() {
        return Err(Error::ResolutionInsufficient(format!(
            "margin {} leaves no room between sample points",
            rational::fmt_q(margin)
        )));
    }
    let boxes = (0..space.len())
        .map(|p| {
            let x = space.point(p);
            Region::open_box(
                space,
                x.iter().map(|v| v - &gap).collect(),
                x.iter().map(|v| v + &gap).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BrickGrid {
        dim: d,
        regime: Regime::Discrete,
        cell_side: &gap * qi(2),
        gap,
        shifts: vec![Q::zero()],
        classes: vec![boxes],
    })
}

/// One class of boxes around level-`k` Cantor clusters, for the smallest `k`
/// whose boxes all fit into an element of every block cover.
fn cluster_layout(
    space: &SampledSpace,
    depth: u32,
    lambda: &Q,
    margin: &Q,
    covers: &[&Cover],
) -> Result<BrickGrid> {
    let coordinate = space.metric().is_coordinate();
    for k in 0..=depth {
        let shift = depth - k;
        let mut hulls: Vec<(Q, Q)> = Vec::new();
        for p in 0..space.len() {
            let x = space.coord(p, 0);
            if (p >> shift) == hulls.len() {
                hulls.push((x.clone(), x));
            } else {
                let last = hulls.last_mut().expect("cluster started");
                last.1 = x;
            }
        }
        let spacing = hulls.windows(2).map(|w| &w[1].0 - &w[0].1).min();
        let gap = match (&spacing, coordinate) {
            (Some(sp), true) => (lambda / qi(2)).min((sp - margin) / qi(2)),
            (Some(sp), false) => sp / qi(4),
            (None, true) => lambda / qi(2),
            (None, false) => qi(1),
        };
        if !gap.is_positive() {
            continue;
        }
        let boxes = hulls
            .iter()
            .map(|(lo, hi)| Region::open_box(space, vec![lo - &gap], vec![hi + &gap]))
            .collect::<Result<Vec<_>>>()?;
        if boxes.iter().all(|b| {
            covers
                .iter()
                .all(|c| find_parent(space, b, &c.regions).is_ok())
        }) {
            let side = hulls
                .first()
                .map(|(lo, hi)| hi - lo + &gap * qi(2))
                .unwrap_or_else(Q::zero);
            return Ok(BrickGrid {
                dim: 0,
                regime: Regime::Clusters,
                cell_side: side,
                gap,
                shifts: vec![Q::zero()],
                classes: vec![boxes],
            });
        }
    }
    Err(Error::ResolutionInsufficient(
        "no Cantor level fits inside the covers".into(),
    ))
}

/// Layout for a block of covers, choosing the regime.
fn block_layout(space: &SampledSpace, covers: &[&Cover], opts: &ScOptions) -> Result<BrickGrid> {
    let lambda = covers
        .iter()
        .map(|c| lebesgue_number(space, c).map(|l| l.lambda))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .ok_or_else(|| Error::InvalidInput("empty block".into()))?;
    if let SpaceKind::Cantor { depth } = space.kind() {
        return cluster_layout(space, depth, &lambda, &opts.margin, covers);
    }
    if space.len() <= 1 {
        return discrete_layout(space, &lambda, &opts.margin);
    }
    if !space.metric().is_coordinate() {
        return Err(Error::InvalidInput(format!(
            "{} has no brick structure",
            space.metric().name()
        )));
    }
    match brick_layout(space, &lambda, &opts.margin)? {
        Some(grid) => Ok(grid),
        None if opts.fallback => discrete_layout(space, &lambda, &opts.margin),
        None => Err(Error::ResolutionInsufficient(format!(
            "Lebesgue number {} needs bricks finer than the sample",
            rational::fmt_q(&lambda)
        ))),
    }
}

/// `d + 1` disjoint families jointly covering the sample, each refining
/// `cover`. Errors when bricks would have to be finer than the sample.
pub fn brick_refinement(
    space: &SampledSpace,
    cover: &Cover,
    margin: &Q,
) -> Result<(BrickGrid, Vec<DisjointFamily>)> {
    cover.validate(space)?;
    let opts = ScOptions {
        margin: margin.clone(),
        fallback: false,
    };
    let grid = block_layout(space, &[cover], &opts)?;
    let families = grid
        .classes
        .iter()
        .map(|class| DisjointFamily::build(space, class.clone(), cover, margin))
        .collect::<Result<Vec<_>>>()?;
    let all: Vec<Region> = families
        .iter()
        .flat_map(|f| f.regions.iter().cloned())
        .collect();
    covers_check(space, &all, &cover.target)
        .map_err(|p| Error::Invariant(format!("brick classes miss point {p}")))?;
    Ok((grid, families))
}

/// Block of consecutive covers sharing one layout; indices are 1-based.
#[derive(Clone, Debug, Serialize)]
pub struct BlockInfo {
    pub start: usize,
    pub end: usize,
    pub regime: Regime,
    #[serde(with = "rational::serde_q")]
    pub cell_side: Q,
}

/// Disjoint refinements `V_n` of `covers[n]` whose union covers the sample.
#[derive(Clone, Debug, Serialize)]
pub struct ScSelection {
    pub families: Vec<DisjointFamily>,
    pub blocks: Vec<BlockInfo>,
    /// Per point, the first `(n, member)` containing it; `n` is 1-based.
    pub covering_witness: Vec<Option<(usize, usize)>>,
}

impl ScSelection {
    /// First uncovered target point, if any.
    pub fn uncovered(&self, target: &crate::space::SubsetHandle) -> Option<usize> {
        target.iter().find(|&p| self.covering_witness[p].is_none())
    }

    /// Refinement per family, disjointness, and coverage of `target`.
    pub fn validate(&self, space: &SampledSpace, covers: &CoverSeq, margin: &Q) -> Result<()> {
        if self.families.len() != covers.horizon() {
            return Err(Error::Invariant("one family per cover expected".into()));
        }
        for (n, f) in self.families.iter().enumerate() {
            f.validate(space, covers.cover(n + 1), margin)?;
        }
        let target = &covers.covers[0].target;
        let fresh = witness_of(space, &self.families);
        match target.iter().find(|&p| fresh[p].is_none()) {
            Some(p) => Err(Error::NotCovering { point: p }),
            None => Ok(()),
        }
    }
}

fn witness_of(space: &SampledSpace, families: &[DisjointFamily]) -> Vec<Option<(usize, usize)>> {
    (0..space.len())
        .map(|p| {
            families.iter().enumerate().find_map(|(n, f)| {
                f.regions
                    .iter()
                    .position(|r| r.contains(space, p))
                    .map(|i| (n + 1, i))
            })
        })
        .collect()
}

/// Blocks of `class_count` covers; class `c` of a block's layout refines the
/// block's `c`-th cover. A short final block keeps only its leading classes.
fn select_blocks(space: &SampledSpace, covers: &CoverSeq, opts: &ScOptions) -> Result<ScSelection> {
    let k = class_count(space);
    let mut families = Vec::with_capacity(covers.horizon());
    let mut blocks = Vec::new();
    let mut start = 1;
    while start <= covers.horizon() {
        let end = (start + k - 1).min(covers.horizon());
        let block: Vec<&Cover> = (start..=end).map(|n| covers.cover(n)).collect();
        let grid = block_layout(space, &block, opts)?;
        for (i, cover) in block.iter().enumerate() {
            let class = grid.classes.get(i).cloned().unwrap_or_default();
            families.push(DisjointFamily::build(space, class, cover, &opts.margin)?);
        }
        blocks.push(BlockInfo {
            start,
            end,
            regime: grid.regime,
            cell_side: grid.cell_side,
        });
        start = end + 1;
    }
    let covering_witness = witness_of(space, &families);
    Ok(ScSelection {
        families,
        blocks,
        covering_witness,
    })
}

/// Disjoint refinements of every cover whose union covers the sample; every
/// full block already covers on its own.
pub fn sc_fin_select(
    space: &SampledSpace,
    covers: &CoverSeq,
    opts: &ScOptions,
) -> Result<ScSelection> {
    let k = class_count(space);
    if covers.horizon() < k {
        return Err(Error::InvalidInput(format!(
            "horizon {} is below the {k} covers one block needs",
            covers.horizon()
        )));
    }
    covers.validate(space)?;
    let sel = select_blocks(space, covers, opts)?;
    let target = &covers.covers[0].target;
    for b in sel.blocks.iter().filter(|b| b.end - b.start + 1 == k) {
        let block = &sel.families[b.start - 1..b.end];
        let regions: Vec<Region> = block
            .iter()
            .flat_map(|f| f.regions.iter().cloned())
            .collect();
        covers_check(space, &regions, target).map_err(|p| {
            Error::Invariant(format!("block {}..{} misses point {p}", b.start, b.end))
        })?;
    }
    if let Some(p) = sel.uncovered(target) {
        return Err(Error::Invariant(format!("selection misses point {p}")));
    }
    Ok(sel)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum FiniteC {
    Witness {
        n: usize,
        selection: ScSelection,
    },
    /// No prefix up to the horizon covers; `uncovered` is missed by the
    /// longest prefix.
    NoWitness {
        horizon: usize,
        uncovered: usize,
    },
}

/// Least `n` such that the construction on `covers[1..n]` already covers.
pub fn finite_c_search(
    space: &SampledSpace,
    covers: &CoverSeq,
    opts: &ScOptions,
) -> Result<FiniteC> {
    covers.validate(space)?;
    let target = covers
        .covers
        .first()
        .map(|c| c.target.clone())
        .ok_or_else(|| Error::InvalidInput("empty cover sequence".into()))?;
    let mut uncovered = 0;
    for n in 1..=covers.horizon() {
        let prefix = CoverSeq::new(covers.covers[..n].to_vec());
        let selection = select_blocks(space, &prefix, opts)?;
        match selection.uncovered(&target) {
            None => return Ok(FiniteC::Witness { n, selection }),
            Some(p) => uncovered = p,
        }
    }
    Ok(FiniteC::NoWitness {
        horizon: covers.horizon(),
        uncovered,
    })
}
