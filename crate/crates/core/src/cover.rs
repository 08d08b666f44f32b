//! Open regions, covers and the checks run against them.
//!
//! A [`Region`] keeps its exact shape (for analytic reasoning and JSON) next
//! to integer thresholds compiled against one space, so membership of a sample
//! point is a handful of integer comparisons.
//!
//! Containment and disjointness are decided analytically in `R^d` whenever
//! both shapes allow it (balls and boxes under a coordinate metric) and on the
//! sample otherwise. Every verdict records which route produced it.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ceil_int, clamp_i128, floor_int, qi, to_f64, Rat, Q};
use crate::space::{MetricKind, SampledSpace, SubsetHandle};

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    /// Open ball `{x : d(x, center) < radius}`.
    Ball { center: usize, radius: Q },
    /// Open axis box `prod (lo_a, hi_a)`.
    Box { lo: Vec<Q>, hi: Vec<Q> },
    /// Complement of a finite union of closed balls.
    CoClosedBalls { balls: Vec<(usize, Q)> },
}

#[derive(Clone, Debug)]
enum Test {
    Ball { center: usize, below: i128 },
    Box { above: Vec<i128>, below: Vec<i128> },
    Co { balls: Vec<(usize, i128)> },
}

#[derive(Clone, Debug)]
pub struct Region {
    shape: Shape,
    test: Test,
}

impl Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl PartialEq for Region {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape
    }
}

impl Region {
    pub fn ball(space: &SampledSpace, center: usize, radius: Q) -> Result<Self> {
        if center >= space.len() {
            return Err(Error::InvalidInput(format!(
                "ball center {center} out of range"
            )));
        }
        if !radius.is_positive() {
            return Err(Error::InvalidInput("ball radius must be positive".into()));
        }
        let below = space.open_threshold(&radius);
        Ok(Region {
            shape: Shape::Ball { center, radius },
            test: Test::Ball { center, below },
        })
    }

    pub fn open_box(space: &SampledSpace, lo: Vec<Q>, hi: Vec<Q>) -> Result<Self> {
        if lo.len() != space.dim() || hi.len() != space.dim() {
            return Err(Error::InvalidInput(
                "box dimension does not match space".into(),
            ));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l >= h) {
            return Err(Error::InvalidInput(
                "box needs lo < hi on every axis".into(),
            ));
        }
        let s = Q::from_integer(space.scale().into());
        let above = lo
            .iter()
            .map(|l| clamp_i128(&floor_int(&(l * &s))))
            .collect();
        let below = hi
            .iter()
            .map(|h| clamp_i128(&ceil_int(&(h * &s))))
            .collect();
        Ok(Region {
            shape: Shape::Box { lo, hi },
            test: Test::Box { above, below },
        })
    }

    pub fn co_closed_balls(space: &SampledSpace, balls: Vec<(usize, Q)>) -> Result<Self> {
        let mut compiled = Vec::with_capacity(balls.len());
        for (c, r) in &balls {
            if *c >= space.len() {
                return Err(Error::InvalidInput(format!("ball center {c} out of range")));
            }
            if !r.is_positive() {
                return Err(Error::InvalidInput(
                    "closed ball radius must be positive".into(),
                ));
            }
            compiled.push((*c, space.closed_threshold(r)));
        }
        Ok(Region {
            shape: Shape::CoClosedBalls { balls },
            test: Test::Co { balls: compiled },
        })
    }

    pub fn from_spec(space: &SampledSpace, spec: &RegionSpec) -> Result<Self> {
        match spec {
            RegionSpec::Ball { center, radius } => Region::ball(space, *center, radius.0.clone()),
            RegionSpec::Box { lo, hi } => Region::open_box(
                space,
                lo.iter().map(|r| r.0.clone()).collect(),
                hi.iter().map(|r| r.0.clone()).collect(),
            ),
            RegionSpec::CoClosedBalls { balls } => Region::co_closed_balls(
                space,
                balls.iter().map(|(c, r)| (*c, r.0.clone())).collect(),
            ),
        }
    }

    pub fn to_spec(&self) -> RegionSpec {
        match &self.shape {
            Shape::Ball { center, radius } => RegionSpec::Ball {
                center: *center,
                radius: Rat(radius.clone()),
            },
            Shape::Box { lo, hi } => RegionSpec::Box {
                lo: lo.iter().cloned().map(Rat).collect(),
                hi: hi.iter().cloned().map(Rat).collect(),
            },
            Shape::CoClosedBalls { balls } => RegionSpec::CoClosedBalls {
                balls: balls.iter().map(|(c, r)| (*c, Rat(r.clone()))).collect(),
            },
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Exact membership of sample point `p`.
    pub fn contains(&self, space: &SampledSpace, p: usize) -> bool {
        match &self.test {
            Test::Ball { center, below } => space.key(*center, p) < *below,
            Test::Box { above, below } => space
                .point_scaled(p)
                .iter()
                .zip(above.iter().zip(below))
                .all(|(&x, (&a, &b))| (x as i128) > a && (x as i128) < b),
            Test::Co { balls } => balls.iter().all(|(c, at_most)| space.key(*c, p) > *at_most),
        }
    }

    pub fn members(&self, space: &SampledSpace) -> SubsetHandle {
        SubsetHandle::from_fn(space.len(), |p| self.contains(space, p))
    }

    pub fn member_list(&self, space: &SampledSpace) -> Vec<usize> {
        (0..space.len())
            .filter(|&p| self.contains(space, p))
            .collect()
    }

    /// Conservative float bounding box `(lo, hi)` per axis.
    fn float_bounds(&self, space: &SampledSpace) -> Option<(Vec<f64>, Vec<f64>)> {
        match &self.shape {
            Shape::Ball { center, radius } => {
                let r = to_f64(radius);
                let c: Vec<f64> = space.point(*center).iter().map(to_f64).collect();
                Some((
                    c.iter().map(|x| x - r).collect(),
                    c.iter().map(|x| x + r).collect(),
                ))
            }
            Shape::Box { lo, hi } => Some((
                lo.iter().map(to_f64).collect(),
                hi.iter().map(to_f64).collect(),
            )),
            Shape::CoClosedBalls { .. } => None,
        }
    }
}

/// JSON form of a region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum RegionSpec {
    Ball {
        center: usize,
        radius: Rat,
    },
    Box {
        lo: Vec<Rat>,
        hi: Vec<Rat>,
    },
    #[serde(rename = "co_closed_balls")]
    CoClosedBalls {
        balls: Vec<(usize, Rat)>,
    },
}

/// How a containment `inner ⊆ outer` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContainKind {
    /// Holds for the open sets in `R^d`.
    Analytic,
    /// Holds on every sample point of `inner`.
    Sample,
}

fn coords(space: &SampledSpace, p: usize) -> Vec<Q> {
    space.point(p)
}

/// Squared euclidean or Chebyshev "size" of per-axis nonnegative gaps,
/// compared against `bound`: returns whether `|gaps| >= bound`.
fn gaps_at_least(metric: MetricKind, gaps: &[Q], bound: &Q) -> bool {
    if !bound.is_positive() {
        return true;
    }
    match metric {
        MetricKind::Euclidean => gaps.iter().map(|g| g * g).sum::<Q>() >= bound * bound,
        _ => gaps.iter().max().map(|g| g >= bound).unwrap_or(false),
    }
}

/// Per-axis distance from a point to the closed box `[lo, hi]`.
fn point_box_gaps(c: &[Q], lo: &[Q], hi: &[Q]) -> Vec<Q> {
    c.iter()
        .zip(lo.iter().zip(hi))
        .map(|(x, (l, h))| {
            if x < l {
                l - x
            } else if x > h {
                x - h
            } else {
                Q::zero()
            }
        })
        .collect()
}

/// Analytic proof of `inner ⊆ outer` in `R^d`, or `false` when no proof is
/// available (which does not mean containment fails).
pub fn contains_analytically(space: &SampledSpace, inner: &Region, outer: &Region) -> bool {
    if !space.metric().is_coordinate() {
        return false;
    }
    let metric = space.metric();
    match (&inner.shape, &outer.shape) {
        (
            Shape::Ball {
                center: c1,
                radius: r1,
            },
            Shape::Ball {
                center: c2,
                radius: r2,
            },
        ) => r2 >= r1 && space.key(*c1, *c2) <= space.closed_threshold(&(r2 - r1)),
        (Shape::Ball { center, radius }, Shape::Box { lo, hi }) => {
            let c = coords(space, *center);
            c.iter()
                .zip(lo.iter().zip(hi))
                .all(|(x, (l, h))| *l <= x - radius && x + radius <= *h)
        }
        (Shape::Ball { center, radius }, Shape::CoClosedBalls { balls }) => balls
            .iter()
            .all(|(c2, r2)| space.key(*center, *c2) >= space.open_threshold(&(radius + r2))),
        (Shape::Box { lo, hi }, Shape::Ball { center, radius }) => {
            let c = coords(space, *center);
            let far: Vec<Q> = c
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(x, (l, h))| (l - x).abs().max((h - x).abs()))
                .collect();
            match metric {
                MetricKind::Euclidean => far.iter().map(|g| g * g).sum::<Q>() <= radius * radius,
                _ => far.iter().all(|g| g <= radius),
            }
        }
        (Shape::Box { lo: l1, hi: h1 }, Shape::Box { lo: l2, hi: h2 }) => {
            l1.iter().zip(l2).all(|(a, b)| b <= a) && h1.iter().zip(h2).all(|(a, b)| a <= b)
        }
        (Shape::Box { lo, hi }, Shape::CoClosedBalls { balls }) => balls.iter().all(|(c, r)| {
            let gaps = point_box_gaps(&coords(space, *c), lo, hi);
            gaps_at_least(metric, &gaps, r)
        }),
        (
            Shape::CoClosedBalls { balls: inner_balls },
            Shape::CoClosedBalls { balls: outer_balls },
        ) => {
            // every excluded ball of `outer` sits inside an excluded ball of `inner`
            outer_balls.iter().all(|(c2, r2)| {
                inner_balls.iter().any(|(c1, r1)| {
                    r1 >= r2 && space.key(*c1, *c2) <= space.closed_threshold(&(r1 - r2))
                })
            })
        }
        (Shape::CoClosedBalls { .. }, _) => false,
    }
}

/// Decides `inner ⊆ outer`, analytically where possible, else on the sample.
/// On failure returns a sample point of `inner` outside `outer`.
pub fn containment(
    space: &SampledSpace,
    inner: &Region,
    outer: &Region,
) -> std::result::Result<ContainKind, usize> {
    if contains_analytically(space, inner, outer) {
        return Ok(ContainKind::Analytic);
    }
    containment_on_sample(space, &inner.member_list(space), outer)
}

fn containment_on_sample(
    space: &SampledSpace,
    inner_members: &[usize],
    outer: &Region,
) -> std::result::Result<ContainKind, usize> {
    match inner_members.iter().find(|&&p| !outer.contains(space, p)) {
        Some(&p) => Err(p),
        None => Ok(ContainKind::Sample),
    }
}

/// Finite family of regions meant to cover `target`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub regions: Vec<Region>,
    pub target: SubsetHandle,
}

impl Cover {
    pub fn new(regions: Vec<Region>, target: SubsetHandle) -> Self {
        Cover { regions, target }
    }

    /// Cover whose target is the whole sample.
    pub fn whole(space: &SampledSpace, regions: Vec<Region>) -> Self {
        Cover {
            regions,
            target: space.full(),
        }
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn validate(&self, space: &SampledSpace) -> Result<Coverage> {
        covers_check(space, &self.regions, &self.target)
            .map_err(|point| Error::NotCovering { point })
    }
}

/// Sequence `U_1, ..., U_N` over one space; indexed from 1.
#[derive(Clone, Debug)]
pub struct CoverSeq {
    pub covers: Vec<Cover>,
}

impl CoverSeq {
    pub fn new(covers: Vec<Cover>) -> Self {
        CoverSeq { covers }
    }

    pub fn horizon(&self) -> usize {
        self.covers.len()
    }

    pub fn cover(&self, n: usize) -> &Cover {
        &self.covers[n - 1]
    }

    pub fn validate(&self, space: &SampledSpace) -> Result<()> {
        let first = self.covers.first().map(|c| &c.target);
        for c in &self.covers {
            if Some(&c.target) != first {
                return Err(Error::InvalidInput(
                    "covers in a sequence must share one target".into(),
                ));
            }
            c.validate(space)?;
        }
        Ok(())
    }

    /// Covers `start..=horizon` as a new sequence.
    pub fn suffix(&self, start: usize) -> CoverSeq {
        CoverSeq {
            covers: self.covers[start - 1..].to_vec(),
        }
    }
}

/// Per-point assignment to a covering region (`None` off the target).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub assignment: Vec<Option<usize>>,
}

/// Assigns each target point to the first region containing it, or returns
/// the first uncovered target point.
pub fn covers_check(
    space: &SampledSpace,
    regions: &[Region],
    target: &SubsetHandle,
) -> std::result::Result<Coverage, usize> {
    let mut assignment = vec![None; space.len()];
    for p in target.iter() {
        match regions.iter().position(|r| r.contains(space, p)) {
            Some(i) => assignment[p] = Some(i),
            None => return Err(p),
        }
    }
    Ok(Coverage { assignment })
}

/// Where each fine region lands in the coarse cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub parent: usize,
    pub how: ContainKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefineFailure {
    pub fine: usize,
    pub point: usize,
}

/// Finds, for every fine region, a coarse region containing it.
pub fn refines_check(
    space: &SampledSpace,
    fine: &[Region],
    coarse: &[Region],
) -> std::result::Result<Vec<Witness>, RefineFailure> {
    fine.iter()
        .enumerate()
        .map(|(i, f)| {
            find_parent(space, f, coarse).map_err(|point| RefineFailure { fine: i, point })
        })
        .collect()
}

/// Parent lookup shared by every refinement path: analytic first, then the
/// sample. The error carries a member of `fine` escaping the likeliest parent.
pub fn find_parent(
    space: &SampledSpace,
    fine: &Region,
    coarse: &[Region],
) -> std::result::Result<Witness, usize> {
    let members = fine.member_list(space);
    let candidates: Vec<usize> = match members.first() {
        Some(&p) => (0..coarse.len())
            .filter(|&j| coarse[j].contains(space, p))
            .collect(),
        None => (0..coarse.len()).collect(),
    };
    if let Some(&j) = candidates
        .iter()
        .find(|&&j| contains_analytically(space, fine, &coarse[j]))
    {
        return Ok(Witness {
            parent: j,
            how: ContainKind::Analytic,
        });
    }
    let mut escape = members.first().copied().unwrap_or(0);
    for &j in &candidates {
        match containment_on_sample(space, &members, &coarse[j]) {
            Ok(how) => return Ok(Witness { parent: j, how }),
            Err(p) => escape = p,
        }
    }
    Err(escape)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DisjointViolation {
    SharedPoint {
        first: usize,
        second: usize,
        point: usize,
    },
    GapBelowMargin {
        first: usize,
        second: usize,
    },
}

/// Analytic check that the gap between two regions is at least `margin`.
/// `None` when the shapes admit no analytic answer.
pub fn analytic_gap_at_least(
    space: &SampledSpace,
    a: &Region,
    b: &Region,
    margin: &Q,
) -> Option<bool> {
    if !space.metric().is_coordinate() {
        return None;
    }
    let metric = space.metric();
    match (&a.shape, &b.shape) {
        (
            Shape::Ball {
                center: c1,
                radius: r1,
            },
            Shape::Ball {
                center: c2,
                radius: r2,
            },
        ) => Some(space.key(*c1, *c2) >= space.open_threshold(&(r1 + r2 + margin))),
        (Shape::Box { lo: l1, hi: h1 }, Shape::Box { lo: l2, hi: h2 }) => {
            let raw: Vec<Q> = (0..l1.len())
                .map(|k| (&l2[k] - &h1[k]).max(&l1[k] - &h2[k]))
                .collect();
            if raw.iter().all(|g| g.is_negative()) {
                return Some(false);
            }
            let gaps: Vec<Q> = raw.into_iter().map(|g| g.max(Q::zero())).collect();
            Some(gaps_at_least(metric, &gaps, margin))
        }
        (Shape::Box { lo, hi }, Shape::Ball { center, radius })
        | (Shape::Ball { center, radius }, Shape::Box { lo, hi }) => {
            let gaps = point_box_gaps(&coords(space, *center), lo, hi);
            Some(gaps_at_least(metric, &gaps, &(radius + margin)))
        }
        _ => None,
    }
}

/// Sample-disjointness plus, where shapes allow, an analytic gap of at least
/// `margin` between every pair.
pub fn pairwise_disjoint_check(
    space: &SampledSpace,
    regions: &[Region],
    margin: &Q,
) -> std::result::Result<(), DisjointViolation> {
    let mut owner: Vec<Option<usize>> = vec![None; space.len()];
    for (i, r) in regions.iter().enumerate() {
        for (p, slot) in owner.iter_mut().enumerate() {
            if r.contains(space, p) {
                if let Some(first) = *slot {
                    return Err(DisjointViolation::SharedPoint {
                        first,
                        second: i,
                        point: p,
                    });
                }
                *slot = Some(i);
            }
        }
    }
    if !space.metric().is_coordinate() {
        return Ok(());
    }
    // sweep along axis 0; float bounds only skip pairs that are certainly far apart
    let tol = 1e-9;
    let m = to_f64(margin);
    let bounds: Vec<Option<(Vec<f64>, Vec<f64>)>> =
        regions.iter().map(|r| r.float_bounds(space)).collect();
    let mut order: Vec<usize> = (0..regions.len())
        .filter(|&i| bounds[i].is_some())
        .collect();
    order.sort_by(|&a, &b| {
        let (la, lb) = (
            bounds[a].as_ref().unwrap().0[0],
            bounds[b].as_ref().unwrap().0[0],
        );
        la.partial_cmp(&lb)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    for (k, &i) in order.iter().enumerate() {
        let (lo_i, hi_i) = bounds[i].as_ref().unwrap();
        for &j in &order[k + 1..] {
            let (lo_j, hi_j) = bounds[j].as_ref().unwrap();
            if lo_j[0] > hi_i[0] + m + tol {
                break;
            }
            let far =
                (1..lo_i.len()).any(|a| lo_j[a] > hi_i[a] + m + tol || lo_i[a] > hi_j[a] + m + tol);
            if far {
                continue;
            }
            if analytic_gap_at_least(space, &regions[i], &regions[j], margin) == Some(false) {
                let (first, second) = (i.min(j), i.max(j));
                return Err(DisjointViolation::GapBelowMargin { first, second });
            }
        }
    }
    Ok(())
}

/// Radius `rho` with `B(p, rho) ⊆ region` (analytic under coordinate metrics,
/// on the sample otherwise); `None` when `p` is not in the region.
pub fn containment_radius(space: &SampledSpace, region: &Region, p: usize) -> Option<Q> {
    if !region.contains(space, p) {
        return None;
    }
    if !space.metric().is_coordinate() {
        let outside = (0..space.len())
            .filter(|&o| !region.contains(space, o))
            .map(|o| space.key(p, o))
            .min();
        return Some(match outside {
            Some(k) => space.key_to_distance_lower(k),
            None => {
                space.key_to_distance_upper(space.max_key(&(0..space.len()).collect::<Vec<_>>()))
                    + qi(1)
            }
        });
    }
    Some(match &region.shape {
        Shape::Ball { center, radius } => radius - space.distance_upper(*center, p),
        Shape::Box { lo, hi } => (0..space.dim())
            .map(|a| {
                let x = space.coord(p, a);
                (&x - &lo[a]).min(&hi[a] - &x)
            })
            .min()
            .expect("dimension is positive"),
        Shape::CoClosedBalls { balls } => {
            let estimates: Vec<f64> = balls
                .iter()
                .map(|(c, r)| approx_distance(space, space.key(p, *c)) - to_f64(r))
                .collect();
            let best = estimates.iter().cloned().fold(f64::INFINITY, f64::min);
            let slack = 1e-9 * (1.0 + best.abs());
            balls
                .iter()
                .zip(&estimates)
                .filter(|(_, e)| **e <= best + slack)
                .map(|((c, r), _)| space.distance_lower(p, *c) - r)
                .min()
                .unwrap_or_else(|| qi(1))
        }
    })
}

fn approx_distance(space: &SampledSpace, key: i128) -> f64 {
    let s = space.scale() as f64;
    match space.metric() {
        MetricKind::Euclidean => (key as f64).sqrt() / s,
        _ => key as f64 / s,
    }
}

#[derive(Clone, Debug)]
pub struct Lebesgue {
    pub lambda: Q,
    /// Point where the minimum is attained.
    pub attained_at: usize,
    /// Per target point, the region with the largest containment radius.
    pub best_region: Vec<Option<usize>>,
}

/// `min_p max_{R ∋ p} rho(R, p)` over the cover's target.
pub fn lebesgue_number(space: &SampledSpace, cover: &Cover) -> Result<Lebesgue> {
    let mut best_region = vec![None; space.len()];
    let mut lambda: Option<(Q, usize)> = None;
    for p in cover.target.iter() {
        let mut best: Option<(Q, usize)> = None;
        for (i, r) in cover.regions.iter().enumerate() {
            if let Some(rho) = containment_radius(space, r, p) {
                if best.as_ref().map(|(b, _)| rho > *b).unwrap_or(true) {
                    best = Some((rho, i));
                }
            }
        }
        let (rho, i) = best.ok_or(Error::NotCovering { point: p })?;
        best_region[p] = Some(i);
        if lambda.as_ref().map(|(l, _)| rho < *l).unwrap_or(true) {
            lambda = Some((rho, p));
        }
    }
    let (lambda, attained_at) =
        lambda.ok_or_else(|| Error::InvalidInput("cover target is empty".into()))?;
    Ok(Lebesgue {
        lambda,
        attained_at,
        best_region,
    })
}

/// Pairwise-disjoint family refining one cover, with per-member witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct DisjointFamily {
    pub regions: Vec<Region>,
    pub witness: Vec<Witness>,
}

impl DisjointFamily {
    pub fn empty() -> Self {
        DisjointFamily {
            regions: Vec::new(),
            witness: Vec::new(),
        }
    }

    /// Builds the family after checking disjointness and refinement.
    pub fn build(
        space: &SampledSpace,
        regions: Vec<Region>,
        parent: &Cover,
        margin: &Q,
    ) -> Result<Self> {
        pairwise_disjoint_check(space, &regions, margin)
            .map_err(|v| Error::Invariant(format!("family not disjoint: {v:?}")))?;
        let witness = refines_check(space, &regions, &parent.regions).map_err(|f| {
            Error::Invariant(format!(
                "family member {} escapes at point {}",
                f.fine, f.point
            ))
        })?;
        Ok(DisjointFamily { regions, witness })
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    /// Re-runs every check against `parent`.
    pub fn validate(&self, space: &SampledSpace, parent: &Cover, margin: &Q) -> Result<()> {
        pairwise_disjoint_check(space, &self.regions, margin)
            .map_err(|v| Error::Invariant(format!("family not disjoint: {v:?}")))?;
        for (r, w) in self.regions.iter().zip(&self.witness) {
            let outer = parent
                .regions
                .get(w.parent)
                .ok_or_else(|| Error::Invariant("witness index out of range".into()))?;
            containment(space, r, outer).map_err(|p| {
                Error::Invariant(format!("witnessed member escapes parent at point {p}"))
            })?;
        }
        Ok(())
    }
}
