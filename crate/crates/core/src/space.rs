//! Finite samples of compact metric spaces.
//!
//! Coordinates are exact rationals sharing one denominator, so every point is
//! stored as integer numerators over a common `scale`. Distances are never
//! materialized as floats: each metric maps a pair of points to an integer
//! *key* that is monotone in the true distance, and radii are converted to
//! integer thresholds on that key. Membership and ordering questions are
//! therefore exact integer comparisons.
//!
//! | metric         | key                      | distance            |
//! |----------------|--------------------------|---------------------|
//! | `euclidean`    | sum of squared deltas    | `sqrt(key) / scale` |
//! | `chebyshev`    | max absolute delta       | `key / scale`       |
//! | `cantor_2adic` | top bit of digit xor     | `key / 2^depth`     |

use std::fmt;
use std::sync::OnceLock;

use bitvec::vec::BitVec;
use num::integer::Integer;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, ceil_int, clamp_i128, floor_int, fmt_q, q, qi, qpow, Q};

pub const DEFAULT_POINT_CAP: usize = 1 << 20;
pub const MAX_CANTOR_DEPTH: u32 = 16;

/// Numerators are kept well inside `i64` so squared sums fit `i128`.
const MAX_SCALED_COORD: i64 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Euclidean,
    Chebyshev,
    #[serde(rename = "cantor_2adic")]
    Cantor2adic,
}

impl MetricKind {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "euclidean" => Ok(MetricKind::Euclidean),
            "chebyshev" => Ok(MetricKind::Chebyshev),
            "cantor_2adic" => Ok(MetricKind::Cantor2adic),
            other => Err(Error::InvalidInput(format!("unknown metric {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Euclidean => "euclidean",
            MetricKind::Chebyshev => "chebyshev",
            MetricKind::Cantor2adic => "cantor_2adic",
        }
    }

    /// Whether regions can be reasoned about through coordinates.
    pub fn is_coordinate(self) -> bool {
        !matches!(self, MetricKind::Cantor2adic)
    }
}

/// How a space was produced; drives the choice of refinement construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    /// Uniform grid `{0, 1/steps, ..., 1}^dim`.
    Grid { dim: usize, steps: u64 },
    /// Left endpoints of the depth-level middle-thirds construction.
    Cantor { depth: u32 },
    /// Anything loaded from a file.
    Sample,
}

#[derive(Clone)]
pub struct SampledSpace {
    label: String,
    metric: MetricKind,
    mesh: Q,
    dim: usize,
    scale: i64,
    coords: Vec<i64>,
    /// Ternary digit masks (bit set where the digit is 2), `cantor_2adic` only.
    digits: Vec<u64>,
    digit_count: u32,
    kind: SpaceKind,
    separation: OnceLock<i64>,
}

impl fmt::Debug for SampledSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledSpace")
            .field("label", &self.label)
            .field("metric", &self.metric)
            .field("mesh", &fmt_q(&self.mesh))
            .field("dim", &self.dim)
            .field("points", &self.len())
            .field("kind", &self.kind)
            .finish()
    }
}

/// Outcome of [`SampledSpace::diameter`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diameter {
    /// Exact when `exact`, otherwise a rational upper bound.
    #[serde(with = "rational::serde_q")]
    pub value: Q,
    pub exact: bool,
    /// The subset was empty; `value` is 0 by convention.
    pub empty: bool,
}

impl SampledSpace {
    /// Builds a space from explicit coordinates.
    pub fn from_points(
        label: &str,
        metric: MetricKind,
        mesh: Q,
        points: &[Vec<Q>],
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("space has no points".into()));
        }
        if !mesh.is_positive() {
            return Err(Error::InvalidInput("mesh must be positive".into()));
        }
        let dim = points[0].len();
        if dim == 0 || points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidInput(
                "points must share a positive dimension".into(),
            ));
        }
        let mut lcm = BigInt::one();
        for c in points.iter().flatten() {
            lcm = lcm.lcm(c.denom());
        }
        let scale = lcm
            .to_i64()
            .filter(|s| *s <= MAX_SCALED_COORD)
            .ok_or_else(|| Error::InvalidInput("coordinate denominators too large".into()))?;
        let mut coords = Vec::with_capacity(points.len() * dim);
        for c in points.iter().flatten() {
            let n = (c * Q::from_integer(lcm.clone())).to_integer();
            let n = n
                .to_i64()
                .filter(|v| v.abs() <= MAX_SCALED_COORD)
                .ok_or_else(|| Error::InvalidInput("coordinate out of range".into()))?;
            coords.push(n);
        }
        let mut space = SampledSpace {
            label: label.to_string(),
            metric,
            mesh,
            dim,
            scale,
            coords,
            digits: Vec::new(),
            digit_count: 0,
            kind: SpaceKind::Sample,
            separation: OnceLock::new(),
        };
        space.check_unique()?;
        if metric == MetricKind::Cantor2adic {
            space.init_digits()?;
        }
        if let Some(depth) = space.detect_cantor() {
            space.kind = SpaceKind::Cantor { depth };
        }
        Ok(space)
    }

    fn check_unique(&self) -> Result<()> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.point_scaled(a).cmp(self.point_scaled(b)));
        for w in order.windows(2) {
            if self.point_scaled(w[0]) == self.point_scaled(w[1]) {
                return Err(Error::InvalidInput(format!(
                    "duplicate points {} and {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    fn init_digits(&mut self) -> Result<()> {
        let bad = || {
            Error::InvalidInput("cantor_2adic needs 1-d points with ternary digits in {0,2}".into())
        };
        if self.dim != 1 {
            return Err(bad());
        }
        let mut depth = 0u32;
        let mut s = self.scale;
        while s % 3 == 0 {
            s /= 3;
            depth += 1;
        }
        if s != 1 || depth > MAX_CANTOR_DEPTH {
            return Err(bad());
        }
        let mut digits = Vec::with_capacity(self.len());
        for &c in &self.coords {
            if c < 0 || c >= self.scale {
                return Err(bad());
            }
            let mut mask = 0u64;
            let mut rest = c;
            // digit i (1-based) has weight 3^(depth - i) and lands on bit depth - i
            for bit in 0..depth {
                let d = rest % 3;
                rest /= 3;
                match d {
                    0 => {}
                    2 => mask |= 1 << bit,
                    _ => return Err(bad()),
                }
            }
            digits.push(mask);
        }
        self.digits = digits;
        self.digit_count = depth;
        Ok(())
    }

    fn detect_cantor(&self) -> Option<u32> {
        if self.dim != 1 || !self.len().is_power_of_two() {
            return None;
        }
        let depth = self.len().trailing_zeros();
        if depth == 0 || depth > MAX_CANTOR_DEPTH {
            return None;
        }
        let expected = cantor_numerators(depth);
        let scale = 3i64.pow(depth);
        if scale % self.scale != 0 {
            return None;
        }
        let factor = scale / self.scale;
        // index order must match: clusters are read off index bits
        let ours: Vec<i64> = self.coords.iter().map(|c| c * factor).collect();
        (ours == expected).then_some(depth)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn metric(&self) -> MetricKind {
        self.metric
    }

    pub fn mesh(&self) -> &Q {
        &self.mesh
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Common denominator of all coordinates.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn point_scaled(&self, p: usize) -> &[i64] {
        &self.coords[p * self.dim..(p + 1) * self.dim]
    }

    pub fn coord(&self, p: usize, axis: usize) -> Q {
        q(self.coords[p * self.dim + axis], self.scale)
    }

    pub fn point(&self, p: usize) -> Vec<Q> {
        (0..self.dim).map(|a| self.coord(p, a)).collect()
    }

    /// Monotone integer stand-in for `d(p, q)`.
    pub fn key(&self, p: usize, other: usize) -> i128 {
        match self.metric {
            MetricKind::Euclidean => self
                .point_scaled(p)
                .iter()
                .zip(self.point_scaled(other))
                .map(|(a, b)| {
                    let d = (*a - *b) as i128;
                    d * d
                })
                .sum(),
            MetricKind::Chebyshev => self
                .point_scaled(p)
                .iter()
                .zip(self.point_scaled(other))
                .map(|(a, b)| (*a - *b).abs() as i128)
                .max()
                .unwrap_or(0),
            MetricKind::Cantor2adic => {
                let x = self.digits[p] ^ self.digits[other];
                if x == 0 {
                    0
                } else {
                    1i128 << (63 - x.leading_zeros())
                }
            }
        }
    }

    /// Scale factor `S` such that the key of a radius `r` is `r^e * S`.
    fn key_scale(&self) -> BigInt {
        match self.metric {
            MetricKind::Euclidean => BigInt::from(self.scale) * BigInt::from(self.scale),
            MetricKind::Chebyshev => BigInt::from(self.scale),
            MetricKind::Cantor2adic => BigInt::one() << self.digit_count as usize,
        }
    }

    /// `r` expressed in key units, exactly.
    pub fn radius_key(&self, r: &Q) -> Q {
        let s = Q::from_integer(self.key_scale());
        match self.metric {
            MetricKind::Euclidean => r * r * s,
            _ => r * s,
        }
    }

    /// `d(p,c) < r  <=>  key < open_threshold(r)`.
    pub fn open_threshold(&self, r: &Q) -> i128 {
        if !r.is_positive() {
            return 0;
        }
        clamp_i128(&ceil_int(&self.radius_key(r)))
    }

    /// `d(p,c) <= r  <=>  key <= closed_threshold(r)`.
    pub fn closed_threshold(&self, r: &Q) -> i128 {
        if r.is_negative() {
            return -1;
        }
        clamp_i128(&floor_int(&self.radius_key(r)))
    }

    fn key_value(&self, key: i128) -> Q {
        Q::new(BigInt::from(key), self.key_scale())
    }

    pub fn key_to_distance_exact(&self, key: i128) -> Option<Q> {
        let v = self.key_value(key);
        match self.metric {
            MetricKind::Euclidean => rational::sqrt_exact(&v),
            _ => Some(v),
        }
    }

    pub fn key_to_distance_upper(&self, key: i128) -> Q {
        let v = self.key_value(key);
        match self.metric {
            MetricKind::Euclidean => rational::sqrt_upper(&v),
            _ => v,
        }
    }

    pub fn key_to_distance_lower(&self, key: i128) -> Q {
        let v = self.key_value(key);
        match self.metric {
            MetricKind::Euclidean => rational::sqrt_lower(&v),
            _ => v,
        }
    }

    pub fn distance_exact(&self, p: usize, other: usize) -> Option<Q> {
        self.key_to_distance_exact(self.key(p, other))
    }

    pub fn distance_upper(&self, p: usize, other: usize) -> Q {
        self.key_to_distance_upper(self.key(p, other))
    }

    pub fn distance_lower(&self, p: usize, other: usize) -> Q {
        self.key_to_distance_lower(self.key(p, other))
    }

    /// Max pairwise distance over the members of `subset`.
    pub fn diameter(&self, subset: &SubsetHandle) -> Diameter {
        let members: Vec<usize> = subset.iter().collect();
        if members.is_empty() {
            return Diameter {
                value: Q::zero(),
                exact: true,
                empty: true,
            };
        }
        let key = self.max_key(&members);
        match self.key_to_distance_exact(key) {
            Some(value) => Diameter {
                value,
                exact: true,
                empty: false,
            },
            None => Diameter {
                value: self.key_to_distance_upper(key),
                exact: false,
                empty: false,
            },
        }
    }

    pub fn max_key(&self, members: &[usize]) -> i128 {
        let mut best = 0;
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                best = best.max(self.key(a, b));
            }
        }
        best
    }

    /// Exact test `diameter(members) < bound`; vacuously true when empty.
    pub fn diameter_below(&self, members: &[usize], bound: &Q) -> bool {
        members.len() < 2 || self.max_key(members) < self.open_threshold(bound)
    }

    /// Smallest Chebyshev gap (in scaled units) between distinct points.
    pub fn min_axis_separation(&self) -> i64 {
        *self.separation.get_or_init(|| {
            if let SpaceKind::Grid { .. } = self.kind {
                return 1;
            }
            if let SpaceKind::Cantor { depth } = self.kind {
                return 2 * self.scale / 3i64.pow(depth);
            }
            let mut best = i64::MAX;
            for a in 0..self.len() {
                for b in a + 1..self.len() {
                    let gap = self
                        .point_scaled(a)
                        .iter()
                        .zip(self.point_scaled(b))
                        .map(|(x, y)| (x - y).abs())
                        .max()
                        .unwrap_or(0);
                    best = best.min(gap);
                }
            }
            best
        })
    }

    pub fn full(&self) -> SubsetHandle {
        SubsetHandle::full(self.len())
    }

    pub fn to_file(&self) -> SpaceFile {
        SpaceFile {
            label: self.label.clone(),
            metric: self.metric.name().to_string(),
            mesh: self.mesh.clone(),
            points: (0..self.len()).map(|p| self.point(p)).collect(),
        }
    }

    pub fn from_file(file: &SpaceFile) -> Result<Self> {
        let metric = MetricKind::parse(&file.metric)?;
        let mut space =
            SampledSpace::from_points(&file.label, metric, file.mesh.clone(), &file.points)?;
        if let Some((dim, steps)) = space.detect_grid() {
            space.kind = SpaceKind::Grid { dim, steps };
        }
        Ok(space)
    }

    fn detect_grid(&self) -> Option<(usize, u64)> {
        let steps = self.scale as u64;
        let side = steps.checked_add(1)?;
        let expected = side.checked_pow(self.dim as u32)?;
        if expected != self.len() as u64 || steps < 2 {
            return None;
        }
        let grid = build_grid_space(self.dim, &q(1, self.scale), self.metric, usize::MAX).ok()?;
        (grid.coords == self.coords).then_some((self.dim, steps))
    }

    /// Checks symmetry, identity and the triangle inequality. Exhaustive up to
    /// `exhaustive_limit` points, otherwise `random_triples` seeded samples.
    pub fn check_metric_axioms(
        &self,
        exhaustive_limit: usize,
        random_triples: usize,
        seed: u64,
    ) -> MetricCheck {
        let n = self.len();
        let mut checked = 0u64;
        let mut check = |a: usize, b: usize, c: usize| -> Option<(usize, usize, usize)> {
            checked += 1;
            let (ab, ba) = (self.key(a, b), self.key(b, a));
            if ab != ba || (a == b) != (ab == 0) {
                return Some((a, b, b));
            }
            (!self.triangle_holds(self.key(a, c), ab, self.key(b, c))).then_some((a, b, c))
        };
        let mut violation = None;
        if n <= exhaustive_limit {
            'outer: for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if let Some(v) = check(a, b, c) {
                            violation = Some(v);
                            break 'outer;
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..random_triples {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if let Some(v) = check(a, b, c) {
                    violation = Some(v);
                    break;
                }
            }
        }
        MetricCheck {
            triples: checked,
            violation,
        }
    }

    /// `d(a,c) <= d(a,b) + d(b,c)` from keys, exactly.
    fn triangle_holds(&self, ac: i128, ab: i128, bc: i128) -> bool {
        match self.metric {
            MetricKind::Euclidean => {
                // sqrt(x) <= sqrt(y) + sqrt(z)  <=>  x - y - z <= 2 sqrt(yz)
                let lhs = BigInt::from(ac) - BigInt::from(ab) - BigInt::from(bc);
                if !lhs.is_positive() {
                    return true;
                }
                &lhs * &lhs <= BigInt::from(4) * BigInt::from(ab) * BigInt::from(bc)
            }
            _ => ac <= ab + bc,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MetricCheck {
    pub triples: u64,
    pub violation: Option<(usize, usize, usize)>,
}

/// JSON form of a space: rationals as `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SpaceFile {
    pub label: String,
    pub metric: String,
    #[serde(with = "rational::serde_q")]
    pub mesh: Q,
    #[serde(with = "serde_points")]
    pub points: Vec<Vec<Q>>,
}

mod serde_points {
    use crate::rational::{fmt_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(points: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        points
            .iter()
            .map(|p| p.iter().map(fmt_q).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|p| {
                p.iter()
                    .map(|t| parse_q(t).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Subset of a space's points, as a bitset over point indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetHandle {
    members: BitVec,
}

impl SubsetHandle {
    pub fn empty(len: usize) -> Self {
        SubsetHandle {
            members: BitVec::repeat(false, len),
        }
    }

    pub fn full(len: usize) -> Self {
        SubsetHandle {
            members: BitVec::repeat(true, len),
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(len);
        for i in indices {
            if i >= len {
                return Err(Error::InvalidInput(format!("point index {i} out of range")));
            }
            s.members.set(i, true);
        }
        Ok(s)
    }

    pub fn from_fn(len: usize, f: impl Fn(usize) -> bool) -> Self {
        SubsetHandle {
            members: (0..len).map(f).collect(),
        }
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.members.get(p).map(|b| *b).unwrap_or(false)
    }

    pub fn insert(&mut self, p: usize) {
        self.members.set(p, true);
    }

    pub fn count(&self) -> usize {
        self.members.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.members.not_any()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter_ones()
    }

    pub fn is_subset_of(&self, other: &SubsetHandle) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    pub fn intersect(&self, other: &SubsetHandle) -> SubsetHandle {
        SubsetHandle {
            members: self.members.clone() & other.members.clone(),
        }
    }

    pub fn union(&self, other: &SubsetHandle) -> SubsetHandle {
        SubsetHandle {
            members: self.members.clone() | other.members.clone(),
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

fn cantor_numerators(depth: u32) -> Vec<i64> {
    (0..1u64 << depth)
        .map(|mask| {
            (0..depth)
                .filter(|bit| mask >> bit & 1 == 1)
                .map(|bit| 2 * 3i64.pow(bit))
                .sum()
        })
        .collect()
}

/// Grid `{0, h, 2h, ..., 1}^dim`.
pub fn build_grid_space(
    dim: usize,
    h: &Q,
    metric: MetricKind,
    point_cap: usize,
) -> Result<SampledSpace> {
    if !(1..=3).contains(&dim) {
        return Err(Error::InvalidInput(format!(
            "grid dimension {dim} outside 1..3"
        )));
    }
    if !h.is_positive() || *h > q(1, 2) {
        return Err(Error::InvalidInput(
            "resolution must satisfy 0 < h <= 1/2".into(),
        ));
    }
    let inv = h.recip();
    if !inv.is_integer() {
        return Err(Error::InvalidInput(format!(
            "1/h = {} is not an integer",
            fmt_q(&inv)
        )));
    }
    if metric == MetricKind::Cantor2adic {
        return Err(Error::InvalidInput(
            "cantor_2adic is only defined on Cantor samples".into(),
        ));
    }
    let steps = inv
        .to_integer()
        .to_i64()
        .filter(|s| *s <= MAX_SCALED_COORD)
        .ok_or_else(|| Error::Resource("grid resolution too fine".into()))?;
    let side = (steps + 1) as u128;
    let count = side.checked_pow(dim as u32).unwrap_or(u128::MAX);
    if count > point_cap as u128 {
        return Err(Error::Resource(format!(
            "grid has {count} points, cap is {point_cap}"
        )));
    }
    let mut coords = Vec::with_capacity(count as usize * dim);
    for idx in 0..count {
        let mut rest = idx;
        let mut p = vec![0i64; dim];
        for a in (0..dim).rev() {
            p[a] = (rest % side) as i64;
            rest /= side;
        }
        coords.extend(p);
    }
    let factor = match (metric, dim) {
        (MetricKind::Euclidean, 1) => qi(1),
        // rational upper bounds for sqrt(2), sqrt(3)
        (MetricKind::Euclidean, 2) => q(3, 2),
        (MetricKind::Euclidean, _) => q(7, 4),
        _ => qi(1),
    };
    let mesh = h * factor / qi(2);
    let label = format!("grid{dim}d_{steps}_{}", metric.name());
    Ok(SampledSpace {
        label,
        metric,
        mesh,
        dim,
        scale: steps,
        coords,
        digits: Vec::new(),
        digit_count: 0,
        kind: SpaceKind::Grid {
            dim,
            steps: steps as u64,
        },
        separation: OnceLock::new(),
    })
}

/// Left endpoints of the depth-level middle-thirds intervals, euclidean.
pub fn build_cantor_space(depth: u32) -> Result<SampledSpace> {
    build_cantor_space_with_metric(depth, MetricKind::Euclidean)
}

pub fn build_cantor_space_with_metric(depth: u32, metric: MetricKind) -> Result<SampledSpace> {
    if depth == 0 {
        return Err(Error::InvalidInput("Cantor depth must be positive".into()));
    }
    if depth > MAX_CANTOR_DEPTH {
        return Err(Error::Resource(format!(
            "Cantor depth {depth} exceeds {MAX_CANTOR_DEPTH}"
        )));
    }
    let scale = 3i64.pow(depth);
    let coords = cantor_numerators(depth);
    let mesh = match metric {
        MetricKind::Cantor2adic => qpow(&q(1, 2), depth as u64 + 1),
        _ => q(1, scale),
    };
    let mut space = SampledSpace {
        label: format!("cantor_{depth}_{}", metric.name()),
        metric,
        mesh,
        dim: 1,
        scale,
        coords,
        digits: Vec::new(),
        digit_count: 0,
        kind: SpaceKind::Cantor { depth },
        separation: OnceLock::new(),
    };
    if metric == MetricKind::Cantor2adic {
        space.init_digits()?;
    }
    Ok(space)
}

/// Single point `{0}` on the line.
pub fn build_point_space() -> SampledSpace {
    SampledSpace::from_points("point", MetricKind::Euclidean, qi(1), &[vec![qi(0)]])
        .expect("one point is a valid space")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleKind {
    Epsilon,
    DeltaChain,
    DeltaHaver,
}

/// Finite sequence of positive rationals indexed from 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Schedule {
    pub kind: ScheduleKind,
    #[serde(with = "rational::serde_q_vec")]
    pub values: Vec<Q>,
}

impl Schedule {
    pub fn epsilon(values: Vec<Q>) -> Result<Self> {
        if values.is_empty() || values.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidInput(
                "epsilon schedule needs positive values".into(),
            ));
        }
        Ok(Schedule {
            kind: ScheduleKind::Epsilon,
            values,
        })
    }

    /// `(1/2)^(2^n)` for `n = 1..=horizon`.
    pub fn delta_chain(horizon: usize) -> Self {
        let values = (1..=horizon as u32)
            .map(|n| Q::new(BigInt::one(), rational::two_pow_two_pow(n)))
            .collect();
        Schedule {
            kind: ScheduleKind::DeltaChain,
            values,
        }
    }

    /// `((2^(2^n) - 1) / 2^(2^n)) * (eps_n / 2)` for a paired epsilon schedule.
    pub fn delta_haver(eps: &Schedule) -> Self {
        let values = eps
            .values
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let t = rational::two_pow_two_pow(i as u32 + 1);
                Q::new(&t - BigInt::one(), t) * (e / qi(2))
            })
            .collect();
        Schedule {
            kind: ScheduleKind::DeltaHaver,
            values,
        }
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// 1-based access.
    pub fn at(&self, n: usize) -> &Q {
        &self.values[n - 1]
    }
}
