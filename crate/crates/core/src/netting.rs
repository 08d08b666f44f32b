//! ε-nets and σ-totally-bounded decompositions.
//!
//! Two directions are executable here:
//!
//! * [`decompose_from_hurewicz`] turns per-level finite ball selections of
//!   radius `(1/2)^(2^n)` into the increasing chain
//!   `X_n = ⋂_{n <= m <= N} ∪ selections[m]` together with net certificates
//!   for every level.
//! * [`select_from_decomposition`] goes back: given a chain and a cover
//!   sequence it picks finite subfamilies `V_m ⊆ U_m` covering `X_m`, so every
//!   point is in `∪V_n` from its entry level on.
//!
//! The second direction needs, for each cover, balls that fit inside single
//! cover elements. Instead of re-metrizing the space we use the Lebesgue
//! number of each cover under the fixed metric: a ball of radius `λ/2` around
//! a point sits inside the element realising the point's containment radius.

use serde::Serialize;

use crate::cover::{containment, lebesgue_number, CoverSeq, Region, Shape};
use crate::error::{Error, Result};
use crate::rational::{self, qi, Q};
use crate::space::{SampledSpace, Schedule, SubsetHandle};

/// Finite set of centers whose open `epsilon`-balls contain `covered`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetCertificate {
    #[serde(with = "rational::serde_q")]
    pub epsilon: Q,
    pub centers: Vec<usize>,
    #[serde(serialize_with = "ser_subset")]
    pub covered: SubsetHandle,
}

pub(crate) fn ser_subset<S: serde::Serializer>(
    s: &SubsetHandle,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(s.iter())
}

impl NetCertificate {
    /// Returns the first covered point farther than `epsilon` from every center.
    pub fn validate(&self, space: &SampledSpace) -> std::result::Result<(), usize> {
        let thr = space.open_threshold(&self.epsilon);
        match self
            .covered
            .iter()
            .find(|&p| self.centers.iter().all(|&c| space.key(c, p) >= thr))
        {
            Some(p) => Err(p),
            None => Ok(()),
        }
    }

    pub fn size(&self) -> usize {
        self.centers.len()
    }
}

/// Farthest-point greedy net of `subset`. Starts from the lowest member and
/// keeps adding the member farthest from the current centers (lowest index on
/// ties) until every member is strictly within `epsilon`.
pub fn greedy_net(
    space: &SampledSpace,
    subset: &SubsetHandle,
    epsilon: &Q,
) -> Result<NetCertificate> {
    use num::Signed;
    if !epsilon.is_positive() {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let members = subset.indices();
    let Some(&first) = members.first() else {
        return Err(Error::InvalidInput(
            "cannot build a net of an empty subset".into(),
        ));
    };
    let thr = space.open_threshold(epsilon);
    let mut centers = vec![first];
    let mut nearest: Vec<i128> = members.iter().map(|&p| space.key(first, p)).collect();
    loop {
        let (far_idx, far_key) = nearest.iter().enumerate().fold(
            (0, i128::MIN),
            |best, (i, &k)| if k > best.1 { (i, k) } else { best },
        );
        if far_key < thr {
            break;
        }
        let c = members[far_idx];
        centers.push(c);
        for (slot, &p) in nearest.iter_mut().zip(&members) {
            *slot = (*slot).min(space.key(c, p));
        }
    }
    Ok(NetCertificate {
        epsilon: epsilon.clone(),
        centers,
        covered: subset.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalNet {
    Found { size: usize, centers: Vec<usize> },
    ExceedsCap,
}

/// Smallest set of centers drawn from `subset` covering it at `epsilon`,
/// by exhaustive search over center sets of increasing size. `cap` bounds the
/// number of search nodes.
pub fn minimal_net_bruteforce(
    space: &SampledSpace,
    subset: &SubsetHandle,
    epsilon: &Q,
    cap: u64,
) -> Result<MinimalNet> {
    let members = subset.indices();
    if members.is_empty() {
        return Err(Error::InvalidInput(
            "cannot build a net of an empty subset".into(),
        ));
    }
    if members.len() > 64 {
        return Err(Error::Resource(format!(
            "{} members exceed the exhaustive limit of 64",
            members.len()
        )));
    }
    let thr = space.open_threshold(epsilon);
    let reach: Vec<u64> = members
        .iter()
        .map(|&c| {
            members
                .iter()
                .enumerate()
                .filter(|(_, &p)| space.key(c, p) < thr)
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let all = if members.len() == 64 {
        u64::MAX
    } else {
        (1u64 << members.len()) - 1
    };
    let mut budget = cap;
    for size in 1..=members.len() {
        let mut chosen = Vec::with_capacity(size);
        match search(&reach, all, 0, size, &mut chosen, &mut budget) {
            Some(true) => {
                let centers = chosen.iter().map(|&i| members[i]).collect();
                return Ok(MinimalNet::Found { size, centers });
            }
            Some(false) => {}
            None => return Ok(MinimalNet::ExceedsCap),
        }
    }
    unreachable!("every member covers itself")
}

/// Branches on the lowest uncovered member. `None` when the budget runs out.
fn search(
    reach: &[u64],
    all: u64,
    covered: u64,
    left: usize,
    chosen: &mut Vec<usize>,
    budget: &mut u64,
) -> Option<bool> {
    if covered == all {
        return Some(true);
    }
    if left == 0 {
        return Some(false);
    }
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    let target = (!covered & all).trailing_zeros();
    for (c, &r) in reach.iter().enumerate() {
        if r >> target & 1 == 1 {
            chosen.push(c);
            match search(reach, all, covered | r, left - 1, chosen, budget)? {
                true => return Some(true),
                false => {
                    chosen.pop();
                }
            }
        }
    }
    Some(false)
}

/// Net certificate for chain level `level` at scale `epsilon`, taken from the
/// selection at `from_selection`.
#[derive(Clone, Debug, Serialize)]
pub struct LevelCertificate {
    pub level: usize,
    pub from_selection: usize,
    pub certificate: NetCertificate,
}

/// Increasing chain `X_1 ⊆ ... ⊆ X_N` whose union is the sample.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaDecomposition {
    #[serde(serialize_with = "ser_chain")]
    pub chain: Vec<SubsetHandle>,
    pub certificates: Vec<LevelCertificate>,
}

fn ser_chain<S: serde::Serializer>(
    chain: &[SubsetHandle],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(chain.iter().map(|s| s.indices()))
}

impl SigmaDecomposition {
    /// Chain without certificates, checked for monotonicity and coverage.
    pub fn from_chain(space: &SampledSpace, chain: Vec<SubsetHandle>) -> Result<Self> {
        let d = SigmaDecomposition {
            chain,
            certificates: Vec::new(),
        };
        d.validate(space)?;
        Ok(d)
    }

    /// Staircase `X_n = sample ∩ [0, min(1, n/steps)]` on the first axis.
    pub fn staircase(space: &SampledSpace, levels: usize, steps: i64) -> Result<Self> {
        let chain = (1..=levels)
            .map(|n| {
                let top = Q::new((n as i64).into(), steps.into()).min(qi(1));
                SubsetHandle::from_fn(space.len(), |p| space.coord(p, 0) <= top)
            })
            .collect();
        SigmaDecomposition::from_chain(space, chain)
    }

    pub fn horizon(&self) -> usize {
        self.chain.len()
    }

    /// Level `n` (1-based); levels past the end repeat the last one.
    pub fn level(&self, n: usize) -> &SubsetHandle {
        &self.chain[n.min(self.chain.len()) - 1]
    }

    /// Least level containing `p`.
    pub fn entry(&self, p: usize) -> Option<usize> {
        self.chain.iter().position(|x| x.contains(p)).map(|i| i + 1)
    }

    pub fn validate(&self, space: &SampledSpace) -> Result<()> {
        if self.chain.is_empty() {
            return Err(Error::InvalidInput("chain is empty".into()));
        }
        for (m, pair) in self.chain.windows(2).enumerate() {
            if let Some(p) = pair[0].iter().find(|&p| !pair[1].contains(p)) {
                return Err(Error::Precondition {
                    point: p,
                    reason: format!("chain not monotone: in X_{} but not X_{}", m + 1, m + 2),
                });
            }
        }
        let last = self.chain.last().expect("nonempty");
        if let Some(p) = (0..space.len()).find(|&p| !last.contains(p)) {
            return Err(Error::Precondition {
                point: p,
                reason: "point lies in no chain level".into(),
            });
        }
        for lc in &self.certificates {
            lc.certificate
                .validate(space)
                .map_err(|p| Error::Precondition {
                    point: p,
                    reason: format!(
                        "certificate for X_{} at scale {} fails",
                        lc.level,
                        rational::fmt_q(&lc.certificate.epsilon)
                    ),
                })?;
        }
        Ok(())
    }
}

/// Builds the chain from per-level ball selections of radius `(1/2)^(2^n)`.
/// `selections[n-1]` is the selection at level `n`; `scales` lists the ε
/// values at which every level receives a net certificate.
pub fn decompose_from_hurewicz(
    space: &SampledSpace,
    selections: &[Vec<Region>],
    horizon: usize,
    scales: &[Q],
) -> Result<SigmaDecomposition> {
    if horizon == 0 || selections.len() < horizon {
        return Err(Error::InvalidInput(format!(
            "need {horizon} selections, got {}",
            selections.len()
        )));
    }
    let deltas = Schedule::delta_chain(horizon);
    for (i, sel) in selections[..horizon].iter().enumerate() {
        for r in sel {
            match r.shape() {
                Shape::Ball { radius, .. } if radius == deltas.at(i + 1) => {}
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "selection {} must hold balls of radius {}",
                        i + 1,
                        rational::fmt_q(deltas.at(i + 1))
                    )))
                }
            }
        }
    }
    let unions: Vec<SubsetHandle> = selections[..horizon]
        .iter()
        .map(|sel| SubsetHandle::from_fn(space.len(), |p| sel.iter().any(|r| r.contains(space, p))))
        .collect();
    let mut chain = vec![SubsetHandle::empty(space.len()); horizon];
    chain[horizon - 1] = unions[horizon - 1].clone();
    for n in (0..horizon - 1).rev() {
        chain[n] = chain[n + 1].intersect(&unions[n]);
    }
    if let Some(p) = (0..space.len()).find(|&p| !chain[horizon - 1].contains(p)) {
        return Err(Error::Precondition {
            point: p,
            reason: "point is in no tail of the selections".into(),
        });
    }
    let mut certificates = Vec::new();
    for n in 1..=horizon {
        for eps in scales {
            let m_eps = (1..=horizon)
                .find(|&m| deltas.at(m) <= eps)
                .ok_or_else(|| Error::HorizonExhausted {
                    point: 0,
                    reason: format!(
                        "no level up to {horizon} has radius below {}",
                        rational::fmt_q(eps)
                    ),
                })?;
            let m = n.max(m_eps);
            let centers = selections[m - 1]
                .iter()
                .map(|r| match r.shape() {
                    Shape::Ball { center, .. } => *center,
                    _ => unreachable!("checked above"),
                })
                .collect();
            let certificate = NetCertificate {
                epsilon: eps.clone(),
                centers,
                covered: chain[n - 1].clone(),
            };
            certificates.push(LevelCertificate {
                level: n,
                from_selection: m,
                certificate,
            });
        }
    }
    let decomposition = SigmaDecomposition {
        chain,
        certificates,
    };
    decomposition.validate(space)?;
    Ok(decomposition)
}

/// Finite subfamilies `V_m ⊆ U_m` obtained from a chain.
#[derive(Clone, Debug, Serialize)]
pub struct HurewiczPicks {
    /// Indices into `covers[m]`, per level.
    pub picks: Vec<Vec<usize>>,
    /// Per level, the ball net `F_m` (centers) and its radius `λ_m / 2`.
    pub nets: Vec<NetCertificate>,
    /// Per point, the least level whose chain set contains it.
    pub entry: Vec<usize>,
}

/// For each level: `λ_m` of `covers[m]`, a greedy `λ_m/2`-net of `X_m`, and
/// for each net ball the cover element realising the center's containment
/// radius.
pub fn select_from_decomposition(
    space: &SampledSpace,
    decomposition: &SigmaDecomposition,
    covers: &CoverSeq,
) -> Result<HurewiczPicks> {
    decomposition.validate(space)?;
    let entry = (0..space.len())
        .map(|p| {
            decomposition.entry(p).ok_or(Error::Precondition {
                point: p,
                reason: "orphan point".into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut picks = Vec::with_capacity(covers.horizon());
    let mut nets = Vec::with_capacity(covers.horizon());
    for m in 1..=covers.horizon() {
        let cover = covers.cover(m);
        let leb = lebesgue_number(space, cover)?;
        let radius = &leb.lambda / qi(2);
        let level = decomposition.level(m);
        if level.is_empty() {
            picks.push(Vec::new());
            nets.push(NetCertificate {
                epsilon: radius,
                centers: Vec::new(),
                covered: level.clone(),
            });
            continue;
        }
        let net = greedy_net(space, level, &radius)?;
        let mut chosen = Vec::new();
        for &c in &net.centers {
            let parent = leb.best_region[c].ok_or(Error::NotCovering { point: c })?;
            let ball = Region::ball(space, c, radius.clone())?;
            containment(space, &ball, &cover.regions[parent]).map_err(|p| {
                Error::Invariant(format!(
                    "net ball at {c} escapes its Lebesgue parent at point {p}"
                ))
            })?;
            chosen.push(parent);
        }
        chosen.sort_unstable();
        chosen.dedup();
        picks.push(chosen);
        nets.push(net);
    }
    Ok(HurewiczPicks { picks, nets, entry })
}

/// Per-level greedy nets of `levels[n]` at radius `(1/2)^(2^n)`, as balls.
pub fn greedy_delta_selections(
    space: &SampledSpace,
    levels: &[SubsetHandle],
) -> Result<Vec<Vec<Region>>> {
    let deltas = Schedule::delta_chain(levels.len());
    levels
        .iter()
        .enumerate()
        .map(|(i, level)| {
            if level.is_empty() {
                return Ok(Vec::new());
            }
            let r = deltas.at(i + 1);
            greedy_net(space, level, r)?
                .centers
                .into_iter()
                .map(|c| Region::ball(space, c, r.clone()))
                .collect()
        })
        .collect()
}
