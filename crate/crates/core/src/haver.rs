//! Small-diameter disjoint covers from an increasing chain of totally bounded
//! pieces.
//!
//! For level `n` the cover `U_n` consists of the balls `B(x, ε_n/2)` over a
//! `δ_n`-net `F_n` of `X_n` plus the complement of the closed `δ_n`-balls.
//! The strengthened selection yields disjoint `H'_n`; keeping only members
//! inside one of the balls gives `H_n`, whose members have diameter `< ε_n`.
//! Every point is then recovered from the block structure: past its entry
//! level and tail index, some block contains a `j` whose `H'_j` member around
//! the point cannot sit in the complement piece, since the point lies in `X_j`.

use serde::Serialize;

use crate::cover::{containment, pairwise_disjoint_check, Cover, CoverSeq, DisjointFamily, Region};
use crate::error::{Error, Result};
use crate::game::{sc_plus_select, ScPlusResult, Transcript};
use crate::netting::{greedy_net, SigmaDecomposition};
use crate::rational::{self, qi, Q};
use crate::screen::ScOptions;
use crate::space::{Diameter, SampledSpace, Schedule, SubsetHandle};

/// Keeps `raw[n]` when already below half the previous value, else uses a
/// quarter of it; the result satisfies `ε_{n+1} < ε_n / 2` and `ε_n <= raw[n]`.
pub fn normalize_epsilons(raw: &[Q]) -> Result<Schedule> {
    let mut out: Vec<Q> = Vec::with_capacity(raw.len());
    for r in raw {
        let next = match out.last() {
            Some(prev) if *r >= prev / qi(2) => prev / qi(4),
            _ => r.clone(),
        };
        out.push(next);
    }
    Schedule::epsilon(out)
}

fn check_halving(schedule: &Schedule) -> Result<()> {
    match schedule
        .values
        .windows(2)
        .position(|w| w[1] >= &w[0] / qi(2))
    {
        Some(i) => Err(Error::InvalidInput(format!(
            "schedule must halve strictly: ε_{} = {} is not below half of {}",
            i + 2,
            rational::fmt_q(&schedule.values[i + 1]),
            rational::fmt_q(&schedule.values[i])
        ))),
        None => Ok(()),
    }
}

/// Per-level data behind `U_n`.
#[derive(Clone, Debug, Serialize)]
pub struct HaverLevel {
    #[serde(with = "rational::serde_q")]
    pub epsilon: Q,
    #[serde(with = "rational::serde_q")]
    pub delta: Q,
    /// `F_n`; region `i < |F_n|` of `U_n` is the ball at `net[i]`.
    pub net: Vec<usize>,
}

/// `U_1, ..., U_N` with their nets. The last region of each cover is the
/// complement of the closed `δ_n`-balls.
pub fn haver_covers(
    space: &SampledSpace,
    chain: &SigmaDecomposition,
    schedule: &Schedule,
) -> Result<(CoverSeq, Vec<HaverLevel>)> {
    chain.validate(space)?;
    check_halving(schedule)?;
    let deltas = Schedule::delta_haver(schedule);
    let mut covers = Vec::with_capacity(schedule.horizon());
    let mut levels = Vec::with_capacity(schedule.horizon());
    for n in 1..=schedule.horizon() {
        let (eps, delta) = (schedule.at(n), deltas.at(n));
        if delta >= &(eps / qi(2)) {
            return Err(Error::Invariant(format!("δ_{n} is not below ε_{n}/2")));
        }
        let level = chain.level(n);
        let net = if level.is_empty() {
            Vec::new()
        } else {
            greedy_net(space, level, delta)?.centers
        };
        let (eps_thr, delta_thr) = (space.open_threshold(eps), space.closed_threshold(delta));
        for &x in &net {
            if let Some(p) = (0..space.len())
                .find(|&p| space.key(x, p) <= delta_thr && space.key(x, p) >= eps_thr)
            {
                return Err(Error::Invariant(format!(
                    "closed δ_{n}-ball at {x} reaches {p} outside the ε_{n}-ball"
                )));
            }
        }
        let mut regions = net
            .iter()
            .map(|&x| Region::ball(space, x, eps / qi(2)))
            .collect::<Result<Vec<_>>>()?;
        let rest =
            Region::co_closed_balls(space, net.iter().map(|&x| (x, delta.clone())).collect())?;
        if let Some(p) = level.iter().find(|&p| rest.contains(space, p)) {
            return Err(Error::Invariant(format!(
                "point {p} of X_{n} lies in the complement piece"
            )));
        }
        regions.push(rest);
        let cover = Cover::whole(space, regions);
        cover.validate(space)?;
        covers.push(cover);
        levels.push(HaverLevel {
            epsilon: eps.clone(),
            delta: delta.clone(),
            net,
        });
    }
    Ok((CoverSeq::new(covers), levels))
}

/// How one point was recovered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimTrace {
    pub point: usize,
    /// Least level containing the point.
    pub entry: usize,
    /// Block number from which every block covers the point.
    pub tail_index: usize,
    /// First block `[start, end)` with `start >= max(entry, m_{tail - 1})`.
    pub block: (usize, usize),
    pub level: usize,
    pub member: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HaverWitness {
    pub epsilon_schedule: Schedule,
    pub levels: Vec<HaverLevel>,
    pub families: Vec<DisjointFamily>,
    pub diam_bounds: Vec<Option<Diameter>>,
    /// Per point, the first `(n, member)` containing it.
    pub covering_witness: Vec<Option<(usize, usize)>>,
    pub traces: Vec<ClaimTrace>,
    pub blocks: Vec<usize>,
}

impl HaverWitness {
    /// Disjointness, `diameter < ε_n` for every member, and coverage.
    pub fn validate(&self, space: &SampledSpace, margin: &Q) -> Result<()> {
        for (n, f) in self.families.iter().enumerate() {
            pairwise_disjoint_check(space, &f.regions, margin)
                .map_err(|v| Error::Invariant(format!("H_{} not disjoint: {v:?}", n + 1)))?;
            let eps = self.epsilon_schedule.at(n + 1);
            for (i, r) in f.regions.iter().enumerate() {
                if !space.diameter_below(&r.member_list(space), eps) {
                    return Err(Error::Invariant(format!(
                        "member {i} of H_{} is not below ε_{}",
                        n + 1,
                        n + 1
                    )));
                }
            }
        }
        for p in 0..space.len() {
            let hit = self
                .families
                .iter()
                .any(|f| f.regions.iter().any(|r| r.contains(space, p)));
            if !hit {
                return Err(Error::NotCovering { point: p });
            }
        }
        Ok(())
    }
}

/// Full construction; also returns the game transcript and the `H'_n`.
pub fn build_haver_witness(
    space: &SampledSpace,
    chain: &SigmaDecomposition,
    schedule: &Schedule,
    tail_slack: usize,
    opts: &ScOptions,
) -> Result<(HaverWitness, Transcript, ScPlusResult)> {
    let (covers, levels) = haver_covers(space, chain, schedule)?;
    let (transcript, plus) = sc_plus_select(space, &covers, tail_slack, opts)?;
    let mut families = Vec::with_capacity(covers.horizon());
    for (n, h) in plus.families.iter().enumerate() {
        let cover = covers.cover(n + 1);
        let balls = &cover.regions[..levels[n].net.len()];
        let mut kept = Vec::new();
        for r in &h.regions {
            if let Some(i) = balls.iter().position(|b| containment(space, r, b).is_ok()) {
                kept.push((r.clone(), i));
            }
        }
        let witness = kept
            .iter()
            .map(|(r, i)| {
                containment(space, r, &balls[*i])
                    .map(|how| crate::cover::Witness { parent: *i, how })
                    .map_err(|p| Error::Invariant(format!("filtered member escapes at {p}")))
            })
            .collect::<Result<Vec<_>>>()?;
        families.push(DisjointFamily {
            regions: kept.into_iter().map(|(r, _)| r).collect(),
            witness,
        });
    }
    let traces = (0..space.len())
        .map(|x| replay_claim(space, chain, &plus, &families, x))
        .collect::<Result<Vec<_>>>()?;
    let covering_witness = (0..space.len())
        .map(|p| {
            families.iter().enumerate().find_map(|(n, f)| {
                f.regions
                    .iter()
                    .position(|r| r.contains(space, p))
                    .map(|i| (n + 1, i))
            })
        })
        .collect();
    let diam_bounds = families
        .iter()
        .map(|f| {
            f.regions
                .iter()
                .map(|r| space.diameter(&r.members(space)))
                .filter(|d| !d.empty)
                .max_by(|a, b| a.value.cmp(&b.value))
        })
        .collect();
    let witness = HaverWitness {
        epsilon_schedule: schedule.clone(),
        levels,
        families,
        diam_bounds,
        covering_witness,
        traces,
        blocks: plus.blocks.clone(),
    };
    witness.validate(space, &opts.margin)?;
    Ok((witness, transcript, plus))
}

fn replay_claim(
    space: &SampledSpace,
    chain: &SigmaDecomposition,
    plus: &ScPlusResult,
    kept: &[DisjointFamily],
    x: usize,
) -> Result<ClaimTrace> {
    let entry = chain.entry(x).ok_or(Error::Precondition {
        point: x,
        reason: "in no chain level".into(),
    })?;
    let tail_index = plus.tail_index[x];
    let ranges = plus.block_ranges();
    let floor = entry.max(plus.blocks[tail_index - 1]);
    let block = *ranges
        .iter()
        .find(|(start, _)| *start >= floor)
        .ok_or_else(|| Error::HorizonExhausted {
            point: x,
            reason: format!(
                "no block starts at or after {floor} (blocks {:?})",
                plus.blocks
            ),
        })?;
    let trace = |level, member| ClaimTrace {
        point: x,
        entry,
        tail_index,
        block,
        level,
        member,
    };
    for j in block.0..block.1 {
        let Some(v) = plus.families[j - 1]
            .regions
            .iter()
            .find(|r| r.contains(space, x))
        else {
            continue;
        };
        return match kept[j - 1].regions.iter().position(|r| r == v) {
            Some(i) => Ok(trace(j, i)),
            None => Err(Error::Invariant(format!(
                "point {x}: member of H'_{j} around it was filtered out (entry {entry}, block {block:?})"
            ))),
        };
    }
    Err(Error::Invariant(format!(
        "point {x}: block {block:?} holds no H' member around it"
    )))
}

/// Chain `X_n = sample` at every level.
pub fn full_chain(space: &SampledSpace, levels: usize) -> Result<SigmaDecomposition> {
    SigmaDecomposition::from_chain(space, vec![SubsetHandle::full(space.len()); levels])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::covers_check;
    use crate::rational::{q, qpow};
    use crate::space::{
        build_cantor_space, build_grid_space, build_point_space, MetricKind, DEFAULT_POINT_CAP,
    };

    fn quarters(n: usize) -> Schedule {
        Schedule::epsilon((1..=n).map(|i| qpow(&q(1, 4), i as u64)).collect()).unwrap()
    }

    #[test]
    fn normalization_examples() {
        let id = vec![qi(1), q(1, 4), q(1, 16)];
        assert_eq!(normalize_epsilons(&id).unwrap().values, id);
        assert_eq!(
            normalize_epsilons(&[qi(1), qi(1), qi(1)]).unwrap().values,
            id
        );
        assert_eq!(
            normalize_epsilons(&[q(1, 2), q(1, 8)]).unwrap().values,
            vec![q(1, 2), q(1, 8)]
        );
        assert!(check_halving(&Schedule::epsilon(vec![qi(1), q(1, 2)]).unwrap()).is_err());
    }

    #[test]
    fn delta_formula() {
        let eps = Schedule::epsilon(vec![qi(1), q(1, 4)]).unwrap();
        let d = Schedule::delta_haver(&eps);
        assert_eq!(d.values, vec![q(3, 8), q(15, 128)]);
    }

    #[test]
    fn unit_interval_first_cover() {
        let s = build_grid_space(1, &q(1, 64), MetricKind::Euclidean, DEFAULT_POINT_CAP).unwrap();
        let chain = full_chain(&s, 1).unwrap();
        let eps = Schedule::epsilon(vec![qi(1)]).unwrap();
        let (covers, levels) = haver_covers(&s, &chain, &eps).unwrap();
        let u1 = covers.cover(1);
        assert!(covers_check(&s, &u1.regions, &s.full()).is_ok());
        assert!(u1.regions.last().unwrap().member_list(&s).is_empty());
        assert_eq!(levels[0].delta, q(3, 8));
    }

    #[test]
    fn single_point_witness() {
        let s = build_point_space();
        let chain = full_chain(&s, 1).unwrap();
        let eps = Schedule::epsilon(vec![qi(1)]).unwrap();
        let (w, _, _) =
            build_haver_witness(&s, &chain, &eps, 1, &ScOptions::for_space(&s)).unwrap();
        assert_eq!(w.families.len(), 1);
        assert_eq!(w.families[0].len(), 1);
        assert_eq!(w.traces[0].level, 1);
    }

    #[test]
    fn cantor_witness() {
        let s = build_cantor_space(6).unwrap();
        let chain = full_chain(&s, 6).unwrap();
        let (w, _, _) =
            build_haver_witness(&s, &chain, &quarters(6), 1, &ScOptions::for_space(&s)).unwrap();
        assert!(w.validate(&s, s.mesh()).is_ok());
        assert_eq!(w.traces.len(), s.len());
    }

    #[test]
    fn staircase_witness() {
        let s = build_grid_space(1, &q(1, 64), MetricKind::Euclidean, DEFAULT_POINT_CAP).unwrap();
        let chain = SigmaDecomposition::staircase(&s, 8, 4).unwrap();
        let (w, _, _) =
            build_haver_witness(&s, &chain, &quarters(8), 1, &ScOptions::for_space(&s)).unwrap();
        assert!(w.validate(&s, s.mesh()).is_ok());
        for t in &w.traces {
            assert!(t.block.0 >= t.entry && t.level >= t.block.0 && t.level < t.block.1);
        }
    }

    #[test]
    fn too_short_horizon_is_reported() {
        let s = build_grid_space(1, &q(1, 16), MetricKind::Euclidean, DEFAULT_POINT_CAP).unwrap();
        let chain = SigmaDecomposition::staircase(&s, 2, 2).unwrap();
        let err = build_haver_witness(&s, &chain, &quarters(2), 1, &ScOptions::for_space(&s))
            .unwrap_err();
        assert!(matches!(err, Error::HorizonExhausted { .. }), "{err}");
    }
}
