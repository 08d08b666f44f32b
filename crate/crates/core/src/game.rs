//! The Hurewicz game played to a finite horizon.
//!
//! ONE answers with disjoint refinements of a suffix of the cover sequence
//! ([`strategy_f_move`]); TWO picks finitely many of those regions. The
//! block index of a round is the least `n` with every pick taken from some
//! `V_j`, `j < n`; the next round starts there. [`assemble_w`] regroups the
//! picks of each round into per-cover disjoint families `W_j`.
//!
//! A region enters `W_j` only if it was picked from `V_j` itself. Admitting
//! every pick that merely fits inside an element of `U_j` mixes members of
//! different `V_i`, which overlap.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use serde::Serialize;

use crate::cover::{covers_check, find_parent, Cover, CoverSeq, DisjointFamily, Region};
use crate::error::{Error, Result};
use crate::screen::{class_count, sc_fin_select, ScOptions};
use crate::space::{SampledSpace, SubsetHandle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoPolicy {
    /// Greedy cover of the sample from the shortest covering prefix.
    Covering,
    /// Same, restricted to regions avoiding the given point.
    Adversarial(usize),
}

impl TwoPolicy {
    pub fn parse(text: &str) -> Result<Self> {
        match text.split_once(':') {
            None if text == "covering" => Ok(TwoPolicy::Covering),
            Some(("adversarial", p)) => p
                .trim()
                .parse()
                .map(TwoPolicy::Adversarial)
                .map_err(|_| Error::Parse(format!("bad point in {text:?}"))),
            _ => Err(Error::Parse(format!("unknown TWO policy {text:?}"))),
        }
    }
}

/// One region of ONE's move: member `member` of `V_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pick {
    pub n: usize,
    pub member: usize,
}

/// ONE's move: `families[i]` is `V_{start + i}`.
#[derive(Clone, Debug, Serialize)]
pub struct OneMove {
    pub start: usize,
    pub families: Vec<DisjointFamily>,
}

impl OneMove {
    pub fn family(&self, n: usize) -> Option<&DisjointFamily> {
        n.checked_sub(self.start).and_then(|i| self.families.get(i))
    }

    pub fn region(&self, pick: Pick) -> Option<&Region> {
        self.family(pick.n).and_then(|f| f.regions.get(pick.member))
    }

    pub fn end(&self) -> usize {
        self.start + self.families.len() - 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Round {
    pub one_move: OneMove,
    pub two_move: Vec<Pick>,
    pub block: usize,
}

/// Truncated loss criterion: every point lies in `∪T_k` for all rounds
/// `k >= k(x)`, with `k(x) <= rounds + 1 - tail_slack`, so the last
/// `tail_slack` rounds all cover it.
#[derive(Clone, Debug, Serialize)]
pub struct LossVerdict {
    pub lost_by_one: bool,
    /// Per point, least `k(x)`; `rounds + 1` when the point misses the last round.
    pub tail_index: Vec<usize>,
    /// First point violating the criterion.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Transcript {
    pub horizon: usize,
    pub tail_slack: usize,
    pub rounds: Vec<Round>,
    /// Block indices `m_1 < m_2 < ...`.
    pub blocks: Vec<usize>,
    pub verdict: LossVerdict,
}

impl Transcript {
    /// Regions of round `k` (1-based).
    pub fn two_regions(&self, k: usize) -> Vec<&Region> {
        let r = &self.rounds[k - 1];
        r.two_move
            .iter()
            .map(|&p| r.one_move.region(p).expect("validated pick"))
            .collect()
    }
}

/// ONE's move at `start`: disjoint refinements of `covers[start..]`.
pub fn strategy_f_move(
    space: &SampledSpace,
    covers: &CoverSeq,
    start: usize,
    opts: &ScOptions,
) -> Result<OneMove> {
    let k = class_count(space);
    if start == 0 || start + k - 1 > covers.horizon() {
        return Err(Error::Game(format!(
            "start index {start} leaves fewer than {k} covers before horizon {}",
            covers.horizon()
        )));
    }
    let sel = sc_fin_select(space, &covers.suffix(start), opts)?;
    Ok(OneMove {
        start,
        families: sel.families,
    })
}

/// Least `n` such that every region of `two_move` occurs in some `V_j`,
/// `start <= j < n`. Regions are matched by shape.
pub fn block_index(two_move: &[Region], one_move: &OneMove) -> Result<usize> {
    let mut m = one_move.start;
    for (i, r) in two_move.iter().enumerate() {
        let j = (one_move.start..=one_move.end())
            .find(|&j| {
                one_move
                    .family(j)
                    .map(|f| f.regions.contains(r))
                    .unwrap_or(false)
            })
            .ok_or_else(|| Error::Game(format!("picked region {i} is not in ONE's move")))?;
        m = m.max(j + 1);
    }
    Ok(m)
}

/// Candidate picks from `V_start..=V_last`; a region repeated in later
/// families is offered only from its first family.
fn region_sets(space: &SampledSpace, one: &OneMove, last: usize) -> Vec<(Pick, SubsetHandle)> {
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    for n in one.start..=last {
        let f = one.family(n).expect("family in range");
        for (member, r) in f.regions.iter().enumerate() {
            if seen.insert(serde_json::to_string(r).expect("regions serialize")) {
                out.push((Pick { n, member }, r.members(space)));
            }
        }
    }
    out
}

/// Lazy greedy set cover of `target`; ties go to the lowest pick.
fn greedy_cover(candidates: &[(Pick, SubsetHandle)], target: &SubsetHandle) -> Vec<Pick> {
    let mut left = target.clone();
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = candidates
        .iter()
        .enumerate()
        .map(|(i, (_, set))| (set.intersect(&left).count(), Reverse(i)))
        .filter(|(g, _)| *g > 0)
        .collect();
    let mut chosen = Vec::new();
    while let Some((_, Reverse(i))) = heap.pop() {
        if left.is_empty() {
            break;
        }
        let gain = candidates[i].1.intersect(&left).count();
        if gain == 0 {
            continue;
        }
        if heap
            .peek()
            .map(|top| (gain, Reverse(i)) >= *top)
            .unwrap_or(true)
        {
            chosen.push(candidates[i].0);
            left = SubsetHandle::from_fn(left.universe(), |p| {
                left.contains(p) && !candidates[i].1.contains(p)
            });
        } else {
            heap.push((gain, Reverse(i)));
        }
    }
    chosen.sort();
    chosen
}

/// TWO's answer under `policy`: the shortest prefix of ONE's families that
/// covers every point the policy can reach, then a greedy cover from it.
pub fn two_move(space: &SampledSpace, one: &OneMove, policy: TwoPolicy) -> Vec<Pick> {
    let all = SubsetHandle::full(space.len());
    let avoid = match policy {
        TwoPolicy::Covering => None,
        TwoPolicy::Adversarial(p) => Some(p),
    };
    let mut sets = match avoid {
        // ONE's move covers, so the whole sample is reachable
        None => Vec::new(),
        Some(p) => {
            let mut s = region_sets(space, one, one.end());
            s.retain(|(_, m)| !m.contains(p));
            s
        }
    };
    let reachable = match avoid {
        None => all,
        Some(_) => sets
            .iter()
            .fold(SubsetHandle::empty(space.len()), |acc, (_, s)| acc.union(s)),
    };
    let mut prefix_end = one.end();
    let mut acc = SubsetHandle::empty(space.len());
    for n in one.start..=one.end() {
        if avoid.is_none() {
            sets = region_sets(space, one, n);
            acc = sets
                .iter()
                .fold(SubsetHandle::empty(space.len()), |a, (_, s)| a.union(s));
        } else {
            for (_, s) in sets.iter().filter(|(pick, _)| pick.n == n) {
                acc = acc.union(s);
            }
        }
        if reachable.is_subset_of(&acc) {
            prefix_end = n;
            break;
        }
    }
    sets.retain(|(pick, _)| pick.n <= prefix_end);
    greedy_cover(&sets, &reachable)
}

fn loss_verdict(space: &SampledSpace, rounds: &[Round], tail_slack: usize) -> LossVerdict {
    let total = rounds.len();
    let covered: Vec<SubsetHandle> = rounds
        .iter()
        .map(|r| {
            r.two_move
                .iter()
                .map(|&p| r.one_move.region(p).expect("validated pick").members(space))
                .fold(SubsetHandle::empty(space.len()), |a, b| a.union(&b))
        })
        .collect();
    let tail_index: Vec<usize> = (0..space.len())
        .map(|p| {
            let mut k = total + 1;
            while k > 1 && covered[k - 2].contains(p) {
                k -= 1;
            }
            k
        })
        .collect();
    let limit = (total + 1).saturating_sub(tail_slack);
    let witness = tail_index.iter().position(|&k| k > limit);
    LossVerdict {
        lost_by_one: witness.is_none(),
        tail_index,
        witness,
    }
}

/// Plays rounds from `b_0 = 1` until fewer than one block of covers remains
/// before `horizon`.
pub fn play_hurewicz_game(
    space: &SampledSpace,
    covers: &CoverSeq,
    policy: TwoPolicy,
    horizon: usize,
    tail_slack: usize,
    opts: &ScOptions,
) -> Result<Transcript> {
    if let TwoPolicy::Adversarial(p) = policy {
        if p >= space.len() {
            return Err(Error::InvalidInput(format!(
                "adversarial point {p} out of range"
            )));
        }
    }
    let horizon = horizon.min(covers.horizon());
    let covers = CoverSeq::new(covers.covers[..horizon].to_vec());
    covers.validate(space)?;
    let k = class_count(space);
    let mut start = 1;
    let mut rounds = Vec::new();
    let mut blocks = Vec::new();
    while start + k - 1 <= horizon {
        let one = strategy_f_move(space, &covers, start, opts)?;
        let picks = two_move(space, &one, policy);
        let regions: Vec<Region> = picks
            .iter()
            .map(|&p| {
                one.region(p)
                    .cloned()
                    .ok_or_else(|| Error::Game(format!("pick {p:?} outside ONE's move")))
            })
            .collect::<Result<_>>()?;
        let m = block_index(&regions, &one)?;
        if m <= start {
            return Err(Error::Game(format!("round at {start} makes no progress")));
        }
        blocks.push(m);
        rounds.push(Round {
            one_move: one,
            two_move: picks,
            block: m,
        });
        start = m;
    }
    let verdict = loss_verdict(space, &rounds, tail_slack);
    Ok(Transcript {
        horizon,
        tail_slack,
        rounds,
        blocks,
        verdict,
    })
}

/// `W_1, ..., W_N` with block indices and per-point tail indices.
#[derive(Clone, Debug, Serialize)]
pub struct ScPlusResult {
    pub families: Vec<DisjointFamily>,
    /// `1 = m_0 < m_1 < ...`; `W_j` for `m_{k-1} <= j < m_k` come from round `k`.
    pub blocks: Vec<usize>,
    /// Per point, least `k` from which every block holds a `j` covering it.
    pub tail_index: Vec<usize>,
    /// Per family member, the round and pick it came from.
    pub provenance: Vec<Vec<(usize, Pick)>>,
}

impl ScPlusResult {
    /// Intervals `[m_{k-1}, m_k)` that end inside the horizon.
    pub fn block_ranges(&self) -> Vec<(usize, usize)> {
        self.blocks.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Finiteness, disjointness and refinement per family, then the block
    /// clause from each point's tail index.
    pub fn validate(
        &self,
        space: &SampledSpace,
        covers: &CoverSeq,
        margin: &num::BigRational,
    ) -> Result<()> {
        if self.families.len() != covers.horizon() {
            return Err(Error::Invariant("one W family per cover expected".into()));
        }
        for (j, f) in self.families.iter().enumerate() {
            f.validate(space, covers.cover(j + 1), margin)?;
        }
        if self.blocks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invariant("blocks must strictly increase".into()));
        }
        let fresh = block_tail_index(space, &self.families, &self.block_ranges());
        if let Some(p) = fresh.iter().zip(&self.tail_index).position(|(a, b)| a != b) {
            return Err(Error::Invariant(format!(
                "tail index of point {p} does not recompute"
            )));
        }
        Ok(())
    }
}

fn block_tail_index(
    space: &SampledSpace,
    families: &[DisjointFamily],
    ranges: &[(usize, usize)],
) -> Vec<usize> {
    let hit: Vec<SubsetHandle> = ranges
        .iter()
        .map(|&(a, b)| {
            SubsetHandle::from_fn(space.len(), |p| {
                (a..b).any(|j| {
                    families
                        .get(j - 1)
                        .map(|f| f.regions.iter().any(|r| r.contains(space, p)))
                        .unwrap_or(false)
                })
            })
        })
        .collect();
    (0..space.len())
        .map(|p| {
            let mut k = ranges.len() + 1;
            while k > 1 && hit[k - 2].contains(p) {
                k -= 1;
            }
            k
        })
        .collect()
}

/// Regroups each round's picks into `W_j`: a pick from `V_j` joins `W_j` if
/// it fits into an element of `covers[j]`.
pub fn assemble_w(
    space: &SampledSpace,
    transcript: &Transcript,
    covers: &CoverSeq,
    margin: &num::BigRational,
) -> Result<ScPlusResult> {
    if let Some(p) = transcript.verdict.witness {
        return Err(Error::Game(format!(
            "play is not lost by ONE: point {p} has no tail"
        )));
    }
    let horizon = transcript.horizon;
    let mut members: Vec<Vec<Region>> = vec![Vec::new(); horizon];
    let mut provenance: Vec<Vec<(usize, Pick)>> = vec![Vec::new(); horizon];
    for (k, round) in transcript.rounds.iter().enumerate() {
        for &pick in &round.two_move {
            let region = round.one_move.region(pick).expect("validated pick");
            if find_parent(space, region, &covers.cover(pick.n).regions).is_ok() {
                members[pick.n - 1].push(region.clone());
                provenance[pick.n - 1].push((k + 1, pick));
            }
        }
    }
    let families = members
        .into_iter()
        .enumerate()
        .map(|(j, regions)| DisjointFamily::build(space, regions, covers.cover(j + 1), margin))
        .collect::<Result<Vec<_>>>()?;
    let mut blocks = vec![1];
    blocks.extend(&transcript.blocks);
    let ranges: Vec<(usize, usize)> = blocks.windows(2).map(|w| (w[0], w[1])).collect();
    let tail_index = block_tail_index(space, &families, &ranges);
    let result = ScPlusResult {
        families,
        blocks,
        tail_index,
        provenance,
    };
    result.validate(
        space,
        &CoverSeq::new(covers.covers[..horizon].to_vec()),
        margin,
    )?;
    Ok(result)
}

/// Covering TWO against strategy F, then the `W_j` regrouping.
pub fn sc_plus_select(
    space: &SampledSpace,
    covers: &CoverSeq,
    tail_slack: usize,
    opts: &ScOptions,
) -> Result<(Transcript, ScPlusResult)> {
    let t = play_hurewicz_game(
        space,
        covers,
        TwoPolicy::Covering,
        covers.horizon(),
        tail_slack,
        opts,
    )?;
    let w = assemble_w(space, &t, covers, &opts.margin)?;
    Ok((t, w))
}

fn picked_unions(
    space: &SampledSpace,
    covers: &CoverSeq,
    picks: &[Vec<usize>],
) -> Result<Vec<SubsetHandle>> {
    if picks.len() != covers.horizon() {
        return Err(Error::InvalidInput(format!(
            "{} pick lists for {} covers",
            picks.len(),
            covers.horizon()
        )));
    }
    picks
        .iter()
        .enumerate()
        .map(|(n, list)| {
            let cover: &Cover = covers.cover(n + 1);
            list.iter()
                .try_fold(SubsetHandle::empty(space.len()), |acc, &i| {
                    let r = cover.regions.get(i).ok_or_else(|| {
                        Error::InvalidInput(format!("pick {i} out of range for cover {}", n + 1))
                    })?;
                    Ok(acc.union(&r.members(space)))
                })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct HurewiczVerdict {
    /// Per point, least `K` with the point in `∪picks[n]` for all `K <= n <= N`.
    pub tail_index: Vec<Option<usize>>,
    /// Points missing from the last selection.
    pub failures: Vec<usize>,
}

impl HurewiczVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Tail indices over the target of the sequence.
pub fn hurewicz_selection_check(
    space: &SampledSpace,
    covers: &CoverSeq,
    picks: &[Vec<usize>],
) -> Result<HurewiczVerdict> {
    let unions = picked_unions(space, covers, picks)?;
    let target = &covers.covers[0].target;
    let n = unions.len();
    let mut tail_index = vec![None; space.len()];
    let mut failures = Vec::new();
    for p in target.iter() {
        let mut k = n + 1;
        while k > 1 && unions[k - 2].contains(p) {
            k -= 1;
        }
        if k <= n {
            tail_index[p] = Some(k);
        } else {
            failures.push(p);
        }
    }
    Ok(HurewiczVerdict {
        tail_index,
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MengerWitness {
    /// Per target point, the `(n, region)` covering it; `n` is 1-based.
    pub assignment: Vec<Option<(usize, usize)>>,
}

/// Coverage by the concatenation of all picks; `Err` names an uncovered point.
pub fn menger_selection_check(
    space: &SampledSpace,
    covers: &CoverSeq,
    picks: &[Vec<usize>],
) -> Result<std::result::Result<MengerWitness, usize>> {
    picked_unions(space, covers, picks)?;
    let mut flat = Vec::new();
    let mut origin = Vec::new();
    for (n, list) in picks.iter().enumerate() {
        for &i in list {
            flat.push(covers.cover(n + 1).regions[i].clone());
            origin.push((n + 1, i));
        }
    }
    Ok(
        covers_check(space, &flat, &covers.covers[0].target).map(|c| MengerWitness {
            assignment: c.assignment.iter().map(|a| a.map(|i| origin[i])).collect(),
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::pairwise_disjoint_check;
    use crate::rational::{q, qi};
    use crate::space::{build_grid_space, build_point_space, MetricKind, DEFAULT_POINT_CAP};

    fn line(steps: i64) -> SampledSpace {
        build_grid_space(1, &q(1, steps), MetricKind::Euclidean, DEFAULT_POINT_CAP).unwrap()
    }

    fn trivial(s: &SampledSpace, horizon: usize) -> CoverSeq {
        let r = Region::open_box(s, vec![qi(-1); s.dim()], vec![qi(2); s.dim()]).unwrap();
        CoverSeq::new(vec![Cover::whole(s, vec![r]); horizon])
    }

    #[test]
    fn policy_parsing() {
        assert_eq!(TwoPolicy::parse("covering").unwrap(), TwoPolicy::Covering);
        assert_eq!(
            TwoPolicy::parse("adversarial:7").unwrap(),
            TwoPolicy::Adversarial(7)
        );
        assert!(TwoPolicy::parse("adversarial:x").is_err());
        assert!(TwoPolicy::parse("lazy").is_err());
    }

    #[test]
    fn first_move_on_trivial_covers() {
        let s = line(64);
        let covers = trivial(&s, 2);
        let one = strategy_f_move(&s, &covers, 1, &ScOptions::for_space(&s)).unwrap();
        assert_eq!(one.families.len(), 2);
        assert!(one.families.iter().all(|f| !f.is_empty()));
        assert!(strategy_f_move(&s, &covers, 2, &ScOptions::for_space(&s)).is_err());
    }

    #[test]
    fn later_start_indexes_suffix() {
        let s = line(64);
        let covers = trivial(&s, 8);
        let one = strategy_f_move(&s, &covers, 3, &ScOptions::for_space(&s)).unwrap();
        assert_eq!((one.start, one.end()), (3, 8));
        let all: Vec<Region> = one
            .families
            .iter()
            .flat_map(|f| f.regions.clone())
            .collect();
        assert!(covers_check(&s, &all, &s.full()).is_ok());
    }

    #[test]
    fn block_index_rules() {
        let s = line(64);
        let crossing = Cover::whole(
            &s,
            vec![
                Region::open_box(&s, vec![qi(-1)], vec![q(3, 5)]).unwrap(),
                Region::open_box(&s, vec![q(2, 5)], vec![qi(2)]).unwrap(),
            ],
        );
        let mut covers = trivial(&s, 2);
        covers.covers.extend([crossing.clone(), crossing]);
        let one = strategy_f_move(&s, &covers, 1, &ScOptions::for_space(&s)).unwrap();
        assert_eq!(block_index(&[], &one).unwrap(), 1);
        let first = one.families[0].regions[0].clone();
        assert_eq!(block_index(std::slice::from_ref(&first), &one).unwrap(), 2);
        let third = one.families[2].regions[0].clone();
        assert_eq!(block_index(&[first, third], &one).unwrap(), 4);
        let stray = Region::ball(&s, 0, q(1, 1000)).unwrap();
        assert!(block_index(&[stray], &one).is_err());
    }

    #[test]
    fn single_point_loses_at_once() {
        let s = build_point_space();
        let covers = trivial(&s, 3);
        let t = play_hurewicz_game(
            &s,
            &covers,
            TwoPolicy::Covering,
            3,
            1,
            &ScOptions::for_space(&s),
        )
        .unwrap();
        assert_eq!(t.blocks, vec![2, 3, 4]);
        assert!(t.rounds.iter().all(|r| r.two_move.len() == 1));
        assert!(t.verdict.lost_by_one);
        assert_eq!(t.verdict.tail_index, vec![1]);
        let w = assemble_w(&s, &t, &covers, s.mesh()).unwrap();
        assert!(w.families.iter().all(|f| f.len() == 1));
        assert_eq!(w.tail_index, vec![1]);
    }

    #[test]
    fn covering_two_covers_every_round() {
        let s = line(64);
        let covers = trivial(&s, 8);
        let t = play_hurewicz_game(
            &s,
            &covers,
            TwoPolicy::Covering,
            8,
            1,
            &ScOptions::for_space(&s),
        )
        .unwrap();
        assert_eq!(t.blocks, vec![3, 5, 7, 9]);
        for k in 1..=t.rounds.len() {
            let regions: Vec<Region> = t.two_regions(k).into_iter().cloned().collect();
            assert!(covers_check(&s, &regions, &s.full()).is_ok());
        }
        assert!(t.verdict.lost_by_one);
    }

    #[test]
    fn adversary_keeps_one_alive() {
        let s = line(64);
        let covers = trivial(&s, 8);
        let t = play_hurewicz_game(
            &s,
            &covers,
            TwoPolicy::Adversarial(20),
            8,
            1,
            &ScOptions::for_space(&s),
        )
        .unwrap();
        assert!(!t.verdict.lost_by_one);
        assert!(t.verdict.witness.is_some());
        assert_eq!(t.verdict.tail_index[20], t.rounds.len() + 1);
        assert!(assemble_w(&s, &t, &covers, s.mesh()).is_err());
    }

    #[test]
    fn w_families_validate() {
        let s = line(64);
        let covers = trivial(&s, 8);
        let (t, w) = sc_plus_select(&s, &covers, 1, &ScOptions::for_space(&s)).unwrap();
        assert!(w.validate(&s, &covers, s.mesh()).is_ok());
        assert!(w.tail_index.iter().all(|&k| k == 1));
        for (j, prov) in w.provenance.iter().enumerate() {
            for (i, (k, pick)) in prov.iter().enumerate() {
                assert_eq!(
                    t.rounds[k - 1].one_move.region(*pick),
                    Some(&w.families[j].regions[i])
                );
            }
        }
    }

    #[test]
    fn literal_w_rule_overlaps() {
        // every pick fits the whole-space cover, so the literal rule pools both classes
        let s = line(64);
        let covers = trivial(&s, 2);
        let t = play_hurewicz_game(
            &s,
            &covers,
            TwoPolicy::Covering,
            2,
            0,
            &ScOptions::for_space(&s),
        )
        .unwrap();
        let pooled: Vec<Region> = t.two_regions(1).into_iter().cloned().collect();
        assert!(pooled
            .iter()
            .all(|r| find_parent(&s, r, &covers.cover(1).regions).is_ok()));
        assert!(pairwise_disjoint_check(&s, &pooled, s.mesh()).is_err());
    }

    #[test]
    fn hurewicz_and_menger_basics() {
        let s = line(8);
        let covers = CoverSeq::new(vec![
            Cover::whole(
                &s,
                vec![
                    Region::ball(&s, 0, q(3, 5)).unwrap(),
                    Region::ball(&s, 8, q(3, 5)).unwrap()
                ]
            );
            3
        ]);
        let full = vec![vec![0, 1]; 3];
        let h = hurewicz_selection_check(&s, &covers, &full).unwrap();
        assert!(h.passed() && h.tail_index.iter().all(|k| *k == Some(1)));
        let none = vec![Vec::new(); 3];
        assert_eq!(
            hurewicz_selection_check(&s, &covers, &none)
                .unwrap()
                .failures
                .len(),
            s.len()
        );
        assert!(menger_selection_check(&s, &covers, &none).unwrap().is_err());
        // each half picked once: Menger holds, no tail
        let split = vec![vec![0], vec![1], vec![]];
        assert!(menger_selection_check(&s, &covers, &split).unwrap().is_ok());
        assert!(!hurewicz_selection_check(&s, &covers, &split)
            .unwrap()
            .passed());
        assert!(hurewicz_selection_check(&s, &covers, &[vec![5], vec![], vec![]]).is_err());
    }
}
