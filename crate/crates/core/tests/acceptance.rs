//! Acceptance gate. Runs every criterion at its threshold, prints one
//! PASS/FAIL line each and exits nonzero if any fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use cover_games::cli;
use cover_games::cover::{
    covers_check, pairwise_disjoint_check, refines_check, Cover, CoverSeq, Region,
};
use cover_games::game::{hurewicz_selection_check, menger_selection_check, sc_plus_select};
use cover_games::haver::{build_haver_witness, full_chain, normalize_epsilons};
use cover_games::instances::{
    random_box_cover, random_cover_seq, random_interval_cover, random_picks, rng,
};
use cover_games::io::{write_json, ChainFile, CoverFile, CoversFile, PicksFile};
use cover_games::netting::{
    decompose_from_hurewicz, greedy_delta_selections, greedy_net, minimal_net_bruteforce,
    select_from_decomposition, MinimalNet, SigmaDecomposition,
};
use cover_games::rational::{q, qi, qpow, Q};
use cover_games::registry::{builtin, catalog};
use cover_games::screen::{brick_refinement, finite_c_search, FiniteC, ScOptions};
use cover_games::space::{SampledSpace, Schedule, SubsetHandle, DEFAULT_POINT_CAP};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn space(label: &str) -> SampledSpace {
    builtin(label, DEFAULT_POINT_CAP).expect("built-in space")
}

fn quarter_powers(horizon: usize, shift: i64) -> Vec<Q> {
    (1..=horizon as i64)
        .map(|n| {
            let e = n - shift;
            if e >= 0 {
                qpow(&q(1, 4), e as u64)
            } else {
                qpow(&qi(4), (-e) as u64)
            }
        })
        .collect()
}

fn metric_axioms() -> Outcome {
    let mut exhaustive = 0;
    let mut sampled = 0;
    for label in catalog() {
        let s = space(&label);
        let check = s.check_metric_axioms(200, 100_000, 17);
        if let Some(v) = check.violation {
            return Err(format!("{label}: violation at {v:?}"));
        }
        if s.len() <= 200 {
            ensure(check.triples == (s.len() as u64).pow(3), || {
                format!("{label}: not exhaustive")
            })?;
            exhaustive += 1;
        } else {
            ensure(check.triples == 100_000, || {
                format!("{label}: {} triples", check.triples)
            })?;
            sampled += 1;
        }
    }
    Ok(format!("{exhaustive} spaces exhaustive, {sampled} sampled"))
}

/// Minimum net size by enumerating center sets in integer coordinates.
fn oracle_min_net(members: &[i64], eps_eighths: &Q) -> usize {
    let k = members.len();
    let close = |a: i64, b: i64| Q::from_integer((a - b).abs().into()) < *eps_eighths;
    (1..1u32 << k)
        .filter(|mask| {
            members
                .iter()
                .all(|&p| (0..k).any(|i| mask & (1 << i) != 0 && close(members[i], p)))
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .expect("the whole subset is a net")
}

fn net_oracle() -> Outcome {
    let s = space("interval_h8");
    let n = s.len();
    let mut cases = 0;
    for eps in [q(1, 8), q(1, 4), q(1, 3), q(1, 2)] {
        let scaled = &eps * qi(8);
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let coords: Vec<i64> = idx
                .iter()
                .map(|&p| s.point_scaled(p)[0] * 8 / s.scale())
                .collect();
            let subset = SubsetHandle::from_indices(n, idx.iter().copied()).unwrap();
            let greedy = greedy_net(&s, &subset, &eps).map_err(|e| e.to_string())?;
            greedy
                .validate(&s)
                .map_err(|p| format!("greedy misses {p} at {eps}"))?;
            ensure(greedy.centers.iter().all(|&c| subset.contains(c)), || {
                "greedy center outside".into()
            })?;
            let MinimalNet::Found { size, centers } =
                minimal_net_bruteforce(&s, &subset, &eps, u64::MAX).map_err(|e| e.to_string())?
            else {
                return Err("brute force hit its cap".into());
            };
            let cert = cover_games::netting::NetCertificate {
                epsilon: eps.clone(),
                centers,
                covered: subset,
            };
            cert.validate(&s)
                .map_err(|p| format!("minimal net misses {p}"))?;
            let expected = oracle_min_net(&coords, &scaled);
            ensure(size == expected, || {
                format!("mask {mask:#b} eps {eps}: minimal {size}, oracle {expected}")
            })?;
            ensure(greedy.size() >= size, || {
                format!("mask {mask:#b}: greedy below minimum")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} subset/epsilon cases"))
}

fn chain_loop() -> Outcome {
    let scales = [q(1, 2), q(1, 4), q(1, 16)];
    let mut points = 0;
    for (label, seed) in [("interval_h256", 31), ("square_h64", 32)] {
        let s = space(label);
        let horizon = 4;
        // whole-sample levels, then staircase levels so entry levels vary
        let staircase = SigmaDecomposition::staircase(&s, horizon, horizon as i64)
            .map_err(|e| e.to_string())?;
        for levels in [vec![s.full(); horizon], staircase.chain] {
            let sels = greedy_delta_selections(&s, &levels).map_err(|e| e.to_string())?;
            let dec =
                decompose_from_hurewicz(&s, &sels, horizon, &scales).map_err(|e| e.to_string())?;
            for w in dec.chain.windows(2) {
                ensure(w[0].is_subset_of(&w[1]), || {
                    format!("{label}: chain not monotone")
                })?;
            }
            ensure(dec.chain[horizon - 1].count() == s.len(), || {
                format!("{label}: chain misses points")
            })?;
            for level in 1..=horizon {
                for eps in &scales {
                    let lc = dec
                        .certificates
                        .iter()
                        .find(|c| c.level == level && c.certificate.epsilon == *eps)
                        .ok_or_else(|| format!("{label}: no certificate for X_{level} at {eps}"))?;
                    ensure(lc.certificate.covered == dec.chain[level - 1], || {
                        "certificate covers wrong set".into()
                    })?;
                    lc.certificate
                        .validate(&s)
                        .map_err(|p| format!("{label}: X_{level} at {eps} misses {p}"))?;
                }
            }
            let mut r = rng(seed);
            for _ in 0..5 {
                let covers = random_cover_seq(&s, horizon, &mut r).map_err(|e| e.to_string())?;
                covers.validate(&s).map_err(|e| e.to_string())?;
                let picks =
                    select_from_decomposition(&s, &dec, &covers).map_err(|e| e.to_string())?;
                let v = hurewicz_selection_check(&s, &covers, &picks.picks)
                    .map_err(|e| e.to_string())?;
                for p in 0..s.len() {
                    let entry = dec.chain.iter().position(|x| x.contains(p)).unwrap() + 1;
                    let k = v.tail_index[p].ok_or_else(|| format!("{label}: point {p} fails"))?;
                    ensure(k <= entry, || {
                        format!("{label}: point {p} tail {k} after entry {entry}")
                    })?;
                    points += 1;
                }
            }
        }
    }
    Ok(format!("{points} point checks"))
}

fn three_checks(
    s: &SampledSpace,
    cover: &Cover,
    margin: &Q,
    expected: usize,
) -> Result<(), String> {
    let (_, families) = brick_refinement(s, cover, margin).map_err(|e| e.to_string())?;
    ensure(families.len() == expected, || {
        format!("{} families", families.len())
    })?;
    for f in &families {
        pairwise_disjoint_check(s, &f.regions, margin).map_err(|v| format!("{v:?}"))?;
        refines_check(s, &f.regions, &cover.regions).map_err(|e| format!("{e:?}"))?;
    }
    let all: Vec<Region> = families
        .iter()
        .flat_map(|f| f.regions.iter().cloned())
        .collect();
    covers_check(s, &all, &s.full())
        .map(|_| ())
        .map_err(|p| format!("point {p} uncovered"))
}

fn screenability() -> Outcome {
    let line = space("interval_h1024");
    let margin = line.mesh().clone();
    let mut r = rng(41);
    for i in 0..50 {
        let c = random_interval_cover(&line, &mut r).map_err(|e| e.to_string())?;
        three_checks(&line, &c, &margin, 2).map_err(|e| format!("interval cover {i}: {e}"))?;
    }
    let square = space("square_h64");
    let margin = square.mesh().clone();
    let mut r = rng(42);
    for i in 0..20 {
        let c = random_box_cover(&square, &mut r).map_err(|e| e.to_string())?;
        three_checks(&square, &c, &margin, 3).map_err(|e| format!("box cover {i}: {e}"))?;
    }
    Ok("50 interval and 20 box covers".into())
}

/// Depth-first search for one family of open intervals with endpoints on
/// multiples of `1/res`, pairwise gaps of at least `margin`, each inside some
/// `(lo, hi)`, covering the points `k/steps`.
struct LatticeSearch<'a> {
    points: Vec<Q>,
    lattice: Vec<Q>,
    cover: &'a [(Q, Q)],
    margin: &'a Q,
    // keyed by the lattice index of the previous right end
    memo: HashMap<usize, bool>,
}

impl LatticeSearch<'_> {
    fn go(&mut self, next: usize, min_left: &Q, key: usize) -> bool {
        if next == self.points.len() {
            return true;
        }
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let x = self.points[next].clone();
        let mut found = false;
        'search: for ai in 0..self.lattice.len() {
            let a = self.lattice[ai].clone();
            if a < *min_left || a >= x {
                continue;
            }
            for bi in ai + 1..self.lattice.len() {
                let b = self.lattice[bi].clone();
                if b <= x || !self.cover.iter().any(|(lo, hi)| *lo <= a && b <= *hi) {
                    continue;
                }
                let after = self
                    .points
                    .iter()
                    .position(|p| *p >= b)
                    .unwrap_or(self.points.len());
                if !self.points[next..after].iter().all(|p| a < *p && *p < b) {
                    continue;
                }
                let left = &b + self.margin;
                if self.go(after, &left, bi) {
                    found = true;
                    break 'search;
                }
            }
        }
        self.memo.insert(key, found);
        found
    }
}

fn interval_family_exists(steps: i64, res: i64, cover: &[(Q, Q)], margin: &Q) -> bool {
    let mut search = LatticeSearch {
        points: (0..=steps).map(|k| q(k, steps)).collect(),
        lattice: (-res..=2 * res).map(|k| q(k, res)).collect(),
        cover,
        margin,
        memo: HashMap::new(),
    };
    let first = search.lattice[0].clone();
    search.go(0, &first, usize::MAX)
}

fn finite_c() -> Outcome {
    // bricks only: the sub-mesh fallback would cover any sample with one family
    let line = space("interval_h1024");
    let opts = ScOptions::strict(&line);
    let mut r = rng(51);
    for i in 0..10 {
        let covers = CoverSeq::new(
            (0..4)
                .map(|_| random_interval_cover(&line, &mut r))
                .collect::<cover_games::Result<Vec<_>>>()
                .unwrap(),
        );
        match finite_c_search(&line, &covers, &opts).map_err(|e| e.to_string())? {
            FiniteC::Witness { n: 2, .. } => {}
            FiniteC::Witness { n, .. } => return Err(format!("interval sequence {i}: n = {n}")),
            FiniteC::NoWitness { .. } => return Err(format!("interval sequence {i}: no witness")),
        }
    }
    let square = space("square_h64");
    let opts = ScOptions::strict(&square);
    let mut r = rng(52);
    for i in 0..5 {
        let covers = CoverSeq::new(
            (0..4)
                .map(|_| random_box_cover(&square, &mut r))
                .collect::<cover_games::Result<Vec<_>>>()
                .unwrap(),
        );
        match finite_c_search(&square, &covers, &opts).map_err(|e| e.to_string())? {
            FiniteC::Witness { n: 3, .. } => {}
            FiniteC::Witness { n, .. } => return Err(format!("box sequence {i}: n = {n}")),
            FiniteC::NoWitness { .. } => return Err(format!("box sequence {i}: no witness")),
        }
    }
    // crossing cover at horizon 1, confirmed by search over sample-lattice intervals
    let steps = 256;
    let fine = space("interval_h256");
    let ends = [(qi(-1), q(3, 5)), (q(2, 5), qi(2))];
    let cover = Cover::whole(
        &fine,
        ends.iter()
            .map(|(lo, hi)| Region::open_box(&fine, vec![lo.clone()], vec![hi.clone()]).unwrap())
            .collect(),
    );
    let opts = ScOptions::strict(&fine);
    let one = CoverSeq::new(vec![cover.clone()]);
    let FiniteC::NoWitness { horizon: 1, .. } =
        finite_c_search(&fine, &one, &opts).map_err(|e| e.to_string())?
    else {
        return Err("crossing cover got a witness at horizon 1".into());
    };
    ensure(
        !interval_family_exists(steps, steps, &ends, &opts.margin),
        || "lattice search found a single covering family".into(),
    )?;
    let whole = [(qi(-1), qi(2))];
    ensure(
        interval_family_exists(steps, steps, &whole, &opts.margin),
        || "oracle is vacuous".into(),
    )?;
    let two = CoverSeq::new(vec![cover.clone(), cover]);
    ensure(
        matches!(
            finite_c_search(&fine, &two, &opts),
            Ok(FiniteC::Witness { n: 2, .. })
        ),
        || "crossing cover needs two".into(),
    )?;
    Ok("n = 2 on 10 interval, n = 3 on 5 box sequences; crossing cover has no witness at horizon 1".into())
}

fn sc_plus() -> Outcome {
    let s = space("interval_h256");
    let margin = s.mesh().clone();
    let opts = ScOptions::for_space(&s);
    let mut r = rng(61);
    for inst in 0..5 {
        let covers = random_cover_seq(&s, 8, &mut r).map_err(|e| e.to_string())?;
        let (t, w) = sc_plus_select(&s, &covers, 1, &opts).map_err(|e| e.to_string())?;
        ensure(w.families.len() == 8, || "wrong family count".into())?;
        for (n, f) in w.families.iter().enumerate() {
            pairwise_disjoint_check(&s, &f.regions, &margin)
                .map_err(|v| format!("W_{}: {v:?}", n + 1))?;
            refines_check(&s, &f.regions, &covers.cover(n + 1).regions)
                .map_err(|e| format!("W_{}: {e:?}", n + 1))?;
        }
        ensure(w.blocks.windows(2).all(|b| b[0] < b[1]), || {
            format!("blocks {:?}", w.blocks)
        })?;
        // blocks m_{k-1} <= j < m_k; point tail index recomputed from coverage
        let ranges: Vec<(usize, usize)> = w.blocks.windows(2).map(|b| (b[0], b[1])).collect();
        for p in 0..s.len() {
            let hit = |&(a, b): &(usize, usize)| {
                (a..b).any(|j| w.families[j - 1].regions.iter().any(|r| r.contains(&s, p)))
            };
            let mut k = ranges.len() + 1;
            while k > 1 && hit(&ranges[k - 2]) {
                k -= 1;
            }
            ensure(k == w.tail_index[p], || {
                format!("instance {inst}: point {p} tail {k} vs {}", w.tail_index[p])
            })?;
            ensure(k <= 2, || {
                format!("instance {inst}: point {p} has tail index {k}")
            })?;
        }
        for (k, round) in t.rounds.iter().enumerate() {
            let regions = t.two_regions(k + 1);
            let first_family = |r: &Region| {
                (round.one_move.start..=round.one_move.end())
                    .find(|&j| {
                        round
                            .one_move
                            .family(j)
                            .unwrap()
                            .regions
                            .iter()
                            .any(|x| x == r)
                    })
                    .unwrap()
            };
            let least = regions
                .iter()
                .map(|r| first_family(r) + 1)
                .max()
                .unwrap_or(round.one_move.start);
            ensure(round.block == least, || {
                format!(
                    "round {}: block {} not minimal ({least})",
                    k + 1,
                    round.block
                )
            })?;
        }
    }
    Ok("5 seeded sequences at horizon 8".into())
}

fn haver_pipeline() -> Outcome {
    let eps = Schedule::epsilon(quarter_powers(2, 0)).unwrap();
    let d = Schedule::delta_haver(&eps);
    ensure(*d.at(1) == q(3, 4) * q(1, 8), || "delta_1".into())?;
    ensure(*d.at(2) == q(15, 16) * q(1, 32), || "delta_2".into())?;

    let cantor = space("cantor_10");
    let horizon = 6;
    let schedule = normalize_epsilons(&quarter_powers(horizon, 0)).map_err(|e| e.to_string())?;
    ensure(schedule.values == quarter_powers(horizon, 0), || {
        "schedule was altered".into()
    })?;
    let chain = full_chain(&cantor, horizon).map_err(|e| e.to_string())?;
    haver_case(&cantor, &chain, &schedule).map_err(|e| format!("cantor_10: {e}"))?;

    let line = space("interval_h256");
    let horizon = 8;
    let chain = SigmaDecomposition::staircase(&line, horizon, 4).map_err(|e| e.to_string())?;
    let schedule = normalize_epsilons(&quarter_powers(horizon, 0)).map_err(|e| e.to_string())?;
    haver_case(&line, &chain, &schedule).map_err(|e| format!("staircase: {e}"))?;
    Ok("cantor_10 to level 6, staircase to level 8".into())
}

fn haver_case(
    s: &SampledSpace,
    chain: &SigmaDecomposition,
    schedule: &Schedule,
) -> Result<(), String> {
    let opts = ScOptions::for_space(s);
    let (w, _, _) = build_haver_witness(s, chain, schedule, 1, &opts).map_err(|e| e.to_string())?;
    let mut covered = vec![false; s.len()];
    for (n, f) in w.families.iter().enumerate() {
        pairwise_disjoint_check(s, &f.regions, &opts.margin)
            .map_err(|v| format!("H_{}: {v:?}", n + 1))?;
        let eps = schedule.at(n + 1);
        for r in &f.regions {
            let members = r.member_list(s);
            for (i, &a) in members.iter().enumerate() {
                covered[a] = true;
                for &b in &members[i + 1..] {
                    ensure(
                        s.distance_upper(a, b) < *eps
                            || s.distance_lower(a, b) < *eps && below(s, a, b, eps),
                        || format!("H_{}: points {a}, {b} not within ε", n + 1),
                    )?;
                }
            }
        }
    }
    if let Some(p) = covered.iter().position(|c| !c) {
        return Err(format!("point {p} uncovered"));
    }
    ensure(w.traces.len() == s.len(), || {
        format!("{} of {} claims replayed", w.traces.len(), s.len())
    })?;
    for t in &w.traces {
        ensure(
            w.families[t.level - 1].regions[t.member].contains(s, t.point),
            || format!("trace for {}", t.point),
        )?;
        ensure(t.level >= t.entry, || {
            format!("point {} recovered below its entry level", t.point)
        })?;
    }
    Ok(())
}

/// Exact comparison when rational bounds straddle `eps`.
fn below(s: &SampledSpace, a: usize, b: usize, eps: &Q) -> bool {
    s.key(a, b) < s.open_threshold(eps)
}

fn checker_coherence() -> Outcome {
    let mut r = rng(81);
    let mut hurewicz = 0;
    for (i, label) in ["interval_h64", "square_h16", "cantor_6"]
        .iter()
        .cycle()
        .take(200)
        .enumerate()
    {
        let s = space(label);
        let covers = random_cover_seq(&s, 4, &mut r).map_err(|e| e.to_string())?;
        let picks = random_picks(&covers, 0.7, &mut r);
        let h = hurewicz_selection_check(&s, &covers, &picks).map_err(|e| e.to_string())?;
        let m = menger_selection_check(&s, &covers, &picks).map_err(|e| e.to_string())?;
        if h.passed() {
            hurewicz += 1;
            ensure(m.is_ok(), || {
                format!("instance {i}: Hurewicz without Menger")
            })?;
        }
    }
    ensure(hurewicz > 0, || "no instance passed Hurewicz".into())?;
    // full picks early, nothing at the end
    let s = space("interval_h16");
    let cover = Cover::whole(
        &s,
        vec![Region::open_box(&s, vec![qi(-1)], vec![qi(2)]).unwrap()],
    );
    let covers = CoverSeq::new(vec![cover.clone(), cover]);
    let picks = vec![vec![0], vec![]];
    let menger = menger_selection_check(&s, &covers, &picks)
        .map_err(|e| e.to_string())?
        .is_ok();
    let h = hurewicz_selection_check(&s, &covers, &picks).map_err(|e| e.to_string())?;
    ensure(menger && !h.passed(), || {
        "constructed instance does not separate".into()
    })?;
    Ok(format!(
        "200 instances, {hurewicz} Hurewicz; separating instance found"
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let s = space("interval_h64");
    let covers = random_cover_seq(&s, 4, &mut rng(91)).map_err(|e| e.to_string())?;
    write_json(
        dir.path().join("covers.json").as_path(),
        &CoversFile::from_seq(&covers),
    )
    .unwrap();
    write_json(
        dir.path().join("cover.json").as_path(),
        &CoverFile::from_cover(covers.cover(1)),
    )
    .unwrap();
    let picks = PicksFile {
        picks: covers
            .covers
            .iter()
            .map(|c| (0..c.len()).collect())
            .collect(),
    };
    write_json(dir.path().join("picks.json").as_path(), &picks).unwrap();
    let chain = SigmaDecomposition::staircase(&s, 4, 4).unwrap();
    write_json(
        dir.path().join("chain.json").as_path(),
        &ChainFile::from_decomposition(&chain),
    )
    .unwrap();
    let sp = "builtin:interval_h64".to_string();
    let runs: Vec<Vec<String>> = vec![
        vec![
            "net",
            "--space",
            "builtin:interval_h8",
            "--epsilon",
            "1/4",
            "--brute-cap",
            "100000",
        ]
        .into_iter()
        .map(String::from)
        .collect(),
        vec![
            "decompose".into(),
            "--space".into(),
            sp.clone(),
            "--horizon".into(),
            "3".into(),
        ],
        vec![
            "select".into(),
            "--space".into(),
            sp.clone(),
            "--chain".into(),
            path("chain.json"),
            "--covers".into(),
            path("covers.json"),
        ],
        vec![
            "refine".into(),
            "--space".into(),
            "builtin:interval_h1024".into(),
            "--cover".into(),
            path("cover.json"),
        ],
        vec![
            "scfin".into(),
            "--space".into(),
            sp.clone(),
            "--covers".into(),
            path("covers.json"),
        ],
        vec![
            "fincspace".into(),
            "--space".into(),
            sp.clone(),
            "--covers".into(),
            path("covers.json"),
        ],
        vec![
            "haver".into(),
            "--space".into(),
            sp.clone(),
            "--epsilons".into(),
            "1/4,1/16,1/64,1/256".into(),
        ],
        vec![
            "game".into(),
            "--space".into(),
            sp.clone(),
            "--covers".into(),
            path("covers.json"),
        ],
        vec![
            "scplus".into(),
            "--space".into(),
            sp.clone(),
            "--covers".into(),
            path("covers.json"),
        ],
        vec![
            "check".into(),
            "--kind".into(),
            "hurewicz".into(),
            "--space".into(),
            sp.clone(),
            "--covers".into(),
            path("covers.json"),
            "--picks".into(),
            path("picks.json"),
        ],
        vec![
            "check".into(),
            "--kind".into(),
            "menger".into(),
            "--space".into(),
            sp.clone(),
            "--covers".into(),
            path("covers.json"),
            "--picks".into(),
            path("picks.json"),
        ],
        vec![
            "demo".into(),
            "--space".into(),
            "square_h16".into(),
            "--horizon".into(),
            "4".into(),
        ],
    ];
    let strip = |text: &str| -> Result<String, String> {
        let mut v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| format!("{e}: {text}"))?;
        v.as_object_mut()
            .ok_or("report is not an object")?
            .remove("wall_time_ms");
        Ok(v.to_string())
    };
    for args in &runs {
        let argv = std::iter::once("cover-games".to_string()).chain(args.iter().cloned());
        let a = cli::run(argv.clone());
        let b = cli::run(argv);
        ensure(a.stderr.is_empty(), || format!("{}: {}", args[0], a.stderr))?;
        ensure(a.code == b.code, || {
            format!("{}: exit codes differ", args[0])
        })?;
        ensure(strip(&a.stdout)? == strip(&b.stdout)?, || {
            format!("{}: reports differ", args[0])
        })?;
    }
    Ok(format!("{} invocations reproduced", runs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 metric axioms", metric_axioms, 5),
        ("2 net oracle", net_oracle, 60),
        ("3 chain from selections", chain_loop, 120),
        ("4 brick refinement", screenability, 120),
        ("5 finite witness", finite_c, 60),
        ("6 selection through the game", sc_plus, 120),
        ("7 small-diameter families", haver_pipeline, 180),
        ("8 checker coherence", checker_coherence, 60),
        ("9 determinism", determinism, 120),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let started = Instant::now();
        let outcome = f();
        let took = started.elapsed();
        let outcome = outcome.and_then(|msg| {
            ensure(took < Duration::from_secs(limit), || {
                format!("{took:.2?} exceeds {limit} s")
            })
            .map(|_| msg)
        });
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({took:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({took:.2?})");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
