//! Command-line entry point. Every command prints one JSON report; the exit
//! code is 0 when all checks pass, 1 when a check fails (the report carries
//! the counterexample) and 2 on usage or input errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cover::{covers_check, pairwise_disjoint_check, refines_check, CoverSeq, Region};
use crate::error::{Error, Result};
use crate::game::{
    assemble_w, hurewicz_selection_check, menger_selection_check, play_hurewicz_game,
    sc_plus_select, TwoPolicy,
};
use crate::haver::{build_haver_witness, full_chain, normalize_epsilons};
use crate::io::{
    self, ChainFile, CoverFile, CoversFile, PicksFile, SelectionsFile, BUILTIN_PREFIX,
};
use crate::netting::{
    decompose_from_hurewicz, greedy_delta_selections, greedy_net, minimal_net_bruteforce,
    select_from_decomposition, MinimalNet,
};
use crate::rational::{self, parse_q, parse_q_list, q, qpow, Rat, Q};
use crate::screen::{brick_refinement, finite_c_search, sc_fin_select, FiniteC, ScOptions};
use crate::space::{SampledSpace, Schedule, SpaceKind, SubsetHandle, DEFAULT_POINT_CAP};

pub const POINT_CAP_ENV: &str = "COVER_GAMES_POINT_CAP";

/// Traces beyond this many points are summarized.
const TRACE_CAP: usize = 64;

#[derive(Parser, Debug)]
#[command(
    name = "cover-games",
    version,
    about = "Selection principles on finite samples of compact metric spaces"
)]
pub struct Cli {
    /// JSON file overriding the run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Greedy ε-net of the sample (or a subset), optionally against the exact minimum.
    Net {
        #[arg(long)]
        space: String,
        #[arg(long)]
        epsilon: String,
        /// Comma separated point indices; default is the whole sample.
        #[arg(long)]
        subset: Option<String>,
        /// Search-node budget for the exact minimum.
        #[arg(long)]
        brute_cap: Option<u64>,
    },
    /// Increasing chain with net certificates from per-level ball selections.
    Decompose {
        #[arg(long)]
        space: String,
        /// Selections file; default is greedy nets of the whole sample.
        #[arg(long)]
        selections: Option<PathBuf>,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, default_value = "1/2,1/4,1/16")]
        scales: String,
    },
    /// Finite picks from each cover, driven by a chain.
    Select {
        #[arg(long)]
        space: String,
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        covers: PathBuf,
    },
    /// Brick refinement of one cover.
    Refine {
        #[arg(long)]
        space: String,
        #[arg(long)]
        cover: PathBuf,
    },
    /// Disjoint refinements of a cover sequence whose union covers.
    Scfin {
        #[arg(long)]
        space: String,
        #[arg(long)]
        covers: PathBuf,
    },
    /// Least prefix of the sequence admitting a covering disjoint selection.
    Fincspace {
        #[arg(long)]
        space: String,
        #[arg(long)]
        covers: PathBuf,
    },
    /// Disjoint small-diameter families for an ε-schedule.
    Haver {
        #[arg(long)]
        space: String,
        /// Chain file; default is the whole sample at every level.
        #[arg(long)]
        chain: Option<PathBuf>,
        #[arg(long)]
        epsilons: String,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Hurewicz game against strategy F.
    Game {
        #[arg(long)]
        space: String,
        #[arg(long)]
        covers: PathBuf,
        /// `covering` or `adversarial:<point>`.
        #[arg(long, default_value = "covering")]
        two: String,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Strengthened selection through the game.
    Scplus {
        #[arg(long)]
        space: String,
        #[arg(long)]
        covers: PathBuf,
    },
    /// Hurewicz or Menger check of given picks.
    Check {
        #[arg(long, value_enum)]
        kind: CheckKind,
        #[arg(long)]
        space: String,
        #[arg(long)]
        covers: PathBuf,
        #[arg(long)]
        picks: PathBuf,
    },
    /// Chain, game and small-diameter families end to end on a built-in space.
    Demo {
        /// Built-in label, with or without the `builtin:` prefix.
        #[arg(long)]
        space: String,
        #[arg(long)]
        horizon: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Menger,
    Hurewicz,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Net { .. } => "net",
            Command::Decompose { .. } => "decompose",
            Command::Select { .. } => "select",
            Command::Refine { .. } => "refine",
            Command::Scfin { .. } => "scfin",
            Command::Fincspace { .. } => "fincspace",
            Command::Haver { .. } => "haver",
            Command::Game { .. } => "game",
            Command::Scplus { .. } => "scplus",
            Command::Check { .. } => "check",
            Command::Demo { .. } => "demo",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub horizon: usize,
    /// Family gap; `None` means the space's mesh.
    pub margin: Option<Rat>,
    pub tail_slack: usize,
    pub point_cap: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            horizon: 8,
            margin: None,
            tail_slack: 1,
            point_cap: DEFAULT_POINT_CAP,
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Defaults, then the environment, then `path`.
    pub fn resolve(path: Option<&Path>) -> Result<Self> {
        let mut config = RunConfig::default();
        if let Ok(text) = std::env::var(POINT_CAP_ENV) {
            config.point_cap = text.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("{POINT_CAP_ENV}={text:?} is not a count"))
            })?;
        }
        if let Some(p) = path {
            let bytes = std::fs::read(p)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", p.display())))?;
            let mut file: serde_json::Map<String, Value> =
                serde_json::from_slice(&bytes).map_err(|e| {
                    Error::Parse(format!("{}:{}:{}: {e}", p.display(), e.line(), e.column()))
                })?;
            let mut merged = serde_json::to_value(&config)?;
            if let Value::Object(m) = &mut merged {
                m.append(&mut file);
            }
            config = serde_json::from_value(merged)
                .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::InvalidInput("horizon must be at least 1".into()));
        }
        if self.point_cap == 0 {
            return Err(Error::InvalidInput("point cap must be positive".into()));
        }
        if let Some(m) = &self.margin {
            use num::Signed;
            if !m.0.is_positive() {
                return Err(Error::InvalidInput("margin must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn options(&self, space: &SampledSpace) -> ScOptions {
        let mut opts = ScOptions::for_space(space);
        if let Some(m) = &self.margin {
            opts.margin = m.0.clone();
        }
        opts
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: &str, witness: Value) -> Self {
        Check {
            name: name.into(),
            passed: false,
            witness: Some(witness),
        }
    }

    fn of<E: Serialize>(name: &str, outcome: std::result::Result<(), E>) -> Self {
        match outcome {
            Ok(()) => Check::pass(name),
            Err(e) => Check::fail(name, serde_json::to_value(e).unwrap_or(Value::Null)),
        }
    }

    fn from_error(name: &str, e: &Error) -> Self {
        Check::fail(
            name,
            json!({ "point": e.point(), "message": e.to_string() }),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub argv: Vec<String>,
    pub config: RunConfig,
    pub inputs: BTreeMap<String, String>,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub result: Value,
    pub wall_time_ms: u64,
}

/// What a run printed and returned.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Body {
    checks: Vec<Check>,
    result: Value,
}

struct Ctx<'a> {
    config: &'a RunConfig,
    inputs: BTreeMap<String, String>,
}

impl Ctx<'_> {
    fn space(&mut self, arg: &str) -> Result<SampledSpace> {
        let (space, digest) = io::load_space(arg, self.config.point_cap)?;
        self.inputs.insert("space".into(), digest);
        Ok(space)
    }

    fn json<T: serde::de::DeserializeOwned>(&mut self, role: &str, path: &Path) -> Result<T> {
        let (value, digest) = io::read_json(path)?;
        self.inputs.insert(role.into(), digest);
        Ok(value)
    }

    fn covers(&mut self, space: &SampledSpace, path: &Path) -> Result<CoverSeq> {
        let file: CoversFile = self.json("covers", path)?;
        let seq = file.to_seq(space)?;
        seq.validate(space)?;
        Ok(seq)
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// Parses `argv` (program name first), runs the command and renders the report.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.use_stderr() {
                true => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
                false => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
            };
        }
    };
    let usage = |e: Error| Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    };
    let config = match RunConfig::resolve(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let started = Instant::now();
    let mut ctx = Ctx {
        config: &config,
        inputs: BTreeMap::new(),
    };
    let body = match dispatch(&cli.command, &mut ctx) {
        Ok(b) => b,
        Err(e) if e.is_usage() => return usage(e),
        Err(e) => Body {
            checks: vec![Check::from_error(cli.command.name(), &e)],
            result: Value::Null,
        },
    };
    let passed = body.checks.iter().all(|c| c.passed);
    let report = Report {
        command: cli.command.name().into(),
        argv: argv
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect(),
        config: config.clone(),
        inputs: ctx.inputs,
        passed,
        checks: body.checks,
        result: body.result,
        wall_time_ms: started.elapsed().as_millis() as u64,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    let code = if passed { 0 } else { 1 };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => usage(Error::Io(e)),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<Body> {
    match cmd {
        Command::Net {
            space,
            epsilon,
            subset,
            brute_cap,
        } => cmd_net(ctx, space, epsilon, subset.as_deref(), *brute_cap),
        Command::Decompose {
            space,
            selections,
            horizon,
            scales,
        } => cmd_decompose(ctx, space, selections.as_deref(), *horizon, scales),
        Command::Select {
            space,
            chain,
            covers,
        } => cmd_select(ctx, space, chain, covers),
        Command::Refine { space, cover } => cmd_refine(ctx, space, cover),
        Command::Scfin { space, covers } => cmd_scfin(ctx, space, covers),
        Command::Fincspace { space, covers } => cmd_fincspace(ctx, space, covers),
        Command::Haver {
            space,
            chain,
            epsilons,
            horizon,
        } => cmd_haver(ctx, space, chain.as_deref(), epsilons, *horizon),
        Command::Game {
            space,
            covers,
            two,
            horizon,
        } => cmd_game(ctx, space, covers, two, *horizon),
        Command::Scplus { space, covers } => cmd_scplus(ctx, space, covers),
        Command::Check {
            kind,
            space,
            covers,
            picks,
        } => cmd_check(ctx, *kind, space, covers, picks),
        Command::Demo { space, horizon } => {
            let label = space.strip_prefix(BUILTIN_PREFIX).unwrap_or(space);
            ctx.inputs
                .insert("space".into(), format!("{BUILTIN_PREFIX}{label}"));
            let report = pipeline_demo(label, horizon.unwrap_or(ctx.config.horizon), ctx.config)?;
            Ok(Body {
                checks: report.checks,
                result: report.result,
            })
        }
    }
}

fn parse_indices(text: &str, len: usize) -> Result<SubsetHandle> {
    let idx = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad index {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    SubsetHandle::from_indices(len, idx)
}

fn cmd_net(
    ctx: &mut Ctx,
    space: &str,
    epsilon: &str,
    subset: Option<&str>,
    cap: Option<u64>,
) -> Result<Body> {
    let s = ctx.space(space)?;
    let eps = parse_q(epsilon)?;
    let subset = match subset {
        Some(t) => parse_indices(t, s.len())?,
        None => s.full(),
    };
    let cert = greedy_net(&s, &subset, &eps)?;
    let mut checks = vec![Check::of(
        "net_valid",
        cert.validate(&s).map_err(|p| json!({ "uncovered": p })),
    )];
    let mut minimal = None;
    if let Some(cap) = cap {
        let m = minimal_net_bruteforce(&s, &subset, &eps, cap)?;
        if let MinimalNet::Found { size, .. } = &m {
            let ok = cert.size() >= *size;
            checks.push(Check::of(
                "greedy_not_below_minimum",
                if ok {
                    Ok(())
                } else {
                    Err(json!({ "greedy": cert.size(), "minimal": size }))
                },
            ));
        }
        minimal = Some(m);
    }
    Ok(Body {
        checks,
        result: json!({ "certificate": cert, "size": cert.size(), "minimal": minimal }),
    })
}

fn cmd_decompose(
    ctx: &mut Ctx,
    space: &str,
    selections: Option<&Path>,
    horizon: Option<usize>,
    scales: &str,
) -> Result<Body> {
    let s = ctx.space(space)?;
    let scales = parse_q_list(scales)?;
    let sels = match selections {
        Some(path) => {
            let file: SelectionsFile = ctx.json("selections", path)?;
            file.to_regions(&s)?
        }
        None => {
            greedy_delta_selections(&s, &vec![s.full(); horizon.unwrap_or(ctx.config.horizon)])?
        }
    };
    let n = horizon.unwrap_or(sels.len());
    let dec = decompose_from_hurewicz(&s, &sels, n, &scales)?;
    let checks = vec![Check::of(
        "chain_valid",
        dec.validate(&s).map_err(|e| e.to_string()),
    )];
    Ok(Body {
        checks,
        result: to_value(&dec),
    })
}

fn cmd_select(ctx: &mut Ctx, space: &str, chain: &Path, covers: &Path) -> Result<Body> {
    let s = ctx.space(space)?;
    let chain: ChainFile = ctx.json("chain", chain)?;
    let dec = chain.to_decomposition(&s)?;
    let seq = ctx.covers(&s, covers)?;
    let picks = select_from_decomposition(&s, &dec, &seq)?;
    let verdict = hurewicz_selection_check(&s, &seq, &picks.picks)?;
    let mut checks = vec![Check::of(
        "hurewicz",
        match verdict.failures.first() {
            None => Ok(()),
            Some(p) => Err(json!({ "point": p })),
        },
    )];
    let late = (0..s.len()).find(|&p| {
        verdict.tail_index[p]
            .map(|k| k > picks.entry[p])
            .unwrap_or(true)
    });
    checks.push(Check::of(
        "tail_within_entry_level",
        match late {
            None => Ok(()),
            Some(p) => Err(
                json!({ "point": p, "entry": picks.entry[p], "tail_index": verdict.tail_index[p] }),
            ),
        },
    ));
    Ok(Body {
        checks,
        result: json!({ "picks": picks.picks, "entry": picks.entry, "tail_index": verdict.tail_index }),
    })
}

fn cmd_refine(ctx: &mut Ctx, space: &str, cover: &Path) -> Result<Body> {
    let s = ctx.space(space)?;
    let file: CoverFile = ctx.json("cover", cover)?;
    let cover = file.to_cover(&s)?;
    let margin = ctx.config.options(&s).margin;
    let (grid, families) = brick_refinement(&s, &cover, &margin)?;
    let mut checks = Vec::new();
    for (i, f) in families.iter().enumerate() {
        checks.push(Check::of(
            &format!("class_{i}_disjoint"),
            pairwise_disjoint_check(&s, &f.regions, &margin),
        ));
        checks.push(Check::of(
            &format!("class_{i}_refines"),
            refines_check(&s, &f.regions, &cover.regions).map(|_| ()),
        ));
    }
    let all: Vec<Region> = families.iter().flat_map(|f| f.regions.clone()).collect();
    checks.push(Check::of(
        "classes_cover",
        covers_check(&s, &all, &cover.target)
            .map(|_| ())
            .map_err(|p| json!({ "point": p })),
    ));
    Ok(Body {
        checks,
        result: json!({
            "regime": grid.regime,
            "cell_side": rational::fmt_q(&grid.cell_side),
            "gap": rational::fmt_q(&grid.gap),
            "families": families,
        }),
    })
}

fn cmd_scfin(ctx: &mut Ctx, space: &str, covers: &Path) -> Result<Body> {
    let s = ctx.space(space)?;
    let seq = ctx.covers(&s, covers)?;
    let opts = ctx.config.options(&s);
    let sel = sc_fin_select(&s, &seq, &opts)?;
    let checks = vec![Check::of(
        "selection_valid",
        sel.validate(&s, &seq, &opts.margin)
            .map_err(|e| e.to_string()),
    )];
    Ok(Body {
        checks,
        result: to_value(&sel),
    })
}

fn cmd_fincspace(ctx: &mut Ctx, space: &str, covers: &Path) -> Result<Body> {
    let s = ctx.space(space)?;
    let seq = ctx.covers(&s, covers)?;
    // bricks only: the sub-mesh fallback covers any sample in one step
    let opts = ScOptions { fallback: false, ..ctx.config.options(&s) };
    let found = finite_c_search(&s, &seq, &opts)?;
    let check = match &found {
        FiniteC::Witness { n, selection } => {
            let prefix = CoverSeq::new(seq.covers[..*n].to_vec());
            Check::of(
                "witness_valid",
                selection
                    .validate(&s, &prefix, &opts.margin)
                    .map_err(|e| e.to_string()),
            )
        }
        FiniteC::NoWitness { uncovered, .. } => {
            Check::pass(&format!("no_witness_confirmed_at_{uncovered}"))
        }
    };
    Ok(Body {
        checks: vec![check],
        result: to_value(&found),
    })
}

fn cmd_haver(
    ctx: &mut Ctx,
    space: &str,
    chain: Option<&Path>,
    epsilons: &str,
    horizon: Option<usize>,
) -> Result<Body> {
    let s = ctx.space(space)?;
    let raw = parse_q_list(epsilons)?;
    let mut schedule = normalize_epsilons(&raw)?;
    if let Some(n) = horizon {
        if n > schedule.horizon() {
            return Err(Error::InvalidInput(format!(
                "{} epsilons for horizon {n}",
                schedule.horizon()
            )));
        }
        schedule.values.truncate(n);
    }
    let dec = match chain {
        Some(p) => {
            let file: ChainFile = ctx.json("chain", p)?;
            file.to_decomposition(&s)?
        }
        None => full_chain(&s, schedule.horizon())?,
    };
    let opts = ctx.config.options(&s);
    let (w, _, _) = build_haver_witness(&s, &dec, &schedule, ctx.config.tail_slack, &opts)?;
    Ok(Body {
        checks: haver_checks(&s, &w, &opts),
        result: haver_result(&w),
    })
}

fn haver_checks(s: &SampledSpace, w: &crate::haver::HaverWitness, opts: &ScOptions) -> Vec<Check> {
    vec![
        Check::of(
            "haver_witness_valid",
            w.validate(s, &opts.margin).map_err(|e| e.to_string()),
        ),
        Check::of(
            "claim_replay",
            if w.traces.len() == s.len() {
                Ok(())
            } else {
                Err(json!({ "replayed": w.traces.len() }))
            },
        ),
    ]
}

fn haver_result(w: &crate::haver::HaverWitness) -> Value {
    json!({
        "epsilons": w.epsilon_schedule,
        "levels": w.levels,
        "blocks": w.blocks,
        "family_sizes": w.families.iter().map(|f| f.len()).collect::<Vec<_>>(),
        "diameter_bounds": w.diam_bounds,
        "families": w.families,
        "traces": &w.traces[..w.traces.len().min(TRACE_CAP)],
        "traces_total": w.traces.len(),
    })
}

fn cmd_game(
    ctx: &mut Ctx,
    space: &str,
    covers: &Path,
    two: &str,
    horizon: Option<usize>,
) -> Result<Body> {
    let s = ctx.space(space)?;
    let seq = ctx.covers(&s, covers)?;
    let policy = TwoPolicy::parse(two)?;
    let opts = ctx.config.options(&s);
    let horizon = horizon.unwrap_or(seq.horizon());
    let t = play_hurewicz_game(&s, &seq, policy, horizon, ctx.config.tail_slack, &opts)?;
    let increasing = t.blocks.windows(2).all(|w| w[0] < w[1]);
    let mut checks = vec![Check::of(
        "blocks_increasing",
        if increasing {
            Ok(())
        } else {
            Err(json!({ "blocks": t.blocks }))
        },
    )];
    checks.push(Check::of(
        "lost_by_one",
        match t.verdict.witness {
            None => Ok(()),
            Some(p) => Err(json!({ "point": p, "tail_index": t.verdict.tail_index[p], "rounds": t.rounds.len() })),
        },
    ));
    Ok(Body {
        checks,
        result: to_value(&t),
    })
}

fn cmd_scplus(ctx: &mut Ctx, space: &str, covers: &Path) -> Result<Body> {
    let s = ctx.space(space)?;
    let seq = ctx.covers(&s, covers)?;
    let opts = ctx.config.options(&s);
    let (t, w) = sc_plus_select(&s, &seq, ctx.config.tail_slack, &opts)?;
    let checks = vec![Check::of(
        "sc_plus_valid",
        w.validate(&s, &seq, &opts.margin)
            .map_err(|e| e.to_string()),
    )];
    Ok(Body {
        checks,
        result: json!({ "transcript_blocks": t.blocks, "selection": w }),
    })
}

fn cmd_check(
    ctx: &mut Ctx,
    kind: CheckKind,
    space: &str,
    covers: &Path,
    picks: &Path,
) -> Result<Body> {
    let s = ctx.space(space)?;
    let seq = ctx.covers(&s, covers)?;
    let picks: PicksFile = ctx.json("picks", picks)?;
    match kind {
        CheckKind::Hurewicz => {
            let v = hurewicz_selection_check(&s, &seq, &picks.picks)?;
            let check = Check::of(
                "hurewicz",
                match v.failures.first() {
                    None => Ok(()),
                    Some(p) => Err(json!({ "point": p, "failures": v.failures.len() })),
                },
            );
            Ok(Body {
                checks: vec![check],
                result: to_value(&v),
            })
        }
        CheckKind::Menger => match menger_selection_check(&s, &seq, &picks.picks)? {
            Ok(w) => Ok(Body {
                checks: vec![Check::pass("menger")],
                result: to_value(&w),
            }),
            Err(p) => Ok(Body {
                checks: vec![Check::fail("menger", json!({ "point": p }))],
                result: Value::Null,
            }),
        },
    }
}

/// Schedule used by the demo: `4^-n`, or `4^(2-n)` on grids of dimension at
/// least two so the first levels are coarse enough for brick classes.
pub fn demo_schedule(space: &SampledSpace, horizon: usize) -> Schedule {
    let shift: i64 = match space.kind() {
        SpaceKind::Grid { dim, .. } if dim >= 2 => 2,
        _ => 0,
    };
    let values = (1..=horizon as i64)
        .map(|n| {
            let e = n - shift;
            if e >= 0 {
                qpow(&q(1, 4), e as u64)
            } else {
                qpow(&Q::from_integer(4.into()), (-e) as u64)
            }
        })
        .collect();
    Schedule::epsilon(values).expect("positive schedule")
}

/// Chain from greedy ball selections, then the game-driven selection and the
/// small-diameter families on a built-in space; each stage reports one check.
pub fn pipeline_demo(label: &str, horizon: usize, config: &RunConfig) -> Result<Report> {
    let started = Instant::now();
    let space = crate::registry::builtin(label, config.point_cap)?;
    let opts = config.options(&space);
    let mut checks = Vec::new();
    let mut result = serde_json::Map::new();
    let stage = |name: &str, e: Error| Error::Invariant(format!("stage {name}: {e}"));

    let sels = greedy_delta_selections(&space, &vec![space.full(); horizon])?;
    let dec = decompose_from_hurewicz(&space, &sels, horizon, &[q(1, 2), q(1, 4), q(1, 16)])
        .map_err(|e| stage("decompose", e))?;
    checks.push(Check::of(
        "decompose",
        dec.validate(&space).map_err(|e| e.to_string()),
    ));
    result.insert(
        "chain_sizes".into(),
        json!(dec.chain.iter().map(|c| c.count()).collect::<Vec<_>>()),
    );

    let schedule = demo_schedule(&space, horizon);
    let (w, t, plus) = build_haver_witness(&space, &dec, &schedule, config.tail_slack, &opts)
        .map_err(|e| stage("haver", e))?;
    let covers = crate::haver::haver_covers(&space, &dec, &schedule)?.0;
    checks.push(Check::of(
        "scplus",
        plus.validate(&space, &covers, &opts.margin)
            .map_err(|e| e.to_string()),
    ));
    let redo = assemble_w(&space, &t, &covers, &opts.margin).map_err(|e| stage("scplus", e))?;
    checks.push(Check::of(
        "scplus_replay",
        if redo.blocks == plus.blocks {
            Ok(())
        } else {
            Err(json!({ "blocks": redo.blocks }))
        },
    ));
    checks.extend(haver_checks(&space, &w, &opts));
    let max_classes = t
        .rounds
        .iter()
        .map(|r| r.one_move.families.len())
        .max()
        .unwrap_or(0);
    result.insert("space".into(), json!(label));
    result.insert("horizon".into(), json!(horizon));
    result.insert("blocks".into(), json!(plus.blocks));
    result.insert(
        "regimes".into(),
        json!(demo_regimes(&space, &covers, &opts)),
    );
    result.insert(
        "one_move_lengths".into(),
        json!(t
            .rounds
            .iter()
            .map(|r| r.one_move.families.len())
            .collect::<Vec<_>>()),
    );
    result.insert("max_one_move".into(), json!(max_classes));
    result.insert("haver".into(), haver_result(&w));
    let passed = checks.iter().all(|c| c.passed);
    Ok(Report {
        command: "demo".into(),
        argv: vec![label.into(), horizon.to_string()],
        config: config.clone(),
        inputs: BTreeMap::from([("space".to_string(), format!("{BUILTIN_PREFIX}{label}"))]),
        passed,
        checks,
        result: Value::Object(result),
        wall_time_ms: started.elapsed().as_millis() as u64,
    })
}

/// Per block of the first round, the regime and the number of nonempty classes.
fn demo_regimes(space: &SampledSpace, covers: &CoverSeq, opts: &ScOptions) -> Value {
    match sc_fin_select(space, covers, opts) {
        Ok(sel) => json!(sel
            .blocks
            .iter()
            .map(|b| {
                let nonempty = sel.families[b.start - 1..b.end]
                    .iter()
                    .filter(|f| !f.is_empty())
                    .count();
                json!({ "start": b.start, "end": b.end, "regime": b.regime, "classes": nonempty })
            })
            .collect::<Vec<_>>()),
        Err(e) => json!({ "error": e.to_string() }),
    }
}
