//! Command implementations behind the `golden` binary. Each command writes
//! its human-readable report to the given writer and its data files to
//! the paths it is handed.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use golden_core::automaton::{
    build_quiver, conjecture1_check, export_quiver_dot, follow_a_branch, ColoringState,
    ConjectureOutcome, RunConfig, Schedule,
};
use golden_core::export;
use golden_core::hydra::{self, GameOutcome, HydraTree, Regrowth, Strategy};
use golden_core::metrics::{self, DotClass};
use golden_core::rules::{self, EquivalenceClaim, RuleId};
use golden_core::{Error, OddNumber, DEFAULT_STEP_BOUND};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
    Abort(String),
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    /// 1 for failed verification, 2 for usage errors, 3 for budget or
    /// overflow aborts. I/O errors share the abort code.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Abort(_) | CliError::Io { .. } => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Abort(m) => write!(f, "aborted: {m}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotOdd(_)
            | Error::TypeMismatch { .. }
            | Error::TypeBArgument(_)
            | Error::RankViolation { .. }
            | Error::NotReducible(_)
            | Error::NotAHead(_) => CliError::Usage(e.to_string()),
            Error::HeadInvariantViolation(_) | Error::IdentityViolation { .. } => {
                CliError::Verification(e.to_string())
            }
            _ => CliError::Abort(e.to_string()),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn stdout_err(source: io::Error) -> CliError {
    io_err(Path::new("<stdout>"))(source)
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

/// Writes through `f` to `path`, or to `fallback` when no path is given.
fn emit(
    path: Option<&Path>,
    fallback: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> CliResult {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            f(&mut w).and_then(|_| w.flush()).map_err(io_err(p))
        }
        None => f(fallback).map_err(stdout_err),
    }
}

pub fn parse_odd(s: &str) -> CliResult<OddNumber> {
    let v: u128 = s
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("'{s}' is not a positive integer")))?;
    OddNumber::new(v).map_err(|_| CliError::Usage(format!("{v} is not a positive odd integer")))
}

/// `17 A rank=1 vertical_even ag=true variety_v(b=1,k=1)`
pub fn classify_line(x: OddNumber) -> String {
    format!(
        "{} {} rank={} {} ag={} {}",
        x,
        x.number_type(),
        x.rank(),
        x.verticality(),
        hydra::is_ag(x),
        rules::variety_classify(x)
    )
}

pub fn cmd_classify(value: &str, out: &mut dyn Write) -> CliResult {
    let x = parse_odd(value)?;
    writeln!(out, "{}", classify_line(x)).map_err(stdout_err)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifySummary {
    pub total: usize,
    pub confirmed: usize,
    pub failed: usize,
}

/// Claim that no generator emits; used to exercise the failure path.
pub fn corrupt_claim() -> EquivalenceClaim {
    EquivalenceClaim::new(
        OddNumber::new(3).expect("odd"),
        OddNumber::new(15).expect("odd"),
        RuleId::R1,
    )
}

/// Checks one claim: the oracle must confirm it and its rule must
/// regenerate it.
pub fn claim_holds(c: &EquivalenceClaim) -> CliResult<bool> {
    Ok(c.check(DEFAULT_STEP_BOUND)?.is_confirmed() && c.rederive())
}

pub fn cmd_verify(
    max: OddNumber,
    inject_corrupt: bool,
    out: &mut dyn Write,
) -> CliResult<VerifySummary> {
    if max.get() < 3 {
        return Err(CliError::Usage("--max must be at least 3".into()));
    }
    let mut claims = rules::claims_up_to(max)?;
    if inject_corrupt {
        claims.push(corrupt_claim());
    }
    let mut failures = Vec::new();
    for c in &claims {
        if !claim_holds(c)? {
            failures.push(*c);
        }
    }
    let summary = VerifySummary {
        total: claims.len(),
        confirmed: claims.len() - failures.len(),
        failed: failures.len(),
    };
    let w = &mut *out;
    (|| -> io::Result<()> {
        writeln!(
            w,
            "claims={} confirmed={} failed={}",
            summary.total, summary.confirmed, summary.failed
        )?;
        for c in failures.iter().take(10) {
            writeln!(w, "FAILED {c}")?;
        }
        if failures.is_empty() {
            writeln!(w, "all claims confirmed")?;
        }
        Ok(())
    })()
    .map_err(stdout_err)?;
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(CliError::Verification(format!(
            "{} of {} claims failed",
            summary.failed, summary.total
        )))
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunArgs {
    pub rows: u32,
    pub out: Option<PathBuf>,
    pub snapshots: Option<PathBuf>,
    pub stride: u64,
    pub trace: Option<PathBuf>,
    /// Log-linear fit CSV over rows `fit_from..=rows`.
    pub fit: Option<PathBuf>,
    pub fit_from: u32,
    pub config: RunConfig,
}

/// Plays the coloring game to `rows` and writes the row reports, optional
/// snapshots every `stride` ticks and an optional per-tick trace.
pub fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> CliResult<Vec<golden_core::RowReport>> {
    if args.rows < 2 {
        return Err(CliError::Usage("--rows must be at least 2".into()));
    }
    let upto = (1u128 << (args.rows + 1)) - 1;
    let mut snaps = args.snapshots.as_deref().map(create).transpose()?;
    let mut trace = args.trace.as_deref().map(create).transpose()?;
    let mut io_fail: Option<(PathBuf, io::Error)> = None;

    let mut state = ColoringState::new(args.config.schedule);
    if let Some(w) = snaps.as_mut() {
        let r = export::write_snapshot_header(w)
            .and_then(|_| export::write_snapshot(w, 0, &state.snapshot(upto)));
        r.map_err(io_err(args.snapshots.as_deref().expect("set")))?;
    }
    if let Some(w) = trace.as_mut() {
        writeln!(w, "tick,cell,colored").map_err(io_err(args.trace.as_deref().expect("set")))?;
    }
    let stride = args.stride;
    let reports = state.run_rows_observed(args.rows, args.config.tick_budget, |s, step| {
        if io_fail.is_some() {
            return;
        }
        if let Some(w) = trace.as_mut() {
            let colored: Vec<String> = step
                .colored
                .iter()
                .map(|(y, r)| format!("{y}:{r}"))
                .collect();
            if let Err(e) = writeln!(w, "{},{},{}", step.tick, step.cell, colored.join(" ")) {
                io_fail = Some((args.trace.clone().expect("set"), e));
            }
        }
        if let Some(w) = snaps.as_mut() {
            if stride > 0 && s.tick() % stride == 0 {
                if let Err(e) = export::write_snapshot(w, s.tick(), &s.snapshot(upto)) {
                    io_fail = Some((args.snapshots.clone().expect("set"), e));
                }
            }
        }
    })?;
    if let Some((path, source)) = io_fail {
        return Err(CliError::Io { path, source });
    }
    if let Some(mut w) = snaps {
        let p = args.snapshots.as_deref().expect("set");
        if stride == 0 || !state.tick().is_multiple_of(stride) {
            export::write_snapshot(&mut w, state.tick(), &state.snapshot(upto))
                .map_err(io_err(p))?;
        }
        w.flush().map_err(io_err(p))?;
    }
    if let Some(mut w) = trace {
        w.flush()
            .map_err(io_err(args.trace.as_deref().expect("set")))?;
    }
    if let Some(p) = args.out.as_deref() {
        let mut w = create(p)?;
        export::write_row_reports(&mut w, &reports)
            .and_then(|_| w.flush())
            .map_err(io_err(p))?;
    }
    let fit = match args.fit.as_deref() {
        Some(p) => {
            let rows: Vec<_> = reports
                .iter()
                .filter(|r| r.row >= args.fit_from)
                .copied()
                .collect();
            let fit = metrics::loglinearity(&rows)?;
            let mut w = create(p)?;
            export::write_fit(&mut w, &fit)
                .and_then(|_| w.flush())
                .map_err(io_err(p))?;
            Some(fit)
        }
        None => None,
    };
    (|| -> io::Result<()> {
        writeln!(
            out,
            "schedule={} ticks={}",
            args.config.schedule,
            state.tick()
        )?;
        for r in &reports {
            writeln!(
                out,
                "row {} tick={} expense={}",
                r.row, r.completion_tick, r.expense
            )?;
        }
        if let Some(f) = &fit {
            writeln!(
                out,
                "fit rows {}..{} slope={:.6} intercept={:.6} r_squared={:.6}",
                args.fit_from, args.rows, f.slope, f.intercept, f.r_squared
            )?;
        }
        Ok(())
    })()
    .map_err(stdout_err)?;
    Ok(reports)
}

pub fn cmd_chain(
    start: OddNumber,
    bound: Option<OddNumber>,
    cuts: bool,
    out: &mut dyn Write,
) -> CliResult {
    let chain = follow_a_branch(start, bound)?;
    for s in &chain.steps {
        writeln!(out, "{s}").map_err(stdout_err)?;
    }
    if cuts {
        let heads = hydra::map_run_to_cuts(&chain)?;
        let list: Vec<String> = heads.iter().map(|h| h.to_string()).collect();
        writeln!(out, "cuts: {}", list.join(" ")).map_err(stdout_err)?;
    }
    Ok(())
}

pub fn cmd_quiver(limit: OddNumber, path: Option<&Path>, out: &mut dyn Write) -> CliResult {
    if limit.get() < 3 {
        return Err(CliError::Usage("--max must be at least 3".into()));
    }
    let dot = export_quiver_dot(&build_quiver(limit)?);
    emit(path, out, |w| w.write_all(dot.as_bytes()))
}

/// `path:N`, `star:N` or `parents:P1,P2,...`.
pub fn parse_shape(s: &str) -> CliResult<HydraTree> {
    let bad = || CliError::Usage(format!("bad hydra shape '{s}'"));
    let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
    match kind {
        "path" => Ok(HydraTree::path(arg.parse().map_err(|_| bad())?)),
        "star" => Ok(HydraTree::star(arg.parse().map_err(|_| bad())?)),
        "parents" => {
            let ps: Vec<usize> = arg
                .split(',')
                .map(|p| p.trim().parse().map_err(|_| bad()))
                .collect::<CliResult<_>>()?;
            if ps.iter().enumerate().any(|(i, &p)| p > i) {
                return Err(bad());
            }
            Ok(HydraTree::from_parents(&ps))
        }
        _ => Err(bad()),
    }
}

pub fn parse_strategy(s: &str) -> CliResult<Strategy> {
    match s {
        "leftmost" => Ok(Strategy::Leftmost),
        "rightmost" => Ok(Strategy::Rightmost),
        "short-first" => Ok(Strategy::ShortFirst),
        _ => match s.split_once(':') {
            Some(("hecatonchire", k)) => k
                .parse()
                .ok()
                .filter(|&k| k > 0)
                .map(Strategy::Hecatonchire)
                .ok_or_else(|| CliError::Usage(format!("bad strategy '{s}'"))),
            _ => Err(CliError::Usage(format!("unknown strategy '{s}'"))),
        },
    }
}

/// `step` or `fixed:N`.
pub fn parse_regrowth(s: &str) -> CliResult<Regrowth> {
    match s.split_once(':') {
        None if s == "step" => Ok(Regrowth::StepIndexed),
        Some(("fixed", n)) => n
            .parse()
            .map(Regrowth::Fixed)
            .map_err(|_| CliError::Usage(format!("bad regrowth '{s}'"))),
        _ => Err(CliError::Usage(format!("bad regrowth '{s}'"))),
    }
}

pub fn cmd_hydra(
    tree: HydraTree,
    strategy: Strategy,
    regrowth: Regrowth,
    budget: u64,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<GameOutcome> {
    let (outcome, trace) = hydra::trace_game(tree, strategy, regrowth, budget);
    match path {
        Some(p) => {
            let mut w = create(p)?;
            export::write_hydra_trace(&mut w, &trace)
                .and_then(|_| w.flush())
                .map_err(io_err(p))?;
        }
        None => export::write_hydra_trace(out, &trace).map_err(stdout_err)?,
    }
    match outcome {
        GameOutcome::RootReached { steps } => {
            writeln!(out, "root reached after {steps} cuts").map_err(stdout_err)?;
            Ok(outcome)
        }
        GameOutcome::BudgetExceeded => Err(CliError::Abort(format!("budget of {budget} exceeded"))),
    }
}

pub fn cmd_rates(
    rows: u32,
    black_bound: u128,
    config: &RunConfig,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<Vec<metrics::RateReport>> {
    let (_, state) = golden_core::run_rows(rows, config)?;
    let sample_bound = (1u128 << (rows + 1)) - 1;
    let mut reports = Vec::new();
    for class in [DotClass::TypeB, DotClass::TypeC, DotClass::TypeAg] {
        reports.push(metrics::empirical_rate(&state, class, sample_bound)?);
    }
    reports.push(metrics::black_structural_rate(black_bound)?);
    if let Some(p) = path {
        let mut w = create(p)?;
        export::write_rates(&mut w, &reports)
            .and_then(|_| w.flush())
            .map_err(io_err(p))?;
    }
    for r in &reports {
        writeln!(
            out,
            "{} samples={} mean={} ({:.6}) window: {}",
            r.class,
            r.sample_count,
            r.mean_rate,
            r.mean_f64(),
            r.window
        )
        .map_err(stdout_err)?;
    }
    Ok(reports)
}

/// Value the series is sometimes quoted to converge to.
pub const QUOTED_SERIES_LIMIT: f64 = 6.5;

pub fn cmd_series(
    n: u32,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<metrics::SeriesPoint> {
    if n < 1 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let points: Vec<_> = (1..=n).map(metrics::series_partial_sum).collect();
    if let Some(p) = path {
        let mut w = create(p)?;
        export::write_series(&mut w, &points)
            .and_then(|_| w.flush())
            .map_err(io_err(p))?;
    }
    let last = points.last().expect("n >= 1").clone();
    let limit = metrics::series_limit();
    (|| -> io::Result<()> {
        writeln!(out, "n={} partial_sum={} ({:.12})", last.n, last.partial_sum, last.to_f64())?;
        writeln!(out, "limit={limit} (8.5)")?;
        writeln!(
            out,
            "discrepancy: quoted limit {QUOTED_SERIES_LIMIT} differs from the exact limit 8.5 by {}",
            8.5 - QUOTED_SERIES_LIMIT
        )
    })()
    .map_err(stdout_err)?;
    Ok(last)
}

pub fn cmd_conjecture(
    rows: &[u32],
    config: &RunConfig,
    out: &mut dyn Write,
) -> CliResult<Vec<ConjectureOutcome>> {
    let mut outcomes = Vec::new();
    for &n in rows {
        if !(1..=100).contains(&n) {
            return Err(CliError::Usage(format!("seed row {n} out of range")));
        }
        let (o, _) = conjecture1_check(n, config)?;
        match o {
            ConjectureOutcome::Holds { ticks } => writeln!(out, "n={n} holds ticks={ticks}"),
            ConjectureOutcome::Exceeded { budget } => {
                writeln!(out, "n={n} exceeded budget={budget}")
            }
        }
        .map_err(stdout_err)?;
        outcomes.push(o);
    }
    if outcomes.iter().all(|o| o.holds()) {
        Ok(outcomes)
    } else {
        Err(CliError::Abort("tick budget exhausted".into()))
    }
}

pub fn run_config(schedule: Schedule, budget: Option<u64>) -> RunConfig {
    RunConfig {
        schedule,
        tick_budget: budget.unwrap_or(golden_core::automaton::DEFAULT_TICK_BUDGET),
    }
}
