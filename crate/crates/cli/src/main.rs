use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use golden_cli::{
    cmd_chain, cmd_classify, cmd_conjecture, cmd_hydra, cmd_quiver, cmd_rates, cmd_run, cmd_series,
    cmd_verify, parse_odd, parse_regrowth, parse_shape, parse_strategy, run_config, CliResult,
    RunArgs,
};
use golden_core::automaton::Schedule;

#[derive(Parser)]
#[command(
    name = "golden",
    version,
    about = "Collatz equivalence rules and the golden automaton"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type, rank, verticality, head membership and variety of an odd number.
    Classify { value: String },
    /// Oracle-check every generated claim with lhs <= MAX.
    Verify {
        #[arg(long, default_value = "1023")]
        max: String,
        /// Append a claim no rule generates.
        #[arg(long)]
        inject_corrupt: bool,
    },
    /// Play the coloring game until rows 2..=ROWS are complete.
    Run {
        #[arg(long, default_value_t = 8)]
        rows: u32,
        /// Row report CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Snapshot CSV of every cell up to the last row.
        #[arg(long)]
        snapshots: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        stride: u64,
        /// Per-tick trace of processed cells.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Fit of ln(expense) against the row index.
        #[arg(long)]
        fit: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        fit_from: u32,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value = "min-first")]
        schedule: Schedule,
    },
    /// Follow the single type A branch from START.
    Chain {
        start: String,
        #[arg(long)]
        bound: Option<String>,
        /// Also list the heads cut along the way.
        #[arg(long)]
        cuts: bool,
    },
    /// DOT rendering of the quiver on odd numbers up to MAX.
    Quiver {
        #[arg(long, default_value = "31")]
        max: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play a hydra game and write its cut trace.
    Hydra {
        /// path:N, star:N or parents:P1,P2,...
        #[arg(long, default_value = "path:2")]
        shape: String,
        /// leftmost, rightmost, short-first or hecatonchire:K
        #[arg(long, default_value = "leftmost")]
        strategy: String,
        /// step or fixed:N
        #[arg(long, default_value = "step")]
        regrowth: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproductive rates per dot class.
    Rates {
        #[arg(long, default_value_t = 10)]
        rows: u32,
        /// Bound for the structural black-dot rate.
        #[arg(long, default_value_t = 65_536)]
        max: u128,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value = "min-first")]
        schedule: Schedule,
    },
    /// Exact partial sums of the averaging series.
    Series {
        #[arg(default_value_t = 30)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seed odds up to 2^N gold and check that odds up to 2^(N+1) follow.
    Conjecture {
        /// Single N; rows 2..=12 when omitted.
        #[arg(long)]
        seed_row: Option<u32>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value = "min-first")]
        schedule: Schedule,
    },
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Classify { value } => cmd_classify(&value, out),
        Command::Verify {
            max,
            inject_corrupt,
        } => cmd_verify(parse_odd(&max)?, inject_corrupt, out).map(|_| ()),
        Command::Run {
            rows,
            out: csv,
            snapshots,
            stride,
            trace,
            fit,
            fit_from,
            budget,
            schedule,
        } => {
            let args = RunArgs {
                rows,
                out: csv,
                snapshots,
                stride,
                trace,
                fit,
                fit_from,
                config: run_config(schedule, budget),
            };
            cmd_run(&args, out).map(|_| ())
        }
        Command::Chain { start, bound, cuts } => {
            let bound = bound.as_deref().map(parse_odd).transpose()?;
            cmd_chain(parse_odd(&start)?, bound, cuts, out)
        }
        Command::Quiver { max, out: dot } => cmd_quiver(parse_odd(&max)?, dot.as_deref(), out),
        Command::Hydra {
            shape,
            strategy,
            regrowth,
            budget,
            out: csv,
        } => cmd_hydra(
            parse_shape(&shape)?,
            parse_strategy(&strategy)?,
            parse_regrowth(&regrowth)?,
            budget,
            csv.as_deref(),
            out,
        )
        .map(|_| ()),
        Command::Rates {
            rows,
            max,
            out: csv,
            budget,
            schedule,
        } => cmd_rates(
            rows,
            max,
            &run_config(schedule, budget),
            csv.as_deref(),
            out,
        )
        .map(|_| ()),
        Command::Series { n, out: csv } => cmd_series(n, csv.as_deref(), out).map(|_| ()),
        Command::Conjecture {
            seed_row,
            budget,
            schedule,
        } => {
            let rows: Vec<u32> = match seed_row {
                Some(n) => vec![n],
                None => (2..=12).collect(),
            };
            cmd_conjecture(&rows, &run_config(schedule, budget), out).map(|_| ())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("golden: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
