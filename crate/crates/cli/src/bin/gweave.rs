use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gweave::commands::{self, resolve_cap, CheckKind, CliResult, CommandOutput, WovenMode};
use gweave_core::DEFAULT_TOL;

/// Bounds, classification and weaving analysis for finite g-frames.
#[derive(Parser)]
#[command(name = "gweave", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Relative tolerance for every verdict.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest block count enumerated exhaustively [env: GWEAVE_EXHAUSTIVE_CAP, default 20].
    #[arg(long, global = true)]
    cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal frame bounds of one family.
    Bounds { path: PathBuf },
    /// Decide whether two families are woven and report universal bounds.
    Woven {
        first: PathBuf,
        second: PathBuf,
        /// Enumerate every weaving (the default).
        #[arg(long, conflicts_with = "search")]
        exhaustive: bool,
        /// Seeded local search with this many random starts.
        #[arg(long, value_name = "N")]
        search: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run one classification test.
    Check {
        path: PathBuf,
        kind: Kind,
        /// Second family, required by `dual-with`.
        other: Option<PathBuf>,
    },
    /// Canonical dual family.
    Dual {
        path: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Parseval family `Λ_m S^{-1/2}`.
    TransformParseval {
        path: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in battery of worked examples.
    PaperSuite {
        /// Extra blocks added to every linearly indexed example.
        #[arg(long, value_name = "K", default_value_t = 0)]
        dim_scale: usize,
        /// Search budget used when an example exceeds the cap.
        #[arg(long, value_name = "N")]
        search: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Frame,
    Exact,
    Riesz,
    Onb,
    DualWith,
}

fn run(cli: &Cli) -> CliResult<CommandOutput> {
    let tol = cli.tol;
    match &cli.command {
        Command::Bounds { path } => commands::cmd_bounds(path, tol),
        Command::Woven { first, second, search, seed, .. } => {
            let mode = match search {
                Some(budget) => WovenMode::Search { budget: *budget, seed: *seed },
                None => WovenMode::Exhaustive,
            };
            commands::cmd_woven(first, second, mode, tol, resolve_cap(cli.cap)?)
        }
        Command::Check { path, kind, other } => {
            let kind = match kind {
                Kind::Frame => CheckKind::Frame,
                Kind::Exact => CheckKind::Exact,
                Kind::Riesz => CheckKind::Riesz,
                Kind::Onb => CheckKind::Onb,
                Kind::DualWith => CheckKind::DualWith,
            };
            commands::cmd_check(path, kind, other.as_deref(), tol)
        }
        Command::Dual { path, output } => commands::cmd_dual(path, output.as_deref(), tol),
        Command::TransformParseval { path, output } => {
            commands::cmd_transform_parseval(path, output.as_deref(), tol)
        }
        Command::PaperSuite { dim_scale, search, seed } => {
            commands::cmd_paper_suite(*dim_scale, resolve_cap(cli.cap)?, *search, *seed, tol)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.report.to_json());
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
