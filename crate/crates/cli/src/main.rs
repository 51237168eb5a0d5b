//! `lfvo` - certifying analyzer for linear fractional vector optimization
//! problems over polyhedral constraint sets.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lfvo_cli::commands::{
    cmd_check_point, cmd_classify, cmd_examples, cmd_generate, cmd_probe_ray, CmdResult,
};

#[derive(Parser)]
#[command(
    name = "lfvo",
    version,
    about = "Exact analysis of linear fractional vector optimization problems",
    long_about = "Decides whether a linear fractional vector optimization problem is \
                  pathological (every efficient solution is improperly efficient), \
                  certifies individual efficient points as properly efficient, and \
                  demonstrates diverging trade-off ratios along recession rays. All \
                  arithmetic is exact; every verdict carries a re-verifiable witness."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate and classify a problem file; exit 0 = proper, 2 =
    /// pathological, 3 = inconclusive verdicts present.
    Classify {
        /// Problem file (JSON).
        path: PathBuf,
        /// Sample points to analyze, e.g. "[2,0];[3,4]"; defaults to the
        /// file's bundled points.
        #[arg(long)]
        points: Option<String>,
        /// Largest exponent of the power-of-two ratio-probe grid.
        #[arg(long, default_value_t = 40)]
        grid_max_exp: u32,
        /// Emit the machine-readable JSON report.
        #[arg(long)]
        json: bool,
        /// Emit the human-readable text report (default).
        #[arg(long, conflicts_with = "json")]
        text: bool,
    },
    /// Efficiency, properness scan, and regularity flags for one point.
    CheckPoint {
        path: PathBuf,
        /// The point, e.g. "[1,0]" (components may be rationals "p/q").
        point: String,
        #[arg(long)]
        json: bool,
    },
    /// Exact trade-off ratios along a recession ray, as CSV.
    ProbeRay {
        path: PathBuf,
        /// Base point, e.g. "[0,0]".
        point: String,
        /// Ray direction, e.g. "[0,1]"; must lie in the recession cone.
        direction: String,
        /// Largest exponent of the power-of-two grid.
        #[arg(long, default_value_t = 40)]
        grid_max_exp: u32,
        /// Explicit step lengths overriding the grid, e.g. "7;9/2;64".
        #[arg(long)]
        ts: Option<String>,
    },
    /// Write a seeded pathological instance to a problem file.
    Generate {
        n: usize,
        m: usize,
        seed: u64,
        out: PathBuf,
    },
    /// List bundled examples, or emit one as JSON.
    Examples {
        /// Example name; omit to list all.
        name: Option<String>,
        /// Criteria count for the hpy-family example (2..=8, default 3).
        #[arg(long)]
        m: Option<usize>,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Classify { path, points, grid_max_exp, json, text: _ } => {
            cmd_classify(&path, points.as_deref(), grid_max_exp, json)
        }
        Command::CheckPoint { path, point, json } => cmd_check_point(&path, &point, json),
        Command::ProbeRay { path, point, direction, grid_max_exp, ts } => {
            cmd_probe_ray(&path, &point, &direction, grid_max_exp, ts.as_deref())
        }
        Command::Generate { n, m, seed, out } => cmd_generate(n, m, seed, &out),
        Command::Examples { name, m, out } => cmd_examples(name.as_deref(), m, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{}", output.stdout);
            ExitCode::from(output.code)
        }
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}
