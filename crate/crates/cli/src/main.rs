use clap::{Parser, Subcommand};
use entwit::witness::DEFAULT_FIRED_TOL;
use entwit_cli::commands::{cmd_eval, cmd_scan, cmd_verify};
use std::path::PathBuf;
use std::process::ExitCode;

/// Entanglement conversion witnesses for bipartite states.
#[derive(Parser)]
#[command(name = "entwit", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate all conversion witnesses on one (source, target) pair.
    Eval {
        /// Source state spec, e.g. "werner d=2 alpha=-0.5".
        #[arg(long)]
        rho: String,
        /// Target state spec, e.g. "pure d=2 l0=0.8 l1=0.2".
        #[arg(long)]
        sigma: String,
        /// Also write the pair's CSV cell row to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Firing threshold: a witness fires when its value < -tol.
        #[arg(long, default_value_t = DEFAULT_FIRED_TOL)]
        tol: f64,
    },
    /// Scan a 2-D parameter grid and emit one CSV row per cell.
    Scan {
        /// Source state spec with the x-axis parameter left unset.
        #[arg(long)]
        rho: String,
        /// Target state spec with the y-axis parameter left unset.
        #[arg(long)]
        sigma: String,
        /// Grid spec "x=<name>:<lo>:<hi>:<n>,y=<name>:<lo>:<hi>:<n>".
        #[arg(long)]
        grid: String,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Firing threshold: a witness fires when its value < -tol.
        #[arg(long, default_value_t = DEFAULT_FIRED_TOL)]
        tol: f64,
    },
    /// Run a self-verification suite and report violations.
    Verify {
        /// Suite name: opineq, monotonicity, support_oracle,
        /// majorization_f_l, gwer_vertices, or lu_orbit.
        suite: String,
        /// Trial count (default: the suite's standard volume).
        #[arg(long)]
        trials: Option<usize>,
        /// RNG seed (falls back to $ENTWIT_SEED, then 0).
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match &cli.cmd {
        Cmd::Eval {
            rho,
            sigma,
            out,
            tol,
        } => cmd_eval(rho, sigma, *tol, out.as_deref(), &mut stdout).map(|()| ExitCode::SUCCESS),
        Cmd::Scan {
            rho,
            sigma,
            grid,
            out,
            tol,
        } => cmd_scan(rho, sigma, grid, *tol, out.as_deref(), &mut stdout)
            .map(|()| ExitCode::SUCCESS),
        Cmd::Verify {
            suite,
            trials,
            seed,
        } => cmd_verify(suite, *trials, *seed, &mut stdout).map(|passed| {
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
