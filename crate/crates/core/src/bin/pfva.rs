use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pfva_core::harness::{emit_csv, emit_runs, run_simulation, sweep_runs, write_csv_to, CsvRow};
use pfva_core::{mu_curve, AllocationPolicy, ExperimentConfig, Spacing};

#[derive(Parser)]
#[command(
    version,
    about = "Dynamic coupling of a dual-input force/velocity actuator"
)]
struct Cli {
    /// Experiment configuration (`key = value` lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output CSV path; falls back to `output` in the config, then stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Input allocation: velocity_only, force_only or min_norm.
    #[arg(long, global = true)]
    policy: Option<AllocationPolicy>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// μ and dμ/dρ against ρ.
    Curve {
        #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
        rho_min: f64,
        #[arg(long, default_value_t = 100.0, allow_hyphen_values = true)]
        rho_max: f64,
        #[arg(long, default_value_t = 401)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = SpacingArg::Log)]
        spacing: SpacingArg,
        /// Joint-side inertia I*, kg·m².
        #[arg(long, default_value_t = 1.0)]
        inertia: f64,
    },
    /// One crank-slider run at a single ρ.
    Simulate {
        /// Defaults to `rho` from the config.
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<f64>,
    },
    /// Run every ρ of the sweep and write one summary row each.
    Sweep {
        /// Comma-separated list; defaults to `rhos` from the config.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        rhos: Option<Vec<f64>>,
        /// Also write each run's records to DIR/run_rho_<ρ>.csv.
        #[arg(long)]
        runs_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpacingArg {
    Linear,
    Log,
}

impl From<SpacingArg> for Spacing {
    fn from(s: SpacingArg) -> Self {
        match s {
            SpacingArg::Linear => Spacing::Linear,
            SpacingArg::Log => Spacing::Log,
        }
    }
}

fn write_rows<R: CsvRow>(rows: &[R], out: Option<&Path>) -> pfva_core::Result<()> {
    match out {
        Some(path) => {
            emit_csv(rows, path)?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
            Ok(())
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_csv_to(rows, &mut lock).map_err(|e| pfva_core::Error::Csv {
                path: PathBuf::from("<stdout>"),
                source: e,
            })?;
            lock.flush().map_err(|e| pfva_core::Error::Io {
                path: PathBuf::from("<stdout>"),
                source: e,
            })
        }
    }
}

fn run(cli: Cli) -> pfva_core::Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(policy) = cli.policy {
        cfg.policy = policy;
    }
    let out = cli.out.clone().or_else(|| cfg.output.clone());

    match cli.command {
        Command::Curve {
            rho_min,
            rho_max,
            samples,
            spacing,
            inertia,
        } => {
            let rows = mu_curve(rho_min, rho_max, samples, inertia, spacing.into())?;
            write_rows(&rows, out.as_deref())
        }
        Command::Simulate { rho } => {
            let records = run_simulation(&cfg, rho.unwrap_or(cfg.rho))?;
            write_rows(&records, out.as_deref())
        }
        Command::Sweep { rhos, runs_dir } => {
            let rhos = rhos.unwrap_or_else(|| cfg.rhos.clone());
            let runs = sweep_runs(&cfg, &rhos)?;
            if let Some(dir) = runs_dir {
                let paths = emit_runs(&runs, &dir)?;
                eprintln!("wrote {} run files to {}", paths.len(), dir.display());
            }
            write_rows(&runs.summary.rows, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pfva: error: {e}");
            ExitCode::FAILURE
        }
    }
}
