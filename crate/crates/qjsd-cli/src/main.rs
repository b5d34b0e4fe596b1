use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qjsd_cli::config::Config;
use qjsd_cli::runner;

/// Quantum Jensen-Shannon divergence experiments: state-space distance
/// histograms, entanglement curves, metric property checks, and
/// closest-separable-state searches. All verbs are reproducible given the
/// same seed and configuration.
#[derive(Parser, Debug)]
#[command(name = "qjsd", version)]
struct Cli {
    /// Print the effective configuration (defaults, then config file, then
    /// flags) and exit.
    #[arg(long, global = true)]
    dump_config: bool,

    /// Master seed for every random stream.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output directory for CSV and state files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// key=value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Reduced-effort variant (11-point curves, 2 restarts) for CI.
    #[arg(long, global = true)]
    fast: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Histogram of sqrt-JS distances from random states to I/N, per dimension.
    HistDistance {
        /// Comma-separated dimensions, e.g. 2,3,4,6,8
        #[arg(long)]
        dims: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        bins: Option<usize>,
    },
    /// Concurrence, E_JS and E_B versus linear entropy for a state family.
    EntanglementCurve {
        /// werner, mem, pdc, or all
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Monte Carlo triangle-inequality check for the sqrt-JS distance.
    TriangleCheck {
        #[arg(long)]
        dim: Option<usize>,
        /// Sampled state rank; 0 means full rank.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Verify the QJSD properties (i)-(vii); nonzero exit on violations.
    Properties {
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Find the closest separable state to the state in a density-matrix file.
    ClosestSeparable {
        #[arg(long)]
        input: PathBuf,
        /// js or bures
        #[arg(long)]
        metric: Option<String>,
        /// key=value file overriding the anneal.* settings
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
}

fn build_config(cli: &Cli) -> qjsd::Result<Config> {
    let mut cfg = Config::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    if cli.fast {
        cfg.fast = true;
    }
    match &cli.command {
        Some(Command::HistDistance { dims, samples, bins }) => {
            if let Some(d) = dims {
                cfg.set("hist.dims", d)?;
            }
            if let Some(s) = samples {
                cfg.hist_samples = *s;
            }
            if let Some(b) = bins {
                cfg.hist_bins = *b;
            }
        }
        Some(Command::EntanglementCurve { family, points }) => {
            if let Some(f) = family {
                cfg.curve_family = f.clone();
            }
            if let Some(p) = points {
                cfg.curve_points = *p;
            }
        }
        Some(Command::TriangleCheck { dim, rank, trials }) => {
            if let Some(d) = dim {
                cfg.triangle_dim = *d;
            }
            if let Some(r) = rank {
                cfg.triangle_rank = *r;
            }
            if let Some(t) = trials {
                cfg.triangle_trials = *t;
            }
        }
        Some(Command::Properties { trials }) => {
            if let Some(t) = trials {
                cfg.properties_trials = *t;
            }
        }
        Some(Command::ClosestSeparable { metric, schedule, .. }) => {
            if let Some(m) = metric {
                cfg.closest_metric = m.clone();
            }
            if let Some(path) = schedule {
                cfg.apply_file(path)?;
            }
        }
        None => {}
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.dump_config {
        print!("{}", cfg.dump());
        return ExitCode::SUCCESS;
    }
    let Some(command) = &cli.command else {
        eprintln!("error: no command given (try --help)");
        return ExitCode::from(2);
    };
    let outcome = match command {
        Command::HistDistance { .. } => runner::run_hist_distance(&cfg),
        Command::EntanglementCurve { .. } => runner::run_entanglement_curve(&cfg),
        Command::TriangleCheck { .. } => runner::run_triangle(&cfg),
        Command::Properties { .. } => runner::run_properties(&cfg),
        Command::ClosestSeparable { input, .. } => runner::run_closest_separable(&cfg, input),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
