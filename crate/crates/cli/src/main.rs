//! `cookie-cutter`: pressure curves, repeller dimension, and Lyapunov
//! spectra of cookie-cutter maps, from JSON system descriptions.
//!
//! Exit codes: 0 success, 2 config parse error, 3 system validation error,
//! 4 computation failure, 5 identity verification failure.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cookie_cutter::config::{load_system, LoadError};
use cookie_cutter::defaults;
use cookie_cutter::{CookieCutterSystem, Error, PressureEvaluator};
use std::path::PathBuf;
use std::process::ExitCode;

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_COMPUTE: u8 = 4;
pub const EXIT_VERIFY_FAILED: u8 = 5;

#[derive(Parser)]
#[command(
    name = "cookie-cutter",
    version,
    about = "Pressure, dimension, and Lyapunov spectra of cookie-cutter repellers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a system description file.
    Validate {
        /// JSON system description.
        config: PathBuf,
    },
    /// Hausdorff dimension of the repeller: Newton-Raphson on Bowen's equation.
    Dimension {
        config: PathBuf,
        #[command(flatten)]
        backend: BackendArgs,
        /// Newton starting point.
        #[arg(long, default_value_t = defaults::BOWEN_T0)]
        t0: f64,
        /// Newton stopping tolerance.
        #[arg(long, default_value_t = defaults::NEWTON_TOL)]
        tol: f64,
        /// Print the Newton iterates as comment lines.
        #[arg(long)]
        trace: bool,
    },
    /// Pressure curve as CSV: t, P(t), P'(t).
    Pressure {
        config: PathBuf,
        #[command(flatten)]
        backend: BackendArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        output: OutputFormat,
    },
    /// Lyapunov spectrum curve as CSV: alpha, t_alpha, L, N_P(t_alpha), entropy.
    Spectrum {
        config: PathBuf,
        #[command(flatten)]
        backend: BackendArgs,
        /// Grid points across the exponent interval.
        #[arg(long, default_value_t = defaults::T_GRID_STEPS)]
        steps: usize,
        /// Relative margin kept from the interval endpoints.
        #[arg(long, default_value_t = defaults::SPECTRUM_MARGIN)]
        margin: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        output: OutputFormat,
    },
    /// Certify L(-P'(t)) = N_P(t) over a t grid; exits 5 if the residual
    /// exceeds the tolerance.
    Verify {
        config: PathBuf,
        #[command(flatten)]
        backend: BackendArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Identity tolerance (default 1e-10 analytic, 1e-6 collocation).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Monte-Carlo Birkhoff averages under the equilibrium weights at t.
    Sample {
        config: PathBuf,
        /// Equilibrium parameter; the sample mean targets alpha = -P'(t).
        #[arg(long, default_value_t = defaults::SAMPLE_T)]
        t: f64,
        #[arg(long = "path-length", default_value_t = defaults::SAMPLE_PATH_LENGTH)]
        path_length: usize,
        #[arg(long, default_value_t = defaults::SAMPLE_PATHS)]
        paths: usize,
        #[arg(long, default_value_t = defaults::SAMPLE_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct BackendArgs {
    /// Pressure backend; auto resolves to analytic iff every branch is affine.
    #[arg(long, value_enum, default_value_t = BackendChoice::Auto)]
    backend: BackendChoice,
    /// Collocation nodes (>= 8).
    #[arg(long, default_value_t = defaults::NODES)]
    nodes: usize,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long = "t-min", default_value_t = defaults::T_GRID_MIN)]
    t_min: f64,
    #[arg(long = "t-max", default_value_t = defaults::T_GRID_MAX)]
    t_max: f64,
    /// Grid points (>= 2).
    #[arg(long, default_value_t = defaults::T_GRID_STEPS)]
    steps: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendChoice {
    Auto,
    Analytic,
    Collocation,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Pretty,
}

impl BackendArgs {
    /// Builds the evaluator; `analytic` on a nonlinear system is a
    /// computation-class failure (exit 4).
    fn evaluator(&self, system: CookieCutterSystem) -> Result<PressureEvaluator, Failure> {
        if self.nodes < 8 {
            return Err(Failure {
                code: EXIT_COMPUTE,
                message: "--nodes must be at least 8".into(),
            });
        }
        match self.backend {
            BackendChoice::Auto => Ok(PressureEvaluator::auto(system, self.nodes)),
            BackendChoice::Analytic => {
                PressureEvaluator::analytic(system).map_err(Failure::from_compute)
            }
            BackendChoice::Collocation => Ok(PressureEvaluator::collocation(system, self.nodes)),
        }
    }
}

/// A failed run: the message goes to stderr, the code to the shell.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn from_compute(err: Error) -> Self {
        Failure {
            code: EXIT_COMPUTE,
            message: err.to_string(),
        }
    }

    fn verification(message: String) -> Self {
        Failure {
            code: EXIT_VERIFY_FAILED,
            message,
        }
    }
}

impl From<LoadError> for Failure {
    fn from(err: LoadError) -> Self {
        let code = match err {
            LoadError::Config(_) => EXIT_PARSE,
            LoadError::Invalid(_) => EXIT_VALIDATION,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::from_compute(err)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { config } => {
            let system = load_system(&config)?;
            commands::validate(&system);
            Ok(())
        }
        Command::Dimension {
            config,
            backend,
            t0,
            tol,
            trace,
        } => {
            let evaluator = backend.evaluator(load_system(&config)?)?;
            commands::dimension(&evaluator, t0, tol, trace)
        }
        Command::Pressure {
            config,
            backend,
            grid,
            output,
        } => {
            let evaluator = backend.evaluator(load_system(&config)?)?;
            commands::pressure(&evaluator, grid.t_min, grid.t_max, grid.steps, output)
        }
        Command::Spectrum {
            config,
            backend,
            steps,
            margin,
            output,
        } => {
            let evaluator = backend.evaluator(load_system(&config)?)?;
            commands::spectrum(&evaluator, steps, margin, output)
        }
        Command::Verify {
            config,
            backend,
            grid,
            tol,
        } => {
            let evaluator = backend.evaluator(load_system(&config)?)?;
            commands::verify(&evaluator, grid.t_min, grid.t_max, grid.steps, tol)
        }
        Command::Sample {
            config,
            t,
            path_length,
            paths,
            seed,
        } => {
            let system = load_system(&config)?;
            commands::sample(&system, t, path_length, paths, seed)
        }
    }
}
