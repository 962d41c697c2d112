//! `chiralbag`: coefficient tables and verification reports.
//!
//! Exit status: 0 when every residual beats its tolerance, 1 on a tolerance
//! or numerical failure (the report is still written when one exists), 2 on
//! configuration errors.

mod commands;
mod grid;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chiralbag::ball_spectrum::BallFitConfig;
use clap::{Args, Parser, Subcommand};

use commands::{BallTolerances, CylinderGrid, Outcome};
use grid::{parse_list, parse_m_list, parse_theta_grid};
use report::Format;

/// Whole-list flag values; clap would otherwise read `Vec<T>` as repeats.
#[derive(Debug, Clone)]
struct Dims(Vec<u32>);
#[derive(Debug, Clone)]
struct Values(Vec<f64>);

fn dims(s: &str) -> Result<Dims, String> {
    parse_m_list(s).map(Dims)
}

fn thetas(s: &str) -> Result<Values, String> {
    parse_theta_grid(s).map(Values)
}

fn values(s: &str) -> Result<Values, String> {
    parse_list(s).map(Values)
}

#[derive(Parser, Debug)]
#[command(name = "chiralbag", version, about = "Heat-kernel and eta-invariant coefficients under chiral bag boundary conditions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Report format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Grid {
    /// Even dimensions in [2, 12]: a list `2,4,6` or a range `2:12`.
    #[arg(long, value_parser = dims, allow_hyphen_values = true)]
    m: Option<Dims>,
    /// θ values: `start:stop:step` or a list `0,0.5,1`.
    #[arg(long, value_parser = thetas, allow_hyphen_values = true)]
    theta: Option<Values>,
}

impl Grid {
    fn resolve(&self, m: &str, theta: &str) -> (Vec<u32>, Vec<f64>) {
        (
            self.m
                .clone()
                .map_or_else(|| parse_m_list(m).expect("valid default"), |d| d.0),
            self.theta
                .clone()
                .map_or_else(|| parse_theta_grid(theta).expect("valid default"), |v| v.0),
        )
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// c₁..c₇, d₁..d₄ (cylinder and ball forms), ball a₁, a₂ and a₁^η per (θ, m).
    Coeffs {
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// The coefficient grid with the stable column set, one row per (θ, m).
    Table {
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// Ball roots, heat trace and fit of a₁, a₂ against their closed forms.
    VerifyBall {
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        cutoffs: Cutoffs,
        /// Relative tolerance on a₁.
        #[arg(long, default_value_t = 0.01)]
        a1_rel_tol: f64,
        /// Absolute tolerance on a₂.
        #[arg(long, default_value_t = 0.01)]
        a2_abs_tol: f64,
        /// Bound on |a₁| in units of its fit uncertainty when a₁ vanishes.
        #[arg(long, default_value_t = 3.0)]
        a1_null_factor: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Per-mode half-line x-integrals and the t-integral closed form.
    VerifyCylinder {
        /// Even dimensions in [2, 12].
        #[arg(long, value_parser = dims, default_value = "2")]
        m: Dims,
        /// Tangential eigenvalues ω.
        #[arg(long, value_parser = values, allow_hyphen_values = true, default_value = "0.5,1.3,2.0")]
        omega: Values,
        /// θ values: `start:stop:step` or a list.
        #[arg(long, value_parser = thetas, allow_hyphen_values = true, default_value = "0,0.4,0.7,1.2")]
        theta: Values,
        /// Heat times t > 0.
        #[arg(long, value_parser = values, default_value = "0.1,0.25")]
        t: Values,
        /// Exponents s > −1 of the t-integral.
        #[arg(long, value_parser = values, allow_hyphen_values = true, default_value = "1.5,2.5")]
        s: Values,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// The closed-form identity suite over a θ × m grid.
    VerifyIdentities {
        #[command(flatten)]
        grid: Grid,
        #[arg(long, default_value_t = 1e-11)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args, Debug)]
struct Cutoffs {
    /// Largest eigenvalue kept.
    #[arg(long, env = "CHIRALBAG_MU_MAX", default_value_t = 100.0)]
    mu_max: f64,
    /// Cap on the angular momentum; by default n runs until no root fits
    /// below mu_max.
    #[arg(long, env = "CHIRALBAG_N_MAX")]
    n_max: Option<u32>,
    #[arg(long, env = "CHIRALBAG_T_MIN", default_value_t = 0.02)]
    t_min: f64,
    #[arg(long, env = "CHIRALBAG_T_MAX", default_value_t = 0.3)]
    t_max: f64,
    /// Number of geometric t samples.
    #[arg(long, env = "CHIRALBAG_N_SAMPLES", default_value_t = 20)]
    n_samples: usize,
    /// Highest fitted coefficient index.
    #[arg(long, env = "CHIRALBAG_K", default_value_t = 5)]
    k: usize,
}

impl Cutoffs {
    fn config(&self) -> Result<BallFitConfig, String> {
        if !(self.mu_max > 0.0 && self.mu_max.is_finite()) {
            return Err(format!("--mu-max must be positive, got {}", self.mu_max));
        }
        if !(self.t_min > 0.0 && self.t_min < self.t_max && self.t_max <= 0.5) {
            return Err(format!(
                "need 0 < --t-min < --t-max ≤ 0.5, got [{}, {}]",
                self.t_min, self.t_max
            ));
        }
        if self.k < 2 || self.n_samples < self.k + 3 {
            return Err(format!(
                "need --k ≥ 2 and --n-samples ≥ k + 3, got k = {}, n-samples = {}",
                self.k, self.n_samples
            ));
        }
        Ok(BallFitConfig {
            mu_max: self.mu_max,
            n_max: self.n_max,
            t_min: self.t_min,
            t_max: self.t_max,
            n_samples: self.n_samples,
            k: self.k,
        })
    }
}

fn positive_tol(name: &str, v: f64) -> Result<f64, String> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("--{name} must be positive, got {v}"))
    }
}

enum Failure {
    Config(String),
    Numeric(chiralbag::Error),
}

impl From<chiralbag::Error> for Failure {
    fn from(e: chiralbag::Error) -> Self {
        Failure::Numeric(e)
    }
}

fn run(command: &Command) -> Result<(Outcome, &Output, &'static str), Failure> {
    let cfg = Failure::Config;
    Ok(match command {
        Command::Coeffs { grid, output } => {
            let (ms, thetas) = grid.resolve("2", "0");
            (commands::coefficients(&thetas, &ms, true)?, output, "coeffs")
        }
        Command::Table { grid, output } => {
            let (ms, thetas) = grid.resolve("2:12", "-2:2:0.1");
            (commands::coefficients(&thetas, &ms, false)?, output, "table")
        }
        Command::VerifyBall {
            grid,
            cutoffs,
            a1_rel_tol,
            a2_abs_tol,
            a1_null_factor,
            output,
        } => {
            let (ms, thetas) = grid.resolve("2", "0,0.5,1");
            let tol = BallTolerances {
                a1_rel: positive_tol("a1-rel-tol", *a1_rel_tol).map_err(cfg)?,
                a2_abs: positive_tol("a2-abs-tol", *a2_abs_tol).map_err(cfg)?,
                a1_null_factor: positive_tol("a1-null-factor", *a1_null_factor).map_err(cfg)?,
            };
            let config = cutoffs.config().map_err(cfg)?;
            (commands::verify_ball(&thetas, &ms, &config, &tol)?, output, "verify-ball")
        }
        Command::VerifyCylinder {
            m,
            omega,
            theta,
            t,
            s,
            tol,
            output,
        } => {
            let tol = positive_tol("tol", *tol).map_err(cfg)?;
            let (t, s, omega) = (&t.0, &s.0, &omega.0);
            if let Some(bad) = t.iter().find(|&&t| t <= 0.0) {
                return Err(cfg(format!("--t values must be positive, got {bad}")));
            }
            if let Some(bad) = s.iter().find(|&&s| s <= -1.0) {
                return Err(cfg(format!("--s values must exceed −1, got {bad}")));
            }
            if omega.contains(&0.0) {
                return Err(cfg("--omega values must be non-zero".into()));
            }
            let grid = CylinderGrid {
                ms: m.0.clone(),
                omegas: omega.clone(),
                thetas: theta.0.clone(),
                ts: t.clone(),
                ss: s.clone(),
            };
            (commands::verify_cylinder(&grid, tol)?, output, "verify-cylinder")
        }
        Command::VerifyIdentities { grid, tol, output } => {
            let (ms, thetas) = grid.resolve("2:12", "-2:2:0.1");
            let tol = positive_tol("tol", *tol).map_err(cfg)?;
            (commands::verify_identities(&thetas, &ms, tol)?, output, "verify-identities")
        }
    })
}

fn write_report(outcome: &Outcome, output: &Output) -> io::Result<()> {
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            outcome.table.write(output.format, &mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            outcome.table.write(output.format, &mut lock)?;
            lock.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((outcome, output, name)) => {
            if let Err(e) = write_report(&outcome, output) {
                eprintln!("chiralbag: cannot write report: {e}");
                return ExitCode::from(2);
            }
            let verdict = if outcome.pass { "PASS" } else { "FAIL" };
            eprintln!("{name}: {}: {verdict}", outcome.summary);
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Config(msg)) => {
            eprintln!("chiralbag: configuration error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("chiralbag: {e}");
            ExitCode::from(1)
        }
    }
}
