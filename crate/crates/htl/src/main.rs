use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use htl::commands::{exit_code, run_suite};
use htl::config::{ConfigLayer, Format, RunConfig};
use htl::report::Suite;
use htl::Result;

/// Verification suites for the Toeplitz operator with symbol
/// a = (1 - ln(1+z)) / (1 - ln(1+1/z)) on the Hardy space H¹.
///
/// Exit status: 0 when every check passes, 2 for configuration errors,
/// 1 for numerical failures, and 3/4/5/6 when the symbol/bmolog/asym/fredholm
/// suite is the first to fail a check.
#[derive(Debug, Parser)]
#[command(name = "htl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Symbol samples, coefficients against the Taylor series, |a| = 1 and winding number.
    Symbol,
    /// Log-weighted mean oscillation of ln a⁺, ln a and Qa over dyadic and random arcs.
    Bmolog,
    /// Asymptotic estimates near z = -1 and the derivative of the singular integral.
    Asym,
    /// Finite-section probes, explicit preimages and the divergent tail.
    Fredholm,
    /// Every suite in turn.
    All,
}

/// Flags override the TOML file named by HTL_CONFIG, which overrides the defaults.
#[derive(Debug, Args)]
struct Flags {
    /// Samples on the circle (power of two, at least 1024).
    #[arg(long, global = true)]
    grid_size: Option<usize>,
    /// Exclusion window around z = -1, in radians.
    #[arg(long, global = true)]
    window: Option<f64>,
    /// Dyadic arcs around z = -1.
    #[arg(long, global = true)]
    arc_depth: Option<u32>,
    /// Smallest offset of the asymptotic checks.
    #[arg(long, global = true)]
    theta_min: Option<f64>,
    /// Largest offset of the asymptotic checks.
    #[arg(long, global = true)]
    theta_max: Option<f64>,
    /// Finite-section orders, comma separated and strictly increasing.
    #[arg(long, global = true, value_delimiter = ',')]
    orders: Option<Vec<usize>>,
    /// Ratio tolerance of the asymptotic checks.
    #[arg(long, global = true)]
    rho: Option<f64>,
    /// Seed for random arcs and random targets.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Grid for the explicit preimage round trip.
    #[arg(long, global = true)]
    preimage_grid: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output directory; reports go to stdout without it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl Flags {
    fn layer(self) -> ConfigLayer {
        ConfigLayer {
            grid_size: self.grid_size,
            window: self.window,
            arc_depth: self.arc_depth,
            theta_min: self.theta_min,
            theta_max: self.theta_max,
            orders: self.orders,
            rho: self.rho,
            seed: self.seed,
            preimage_grid: self.preimage_grid,
            format: self.format,
            out: self.out,
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let file = ConfigLayer::from_env()?;
    let config = RunConfig::resolve(&[&file, &cli.flags.layer()])?;
    let suites: Vec<Suite> = match cli.command {
        Command::Symbol => vec![Suite::Symbol],
        Command::Bmolog => vec![Suite::Bmolog],
        Command::Asym => vec![Suite::Asym],
        Command::Fredholm => vec![Suite::Fredholm],
        Command::All => Suite::ALL.to_vec(),
    };
    let mut reports = Vec::new();
    for suite in suites {
        let report = run_suite(suite, &config)?;
        report.emit(&config, config.out.as_deref())?;
        for c in report.checks.iter().filter(|c| !c.passed) {
            eprintln!("{suite}: {} failed: {}", c.name, c.detail);
        }
        reports.push(report);
    }
    Ok(exit_code(&reports))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("htl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
