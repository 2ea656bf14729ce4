//! Run configuration. Command-line flags override the file named by
//! `HTL_CONFIG`, which overrides the built-in defaults.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const CONFIG_ENV: &str = "HTL_CONFIG";

pub const MIN_GRID: usize = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    /// Samples on the circle for coefficients and grid checks.
    pub grid_size: usize,
    /// Exclusion window around `-1`, in radians.
    pub window: f64,
    /// Number of dyadic arcs around `-1`; the stability check doubles it.
    pub arc_depth: u32,
    /// Offset range of the asymptotic checks.
    pub theta_min: f64,
    pub theta_max: f64,
    /// Finite-section orders, strictly increasing.
    pub orders: Vec<usize>,
    pub rho: f64,
    pub seed: u64,
    /// Grid for the explicit preimage round trip, which needs a finer
    /// resolution of the symbol than the other suites.
    pub preimage_grid: usize,
    pub format: Format,
    /// Output directory; reports go to stdout when absent.
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid_size: 1 << 16,
            window: 1e-5,
            arc_depth: 20,
            theta_min: 1e-6,
            theta_max: 1e-3,
            orders: vec![64, 256, 1024, 4096],
            rho: 4.0,
            seed: 20_240_601,
            preimage_grid: 1 << 18,
            format: Format::Csv,
            out: None,
        }
    }
}

/// Any subset of the fields, as read from a file or from flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub grid_size: Option<usize>,
    pub window: Option<f64>,
    pub arc_depth: Option<u32>,
    pub theta_min: Option<f64>,
    pub theta_max: Option<f64>,
    pub orders: Option<Vec<usize>>,
    pub rho: Option<f64>,
    pub seed: Option<u64>,
    pub preimage_grid: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl ConfigLayer {
    pub fn from_toml(text: &str) -> std::result::Result<ConfigLayer, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn read(path: &Path) -> Result<ConfigLayer> {
        let fail = |reason: String| CliError::ConfigFile { path: path.display().to_string(), reason };
        let text = std::fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
        ConfigLayer::from_toml(&text).map_err(|e| fail(e.to_string()))
    }

    /// The layer named by `HTL_CONFIG`, or an empty one.
    pub fn from_env() -> Result<ConfigLayer> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => ConfigLayer::read(Path::new(&p)),
            _ => Ok(ConfigLayer::default()),
        }
    }
}

impl RunConfig {
    /// Applies the layers in order, later ones winning, then validates.
    pub fn resolve(layers: &[&ConfigLayer]) -> Result<RunConfig> {
        let mut c = RunConfig::default();
        for l in layers {
            macro_rules! take {
                ($($f:ident),*) => {$( if let Some(v) = &l.$f { c.$f = v.clone(); } )*};
            }
            take!(grid_size, window, arc_depth, theta_min, theta_max, orders, rho, seed, preimage_grid, format);
            if let Some(o) = &l.out {
                c.out = Some(o.clone());
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let grid = |field: &'static str, n: usize| -> Result<()> {
            if n < MIN_GRID || !n.is_power_of_two() {
                return Err(CliError::config(field, format!("must be a power of two ≥ {MIN_GRID}, got {n}")));
            }
            Ok(())
        };
        grid("grid_size", self.grid_size)?;
        grid("preimage_grid", self.preimage_grid)?;
        if !(self.window > 0.0 && self.window < 1.0) {
            return Err(CliError::config("window", format!("must lie in (0, 1), got {}", self.window)));
        }
        if self.arc_depth == 0 {
            return Err(CliError::config("arc_depth", "must be positive"));
        }
        if !(self.theta_min > 0.0 && self.theta_max > self.theta_min) {
            return Err(CliError::config("theta_min", "need 0 < theta_min < theta_max"));
        }
        if !self.rho.is_finite() || self.rho <= 0.0 {
            return Err(CliError::config("rho", format!("must be positive, got {}", self.rho)));
        }
        if self.orders.is_empty() || self.orders[0] == 0 {
            return Err(CliError::config("orders", "need at least one positive order"));
        }
        if self.orders.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::config("orders", "must be strictly increasing"));
        }
        Ok(())
    }

    /// The finite sections need twice the largest order in coefficients of
    /// the target, hence a grid of more than four times that order.
    pub fn validate_orders_against_grid(&self) -> Result<()> {
        let top = self.orders[self.orders.len() - 1];
        if 4 * top >= self.grid_size {
            return Err(CliError::config("orders", format!("largest order {top} needs grid_size > {}", 4 * top)));
        }
        Ok(())
    }
}
