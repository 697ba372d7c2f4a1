//! Run configuration: a TOML document plus command-line overrides.

use std::path::{Path, PathBuf};

use explicit_formula_core::curve::CurveConfig;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_EPSILON: f64 = 1e-8;
pub const DEFAULT_TOLERANCE: f64 = 1e-2;
pub const DEFAULT_ORBIT_DEPTH: usize = 5;
pub const DEFAULT_ORACLE_DEPTH: usize = 2;
pub const DEFAULT_ORACLE_SWEEP: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceConfig {
    pub a: i64,
    pub q: u64,
}

/// Contents of a `--config` file. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub identity: Option<String>,
    pub epsilon: Option<f64>,
    pub n_max: Option<usize>,
    pub seed: Option<u64>,
    pub sweep: Option<usize>,
    pub zeros_file: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub k_list: Option<Vec<usize>>,
    pub tolerance: Option<f64>,
    pub curve: Option<CurveConfig>,
    pub trace: Option<TraceConfig>,
    #[serde(default)]
    pub alpha: Vec<[f64; 3]>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

/// Values given on the command line; each overrides the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub identity: Option<String>,
    pub epsilon: Option<f64>,
    pub n_max: Option<usize>,
    pub seed: Option<u64>,
    pub zeros_file: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

/// Fully resolved configuration, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub identity: String,
    pub epsilon: f64,
    pub n_max: Option<usize>,
    pub seed: u64,
    pub sweep: usize,
    pub zeros_file: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub k_list: Option<Vec<usize>>,
    pub tolerance: f64,
    pub curve: Option<CurveConfig>,
    pub trace: Option<TraceConfig>,
    pub alpha: Vec<[f64; 3]>,
}

impl RunConfig {
    pub fn resolve(command: &str, file: FileConfig, flags: Overrides) -> Result<Self, CliError> {
        let cfg = Self {
            command: command.to_string(),
            identity: flags.identity.or(file.identity).unwrap_or_else(|| "eq2".to_string()),
            epsilon: flags.epsilon.or(file.epsilon).unwrap_or(DEFAULT_EPSILON),
            n_max: flags.n_max.or(file.n_max),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            sweep: file.sweep.unwrap_or(0),
            zeros_file: flags.zeros_file.or(file.zeros_file),
            out: flags.out.or(file.out),
            k_list: file.k_list,
            tolerance: file.tolerance.unwrap_or(DEFAULT_TOLERANCE),
            curve: file.curve,
            trace: file.trace,
            alpha: file.alpha,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(CliError::Input(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(CliError::Input(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.n_max == Some(0) {
            return Err(CliError::Input("n_max must be at least 1".into()));
        }
        if self.curve.is_some() && self.trace.is_some() {
            return Err(CliError::Input("give either [curve] or [trace], not both".into()));
        }
        for (i, [a, c, h]) in self.alpha.iter().enumerate() {
            if !(a.is_finite() && c.is_finite() && h.is_finite() && *h > 0.0) {
                return Err(CliError::Input(format!("alpha entry {i}: need finite (A, c, h) with h > 0")));
            }
        }
        Ok(())
    }
}
