//! JSON description files for cookie-cutter systems.
//!
//! ```json
//! { "branches": [ {"kind": "affine",    "interval": [0.0, 0.3333333333333333]},
//!                 {"kind": "quadratic", "interval": [0.75, 1.0], "epsilon": 0.3} ] }
//! ```
//!
//! Unknown keys are rejected; numbers are parsed as 64-bit floats. An
//! `epsilon` is required on quadratic branches and forbidden on affine ones.

use crate::error::Error;
use crate::system::{BranchSpec, CookieCutterSystem};
use serde::Deserialize;
use std::path::Path;
use thiserror::Error as ThisError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub branches: Vec<BranchConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchConfig {
    pub kind: BranchKind,
    pub interval: [f64; 2],
    #[serde(default)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchKind {
    Affine,
    Quadratic,
}

/// Failures while reading or decoding a description file (the CLI maps these
/// to the parse-error exit code, distinct from validation failures).
#[derive(Debug, ThisError)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid system description: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid system description: {0}")]
    Schema(String),
}

/// Either the file could not be decoded, or the described system violates a
/// cookie-cutter invariant.
#[derive(Debug, ThisError)]
pub enum LoadError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl SystemConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn branch_specs(&self) -> Result<Vec<BranchSpec>, ConfigError> {
        self.branches
            .iter()
            .map(|branch| {
                let interval = (branch.interval[0], branch.interval[1]);
                match (branch.kind, branch.epsilon) {
                    (BranchKind::Affine, None) => Ok(BranchSpec::Affine { interval }),
                    (BranchKind::Affine, Some(_)) => Err(ConfigError::Schema(
                        "\"epsilon\" is not a key of affine branches".into(),
                    )),
                    (BranchKind::Quadratic, Some(epsilon)) => {
                        Ok(BranchSpec::QuadraticPerturbed { interval, epsilon })
                    }
                    (BranchKind::Quadratic, None) => Err(ConfigError::Schema(
                        "quadratic branches require an \"epsilon\" key".into(),
                    )),
                }
            })
            .collect()
    }
}

/// Reads, decodes, and validates a system description file.
pub fn load_system(path: &Path) -> Result<CookieCutterSystem, LoadError> {
    let config = SystemConfig::from_path(path)?;
    let specs = config.branch_specs()?;
    Ok(CookieCutterSystem::new(&specs)?)
}
