use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tordeg::invariants::GroupFile;
use tordeg::PrimeField;

use crate::error::CliError;

/// Default characteristic, overridable with `TORDEG_CHAR`.
pub const DEFAULT_CHAR: u64 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Named groups acting on `k[x_1..x_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case")]
pub enum GroupSpec {
    /// Exchanges `x_1` and `x_2`.
    Swap,
    /// All permutations of the variables.
    Symmetric,
    /// Cyclic shift of the variables.
    CyclicPermutation,
    /// `x_i -> w x_i` for a primitive `m`-th root of unity `w`.
    CyclicScalar { m: u32 },
    /// Explicit integer generator matrices.
    Matrices { group: GroupFile },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Experiment {
    Veronese {
        n: usize,
        m: u32,
    },
    Invariant {
        nvars: usize,
        group: GroupSpec,
    },
    Koszul {
        variables: Vec<String>,
        weights: Vec<u32>,
        /// Explicit generators; random forms of `random_degrees` are added.
        generators: Vec<String>,
        #[serde(default)]
        random_degrees: Vec<u32>,
    },
    Resolve {
        variables: Vec<String>,
        weights: Vec<u32>,
        ideal: Vec<String>,
        /// Resolve the residue field over the quotient instead.
        #[serde(default)]
        residue_field: bool,
    },
    Check {
        profile: PathBuf,
    },
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Veronese { .. } => "veronese",
            Experiment::Invariant { .. } => "invariant",
            Experiment::Koszul { .. } => "koszul",
            Experiment::Resolve { .. } => "resolve",
            Experiment::Check { .. } => "check",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputSpec {
    pub dir: PathBuf,
    pub format: Format,
}

/// Everything that determines a run. Two runs of equal manifests write
/// byte-identical files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentManifest {
    pub experiment: Experiment,
    /// A prime, or 0 for the rationals.
    pub characteristic: u64,
    /// Largest homological index for residue field resolutions.
    pub max_index: usize,
    /// Degree bound for computations without proved caps.
    pub degree_cap: Option<i64>,
    pub seed: u64,
    pub output: OutputSpec,
}

impl ExperimentManifest {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.characteristic != 0 {
            PrimeField::new(self.characteristic)?;
        }
        if self.max_index == 0 {
            return Err(CliError::Usage("--max-i must be positive".into()));
        }
        if let Some(c) = self.degree_cap {
            if c <= 0 {
                return Err(CliError::Usage("--degree-cap must be positive".into()));
            }
        }
        match &self.experiment {
            Experiment::Veronese { n, m } if *n == 0 || *m == 0 => {
                Err(CliError::Usage("veronese needs n >= 1 and m >= 1".into()))
            }
            Experiment::Invariant { nvars: 0, .. } => {
                Err(CliError::Usage("invariant needs at least one variable".into()))
            }
            Experiment::Koszul {
                variables,
                weights,
                generators,
                random_degrees,
            } => {
                check_ring(variables, weights)?;
                if generators.is_empty() && random_degrees.is_empty() {
                    return Err(CliError::Usage("koszul needs generators or random degrees".into()));
                }
                Ok(())
            }
            Experiment::Resolve { variables, weights, .. } => check_ring(variables, weights),
            _ => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifests serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let m: ExperimentManifest = serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        m.validate()?;
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// SHA-256 of the manifest without its output section, in hex. Output
    /// files are named after its first 16 digits.
    pub fn content_hash(&self) -> String {
        let identity = serde_json::json!({
            "experiment": self.experiment,
            "characteristic": self.characteristic,
            "max_index": self.max_index,
            "degree_cap": self.degree_cap,
            "seed": self.seed,
        });
        hex::encode(Sha256::digest(identity.to_string().as_bytes()))
    }

    pub fn stem(&self) -> String {
        format!("{}-{}", self.experiment.name(), &self.content_hash()[..16])
    }
}

fn check_ring(variables: &[String], weights: &[u32]) -> Result<(), CliError> {
    if variables.is_empty() {
        return Err(CliError::Usage("the ring needs at least one variable".into()));
    }
    if weights.len() != variables.len() {
        return Err(CliError::Usage(format!(
            "{} weights for {} variables",
            weights.len(),
            variables.len()
        )));
    }
    Ok(())
}
