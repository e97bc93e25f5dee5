use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::manifest::{Format, DEFAULT_CHAR};

#[derive(Debug, Parser)]
#[command(name = "tordeg", version, about = "Degree bounds for syzygies of invariant rings")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Field characteristic: a prime, or 0 for the rationals.
    #[arg(long = "char", global = true, env = "TORDEG_CHAR", default_value_t = DEFAULT_CHAR)]
    pub characteristic: u64,
    /// Largest homological index for residue field resolutions.
    #[arg(long = "max-i", global = true, default_value_t = 4)]
    pub max_i: usize,
    /// Degree bound for computations without proved caps.
    #[arg(long = "degree-cap", global = true)]
    pub degree_cap: Option<i64>,
    #[arg(long, global = true, default_value = "results")]
    pub out: PathBuf,
    /// What to print on stdout; all formats are written to --out.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for random generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The Veronese subring V(n,m) over the polynomial ring on its generators.
    Veronese {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: u32,
    },
    /// The invariant ring of a finite group acting on k[x_1..x_n].
    Invariant {
        /// Number of variables.
        #[arg(short, default_value_t = 2)]
        n: usize,
        /// swap, symmetric, cyclic-perm or cyclic-scalar:M.
        #[arg(long, conflicts_with = "group_file")]
        preset: Option<String>,
        /// JSON file with integer generator matrices.
        #[arg(long)]
        group_file: Option<PathBuf>,
    },
    /// Forms f in a weighted polynomial ring B, checked as a Koszul complex.
    Koszul {
        /// Variables as name:weight, e.g. x:1,y:1.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Generators, separated by ';'.
        #[arg(long, value_delimiter = ';')]
        gens: Vec<String>,
        /// Degrees of extra random forms, drawn from --seed.
        #[arg(long, value_delimiter = ',')]
        random_degrees: Vec<u32>,
    },
    /// Minimal free resolution of S/I, or of k over S/I.
    Resolve {
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long, value_delimiter = ';', required = true)]
        ideal: Vec<String>,
        /// Resolve the residue field over S/I.
        #[arg(long)]
        residue: bool,
    },
    /// Re-run the bound checks on a stored profile.
    Check { profile: PathBuf },
    /// Run an experiment manifest.
    Run { manifest: PathBuf },
}

/// Splits `name:weight` (weight defaults to 1).
pub fn split_vars(vars: &[String]) -> Result<(Vec<String>, Vec<u32>), String> {
    let mut names = Vec::new();
    let mut weights = Vec::new();
    for v in vars {
        let (name, w) = match v.split_once(':') {
            Some((name, w)) => (name, w.parse::<u32>().map_err(|_| format!("bad weight in {:?}", v))?),
            None => (v.as_str(), 1),
        };
        names.push(name.trim().to_string());
        weights.push(w);
    }
    Ok((names, weights))
}
