//! Command-line front end: experiment manifests, runs and report files.

pub mod args;
pub mod error;
pub mod manifest;
pub mod report;
pub mod run;

use std::process::ExitCode;

use tordeg::bounds::Outcome;
use tordeg::invariants::GroupFile;

use args::{split_vars, Cli, Command};
use error::CliError;
use manifest::{Experiment, ExperimentManifest, GroupSpec, OutputSpec};

/// Exit codes: every proved bound holds.
pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
/// A proved bound failed, which means a bug.
pub const EXIT_PROVED_VIOLATED: u8 = 2;
/// The conjectured bound fails, as expected for some Veronese rings.
pub const EXIT_COUNTEREXAMPLE: u8 = 10;

pub fn exit_code(o: Outcome) -> u8 {
    match o {
        Outcome::AllHold => EXIT_OK,
        Outcome::CounterexampleFound => EXIT_COUNTEREXAMPLE,
        Outcome::ProvedBoundViolated => EXIT_PROVED_VIOLATED,
    }
}

fn preset(text: &str) -> Result<GroupSpec, CliError> {
    Ok(match text {
        "swap" => GroupSpec::Swap,
        "symmetric" => GroupSpec::Symmetric,
        "cyclic-perm" => GroupSpec::CyclicPermutation,
        other => match other.strip_prefix("cyclic-scalar:").map(str::parse::<u32>) {
            Some(Ok(m)) if m > 0 => GroupSpec::CyclicScalar { m },
            _ => return Err(CliError::Usage(format!("unknown preset {:?}", text))),
        },
    })
}

/// The manifest a command line describes; `None` for `check`.
pub fn manifest_from_cli(cli: &Cli) -> Result<ExperimentManifest, CliError> {
    let c = &cli.common;
    let experiment = match &cli.command {
        Command::Veronese { n, m } => Experiment::Veronese { n: *n, m: *m },
        Command::Invariant {
            n,
            preset: p,
            group_file,
        } => {
            let group = match (p, group_file) {
                (_, Some(path)) => GroupSpec::Matrices {
                    group: GroupFile::parse(&std::fs::read_to_string(path)?)?,
                },
                (Some(p), None) => preset(p)?,
                (None, None) => return Err(CliError::Usage("invariant needs --preset or --group-file".into())),
            };
            Experiment::Invariant { nvars: *n, group }
        }
        Command::Koszul {
            vars,
            gens,
            random_degrees,
        } => {
            let (variables, weights) = split_vars(vars).map_err(CliError::Usage)?;
            Experiment::Koszul {
                variables,
                weights,
                generators: gens.iter().filter(|g| !g.trim().is_empty()).cloned().collect(),
                random_degrees: random_degrees.clone(),
            }
        }
        Command::Resolve { vars, ideal, residue } => {
            let (variables, weights) = split_vars(vars).map_err(CliError::Usage)?;
            Experiment::Resolve {
                variables,
                weights,
                ideal: ideal.clone(),
                residue_field: *residue,
            }
        }
        Command::Check { profile } => Experiment::Check {
            profile: profile.clone(),
        },
        Command::Run { manifest } => return ExperimentManifest::load(manifest),
    };
    let m = ExperimentManifest {
        experiment,
        characteristic: c.characteristic,
        max_index: c.max_i,
        degree_cap: c.degree_cap,
        seed: c.seed,
        output: OutputSpec {
            dir: c.out.clone(),
            format: c.format,
        },
    };
    m.validate()?;
    Ok(m)
}

/// Runs a manifest, writes its files and returns stdout and the outcome.
pub fn execute(m: &ExperimentManifest) -> Result<(String, Outcome), CliError> {
    if let Experiment::Check { profile } = &m.experiment {
        let v = run::check(profile)?;
        std::fs::create_dir_all(&m.output.dir)?;
        std::fs::write(m.output.dir.join(format!("{}.verdicts.json", m.stem())), v.to_json())?;
        return Ok((report::render_verdicts(&v, m.output.format), v.outcome));
    }
    let r = run::run(m)?;
    report::write_report(&r, &m.output.dir)?;
    Ok((report::render(&r, m.output.format), r.verdicts.outcome))
}

pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>) -> ExitCode {
    use clap::Parser;
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    match manifest_from_cli(&cli).and_then(|m| execute(&m)) {
        Ok((text, o)) => {
            print!("{}", text);
            ExitCode::from(exit_code(o))
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(EXIT_ERROR)
        }
    }
}
