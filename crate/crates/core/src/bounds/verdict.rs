use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ext::End;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    /// Both sides exact (or the right side a lower bound) and `lhs <= rhs`.
    Holds,
    /// A proved bound fails on the data: a bug somewhere.
    Violated,
    /// The conjectured bound fails.
    Counterexample,
    /// The left side is only known up to a degree cap and stays below.
    NoViolationUpToCap,
    /// The right side is only known up to a cap and the left side exceeds it.
    Inconclusive,
    /// The hypothesis of the statement fails on this instance.
    NotApplicable,
}

/// Whether a bound is a theorem or a conjecture; only the latter can
/// produce counterexamples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Proved,
    Conjectured,
}

/// One side of an inequality with where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub value: End,
    /// The value is a lower bound for the true one.
    pub capped: bool,
    pub source: String,
}

impl Side {
    pub fn exact(value: End, source: impl Into<String>) -> Self {
        Side {
            value,
            capped: false,
            source: source.into(),
        }
    }

    pub fn new(value: End, capped: bool, source: impl Into<String>) -> Self {
        Side {
            value,
            capped,
            source: source.into(),
        }
    }
}

/// The statement being checked.
#[derive(Debug, Clone)]
pub struct Head {
    pub bound: String,
    pub instance: String,
    pub status: Status,
}

impl Head {
    pub fn proved(bound: &str, instance: &str) -> Self {
        Head {
            bound: bound.to_string(),
            instance: instance.to_string(),
            status: Status::Proved,
        }
    }

    pub fn conjectured(bound: &str, instance: &str) -> Self {
        Head {
            status: Status::Conjectured,
            ..Head::proved(bound, instance)
        }
    }
}

/// Whether the hypothesis holds, with notes recorded in the verdict.
#[derive(Debug, Clone, Default)]
pub struct Gate {
    pub applicable: bool,
    pub notes: BTreeMap<String, Value>,
}

impl Gate {
    pub fn always() -> Self {
        Gate {
            applicable: true,
            notes: BTreeMap::new(),
        }
    }

    pub fn when(applicable: bool, name: &str, value: Value) -> Self {
        Gate {
            applicable,
            notes: BTreeMap::from([(name.to_string(), value)]),
        }
    }

    pub fn note(mut self, name: &str, value: Value) -> Self {
        self.notes.insert(name.to_string(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub lhs: String,
    pub rhs: String,
    pub rhs_capped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub bound: String,
    pub instance: String,
    pub i: i64,
    pub lhs: End,
    pub rhs: End,
    /// `lhs <= rhs` as numbers.
    pub holds: bool,
    /// The left side is a lower bound only.
    pub capped: bool,
    pub kind: VerdictKind,
    pub hypothesis: BTreeMap<String, Value>,
    pub provenance: Provenance,
}

impl BoundVerdict {
    /// Compares `lhs <= rhs`. Capped values are lower bounds for the true
    /// ones, so a capped left side above an exact right side still proves a
    /// violation, while a capped right side can only confirm.
    pub fn compare(head: &Head, i: i64, lhs: Side, rhs: Side, gate: Gate) -> Self {
        let Gate { applicable, notes } = gate;
        let holds = lhs.value <= rhs.value;
        let kind = if !applicable {
            VerdictKind::NotApplicable
        } else if holds {
            if lhs.capped {
                VerdictKind::NoViolationUpToCap
            } else {
                VerdictKind::Holds
            }
        } else if rhs.capped {
            VerdictKind::Inconclusive
        } else {
            match head.status {
                Status::Proved => VerdictKind::Violated,
                Status::Conjectured => VerdictKind::Counterexample,
            }
        };
        BoundVerdict {
            bound: head.bound.clone(),
            instance: head.instance.clone(),
            i,
            lhs: lhs.value,
            rhs: rhs.value,
            holds,
            capped: lhs.capped,
            kind,
            hypothesis: notes,
            provenance: Provenance {
                lhs: lhs.source,
                rhs: rhs.source,
                rhs_capped: rhs.capped,
            },
        }
    }
}

/// Overall result of a verdict list, worst first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    ProvedBoundViolated,
    CounterexampleFound,
    AllHold,
}

pub fn outcome(verdicts: &[BoundVerdict]) -> Outcome {
    if verdicts.iter().any(|v| v.kind == VerdictKind::Violated) {
        Outcome::ProvedBoundViolated
    } else if verdicts.iter().any(|v| v.kind == VerdictKind::Counterexample) {
        Outcome::CounterexampleFound
    } else {
        Outcome::AllHold
    }
}

fn kind_name(k: VerdictKind) -> &'static str {
    match k {
        VerdictKind::Holds => "holds",
        VerdictKind::Violated => "VIOLATED",
        VerdictKind::Counterexample => "COUNTEREXAMPLE",
        VerdictKind::NoViolationUpToCap => "no-violation-up-to-cap",
        VerdictKind::Inconclusive => "inconclusive",
        VerdictKind::NotApplicable => "not-applicable",
    }
}

/// A fixed-width table for terminals.
pub fn summary_table(verdicts: &[BoundVerdict]) -> String {
    let width = verdicts.iter().map(|v| v.bound.len()).max().unwrap_or(5).max(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>3}  {:>6}  {:>6}  kind",
        "bound",
        "i",
        "lhs",
        "rhs",
        width = width
    );
    for v in verdicts {
        let _ = writeln!(
            out,
            "{:<width$}  {:>3}  {:>6}  {:>6}  {}",
            v.bound,
            v.i,
            v.lhs.to_string(),
            v.rhs.to_string(),
            kind_name(v.kind),
            width = width
        );
    }
    out
}

/// Counts of each kind, in a fixed order.
pub fn kind_counts(verdicts: &[BoundVerdict]) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for v in verdicts {
        *out.entry(kind_name(v.kind).to_lowercase()).or_insert(0) += 1;
    }
    out
}
