use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::ext::End;

/// Graded Betti numbers `beta_{i,j} = dim Tor_i(M, k)_j`.
///
/// Entries in degrees `j <= cap` are exact (absent means zero). When the
/// table is `capped`, entries above `cap` are unknown; otherwise they are
/// proved to vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    module: String,
    entries: BTreeMap<(usize, i64), u64>,
    max_index: usize,
    cap: i64,
    capped: bool,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    module: String,
    entries: Vec<(usize, i64, u64)>,
    capped: bool,
    cap: i64,
    max_index: usize,
}

impl BettiTable {
    pub fn new(module: impl Into<String>, max_index: usize, cap: i64, capped: bool) -> Self {
        BettiTable {
            module: module.into(),
            entries: BTreeMap::new(),
            max_index,
            cap,
            capped,
        }
    }

    /// Adds `count` to `beta_{i,j}`.
    pub fn add(&mut self, i: usize, j: i64, count: u64) {
        if count > 0 {
            *self.entries.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn module(&self) -> &str {
        &self.module
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn is_capped(&self) -> bool {
        self.capped
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    /// `beta_{i,j}`, or `None` when it is unknown.
    pub fn get(&self, i: usize, j: i64) -> Option<u64> {
        if i > self.max_index || (self.capped && j > self.cap) {
            return None;
        }
        Some(self.entries.get(&(i, j)).copied().unwrap_or(0))
    }

    /// `t_i`, the top degree of `Tor_i`. For a capped table this is the top
    /// degree found up to the cap, hence a lower bound.
    pub fn t(&self, i: usize) -> End {
        End::max_of(
            self.entries
                .range((i, i64::MIN)..=(i, i64::MAX))
                .map(|(&(_, j), _)| End::Finite(j)),
        )
    }

    /// Whether `t(i)` is the true value.
    pub fn t_is_exact(&self, i: usize) -> bool {
        i <= self.max_index && !self.capped
    }

    /// Length of the resolution: the largest populated index.
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(BettiJson {
            module: self.module.clone(),
            entries: self.entries().collect(),
            capped: self.capped,
            cap: self.cap,
            max_index: self.max_index,
        })
        .expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: BettiJson =
            serde_json::from_value(v.clone()).map_err(|e| AlgebraError::InsufficientData(e.to_string()))?;
        let mut t = BettiTable::new(j.module, j.max_index, j.cap, j.capped);
        for (i, d, c) in j.entries {
            t.add(i, d, c);
        }
        Ok(t)
    }

    /// Betti diagram as CSV: one row per `j - i`, one column per `i`.
    /// Unknown entries are written as `?`.
    pub fn to_csv(&self) -> String {
        let rows = self.diagram();
        let mut out = String::from("j-i");
        for i in 0..=self.last_column() {
            out.push_str(&format!(",{}", i));
        }
        out.push('\n');
        for (r, cells) in rows {
            out.push_str(&r.to_string());
            for c in cells {
                out.push(',');
                out.push_str(&c);
            }
            out.push('\n');
        }
        out
    }

    /// Columns shown in diagrams: all computed ones for a capped table,
    /// otherwise up to the length.
    fn last_column(&self) -> usize {
        if self.capped {
            self.max_index
        } else {
            self.length().unwrap_or(0)
        }
    }

    fn diagram(&self) -> Vec<(i64, Vec<String>)> {
        let lo = self.entries.keys().map(|&(i, j)| j - i as i64).min();
        let hi = self.entries.keys().map(|&(i, j)| j - i as i64).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Vec::new();
        };
        (lo..=hi)
            .map(|r| {
                let cells = (0..=self.last_column())
                    .map(|i| match self.get(i, r + i as i64) {
                        None => "?".to_string(),
                        Some(0) => "0".to_string(),
                        Some(c) => c.to_string(),
                    })
                    .collect();
                (r, cells)
            })
            .collect()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}{}",
            self.module,
            if self.capped {
                format!(" (capped at degree {})", self.cap)
            } else {
                String::new()
            }
        )?;
        write!(f, "{:>6}", "")?;
        for i in 0..=self.last_column() {
            write!(f, "{:>6}", i)?;
        }
        writeln!(f)?;
        for (r, cells) in self.diagram() {
            write!(f, "{:>5}:", r)?;
            for c in cells {
                write!(f, "{:>6}", if c == "0" { "." } else { c.as_str() })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `max_i (t_i / scale - i)`. Every degree in the table must be divisible by `scale`.
pub fn regularity_from_betti(b: &BettiTable, scale: i64) -> Result<End> {
    if scale <= 0 {
        return Err(AlgebraError::ScaleError { degree: 0, scale });
    }
    for (_, j, _) in b.entries() {
        if j % scale != 0 {
            return Err(AlgebraError::ScaleError { degree: j, scale });
        }
    }
    Ok(End::max_of(
        b.entries().map(|(i, j, _)| End::Finite(j / scale - i as i64)),
    ))
}

/// How far a homology end is trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndStatus {
    /// The cap is a proved bound on the end, so the scan found the true end.
    Verified,
    /// Only degrees up to the cap were scanned.
    Capped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEnd {
    pub index: usize,
    pub end: End,
    pub status: EndStatus,
    pub cap: i64,
}

/// Dimensions `dim H_i(C)_d` for scanned cells, and per-index ends.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HomologyReport {
    module: String,
    dims: BTreeMap<(usize, i64), u64>,
    ends: BTreeMap<usize, HomologyEnd>,
}

#[derive(Serialize, Deserialize)]
struct HomologyJson {
    module: String,
    entries: Vec<(usize, i64, u64)>,
    capped: bool,
    cap: i64,
    ends: Vec<HomologyEnd>,
}

impl HomologyReport {
    pub fn new(module: impl Into<String>) -> Self {
        HomologyReport {
            module: module.into(),
            ..Default::default()
        }
    }

    /// Records a scanned cell, zero or not.
    pub fn record(&mut self, i: usize, d: i64, dim: u64) {
        self.dims.insert((i, d), dim);
    }

    pub fn set_end(&mut self, end: HomologyEnd) {
        self.ends.insert(end.index, end);
    }

    /// `None` when the cell was not scanned.
    pub fn dim(&self, i: usize, d: i64) -> Option<u64> {
        self.dims.get(&(i, d)).copied()
    }

    pub fn end(&self, i: usize) -> Option<&HomologyEnd> {
        self.ends.get(&i)
    }

    pub fn ends(&self) -> impl Iterator<Item = &HomologyEnd> {
        self.ends.values()
    }

    /// Nonzero cells.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.dims.iter().filter(|(_, &c)| c > 0).map(|(&(i, d), &c)| (i, d, c))
    }

    pub fn is_capped(&self) -> bool {
        self.ends.values().any(|e| e.status == EndStatus::Capped)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HomologyJson {
            module: self.module.clone(),
            entries: self.nonzero().collect(),
            capped: self.is_capped(),
            cap: self.ends.values().map(|e| e.cap).max().unwrap_or(0),
            ends: self.ends.values().cloned().collect(),
        })
        .expect("plain data")
    }
}
