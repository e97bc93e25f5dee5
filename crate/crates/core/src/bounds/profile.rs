use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::ext::End;
use crate::resolutions::BettiTable;

use super::verdict::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TValue {
    pub t: End,
    /// `t` is only a lower bound: entries above a degree cap are unknown.
    pub capped: bool,
}

/// `t_0, t_1, ...` of one module, contiguous from index 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSeries {
    pub source: String,
    pub values: Vec<TValue>,
}

impl TSeries {
    pub fn from_betti(table: &BettiTable, source: impl Into<String>) -> Self {
        let values = (0..=table.max_index())
            .map(|i| TValue {
                t: table.t(i),
                capped: !table.t_is_exact(i),
            })
            .collect();
        TSeries {
            source: source.into(),
            values,
        }
    }

    pub fn exact(values: impl IntoIterator<Item = End>, source: impl Into<String>) -> Self {
        TSeries {
            source: source.into(),
            values: values.into_iter().map(|t| TValue { t, capped: false }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn t(&self, i: usize) -> Option<End> {
        self.values.get(i).map(|v| v.t)
    }

    pub fn is_exact(&self, i: usize) -> bool {
        self.values.get(i).is_some_and(|v| !v.capped)
    }

    pub fn all_exact(&self) -> bool {
        self.values.iter().all(|v| !v.capped)
    }

    pub fn side(&self, i: usize) -> Result<Side> {
        let v = self
            .values
            .get(i)
            .ok_or_else(|| AlgebraError::InsufficientData(format!("{} at index {}", self.source, i)))?;
        Ok(Side::new(v.t, v.capped, format!("{} [i = {}]", self.source, i)))
    }

    /// Values `t_0..t_upto`, and whether any of them is capped.
    pub fn prefix(&self, upto: usize) -> Result<(Vec<End>, bool)> {
        if self.values.len() <= upto {
            return Err(AlgebraError::InsufficientData(format!(
                "{} up to index {}",
                self.source, upto
            )));
        }
        let v = &self.values[..=upto];
        Ok((v.iter().map(|x| x.t).collect(), v.iter().any(|x| x.capped)))
    }

    fn validate(&self) -> Result<()> {
        if let Some(v) = self.values.first() {
            if v.t < End::Finite(0) && v.t != End::NegInf {
                return Err(AlgebraError::InsufficientData(format!(
                    "{}: t_0 = {} is negative",
                    self.source, v.t
                )));
            }
        }
        Ok(())
    }
}

/// `H_i(f; B)` as a `B`-module: `t^B_j(H_i)` for `j >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyModuleData {
    pub i: usize,
    pub over_b: TSeries,
}

/// A nonzero cell of `Tor^S_i(R, k)` found by Koszul homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCell {
    pub i: usize,
    pub degree: i64,
    pub dim: u64,
}

/// Everything the bound checkers look at for one instance `S -> R = B^G`
/// with `B` polynomial, `I = fB`, `A = S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorProfile {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<u64>,
    pub tau: End,
    /// `fin B/I`.
    pub quotient_end: End,
    /// `t^B_1(I)`.
    pub t1_b_ideal: End,
    /// `t^S_1(I)` with `I` an `S`-module through `f`.
    pub t1_s_ideal: Option<TValue>,
    /// Generator degrees `e_1 >= e_2 >= ...` of `B`.
    pub b_degrees: Vec<i64>,
    /// Degrees `d_1 >= d_2 >= ...` of the generators `f`.
    pub f_degrees: Vec<i64>,
    /// `t^S_i(R)`.
    pub s_r: TSeries,
    /// `t^S_i(B)` by a resolution.
    pub s_b: Option<TSeries>,
    /// `fin H_i(f; B)` by scanning the Koszul complex.
    pub koszul_ends: Option<TSeries>,
    /// `t^R_i(k)`.
    pub r_k: Option<TSeries>,
    /// `t^B_i(B/I)`.
    pub b_quotient: Option<TSeries>,
    pub homology: Vec<HomologyModuleData>,
    pub witnesses: Vec<WitnessCell>,
}

impl TorProfile {
    pub fn validate(&self) -> Result<()> {
        let sorted = |v: &[i64]| v.windows(2).all(|w| w[0] >= w[1]);
        if !sorted(&self.b_degrees) || !sorted(&self.f_degrees) {
            return Err(AlgebraError::InsufficientData(
                "generator degrees must be non-increasing".into(),
            ));
        }
        if !self.quotient_end.is_finite() {
            return Err(AlgebraError::NotFiniteColength);
        }
        let series = [&self.s_b, &self.koszul_ends, &self.r_k, &self.b_quotient];
        for s in series.into_iter().flatten().chain([&self.s_r]) {
            s.validate()?;
        }
        for h in &self.homology {
            h.over_b.validate()?;
        }
        Ok(())
    }

    /// `e = fin B/I`.
    pub fn e(&self) -> End {
        self.quotient_end
    }

    /// `t^A_i(k)` for `A = S`: the sum of the `i` largest `d_j`.
    pub fn s_residue_t(&self, i: usize) -> End {
        super::compose::residue_field_t(&self.f_degrees, i)
    }

    /// `t^B_i(k)`.
    pub fn b_residue_t(&self, i: usize) -> End {
        super::compose::residue_field_t(&self.b_degrees, i)
    }

    /// `d-bar_1 + ... + d-bar_i` with `d-bar_j = max(d_j, fin B/I)` and
    /// `d-bar_j = fin B/I` past the number of generators.
    pub fn d_bar_sum(&self, i: usize) -> End {
        (0..i).fold(End::Finite(0), |acc, j| {
            let d = self
                .f_degrees
                .get(j)
                .map_or(self.e(), |&d| End::Finite(d).max(self.e()));
            acc + d
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profiles serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: TorProfile = serde_json::from_str(text).map_err(|e| AlgebraError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        p.validate()?;
        Ok(p)
    }
}
