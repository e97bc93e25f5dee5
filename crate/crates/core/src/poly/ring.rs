use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;

use super::monomial::enumerate_degree;
use super::{Monomial, MonomialOrder, Polynomial};

/// A weighted polynomial ring over a field: variable names, one positive
/// degree per variable, and the coefficient field.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    names: Vec<String>,
    weights: Vec<u32>,
    field: F,
}

/// Rings are shared by all their elements.
pub type Ring<F> = Arc<PolyRing<F>>;

impl<F: Field> PolyRing<F> {
    pub fn new(names: Vec<String>, weights: Vec<u32>, field: F) -> Result<Ring<F>> {
        if names.is_empty() {
            return Err(AlgebraError::ShapeError("a ring needs at least one variable".into()));
        }
        if names.len() != weights.len() {
            return Err(AlgebraError::ShapeError(format!(
                "{} variable names but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(AlgebraError::GradingError("weights must be positive".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(AlgebraError::ShapeError(format!("invalid variable name {:?}", n)));
            }
            if names[..i].contains(n) {
                return Err(AlgebraError::ShapeError(format!("duplicate variable name {:?}", n)));
            }
        }
        Ok(Arc::new(PolyRing { names, weights, field }))
    }

    /// Standard graded ring with variables named `prefix1, prefix2, ...`.
    pub fn standard(prefix: &str, n: usize, field: F) -> Result<Ring<F>> {
        Self::weighted(prefix, vec![1; n], field)
    }

    pub fn weighted(prefix: &str, weights: Vec<u32>, field: F) -> Result<Ring<F>> {
        let names = (1..=weights.len()).map(|i| format!("{}{}", prefix, i)).collect();
        Self::new(names, weights, field)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        m.degree(&self.weights)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial<F> {
        Polynomial::monomial(self, Monomial::var(self.nvars(), i), self.field.one())
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial<F>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    /// Monomials of weighted degree `d`, largest first in weighted grevlex.
    pub fn monomials_of_degree(&self, d: i64) -> Vec<Monomial> {
        let mut v = enumerate_degree(&self.weights, d);
        v.sort_by(|a, b| MonomialOrder::GRevLex.cmp(&self.weights, b, a));
        v
    }

    /// Header line in the ring text format.
    pub fn header(&self) -> String {
        let wts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        format!(
            "ring {}; wt {}; char {}",
            self.names.join(","),
            wts.join(","),
            self.field.characteristic()
        )
    }
}

impl<F: Field> fmt::Debug for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.header())
    }
}

/// `C(n, k)` in u64, saturating.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
