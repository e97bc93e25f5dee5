use std::fmt;

use crate::error::{AlgebraError, Result};

/// Exponent vector of a monomial. Exponents are `u16`; products that would
/// exceed `u16::MAX` are reported as [`AlgebraError::ExponentOverflow`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Weighted degree: sum of exponent times weight.
    pub fn degree(&self, weights: &[u32]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w as i64).sum()
    }

    /// Weighted degree with a length check.
    pub fn checked_degree(&self, weights: &[u32]) -> Result<i64> {
        if self.0.len() != weights.len() {
            return Err(AlgebraError::ShapeError(format!(
                "monomial has {} exponents, ring has {} variables",
                self.0.len(),
                weights.len()
            )));
        }
        Ok(self.degree(weights))
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(AlgebraError::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    /// Product; panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.try_mul(other).expect("exponent overflow")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `self / gcd(self, other)`, the generator of `(self) : (other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a.saturating_sub(*b)).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Enumerates all monomials of weighted degree `d`, in no particular order.
pub(crate) fn enumerate_degree(weights: &[u32], d: i64) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: i64, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = weights[i] as i64;
        let max = left / w;
        for e in 0..=max {
            cur[i] = e as u16;
            rec(weights, i + 1, left - e * w, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let mut cur = vec![0u16; weights.len()];
    rec(weights, 0, d, &mut cur, &mut out);
    out
}

/// Minimal generators of a monomial ideal, sorted and deduplicated.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.total_degree(), m.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_degrees() {
        let m = Monomial::new(vec![2, 1]);
        assert_eq!(m.degree(&[1, 1]), 3);
        assert_eq!(Monomial::new(vec![2]).degree(&[3]), 6);
        assert!(m.checked_degree(&[1]).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let a = Monomial::new(vec![u16::MAX]);
        assert_eq!(a.try_mul(&a), Err(AlgebraError::ExponentOverflow));
    }

    #[test]
    fn minimal_generators() {
        let g = minimalize(vec![
            Monomial::new(vec![2, 0]),
            Monomial::new(vec![2, 1]),
            Monomial::new(vec![0, 3]),
            Monomial::new(vec![2, 0]),
        ]);
        assert_eq!(g, vec![Monomial::new(vec![2, 0]), Monomial::new(vec![0, 3])]);
    }
}
