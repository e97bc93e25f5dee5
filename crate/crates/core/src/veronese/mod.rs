//! Veronese subrings `V^{n,m}` of `Q^n = k[x_1..x_n]`: the rings spanned by
//! degrees divisible by `m`, which are the invariants of `x_i -> w x_i` for
//! a primitive `m`-th root of unity `w`.
//!
//! `Q^n` splits as an `S^{n,m}`-module into the pieces of degree `r mod m`,
//! and `V^{n,m}` is the piece `r = 0`. So the Betti table of `V^{n,m}` over
//! `S^{n,m}` is the part of the table of `Q^n` in degrees divisible by `m`.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::invariants::{root_of_unity, DerksenInstance};
use crate::poly::{binomial, enumerate_degree, Monomial, PolyRing, Polynomial};
use crate::resolutions::{betti_table_by_reduction, homology_dims, koszul_complex, BettiTable, CapCertificate};


#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VeroneseParams {
    pub n: usize,
    pub m: u32,
}

impl VeroneseParams {
    pub fn new(n: usize, m: u32) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(AlgebraError::ShapeError(format!(
                "need n >= 1 and m >= 1, got n = {}, m = {}",
                n, m
            )));
        }
        Ok(VeroneseParams { n, m })
    }

    pub fn ceil_n_over_m(&self) -> i64 {
        (self.n as i64 + self.m as i64 - 1) / self.m as i64
    }

    /// Number of monomials of degree `m` in `n` variables.
    pub fn generator_count(&self) -> u64 {
        binomial(self.m as u64 + self.n as u64 - 1, self.n as u64 - 1)
    }

    pub fn label(&self) -> String {
        format!("V({},{}) over S({},{})", self.n, self.m, self.n, self.m)
    }
}

/// The instance `S^{n,m} -> V^{n,m}` inside `Q^n`, without asking for a
/// root of unity: the subring and its presentation exist over any field.
pub fn veronese_presentation<F: Field>(p: VeroneseParams, field: F, with_kernel: bool) -> Result<DerksenInstance<F>> {
    let b = PolyRing::standard("x", p.n, field)?;
    let one = b.field().one();
    let f: Vec<Polynomial<F>> = b
        .monomials_of_degree(p.m as i64)
        .into_iter()
        .map(|m| Polynomial::monomial(&b, m, one.clone()))
        .collect();
    DerksenInstance::from_generators(&b, f, "u", with_kernel)
}

/// The Veronese instance as an invariant ring. The field must contain a
/// primitive `m`-th root of unity.
pub fn veronese_instance<F: Field>(p: VeroneseParams, field: F, with_kernel: bool) -> Result<DerksenInstance<F>> {
    if p.m > 1 {
        root_of_unity(&field, p.m)?;
    }
    veronese_presentation(p, field, with_kernel)
}

/// Monomials with every exponent below `m` and total degree divisible by
/// `m`, largest degree first. `V^{n,m}` is free over `k[x_1^m..x_n^m]` on them.
pub fn free_basis_over_p(p: VeroneseParams) -> Vec<Monomial> {
    let m = p.m as i64;
    let mut out = Vec::new();
    let top = p.n as i64 * (m - 1);
    let mut d = top - top % m;
    while d >= 0 {
        out.extend(
            enumerate_degree(&vec![1u32; p.n], d)
                .into_iter()
                .filter(|mono| mono.exponents().iter().all(|&e| (e as i64) < m)),
        );
        d -= m;
    }
    let max = out.iter().map(|mono| mono.total_degree() as i64).max().unwrap_or(0);
    assert_eq!(
        max,
        p.n as i64 * m - p.ceil_n_over_m() * m,
        "top degree of the free basis"
    );
    out
}

/// `reg V^{n,m}` with degrees divided by `m`: `n - ceil(n/m)`.
pub fn predicted_regularity(p: VeroneseParams) -> i64 {
    p.n as i64 - p.ceil_n_over_m()
}

/// Whether `V^{n,m}` violates `t_i(R) <= (i+1) tau` with `tau = m`, and
/// the degree to look for: `t_i = i m + (n - ceil(n/m)) m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub is_counterexample: bool,
    pub regularity: i64,
    /// `(n - ceil(n/m)) m`.
    pub excess: i64,
}

impl Criterion {
    pub fn target_degree(&self, i: usize, m: u32) -> i64 {
        i as i64 * m as i64 + self.excess
    }
}

pub fn is_counterexample(p: VeroneseParams) -> Criterion {
    let regularity = predicted_regularity(p);
    Criterion {
        is_counterexample: regularity > 1,
        regularity,
        excess: regularity * p.m as i64,
    }
}

/// The exact Betti table of `V^{n,m}` over `S^{n,m}`, read off the table of
/// `Q^n` computed by a change of rings to a finite-length module.
pub fn veronese_betti<F: Field>(p: VeroneseParams, inst: &DerksenInstance<F>) -> Result<(BettiTable, CapCertificate)> {
    let (table, cert) = betti_table_by_reduction(&inst.s, &inst.b, &[], &inst.f, &p.label(), 500)?
        .ok_or_else(|| AlgebraError::InsufficientData("no regular sequence found".into()))?;
    let m = p.m as i64;
    let mut out = BettiTable::new(p.label(), table.max_index(), table.cap(), false);
    for (i, j, c) in table.entries().filter(|e| e.1 % m == 0) {
        out.add(i, j, c);
    }
    Ok((out, cert))
}

/// A cell where `Tor_i` of `V^{n,m}` is nonzero above `(i+1) m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub index: usize,
    pub degree: i64,
    pub betti: u64,
    /// `dim H_i(f; B)_degree`, recomputed from the Koszul complex.
    pub homology_dim: usize,
}

/// Every index `i` with `t_i = i m + (n - ceil(n/m)) m > (i+1) m`, scanned
/// from the top index down. Each witness is confirmed by Koszul homology.
pub fn find_witnesses<F: Field>(
    p: VeroneseParams,
    inst: &DerksenInstance<F>,
    table: &BettiTable,
) -> Result<Vec<Witness>> {
    let crit = is_counterexample(p);
    let m = p.m as i64;
    let top = table.length().unwrap_or(0);
    let koszul = koszul_complex(&inst.f, None)?;
    let mut out = Vec::new();
    for i in (0..=top).rev() {
        let d = crit.target_degree(i, p.m);
        if d <= (i as i64 + 1) * m {
            continue;
        }
        let betti = table.get(i, d).unwrap_or(0);
        if betti == 0 {
            continue;
        }
        let homology_dim = homology_dims(&koszul, i, d);
        out.push(Witness {
            index: i,
            degree: d,
            betti,
            homology_dim,
        });
    }
    Ok(out)
}
