use std::sync::OnceLock;

use crate::error::{AlgebraError, Result};
use crate::ext::End;
use crate::field::Field;
use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, Ring};

use super::vector::{self, certify, normalize, reduce_with, Lead, ModOrder, Term};

pub(crate) fn poly_to_terms<F: Field>(order: &ModOrder, p: &Polynomial<F>) -> Vec<Term<F::Elem>> {
    let v = p.terms().iter().map(|(m, c)| (m.clone(), 0, c.clone())).collect();
    normalize(p.field(), order, v)
}

pub(crate) fn terms_to_poly<F: Field>(ring: &Ring<F>, v: Vec<Term<F::Elem>>) -> Polynomial<F> {
    Polynomial::from_terms(ring, v.into_iter().map(|(m, _, c)| (m, c)))
}

/// A Groebner basis of an ideal: monic, reduced, sorted by leading monomial.
#[derive(Clone)]
pub struct GroebnerBasis<F: Field> {
    ring: Ring<F>,
    order: MonomialOrder,
    elements: Vec<Polynomial<F>>,
    leads: Vec<Monomial>,
    mod_order: ModOrder,
    terms: Vec<Vec<Term<F::Elem>>>,
    lead_data: Vec<Lead>,
}

impl<F: Field> std::fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.order)
            .field("elements", &self.elements)
            .finish()
    }
}

impl<F: Field> GroebnerBasis<F> {
    fn from_terms(ring: &Ring<F>, order: MonomialOrder, mod_order: ModOrder, terms: Vec<Vec<Term<F::Elem>>>) -> Self {
        let leads = terms.iter().map(|t| t[0].0.clone()).collect();
        let lead_data = terms.iter().map(|t| Lead::of(t)).collect();
        let elements = terms.iter().map(|t| terms_to_poly(ring, t.clone())).collect();
        GroebnerBasis {
            ring: ring.clone(),
            order,
            elements,
            leads,
            mod_order,
            terms,
            lead_data,
        }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    /// Leading monomials with respect to the basis order.
    pub fn lead_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leads.iter().any(Monomial::is_one)
    }

    pub(crate) fn reduce_terms(&self, v: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
        reduce_with(
            self.ring.field(),
            &self.mod_order,
            &self.terms,
            &self.lead_data,
            None,
            v,
            true,
        )
    }

    /// Normal form of `c * m`, as (monomial, coefficient) pairs in the basis order.
    pub(crate) fn reduce_monomial(&self, m: &Monomial) -> Vec<(Monomial, F::Elem)> {
        let v = vec![(m.clone(), 0, self.ring.field().one())];
        self.reduce_terms(v).into_iter().map(|(m, _, c)| (m, c)).collect()
    }

    /// The remainder of `p`: no term is divisible by a leading monomial.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch(format!(
                "{} vs {}",
                p.ring().header(),
                self.ring.header()
            )));
        }
        let v = self.reduce_terms(poly_to_terms(&self.mod_order, p));
        Ok(terms_to_poly(&self.ring, v))
    }

    /// Normal forms of many polynomials, sharing one reducer.
    pub fn normal_forms(&self, ps: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
        ps.iter()
            .map(|p| {
                if !same_ring(p.ring(), &self.ring) {
                    return Err(AlgebraError::RingMismatch(p.ring().header()));
                }
                Ok(terms_to_poly(
                    &self.ring,
                    self.reduce_terms(poly_to_terms(&self.mod_order, p)),
                ))
            })
            .collect()
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Checks that every S-pair reduces to zero.
    pub fn certify(&self) -> bool {
        certify(self.ring.field(), &self.mod_order, &self.terms)
    }

    /// Whether `m` is a standard monomial (not divisible by any leading monomial).
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }

    /// Standard monomials of weighted degree `d`, largest first in grevlex.
    pub fn standard_monomials(&self, d: i64) -> Vec<Monomial> {
        self.ring
            .monomials_of_degree(d)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect()
    }

    /// Whether the quotient has finite length: every variable has a pure
    /// power among the leading monomials.
    pub fn is_finite_length(&self) -> bool {
        (0..self.ring.nvars()).all(|i| {
            self.leads
                .iter()
                .any(|l| l.exponents().iter().enumerate().all(|(k, &e)| k == i || e == 0))
        })
    }

    /// All standard monomials, if there are finitely many.
    pub fn all_standard_monomials(&self) -> Option<Vec<Monomial>> {
        if !self.is_finite_length() {
            return None;
        }
        let n = self.ring.nvars();
        let mut out = Vec::new();
        let mut stack = vec![Monomial::one(n)];
        if self.is_unit_ideal() {
            return Some(out);
        }
        // Walk the order ideal, extending only in variables at or after the
        // last nonzero one, so each monomial is visited once.
        while let Some(m) = stack.pop() {
            let start = m.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in start..n {
                let next = m.mul(&Monomial::var(n, i));
                if self.is_standard(&next) {
                    stack.push(next);
                }
            }
            out.push(m);
        }
        let w = self.ring.weights().to_vec();
        out.sort_by(|a, b| MonomialOrder::GRevLex.cmp(&w, b, a));
        Some(out)
    }

    /// The end of the quotient ring: `-inf` for the unit ideal, `+inf`
    /// without finite length.
    pub fn quotient_end(&self) -> End {
        if self.is_unit_ideal() {
            return End::NegInf;
        }
        match self.all_standard_monomials() {
            None => End::PosInf,
            Some(ms) => End::max_of(ms.iter().map(|m| End::Finite(self.ring.degree(m)))),
        }
    }
}

/// A homogeneous ideal given by generators, with a lazily computed grevlex basis.
#[derive(Clone)]
pub struct IdealData<F: Field> {
    ring: Ring<F>,
    generators: Vec<Polynomial<F>>,
    basis: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> std::fmt::Debug for IdealData<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdealData")
            .field("ring", &self.ring)
            .field("generators", &self.generators)
            .finish()
    }
}

impl<F: Field> IdealData<F> {
    /// Zero generators are dropped; the rest must be homogeneous and live in `ring`.
    pub fn new(ring: &Ring<F>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !same_ring(g.ring(), ring) {
                return Err(AlgebraError::RingMismatch(g.ring().header()));
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(AlgebraError::GradingError(format!("{} is not homogeneous", g)));
            }
            gens.push(g);
        }
        Ok(IdealData {
            ring: ring.clone(),
            generators: gens,
            basis: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    /// The reduced grevlex basis, computed on first use.
    pub fn groebner(&self) -> &GroebnerBasis<F> {
        self.basis.get_or_init(|| {
            buchberger(&self.ring, &self.generators, MonomialOrder::GRevLex)
                .expect("generators were checked to be homogeneous")
        })
    }

    pub fn quotient_end(&self) -> End {
        self.groebner().quotient_end()
    }

    /// `dim (R/I)_d`.
    pub fn quotient_dim(&self, d: i64) -> usize {
        self.groebner().standard_monomials(d).len()
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger<F: Field>(ring: &Ring<F>, gens: &[Polynomial<F>], order: MonomialOrder) -> Result<GroebnerBasis<F>> {
    let mod_order = ModOrder::ideal(order, ring.weights());
    let mut input = Vec::with_capacity(gens.len());
    for g in gens {
        if !same_ring(g.ring(), ring) {
            return Err(AlgebraError::RingMismatch(g.ring().header()));
        }
        input.push(poly_to_terms(&mod_order, g));
    }
    let terms = vector::buchberger(ring.field(), &mod_order, input)?;
    Ok(GroebnerBasis::from_terms(ring, order, mod_order, terms))
}

/// `end(R/I)`, see [`GroebnerBasis::quotient_end`].
pub fn quotient_end<F: Field>(ideal: &IdealData<F>) -> End {
    ideal.quotient_end()
}
