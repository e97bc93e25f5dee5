use std::collections::HashMap;
use std::sync::Arc;

use crate::field::Field;
use crate::groebner::{hilbert_function, hilbert_numerator, GroebnerBasis, TPoly};
use crate::linalg::SparseVec;
use crate::poly::{Monomial, Polynomial, Ring};

/// Standard monomials of one degree with their positions.
pub(crate) struct Piece {
    pub mons: Vec<Monomial>,
    pub index: HashMap<Monomial, usize>,
}

type Terms<F> = Arc<Vec<(Monomial, <F as Field>::Elem)>>;

/// A polynomial ring or a quotient `S/J` by an ideal with a known Groebner
/// basis, with cached graded pieces and normal forms of monomials. Elements
/// of the quotient are stored as normal forms in `S`.
pub(crate) struct GradedRing<F: Field> {
    ring: Ring<F>,
    quotient: Option<GroebnerBasis<F>>,
    numerator: TPoly,
    hilbert: Vec<i128>,
    pieces: HashMap<i64, Arc<Piece>>,
    nf: HashMap<Monomial, Terms<F>>,
}

impl<F: Field> GradedRing<F> {
    pub fn new(ring: &Ring<F>, quotient: Option<&GroebnerBasis<F>>) -> Self {
        let quotient = quotient.filter(|gb| !gb.elements().is_empty()).cloned();
        let numerator = match &quotient {
            Some(gb) => hilbert_numerator(gb),
            None => vec![1],
        };
        GradedRing {
            ring: ring.clone(),
            quotient,
            numerator,
            hilbert: Vec::new(),
            pieces: HashMap::new(),
            nf: HashMap::new(),
        }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn quotient(&self) -> Option<&GroebnerBasis<F>> {
        self.quotient.as_ref()
    }

    /// `dim A_d`, from the Hilbert series.
    pub fn dim(&mut self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        let d = d as usize;
        if d >= self.hilbert.len() {
            let upto = (2 * d).max(16);
            self.hilbert = hilbert_function(&self.numerator, self.ring.weights(), upto);
        }
        self.hilbert[d] as usize
    }

    pub fn piece(&mut self, d: i64) -> Arc<Piece> {
        if let Some(p) = self.pieces.get(&d) {
            return p.clone();
        }
        let mons = match &self.quotient {
            Some(gb) => gb.standard_monomials(d),
            None => self.ring.monomials_of_degree(d),
        };
        let index = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let p = Arc::new(Piece { mons, index });
        self.pieces.insert(d, p.clone());
        p
    }

    /// Appends `c * NF(m)` to `out`.
    pub fn push_reduced(&mut self, m: Monomial, c: &F::Elem, out: &mut Vec<(Monomial, F::Elem)>) {
        let Some(gb) = &self.quotient else {
            out.push((m, c.clone()));
            return;
        };
        let nf = match self.nf.get(&m) {
            Some(v) => v.clone(),
            None => {
                let v = Arc::new(gb.reduce_monomial(&m));
                self.nf.insert(m, v.clone());
                v
            }
        };
        let field = self.ring.field();
        for (m2, c2) in nf.iter() {
            out.push((m2.clone(), field.mul(c, c2)));
        }
    }

    /// Normal form of `mu * p`.
    pub fn mul_monomial(&mut self, mu: &Monomial, p: &Polynomial<F>) -> Polynomial<F> {
        let mut out = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            self.push_reduced(m.mul(mu), c, &mut out);
        }
        Polynomial::from_terms(&self.ring, out)
    }

    pub fn normal_form(&mut self, p: &Polynomial<F>) -> Polynomial<F> {
        let one = Monomial::one(self.ring.nvars());
        self.mul_monomial(&one, p)
    }

    /// Normal form of `p * q`.
    pub fn mul(&mut self, p: &Polynomial<F>, q: &Polynomial<F>) -> Polynomial<F> {
        let field = self.ring.field().clone();
        let mut out = Vec::with_capacity(p.len() * q.len());
        for (m, c) in p.terms() {
            for (n, e) in q.terms() {
                self.push_reduced(m.mul(n), &field.mul(c, e), &mut out);
            }
        }
        Polynomial::from_terms(&self.ring, out)
    }

    /// Start of each summand in the degree-`d` piece of `sum_j A(-shifts[j])`,
    /// followed by the total dimension.
    pub fn offsets(&mut self, shifts: &[i64], d: i64) -> Vec<usize> {
        let mut out = Vec::with_capacity(shifts.len() + 1);
        let mut total = 0;
        for s in shifts {
            out.push(total);
            total += self.dim(d - s);
        }
        out.push(total);
        out
    }

    /// Coordinates of `mu * v` in the degree-`d` piece of the free module
    /// with the given shifts and offsets.
    pub fn coords(
        &mut self,
        shifts: &[i64],
        offsets: &[usize],
        v: &[Polynomial<F>],
        mu: &Monomial,
        d: i64,
    ) -> SparseVec<F::Elem> {
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for (j, p) in v.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let piece = self.piece(d - shifts[j]);
            buf.clear();
            for (m, c) in p.terms() {
                self.push_reduced(m.mul(mu), c, &mut buf);
            }
            for (m, c) in buf.drain(..) {
                let idx = *piece.index.get(&m).expect("term of the expected degree");
                out.push((offsets[j] + idx, c));
            }
        }
        combine(self.ring.field(), out)
    }
}

/// Sorts by index, adds duplicates and drops zeros.
pub(crate) fn combine<F: Field>(field: &F, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = field.add(&last.1, &c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !field.is_zero(c));
    out
}

/// Position of coordinate `idx` given offsets: (summand, index within it).
pub(crate) fn locate(offsets: &[usize], idx: usize) -> (usize, usize) {
    let j = offsets.partition_point(|&o| o <= idx) - 1;
    (j, idx - offsets[j])
}
