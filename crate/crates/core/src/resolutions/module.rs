use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::ext::End;
use crate::field::Field;
use crate::groebner::{FreeModuleElement, GroebnerBasis, ModuleGroebnerBasis};
use crate::linalg::{rank_of_vectors, SparseVec};
use crate::poly::{same_ring, Monomial, Polynomial, Ring};

use super::betti::BettiTable;
use super::graded::{combine, GradedRing};

/// A graded module over a polynomial ring `A`, seen through its graded
/// pieces: `act(mu, d, v)` returns the coordinates of `mu * v` for `v` in
/// `M_d` and a monomial `mu` of `A`.
pub trait GradedModule<F: Field> {
    fn field(&self) -> &F;
    /// Lowest degree of a nonzero piece; `None` for the zero module.
    fn min_degree(&self) -> Option<i64>;
    fn dim(&mut self, d: i64) -> usize;
    fn act(&mut self, mu: &Monomial, d: i64, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem>;
}

/// `T/L` as a module over a polynomial ring `A` through `x_k -> images[k]`.
pub struct QuotientModule<F: Field> {
    target: GradedRing<F>,
    images: Vec<Polynomial<F>>,
    acting_weights: Vec<u32>,
    memo: HashMap<Monomial, Polynomial<F>>,
}

impl<F: Field> QuotientModule<F> {
    /// `images[k]` must be homogeneous of degree `acting.weights()[k]`.
    pub fn new(
        acting: &Ring<F>,
        target: &Ring<F>,
        quotient: Option<&GroebnerBasis<F>>,
        images: &[Polynomial<F>],
    ) -> Result<Self> {
        if images.len() != acting.nvars() {
            return Err(AlgebraError::ShapeError(format!(
                "{} images for {} variables",
                images.len(),
                acting.nvars()
            )));
        }
        if let Some(gb) = quotient {
            if !same_ring(gb.ring(), target) {
                return Err(AlgebraError::RingMismatch(gb.ring().header()));
            }
        }
        for (p, &w) in images.iter().zip(acting.weights()) {
            if !same_ring(p.ring(), target) {
                return Err(AlgebraError::RingMismatch(p.ring().header()));
            }
            if !p.is_zero() && p.homogeneous_degree() != Some(w as i64) {
                return Err(AlgebraError::GradingError(format!("{} does not have degree {}", p, w)));
            }
        }
        let mut target = GradedRing::new(target, quotient);
        let images = images.iter().map(|p| target.normal_form(p)).collect();
        Ok(QuotientModule {
            target,
            images,
            acting_weights: acting.weights().to_vec(),
            memo: HashMap::new(),
        })
    }

    fn image(&mut self, mu: &Monomial) -> Polynomial<F> {
        if let Some(p) = self.memo.get(mu) {
            return p.clone();
        }
        let p = match mu.exponents().iter().position(|&e| e > 0) {
            None => Polynomial::one(self.target.ring()),
            Some(k) => {
                let mut e = mu.exponents().to_vec();
                e[k] -= 1;
                let rest = self.image(&Monomial::new(e));
                let xk = self.images[k].clone();
                self.target.mul(&rest, &xk)
            }
        };
        self.memo.insert(mu.clone(), p.clone());
        p
    }

    /// The module as a finite-dimensional one, if `T/L` has finite length.
    pub fn to_finite(&mut self) -> Option<FiniteModule<F>> {
        let std = self.target.quotient()?.all_standard_monomials()?;
        let ring = self.target.ring().clone();
        let mut dims = BTreeMap::new();
        for m in &std {
            *dims.entry(ring.degree(m)).or_insert(0usize) += 1;
        }
        let n = self.acting_weights.len();
        let mut action = vec![BTreeMap::new(); n];
        for (k, act) in action.iter_mut().enumerate() {
            let w = self.acting_weights[k] as i64;
            for &d in dims.keys() {
                if !dims.contains_key(&(d + w)) {
                    continue;
                }
                let piece = self.target.piece(d);
                let xk = Monomial::var(n, k);
                let cols: Vec<SparseVec<F::Elem>> = (0..piece.mons.len())
                    .map(|b| self.act(&xk, d, &[(b, ring.field().one())]))
                    .collect();
                act.insert(d, cols);
            }
        }
        Some(FiniteModule {
            field: ring.field().clone(),
            weights: self.acting_weights.clone(),
            dims,
            action,
        })
    }
}

impl<F: Field> GradedModule<F> for QuotientModule<F> {
    fn field(&self) -> &F {
        self.target.field()
    }

    fn min_degree(&self) -> Option<i64> {
        match self.target.quotient() {
            Some(gb) if gb.is_unit_ideal() => None,
            _ => Some(0),
        }
    }

    fn dim(&mut self, d: i64) -> usize {
        self.target.dim(d)
    }

    fn act(&mut self, mu: &Monomial, d: i64, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let img = self.image(mu);
        let e = d + mu.degree(&self.acting_weights);
        if img.is_zero() || v.is_empty() {
            return Vec::new();
        }
        let src = self.target.piece(d);
        let dst = self.target.piece(e);
        let field = self.target.field().clone();
        let mut terms = Vec::new();
        for (m, c) in img.terms() {
            for (b, x) in v {
                self.target
                    .push_reduced(m.mul(&src.mons[*b]), &field.mul(c, x), &mut terms);
            }
        }
        let out = terms.into_iter().map(|(m, c)| (dst.index[&m], c)).collect();
        combine(&field, out)
    }
}

type IdealPiece = Arc<(Vec<Monomial>, HashMap<Monomial, usize>)>;

/// An ideal `L` of a polynomial ring `T` as a module over `A` through
/// `x_k -> images[k]`, where the images lie in `L`. The basis of `L_d` is
/// `{m - NF(m)}` over the non-standard monomials `m` of degree `d`, so the
/// coordinates of an element of `L_d` are its coefficients on them.
pub struct IdealModule<F: Field> {
    target: Ring<F>,
    gb: GroebnerBasis<F>,
    images: Vec<Polynomial<F>>,
    acting_weights: Vec<u32>,
    memo: HashMap<Monomial, Polynomial<F>>,
    pieces: HashMap<i64, IdealPiece>,
    basis: HashMap<Monomial, Polynomial<F>>,
}

impl<F: Field> IdealModule<F> {
    pub fn new(acting: &Ring<F>, gb: &GroebnerBasis<F>, images: &[Polynomial<F>]) -> Result<Self> {
        if images.len() != acting.nvars() {
            return Err(AlgebraError::ShapeError(format!(
                "{} images for {} variables",
                images.len(),
                acting.nvars()
            )));
        }
        for (p, &w) in images.iter().zip(acting.weights()) {
            if !same_ring(p.ring(), gb.ring()) {
                return Err(AlgebraError::RingMismatch(p.ring().header()));
            }
            if !p.is_zero() && p.homogeneous_degree() != Some(w as i64) {
                return Err(AlgebraError::GradingError(format!("{} does not have degree {}", p, w)));
            }
            if !gb.contains(p)? {
                return Err(AlgebraError::InsufficientData(format!("{} is not in the ideal", p)));
            }
        }
        Ok(IdealModule {
            target: gb.ring().clone(),
            gb: gb.clone(),
            images: images.to_vec(),
            acting_weights: acting.weights().to_vec(),
            memo: HashMap::new(),
            pieces: HashMap::new(),
            basis: HashMap::new(),
        })
    }

    fn piece(&mut self, d: i64) -> IdealPiece {
        if let Some(p) = self.pieces.get(&d) {
            return p.clone();
        }
        let mons: Vec<Monomial> = if d < 0 {
            Vec::new()
        } else {
            self.target
                .monomials_of_degree(d)
                .into_iter()
                .filter(|m| !self.gb.is_standard(m))
                .collect()
        };
        let index = mons.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let p = Arc::new((mons, index));
        self.pieces.insert(d, p.clone());
        p
    }

    fn basis_element(&mut self, m: &Monomial) -> Polynomial<F> {
        if let Some(p) = self.basis.get(m) {
            return p.clone();
        }
        let one = self.target.field().one();
        let mono = Polynomial::monomial(&self.target, m.clone(), one);
        let nf = self.gb.normal_form(&mono).expect("same ring");
        let p = mono.checked_sub(&nf).expect("same ring");
        self.basis.insert(m.clone(), p.clone());
        p
    }

    fn image(&mut self, mu: &Monomial) -> Polynomial<F> {
        if let Some(p) = self.memo.get(mu) {
            return p.clone();
        }
        let p = match mu.exponents().iter().position(|&e| e > 0) {
            None => Polynomial::one(&self.target),
            Some(k) => {
                let mut e = mu.exponents().to_vec();
                e[k] -= 1;
                let rest = self.image(&Monomial::new(e));
                rest.checked_mul(&self.images[k]).expect("same ring")
            }
        };
        self.memo.insert(mu.clone(), p.clone());
        p
    }
}

impl<F: Field> GradedModule<F> for IdealModule<F> {
    fn field(&self) -> &F {
        self.target.field()
    }

    fn min_degree(&self) -> Option<i64> {
        self.gb.lead_monomials().iter().map(|m| self.target.degree(m)).min()
    }

    fn dim(&mut self, d: i64) -> usize {
        self.piece(d).0.len()
    }

    fn act(&mut self, mu: &Monomial, d: i64, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let img = self.image(mu);
        if img.is_zero() || v.is_empty() {
            return Vec::new();
        }
        let src = self.piece(d);
        let dst = self.piece(d + mu.degree(&self.acting_weights));
        let mut elem = Polynomial::zero(&self.target);
        for (b, c) in v {
            let e = self.basis_element(&src.0[*b]).scale(c);
            elem = elem.checked_add(&e).expect("same ring");
        }
        let prod = elem.checked_mul(&img).expect("same ring");
        let out = prod
            .terms()
            .iter()
            .filter_map(|(m, c)| dst.1.get(m).map(|&i| (i, c.clone())))
            .collect();
        combine(self.target.field(), out)
    }
}

type CokernelPiece = Arc<(Vec<(usize, Monomial)>, HashMap<(usize, Monomial), usize>)>;

/// The cokernel of a homogeneous matrix: `sum_j A(-shifts[j])` modulo the
/// submodule generated by the given columns.
pub struct CokernelModule<F: Field> {
    ring: Ring<F>,
    shifts: Vec<i64>,
    basis: Option<ModuleGroebnerBasis<F>>,
    pieces: HashMap<i64, CokernelPiece>,
}

impl<F: Field> CokernelModule<F> {
    pub fn new(ring: &Ring<F>, shifts: Vec<i64>, columns: &[FreeModuleElement<F>]) -> Result<Self> {
        if shifts.is_empty() {
            return Err(AlgebraError::ShapeError("cokernel of a map to the zero module".into()));
        }
        for c in columns {
            if c.shifts() != shifts.as_slice() {
                return Err(AlgebraError::ShapeError(
                    "column lives in a different free module".into(),
                ));
            }
            if !same_ring(c.ring(), ring) {
                return Err(AlgebraError::RingMismatch(c.ring().header()));
            }
        }
        let nonzero: Vec<FreeModuleElement<F>> = columns.iter().filter(|c| !c.is_zero()).cloned().collect();
        let basis = if nonzero.is_empty() {
            None
        } else {
            Some(ModuleGroebnerBasis::new(&nonzero)?)
        };
        Ok(CokernelModule {
            ring: ring.clone(),
            shifts,
            basis,
            pieces: HashMap::new(),
        })
    }

    fn piece(&mut self, d: i64) -> CokernelPiece {
        if let Some(p) = self.pieces.get(&d) {
            return p.clone();
        }
        let mut mons = Vec::new();
        for (j, s) in self.shifts.iter().enumerate() {
            for m in self.ring.monomials_of_degree(d - s) {
                if self.basis.as_ref().is_none_or(|b| b.is_standard(&m, j)) {
                    mons.push((j, m));
                }
            }
        }
        let index = mons.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let p = Arc::new((mons, index));
        self.pieces.insert(d, p.clone());
        p
    }
}

impl<F: Field> GradedModule<F> for CokernelModule<F> {
    fn field(&self) -> &F {
        self.ring.field()
    }

    fn min_degree(&self) -> Option<i64> {
        self.shifts.iter().min().copied()
    }

    fn dim(&mut self, d: i64) -> usize {
        self.piece(d).0.len()
    }

    fn act(&mut self, mu: &Monomial, d: i64, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let src = self.piece(d);
        let dst = self.piece(d + mu.degree(self.ring.weights()));
        let terms: Vec<_> = v
            .iter()
            .map(|(b, x)| {
                let (j, m) = &src.0[*b];
                (m.mul(mu), *j, x.clone())
            })
            .collect();
        let reduced = match &self.basis {
            Some(b) => b.reduce_unsorted(terms),
            None => terms,
        };
        let out = reduced.into_iter().map(|(m, j, c)| (dst.1[&(j, m)], c)).collect();
        combine(self.ring.field(), out)
    }
}

/// A finite-dimensional graded module over a polynomial ring, given by the
/// dimensions of its nonzero pieces and the action of each variable.
#[derive(Debug, Clone)]
pub struct FiniteModule<F: Field> {
    field: F,
    weights: Vec<u32>,
    dims: BTreeMap<i64, usize>,
    /// `action[k][d][b]`: coordinates of `x_k * e_b` for the b-th basis
    /// vector of degree `d`. Missing degrees act by zero.
    action: Vec<BTreeMap<i64, Vec<SparseVec<F::Elem>>>>,
}

impl<F: Field> FiniteModule<F> {
    pub fn new(
        field: F,
        weights: Vec<u32>,
        dims: BTreeMap<i64, usize>,
        action: Vec<BTreeMap<i64, Vec<SparseVec<F::Elem>>>>,
    ) -> Result<Self> {
        if action.len() != weights.len() {
            return Err(AlgebraError::ShapeError("one action per variable expected".into()));
        }
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|(_, n)| *n > 0).collect();
        for (k, act) in action.iter().enumerate() {
            for (d, cols) in act {
                let src = dims.get(d).copied().unwrap_or(0);
                let dst = dims.get(&(d + weights[k] as i64)).copied().unwrap_or(0);
                if cols.len() != src || cols.iter().flatten().any(|(i, _)| *i >= dst) {
                    return Err(AlgebraError::ShapeError(format!(
                        "action of variable {} in degree {} has the wrong shape",
                        k, d
                    )));
                }
            }
        }
        Ok(FiniteModule {
            field,
            weights,
            dims,
            action,
        })
    }

    /// The residue field `k`, concentrated in degree 0.
    pub fn residue_field(field: F, weights: Vec<u32>) -> Self {
        let n = weights.len();
        FiniteModule {
            field,
            weights,
            dims: BTreeMap::from([(0, 1)]),
            action: vec![BTreeMap::new(); n],
        }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn end(&self) -> End {
        End::max_of(self.dims.keys().map(|&d| End::Finite(d)))
    }

    pub fn apply_var(&self, k: usize, d: i64, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let Some(cols) = self.action[k].get(&d) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for (b, x) in v {
            for (i, y) in &cols[*b] {
                out.push((*i, self.field.mul(x, y)));
            }
        }
        combine(&self.field, out)
    }

    /// Whether the variables commute, i.e. the data define a module.
    pub fn is_commutative(&self) -> bool {
        let n = self.weights.len();
        for (&d, &dim) in &self.dims {
            for k in 0..n {
                for l in k + 1..n {
                    for b in 0..dim {
                        let e = [(b, self.field.one())];
                        let kl = self.apply_var(l, d + self.weights[k] as i64, &self.apply_var(k, d, &e));
                        let lk = self.apply_var(k, d + self.weights[l] as i64, &self.apply_var(l, d, &e));
                        if kl != lk {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Betti numbers over the acting polynomial ring, from the Koszul complex
    /// on its variables tensored with the module. Exact: no cap is involved.
    pub fn betti_table(&self, label: impl Into<String>) -> BettiTable {
        let n = self.weights.len();
        let lo = self.dims.keys().next().copied();
        let hi = self.dims.keys().last().copied();
        let total_w: i64 = self.weights.iter().map(|&w| w as i64).sum();
        let mut table = BettiTable::new(label, n, hi.unwrap_or(0) + total_w, false);
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return table;
        };
        let subsets: Vec<Vec<u64>> = (0..=n).map(|j| subsets_of_size(n, j)).collect();
        let cells: Vec<(usize, i64)> = (0..=n).flat_map(|j| (lo..=hi + total_w).map(move |d| (j, d))).collect();
        // rank of the boundary K_{j,d} -> K_{j-1,d}
        let ranks: HashMap<(usize, i64), usize> = cells
            .par_iter()
            .filter(|(j, _)| *j > 0)
            .map(|&(j, d)| ((j, d), self.koszul_rank(&subsets, j, d)))
            .collect();
        for &(j, d) in &cells {
            let dim = self.koszul_dim(&subsets[j], d);
            if dim == 0 {
                continue;
            }
            let out = if j > 0 { ranks[&(j, d)] } else { 0 };
            let inc = ranks.get(&(j + 1, d)).copied().unwrap_or(0);
            table.add(j, d, (dim - out - inc) as u64);
        }
        table
    }

    fn mask_weight(&self, mask: u64) -> i64 {
        (0..self.weights.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| self.weights[k] as i64)
            .sum()
    }

    fn koszul_dim(&self, subsets: &[u64], d: i64) -> usize {
        subsets
            .iter()
            .map(|&s| self.dims.get(&(d - self.mask_weight(s))).copied().unwrap_or(0))
            .sum()
    }

    fn koszul_rank(&self, subsets: &[Vec<u64>], j: usize, d: i64) -> usize {
        let mut offsets = HashMap::new();
        let mut rows = 0;
        for &s in &subsets[j - 1] {
            offsets.insert(s, rows);
            rows += self.dims.get(&(d - self.mask_weight(s))).copied().unwrap_or(0);
        }
        let mut cols = Vec::new();
        for &s in &subsets[j] {
            let e = d - self.mask_weight(s);
            let dim = self.dims.get(&e).copied().unwrap_or(0);
            for b in 0..dim {
                let mut col = Vec::new();
                let mut sign_neg = false;
                for k in 0..self.weights.len() {
                    if s >> k & 1 == 0 {
                        continue;
                    }
                    let img = self.apply_var(k, e, &[(b, self.field.one())]);
                    let off = offsets[&(s & !(1 << k))];
                    for (i, x) in img {
                        col.push((off + i, if sign_neg { self.field.neg(&x) } else { x }));
                    }
                    sign_neg = !sign_neg;
                }
                cols.push(combine(&self.field, col));
            }
        }
        rank_of_vectors(&self.field, rows, &cols)
    }
}

/// Subsets of `{0..n}` of size `j` as bitmasks, in lexicographic order of
/// their increasing index tuples.
pub(crate) fn subsets_of_size(n: usize, j: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..j).collect();
    if j > n {
        return out;
    }
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | 1 << i));
        let Some(p) = (0..j).rev().find(|&p| idx[p] < n - j + p) else {
            break;
        };
        idx[p] += 1;
        for q in p + 1..j {
            idx[q] = idx[q - 1] + 1;
        }
    }
    out
}

impl<F: Field> GradedModule<F> for FiniteModule<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn min_degree(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    fn dim(&mut self, d: i64) -> usize {
        self.dims.get(&d).copied().unwrap_or(0)
    }

    fn act(&mut self, mu: &Monomial, d: i64, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut cur = v.to_vec();
        let mut deg = d;
        for (k, &e) in mu.exponents().iter().enumerate() {
            for _ in 0..e {
                if cur.is_empty() {
                    return cur;
                }
                cur = self.apply_var(k, deg, &cur);
                deg += self.weights[k] as i64;
            }
        }
        cur
    }
}
