use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::ext::End;
use crate::field::Field;
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, Ring};

use super::ideal::IdealData;
use super::vector::{self, reduce_with, Lead, ModOrder, Term};

/// An element of the graded free module `sum_j S(-shifts[j])`.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeModuleElement<F: Field> {
    shifts: Vec<i64>,
    coords: Vec<Polynomial<F>>,
}

impl<F: Field> std::fmt::Debug for FreeModuleElement<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl<F: Field> FreeModuleElement<F> {
    /// Checks that all coordinates live in one ring and that the element is
    /// homogeneous: `deg(coords[j]) + shifts[j]` is the same for every
    /// nonzero coordinate.
    pub fn new(shifts: Vec<i64>, coords: Vec<Polynomial<F>>) -> Result<Self> {
        if shifts.len() != coords.len() || coords.is_empty() {
            return Err(AlgebraError::ShapeError(format!(
                "{} shifts for {} coordinates",
                shifts.len(),
                coords.len()
            )));
        }
        let ring = coords[0].ring();
        let mut degree = None;
        for (p, s) in coords.iter().zip(&shifts) {
            if !same_ring(p.ring(), ring) {
                return Err(AlgebraError::RingMismatch(p.ring().header()));
            }
            if p.is_zero() {
                continue;
            }
            let d = p
                .homogeneous_degree()
                .ok_or_else(|| AlgebraError::GradingError(format!("{} is not homogeneous", p)))?
                + s;
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => {
                    return Err(AlgebraError::GradingError(
                        "coordinates have inconsistent shifted degrees".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(FreeModuleElement { shifts, coords })
    }

    pub fn from_poly(p: Polynomial<F>) -> Result<Self> {
        Self::new(vec![0], vec![p])
    }

    pub fn ring(&self) -> &Ring<F> {
        self.coords[0].ring()
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn coords(&self) -> &[Polynomial<F>] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Polynomial::is_zero)
    }

    /// Shifted degree; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.coords
            .iter()
            .zip(&self.shifts)
            .find(|(p, _)| !p.is_zero())
            .map(|(p, s)| p.homogeneous_degree().expect("homogeneous") + s)
    }

    /// `sum_j coords[j] * row[j]`, the image under the map sending the j-th basis
    /// vector to `row[j]`.
    pub fn dot(&self, row: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        if row.len() != self.rank() {
            return Err(AlgebraError::ShapeError(format!(
                "row of length {} for rank {}",
                row.len(),
                self.rank()
            )));
        }
        let mut acc = Polynomial::zero(self.ring());
        for (c, r) in self.coords.iter().zip(row) {
            acc = acc.checked_add(&c.checked_mul(r)?)?;
        }
        Ok(acc)
    }

    pub(crate) fn to_terms(&self, order: &ModOrder, offset: usize) -> Vec<Term<F::Elem>> {
        let v = self
            .coords
            .iter()
            .enumerate()
            .flat_map(|(j, p)| p.terms().iter().map(move |(m, c)| (m.clone(), j + offset, c.clone())))
            .collect();
        vector::normalize(self.ring().field(), order, v)
    }

    pub(crate) fn from_terms(ring: &Ring<F>, shifts: &[i64], offset: usize, v: &[Term<F::Elem>]) -> Self {
        let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); shifts.len()];
        for (m, c, x) in v {
            buckets[c - offset].push((m.clone(), x.clone()));
        }
        FreeModuleElement {
            shifts: shifts.to_vec(),
            coords: buckets.into_iter().map(|b| Polynomial::from_terms(ring, b)).collect(),
        }
    }
}

fn check_family<F: Field>(gens: &[FreeModuleElement<F>]) -> Result<(Ring<F>, Vec<i64>)> {
    let first = gens
        .first()
        .ok_or_else(|| AlgebraError::ShapeError("empty generator list".into()))?;
    let ring = first.ring().clone();
    let shifts = first.shifts().to_vec();
    for g in gens {
        if !same_ring(g.ring(), &ring) {
            return Err(AlgebraError::RingMismatch(g.ring().header()));
        }
        if g.shifts() != shifts.as_slice() {
            return Err(AlgebraError::ShapeError(
                "generators live in different free modules".into(),
            ));
        }
    }
    Ok((ring, shifts))
}

/// Groebner basis of a submodule of a graded free module, for the
/// position-after-degree grevlex order.
#[derive(Clone)]
pub struct ModuleGroebnerBasis<F: Field> {
    ring: Ring<F>,
    shifts: Vec<i64>,
    order: ModOrder,
    terms: Vec<Vec<Term<F::Elem>>>,
    leads: Vec<Lead>,
}

impl<F: Field> ModuleGroebnerBasis<F> {
    pub fn new(gens: &[FreeModuleElement<F>]) -> Result<Self> {
        let (ring, shifts) = check_family(gens)?;
        let order = ModOrder {
            mono: MonomialOrder::GRevLex,
            weights: ring.weights().to_vec(),
            shifts: shifts.clone(),
            split: None,
        };
        let input = gens.iter().map(|g| g.to_terms(&order, 0)).collect();
        let terms = vector::buchberger(ring.field(), &order, input)?;
        let leads = terms.iter().map(|t| Lead::of(t)).collect();
        Ok(ModuleGroebnerBasis {
            ring,
            shifts,
            order,
            terms,
            leads,
        })
    }

    pub fn elements(&self) -> Vec<FreeModuleElement<F>> {
        self.terms
            .iter()
            .map(|t| FreeModuleElement::from_terms(&self.ring, &self.shifts, 0, t))
            .collect()
    }

    /// Leading terms as (monomial, component).
    pub fn leads(&self) -> Vec<(Monomial, usize)> {
        self.terms.iter().map(|t| (t[0].0.clone(), t[0].1)).collect()
    }

    pub fn normal_form(&self, v: &FreeModuleElement<F>) -> Result<FreeModuleElement<F>> {
        if v.shifts() != self.shifts.as_slice() || !same_ring(v.ring(), &self.ring) {
            return Err(AlgebraError::ShapeError("element of a different free module".into()));
        }
        let r = self.reduce_terms(v.to_terms(&self.order, 0));
        Ok(FreeModuleElement::from_terms(&self.ring, &self.shifts, 0, &r))
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    /// Whether `m e_comp` is not divisible by any leading term.
    pub fn is_standard(&self, m: &Monomial, comp: usize) -> bool {
        let mask = vector::divmask(m);
        !self.leads.iter().any(|l| l.divides(m, comp, mask))
    }

    /// Normal form of an unsorted list of terms `(monomial, component, coefficient)`.
    pub(crate) fn reduce_unsorted(&self, v: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
        let v = vector::normalize(self.ring.field(), &self.order, v);
        self.reduce_terms(v)
    }

    fn reduce_terms(&self, v: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
        reduce_with(self.ring.field(), &self.order, &self.terms, &self.leads, None, v, true)
    }

    pub fn certify(&self) -> bool {
        vector::certify(self.ring.field(), &self.order, &self.terms)
    }
}

/// Generators of the syzygy module of `gens`, minimalized. The j-th
/// coordinate of each syzygy has shift `deg gens[j]`. Zero generators are
/// allowed and contribute the obvious syzygy.
pub fn syzygies<F: Field>(gens: &[FreeModuleElement<F>]) -> Result<Vec<FreeModuleElement<F>>> {
    let (ring, shifts) = check_family(gens)?;
    let r = shifts.len();
    let gdeg: Vec<i64> = gens.iter().map(|g| g.degree().unwrap_or(0)).collect();
    let mut all_shifts = shifts.clone();
    all_shifts.extend(&gdeg);
    let order = ModOrder {
        mono: MonomialOrder::GRevLex,
        weights: ring.weights().to_vec(),
        shifts: all_shifts,
        split: Some(r),
    };
    let field = ring.field();
    let input = gens
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut v = g.to_terms(&order, 0);
            v.push((Monomial::one(ring.nvars()), r + j, field.one()));
            vector::normalize(field, &order, v)
        })
        .collect();
    let basis = vector::buchberger(field, &order, input)?;
    let syz: Vec<FreeModuleElement<F>> = basis
        .iter()
        .filter(|t| t[0].1 >= r)
        .map(|t| FreeModuleElement::from_terms(&ring, &gdeg, r, t))
        .collect();
    minimal_generators(&syz)
}

/// Syzygies of a list of homogeneous polynomials.
pub fn syzygies_of_polys<F: Field>(gens: &[Polynomial<F>]) -> Result<Vec<FreeModuleElement<F>>> {
    let elems = gens
        .iter()
        .map(|g| FreeModuleElement::from_poly(g.clone()))
        .collect::<Result<Vec<_>>>()?;
    syzygies(&elems)
}

/// The monomials of one degree and the position of each.
type DegreeBasis = Arc<(Vec<Monomial>, HashMap<Monomial, usize>)>;

/// Monomials of each degree of a ring, with their positions.
pub(crate) struct MonomialTable<F: Field> {
    ring: Ring<F>,
    cache: HashMap<i64, DegreeBasis>,
}

impl<F: Field> MonomialTable<F> {
    pub fn new(ring: &Ring<F>) -> Self {
        MonomialTable {
            ring: ring.clone(),
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, d: i64) -> Arc<(Vec<Monomial>, HashMap<Monomial, usize>)> {
        let ring = &self.ring;
        self.cache
            .entry(d)
            .or_insert_with(|| {
                let ms = ring.monomials_of_degree(d);
                let idx = ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
                Arc::new((ms, idx))
            })
            .clone()
    }
}

/// Coordinates of the degree-`d` piece of a graded free module.
pub(crate) fn piece_offsets<F: Field>(table: &mut MonomialTable<F>, shifts: &[i64], d: i64) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(shifts.len() + 1);
    let mut total = 0;
    for s in shifts {
        offsets.push(total);
        total += table.get(d - s).0.len();
    }
    offsets.push(total);
    offsets
}

/// Coordinates of `mu * v` in the degree-`d` piece.
pub(crate) fn coords_of<F: Field>(
    table: &mut MonomialTable<F>,
    offsets: &[usize],
    v: &FreeModuleElement<F>,
    mu: &Monomial,
    d: i64,
) -> SparseVec<F::Elem> {
    let mut out = Vec::new();
    for (j, p) in v.coords().iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let t = table.get(d - v.shifts()[j]);
        for (m, c) in p.terms() {
            let idx = t.1[&m.mul(mu)];
            out.push((offsets[j] + idx, c.clone()));
        }
    }
    out.sort_unstable_by_key(|(i, _)| *i);
    out
}

/// A minimal homogeneous generating set of the submodule generated by
/// `gens`, chosen degree by degree: in each degree keep the generators that
/// are independent of everything generated in lower degrees and of the
/// generators of that degree kept before them.
pub fn minimal_generators<F: Field>(gens: &[FreeModuleElement<F>]) -> Result<Vec<FreeModuleElement<F>>> {
    let mut nonzero: Vec<&FreeModuleElement<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }
    let owned: Vec<FreeModuleElement<F>> = nonzero.iter().map(|g| (*g).clone()).collect();
    let (ring, shifts) = check_family(&owned)?;
    nonzero.sort_by_key(|g| g.degree().expect("nonzero"));
    let mut table = MonomialTable::new(&ring);
    let mut kept: Vec<&FreeModuleElement<F>> = Vec::new();
    let mut k = 0;
    while k < nonzero.len() {
        let d = nonzero[k].degree().expect("nonzero");
        let offsets = piece_offsets(&mut table, &shifts, d);
        let mut ech = Echelon::new(ring.field().clone(), offsets[shifts.len()]);
        for g in &kept {
            let e = d - g.degree().expect("nonzero");
            let mons = table.get(e);
            for mu in mons.0.iter() {
                let v = coords_of(&mut table, &offsets, g, mu, d);
                ech.insert(&v);
            }
        }
        let one = Monomial::one(ring.nvars());
        while k < nonzero.len() && nonzero[k].degree() == Some(d) {
            let v = coords_of(&mut table, &offsets, nonzero[k], &one, d);
            if ech.insert(&v) {
                kept.push(nonzero[k]);
            }
            k += 1;
        }
    }
    Ok(kept.into_iter().cloned().collect())
}

/// Minimal generators of a homogeneous ideal.
pub fn minimal_ideal_generators<F: Field>(ideal: &IdealData<F>) -> Result<Vec<Polynomial<F>>> {
    let elems = ideal
        .generators()
        .iter()
        .map(|g| FreeModuleElement::from_poly(g.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(minimal_generators(&elems)?
        .into_iter()
        .map(|e| e.coords()[0].clone())
        .collect())
}

/// `t_1(I)`: the largest degree of a minimal first syzygy among a minimal
/// generating set of `I`, or `-inf` when there is none.
pub fn t1_of_ideal<F: Field>(ideal: &IdealData<F>) -> Result<End> {
    let gens = minimal_ideal_generators(ideal)?;
    if gens.is_empty() {
        return Ok(End::NegInf);
    }
    let syz = syzygies_of_polys(&gens)?;
    Ok(End::max_of(syz.iter().filter_map(|s| s.degree()).map(End::Finite)))
}
