//! Sparse vectors of a graded free module and the Buchberger engine that
//! works on them. Ideals are the rank-one case.

use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder};

/// A term `coeff * mono * e_comp`.
pub(crate) type Term<E> = (Monomial, usize, E);

/// Order on module terms. With a graded monomial order, the shifted degree
/// `deg(mono) + shifts[comp]` is compared first. With `split = Some(s)`,
/// every term in a component below `s` beats every term at or above `s`,
/// which makes the order eliminate the first block of components.
#[derive(Debug, Clone)]
pub(crate) struct ModOrder {
    pub mono: MonomialOrder,
    pub weights: Vec<u32>,
    pub shifts: Vec<i64>,
    pub split: Option<usize>,
}

impl ModOrder {
    pub fn ideal(mono: MonomialOrder, weights: &[u32]) -> Self {
        ModOrder {
            mono,
            weights: weights.to_vec(),
            shifts: vec![0],
            split: None,
        }
    }

    pub fn degree(&self, m: &Monomial, comp: usize) -> i64 {
        m.degree(&self.weights) + self.shifts[comp]
    }

    pub fn cmp(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        if let Some(s) = self.split {
            let ord = (b.1 >= s).cmp(&(a.1 >= s));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        if self.mono.is_graded() {
            let ord = self.degree(a.0, a.1).cmp(&self.degree(b.0, b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.mono.cmp(&self.weights, a.0, b.0).then_with(|| b.1.cmp(&a.1))
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
}

/// Bitmask of the variables occurring in a monomial, for fast non-divisibility tests.
pub(crate) fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            mask |= 1 << (i % 64);
        }
    }
    mask
}

/// Sorts descending, combines like terms and drops zeros.
pub(crate) fn normalize<F: Field>(field: &F, order: &ModOrder, mut v: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
    v.sort_by(|a, b| order.cmp((&b.0, b.1), (&a.0, a.1)));
    let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(v.len());
    for (m, c, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == m && last.1 == c => last.2 = field.add(&last.2, &x),
            _ => out.push((m, c, x)),
        }
    }
    out.retain(|t| !field.is_zero(&t.2));
    out
}

/// `a - c * q * g`, all sorted descending.
pub(crate) fn sub_mul<F: Field>(
    field: &F,
    order: &ModOrder,
    a: &[Term<F::Elem>],
    c: &F::Elem,
    q: &Monomial,
    g: &[Term<F::Elem>],
) -> Vec<Term<F::Elem>> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let next_g = |j: usize| -> Term<F::Elem> {
        let (m, comp, x) = &g[j];
        (m.mul(q), *comp, field.neg(&field.mul(c, x)))
    };
    let mut pending = if g.is_empty() { None } else { Some(next_g(0)) };
    while i < a.len() || pending.is_some() {
        let ord = match (&pending, a.get(i)) {
            (None, _) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(p), Some(t)) => order.cmp((&t.0, t.1), (&p.0, p.1)),
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(pending.take().expect("pending term"));
                j += 1;
                pending = (j < g.len()).then(|| next_g(j));
            }
            Ordering::Equal => {
                let p = pending.take().expect("pending term");
                let x = field.add(&a[i].2, &p.2);
                if !field.is_zero(&x) {
                    out.push((p.0, p.1, x));
                }
                i += 1;
                j += 1;
                pending = (j < g.len()).then(|| next_g(j));
            }
        }
    }
    out
}

pub(crate) fn scale<F: Field>(field: &F, v: &mut [Term<F::Elem>], c: &F::Elem) {
    for t in v.iter_mut() {
        t.2 = field.mul(&t.2, c);
    }
}

pub(crate) fn make_monic<F: Field>(field: &F, v: &mut [Term<F::Elem>]) {
    if let Some(first) = v.first() {
        if !field.is_one(&first.2) {
            let inv = field.inv(&first.2).expect("nonzero leading coefficient");
            scale(field, v, &inv);
        }
    }
}

/// Checks that every element is homogeneous for the shifted grading.
pub(crate) fn check_homogeneous<E>(order: &ModOrder, v: &[Term<E>]) -> Result<Option<i64>> {
    let Some(first) = v.first() else {
        return Ok(None);
    };
    let d = order.degree(&first.0, first.1);
    if v.iter().any(|t| order.degree(&t.0, t.1) != d) {
        return Err(AlgebraError::GradingError("input element is not homogeneous".into()));
    }
    Ok(Some(d))
}

#[derive(Debug, Clone)]
pub(crate) struct Lead {
    pub mono: Monomial,
    pub comp: usize,
    pub mask: u64,
}

impl Lead {
    pub fn of<E>(v: &[Term<E>]) -> Lead {
        let (m, c, _) = &v[0];
        Lead {
            mono: m.clone(),
            comp: *c,
            mask: divmask(m),
        }
    }

    pub fn divides(&self, m: &Monomial, comp: usize, mask: u64) -> bool {
        self.comp == comp && self.mask & !mask == 0 && self.mono.divides(m)
    }
}

/// A set of monic reducers with their leading terms.
pub(crate) struct Reducer<'a, F: Field> {
    pub field: &'a F,
    pub order: &'a ModOrder,
    pub elems: Vec<Vec<Term<F::Elem>>>,
    pub leads: Vec<Lead>,
    pub active: Vec<bool>,
}

impl<'a, F: Field> Reducer<'a, F> {
    pub fn new(field: &'a F, order: &'a ModOrder) -> Self {
        Reducer {
            field,
            order,
            elems: Vec::new(),
            leads: Vec::new(),
            active: Vec::new(),
        }
    }

    pub fn push(&mut self, v: Vec<Term<F::Elem>>) -> usize {
        self.leads.push(Lead::of(&v));
        self.elems.push(v);
        self.active.push(true);
        self.elems.len() - 1
    }

    /// Reduces `v`. With `full = false` only the leading term is made
    /// irreducible; otherwise every term is.
    pub fn reduce(&self, v: Vec<Term<F::Elem>>, full: bool) -> Vec<Term<F::Elem>> {
        reduce_with(
            self.field,
            self.order,
            &self.elems,
            &self.leads,
            Some(&self.active),
            v,
            full,
        )
    }
}

/// Reduction of `v` by `elems` (monic, with leading terms `leads`), skipping
/// inactive ones.
pub(crate) fn reduce_with<F: Field>(
    field: &F,
    order: &ModOrder,
    elems: &[Vec<Term<F::Elem>>],
    leads: &[Lead],
    active: Option<&[bool]>,
    mut v: Vec<Term<F::Elem>>,
    full: bool,
) -> Vec<Term<F::Elem>> {
    let find = |m: &Monomial, comp: usize| {
        let mask = divmask(m);
        (0..leads.len()).find(|&k| active.is_none_or(|a| a[k]) && leads[k].divides(m, comp, mask))
    };
    let mut pos = 0;
    while pos < v.len() {
        let (m, comp, c) = &v[pos];
        match find(m, *comp) {
            Some(k) => {
                let q = leads[k].mono.quotient_of(m).expect("divisor");
                let c = c.clone();
                let tail = sub_mul(field, order, &v[pos..], &c, &q, &elems[k]);
                v.truncate(pos);
                v.extend(tail);
            }
            None => {
                if !full {
                    break;
                }
                pos += 1;
            }
        }
    }
    v
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    degree: i64,
}

/// Buchberger's algorithm with the Gebauer-Moeller criteria. Inputs must be
/// homogeneous for the shifted grading; pairs are processed by degree, ties
/// broken by pair index. Returns the reduced monic basis, sorted ascending
/// by leading term.
pub(crate) fn buchberger<F: Field>(
    field: &F,
    order: &ModOrder,
    gens: Vec<Vec<Term<F::Elem>>>,
) -> Result<Vec<Vec<Term<F::Elem>>>> {
    let product_criterion = order.rank() == 1;
    let mut gens: Vec<_> = gens.into_iter().map(|g| normalize(field, order, g)).collect();
    gens.retain(|g| !g.is_empty());
    let mut degrees = Vec::with_capacity(gens.len());
    for g in &gens {
        degrees.push(check_homogeneous(order, g)?.expect("nonzero"));
    }
    let mut idx: Vec<usize> = (0..gens.len()).collect();
    idx.sort_by_key(|&k| (degrees[k], k));
    let mut pending: Vec<(i64, Vec<Term<F::Elem>>)> = idx
        .into_iter()
        .map(|k| (degrees[k], std::mem::take(&mut gens[k])))
        .collect();
    pending.reverse();

    let mut red = Reducer::new(field, order);
    let mut pairs: Vec<Pair> = Vec::new();

    loop {
        let next_pair_deg = pairs.iter().map(|p| p.degree).min();
        let next_gen_deg = pending.last().map(|g| g.0);
        let candidate = match (next_pair_deg, next_gen_deg) {
            (None, None) => break,
            (Some(dp), Some(dg)) if dg <= dp => pending.pop().expect("pending").1,
            (None, Some(_)) => pending.pop().expect("pending").1,
            _ => {
                let d = next_pair_deg.expect("pair degree");
                let k = (0..pairs.len())
                    .filter(|&k| pairs[k].degree == d)
                    .min_by_key(|&k| (pairs[k].j, pairs[k].i))
                    .expect("pair");
                let p = pairs.swap_remove(k);
                spoly(field, order, &red, &p)
            }
        };
        let mut h = red.reduce(candidate, false);
        if h.is_empty() {
            continue;
        }
        make_monic(field, &mut h);
        let h = red.reduce(h, true);
        update(&mut red, &mut pairs, h, product_criterion);
    }

    // The active elements have pairwise non-dividing leads; tail-reduce them.
    let active: Vec<usize> = (0..red.elems.len()).filter(|&k| red.active[k]).collect();
    let mut out = Vec::with_capacity(active.len());
    for &k in &active {
        red.active[k] = false;
        let v = red.reduce(red.elems[k].clone(), true);
        red.active[k] = true;
        out.push(v);
    }
    out.sort_by(|a, b| order.cmp((&a[0].0, a[0].1), (&b[0].0, b[0].1)));
    Ok(out)
}

fn spoly<F: Field>(field: &F, order: &ModOrder, red: &Reducer<F>, p: &Pair) -> Vec<Term<F::Elem>> {
    let (a, b) = (&red.elems[p.i], &red.elems[p.j]);
    let qa = red.leads[p.i].mono.quotient_of(&p.lcm).expect("lcm");
    let qb = red.leads[p.j].mono.quotient_of(&p.lcm).expect("lcm");
    let one = field.one();
    let lifted: Vec<_> = a.iter().map(|(m, c, x)| (m.mul(&qa), *c, x.clone())).collect();
    sub_mul(field, order, &lifted, &one, &qb, b)
}

fn update<F: Field>(red: &mut Reducer<F>, pairs: &mut Vec<Pair>, h: Vec<Term<F::Elem>>, product_criterion: bool) {
    let order = red.order;
    let lh = Lead::of(&h);
    let new_index = red.elems.len();

    let mut fresh: Vec<(Pair, bool)> = Vec::new();
    for k in 0..red.elems.len() {
        if !red.active[k] || red.leads[k].comp != lh.comp {
            continue;
        }
        let lcm = red.leads[k].mono.lcm(&lh.mono);
        let coprime = product_criterion && red.leads[k].mono.is_coprime(&lh.mono);
        let degree = order.degree(&lcm, lh.comp);
        fresh.push((
            Pair {
                i: k,
                j: new_index,
                lcm,
                comp: lh.comp,
                degree,
            },
            coprime,
        ));
    }

    // Chain criterion among the new pairs.
    let mut kept: Vec<(Pair, bool)> = Vec::new();
    for idx in 0..fresh.len() {
        let (p, coprime) = &fresh[idx];
        let dominated = fresh[idx + 1..]
            .iter()
            .chain(kept.iter())
            .any(|(q, _)| q.lcm.divides(&p.lcm));
        if *coprime || !dominated {
            kept.push((p.clone(), *coprime));
        }
    }

    // Chain criterion on the old pairs.
    pairs.retain(|p| {
        if p.comp != lh.comp || !lh.mono.divides(&p.lcm) {
            return true;
        }
        let li = red.leads[p.i].mono.lcm(&lh.mono);
        let lj = red.leads[p.j].mono.lcm(&lh.mono);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(kept.into_iter().filter(|(_, c)| !c).map(|(p, _)| p));

    for k in 0..red.elems.len() {
        if red.active[k] && lh.divides(&red.leads[k].mono, red.leads[k].comp, red.leads[k].mask) {
            red.active[k] = false;
        }
    }
    red.push(h);
}

/// True if every S-pair of the (monic) basis reduces to zero.
pub(crate) fn certify<F: Field>(field: &F, order: &ModOrder, basis: &[Vec<Term<F::Elem>>]) -> bool {
    let mut red = Reducer::new(field, order);
    for b in basis {
        let mut b = b.clone();
        make_monic(field, &mut b);
        red.push(b);
    }
    for j in 0..basis.len() {
        for i in 0..j {
            if red.leads[i].comp != red.leads[j].comp {
                continue;
            }
            let lcm = red.leads[i].mono.lcm(&red.leads[j].mono);
            let p = Pair {
                i,
                j,
                degree: 0,
                comp: red.leads[i].comp,
                lcm,
            };
            if !red.reduce(spoly(field, order, &red, &p), true).is_empty() {
                return false;
            }
        }
    }
    true
}
