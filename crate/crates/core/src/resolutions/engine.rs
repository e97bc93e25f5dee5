//! Minimal free resolutions computed one degree at a time.
//!
//! In each degree `d`, step 0 picks generators of `M_d` modulo the span of
//! the old ones. Step `i >= 1` needs the kernel of `(F_{i-1})_d -> (F_{i-2})_d`
//! only when the images of the old generators of `F_i` do not already span
//! it. The kernel dimension comes for free from exactness in lower steps:
//! `dim ker = dim (F_{i-1})_d - rank`, and the rank is the previous kernel
//! dimension. Steps whose degree is above a proved cap on `t_i` are skipped.

use crate::ext::End;
use crate::field::Field;
use crate::linalg::{Echelon, ScalarMatrix, SparseVec};
use crate::poly::Polynomial;

use super::betti::BettiTable;
use super::complex::GradedFreeComplex;
use super::graded::{locate, GradedRing};
use super::module::GradedModule;

/// Degree bounds for the computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeCaps {
    /// `t_i <= caps[i]` is known; indices past the end have `Tor_i = 0`.
    Proved(Vec<End>),
    /// Work in degrees up to the given one; nothing is known above it.
    Scan(i64),
}

impl DegreeCaps {
    fn cap(&self, i: usize) -> End {
        match self {
            DegreeCaps::Proved(c) => c.get(i).copied().unwrap_or(End::NegInf),
            DegreeCaps::Scan(d) => End::Finite(*d),
        }
    }

    fn top(&self, max_index: usize) -> Option<i64> {
        match self {
            DegreeCaps::Proved(c) => c.iter().take(max_index + 1).filter_map(End::finite).max(),
            DegreeCaps::Scan(d) => Some(*d),
        }
    }
}

pub(crate) struct EngineOutput<F: Field> {
    /// Generators of `F_0`: degree and coordinates in `M_degree`.
    pub gens0: Vec<(i64, SparseVec<F::Elem>)>,
    pub complex: GradedFreeComplex<F>,
    pub betti: BettiTable,
}

struct Step<F: Field> {
    degrees: Vec<i64>,
    images: Vec<Vec<Polynomial<F>>>,
}

pub(crate) fn resolve<F: Field, M: GradedModule<F>>(
    base: &mut GradedRing<F>,
    module: &mut M,
    max_index: usize,
    caps: &DegreeCaps,
    label: &str,
) -> EngineOutput<F> {
    let field = base.field().clone();
    let ring = base.ring().clone();
    let top = caps.top(max_index);
    let capped = matches!(caps, DegreeCaps::Scan(_));
    let mut betti = BettiTable::new(label, max_index, top.unwrap_or(0), capped);
    let mut gens0: Vec<(i64, SparseVec<F::Elem>)> = Vec::new();
    let mut steps: Vec<Step<F>> = (0..max_index)
        .map(|_| Step {
            degrees: Vec::new(),
            images: Vec::new(),
        })
        .collect();
    let (Some(dmin), Some(dmax)) = (module.min_degree(), top) else {
        let complex =
            GradedFreeComplex::new(&ring, base.quotient(), 0, vec![Vec::new()], Vec::new()).expect("empty complex");
        return EngineOutput { gens0, complex, betti };
    };
    for d in dmin..=dmax {
        let md = module.dim(d);
        if md > 0 && End::Finite(d) <= caps.cap(0) {
            let mut ech = Echelon::new(field.clone(), md);
            for (gd, v) in &gens0 {
                let piece = base.piece(d - gd);
                for mu in &piece.mons {
                    ech.insert(&module.act(mu, *gd, v));
                    if ech.rank() == md {
                        break;
                    }
                }
            }
            for j in 0..md {
                if ech.rank() == md {
                    break;
                }
                let e = vec![(j, field.one())];
                if ech.insert(&e) {
                    gens0.push((d, e));
                    betti.add(0, d, 1);
                }
            }
        }
        let mut r_prev = md;
        for i in 1..=max_index {
            let prev_degrees: Vec<i64> = if i == 1 {
                gens0.iter().map(|g| g.0).collect()
            } else {
                steps[i - 2].degrees.clone()
            };
            let off = base.offsets(&prev_degrees, d);
            let dim_f = *off.last().expect("offsets");
            let kd = dim_f - r_prev;
            if kd == 0 || End::Finite(d) > caps.cap(i) {
                r_prev = kd;
                continue;
            }
            let mut ech = Echelon::new(field.clone(), dim_f);
            {
                let step = &steps[i - 1];
                'old: for (h, deg) in step.degrees.iter().enumerate() {
                    let piece = base.piece(d - deg);
                    for nu in &piece.mons {
                        let v = base.coords(&prev_degrees, &off, &step.images[h], nu, d);
                        ech.insert(&v);
                        if ech.rank() == kd {
                            break 'old;
                        }
                    }
                }
            }
            if ech.rank() < kd {
                let kernel = if i == 1 {
                    let mut cols = Vec::with_capacity(dim_f);
                    for (gd, v) in &gens0 {
                        let piece = base.piece(d - gd);
                        for mu in &piece.mons {
                            cols.push(module.act(mu, *gd, v));
                        }
                    }
                    kernel_of(&field, md, cols)
                } else {
                    let lower_degrees = if i == 2 {
                        gens0.iter().map(|g| g.0).collect()
                    } else {
                        steps[i - 3].degrees.clone()
                    };
                    let off2 = base.offsets(&lower_degrees, d);
                    let rows = *off2.last().expect("offsets");
                    let mut cols = Vec::with_capacity(dim_f);
                    let prev = &steps[i - 2];
                    for (c, gd) in prev.degrees.iter().enumerate() {
                        let piece = base.piece(d - gd);
                        for mu in &piece.mons {
                            cols.push(base.coords(&lower_degrees, &off2, &prev.images[c], mu, d));
                        }
                    }
                    kernel_of(&field, rows, cols)
                };
                for z in kernel {
                    if ech.rank() == kd {
                        break;
                    }
                    if ech.insert(&z) {
                        let image = to_polys(base, &prev_degrees, &off, &z, d);
                        steps[i - 1].degrees.push(d);
                        steps[i - 1].images.push(image);
                        betti.add(i, d, 1);
                    }
                }
                assert_eq!(ech.rank(), kd, "kernel in degree {} at step {} not spanned", d, i);
            }
            r_prev = kd;
        }
    }
    let last = steps.iter().rposition(|s| !s.degrees.is_empty()).map_or(0, |k| k + 1);
    let mut shifts = vec![gens0.iter().map(|g| g.0).collect::<Vec<_>>()];
    let mut maps = Vec::new();
    for s in steps.into_iter().take(last) {
        // a syzygy found before later generators of the previous step only
        // has coordinates for the earlier ones
        let rank = shifts.last().map_or(0, |v| v.len());
        let images = s
            .images
            .into_iter()
            .map(|mut col| {
                col.resize(rank, Polynomial::zero(&ring));
                col
            })
            .collect();
        shifts.push(s.degrees);
        maps.push(images);
    }
    let complex = GradedFreeComplex::new(&ring, base.quotient(), 0, shifts, maps).expect("engine output is graded");
    EngineOutput { gens0, complex, betti }
}

fn kernel_of<F: Field>(field: &F, rows: usize, cols: Vec<SparseVec<F::Elem>>) -> Vec<SparseVec<F::Elem>> {
    ScalarMatrix::from_columns(field.clone(), rows, cols)
        .expect("columns in range")
        .rank_and_kernel()
        .1
}

fn to_polys<F: Field>(
    base: &mut GradedRing<F>,
    shifts: &[i64],
    off: &[usize],
    z: &[(usize, F::Elem)],
    d: i64,
) -> Vec<Polynomial<F>> {
    let mut terms: Vec<Vec<_>> = vec![Vec::new(); shifts.len()];
    for (idx, x) in z {
        let (j, local) = locate(off, *idx);
        let m = base.piece(d - shifts[j]).mons[local].clone();
        terms[j].push((m, x.clone()));
    }
    terms
        .into_iter()
        .map(|t| Polynomial::from_terms(base.ring(), t))
        .collect()
}

/// Checks that the generators of `F_1` map to zero in `M`.
pub(crate) fn augmentation_is_zero<F: Field, M: GradedModule<F>>(module: &mut M, out: &EngineOutput<F>) -> bool {
    let Some(d1) = out.complex.differential(1) else {
        return true;
    };
    let field = module.field().clone();
    d1.iter().all(|col| {
        let mut acc = Vec::new();
        for (k, p) in col.iter().enumerate() {
            let (gd, v) = &out.gens0[k];
            for (m, c) in p.terms() {
                for (i, x) in module.act(m, *gd, v) {
                    acc.push((i, field.mul(c, &x)));
                }
            }
        }
        super::graded::combine(&field, acc).is_empty()
    })
}
