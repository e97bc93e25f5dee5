use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::ext::End;
use crate::field::Field;
use crate::groebner::GroebnerBasis;
use crate::linalg::{rank_of_vectors, Echelon, ScalarMatrix, SparseVec};
use crate::poly::{same_ring, Monomial, Polynomial, Ring};

use super::betti::{EndStatus, HomologyEnd, HomologyReport};
use super::graded::{combine, locate, GradedRing};
use super::module::{subsets_of_size, FiniteModule};

/// A complex of graded free modules `C_i = sum_j A(-shifts_i[j])` over a
/// polynomial ring, or over a quotient `A = S/J` when a basis of `J` is
/// attached (entries are then normal forms). `maps[k]` is the differential
/// `C_{start+k+1} -> C_{start+k}`, stored by columns: column `c` is the
/// image of the c-th basis vector.
#[derive(Clone)]
pub struct GradedFreeComplex<F: Field> {
    ring: Ring<F>,
    quotient: Option<GroebnerBasis<F>>,
    start: usize,
    shifts: Vec<Vec<i64>>,
    maps: Vec<Vec<Vec<Polynomial<F>>>>,
}

impl<F: Field> std::fmt::Debug for GradedFreeComplex<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedFreeComplex")
            .field("start", &self.start)
            .field("shifts", &self.shifts)
            .finish()
    }
}

/// Where the cap of a homology scan comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapSource {
    /// A proved upper bound on the end, such as an exact `t_i` from a resolution.
    Exact,
    /// Any other bound; the scan says nothing above it.
    Assumed,
}

impl<F: Field> GradedFreeComplex<F> {
    /// Checks shapes, rings and that every entry has degree equal to the
    /// source shift minus the target shift.
    pub fn new(
        ring: &Ring<F>,
        quotient: Option<&GroebnerBasis<F>>,
        start: usize,
        shifts: Vec<Vec<i64>>,
        maps: Vec<Vec<Vec<Polynomial<F>>>>,
    ) -> Result<Self> {
        if maps.len() + 1 != shifts.len().max(1) {
            return Err(AlgebraError::ShapeError(format!(
                "{} maps between {} modules",
                maps.len(),
                shifts.len()
            )));
        }
        let c = GradedFreeComplex {
            ring: ring.clone(),
            quotient: quotient.cloned(),
            start,
            shifts,
            maps,
        };
        for (k, m) in c.maps.iter().enumerate() {
            if m.len() != c.shifts[k + 1].len() {
                return Err(AlgebraError::ShapeError(format!("map {} has {} columns", k, m.len())));
            }
            for col in m {
                if col.len() != c.shifts[k].len() {
                    return Err(AlgebraError::ShapeError(format!(
                        "map {} has a column of length {}",
                        k,
                        col.len()
                    )));
                }
                if let Some(p) = col.iter().find(|p| !same_ring(p.ring(), ring)) {
                    return Err(AlgebraError::RingMismatch(p.ring().header()));
                }
            }
        }
        if !c.is_graded() {
            return Err(AlgebraError::GradingError(
                "a matrix entry does not have the shift difference as degree".into(),
            ));
        }
        Ok(c)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn quotient(&self) -> Option<&GroebnerBasis<F>> {
        self.quotient.as_ref()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Number of modules.
    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }

    /// Shifts of `C_i`; empty outside the complex.
    pub fn shifts(&self, i: usize) -> &[i64] {
        i.checked_sub(self.start)
            .and_then(|k| self.shifts.get(k))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn rank(&self, i: usize) -> usize {
        self.shifts(i).len()
    }

    /// The differential `C_i -> C_{i-1}` by columns, if both ends exist.
    pub fn differential(&self, i: usize) -> Option<&[Vec<Polynomial<F>>]> {
        let k = i.checked_sub(self.start + 1)?;
        self.maps.get(k).map(Vec::as_slice)
    }

    pub fn is_graded(&self) -> bool {
        self.maps.iter().enumerate().all(|(k, m)| {
            m.iter().enumerate().all(|(c, col)| {
                col.iter().enumerate().all(|(r, p)| {
                    p.is_zero() || p.homogeneous_degree() == Some(self.shifts[k + 1][c] - self.shifts[k][r])
                })
            })
        })
    }

    /// No entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        self.maps
            .iter()
            .flatten()
            .flatten()
            .all(|p| p.is_zero() || p.homogeneous_degree() != Some(0))
    }

    /// Whether consecutive differentials compose to zero, as an exact
    /// polynomial identity (modulo the ideal for a quotient ring).
    #[allow(clippy::needless_range_loop)]
    pub fn composes_to_zero(&self) -> bool {
        let mut g = GradedRing::new(&self.ring, self.quotient.as_ref());
        for k in 1..self.maps.len() {
            let (lower, upper) = (&self.maps[k - 1], &self.maps[k]);
            for col in upper {
                for r in 0..self.shifts[k - 1].len() {
                    let mut acc = Polynomial::zero(&self.ring);
                    for (j, p) in col.iter().enumerate() {
                        if !p.is_zero() && !lower[j][r].is_zero() {
                            acc = &acc + &g.mul(p, &lower[j][r]);
                        }
                    }
                    if !g.normal_form(&acc).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub(crate) fn graded_ring(&self) -> GradedRing<F> {
        GradedRing::new(&self.ring, self.quotient.as_ref())
    }

    /// `dim (C_i)_d`.
    pub fn piece_dim(&self, i: usize, d: i64) -> usize {
        let mut g = self.graded_ring();
        g.offsets(self.shifts(i), d).last().copied().unwrap_or(0)
    }

    /// Columns of the differential `(C_i)_d -> (C_{i-1})_d`, with the
    /// dimension of the target.
    pub(crate) fn differential_in_degree(
        &self,
        g: &mut GradedRing<F>,
        i: usize,
        d: i64,
    ) -> (usize, Vec<SparseVec<F::Elem>>) {
        let src = self.shifts(i).to_vec();
        let tgt = self.shifts(i.wrapping_sub(1)).to_vec();
        let tgt_off = g.offsets(&tgt, d);
        let rows = *tgt_off.last().expect("offsets");
        let Some(map) = self.differential(i) else {
            let n = *g.offsets(&src, d).last().expect("offsets");
            return (rows, vec![Vec::new(); n]);
        };
        let mut cols = Vec::new();
        for (c, s) in src.iter().enumerate() {
            let piece = g.piece(d - s);
            for mu in &piece.mons {
                cols.push(g.coords(&tgt, &tgt_off, &map[c], mu, d));
            }
        }
        (rows, cols)
    }

    /// Coordinates of `p * v` for `v` in `(C_i)_d`.
    pub(crate) fn multiply(
        &self,
        g: &mut GradedRing<F>,
        i: usize,
        d: i64,
        v: &[(usize, F::Elem)],
        p: &Polynomial<F>,
    ) -> SparseVec<F::Elem> {
        let shifts = self.shifts(i).to_vec();
        let off = g.offsets(&shifts, d);
        let e = d + p.homogeneous_degree().unwrap_or(0);
        let off_e = g.offsets(&shifts, e);
        let field = self.ring.field().clone();
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for (idx, x) in v {
            let (j, local) = locate(&off, *idx);
            let m = g.piece(d - shifts[j]).mons[local].clone();
            let target = g.piece(e - shifts[j]);
            for (n, c) in p.terms() {
                buf.clear();
                g.push_reduced(m.mul(n), &field.mul(c, x), &mut buf);
                for (mm, cc) in buf.drain(..) {
                    out.push((off_e[j] + target.index[&mm], cc));
                }
            }
        }
        combine(&field, out)
    }
}

fn subset_weight(mask: u64, degrees: &[i64]) -> i64 {
    (0..degrees.len())
        .filter(|k| mask >> k & 1 == 1)
        .map(|k| degrees[k])
        .sum()
}

/// The Koszul complex `K(f; A)` with `A` the ring of `f` (or its quotient
/// by `quotient`). `K_i` has one basis vector `e_s` per increasing tuple
/// `s = (s_0 < ... < s_{i-1})`, listed lexicographically, with shift
/// `sum deg f_{s_p}`; the boundary is `e_s -> sum_p (-1)^p f_{s_p} e_{s minus s_p}`.
pub fn koszul_complex<F: Field>(
    f: &[Polynomial<F>],
    quotient: Option<&GroebnerBasis<F>>,
) -> Result<GradedFreeComplex<F>> {
    let first = f
        .first()
        .ok_or_else(|| AlgebraError::ShapeError("empty sequence".into()))?;
    let ring = first.ring().clone();
    if f.len() > 63 {
        return Err(AlgebraError::ShapeError("at most 63 elements".into()));
    }
    let mut degrees = Vec::with_capacity(f.len());
    for p in f {
        if !same_ring(p.ring(), &ring) {
            return Err(AlgebraError::RingMismatch(p.ring().header()));
        }
        degrees.push(
            p.homogeneous_degree()
                .ok_or_else(|| AlgebraError::GradingError(format!("{} is not homogeneous", p)))?,
        );
    }
    let mut g = GradedRing::new(&ring, quotient);
    let f: Vec<Polynomial<F>> = f.iter().map(|p| g.normal_form(p)).collect();
    let n = f.len();
    let subsets: Vec<Vec<u64>> = (0..=n).map(|i| subsets_of_size(n, i)).collect();
    let shifts: Vec<Vec<i64>> = subsets
        .iter()
        .map(|ss| ss.iter().map(|&s| subset_weight(s, &degrees)).collect())
        .collect();
    let field = ring.field();
    let mut maps = Vec::with_capacity(n);
    for i in 1..=n {
        let index: HashMap<u64, usize> = subsets[i - 1].iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let cols = subsets[i]
            .iter()
            .map(|&s| {
                let mut col = vec![Polynomial::zero(&ring); subsets[i - 1].len()];
                let mut neg = false;
                for k in 0..n {
                    if s >> k & 1 == 1 {
                        let p = &f[k];
                        col[index[&(s & !(1 << k))]] = if neg {
                            p.scale(&field.neg(&field.one()))
                        } else {
                            p.clone()
                        };
                        neg = !neg;
                    }
                }
                col
            })
            .collect();
        maps.push(cols);
    }
    GradedFreeComplex::new(&ring, quotient, 0, shifts, maps)
}

/// `dim H_i(C)_d`: nullity of the outgoing differential in degree `d` minus
/// the rank of the incoming one.
pub fn homology_dims<F: Field>(c: &GradedFreeComplex<F>, i: usize, d: i64) -> usize {
    let mut g = c.graded_ring();
    homology_dim_with(c, &mut g, i, d)
}

fn homology_dim_with<F: Field>(c: &GradedFreeComplex<F>, g: &mut GradedRing<F>, i: usize, d: i64) -> usize {
    let field = c.ring().field();
    let dim = *g.offsets(c.shifts(i), d).last().expect("offsets");
    if dim == 0 {
        return 0;
    }
    let (rows, out) = c.differential_in_degree(g, i, d);
    let out_rank = rank_of_vectors(field, rows, &out);
    let (rows, inc) = c.differential_in_degree(g, i + 1, d);
    let inc_rank = if c.differential(i + 1).is_some() {
        rank_of_vectors(field, rows, &inc)
    } else {
        0
    };
    dim - out_rank - inc_rank
}

/// Homology dimensions of many cells, computed in parallel.
pub fn homology_table<F: Field>(c: &GradedFreeComplex<F>, cells: &[(usize, i64)]) -> BTreeMap<(usize, i64), usize> {
    cells
        .par_iter()
        .map(|&(i, d)| ((i, d), homology_dims(c, i, d)))
        .collect()
}

/// Lowest degree in which `C_i` can be nonzero.
fn lowest_degree<F: Field>(c: &GradedFreeComplex<F>, i: usize) -> Option<i64> {
    c.shifts(i).iter().min().copied()
}

/// Scans `H_i(C)_d` for `d <= cap` and returns the largest nonzero degree.
/// The end is `Verified` only when the cap is a proved bound.
pub fn homology_end<F: Field>(c: &GradedFreeComplex<F>, i: usize, cap: i64, source: CapSource) -> HomologyEnd {
    homology_end_report(c, i, cap, source, None)
}

/// As [`homology_end`], recording every scanned cell in `report`.
pub fn homology_end_report<F: Field>(
    c: &GradedFreeComplex<F>,
    i: usize,
    cap: i64,
    source: CapSource,
    report: Option<&mut HomologyReport>,
) -> HomologyEnd {
    let status = match source {
        CapSource::Exact => EndStatus::Verified,
        CapSource::Assumed => EndStatus::Capped,
    };
    let Some(lo) = lowest_degree(c, i) else {
        return HomologyEnd {
            index: i,
            end: End::NegInf,
            status: EndStatus::Verified,
            cap,
        };
    };
    let cells: Vec<(usize, i64)> = (lo..=cap).map(|d| (i, d)).collect();
    let dims = homology_table(c, &cells);
    if let Some(r) = report {
        for (&(i, d), &n) in &dims {
            r.record(i, d, n as u64);
        }
    }
    let end = End::max_of(dims.iter().filter(|(_, &n)| n > 0).map(|(&(_, d), _)| End::Finite(d)));
    HomologyEnd {
        index: i,
        end,
        status,
        cap,
    }
}

/// One graded piece of `H_i(C)`: chosen cycle representatives and a way to
/// express any cycle in terms of them modulo boundaries.
struct HomologyPiece<F: Field> {
    dim_c: usize,
    reps: Vec<SparseVec<F::Elem>>,
    augmented: Echelon<F>,
}

impl<F: Field> HomologyPiece<F> {
    fn new(c: &GradedFreeComplex<F>, g: &mut GradedRing<F>, i: usize, d: i64) -> Self {
        let field = c.ring().field().clone();
        let dim_c = *g.offsets(c.shifts(i), d).last().expect("offsets");
        let (rows, out) = c.differential_in_degree(g, i, d);
        let cycles = ScalarMatrix::from_columns(field.clone(), rows, out)
            .expect("columns in range")
            .rank_and_kernel()
            .1;
        let boundaries = if c.differential(i + 1).is_some() {
            c.differential_in_degree(g, i + 1, d).1
        } else {
            Vec::new()
        };
        let mut plain = Echelon::new(field.clone(), dim_c);
        for b in &boundaries {
            plain.insert(b);
        }
        let reps: Vec<SparseVec<F::Elem>> = cycles.into_iter().filter(|z| plain.insert(z)).collect();
        let mut augmented = Echelon::new(field.clone(), dim_c + reps.len());
        for b in &boundaries {
            augmented.insert(b);
        }
        for (k, z) in reps.iter().enumerate() {
            let mut v = z.clone();
            v.push((dim_c + k, field.one()));
            augmented.insert(&v);
        }
        HomologyPiece { dim_c, reps, augmented }
    }

    /// Coordinates of the class of the cycle `v`.
    fn class_of(&mut self, field: &F, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let r = self.augmented.reduce_full(v);
        debug_assert!(r.iter().all(|(i, _)| *i >= self.dim_c), "not a cycle");
        r.into_iter().map(|(i, x)| (i - self.dim_c, field.neg(&x))).collect()
    }
}

/// `H_i(C)` in degrees `lo..=hi` as a finite module over the ring of the
/// complex, with each variable acting by multiplication. Degrees outside
/// the range are treated as zero, so the range must contain every nonzero
/// degree for the result to be the full homology module.
pub fn homology_module<F: Field>(c: &GradedFreeComplex<F>, i: usize, lo: i64, hi: i64) -> FiniteModule<F> {
    let field = c.ring().field().clone();
    let weights = c.ring().weights().to_vec();
    let n = weights.len();
    let mut g = c.graded_ring();
    let mut pieces: BTreeMap<i64, HomologyPiece<F>> = BTreeMap::new();
    for d in lo..=hi {
        let p = HomologyPiece::new(c, &mut g, i, d);
        if !p.reps.is_empty() {
            pieces.insert(d, p);
        }
    }
    let dims: BTreeMap<i64, usize> = pieces.iter().map(|(&d, p)| (d, p.reps.len())).collect();
    let degrees: Vec<i64> = dims.keys().copied().collect();
    let mut action = vec![BTreeMap::new(); n];
    for &d in &degrees {
        let reps = pieces[&d].reps.clone();
        for k in 0..n {
            let e = d + weights[k] as i64;
            if !dims.contains_key(&e) {
                continue;
            }
            let xk = Polynomial::monomial(c.ring(), Monomial::var(n, k), field.one());
            let cols = reps
                .iter()
                .map(|z| {
                    let v = c.multiply(&mut g, i, d, z, &xk);
                    pieces.get_mut(&e).expect("piece").class_of(&field, &v)
                })
                .collect();
            action[k].insert(d, cols);
        }
    }
    FiniteModule::new(field, weights, dims, action).expect("consistent shapes")
}

/// Whether multiplication by `p` kills `H_i(C)_d`: every cycle times `p` is
/// a boundary.
pub fn annihilates_homology<F: Field>(c: &GradedFreeComplex<F>, i: usize, d: i64, p: &Polynomial<F>) -> bool {
    let field = c.ring().field().clone();
    let mut g = c.graded_ring();
    let (rows, out) = c.differential_in_degree(&mut g, i, d);
    let cycles = ScalarMatrix::from_columns(field.clone(), rows, out)
        .expect("columns in range")
        .rank_and_kernel()
        .1;
    let e = d + p.homogeneous_degree().unwrap_or(0);
    let dim_e = *g.offsets(c.shifts(i), e).last().expect("offsets");
    let mut bounds = Echelon::new(field, dim_e);
    if c.differential(i + 1).is_some() {
        for b in c.differential_in_degree(&mut g, i + 1, e).1 {
            bounds.insert(&b);
        }
    }
    cycles.iter().all(|z| {
        let v = c.multiply(&mut g, i, d, z, p);
        bounds.contains(&v)
    })
}
