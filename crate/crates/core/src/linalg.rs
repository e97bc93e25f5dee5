//! Sparse exact linear algebra: incremental echelon forms, rank, kernels and
//! linear solves over any [`Field`].

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldScalar};

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec<E> = Vec<(usize, E)>;

const NO_PIVOT: usize = usize::MAX;

/// Dense scratch space for reducing sparse vectors against pivot rows.
#[derive(Debug, Clone)]
struct Accumulator<E> {
    values: Vec<Option<E>>,
    touched: Vec<usize>,
    heap: BinaryHeap<Reverse<usize>>,
}

impl<E: Clone> Accumulator<E> {
    fn new(dim: usize) -> Self {
        Accumulator {
            values: vec![None; dim],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn load(&mut self, v: &[(usize, E)]) {
        for (i, x) in v {
            self.values[*i] = Some(x.clone());
            self.touched.push(*i);
            self.heap.push(Reverse(*i));
        }
    }

    /// Collects remaining nonzero entries (sorted) and clears the scratch.
    fn drain<F: Field<Elem = E>>(&mut self, field: &F) -> SparseVec<E> {
        self.heap.clear();
        let mut out = Vec::new();
        for &i in &self.touched {
            if let Some(x) = self.values[i].take() {
                if !field.is_zero(&x) {
                    out.push((i, x));
                }
            }
        }
        self.touched.clear();
        out.sort_unstable_by_key(|(i, _)| *i);
        out
    }

    /// `self -= coef * row`
    fn axpy<F: Field<Elem = E>>(&mut self, field: &F, coef: &E, row: &[(usize, E)]) {
        for (k, r) in row {
            match &mut self.values[*k] {
                Some(x) => *x = field.sub_mul(x, coef, r),
                slot @ None => {
                    *slot = Some(field.neg(&field.mul(coef, r)));
                    self.touched.push(*k);
                    self.heap.push(Reverse(*k));
                }
            }
        }
    }
}

/// An incrementally built row echelon form. Each stored row is monic at its
/// leading (smallest) index and no two rows share a leading index.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    pivot_of: Vec<usize>,
    rows: Vec<SparseVec<F::Elem>>,
    acc: Accumulator<F::Elem>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            pivot_of: vec![NO_PIVOT; dim],
            rows: Vec::new(),
            acc: Accumulator::new(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn is_pivot(&self, index: usize) -> bool {
        self.pivot_of[index] != NO_PIVOT
    }

    /// Reduces until the leading entry is not a pivot index. The result is
    /// zero iff `v` lies in the span of the stored rows.
    pub fn reduce(&mut self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        self.reduce_inner(v, false)
    }

    /// Eliminates every pivot index from `v`.
    pub fn reduce_full(&mut self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        self.reduce_inner(v, true)
    }

    fn reduce_inner(&mut self, v: &[(usize, F::Elem)], full: bool) -> SparseVec<F::Elem> {
        let field = &self.field;
        self.acc.load(v);
        while let Some(Reverse(c)) = self.acc.heap.pop() {
            let coef = match &self.acc.values[c] {
                Some(x) if !field.is_zero(x) => x.clone(),
                _ => continue,
            };
            let p = self.pivot_of[c];
            if p == NO_PIVOT {
                if full {
                    continue;
                }
                break;
            }
            self.acc.axpy(field, &coef, &self.rows[p]);
            self.acc.values[c] = None;
        }
        self.acc.drain(field)
    }

    /// Adds `v` to the span. Returns `true` if `v` was independent.
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, mut r: SparseVec<F::Elem>) -> bool {
        if r.is_empty() {
            return false;
        }
        let lead = r[0].0;
        debug_assert_eq!(self.pivot_of[lead], NO_PIVOT);
        let inv = self.field.inv(&r[0].1).expect("nonzero leading entry");
        for (_, x) in r.iter_mut() {
            *x = self.field.mul(x, &inv);
        }
        self.pivot_of[lead] = self.rows.len();
        self.rows.push(r);
        true
    }

    pub fn contains(&mut self, v: &[(usize, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Brings the stored rows to reduced row echelon form and returns them
    /// sorted by leading index.
    pub fn into_rref(mut self) -> Vec<SparseVec<F::Elem>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| Reverse(self.rows[i][0].0));
        for &i in &order {
            let row = std::mem::take(&mut self.rows[i]);
            let lead = row[0].clone();
            let tail = row[1..].to_vec();
            let mut reduced = self.reduce_full(&tail);
            reduced.insert(0, lead);
            self.rows[i] = reduced;
        }
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        rows
    }
}

/// A sparse matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> ScalarMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            field,
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from sparse columns. Entries are sorted and zero entries dropped.
    pub fn from_columns(field: F, rows: usize, columns: Vec<SparseVec<F::Elem>>) -> Result<Self> {
        let cols = columns.len();
        let mut cleaned = Vec::with_capacity(cols);
        for mut c in columns {
            c.sort_by_key(|(i, _)| *i);
            let mut out: SparseVec<F::Elem> = Vec::with_capacity(c.len());
            for (i, x) in c {
                if i >= rows {
                    return Err(AlgebraError::ShapeError(format!(
                        "row index {} out of range for {} rows",
                        i, rows
                    )));
                }
                match out.last_mut() {
                    Some((j, y)) if *j == i => *y = field.add(y, &x),
                    _ => out.push((i, x)),
                }
            }
            out.retain(|(_, x)| !field.is_zero(x));
            cleaned.push(out);
        }
        Ok(ScalarMatrix {
            field,
            rows,
            cols,
            columns: cleaned,
        })
    }

    /// Builds a matrix from self-describing entries, rejecting mixed fields.
    pub fn from_entries<I>(field: F, rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, FieldScalar)>,
    {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, s) in entries {
            if c >= cols {
                return Err(AlgebraError::ShapeError(format!(
                    "column index {} out of range for {} columns",
                    c, cols
                )));
            }
            columns[c].push((r, field.from_scalar(&s)?));
        }
        Self::from_columns(field, rows, columns)
    }

    pub fn from_dense(field: F, data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut columns = vec![Vec::new(); cols];
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, &v) in row.iter().enumerate() {
                let x = field.from_i64(v);
                if !field.is_zero(&x) {
                    columns[j].push((i, x));
                }
            }
        }
        ScalarMatrix {
            field,
            rows,
            cols,
            columns,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        let columns = (0..n).map(|i| vec![(i, one.clone())]).collect();
        ScalarMatrix {
            field,
            rows: n,
            cols: n,
            columns,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn column(&self, j: usize) -> &[(usize, F::Elem)] {
        &self.columns[j]
    }
    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        match self.columns[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                columns[*i].push((j, x.clone()));
            }
        }
        ScalarMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    pub fn mul_vec(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if x.len() != self.cols {
            return Err(AlgebraError::ShapeError(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for (col, xj) in self.columns.iter().zip(x) {
            if f.is_zero(xj) {
                continue;
            }
            for (i, a) in col {
                out[*i] = f.add(&out[*i], &f.mul(a, xj));
            }
        }
        Ok(out)
    }

    /// Matrix rank. Coordinates are relabelled by ascending occurrence count
    /// and columns inserted by ascending weight, a static Markowitz ordering
    /// that keeps fill-in low on very sparse boundary matrices.
    pub fn rank(&self) -> usize {
        rank_of_vectors(&self.field, self.rows, &self.columns)
    }

    /// Rows of the matrix as sparse vectors over column indices.
    pub fn row_vectors(&self) -> Vec<SparseVec<F::Elem>> {
        self.transpose().columns
    }

    /// Reduced row echelon form (nonzero rows only, natural column order).
    pub fn rref(&self) -> Vec<SparseVec<F::Elem>> {
        let mut rows = self.row_vectors();
        rows.sort_by_key(|r| r.len());
        let mut ech = Echelon::new(self.field.clone(), self.cols);
        for r in &rows {
            ech.insert(r);
        }
        ech.into_rref()
    }

    /// Rank together with a kernel basis. The basis is the one read off the
    /// reduced row echelon form: vector `k` has a 1 in the `k`-th free column
    /// and zeros in all other free columns.
    pub fn rank_and_kernel(&self) -> (usize, Vec<SparseVec<F::Elem>>) {
        let rref = self.rref();
        let rank = rref.len();
        (rank, kernel_from_rref(&self.field, self.cols, &rref))
    }

    /// Same as [`rank_and_kernel`](Self::rank_and_kernel) with dense vectors.
    pub fn rank_and_kernel_dense(&self) -> (usize, Vec<Vec<F::Elem>>) {
        let (r, k) = self.rank_and_kernel();
        let dense = k.into_iter().map(|v| densify(&self.field, self.cols, &v)).collect();
        (r, dense)
    }

    /// Solves `self * x = b`. Free coordinates are set to zero.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(AlgebraError::ShapeError(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let bcol = self.cols;
        let mut rows = self.row_vectors();
        for (i, bi) in b.iter().enumerate() {
            if !f.is_zero(bi) {
                rows[i].push((bcol, bi.clone()));
            }
        }
        let mut ech = Echelon::new(f.clone(), self.cols + 1);
        for r in &rows {
            ech.insert(r);
        }
        let rref = ech.into_rref();
        let mut x = vec![f.zero(); self.cols];
        for r in &rref {
            let lead = r[0].0;
            if lead == bcol {
                return Ok(None);
            }
            if let Some((_, v)) = r.last().filter(|(i, _)| *i == bcol) {
                x[lead] = v.clone();
            }
        }
        Ok(Some(x))
    }
}

pub fn densify<F: Field>(field: &F, dim: usize, v: &[(usize, F::Elem)]) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sparsify<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Kernel basis from a reduced row echelon form over `ncols` columns.
pub fn kernel_from_rref<F: Field>(field: &F, ncols: usize, rref: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut is_pivot = vec![false; ncols];
    for r in rref {
        is_pivot[r[0].0] = true;
    }
    let mut kernel: Vec<SparseVec<F::Elem>> = vec![Vec::new(); ncols];
    for r in rref {
        let lead = r[0].0;
        for (k, v) in &r[1..] {
            if !is_pivot[*k] {
                kernel[*k].push((lead, field.neg(v)));
            }
        }
    }
    let mut out = Vec::new();
    for (f, mut v) in kernel.into_iter().enumerate() {
        if is_pivot[f] {
            continue;
        }
        v.push((f, field.one()));
        v.sort_unstable_by_key(|(i, _)| *i);
        out.push(v);
    }
    out
}

/// Rank of a family of sparse vectors in a space of dimension `dim`.
pub fn rank_of_vectors<F: Field>(field: &F, dim: usize, vectors: &[SparseVec<F::Elem>]) -> usize {
    if vectors.is_empty() || dim == 0 {
        return 0;
    }
    let mut count = vec![0usize; dim];
    for v in vectors {
        for (i, _) in v {
            count[*i] += 1;
        }
    }
    let mut coords: Vec<usize> = (0..dim).collect();
    coords.sort_by_key(|&i| (count[i], i));
    let mut relabel = vec![0usize; dim];
    for (new, &old) in coords.iter().enumerate() {
        relabel[old] = new;
    }
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&j| (vectors[j].len(), j));
    let mut ech = Echelon::new(field.clone(), dim);
    let mut buf = Vec::new();
    for j in order {
        buf.clear();
        buf.extend(vectors[j].iter().map(|(i, x)| (relabel[*i], x.clone())));
        buf.sort_unstable_by_key(|(i, _)| *i);
        ech.insert(&buf);
        if ech.rank() == dim {
            break;
        }
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn identity_over_f7() {
        let f = PrimeField::new(7).unwrap();
        let m = ScalarMatrix::identity(f, 3);
        let (r, k) = m.rank_and_kernel();
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn proportional_rows_over_q() {
        let m = ScalarMatrix::from_dense(RationalField, &[vec![1, 2], vec![2, 4]]);
        let (r, k) = m.rank_and_kernel_dense();
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
    }

    #[test]
    fn mixed_fields_rejected() {
        let f = PrimeField::new(7).unwrap();
        let entries = vec![
            (0, 0, FieldScalar::Fp { value: 1, p: 7 }),
            (1, 1, FieldScalar::Fp { value: 1, p: 11 }),
        ];
        assert!(matches!(
            ScalarMatrix::from_entries(f, 2, 2, entries),
            Err(AlgebraError::FieldMismatch(_))
        ));
    }

    #[test]
    fn solve_cases() {
        let f = PrimeField::new(101).unwrap();
        let id = ScalarMatrix::identity(f, 3);
        assert_eq!(id.solve(&[1, 0, 0]).unwrap(), Some(vec![1, 0, 0]));
        let z = ScalarMatrix::zeros(f, 2, 2);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        assert!(matches!(z.solve(&[1]), Err(AlgebraError::ShapeError(_))));
    }

    fn random_matrix(seed: u64, rows: usize, cols: usize, density: f64) -> ScalarMatrix<PrimeField> {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if rng.gen_bool(density) {
                            rng.gen_range(0..101)
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        ScalarMatrix::from_dense(f, &data)
    }

    #[test]
    fn random_20x30_kernel_is_annihilated() {
        for seed in 0..20 {
            let m = random_matrix(seed, 20, 30, 0.3);
            let (r, ker) = m.rank_and_kernel_dense();
            assert_eq!(r + ker.len(), 30);
            for v in &ker {
                assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == 0));
            }
            // independence: the kernel basis has full rank
            let cols: Vec<_> = ker.iter().map(|v| sparsify(m.field(), v)).collect();
            assert_eq!(rank_of_vectors(m.field(), 30, &cols), ker.len());
            assert_eq!(m.rank(), r);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn rank_equals_transpose_rank(seed in 0u64..10_000, rows in 1usize..12, cols in 1usize..12) {
            let m = random_matrix(seed, rows, cols, 0.4);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_invariant_under_row_ops(seed in 0u64..10_000, rows in 2usize..10, cols in 1usize..10, s in 1i64..100) {
            let f = PrimeField::new(101).unwrap();
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let mut data: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..101) } else { 0 }).collect())
                .collect();
            let m = ScalarMatrix::from_dense(f, &data);
            data.swap(0, 1);
            for x in data[rows - 1].iter_mut() {
                *x *= s;
            }
            let t = ScalarMatrix::from_dense(f, &data);
            prop_assert_eq!(m.rank(), t.rank());
        }

        #[test]
        fn solve_recovers_image(seed in 0u64..10_000, rows in 1usize..10, cols in 1usize..10) {
            let m = random_matrix(seed, rows, cols, 0.5);
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed ^ 0xabc);
            let x: Vec<u32> = (0..cols).map(|_| rng.gen_range(0..101)).collect();
            let b = m.mul_vec(&x).unwrap();
            let y = m.solve(&b).unwrap().expect("b is in the image");
            prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
        }
    }
}
