use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::linalg::{Echelon, ScalarMatrix, SparseVec};
use crate::poly::{Monomial, Polynomial, Ring};

/// Row-major dense square matrix.
type Dense<E> = Vec<E>;

/// A finite group of invertible matrices acting on the variables of a
/// standard graded polynomial ring `B`: the element `g` sends `x_i` to
/// `sum_j g[i][j] x_j`.
#[derive(Debug, Clone)]
pub struct GroupAction<F: Field> {
    ring: Ring<F>,
    generators: Vec<ScalarMatrix<F>>,
    elements: Vec<Dense<F::Elem>>,
}

fn dense_of<F: Field>(m: &ScalarMatrix<F>) -> Dense<F::Elem> {
    let n = m.rows();
    let mut out = vec![m.field().zero(); n * n];
    for c in 0..n {
        for (r, x) in m.column(c) {
            out[r * n + c] = x.clone();
        }
    }
    out
}

fn dense_mul<F: Field>(field: &F, n: usize, a: &[F::Elem], b: &[F::Elem]) -> Dense<F::Elem> {
    let mut out = vec![field.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let x = &a[i * n + j];
            if field.is_zero(x) {
                continue;
            }
            for k in 0..n {
                out[i * n + k] = field.add(&out[i * n + k], &field.mul(x, &b[j * n + k]));
            }
        }
    }
    out
}

/// Closes the generators under multiplication, breadth first. Fails when
/// a generator is singular or the closure has more than `cap` elements.
pub fn enumerate_group<F: Field>(
    ring: &Ring<F>,
    generators: Vec<ScalarMatrix<F>>,
    cap: usize,
) -> Result<GroupAction<F>> {
    let n = ring.nvars();
    if !ring.is_standard_graded() {
        return Err(AlgebraError::GradingError(
            "the group must act on a standard graded ring".into(),
        ));
    }
    let field = ring.field().clone();
    for g in &generators {
        if g.rows() != n || g.cols() != n {
            return Err(AlgebraError::ShapeError(format!(
                "generator is {}x{}, expected {}x{}",
                g.rows(),
                g.cols(),
                n,
                n
            )));
        }
        if g.field() != &field {
            return Err(AlgebraError::FieldMismatch(format!(
                "generator over {}",
                g.field().tag()
            )));
        }
        if g.rank() < n {
            return Err(AlgebraError::NotInvertible);
        }
    }
    let gens: Vec<Dense<F::Elem>> = generators.iter().map(dense_of).collect();
    let identity = dense_of(&ScalarMatrix::identity(field.clone(), n));
    let mut seen: HashSet<Dense<F::Elem>> = HashSet::new();
    let mut elements = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(e) = queue.pop_front() {
        for g in &gens {
            let next = dense_mul(&field, n, &e, g);
            if seen.insert(next.clone()) {
                if seen.len() > cap.max(1) {
                    return Err(AlgebraError::GroupTooLarge { cap });
                }
                queue.push_back(next);
            }
        }
        elements.push(e);
    }
    Ok(GroupAction {
        ring: ring.clone(),
        generators,
        elements,
    })
}

impl<F: Field> GroupAction<F> {
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn dimension(&self) -> usize {
        self.ring.nvars()
    }

    pub fn generators(&self) -> &[ScalarMatrix<F>] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All group elements as matrices, the identity first.
    pub fn elements(&self) -> Vec<ScalarMatrix<F>> {
        let n = self.dimension();
        self.elements
            .iter()
            .map(|e| {
                let cols = (0..n)
                    .map(|c| {
                        (0..n)
                            .filter(|&r| !self.field().is_zero(&e[r * n + c]))
                            .map(|r| (r, e[r * n + c].clone()))
                            .collect()
                    })
                    .collect();
                ScalarMatrix::from_columns(self.field().clone(), n, cols).expect("square")
            })
            .collect()
    }

    /// Whether the characteristic does not divide the group order.
    pub fn is_non_modular(&self) -> bool {
        let p = self.field().characteristic();
        p == 0 || !(self.order() as u64).is_multiple_of(p)
    }

    pub(crate) fn require_non_modular(&self) -> Result<()> {
        if self.is_non_modular() {
            Ok(())
        } else {
            Err(AlgebraError::ModularNotSupported {
                p: self.field().characteristic(),
                order: self.order(),
            })
        }
    }

    fn images(&self, g: &[F::Elem]) -> Vec<Polynomial<F>> {
        let n = self.dimension();
        (0..n)
            .map(|i| Polynomial::from_terms(&self.ring, (0..n).map(|j| (Monomial::var(n, j), g[i * n + j].clone()))))
            .collect()
    }

    /// `g . p` for the `k`-th group element.
    pub fn act(&self, k: usize, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        p.substitute(&self.ring, &self.images(&self.elements[k]))
    }

    /// `g . p` for the `k`-th generator.
    pub fn act_by_generator(&self, k: usize, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        p.substitute(&self.ring, &self.images(&dense_of(&self.generators[k])))
    }

    pub fn is_invariant(&self, p: &Polynomial<F>) -> Result<bool> {
        for k in 0..self.generators.len() {
            if &self.act_by_generator(k, p)? != p {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The Reynolds operator `p -> (1/|G|) sum_g g.p`.
    pub fn reynolds(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.require_non_modular()?;
        let field = self.field();
        let mut acc = Polynomial::zero(&self.ring);
        for k in 0..self.order() {
            acc = &acc + &self.act(k, p)?;
        }
        let inv = field.inv(&field.from_i64(self.order() as i64)).expect("non-modular");
        Ok(acc.scale(&inv))
    }

    /// A basis of the invariants of degree `d`: the common kernel of the
    /// maps `g - 1` over the generators, on the monomial basis of `B_d`,
    /// in reduced echelon form.
    pub fn invariant_space(&self, d: i64) -> Result<Vec<Polynomial<F>>> {
        let monos = self.ring.monomials_of_degree(d);
        let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let nm = monos.len();
        let field = self.field().clone();
        let gens: Vec<Vec<Polynomial<F>>> = self.generators.iter().map(|g| self.images(&dense_of(g))).collect();
        let columns: Vec<SparseVec<F::Elem>> = monos
            .par_iter()
            .map(|m| {
                let p = Polynomial::monomial(&self.ring, m.clone(), field.one());
                let mut col = Vec::new();
                for (k, images) in gens.iter().enumerate() {
                    let q = p.substitute(&self.ring, images).expect("same ring");
                    let diff = &q - &p;
                    for (mm, c) in diff.terms() {
                        col.push((k * nm + index[mm], c.clone()));
                    }
                }
                col
            })
            .collect();
        let rows = nm * self.generators.len();
        let kernel = if rows == 0 {
            (0..nm).map(|i| vec![(i, field.one())]).collect()
        } else {
            ScalarMatrix::from_columns(field.clone(), rows, columns)?
                .rank_and_kernel()
                .1
        };
        let mut ech = Echelon::new(field, nm);
        for v in &kernel {
            ech.insert(v);
        }
        Ok(ech
            .into_rref()
            .into_iter()
            .map(|v| Polynomial::from_terms(&self.ring, v.into_iter().map(|(i, c)| (monos[i].clone(), c))))
            .collect())
    }

    /// `(1/|G|) sum_g trace(g on B_d)`, computed by brute force over the
    /// group elements. Equals the dimension of the invariants of degree `d`
    /// (reduced into the field) in the non-modular case.
    pub fn molien_coefficient(&self, d: i64) -> Result<F::Elem> {
        self.require_non_modular()?;
        let field = self.field().clone();
        let monos = self.ring.monomials_of_degree(d);
        let traces: Vec<F::Elem> = self
            .elements
            .par_iter()
            .map(|e| {
                let images = self.images(e);
                let mut t = field.zero();
                for m in &monos {
                    let p = Polynomial::monomial(&self.ring, m.clone(), field.one());
                    let q = p.substitute(&self.ring, &images).expect("same ring");
                    t = field.add(&t, &q.coefficient(m));
                }
                t
            })
            .collect();
        let sum = traces.iter().fold(field.zero(), |a, b| field.add(&a, b));
        let inv = field.inv(&field.from_i64(self.order() as i64)).expect("non-modular");
        Ok(field.mul(&sum, &inv))
    }
}
