use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::{same_ring, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};

use super::ideal::{buchberger, GroebnerBasis, IdealData};
use super::module::minimal_ideal_generators;

/// The graph of a ring map `source -> target`, `x_i -> images[i]`, with an
/// elimination basis of the graph ideal `(x_i - images[i])` in
/// `target (x) source`. Target variables come first and are eliminated.
pub struct RingMapGraph<F: Field> {
    source: Ring<F>,
    target: Ring<F>,
    graph: Ring<F>,
    basis: GroebnerBasis<F>,
}

impl<F: Field> RingMapGraph<F> {
    pub fn new(source: &Ring<F>, target: &Ring<F>, images: &[Polynomial<F>]) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(AlgebraError::ShapeError(format!(
                "{} images for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        if source.field() != target.field() {
            return Err(AlgebraError::FieldMismatch("source and target fields differ".into()));
        }
        for (i, p) in images.iter().enumerate() {
            if !same_ring(p.ring(), target) {
                return Err(AlgebraError::RingMismatch(p.ring().header()));
            }
            if p.homogeneous_degree() != Some(source.weights()[i] as i64) {
                return Err(AlgebraError::GradingError(format!(
                    "image {} of {} does not have degree {}",
                    p,
                    source.names()[i],
                    source.weights()[i]
                )));
            }
        }
        let nt = target.nvars();
        let names: Vec<String> = (0..nt)
            .map(|i| format!("t{}", i + 1))
            .chain((0..source.nvars()).map(|i| format!("s{}", i + 1)))
            .collect();
        let weights: Vec<u32> = target.weights().iter().chain(source.weights()).copied().collect();
        let graph = PolyRing::new(names, weights, target.field().clone())?;
        let gens: Vec<Polynomial<F>> = images
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let lifted = Self::lift_target(&graph, p);
                &graph.var(nt + i) - &lifted
            })
            .collect();
        let basis = buchberger(&graph, &gens, MonomialOrder::Elimination { block: nt })?;
        Ok(RingMapGraph {
            source: source.clone(),
            target: target.clone(),
            graph,
            basis,
        })
    }

    fn lift_target(graph: &Ring<F>, p: &Polynomial<F>) -> Polynomial<F> {
        let n = graph.nvars();
        Polynomial::from_terms(
            graph,
            p.terms().iter().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(n, 0);
                (Monomial::new(e), c.clone())
            }),
        )
    }

    fn drop_target(&self, p: &Polynomial<F>) -> Option<Polynomial<F>> {
        let nt = self.target.nvars();
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            if m.exponents()[..nt].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push((Monomial::new(m.exponents()[nt..].to_vec()), c.clone()));
        }
        Some(Polynomial::from_terms(&self.source, terms))
    }

    pub fn source(&self) -> &Ring<F> {
        &self.source
    }

    pub fn target(&self) -> &Ring<F> {
        &self.target
    }

    /// Minimal generators of the kernel.
    pub fn kernel(&self) -> Result<IdealData<F>> {
        let gens: Vec<Polynomial<F>> = self
            .basis
            .elements()
            .iter()
            .filter_map(|g| self.drop_target(g))
            .collect();
        let ideal = IdealData::new(&self.source, gens)?;
        let minimal = minimal_ideal_generators(&ideal)?;
        IdealData::new(&self.source, minimal)
    }

    /// Writes `p` as a polynomial in the images, if it lies in the subalgebra
    /// they generate.
    pub fn preimage(&self, p: &Polynomial<F>) -> Result<Option<Polynomial<F>>> {
        if !same_ring(p.ring(), &self.target) {
            return Err(AlgebraError::RingMismatch(p.ring().header()));
        }
        let lifted = Self::lift_target(&self.graph, p);
        let nf = self.basis.normal_form(&lifted)?;
        Ok(self.drop_target(&nf))
    }
}

/// Kernel of `source -> target`, `x_i -> images[i]`, by elimination. Every
/// returned generator is checked to map to zero.
pub fn kernel_of_ring_map<F: Field>(
    source: &Ring<F>,
    target: &Ring<F>,
    images: &[Polynomial<F>],
) -> Result<IdealData<F>> {
    let graph = RingMapGraph::new(source, target, images)?;
    let kernel = graph.kernel()?;
    for g in kernel.generators() {
        assert!(
            g.substitute(target, images)?.is_zero(),
            "kernel element {} does not map to zero",
            g
        );
    }
    Ok(kernel)
}
