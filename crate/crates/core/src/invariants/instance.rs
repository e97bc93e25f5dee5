use crate::error::{AlgebraError, Result};
use crate::ext::End;
use crate::field::Field;
use crate::groebner::{kernel_of_ring_map, IdealData};
use crate::poly::{PolyRing, Polynomial, Ring};

use super::generators::invariant_generators;
use super::group::GroupAction;

/// The data of an invariant ring `R = B^G` presented as `S -> R`, with
/// `S` the weighted polynomial ring on the minimal generators `f` of `R`.
#[derive(Debug, Clone)]
pub struct DerksenInstance<F: Field> {
    pub b: Ring<F>,
    pub f: Vec<Polynomial<F>>,
    pub s: Ring<F>,
    /// The ideal `fB` of `B`.
    pub ideal: IdealData<F>,
    pub tau: End,
    /// The kernel of `S -> B`, so that `R = S/J`.
    pub j: Option<IdealData<F>>,
}

impl<F: Field> DerksenInstance<F> {
    /// Assembles an instance from homogeneous generators of positive degree.
    /// The variables of `S` are named `prefix1, prefix2, ...`.
    pub fn from_generators(b: &Ring<F>, f: Vec<Polynomial<F>>, prefix: &str, with_kernel: bool) -> Result<Self> {
        if f.is_empty() {
            return Err(AlgebraError::InsufficientData("no generators".into()));
        }
        let weights = f
            .iter()
            .map(|g| match g.homogeneous_degree() {
                Some(d) if d > 0 => Ok(d as u32),
                _ => Err(AlgebraError::GradingError(format!(
                    "{} is not homogeneous of positive degree",
                    g
                ))),
            })
            .collect::<Result<Vec<u32>>>()?;
        let s = PolyRing::weighted(prefix, weights, b.field().clone())?;
        let ideal = IdealData::new(b, f.clone())?;
        let tau = ideal.quotient_end() + 1;
        let j = if with_kernel {
            Some(kernel_of_ring_map(&s, b, &f)?)
        } else {
            None
        };
        Ok(DerksenInstance {
            b: b.clone(),
            f,
            s,
            ideal,
            tau,
            j,
        })
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.s.weights().iter().map(|&w| w as i64).collect()
    }

    /// `end(B/I)`.
    pub fn quotient_end(&self) -> End {
        self.ideal.quotient_end()
    }
}

/// Minimal invariant generators up to degree `|G|`, `tau`, `S` and,
/// optionally, the kernel `J` of `S -> B`.
pub fn build_derksen_instance<F: Field>(group: &GroupAction<F>, with_kernel: bool) -> Result<DerksenInstance<F>> {
    group.require_non_modular()?;
    let order = group.order() as i64;
    let f = invariant_generators(group, order)?;
    if f.is_empty() {
        return Err(AlgebraError::InsufficientData(
            "the invariant ring has no generators of positive degree".into(),
        ));
    }
    for g in &f {
        assert!(group.is_invariant(g)?, "generator {} is not invariant", g);
        assert!(
            g.homogeneous_degree().is_some_and(|d| d <= order),
            "generator {} above the Noether bound",
            g
        );
    }
    let inst = DerksenInstance::from_generators(group.ring(), f, "u", with_kernel)?;
    assert!(
        inst.tau <= End::Finite(order),
        "tau {} exceeds |G| = {}",
        inst.tau,
        order
    );
    Ok(inst)
}
