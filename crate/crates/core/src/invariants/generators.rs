use std::collections::HashMap;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::ext::End;
use crate::field::Field;
use crate::groebner::{t1_of_ideal, IdealData, RingMapGraph};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{Monomial, PolyRing, Polynomial, Ring};

use super::group::GroupAction;

fn coords<F: Field>(index: &HashMap<Monomial, usize>, p: &Polynomial<F>) -> SparseVec<F::Elem> {
    let mut v: SparseVec<F::Elem> = p.terms().iter().map(|(m, c)| (index[m], c.clone())).collect();
    v.sort_by_key(|e| e.0);
    v
}

/// Minimal generators of the invariant ring in degrees `1..=max_degree`.
///
/// In each degree the invariants are reduced modulo the products of
/// generators of lower degree; what remains is kept, made monic. With
/// `max_degree = |G|` this generates the whole invariant ring in the
/// non-modular case.
pub fn invariant_generators<F: Field>(group: &GroupAction<F>, max_degree: i64) -> Result<Vec<Polynomial<F>>> {
    group.require_non_modular()?;
    let ring = group.ring();
    let field = ring.field().clone();
    let mut gens: Vec<Polynomial<F>> = Vec::new();
    let mut spaces: Vec<Vec<Polynomial<F>>> = vec![vec![Polynomial::one(ring)]];
    for d in 1..=max_degree {
        let basis = group.invariant_space(d)?;
        let monos = ring.monomials_of_degree(d);
        let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ech = Echelon::new(field.clone(), monos.len());
        for f in &gens {
            let e = d - f.homogeneous_degree().expect("homogeneous");
            for h in &spaces[e as usize] {
                ech.insert(&coords(&index, &(f * h)));
            }
        }
        for b in &basis {
            let r = ech.reduce_full(&coords(&index, b));
            if ech.insert(&r) {
                let p = Polynomial::from_terms(ring, r.into_iter().map(|(i, c)| (monos[i].clone(), c)));
                gens.push(p.monic());
            }
        }
        spaces.push(basis);
    }
    Ok(gens)
}

/// `tau = end(B / fB) + 1`, the smallest positive degree from which the
/// ideal generated by `f` contains everything.
pub fn tau<F: Field>(ring: &Ring<F>, f: &[Polynomial<F>]) -> Result<End> {
    let ideal = IdealData::new(ring, f.to_vec())?;
    Ok(ideal.quotient_end() + 1)
}

/// Which degree threshold a trimming used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrimClause {
    /// Keep generators of degree at most `end(B/I) + 1`.
    EndPlusOne,
    /// Keep generators of degree at most `end(B/I)`; valid when
    /// `t_1(I) <= end(B/I) + 1` and `B` is a domain of dimension at least 2.
    End,
}

#[derive(Debug, Clone)]
pub struct TrimOutcome<F: Field> {
    pub kept: Vec<Polynomial<F>>,
    pub clause: TrimClause,
    pub threshold: i64,
    /// Every input generator lies in the subalgebra generated by `kept`.
    pub generates_all: bool,
}

/// Drops generators of a subalgebra `C` of `B` above the degree threshold
/// allowed for an inclusion `C -> B` that splits, where `I = C_+ B` is
/// generated by the inputs. The second clause is used when its hypotheses
/// hold. The outcome records whether the kept elements still generate
/// every input, checked by subalgebra membership.
pub fn trim_generators<F: Field>(ring: &Ring<F>, gens: &[Polynomial<F>]) -> Result<TrimOutcome<F>> {
    let ideal = IdealData::new(ring, gens.to_vec())?;
    let e = ideal.quotient_end();
    let clause = if ring.nvars() >= 2 && t1_of_ideal(&ideal)? <= e + 1 {
        TrimClause::End
    } else {
        TrimClause::EndPlusOne
    };
    trim_generators_with(ring, gens, clause)
}

/// [`trim_generators`] with the clause chosen by the caller, whether or not
/// its hypotheses hold.
pub fn trim_generators_with<F: Field>(
    ring: &Ring<F>,
    gens: &[Polynomial<F>],
    clause: TrimClause,
) -> Result<TrimOutcome<F>> {
    let ideal = IdealData::new(ring, gens.to_vec())?;
    let Some(e) = ideal.quotient_end().finite() else {
        return Err(AlgebraError::NotFiniteColength);
    };
    let threshold = match clause {
        TrimClause::EndPlusOne => e + 1,
        TrimClause::End => e,
    };
    let kept: Vec<Polynomial<F>> = gens
        .iter()
        .filter(|g| g.homogeneous_degree().is_some_and(|d| d <= threshold))
        .cloned()
        .collect();
    let generates_all = generates_all(ring, &kept, gens)?;
    Ok(TrimOutcome {
        kept,
        clause,
        threshold,
        generates_all,
    })
}

/// Whether every polynomial of `targets` lies in the subalgebra generated by `gens`.
pub fn generates_all<F: Field>(ring: &Ring<F>, gens: &[Polynomial<F>], targets: &[Polynomial<F>]) -> Result<bool> {
    if gens.is_empty() {
        return Ok(targets.iter().all(|t| t.homogeneous_degree().is_none_or(|d| d == 0)));
    }
    let weights = gens
        .iter()
        .map(|g| match g.homogeneous_degree() {
            Some(d) if d > 0 => Ok(d as u32),
            _ => Err(AlgebraError::GradingError(format!(
                "{} is not homogeneous of positive degree",
                g
            ))),
        })
        .collect::<Result<Vec<u32>>>()?;
    let source = PolyRing::weighted("u", weights, ring.field().clone())?;
    let graph = RingMapGraph::new(&source, ring, gens)?;
    for t in targets {
        if graph.preimage(t)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
