//! Hilbert series of quotients by monomial ideals, and searches for regular
//! sequences certified by Hilbert series.

use crate::error::Result;
use crate::ext::End;
use crate::field::Field;
use crate::poly::{minimalize, Monomial, MonomialOrder, Polynomial, Ring};

use super::ideal::{buchberger, GroebnerBasis};

/// A polynomial in `t` with integer coefficients, lowest degree first.
pub type TPoly = Vec<i128>;

fn trim(mut p: TPoly) -> TPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add(a: &[i128], b: &[i128]) -> TPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn shift(a: &[i128], d: usize) -> TPoly {
    let mut out = vec![0; d];
    out.extend_from_slice(a);
    trim(out)
}

/// `a * (1 - t^d)`.
pub fn times_one_minus(a: &[i128], d: usize) -> TPoly {
    let mut out = a.to_vec();
    out.resize(a.len() + d, 0);
    for (i, x) in a.iter().enumerate() {
        out[i + d] -= x;
    }
    trim(out)
}

/// Numerator `K(t)` of the Hilbert series `K(t) / prod (1 - t^{w_j})` of
/// `S / (gens)` for a monomial ideal.
pub fn monomial_numerator(gens: &[Monomial], weights: &[u32]) -> TPoly {
    let gens = minimalize(gens.to_vec());
    numerator_rec(gens, weights)
}

fn numerator_rec(gens: Vec<Monomial>, weights: &[u32]) -> TPoly {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.len() == 1 {
        return times_one_minus(&[1], gens[0].degree(weights) as usize);
    }
    // Split off a generator coprime to all the others.
    if let Some(k) = (0..gens.len()).find(|&k| (0..gens.len()).all(|j| j == k || gens[j].is_coprime(&gens[k]))) {
        let d = gens[k].degree(weights) as usize;
        let rest: Vec<Monomial> = gens
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, g)| g.clone())
            .collect();
        return times_one_minus(&numerator_rec(rest, weights), d);
    }
    // Pivot on a power of the variable occurring in most generators:
    // HS(S/I) = HS(S/(I + p)) + t^deg(p) HS(S/(I : p)).
    let n = weights.len();
    let x = (0..n)
        .max_by_key(|&i| {
            (
                gens.iter().filter(|g| g.exponents()[i] > 0).count(),
                std::cmp::Reverse(i),
            )
        })
        .expect("variables");
    let mut exps: Vec<u16> = gens.iter().map(|g| g.exponents()[x]).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let mut e = exps[exps.len() / 2];
    let pure_min = gens
        .iter()
        .filter(|g| g.exponents().iter().enumerate().all(|(i, &a)| i == x || a == 0))
        .map(|g| g.exponents()[x])
        .min();
    if let Some(a) = pure_min {
        e = e.min(a - 1);
    }
    debug_assert!(e >= 1);
    let mut pe = vec![0u16; n];
    pe[x] = e;
    let p = Monomial::new(pe);
    let mut sum = gens.clone();
    sum.push(p.clone());
    let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&p)).collect();
    let a = numerator_rec(minimalize(sum), weights);
    let b = numerator_rec(minimalize(colon), weights);
    add(&a, &shift(&b, p.degree(weights) as usize))
}

/// Hilbert series numerator of `R / I` from a Groebner basis of `I`.
pub fn hilbert_numerator<F: Field>(gb: &GroebnerBasis<F>) -> TPoly {
    monomial_numerator(gb.lead_monomials(), gb.ring().weights())
}

/// Coefficients of `K(t) / prod (1 - t^{w_j})` in degrees `0..=upto`.
pub fn hilbert_function(numerator: &[i128], weights: &[u32], upto: usize) -> Vec<i128> {
    let mut s = vec![0i128; upto + 1];
    for (i, x) in numerator.iter().enumerate().take(upto + 1) {
        s[i] = *x;
    }
    for &w in weights {
        let w = w as usize;
        for i in w..=upto {
            s[i] += s[i - w];
        }
    }
    s
}

/// Krull dimension read off the Hilbert series: the number of variables
/// minus the multiplicity of `t = 1` as a root of the numerator. `None` for
/// the zero quotient.
pub fn krull_dimension(numerator: &[i128], nvars: usize) -> Option<usize> {
    let mut p = trim(numerator.to_vec());
    if p.is_empty() {
        return None;
    }
    let mut mult = 0;
    // Divide by (1 - t) while t = 1 is a root.
    while p.iter().sum::<i128>() == 0 {
        // p(t) = (1 - t) q(t): q_k = sum_{i <= k} p_i.
        let mut q = Vec::with_capacity(p.len() - 1);
        let mut acc = 0;
        for x in &p[..p.len() - 1] {
            acc += x;
            q.push(acc);
        }
        p = trim(q);
        mult += 1;
    }
    Some(nvars - mult)
}

/// Result of a regular sequence search.
#[derive(Debug, Clone)]
pub struct RegularSequence<F: Field> {
    /// Indices into the candidate list, in the order they were applied.
    pub indices: Vec<usize>,
    /// Groebner basis of `L + (candidates[indices])`.
    pub quotient: GroebnerBasis<F>,
    /// End of the finite-length quotient.
    pub end: End,
}

/// Searches for a subsequence of `candidates` that is a regular sequence on
/// `T / L` and leaves a quotient of finite length. Each step is certified by
/// `HS(N / cN) = (1 - t^deg c) HS(N)`, which holds exactly when `c` is a
/// nonzerodivisor on the graded module `N`. Gives up after `budget` tests.
pub fn regular_sequence<F: Field>(
    ring: &Ring<F>,
    ideal: &[Polynomial<F>],
    candidates: &[Polynomial<F>],
    budget: usize,
) -> Result<Option<RegularSequence<F>>> {
    let gb = buchberger(ring, ideal, MonomialOrder::GRevLex)?;
    let k = hilbert_numerator(&gb);
    let Some(dim) = krull_dimension(&k, ring.nvars()) else {
        return Ok(None);
    };
    let mut tests = 0;
    let mut chosen = Vec::new();
    let found = search(
        ring,
        ideal,
        candidates,
        &gb,
        &k,
        dim,
        0,
        &mut chosen,
        &mut tests,
        budget,
    )?;
    Ok(found.map(|quotient| {
        let end = quotient.quotient_end();
        RegularSequence {
            indices: chosen,
            quotient,
            end,
        }
    }))
}

#[allow(clippy::too_many_arguments)]
fn search<F: Field>(
    ring: &Ring<F>,
    ideal: &[Polynomial<F>],
    candidates: &[Polynomial<F>],
    gb: &GroebnerBasis<F>,
    k: &TPoly,
    dim: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    tests: &mut usize,
    budget: usize,
) -> Result<Option<GroebnerBasis<F>>> {
    if dim == 0 {
        return Ok(Some(gb.clone()));
    }
    for c in start..candidates.len() {
        if candidates.len() - c < dim || *tests >= budget {
            break;
        }
        let Some(w) = candidates[c].homogeneous_degree() else {
            continue;
        };
        *tests += 1;
        let mut gens = ideal.to_vec();
        gens.extend(chosen.iter().map(|&i| candidates[i].clone()));
        gens.push(candidates[c].clone());
        let next = buchberger(ring, &gens, MonomialOrder::GRevLex)?;
        let kn = hilbert_numerator(&next);
        if kn == times_one_minus(k, w as usize) {
            chosen.push(c);
            if let Some(found) = search(
                ring,
                ideal,
                candidates,
                &next,
                &kn,
                dim - 1,
                c + 1,
                chosen,
                tests,
                budget,
            )? {
                return Ok(Some(found));
            }
            chosen.pop();
        }
    }
    Ok(None)
}
