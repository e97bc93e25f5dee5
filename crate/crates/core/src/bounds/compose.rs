//! Maxima over compositions: `T_j(I)` and `U_j(f)`.

use crate::error::{AlgebraError, Result};
use crate::ext::End;

/// `max { parts[i_1] + ... + parts[i_r] : i_k > 0, i_1 + ... + i_r = j }`,
/// `-inf` for `j <= 0`. `parts[0]` is ignored.
pub fn max_over_compositions(parts: &[End], j: i64) -> Result<End> {
    if j <= 0 {
        return Ok(End::NegInf);
    }
    let j = j as usize;
    if parts.len() <= j {
        return Err(AlgebraError::InsufficientData(format!(
            "values for indices 1..={} are needed, {} supplied",
            j,
            parts.len().saturating_sub(1)
        )));
    }
    // best[s]: maximum over compositions of s, with the empty one for s = 0
    let mut best = vec![End::NegInf; j + 1];
    best[0] = End::Finite(0);
    for s in 1..=j {
        best[s] = End::max_of((1..=s).map(|i| best[s - i] + parts[i]));
    }
    Ok(best[j])
}

/// The same maximum by listing every composition; exponential, for tests.
pub fn max_over_compositions_brute(parts: &[End], j: i64) -> Result<End> {
    fn go(parts: &[End], left: usize, acc: End, out: &mut End) {
        if left == 0 {
            *out = (*out).max(acc);
            return;
        }
        for i in 1..=left {
            go(parts, left - i, acc + parts[i], out);
        }
    }
    if j <= 0 {
        return Ok(End::NegInf);
    }
    if parts.len() <= j as usize {
        return Err(AlgebraError::InsufficientData(format!(
            "values for indices 1..={} are needed",
            j
        )));
    }
    let mut out = End::NegInf;
    go(parts, j as usize, End::Finite(0), &mut out);
    Ok(out)
}

/// `T_j(I)` from `t_ideal[i] = t^B_i(I)`.
pub fn t_of(t_ideal: &[End], j: i64) -> Result<End> {
    max_over_compositions(t_ideal, j)
}

/// `t^B_i(k)` for `B` polynomial with generator degrees `b_degrees`: the sum
/// of the `i` largest degrees, `-inf` past the number of variables.
pub fn residue_field_t(b_degrees: &[i64], i: usize) -> End {
    let mut sorted = b_degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if i > sorted.len() {
        End::NegInf
    } else {
        End::Finite(sorted[..i].iter().sum())
    }
}

/// The parts `t^B_i(B_+) + fin B/I = t^B_{i+1}(k) + fin B/I` for `i <= upto`.
pub fn u_parts(b_degrees: &[i64], quotient_end: End, upto: usize) -> Vec<End> {
    (0..=upto)
        .map(|i| residue_field_t(b_degrees, i + 1) + quotient_end)
        .collect()
}

/// `(e_1 + e_2 + fin B/I) j` for `j > 0`, with `e_2 = -inf` when `B` has
/// fewer than two variables.
pub fn u_closed_form(b_degrees: &[i64], quotient_end: End, j: i64) -> End {
    if j <= 0 {
        return End::NegInf;
    }
    (residue_field_t(b_degrees, 2) + quotient_end) * j
}

/// `U_j(f)` for `B` polynomial, by dynamic programming, checked against the
/// closed form.
pub fn u_of(b_degrees: &[i64], quotient_end: End, j: i64) -> Result<End> {
    if b_degrees.is_empty() {
        return Err(AlgebraError::InsufficientData(
            "generator degrees of B are missing".into(),
        ));
    }
    let parts = u_parts(b_degrees, quotient_end, j.max(0) as usize);
    let u = max_over_compositions(&parts, j)?;
    assert_eq!(
        u,
        u_closed_form(b_degrees, quotient_end, j),
        "U_{} disagrees with its closed form",
        j
    );
    Ok(u)
}
