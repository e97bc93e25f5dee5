//! Verdicts for every inequality, evaluated on a [`TorProfile`].

use serde_json::json;

use crate::error::{AlgebraError, Result};
use crate::ext::End;

use super::profile::{TSeries, TorProfile};
use super::verdict::{BoundVerdict, Gate, Head, Side};

pub(super) fn missing(what: &str) -> AlgebraError {
    AlgebraError::InsufficientData(format!("{} was not computed", what))
}

pub(super) fn need<'a>(s: &'a Option<TSeries>, what: &str) -> Result<&'a TSeries> {
    s.as_ref().ok_or_else(|| missing(what))
}

/// `t^A_i(B)` for `i` past the computed range is `-inf` once `i` exceeds
/// the number of variables of `A`.
pub(super) fn series_side(s: &TSeries, i: usize, nvars: usize) -> Result<Side> {
    if i >= s.len() && i > nvars && s.all_exact() {
        return Ok(Side::exact(
            End::NegInf,
            format!("{} [i = {} > {} variables]", s.source, i, nvars),
        ));
    }
    s.side(i)
}

/// Adds `terms` into one side, a maximum of sums.
pub(super) fn max_side(parts: Vec<Side>, source: String) -> Side {
    let value = End::max_of(parts.iter().map(|s| s.value));
    let capped = parts.iter().any(|s| s.capped);
    Side::new(value, capped, source)
}

pub(super) fn plus(a: &Side, b: &Side) -> Side {
    Side::new(
        a.value + b.value,
        a.capped || b.capped,
        format!("{} + {}", a.source, b.source),
    )
}

/// `t^B_k(I) = t^B_{k+1}(B/I)` for `k = 0..=upto`; index 0 is unused.
pub(super) fn ideal_parts(p: &TorProfile, upto: usize) -> Result<(Vec<End>, bool)> {
    let q = need(&p.b_quotient, "t^B(B/I)")?;
    let n = p.b_degrees.len();
    let mut out = vec![End::NegInf];
    let mut capped = false;
    for k in 1..=upto {
        let s = series_side(q, k + 1, n)?;
        capped |= s.capped;
        out.push(s.value);
    }
    Ok((out, capped))
}

pub(super) fn small_gate(p: &TorProfile) -> Gate {
    let top = p.f_degrees.first().copied().map_or(End::NegInf, End::Finite);
    let standard = p.b_degrees.iter().all(|&e| e == 1);
    Gate::when(
        standard && top <= p.e() + 1,
        "generators small: max d <= fin B/I + 1",
        json!(top <= p.e() + 1),
    )
    .note("B standard graded", json!(standard))
}

pub(super) fn ideal_gate(p: &TorProfile, bound: End, name: &str) -> Gate {
    Gate::when(p.t1_b_ideal <= bound, name, json!(p.t1_b_ideal <= bound)).note("t^B_1(I)", json!(p.t1_b_ideal))
}

/// Derksen's conjecture `t^S_i(R) <= (i+1) tau`, per computed index and per
/// witness cell.
pub fn check_derksen(p: &TorProfile) -> Vec<BoundVerdict> {
    let head = Head::conjectured("derksen-conjecture", &p.label);
    let mut out = Vec::new();
    for i in 0..p.s_r.len() {
        let rhs = Side::exact(p.tau * (i as i64 + 1), "(i+1) tau");
        out.push(BoundVerdict::compare(
            &head,
            i as i64,
            p.s_r.side(i).expect("in range"),
            rhs,
            Gate::always(),
        ));
    }
    let head = Head::conjectured("derksen-witness", &p.label);
    for w in &p.witnesses {
        let lhs = Side::new(
            End::Finite(w.degree),
            true,
            format!("nonzero Tor_{}(R, k) in degree {} (dim {})", w.i, w.degree, w.dim),
        );
        let rhs = Side::exact(p.tau * (w.i as i64 + 1), "(i+1) tau");
        out.push(BoundVerdict::compare(&head, w.i as i64, lhs, rhs, Gate::always()));
    }
    out
}

/// `t^S_i(R) <= (i+1) tau + i - 1`, and `(i+1) tau - 1` under either reading
/// of the extra hypothesis: `t^S_1(I) <= tau` as stated, or `t^B_1(I) <= tau`.
pub fn check_main_theorem(p: &TorProfile) -> Vec<BoundVerdict> {
    let gate_s = p.t1_s_ideal.map(|v| !v.capped && v.t <= p.tau);
    let gate_b = p.t1_b_ideal <= p.tau;
    let notes = |g: Gate| {
        g.note("t^B_1(I)", json!(p.t1_b_ideal))
            .note("t^S_1(I)", json!(p.t1_s_ideal))
            .note("tau", json!(p.tau))
            .note("gates disagree", json!(gate_s.map(|s| s != gate_b)))
    };
    let general = Head::proved("invariant-tor", &p.label);
    let strong_s = Head::proved("invariant-tor-strong[t^S_1(I)]", &p.label);
    let strong_b = Head::proved("invariant-tor-strong[t^B_1(I)]", &p.label);
    let mut out = Vec::new();
    for i in 0..p.s_r.len() {
        let k = i as i64;
        let lhs = p.s_r.side(i).expect("in range");
        let rhs = Side::exact(p.tau * (k + 1) + (k - 1), "(i+1) tau + i - 1");
        out.push(BoundVerdict::compare(&general, k, lhs.clone(), rhs, Gate::always()));
        let rhs = Side::exact(p.tau * (k + 1) - 1, "(i+1) tau - 1");
        let g = Gate::when(gate_s == Some(true), "t^S_1(I) <= tau", json!(gate_s));
        out.push(BoundVerdict::compare(&strong_s, k, lhs.clone(), rhs.clone(), notes(g)));
        let g = Gate::when(gate_b, "t^B_1(I) <= tau", json!(gate_b));
        out.push(BoundVerdict::compare(&strong_b, k, lhs, rhs, notes(g)));
    }
    out
}

fn residue_field_verdicts(p: &TorProfile, name: &str, gate: Gate, strong_gate: Gate) -> Vec<BoundVerdict> {
    let Some(rk) = &p.r_k else {
        return Vec::new();
    };
    let head = Head::proved(name, &p.label);
    let strong = Head::proved(&format!("{}-strong", name), &p.label);
    let mut out = Vec::new();
    for i in 0..rk.len() {
        let k = i as i64;
        let lhs = rk.side(i).expect("in range");
        let rhs = match i {
            0 => Side::exact(End::Finite(0), "0"),
            1 => Side::exact(p.tau, "tau"),
            _ => Side::exact(p.tau * k + (k - 2), "tau i + i - 2"),
        };
        out.push(BoundVerdict::compare(&head, k, lhs.clone(), rhs, gate.clone()));
        if i >= 2 {
            let rhs = Side::exact(p.tau * k - 1, "tau i - 1");
            out.push(BoundVerdict::compare(&strong, k, lhs, rhs, strong_gate.clone()));
        }
    }
    out
}

/// `t^R_0(k) = 0`, `t^R_1(k) <= tau`, `t^R_i(k) <= tau i + i - 2` for
/// `i >= 2`, and `tau i - 1` when `t^B_1(I) <= tau`.
pub fn check_theorem_r(p: &TorProfile) -> Vec<BoundVerdict> {
    let mut out = residue_field_verdicts(
        p,
        "residue-field",
        Gate::always(),
        ideal_gate(p, p.tau, "t^B_1(I) <= tau"),
    );
    if let Some(rk) = &p.r_k {
        if let Some(t0) = rk.t(0) {
            // t_0 = 0 is an equality; the lower half is checked here
            let head = Head::proved("residue-field-t0", &p.label);
            out.push(BoundVerdict::compare(
                &head,
                0,
                Side::exact(End::Finite(0), "0"),
                rk.side(0).expect("in range"),
                Gate::always().note("t^R_0(k)", json!(t0)),
            ));
        }
    }
    out
}

/// `fin H_i(f; B) <= (e+2)(i+1) - 2`, and `(e+1)(i+1) - 1` when
/// `t^B_1(I) <= e + 1`, with `e = fin B/I`.
pub fn check_koszul_corollary(p: &TorProfile) -> Vec<BoundVerdict> {
    let Some(ends) = p.koszul_ends.as_ref().or(p.s_b.as_ref()) else {
        return Vec::new();
    };
    let e = p.e();
    let head = Head::proved("koszul-homology", &p.label);
    let strong = Head::proved("koszul-homology-strong", &p.label);
    let mut out = Vec::new();
    for i in 0..ends.len() {
        let k = i as i64;
        let lhs = ends.side(i).expect("in range");
        let rhs = Side::exact((e + 2) * (k + 1) - 2, "(e+2)(i+1) - 2");
        out.push(BoundVerdict::compare(&head, k, lhs.clone(), rhs, small_gate(p)));
        let rhs = Side::exact((e + 1) * (k + 1) - 1, "(e+1)(i+1) - 1");
        let mut g = ideal_gate(p, e + 1, "t^B_1(I) <= fin B/I + 1");
        g.applicable &= small_gate(p).applicable;
        out.push(BoundVerdict::compare(&strong, k, lhs, rhs, g));
    }
    out
}
