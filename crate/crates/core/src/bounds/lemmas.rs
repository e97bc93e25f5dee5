//! The intermediate inequalities behind the main bounds.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::ext::End;

use super::checks::{ideal_gate, ideal_parts, max_side, need, plus, series_side, small_gate};
use super::compose::{max_over_compositions, u_of};
use super::profile::TorProfile;
use super::verdict::{BoundVerdict, Gate, Head, Side};

/// Largest `j + k` used for the superadditivity checks.
pub const SUPERADDITIVITY_RANGE: usize = 8;

fn t_side(p: &TorProfile, j: usize) -> Result<Side> {
    let (parts, capped) = ideal_parts(p, j)?;
    Ok(Side::new(
        max_over_compositions(&parts, j as i64)?,
        capped,
        format!("T_{}(I)", j),
    ))
}

fn u_side(p: &TorProfile, j: usize) -> Result<Side> {
    Ok(Side::exact(u_of(&p.b_degrees, p.e(), j as i64)?, format!("U_{}(f)", j)))
}

fn nb(p: &TorProfile) -> usize {
    p.b_degrees.len()
}

fn ns(p: &TorProfile) -> usize {
    p.f_degrees.len()
}

/// `t^B_i(B/I) <= i + fin B/I`, and `T_i(I) <= (e+2) i`, `(e+1) i` when
/// `t^B_1(I) <= e + 1`.
pub fn check_ideal_lemma(p: &TorProfile) -> Result<Vec<BoundVerdict>> {
    let q = need(&p.b_quotient, "t^B(B/I)")?;
    let e = p.e();
    let mut out = Vec::new();
    let head = Head::proved("t^B_i(B/I) <= i + e", &p.label);
    for i in 0..q.len() {
        let rhs = Side::exact(e + i as i64, "i + fin B/I");
        out.push(BoundVerdict::compare(&head, i as i64, q.side(i)?, rhs, Gate::always()));
    }
    let one = Head::proved("composition", &p.label);
    let two = Head::proved("composition-strong", &p.label);
    let standard = p.b_degrees.iter().all(|&x| x == 1);
    for i in 1..=SUPERADDITIVITY_RANGE {
        let k = i as i64;
        let lhs = t_side(p, i)?;
        let g = Gate::when(standard, "B standard graded", serde_json::json!(standard));
        out.push(BoundVerdict::compare(
            &one,
            k,
            lhs.clone(),
            Side::exact((e + 2) * k, "(e+2) i"),
            g,
        ));
        let mut g = ideal_gate(p, e + 1, "t^B_1(I) <= fin B/I + 1");
        g.applicable &= standard;
        out.push(BoundVerdict::compare(
            &two,
            k,
            lhs,
            Side::exact((e + 1) * k, "(e+1) i"),
            g,
        ));
    }
    Ok(out)
}

/// `fin H^n_m(K_j)` for the Koszul complex on `f` over `B` with `n`
/// variables: the largest shift of `K_j` minus the sum of the degrees of the
/// variables, `-inf` when `K_j = 0`.
fn koszul_local_cohomology_end(p: &TorProfile, j: i64) -> End {
    if j < 0 {
        return End::NegInf;
    }
    p.s_residue_t(j as usize) - p.b_degrees.iter().sum::<i64>()
}

/// The local cohomology bound for `L = K(f; B)`, for `i >= 1`:
/// `fin H_i <= max_{j<i} { fin H^n_m(K_j) + T_{i-j}(I) } + t^B_n(B/I)`.
pub fn check_complex_theorem(p: &TorProfile) -> Result<Vec<BoundVerdict>> {
    let ends = p
        .koszul_ends
        .as_ref()
        .or(p.s_b.as_ref())
        .ok_or_else(|| super::checks::missing("fin H_i(f; B)"))?;
    let q = need(&p.b_quotient, "t^B(B/I)")?;
    let top = series_side(q, nb(p), nb(p))?;
    let head = Head::proved("complex-homology", &p.label);
    let mut out = Vec::new();
    for i in 1..ends.len() {
        let mut parts = Vec::new();
        for j in 0..i {
            let local = Side::exact(koszul_local_cohomology_end(p, j as i64), format!("fin H^n(K_{})", j));
            parts.push(plus(&local, &t_side(p, i - j)?));
        }
        let rhs = plus(&max_side(parts, "max_j<i".into()), &top);
        out.push(BoundVerdict::compare(
            &head,
            i as i64,
            ends.side(i)?,
            rhs,
            Gate::always(),
        ));
    }
    Ok(out)
}

/// For `X = H_j(f; B)`, a `B/I`-module:
/// `t^B_i(X) <= t^B_0(X) + max { t^B_i(B/I), fin B/I + t^B_{i-1}(k) }`.
pub fn check_module_lemma(p: &TorProfile) -> Result<Vec<BoundVerdict>> {
    if p.homology.is_empty() {
        return Err(super::checks::missing("H_i(f; B) as B-modules"));
    }
    let q = need(&p.b_quotient, "t^B(B/I)")?;
    let mut out = Vec::new();
    for h in &p.homology {
        let head = Head::proved(&format!("module-tor[X = H_{}]", h.i), &p.label);
        let t0 = h.over_b.side(0)?;
        for i in 0..h.over_b.len() {
            let kf = if i == 0 { End::NegInf } else { p.b_residue_t(i - 1) };
            let inner = max_side(
                vec![series_side(q, i, nb(p))?, Side::exact(p.e() + kf, "e + t^B_{i-1}(k)")],
                "max".into(),
            );
            let rhs = plus(&t0, &inner);
            out.push(BoundVerdict::compare(
                &head,
                i as i64,
                h.over_b.side(i)?,
                rhs,
                Gate::always(),
            ));
        }
    }
    Ok(out)
}

/// The spectral sequence inequality for `S -> C` with `C = B` or `C = R`:
/// `t^C_i(C (x)_S k) <= max { {t^C_j(k) + t^S_{i-j-1}(C)}_{j <= i-2}, t^S_i(k) }`.
pub fn check_bottom_row(p: &TorProfile) -> Result<Vec<BoundVerdict>> {
    let mut out = Vec::new();
    if let (Some(q), Some(sb)) = (&p.b_quotient, &p.s_b) {
        let head = Head::proved("bottom-row[C = B]", &p.label);
        for i in 0..q.len() {
            let mut parts = vec![Side::exact(p.s_residue_t(i), "t^S_i(k)")];
            for j in 0..i.saturating_sub(1) {
                let kf = Side::exact(p.b_residue_t(j), format!("t^B_{}(k)", j));
                parts.push(plus(&kf, &series_side(sb, i - j - 1, ns(p))?));
            }
            out.push(BoundVerdict::compare(
                &head,
                i as i64,
                q.side(i)?,
                max_side(parts, "max".into()),
                Gate::always(),
            ));
        }
    }
    if let Some(rk) = &p.r_k {
        let head = Head::proved("bottom-row[C = R]", &p.label);
        for i in 0..rk.len() {
            let mut parts = vec![Side::exact(p.s_residue_t(i), "t^S_i(k)")];
            for j in 0..i.saturating_sub(1) {
                parts.push(plus(&rk.side(j)?, &series_side(&p.s_r, i - j - 1, ns(p))?));
            }
            out.push(BoundVerdict::compare(
                &head,
                i as i64,
                rk.side(i)?,
                max_side(parts, "max".into()),
                Gate::always(),
            ));
        }
    }
    if out.is_empty() {
        return Err(super::checks::missing("t^B(B/I) with t^S(B), or t^R(k)"));
    }
    Ok(out)
}

/// For `H_i = Tor^S_i(B, k)` as a `B`-module:
/// `t^B_0(H_i) <= max { {t^S_j(B) + t^B_{i-j+1}(k)}_{j < i}, t^S_i(k) }` and
/// `t^S_i(B) <= t^B_0(H_i) + fin B/I`.
pub fn check_first_column(p: &TorProfile) -> Result<Vec<BoundVerdict>> {
    if p.homology.is_empty() {
        return Err(super::checks::missing("H_i(f; B) as B-modules"));
    }
    let sb = need(&p.s_b, "t^S(B)")?;
    let two = Head::proved("homology-generators", &p.label);
    let three = Head::proved("tor-from-generators", &p.label);
    let mut out = Vec::new();
    for h in &p.homology {
        let i = h.i;
        let gens = h.over_b.side(0)?;
        let mut parts = vec![Side::exact(p.s_residue_t(i), "t^S_i(k)")];
        for j in 0..i {
            let kf = Side::exact(p.b_residue_t(i - j + 1), format!("t^B_{}(k)", i - j + 1));
            parts.push(plus(&series_side(sb, j, ns(p))?, &kf));
        }
        out.push(BoundVerdict::compare(
            &two,
            i as i64,
            gens.clone(),
            max_side(parts, "max".into()),
            Gate::always(),
        ));
        let rhs = plus(&gens, &Side::exact(p.e(), "fin B/I"));
        out.push(BoundVerdict::compare(
            &three,
            i as i64,
            series_side(sb, i, ns(p))?,
            rhs,
            Gate::always(),
        ));
    }
    Ok(out)
}

/// The bounds on `t^S_i(B)` through `U_i(f)` and their closed forms.
pub fn check_algebra_bounds(p: &TorProfile) -> Result<Vec<BoundVerdict>> {
    let sb = need(&p.s_b, "t^S(B)")?;
    let e = p.e();
    let mut out = Vec::new();
    let prop = Head::proved("algebra-tor", &p.label);
    let cor = Head::proved("algebra-tor-closed-form", &p.label);
    let cor_small = Head::proved("algebra-tor-small", &p.label);
    let cor_strong = Head::proved("algebra-tor-small-strong", &p.label);
    for i in 0..sb.len() {
        let k = i as i64;
        let lhs = sb.side(i)?;
        let spread = End::max_of((0..=i).map(|j| p.s_residue_t(j) + e * (k - j as i64)));
        assert_eq!(
            spread,
            p.d_bar_sum(i),
            "max_j t^S_j(k) + (i-j) e must equal the d-bar sum"
        );
        let u = u_side(p, i)?;
        let rhs = Side::exact(u.value.max(spread) + e, "max { U_i(f), t^S_j(k) + (i-j) e } + e");
        out.push(BoundVerdict::compare(&prop, k, lhs.clone(), rhs, Gate::always()));
        let first = (p.b_residue_t(2) + e) * k;
        let rhs = Side::exact(first.max(p.d_bar_sum(i)) + e, "max { (e_1+e_2+e) i, d-bar sum } + e");
        out.push(BoundVerdict::compare(&cor, k, lhs.clone(), rhs, Gate::always()));
        let rhs = Side::exact((e + 2) * (k + 1) - 2, "(e+2)(i+1) - 2");
        out.push(BoundVerdict::compare(&cor_small, k, lhs.clone(), rhs, small_gate(p)));
        let rhs = Side::exact((e + 1) * (k + 1) - 1, "(e+1)(i+1) - 1");
        let mut g = ideal_gate(p, e + 1, "t^B_1(I) <= fin B/I + 1");
        g.applicable &= small_gate(p).applicable;
        out.push(BoundVerdict::compare(&cor_strong, k, lhs, rhs, g));
    }
    Ok(out)
}

/// The residue field bound for `C = f(S) = R` in terms of `fin B/I`:
/// `t^C_1(k) <= e + 1` and `t^C_i(k) <= (e+2) i - 2`, `(e+1) i - 1` when
/// `t^B_1(I) <= e + 1`.
pub fn check_residue_field_final(p: &TorProfile) -> Result<Vec<BoundVerdict>> {
    let rk = need(&p.r_k, "t^R(k)")?;
    let e = p.e();
    let head = Head::proved("image-residue-field", &p.label);
    let strong = Head::proved("image-residue-field-strong", &p.label);
    let mut out = Vec::new();
    for i in 0..rk.len() {
        let k = i as i64;
        let lhs = rk.side(i)?;
        let rhs = match i {
            0 => Side::exact(End::Finite(0), "0"),
            1 => Side::exact(e + 1, "e + 1"),
            _ => Side::exact((e + 2) * k - 2, "(e+2) i - 2"),
        };
        out.push(BoundVerdict::compare(&head, k, lhs.clone(), rhs, small_gate(p)));
        if i >= 2 {
            let mut g = ideal_gate(p, e + 1, "t^B_1(I) <= fin B/I + 1");
            g.applicable &= small_gate(p).applicable;
            out.push(BoundVerdict::compare(
                &strong,
                k,
                lhs,
                Side::exact((e + 1) * k - 1, "(e+1) i - 1"),
                g,
            ));
        }
    }
    Ok(out)
}

/// `t^S_i(R) <= t^S_i(B)`, from the splitting of `R -> B`.
pub fn check_split(p: &TorProfile) -> Result<Vec<BoundVerdict>> {
    let sb = need(&p.s_b, "t^S(B)")?;
    let head = Head::proved("split", &p.label);
    let mut out = Vec::new();
    for i in 0..p.s_r.len() {
        out.push(BoundVerdict::compare(
            &head,
            i as i64,
            p.s_r.side(i)?,
            series_side(sb, i, ns(p))?,
            Gate::always(),
        ));
    }
    Ok(out)
}

/// `t^S_i(B)` by a resolution against `fin H_i(f; B)` by the Koszul
/// complex, in both directions.
pub fn check_dual_route(p: &TorProfile) -> Result<Vec<BoundVerdict>> {
    let sb = need(&p.s_b, "t^S(B)")?;
    let kz = need(&p.koszul_ends, "fin H_i(f; B)")?;
    let le = Head::proved("dual-route(<=)", &p.label);
    let ge = Head::proved("dual-route(>=)", &p.label);
    let mut out = Vec::new();
    for i in 0..kz.len().min(sb.len()) {
        out.push(BoundVerdict::compare(
            &le,
            i as i64,
            kz.side(i)?,
            sb.side(i)?,
            Gate::always(),
        ));
        out.push(BoundVerdict::compare(
            &ge,
            i as i64,
            sb.side(i)?,
            kz.side(i)?,
            Gate::always(),
        ));
    }
    Ok(out)
}

/// `T_{j+k} >= T_j + t^B_{k+1}(B/I)` and `U_{j+k} >= U_j + t^B_{k+1}(k) + e`
/// for `j, k >= 1`, `j + k <= SUPERADDITIVITY_RANGE`. The verdict index is
/// `j + k`.
pub fn check_superadditivity(p: &TorProfile) -> Result<Vec<BoundVerdict>> {
    let q = need(&p.b_quotient, "t^B(B/I)")?;
    let tt = Head::proved("superadditivity-T", &p.label);
    let uu = Head::proved("superadditivity-U", &p.label);
    let mut out = Vec::new();
    for total in 2..=SUPERADDITIVITY_RANGE {
        let t_total = t_side(p, total)?;
        let u_total = u_side(p, total)?;
        for j in 1..total {
            let k = total - j;
            let lhs = plus(&t_side(p, j)?, &series_side(q, k + 1, nb(p))?);
            let split = || {
                Gate::always()
                    .note("j", serde_json::json!(j))
                    .note("k", serde_json::json!(k))
            };
            out.push(BoundVerdict::compare(&tt, total as i64, lhs, t_total.clone(), split()));
            let kf = Side::exact(p.b_residue_t(k + 1) + p.e(), format!("t^B_{}(k) + e", k + 1));
            let lhs = plus(&u_side(p, j)?, &kf);
            out.push(BoundVerdict::compare(&uu, total as i64, lhs, u_total.clone(), split()));
        }
    }
    Ok(out)
}

/// A check that could not run, and why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub check: String,
    pub reason: String,
}

type Check = fn(&TorProfile) -> Result<Vec<BoundVerdict>>;

const SUPPORT_CHECKS: [(&str, Check); 10] = [
    ("ideal lemma", check_ideal_lemma),
    ("complex theorem", check_complex_theorem),
    ("module lemma", check_module_lemma),
    ("bottom row", check_bottom_row),
    ("first column", check_first_column),
    ("algebra bounds", check_algebra_bounds),
    ("residue field", check_residue_field_final),
    ("split", check_split),
    ("dual route", check_dual_route),
    ("superadditivity", check_superadditivity),
];

/// Every supporting inequality; fails on the first missing quantity.
pub fn check_support_lemmas(p: &TorProfile) -> Result<Vec<BoundVerdict>> {
    let mut out = Vec::new();
    for (_, check) in SUPPORT_CHECKS {
        out.extend(check(p)?);
    }
    Ok(out)
}

/// As [`check_support_lemmas`], running what the profile allows and listing
/// the rest.
pub fn support_lemmas_available(p: &TorProfile) -> (Vec<BoundVerdict>, Vec<Skipped>) {
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for (name, check) in SUPPORT_CHECKS {
        match check(p) {
            Ok(v) => out.extend(v),
            Err(AlgebraError::InsufficientData(reason)) => skipped.push(Skipped {
                check: name.to_string(),
                reason,
            }),
            Err(e) => skipped.push(Skipped {
                check: name.to_string(),
                reason: e.to_string(),
            }),
        }
    }
    (out, skipped)
}
