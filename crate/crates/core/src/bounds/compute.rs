use crate::error::{AlgebraError, Result};
use crate::ext::End;
use crate::field::Field;
use crate::groebner::{t1_of_ideal, IdealData};
use crate::invariants::DerksenInstance;
use crate::resolutions::{
    betti_table_by_reduction, homology_end, homology_module, ideal_module_resolution, koszul_complex,
    minimal_free_resolution, resolution_over_quotient, BettiTable, CapSource, EndStatus, ModulePresentation,
    ResolveOptions,
};

use super::compose::residue_field_t;
use super::profile::{HomologyModuleData, TSeries, TValue, TorProfile};

/// How to obtain `t^S_i(R)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RSource {
    /// `R` is the summand of `B` in degrees divisible by `m` (Veronese).
    Summand { m: u32 },
    /// Resolve `S/J` with the kernel `J` of the instance.
    Kernel,
    /// No subring is involved; `t^S_i(R)` is left empty.
    NotComputed,
}

#[derive(Debug, Clone)]
pub struct ProfileOptions {
    pub label: String,
    pub group_order: Option<u64>,
    pub r_source: RSource,
    /// Degree cap for computations without proved caps.
    pub degree_cap: Option<i64>,
    /// Compute `t^R_i(k)` for `i` up to this index (needs `J`).
    pub residue_field_index: Option<usize>,
    /// Scan the Koszul complex for `fin H_i(f; B)`.
    pub koszul_route: bool,
    /// Compute `H_i(f; B)` as `B`-modules and their Betti tables.
    pub homology_modules: bool,
    /// Compute `t^S_1(I)`.
    pub ideal_module: bool,
}

impl ProfileOptions {
    /// Everything on, for small instances.
    pub fn full(label: impl Into<String>, r_source: RSource) -> Self {
        ProfileOptions {
            label: label.into(),
            group_order: None,
            r_source,
            degree_cap: None,
            residue_field_index: Some(4),
            koszul_route: true,
            homology_modules: true,
            ideal_module: true,
        }
    }
}

fn descending(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn b_over_s<F: Field>(inst: &DerksenInstance<F>, opts: &ProfileOptions) -> Result<BettiTable> {
    let label = "B over S";
    if let Some((t, _)) = betti_table_by_reduction(&inst.s, &inst.b, &[], &inst.f, label, 500)? {
        return Ok(t);
    }
    let pres = ModulePresentation::Algebra {
        source: inst.s.clone(),
        target: inst.b.clone(),
        ideal: Vec::new(),
        images: inst.f.clone(),
    };
    let ro = ResolveOptions {
        max_index: inst.s.nvars(),
        degree_cap: opts.degree_cap,
        ..Default::default()
    };
    Ok(minimal_free_resolution(&pres, &ro)?.betti)
}

fn r_over_s<F: Field>(inst: &DerksenInstance<F>, opts: &ProfileOptions, b_table: &BettiTable) -> Result<TSeries> {
    match opts.r_source {
        RSource::Summand { m } => {
            let m = m as i64;
            let mut t = BettiTable::new("R over S", b_table.max_index(), b_table.cap(), b_table.is_capped());
            for (i, j, c) in b_table.entries().filter(|e| e.1 % m == 0) {
                t.add(i, j, c);
            }
            Ok(TSeries::from_betti(&t, "t^S_i(R) from the degree summand of B"))
        }
        RSource::Kernel => {
            let j = inst
                .j
                .as_ref()
                .ok_or_else(|| AlgebraError::InsufficientData("the kernel J of S -> B is needed".into()))?;
            let ro = ResolveOptions {
                max_index: inst.s.nvars(),
                degree_cap: opts.degree_cap,
                ..Default::default()
            };
            let res = minimal_free_resolution(&ModulePresentation::Quotient(j.clone()), &ro)?;
            Ok(TSeries::from_betti(&res.betti, "t^S_i(S/J)"))
        }
        RSource::NotComputed => Ok(TSeries::exact([], "not computed")),
    }
}

/// `t^S_1(I)` with caps from `Tor^S(I) -> Tor^S(B) -> Tor^S(B/I)`: `S_+`
/// kills `B/I`, so `t^S_i(B/I) = fin B/I + (sum of the i largest d_j)`.
fn ideal_over_s<F: Field>(inst: &DerksenInstance<F>, e: End, s_b: &TSeries, d: &[i64]) -> Result<Option<TValue>> {
    if !(s_b.is_exact(0) && s_b.is_exact(1)) {
        return Ok(None);
    }
    let caps: Vec<End> = (0..2)
        .map(|i| (e + residue_field_t(d, i + 1)).max(s_b.t(i).expect("exact")))
        .collect();
    let res = ideal_module_resolution(&inst.s, inst.ideal.groebner(), &inst.f, caps)?;
    Ok(Some(TValue {
        t: res.t(1),
        capped: false,
    }))
}

/// Computes every quantity the checkers use for one instance.
pub fn compute_profile<F: Field>(inst: &DerksenInstance<F>, opts: &ProfileOptions) -> Result<TorProfile> {
    let e = inst.quotient_end();
    if !e.is_finite() {
        return Err(AlgebraError::NotFiniteColength);
    }
    let f_degrees = descending(inst.degrees());
    let b_degrees = descending(inst.b.weights().iter().map(|&w| w as i64).collect());
    let t1_b_ideal = t1_of_ideal(&inst.ideal)?;

    let b_table = b_over_s(inst, opts)?;
    let s_b = TSeries::from_betti(&b_table, "t^S_i(B) by change of rings");
    let s_r = r_over_s(inst, opts, &b_table)?;

    let quotient = ModulePresentation::Quotient(IdealData::new(&inst.b, inst.f.clone())?);
    let ro = ResolveOptions {
        max_index: inst.b.nvars(),
        ..Default::default()
    };
    let b_quotient = TSeries::from_betti(&minimal_free_resolution(&quotient, &ro)?.betti, "t^B_i(B/I)");

    let t1_s_ideal = if opts.ideal_module {
        ideal_over_s(inst, e, &s_b, &f_degrees)?
    } else {
        None
    };

    let r_k = match (opts.residue_field_index, &inst.j) {
        (Some(top), Some(j)) => {
            let res = resolution_over_quotient(j, top, opts.degree_cap)?;
            Some(TSeries::from_betti(&res.betti, "t^R_i(k) by degreewise kernels"))
        }
        _ => None,
    };

    let small = f_degrees.first().is_none_or(|&d| End::Finite(d) <= e + 1);
    let koszul = if opts.koszul_route || opts.homology_modules {
        Some(koszul_complex(&inst.f, None)?)
    } else {
        None
    };
    let koszul_ends = match &koszul {
        Some(k) if opts.koszul_route => {
            let mut values = Vec::new();
            for i in 0..=inst.f.len() {
                // the proved bound (e+2)(i+1) - 2 makes the scan exact
                let bound = (e + 2) * (i as i64 + 1) - 2;
                let (cap, source) = match (small, opts.degree_cap) {
                    (true, _) => (bound.finite().expect("finite"), CapSource::Exact),
                    (false, Some(c)) => (c, CapSource::Assumed),
                    (false, None) => (bound.finite().expect("finite"), CapSource::Assumed),
                };
                let h = homology_end(k, i, cap, source);
                values.push(TValue {
                    t: h.end,
                    capped: h.status != EndStatus::Verified,
                });
            }
            Some(TSeries {
                source: "fin H_i(f; B) by Koszul homology".into(),
                values,
            })
        }
        _ => None,
    };

    let mut homology = Vec::new();
    if let (Some(k), true) = (&koszul, opts.homology_modules) {
        for i in 0..=inst.f.len() {
            if !s_b.is_exact(i) {
                continue;
            }
            let Some(hi) = s_b.t(i).and_then(|t| t.finite()) else {
                continue;
            };
            let lo = k.shifts(i).iter().min().copied().unwrap_or(hi);
            let module = homology_module(k, i, lo, hi);
            let table = module.betti_table(format!("H_{}(f; B) over B", i));
            homology.push(HomologyModuleData {
                i,
                over_b: TSeries::from_betti(&table, format!("t^B_j(H_{}(f; B))", i)),
            });
        }
    }

    let profile = TorProfile {
        label: opts.label.clone(),
        group_order: opts.group_order,
        tau: inst.tau,
        quotient_end: e,
        t1_b_ideal,
        t1_s_ideal,
        b_degrees,
        f_degrees,
        s_r,
        s_b: Some(s_b),
        koszul_ends,
        r_k,
        b_quotient: Some(b_quotient),
        homology,
        witnesses: Vec::new(),
    };
    profile.validate()?;
    Ok(profile)
}
