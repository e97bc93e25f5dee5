use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use tordeg::bounds::{
    check_all, compute_profile, kind_counts, outcome, BoundVerdict, Outcome, ProfileOptions, RSource, Skipped,
    TorProfile, WitnessCell,
};
use tordeg::groebner::IdealData;
use tordeg::invariants::{
    build_derksen_instance, cyclic_scalar, permutation, swap, DerksenInstance, GroupAction, DEFAULT_GROUP_CAP,
};
use tordeg::poly::{parse_polynomial, PolyRing, Polynomial, Ring};
use tordeg::resolutions::{
    betti_table_by_reduction, minimal_free_resolution, regularity_from_betti, resolution_over_quotient, BettiTable,
    CapCertificate, ModulePresentation, ResolveOptions,
};
use tordeg::veronese::{find_witnesses, veronese_betti, veronese_presentation, VeroneseParams};
use tordeg::{AlgebraError, End, Field, PrimeField, RationalField};

use crate::error::CliError;
use crate::manifest::{Experiment, ExperimentManifest, GroupSpec};

/// Instances with more generators than this skip the kernel, the residue
/// field and the Koszul scans.
pub const FULL_PROFILE_GENERATORS: usize = 6;

#[derive(Debug, Clone, Serialize)]
pub struct NoetherGuards {
    pub group_order: u64,
    pub max_generator_degree: i64,
    pub degrees_within_order: bool,
    pub tau_within_order: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceSummary {
    pub ring: String,
    pub generators: Vec<String>,
    pub degrees: Vec<i64>,
    pub tau: End,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noether: Option<NoetherGuards>,
}

/// The verdict part of a report, written on its own as `.verdicts.json`
/// and by `check`.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub verdicts: Vec<BoundVerdict>,
    pub skipped: Vec<Skipped>,
    pub counts: std::collections::BTreeMap<String, usize>,
    pub outcome: Outcome,
}

impl VerdictReport {
    pub fn from_profile(p: &TorProfile) -> Self {
        let (verdicts, skipped) = check_all(p);
        VerdictReport {
            counts: kind_counts(&verdicts),
            outcome: outcome(&verdicts),
            verdicts,
            skipped,
        }
    }

    pub fn empty() -> Self {
        VerdictReport {
            verdicts: Vec::new(),
            skipped: Vec::new(),
            counts: Default::default(),
            outcome: Outcome::AllHold,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("verdicts serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub manifest: ExperimentManifest,
    pub hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceSummary>,
    /// The main Betti table: `R` over `S`, or the resolved module.
    pub betti: Value,
    pub certificate: CapCertificate,
    /// `max_i (t_i / scale - i)`, when the table is exact.
    pub regularity: Option<End>,
    pub regularity_scale: i64,
    pub witnesses: Vec<WitnessCell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<TorProfile>,
    #[serde(flatten)]
    pub verdicts: VerdictReport,
    /// Kept out of the JSON; used for the CSV and text renderings.
    #[serde(skip)]
    pub table: Option<BettiTable>,
}

/// Runs an experiment other than `check`.
pub fn run(manifest: &ExperimentManifest) -> Result<Report, CliError> {
    match manifest.characteristic {
        0 => run_with(manifest, RationalField),
        p => run_with(manifest, PrimeField::new(p)?),
    }
}

fn run_with<F: Field>(m: &ExperimentManifest, field: F) -> Result<Report, CliError> {
    match &m.experiment {
        Experiment::Veronese { n, m: deg } => veronese(m, VeroneseParams::new(*n, *deg)?, field),
        Experiment::Invariant { nvars, group } => {
            let b = PolyRing::standard("x", *nvars, field)?;
            let g = build_group(&b, group)?;
            invariant(m, &g)
        }
        Experiment::Koszul {
            variables,
            weights,
            generators,
            random_degrees,
        } => {
            let b = PolyRing::new(variables.clone(), weights.clone(), field)?;
            let mut f = parse_all(&b, generators)?;
            let mut rng = ChaCha8Rng::seed_from_u64(m.seed);
            for &d in random_degrees {
                f.push(random_form(&b, d as i64, &mut rng));
            }
            koszul(m, &b, f)
        }
        Experiment::Resolve {
            variables,
            weights,
            ideal,
            residue_field,
        } => {
            let s = PolyRing::new(variables.clone(), weights.clone(), field)?;
            let gens = parse_all(&s, ideal)?;
            resolve(m, &s, gens, *residue_field)
        }
        Experiment::Check { .. } => Err(CliError::Usage(
            "check runs on a stored profile, not an instance".into(),
        )),
    }
}

fn parse_all<F: Field>(ring: &Ring<F>, texts: &[String]) -> Result<Vec<Polynomial<F>>, CliError> {
    Ok(texts
        .iter()
        .map(|t| parse_polynomial(ring, t))
        .collect::<tordeg::Result<_>>()?)
}

/// A form of degree `d` with coefficients drawn from `-9..=9`.
fn random_form<F: Field>(ring: &Ring<F>, d: i64, rng: &mut ChaCha8Rng) -> Polynomial<F> {
    let field = ring.field().clone();
    let terms: Vec<_> = ring
        .monomials_of_degree(d)
        .into_iter()
        .map(|mono| (mono, field.from_i64(rng.gen_range(-9..=9))))
        .collect();
    Polynomial::from_terms(ring, terms)
}

fn build_group<F: Field>(b: &Ring<F>, spec: &GroupSpec) -> Result<GroupAction<F>, CliError> {
    let n = b.nvars();
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let g = match spec {
        GroupSpec::Swap => swap(b)?,
        GroupSpec::CyclicPermutation => permutation(b, &[cycle])?,
        GroupSpec::Symmetric => {
            let mut t: Vec<usize> = (0..n).collect();
            if n >= 2 {
                t.swap(0, 1);
            }
            permutation(b, &[t, cycle])?
        }
        GroupSpec::CyclicScalar { m } => cyclic_scalar(b, *m)?,
        GroupSpec::Matrices { group } => group.clone().into_group(b, DEFAULT_GROUP_CAP)?,
    };
    Ok(g)
}

fn summary<F: Field>(inst: &DerksenInstance<F>, order: Option<u64>) -> InstanceSummary {
    let degrees = inst.degrees();
    let noether = order.map(|o| {
        let max = degrees.iter().copied().max().unwrap_or(0);
        NoetherGuards {
            group_order: o,
            max_generator_degree: max,
            degrees_within_order: max <= o as i64,
            tau_within_order: inst.tau <= End::Finite(o as i64),
        }
    });
    InstanceSummary {
        ring: inst.b.header(),
        generators: inst.f.iter().map(|g| g.to_string()).collect(),
        degrees,
        tau: inst.tau,
        noether,
    }
}

fn options(m: &ExperimentManifest, label: String, r_source: RSource, small: bool) -> ProfileOptions {
    let mut o = ProfileOptions::full(label, r_source);
    o.degree_cap = m.degree_cap;
    o.residue_field_index = small.then_some(m.max_index);
    o.koszul_route = small;
    o.homology_modules = small;
    o
}

fn assemble(
    m: &ExperimentManifest,
    instance: Option<InstanceSummary>,
    table: BettiTable,
    certificate: CapCertificate,
    scale: i64,
    profile: Option<TorProfile>,
) -> Result<Report, CliError> {
    let regularity = if table.is_capped() {
        None
    } else {
        Some(regularity_from_betti(&table, scale)?)
    };
    let verdicts = profile
        .as_ref()
        .map_or_else(VerdictReport::empty, VerdictReport::from_profile);
    Ok(Report {
        manifest: m.clone(),
        hash: m.content_hash(),
        instance,
        betti: table.to_json(),
        certificate,
        regularity,
        regularity_scale: scale,
        witnesses: profile.as_ref().map(|p| p.witnesses.clone()).unwrap_or_default(),
        profile,
        verdicts,
        table: Some(table),
    })
}

fn veronese<F: Field>(m: &ExperimentManifest, p: VeroneseParams, field: F) -> Result<Report, CliError> {
    let small = p.generator_count() as usize <= FULL_PROFILE_GENERATORS;
    let inst = veronese_presentation(p, field, small)?;
    let (table, cert) = veronese_betti(p, &inst)?;
    let witnesses = find_witnesses(p, &inst, &table)?
        .into_iter()
        .map(|w| WitnessCell {
            i: w.index,
            degree: w.degree,
            dim: w.homology_dim as u64,
        })
        .collect();
    let mut opts = options(m, p.label(), RSource::Summand { m: p.m }, small);
    opts.group_order = Some(p.m as u64);
    let mut profile = compute_profile(&inst, &opts)?;
    profile.witnesses = witnesses;
    assemble(
        m,
        Some(summary(&inst, Some(p.m as u64))),
        table,
        cert,
        p.m as i64,
        Some(profile),
    )
}

fn invariant<F: Field>(m: &ExperimentManifest, g: &GroupAction<F>) -> Result<Report, CliError> {
    let inst = build_derksen_instance(g, true)?;
    let order = g.order() as u64;
    let small = inst.f.len() <= FULL_PROFILE_GENERATORS;
    let j = inst.j.clone().expect("built with the kernel");
    let ro = ResolveOptions {
        max_index: inst.s.nvars(),
        degree_cap: m.degree_cap,
        ..Default::default()
    };
    let res = minimal_free_resolution(&ModulePresentation::Quotient(j), &ro)?;
    let mut opts = options(
        m,
        format!("invariants of a group of order {}", order),
        RSource::Kernel,
        small,
    );
    opts.group_order = Some(order);
    let profile = compute_profile(&inst, &opts)?;
    assemble(
        m,
        Some(summary(&inst, Some(order))),
        res.betti,
        res.certificate,
        1,
        Some(profile),
    )
}

fn koszul<F: Field>(m: &ExperimentManifest, b: &Ring<F>, f: Vec<Polynomial<F>>) -> Result<Report, CliError> {
    let inst = DerksenInstance::from_generators(b, f, "u", false)?;
    let small = inst.f.len() <= FULL_PROFILE_GENERATORS;
    let label = "B over S";
    let (table, cert) = match betti_table_by_reduction(&inst.s, &inst.b, &[], &inst.f, label, 500)? {
        Some(found) => found,
        None => {
            let pres = ModulePresentation::Algebra {
                source: inst.s.clone(),
                target: inst.b.clone(),
                ideal: Vec::new(),
                images: inst.f.clone(),
            };
            let ro = ResolveOptions {
                max_index: inst.s.nvars(),
                degree_cap: m.degree_cap,
                ..Default::default()
            };
            let res = minimal_free_resolution(&pres, &ro)?;
            (res.betti, res.certificate)
        }
    };
    let opts = options(
        m,
        format!("{} generators in {}", inst.f.len(), b.header()),
        RSource::NotComputed,
        small,
    );
    let profile = compute_profile(&inst, &opts)?;
    assemble(m, Some(summary(&inst, None)), table, cert, 1, Some(profile))
}

fn resolve<F: Field>(
    m: &ExperimentManifest,
    s: &Ring<F>,
    gens: Vec<Polynomial<F>>,
    residue: bool,
) -> Result<Report, CliError> {
    let ideal = IdealData::new(s, gens)?;
    let res = if residue {
        resolution_over_quotient(&ideal, m.max_index, m.degree_cap)?
    } else {
        let ro = ResolveOptions {
            max_index: s.nvars(),
            degree_cap: m.degree_cap,
            ..Default::default()
        };
        minimal_free_resolution(&ModulePresentation::Quotient(ideal), &ro)?
    };
    assemble(m, None, res.betti, res.certificate, 1, None)
}

/// Re-runs the verdicts on a stored profile.
pub fn check(path: &std::path::Path) -> Result<VerdictReport, CliError> {
    let text = std::fs::read_to_string(path)?;
    let profile = TorProfile::from_json(&text).map_err(|e| match e {
        AlgebraError::Parse { line, column, message } => CliError::Parse { line, column, message },
        other => CliError::Algebra(other),
    })?;
    Ok(VerdictReport::from_profile(&profile))
}
