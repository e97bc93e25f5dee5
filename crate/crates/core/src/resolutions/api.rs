use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::ext::End;
use crate::field::Field;
use crate::groebner::{
    buchberger, minimal_generators, minimal_ideal_generators, regular_sequence, syzygies, FreeModuleElement,
    GroebnerBasis, IdealData,
};
use crate::linalg::Echelon;
use crate::poly::{same_ring, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};

use super::betti::BettiTable;
use super::complex::GradedFreeComplex;
use super::engine::{augmentation_is_zero, resolve, DegreeCaps, EngineOutput};
use super::graded::GradedRing;
use super::module::{CokernelModule, FiniteModule, GradedModule, IdealModule, QuotientModule};

/// A finitely generated graded module over a polynomial ring `S`.
#[derive(Debug, Clone)]
pub enum ModulePresentation<F: Field> {
    /// `S/I`.
    Quotient(IdealData<F>),
    /// `sum_j S(-shifts[j])` modulo the span of the columns.
    Cokernel {
        ring: Ring<F>,
        shifts: Vec<i64>,
        columns: Vec<FreeModuleElement<F>>,
    },
    /// `T/L` as an `S`-module through `x_k -> images[k]`, for a polynomial
    /// ring `T` and an ideal `L` of `T`.
    Algebra {
        source: Ring<F>,
        target: Ring<F>,
        ideal: Vec<Polynomial<F>>,
        images: Vec<Polynomial<F>>,
    },
}

impl<F: Field> ModulePresentation<F> {
    pub fn ring(&self) -> &Ring<F> {
        match self {
            ModulePresentation::Quotient(i) => i.ring(),
            ModulePresentation::Cokernel { ring, .. } => ring,
            ModulePresentation::Algebra { source, .. } => source,
        }
    }

    pub fn label(&self) -> String {
        match self {
            ModulePresentation::Quotient(i) => format!("S/I over {}", i.ring().header()),
            ModulePresentation::Cokernel { ring, shifts, .. } => {
                format!("cokernel of rank {} over {}", shifts.len(), ring.header())
            }
            ModulePresentation::Algebra { source, target, .. } => {
                format!("{} over {}", target.header(), source.header())
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResolveOptions {
    pub max_index: usize,
    /// Degree bound used when no proved caps are available.
    pub degree_cap: Option<i64>,
    /// How many candidate tests the regular sequence search may spend.
    pub search_budget: usize,
    /// Check that the differentials compose to zero after the computation.
    pub verify: bool,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions {
            max_index: 32,
            degree_cap: None,
            search_budget: 500,
            verify: true,
        }
    }
}

/// Why the degree caps of a resolution can be trusted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CapCertificate {
    /// The images of the listed linear forms form a regular sequence on the
    /// module, so `Tor` can be computed over complementary variables from a
    /// finite-length module by its Koszul complex.
    RegularSequence {
        sequence: Vec<String>,
        finite_dim: usize,
        end: End,
    },
    /// Iterated minimal syzygies computed by Groebner bases; nothing is capped.
    Syzygies,
    /// The ring has a quadratic Groebner basis with all weights equal to
    /// `weight`, hence `Tor_i(k, k)` lives in degree `i * weight`.
    Koszul { weight: u32 },
    /// `k` over a polynomial ring: the Koszul complex on the variables.
    PolynomialRing,
    /// Caps on `t_i` derived by the caller, for instance from a long exact
    /// sequence.
    Supplied { caps: Vec<End> },
    /// Nothing is known above the cap.
    Scan { cap: i64 },
}

/// A minimal graded free resolution `F_0 <- F_1 <- ...`.
#[derive(Debug, Clone)]
pub struct Resolution<F: Field> {
    pub complex: GradedFreeComplex<F>,
    pub betti: BettiTable,
    pub certificate: CapCertificate,
    generator_degrees: Vec<i64>,
}

impl<F: Field> Resolution<F> {
    /// Degrees of the generators of `F_0`.
    pub fn generator_degrees(&self) -> Vec<i64> {
        self.generator_degrees.clone()
    }

    pub fn t(&self, i: usize) -> End {
        self.betti.t(i)
    }
}

/// A finite-length module over fewer variables with the same `Tor` as a
/// given one.
#[derive(Debug, Clone)]
pub struct FiniteReduction<F: Field> {
    /// Linear forms of `S` (within one weight each) whose images form a
    /// regular sequence.
    pub theta: Vec<Polynomial<F>>,
    /// Variables of `S` that, together with `theta`, span every weight class.
    pub remaining: Vec<usize>,
    /// `T/(L + theta)` over the remaining variables.
    pub module: FiniteModule<F>,
}

impl<F: Field> FiniteReduction<F> {
    /// Exact Betti numbers of the original module over `S`, for indices up
    /// to at least `max_index`.
    pub fn betti_table(&self, label: &str, max_index: usize) -> BettiTable {
        let t = self.module.betti_table(label);
        let mut out = BettiTable::new(label, t.max_index().max(max_index), t.cap(), false);
        for (i, j, c) in t.entries() {
            out.add(i, j, c);
        }
        out
    }

    pub fn certificate(&self) -> CapCertificate {
        CapCertificate::RegularSequence {
            sequence: self.theta.iter().map(|p| p.to_string()).collect(),
            finite_dim: self.module.total_dim(),
            end: self.module.end(),
        }
    }
}

/// Deterministic coefficients for generic linear forms.
fn generic_coefficient(t: usize, j: usize) -> i64 {
    let h = (t as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (j as u64 + 1).wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    1 + (h >> 40) as i64 % 89
}

/// Looks for linear forms of `source` whose images form a regular sequence
/// on `T/L` leaving a quotient of finite length. Variables are tried first,
/// then generic combinations of variables of equal weight. If `theta` is
/// such a sequence and `S'` is the polynomial ring on variables completing
/// it to a basis, `Tor^S_i(T/L, k) = Tor^{S'}_i(T/(L + theta), k)`.
pub fn reduce_to_finite<F: Field>(
    source: &Ring<F>,
    target: &Ring<F>,
    ideal: &[Polynomial<F>],
    images: &[Polynomial<F>],
    budget: usize,
) -> Result<Option<FiniteReduction<F>>> {
    let n = source.nvars();
    if images.len() != n {
        return Err(AlgebraError::ShapeError(format!(
            "{} images for {} variables",
            images.len(),
            n
        )));
    }
    let field = source.field();
    // candidate forms as coefficient vectors over the variables of S
    let mut forms: Vec<Vec<(usize, F::Elem)>> = (0..n).map(|k| vec![(k, field.one())]).collect();
    let mut classes: Vec<(u32, Vec<usize>)> = Vec::new();
    for k in 0..n {
        let w = source.weights()[k];
        match classes.iter_mut().find(|c| c.0 == w) {
            Some(c) => c.1.push(k),
            None => classes.push((w, vec![k])),
        }
    }
    for (_, class) in &classes {
        if class.len() < 2 {
            continue;
        }
        for t in 0..class.len() {
            forms.push(
                class
                    .iter()
                    .map(|&k| (k, field.from_i64(generic_coefficient(forms.len() + t, k))))
                    .collect(),
            );
        }
    }
    let form_image = |f: &[(usize, F::Elem)]| {
        let mut acc = Polynomial::zero(target);
        for (k, c) in f {
            acc = &acc + &images[*k].scale(c);
        }
        acc
    };
    let candidates: Vec<Polynomial<F>> = forms.iter().map(|f| form_image(f)).collect();
    let Some(rs) = regular_sequence(target, ideal, &candidates, budget)? else {
        return Ok(None);
    };
    let mut ech = Echelon::new(field.clone(), n);
    for &i in &rs.indices {
        ech.insert(&forms[i]);
    }
    let remaining: Vec<usize> = (0..n).filter(|&k| ech.insert(&[(k, field.one())])).collect();
    let theta = rs
        .indices
        .iter()
        .map(|&i| Polynomial::from_terms(source, forms[i].iter().map(|(k, c)| (Monomial::var(n, *k), c.clone()))))
        .collect();
    if remaining.is_empty() {
        // every variable is used up: T/(L + theta) is a graded vector space
        let std = rs
            .quotient
            .all_standard_monomials()
            .expect("the quotient has finite length");
        let mut dims = std::collections::BTreeMap::new();
        for m in &std {
            *dims.entry(target.degree(m)).or_insert(0usize) += 1;
        }
        let module = FiniteModule::new(field.clone(), Vec::new(), dims, Vec::new())?;
        return Ok(Some(FiniteReduction {
            theta,
            remaining,
            module,
        }));
    }
    let names = remaining.iter().map(|&k| source.names()[k].clone()).collect();
    let weights = remaining.iter().map(|&k| source.weights()[k]).collect();
    let acting = PolyRing::new(names, weights, field.clone())?;
    let rest: Vec<Polynomial<F>> = remaining.iter().map(|&k| images[k].clone()).collect();
    let mut qm = QuotientModule::new(&acting, target, Some(&rs.quotient), &rest)?;
    let module = qm.to_finite().expect("the quotient has finite length");
    Ok(Some(FiniteReduction {
        theta,
        remaining,
        module,
    }))
}

fn caps_from(table: &BettiTable, max_index: usize) -> DegreeCaps {
    DegreeCaps::Proved((0..=max_index).map(|i| table.t(i)).collect())
}

fn finish<F: Field, M: GradedModule<F>>(
    base: &mut GradedRing<F>,
    module: &mut M,
    opts: &ResolveOptions,
    caps: DegreeCaps,
    certificate: CapCertificate,
    label: &str,
) -> Result<Resolution<F>> {
    let out: EngineOutput<F> = resolve(base, module, opts.max_index, &caps, label);
    if opts.verify {
        assert!(out.complex.composes_to_zero(), "differentials do not compose to zero");
        assert!(augmentation_is_zero(module, &out), "first syzygies do not map to zero");
        assert!(out.complex.is_minimal(), "resolution is not minimal");
    }
    Ok(Resolution {
        complex: out.complex,
        betti: out.betti,
        certificate,
        generator_degrees: out.gens0.iter().map(|g| g.0).collect(),
    })
}

/// Minimal free resolution over the polynomial ring of the presentation,
/// up to homological index `opts.max_index`.
///
/// For quotients and algebras the degree caps come from a regular sequence
/// (see [`reduce_to_finite`]) and the table is exact. Quotients without one,
/// and minimal cokernel presentations, are resolved by iterated syzygies.
/// Otherwise the computation runs up to `opts.degree_cap` and the table is
/// marked capped.
pub fn minimal_free_resolution<F: Field>(pres: &ModulePresentation<F>, opts: &ResolveOptions) -> Result<Resolution<F>> {
    let label = pres.label();
    match pres {
        ModulePresentation::Quotient(ideal) => {
            let s = ideal.ring();
            if ideal.groebner().is_unit_ideal() {
                return Err(AlgebraError::InsufficientData("the quotient ring is zero".into()));
            }
            let alg = ModulePresentation::Algebra {
                source: s.clone(),
                target: s.clone(),
                ideal: ideal.generators().to_vec(),
                images: s.vars(),
            };
            let fallback = ResolveOptions {
                degree_cap: None,
                ..opts.clone()
            };
            match minimal_free_resolution(&alg, &fallback) {
                Ok(mut r) => {
                    r.betti = relabel(&r.betti, &label);
                    Ok(r)
                }
                Err(AlgebraError::InsufficientData(_)) => {
                    let gens = minimal_ideal_generators(ideal)?
                        .into_iter()
                        .map(FreeModuleElement::from_poly)
                        .collect::<Result<Vec<_>>>()?;
                    syzygy_resolution(s, vec![0], gens, opts, &label)
                }
                Err(e) => Err(e),
            }
        }
        ModulePresentation::Cokernel { ring, shifts, columns } => {
            let gens = minimal_generators(columns)?;
            let inside_max_ideal = gens.iter().all(|g| {
                g.coords()
                    .iter()
                    .zip(g.shifts())
                    .all(|(p, s)| p.is_zero() || g.degree().expect("nonzero") > *s)
            });
            if inside_max_ideal {
                return syzygy_resolution(ring, shifts.clone(), gens, opts, &label);
            }
            let cap = opts.degree_cap.ok_or_else(|| {
                AlgebraError::InsufficientData("the presentation is not minimal; a degree cap is required".into())
            })?;
            let mut module = CokernelModule::new(ring, shifts.clone(), columns)?;
            let mut base = GradedRing::new(ring, None);
            finish(
                &mut base,
                &mut module,
                opts,
                DegreeCaps::Scan(cap),
                CapCertificate::Scan { cap },
                &label,
            )
        }
        ModulePresentation::Algebra {
            source,
            target,
            ideal,
            images,
        } => {
            for p in ideal.iter().chain(images) {
                if !same_ring(p.ring(), target) {
                    return Err(AlgebraError::RingMismatch(p.ring().header()));
                }
                if !p.is_homogeneous() {
                    return Err(AlgebraError::GradingError(format!("{} is not homogeneous", p)));
                }
            }
            let gb = if ideal.iter().all(Polynomial::is_zero) {
                None
            } else {
                Some(buchberger(target, ideal, MonomialOrder::GRevLex)?)
            };
            let mut module = QuotientModule::new(source, target, gb.as_ref(), images)?;
            let mut base = GradedRing::new(source, None);
            match reduce_to_finite(source, target, ideal, images, opts.search_budget)? {
                Some(red) => {
                    let table = red.betti_table(&label, opts.max_index);
                    let caps = caps_from(&table, opts.max_index);
                    let r = finish(&mut base, &mut module, opts, caps, red.certificate(), &label)?;
                    for i in 0..=opts.max_index {
                        for j in table.entries().filter(|e| e.0 == i).map(|e| e.1) {
                            assert_eq!(
                                r.betti.get(i, j),
                                table.get(i, j),
                                "resolution and Koszul route disagree at ({}, {})",
                                i,
                                j
                            );
                        }
                    }
                    Ok(r)
                }
                None => {
                    let cap = opts.degree_cap.ok_or_else(|| {
                        AlgebraError::InsufficientData("no regular sequence found; a degree cap is required".into())
                    })?;
                    finish(
                        &mut base,
                        &mut module,
                        opts,
                        DegreeCaps::Scan(cap),
                        CapCertificate::Scan { cap },
                        &label,
                    )
                }
            }
        }
    }
}

/// Iterated minimal syzygies of a minimal presentation whose columns lie in
/// the maximal ideal times `F_0`. Each step is a minimal generating set of
/// the kernel of the previous map, so the result is a minimal resolution.
fn syzygy_resolution<F: Field>(
    ring: &Ring<F>,
    shifts0: Vec<i64>,
    columns: Vec<FreeModuleElement<F>>,
    opts: &ResolveOptions,
    label: &str,
) -> Result<Resolution<F>> {
    let mut shifts = vec![shifts0];
    let mut maps: Vec<Vec<Vec<Polynomial<F>>>> = Vec::new();
    let mut current = columns;
    while !current.is_empty() && maps.len() < opts.max_index {
        shifts.push(current.iter().map(|c| c.degree().expect("nonzero")).collect());
        maps.push(current.iter().map(|c| c.coords().to_vec()).collect());
        if maps.len() == opts.max_index {
            break;
        }
        current = syzygies(&current)?;
    }
    let mut betti = BettiTable::new(label, opts.max_index, 0, false);
    let mut top = 0;
    for (i, row) in shifts.iter().enumerate() {
        for &j in row {
            betti.add(i, j, 1);
            top = top.max(j);
        }
    }
    let betti = relabel_with_cap(&betti, label, top);
    let generator_degrees = shifts[0].clone();
    let complex = GradedFreeComplex::new(ring, None, 0, shifts, maps)?;
    if opts.verify {
        assert!(complex.composes_to_zero(), "differentials do not compose to zero");
        assert!(complex.is_minimal(), "resolution is not minimal");
    }
    Ok(Resolution {
        complex,
        betti,
        certificate: CapCertificate::Syzygies,
        generator_degrees,
    })
}

fn relabel_with_cap(t: &BettiTable, label: &str, cap: i64) -> BettiTable {
    let mut out = BettiTable::new(label, t.max_index(), cap, t.is_capped());
    for (i, j, c) in t.entries() {
        out.add(i, j, c);
    }
    out
}

fn relabel(t: &BettiTable, label: &str) -> BettiTable {
    relabel_with_cap(t, label, t.cap())
}

/// Exact Betti table of `T/L` over `S` via [`reduce_to_finite`], without
/// building the resolution. `None` when no regular sequence was found.
pub fn betti_table_by_reduction<F: Field>(
    source: &Ring<F>,
    target: &Ring<F>,
    ideal: &[Polynomial<F>],
    images: &[Polynomial<F>],
    label: &str,
    budget: usize,
) -> Result<Option<(BettiTable, CapCertificate)>> {
    Ok(reduce_to_finite(source, target, ideal, images, budget)?
        .map(|red| (red.betti_table(label, source.nvars()), red.certificate())))
}

/// Proved caps for `Tor^R_i(k, k)`, `R = S/J`, when they are available.
fn residue_field_caps<F: Field>(gb: &GroebnerBasis<F>, max_index: usize) -> Option<(Vec<End>, CapCertificate)> {
    let w = gb.ring().weights();
    if gb.elements().is_empty() {
        let mut sorted = w.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let caps = (0..=max_index)
            .map(|i| {
                if i <= sorted.len() {
                    End::Finite(sorted[..i].iter().map(|&x| x as i64).sum())
                } else {
                    End::NegInf
                }
            })
            .collect();
        return Some((caps, CapCertificate::PolynomialRing));
    }
    let w0 = w[0];
    let quadratic = w.iter().all(|&x| x == w0) && gb.lead_monomials().iter().all(|m| m.total_degree() == 2);
    if !quadratic {
        return None;
    }
    let caps = (0..=max_index).map(|i| End::Finite(i as i64 * w0 as i64)).collect();
    Some((caps, CapCertificate::Koszul { weight: w0 }))
}

/// Minimal free resolution of the residue field over `R = S/J`, computed
/// degree by degree with normal forms modulo `J`. When `J` has a quadratic
/// Groebner basis (all weights equal) or is zero, the degree caps are
/// proved; otherwise entries above `degree_cap` are unknown.
pub fn resolution_over_quotient<F: Field>(
    ideal: &IdealData<F>,
    max_index: usize,
    degree_cap: Option<i64>,
) -> Result<Resolution<F>> {
    let ring = ideal.ring();
    let gb = ideal.groebner();
    if gb.is_unit_ideal() {
        return Err(AlgebraError::InsufficientData("the quotient ring is zero".into()));
    }
    let label = format!("k over {} / ({} generators)", ring.header(), ideal.generators().len());
    let (caps, certificate) = match residue_field_caps(gb, max_index) {
        Some((caps, cert)) => (DegreeCaps::Proved(caps), cert),
        None => {
            let cap = degree_cap.ok_or_else(|| {
                AlgebraError::InsufficientData("no proved degree caps; a degree cap is required".into())
            })?;
            (DegreeCaps::Scan(cap), CapCertificate::Scan { cap })
        }
    };
    let mut base = GradedRing::new(ring, Some(gb));
    let mut module = FiniteModule::residue_field(ring.field().clone(), ring.weights().to_vec());
    let opts = ResolveOptions {
        max_index,
        degree_cap,
        ..Default::default()
    };
    finish(&mut base, &mut module, &opts, caps, certificate, &label)
}

/// Resolution of an ideal `L` of `T` (given by a Groebner basis) as a module
/// over `S` through `images`, which must lie in `L`, for indices up to
/// `caps.len() - 1`. The caller vouches for `t_i <= caps[i]`.
pub fn ideal_module_resolution<F: Field>(
    source: &Ring<F>,
    gb: &GroebnerBasis<F>,
    images: &[Polynomial<F>],
    caps: Vec<End>,
) -> Result<Resolution<F>> {
    if caps.is_empty() {
        return Err(AlgebraError::InsufficientData("no caps supplied".into()));
    }
    let label = format!("ideal of {} over {}", gb.ring().header(), source.header());
    let mut base = GradedRing::new(source, None);
    let mut module = IdealModule::new(source, gb, images)?;
    let opts = ResolveOptions {
        max_index: caps.len() - 1,
        ..Default::default()
    };
    let certificate = CapCertificate::Supplied { caps: caps.clone() };
    finish(
        &mut base,
        &mut module,
        &opts,
        DegreeCaps::Proved(caps),
        certificate,
        &label,
    )
}
