//! Degree bounds as evaluators and verdicts comparing them with computed
//! Betti and homology data.
//!
//! Each verdict compares `lhs <= rhs`. Values computed up to a degree cap are
//! lower bounds for the true ones, which decides what a comparison can
//! prove: see [`BoundVerdict::compare`].

mod checks;
mod compose;
mod compute;
mod lemmas;
mod profile;
mod verdict;

pub use checks::{check_derksen, check_koszul_corollary, check_main_theorem, check_theorem_r};
pub use compose::{
    max_over_compositions, max_over_compositions_brute, residue_field_t, t_of, u_closed_form, u_of, u_parts,
};
pub use compute::{compute_profile, ProfileOptions, RSource};
pub use lemmas::{
    check_algebra_bounds, check_bottom_row, check_complex_theorem, check_dual_route, check_first_column,
    check_ideal_lemma, check_module_lemma, check_residue_field_final, check_split, check_superadditivity,
    check_support_lemmas, support_lemmas_available, Skipped, SUPERADDITIVITY_RANGE,
};
pub use profile::{HomologyModuleData, TSeries, TValue, TorProfile, WitnessCell};
pub use verdict::{
    kind_counts, outcome, summary_table, BoundVerdict, Gate, Head, Outcome, Provenance, Side, Status, VerdictKind,
};

/// Every verdict the profile supports, in a fixed order, with the support
/// checks that lacked data.
pub fn check_all(p: &TorProfile) -> (Vec<BoundVerdict>, Vec<Skipped>) {
    let mut out = check_derksen(p);
    out.extend(check_main_theorem(p));
    out.extend(check_theorem_r(p));
    out.extend(check_koszul_corollary(p));
    let (support, skipped) = support_lemmas_available(p);
    out.extend(support);
    (out, skipped)
}

#[cfg(test)]
mod tests;
