//! Minimal graded free resolutions, Betti tables, Koszul complexes and
//! their homology in bounded degrees.

mod api;
mod betti;
mod complex;
mod engine;
mod graded;
mod module;

pub use api::{
    betti_table_by_reduction, ideal_module_resolution, minimal_free_resolution, reduce_to_finite,
    resolution_over_quotient, CapCertificate, FiniteReduction, ModulePresentation, Resolution, ResolveOptions,
};
pub use betti::{regularity_from_betti, BettiTable, EndStatus, HomologyEnd, HomologyReport};
pub use complex::{
    annihilates_homology, homology_dims, homology_end, homology_end_report, homology_module, homology_table,
    koszul_complex, CapSource, GradedFreeComplex,
};
pub use engine::DegreeCaps;
pub use module::{CokernelModule, FiniteModule, GradedModule, IdealModule, QuotientModule};
