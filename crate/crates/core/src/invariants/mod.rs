//! Finite matrix groups acting on polynomial rings, their invariants, and
//! the presentation `S -> R = B^G` built from minimal invariant generators.

mod generators;
mod group;
mod instance;
mod presets;

pub use generators::{
    generates_all, invariant_generators, tau, trim_generators, trim_generators_with, TrimClause, TrimOutcome,
};
pub use group::{enumerate_group, GroupAction};
pub use instance::{build_derksen_instance, DerksenInstance};
pub use presets::{cyclic_scalar, permutation, root_of_unity, swap, GroupFile, DEFAULT_GROUP_CAP};
