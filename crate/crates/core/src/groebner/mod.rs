//! Groebner bases of homogeneous ideals and submodules of graded free
//! modules, syzygies, elimination and Hilbert series.

mod elim;
pub mod hilbert;
mod ideal;
mod module;
mod vector;

pub use elim::{kernel_of_ring_map, RingMapGraph};
pub use hilbert::{
    hilbert_function, hilbert_numerator, krull_dimension, monomial_numerator, regular_sequence, RegularSequence, TPoly,
};
pub use ideal::{buchberger, quotient_end, GroebnerBasis, IdealData};
pub use module::{
    minimal_generators, minimal_ideal_generators, syzygies, syzygies_of_polys, t1_of_ideal, FreeModuleElement,
    ModuleGroebnerBasis,
};

#[cfg(test)]
mod tests;
