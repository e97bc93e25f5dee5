//! Exact graded commutative algebra over prime fields and the rationals.

pub mod bounds;
pub mod error;
pub mod ext;
pub mod field;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod resolutions;
pub mod veronese;

pub use error::{AlgebraError, Result};
pub use ext::End;
pub use field::{Field, FieldScalar, FieldTag, PrimeField, RationalField};
