//! Weighted polynomial rings, monomial orders and a text format.

mod monomial;
mod order;
pub mod parse;
mod polynomial;
mod ring;

pub(crate) use monomial::enumerate_degree;
pub use monomial::{minimalize, Monomial};
pub use order::MonomialOrder;
pub use parse::{parse_polynomial, parse_polynomial_lines, parse_ring_header, RingHeader};
pub(crate) use polynomial::same_ring;
pub use polynomial::Polynomial;
pub use ring::{binomial, PolyRing, Ring};
