use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;

/// Monomial orders. All of them compare weighted degree first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Weighted degree, ties broken reverse lexicographically.
    #[default]
    GRevLex,
    /// Weighted degree, ties broken lexicographically.
    Lex,
    /// Product order eliminating the first `block` variables: weighted
    /// degree in the first block, reverse lex within the first block, then
    /// weighted reverse lex on the remaining variables.
    Elimination { block: usize },
}

fn revlex_tail(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn wdeg(e: &[u16], w: &[u32]) -> i64 {
    e.iter().zip(w).map(|(&x, &y)| x as i64 * y as i64).sum()
}

fn grevlex(a: &[u16], b: &[u16], w: &[u32]) -> Ordering {
    wdeg(a, w).cmp(&wdeg(b, w)).then_with(|| revlex_tail(a, b))
}

impl MonomialOrder {
    pub fn cmp(&self, weights: &[u32], a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::GRevLex => grevlex(a, b, weights),
            MonomialOrder::Lex => wdeg(a, weights).cmp(&wdeg(b, weights)).then_with(|| a.cmp(b)),
            MonomialOrder::Elimination { block } => {
                let k = block.min(a.len());
                grevlex(&a[..k], &b[..k], &weights[..k]).then_with(|| grevlex(&a[k..], &b[k..], &weights[k..]))
            }
        }
    }

    /// Whether the order compares total weighted degree first.
    pub fn is_graded(&self) -> bool {
        !matches!(self, MonomialOrder::Elimination { .. })
    }
}
