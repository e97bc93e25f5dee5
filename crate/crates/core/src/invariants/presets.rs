use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldTag, PrimeField};
use crate::linalg::ScalarMatrix;
use crate::poly::Ring;

use super::group::{enumerate_group, GroupAction};

/// Largest group the presets and group files will enumerate.
pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// A primitive `m`-th root of unity of the field.
pub fn root_of_unity<F: Field>(field: &F, m: u32) -> Result<F::Elem> {
    match field.tag() {
        FieldTag::Prime(p) => {
            let w = PrimeField::new(p as u64)?.primitive_root_of_unity(m)?;
            Ok(field.from_i64(w as i64))
        }
        FieldTag::Rational => match m {
            1 => Ok(field.one()),
            2 => Ok(field.from_i64(-1)),
            _ => Err(AlgebraError::FieldUnsuitable { p: 0, m }),
        },
    }
}

/// The cyclic group of order `m` acting by `x_i -> w x_i`.
pub fn cyclic_scalar<F: Field>(ring: &Ring<F>, m: u32) -> Result<GroupAction<F>> {
    let field = ring.field().clone();
    let w = root_of_unity(&field, m)?;
    let n = ring.nvars();
    let g = ScalarMatrix::from_columns(field.clone(), n, (0..n).map(|i| vec![(i, w.clone())]).collect())?;
    enumerate_group(ring, vec![g], m as usize)
}

/// Exchanges the first two variables.
pub fn swap<F: Field>(ring: &Ring<F>) -> Result<GroupAction<F>> {
    let n = ring.nvars();
    if n < 2 {
        return Err(AlgebraError::ShapeError("swap needs at least two variables".into()));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, 1);
    permutation(ring, &[perm])
}

/// The group generated by permutations of the variables; each permutation
/// lists the image of every index.
pub fn permutation<F: Field>(ring: &Ring<F>, perms: &[Vec<usize>]) -> Result<GroupAction<F>> {
    let n = ring.nvars();
    let field = ring.field().clone();
    let mut gens = Vec::with_capacity(perms.len());
    for p in perms {
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(AlgebraError::ShapeError(format!(
                "{:?} is not a permutation of 0..{}",
                p, n
            )));
        }
        // x_i -> x_{p(i)}: row i has its one in column p(i)
        let cols = (0..n)
            .map(|c| (0..n).filter(|&r| p[r] == c).map(|r| (r, field.one())).collect())
            .collect();
        gens.push(ScalarMatrix::from_columns(field.clone(), n, cols)?);
    }
    enumerate_group(ring, gens, DEFAULT_GROUP_CAP)
}

/// A group given by integer generator matrices, reduced into the field.
///
/// ```json
/// { "characteristic": 7, "generators": [[[0, 1], [1, 0]]] }
/// ```
///
/// `characteristic` is optional; when present it must match the field.
/// Row `i` of a matrix gives the image of `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<u64>,
    pub generators: Vec<Vec<Vec<i64>>>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn into_group<F: Field>(self, ring: &Ring<F>, cap: usize) -> Result<GroupAction<F>> {
        let field = ring.field().clone();
        if let Some(p) = self.characteristic {
            if p != field.characteristic() {
                return Err(AlgebraError::FieldMismatch(format!(
                    "group file declares char {}, field is {}",
                    p,
                    field.tag()
                )));
            }
        }
        let n = ring.nvars();
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            if g.len() != n || g.iter().any(|row| row.len() != n) {
                return Err(AlgebraError::ShapeError(format!(
                    "generator matrices must be {}x{}",
                    n, n
                )));
            }
            gens.push(ScalarMatrix::from_dense(field.clone(), g));
        }
        enumerate_group(ring, gens, cap)
    }
}
