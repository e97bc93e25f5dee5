//! Exact base fields: prime fields with a machine-word modulus and the
//! rationals with arbitrary-precision numerator and denominator.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// Default prime used by experiments.
pub const DEFAULT_PRIME: u32 = 32003;

/// Which field a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    Prime(u32),
    Rational,
}

impl FieldTag {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldTag::Prime(p) => *p as u64,
            FieldTag::Rational => 0,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Prime(p) => write!(f, "F_{}", p),
            FieldTag::Rational => write!(f, "Q"),
        }
    }
}

/// A self-describing field element, used at API boundaries where values from
/// different fields may meet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Fp { value: u32, p: u32 },
    Rational(BigRational),
}

impl FieldScalar {
    pub fn tag(&self) -> FieldTag {
        match self {
            FieldScalar::Fp { p, .. } => FieldTag::Prime(*p),
            FieldScalar::Rational(_) => FieldTag::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Fp { value, .. } => *value == 0,
            FieldScalar::Rational(q) => q.is_zero(),
        }
    }
}

/// Arithmetic of an exact field. Elements are plain values; the field
/// instance carries any runtime parameter such as the modulus.
// elements are built by the field instance, which carries the modulus
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// The class of `num / den`; `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    fn to_scalar(&self, a: &Self::Elem) -> FieldScalar;
    fn from_scalar(&self, s: &FieldScalar) -> Result<Self::Elem>;
    /// Canonical text form, parseable by [`crate::poly::parse`].
    fn format(&self, a: &Self::Elem) -> String;

    fn characteristic(&self) -> u64 {
        self.tag().characteristic()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `a - b * c`
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field F_p, p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u32 {
        v.rem_euclid(self.p as i128) as u32
    }

    fn reduce_big(&self, v: &BigInt) -> u32 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u32().expect("residue fits in u32")
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        let p = self.p as u64;
        if p == 2 {
            return 1;
        }
        let order = p - 1;
        let mut factors = Vec::new();
        let mut n = order;
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                factors.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            factors.push(n);
        }
        (2..p)
            .find(|&g| factors.iter().all(|&q| self.pow(&(g as u32), order / q) != 1))
            .expect("F_p^* is cyclic") as u32
    }

    /// A primitive m-th root of unity, obtained as a power of a generator of F_p^*.
    pub fn primitive_root_of_unity(&self, m: u32) -> Result<u32> {
        let p = self.p as u64;
        if m == 0 || !(p - 1).is_multiple_of(m as u64) {
            return Err(AlgebraError::FieldUnsuitable { p, m });
        }
        let g = self.primitive_element();
        Ok(self.pow(&g, (p - 1) / m as u64))
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on i64
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u32)
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i128(v as i128)
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let d = self.reduce_big(den);
        self.inv(&d).map(|di| self.mul(&self.reduce_big(num), &di))
    }
    fn to_scalar(&self, a: &u32) -> FieldScalar {
        FieldScalar::Fp { value: *a, p: self.p }
    }
    fn from_scalar(&self, s: &FieldScalar) -> Result<u32> {
        match s {
            FieldScalar::Fp { value, p } if *p == self.p => Ok(*value % self.p),
            other => Err(AlgebraError::FieldMismatch(format!(
                "expected F_{}, got {}",
                self.p,
                other.tag()
            ))),
        }
    }
    fn format(&self, a: &u32) -> String {
        // symmetric representative
        if *a as u64 * 2 > self.p as u64 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn to_scalar(&self, a: &BigRational) -> FieldScalar {
        FieldScalar::Rational(a.clone())
    }
    fn from_scalar(&self, s: &FieldScalar) -> Result<BigRational> {
        match s {
            FieldScalar::Rational(q) => Ok(q.clone()),
            other => Err(AlgebraError::FieldMismatch(format!("expected Q, got {}", other.tag()))),
        }
    }
    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", -a.numer(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(PrimeField::new(32001), Err(AlgebraError::NotPrime(32001)));
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn roots_of_unity() {
        let f = PrimeField::new(32003).unwrap();
        // 32002 = 2 * 16001
        let w = f.primitive_root_of_unity(2).unwrap();
        assert_eq!(w, 32002);
        assert!(matches!(
            f.primitive_root_of_unity(3),
            Err(AlgebraError::FieldUnsuitable { .. })
        ));
        let g = PrimeField::new(31).unwrap();
        let w = g.primitive_root_of_unity(5).unwrap();
        assert_eq!(g.pow(&w, 5), 1);
        assert_ne!(w, 1);
    }

    #[test]
    fn rational_normal_form() {
        let q = RationalField;
        let a = q.from_ratio(&BigInt::from(4), &BigInt::from(-6)).unwrap();
        assert_eq!(q.format(&a), "-2/3");
    }

    proptest! {
        #[test]
        fn fp_matches_integer_arithmetic(a in -100_000i64..100_000, b in -100_000i64..100_000) {
            let f = PrimeField::new(32003).unwrap();
            let (x, y) = (f.from_i64(a), f.from_i64(b));
            prop_assert_eq!(f.add(&x, &y), f.from_i64(a + b));
            prop_assert_eq!(f.sub(&x, &y), f.from_i64(a - b));
            prop_assert_eq!(f.mul(&x, &y), f.from_i64(a * b));
            if x != 0 {
                prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), 1);
            }
        }
    }
}
