//! Extended integers for ends of graded modules.
//!
//! The end of the zero module is `NegInf`, the end of a module that is
//! nonzero in arbitrarily large degrees is `PosInf`. Sums follow the rule
//! `+inf + -inf = -inf`, so that `end(M (x) N) = end M + end N` always holds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    NegInf,
    Finite(i64),
    PosInf,
}

pub use End::{Finite, NegInf, PosInf};

impl End {
    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Finite(v) => Some(*v),
            _ => None,
        }
    }

    /// Maximum over an iterator; `NegInf` for an empty one.
    pub fn max_of<I: IntoIterator<Item = End>>(it: I) -> End {
        it.into_iter().fold(NegInf, End::max)
    }
}

impl From<i64> for End {
    fn from(v: i64) -> Self {
        Finite(v)
    }
}

impl Ord for End {
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(e: &End) -> (i8, i64) {
            match e {
                NegInf => (0, 0),
                Finite(v) => (1, *v),
                PosInf => (2, 0),
            }
        }
        rank(self).cmp(&rank(other))
    }
}

impl PartialOrd for End {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for End {
    type Output = End;
    fn add(self, rhs: End) -> End {
        match (self, rhs) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }
}

impl Add<i64> for End {
    type Output = End;
    fn add(self, rhs: i64) -> End {
        self + Finite(rhs)
    }
}

impl Sub<i64> for End {
    type Output = End;
    fn sub(self, rhs: i64) -> End {
        self + Finite(-rhs)
    }
}

impl Mul<i64> for End {
    type Output = End;
    fn mul(self, rhs: i64) -> End {
        match self {
            Finite(v) => Finite(v * rhs),
            NegInf if rhs >= 0 => NegInf,
            PosInf if rhs >= 0 => PosInf,
            NegInf => PosInf,
            PosInf => NegInf,
        }
    }
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => write!(f, "-inf"),
            PosInf => write!(f, "+inf"),
            Finite(v) => write!(f, "{}", v),
        }
    }
}

impl Serialize for End {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Finite(v) => s.serialize_i64(*v),
            NegInf => s.serialize_str("-inf"),
            PosInf => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for End {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct EndVisitor;
        impl Visitor<'_> for EndVisitor {
            type Value = End;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an integer, \"-inf\" or \"+inf\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<End, E> {
                Ok(Finite(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<End, E> {
                i64::try_from(v)
                    .map(Finite)
                    .map_err(|_| E::custom("integer out of range"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<End, E> {
                match v {
                    "-inf" => Ok(NegInf),
                    "+inf" | "inf" => Ok(PosInf),
                    _ => Err(E::custom(format!("invalid end value {:?}", v))),
                }
            }
        }
        d.deserialize_any(EndVisitor)
    }
}
