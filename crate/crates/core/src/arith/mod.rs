//! Exact rational arithmetic and dense univariate polynomials over the rationals.

mod parse;
mod poly;

pub use parse::parse_poly;
pub use poly::QPoly;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text form of a rational: `n` or `n/d`.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Inverse of [`format_rat`].
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// Serde adapter writing rationals as their canonical strings.
pub mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("squarefree decomposition of the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid place {0}: must be monic, non-constant and squarefree")]
    InvalidPlace(String),
    #[error("degree {degree} exceeds weight {weight}")]
    WeightOverflow { degree: usize, weight: usize },
    #[error("polynomial parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Order of vanishing: a non-negative integer, or `+∞` for the zero polynomial.
///
/// `Finite` sorts below `Infinite`, so the derived ordering is the extended one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtVal {
    Finite(u32),
    Infinite,
}

impl ExtVal {
    pub fn finite(self) -> Option<u32> {
        match self {
            ExtVal::Finite(v) => Some(v),
            ExtVal::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ExtVal::Infinite
    }

    /// `self >= k` in the extended order.
    pub fn at_least(self, k: u32) -> bool {
        self >= ExtVal::Finite(k)
    }

    /// Multiply by a positive integer, with `∞` absorbing.
    pub fn scale(self, k: u32) -> ExtVal {
        match self {
            ExtVal::Finite(v) => ExtVal::Finite(v * k),
            ExtVal::Infinite => ExtVal::Infinite,
        }
    }
}

impl std::ops::Add for ExtVal {
    type Output = ExtVal;
    fn add(self, rhs: ExtVal) -> ExtVal {
        match (self, rhs) {
            (ExtVal::Finite(a), ExtVal::Finite(b)) => ExtVal::Finite(a + b),
            _ => ExtVal::Infinite,
        }
    }
}

impl PartialEq<u32> for ExtVal {
    fn eq(&self, other: &u32) -> bool {
        *self == ExtVal::Finite(*other)
    }
}

impl PartialOrd<u32> for ExtVal {
    fn partial_cmp(&self, other: &u32) -> Option<Ordering> {
        Some(self.cmp(&ExtVal::Finite(*other)))
    }
}

impl fmt::Display for ExtVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtVal::Finite(v) => write!(f, "{v}"),
            ExtVal::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtVal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtVal::Finite(v) => s.serialize_u32(*v),
            ExtVal::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtVal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(ExtVal::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(ExtVal::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad valuation {s:?}"))),
        }
    }
}
