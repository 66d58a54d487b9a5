//! Exact arithmetic on the hexagonal lattice ℤ[ω] and the fields ℚ(ω), ℚ(√3).

mod eisenstein;
mod qomega;
mod sqrt3;

pub use eisenstein::{eis_mul, EisensteinInt};
pub use qomega::QOmega;
pub use sqrt3::SqrtThreeScalar;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("integer overflow in lattice {0}")]
    Overflow(&'static str),
    #[error("{value} is not divisible by {divisor}")]
    NotDivisible { value: EisensteinInt, divisor: i64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// Shorthand for a reduced `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Lossless JSON form of a rational: decimal integer strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPair {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalPair {
    fn from(r: &BigRational) -> Self {
        Self { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

impl TryFrom<RationalPair> for BigRational {
    type Error = String;
    fn try_from(p: RationalPair) -> Result<Self, String> {
        let n: BigInt = p.num.parse().map_err(|e| format!("bad numerator {:?}: {e}", p.num))?;
        let d: BigInt = p.den.parse().map_err(|e| format!("bad denominator {:?}: {e}", p.den))?;
        if d == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(n, d))
    }
}

/// Serde adapter for plain `BigRational` fields.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        RationalPair::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        RationalPair::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}
