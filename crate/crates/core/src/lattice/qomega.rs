use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ratio, EisensteinInt, LatticeError, RationalPair, SqrtThreeScalar};

/// An element `a + bω` of the field ℚ(ω).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QOmega {
    pub a: BigRational,
    pub b: BigRational,
}

impl QOmega {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    /// `(an/ad) + (bn/bd)ω`.
    pub fn from_ratios(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Self::new(ratio(an, ad), ratio(bn, bd))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    pub fn omega() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_eis(z: EisensteinInt) -> Self {
        Self::new(BigRational::from_integer(z.a.into()), BigRational::from_integer(z.b.into()))
    }

    /// `z / 3^k`.
    pub fn from_eis_scaled(z: EisensteinInt, k: u32) -> Self {
        let d = BigRational::from_integer(num_bigint::BigInt::from(3).pow(k));
        Self::new(BigRational::from_integer(z.a.into()) / &d, BigRational::from_integer(z.b.into()) / d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.a * k, &self.b * k)
    }

    pub fn conj(&self) -> Self {
        Self::new(&self.a + &self.b, -&self.b)
    }

    /// Squared modulus `a² + ab + b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, LatticeError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(LatticeError::DivisionByZero);
        }
        let c = self.conj();
        Ok(Self::new(c.a / &n, c.b / n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, LatticeError> {
        Ok(self * &rhs.inv()?)
    }

    /// Real part `a + b/2`.
    pub fn re(&self) -> BigRational {
        &self.a + &self.b / BigRational::from_integer(2.into())
    }

    /// Imaginary part `b·√3/2`, exact in ℚ(√3).
    pub fn im(&self) -> SqrtThreeScalar {
        SqrtThreeScalar::new(BigRational::zero(), &self.b / BigRational::from_integer(2.into()))
    }

    pub fn to_xy(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        (a + 0.5 * b, b * 3f64.sqrt() / 2.0)
    }

    /// The lattice point equal to `self·3^k`, if it is one.
    pub fn to_eis_scaled(&self, k: u32) -> Option<EisensteinInt> {
        use num_traits::ToPrimitive;
        let s = BigRational::from_integer(num_bigint::BigInt::from(3).pow(k));
        let a = &self.a * &s;
        let b = &self.b * s;
        if !a.is_integer() || !b.is_integer() {
            return None;
        }
        Some(EisensteinInt::new(a.to_integer().to_i64()?, b.to_integer().to_i64()?))
    }
}

impl From<EisensteinInt> for QOmega {
    fn from(z: EisensteinInt) -> Self {
        Self::from_eis(z)
    }
}

impl<'a> Add<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn add(self, rhs: &QOmega) -> QOmega {
        QOmega::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn sub(self, rhs: &QOmega) -> QOmega {
        QOmega::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a QOmega> for &'a QOmega {
    type Output = QOmega;
    fn mul(self, rhs: &QOmega) -> QOmega {
        let bd = &self.b * &rhs.b;
        QOmega::new(&self.a * &rhs.a - &bd, &self.a * &rhs.b + &self.b * &rhs.a + bd)
    }
}

impl Add for QOmega {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for QOmega {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for QOmega {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

/// Panics on division by zero; see [`QOmega::checked_div`].
impl Div for QOmega {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("QOmega division by zero")
    }
}

impl Neg for QOmega {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl fmt::Debug for QOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QOmega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})ω", self.a, self.b)
    }
}

#[derive(Serialize, Deserialize)]
struct QOmegaRepr {
    a: RationalPair,
    b: RationalPair,
}

impl Serialize for QOmega {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QOmegaRepr { a: (&self.a).into(), b: (&self.b).into() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QOmega {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = QOmegaRepr::deserialize(d)?;
        Ok(Self::new(
            r.a.try_into().map_err(serde::de::Error::custom)?,
            r.b.try_into().map_err(serde::de::Error::custom)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_division_round_trips() {
        let x = QOmega::from_ratios(59, 111, 17, 111);
        let y = QOmega::from_ratios(-2, 3, 5, 7);
        let q = x.checked_div(&y).unwrap();
        assert_eq!(&q * &y, x);
        assert!(x.checked_div(&QOmega::zero()).is_err());
    }

    #[test]
    fn omega_squared() {
        let w = QOmega::omega();
        assert_eq!(&w * &w, QOmega::from_ratios(-1, 1, 1, 1));
    }

    #[test]
    fn imaginary_part_is_exact() {
        let m = QOmega::from_ratios(59, 111, 17, 111);
        assert_eq!(m.im(), SqrtThreeScalar::from_ratios(0, 1, 17, 222));
        assert_eq!(m.re(), ratio(135, 222));
    }

    #[test]
    fn lattice_round_trip() {
        let z = EisensteinInt::new(4, 4);
        let q = QOmega::from_eis_scaled(z, 2);
        assert_eq!(q, QOmega::from_ratios(4, 9, 4, 9));
        assert_eq!(q.to_eis_scaled(2), Some(z));
        assert_eq!(q.to_eis_scaled(1), None);
    }
}
