use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{ratio, RationalPair};

/// An element `p + q√3` of ℚ(√3).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SqrtThreeScalar {
    pub p: BigRational,
    pub q: BigRational,
}

impl SqrtThreeScalar {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        Self { p, q }
    }

    pub fn from_ratios(pn: i64, pd: i64, qn: i64, qd: i64) -> Self {
        Self::new(ratio(pn, pd), ratio(qn, qd))
    }

    pub fn rational(p: BigRational) -> Self {
        Self::new(p, BigRational::zero())
    }

    pub fn from_int(p: i64) -> Self {
        Self::rational(BigRational::from_integer(p.into()))
    }

    pub fn sqrt3() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// `1/√3 = √3/3`.
    pub fn inv_sqrt3() -> Self {
        Self::new(BigRational::zero(), ratio(1, 3))
    }

    /// `√3^k` for a nonnegative integer exponent.
    pub fn sqrt3_pow(k: u32) -> Self {
        let three_half = BigInt::from(3).pow(k / 2);
        if k.is_multiple_of(2) {
            Self::rational(BigRational::from_integer(three_half))
        } else {
            Self::new(BigRational::zero(), BigRational::from_integer(three_half))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.p * k, &self.q * k)
    }

    /// Multiplicative inverse; `None` only for zero since √3 is irrational.
    pub fn inv(&self) -> Option<Self> {
        let den = &self.p * &self.p - BigRational::from_integer(3.into()) * &self.q * &self.q;
        if den.is_zero() {
            return None;
        }
        Some(Self::new(&self.p / &den, -&self.q / &den))
    }

    /// Exact sign of `p + q√3`.
    pub fn signum(&self) -> i8 {
        let sp = sign(&self.p);
        let sq = sign(&self.q);
        if sp == 0 || sq == 0 || sp == sq {
            return if sp != 0 { sp } else { sq };
        }
        // opposite signs: compare p² against 3q²
        let p2 = &self.p * &self.p;
        let q2 = BigRational::from_integer(3.into()) * &self.q * &self.q;
        match p2.cmp(&q2) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64().unwrap_or(f64::NAN) + self.q.to_f64().unwrap_or(f64::NAN) * 3f64.sqrt()
    }
}

fn sign(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for SqrtThreeScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SqrtThreeScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a SqrtThreeScalar> for &'a SqrtThreeScalar {
    type Output = SqrtThreeScalar;
    fn add(self, rhs: &SqrtThreeScalar) -> SqrtThreeScalar {
        SqrtThreeScalar::new(&self.p + &rhs.p, &self.q + &rhs.q)
    }
}

impl<'a> Sub<&'a SqrtThreeScalar> for &'a SqrtThreeScalar {
    type Output = SqrtThreeScalar;
    fn sub(self, rhs: &SqrtThreeScalar) -> SqrtThreeScalar {
        SqrtThreeScalar::new(&self.p - &rhs.p, &self.q - &rhs.q)
    }
}

impl<'a> Mul<&'a SqrtThreeScalar> for &'a SqrtThreeScalar {
    type Output = SqrtThreeScalar;
    fn mul(self, rhs: &SqrtThreeScalar) -> SqrtThreeScalar {
        let three = BigRational::from_integer(3.into());
        SqrtThreeScalar::new(&self.p * &rhs.p + three * &self.q * &rhs.q, &self.p * &rhs.q + &self.q * &rhs.p)
    }
}

impl Add for SqrtThreeScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for SqrtThreeScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for SqrtThreeScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for SqrtThreeScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.p, -self.q)
    }
}

impl std::iter::Sum for SqrtThreeScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), |acc, x| acc + x)
    }
}

impl fmt::Debug for SqrtThreeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SqrtThreeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.p),
            (true, false) => write!(f, "({})√3", self.q),
            (false, false) => write!(f, "{} + ({})√3", self.p, self.q),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Sqrt3Repr {
    p: RationalPair,
    q: RationalPair,
}

impl Serialize for SqrtThreeScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Sqrt3Repr { p: (&self.p).into(), q: (&self.q).into() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SqrtThreeScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = Sqrt3Repr::deserialize(d)?;
        Ok(Self::new(
            r.p.try_into().map_err(serde::de::Error::custom)?,
            r.q.try_into().map_err(serde::de::Error::custom)?,
        ))
    }
}
