use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::LatticeError;

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// A point `a + bω` of the hexagonal lattice, with `ω = e^{iπ/3}`.
///
/// Arithmetic is exact and overflow-checked. The operator impls panic on
/// overflow; use the `checked_*` methods where overflow is a reachable
/// condition rather than a bug.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

impl EisensteinInt {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const ONE: Self = Self { a: 1, b: 0 };
    pub const OMEGA: Self = Self { a: 0, b: 1 };
    /// `1 + ω`, of modulus √3 and argument 30°.
    pub const ONE_PLUS_OMEGA: Self = Self { a: 1, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        Self { a, b: 0 }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, LatticeError> {
        match (self.a.checked_add(rhs.a), self.b.checked_add(rhs.b)) {
            (Some(a), Some(b)) => Ok(Self { a, b }),
            _ => Err(LatticeError::Overflow("add")),
        }
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, LatticeError> {
        match (self.a.checked_sub(rhs.a), self.b.checked_sub(rhs.b)) {
            (Some(a), Some(b)) => Ok(Self { a, b }),
            _ => Err(LatticeError::Overflow("sub")),
        }
    }

    /// `(a+bω)(c+dω) = (ac−bd) + (ad+bc+bd)ω`, using `ω² = ω − 1`.
    pub fn checked_mul(self, rhs: Self) -> Result<Self, LatticeError> {
        let (a, b, c, d) = (self.a, self.b, rhs.a, rhs.b);
        let re = a.checked_mul(c).and_then(|ac| b.checked_mul(d).and_then(|bd| ac.checked_sub(bd)));
        let om = a.checked_mul(d).and_then(|ad| {
            b.checked_mul(c)
                .and_then(|bc| ad.checked_add(bc))
                .and_then(|s| b.checked_mul(d).and_then(|bd| s.checked_add(bd)))
        });
        match (re, om) {
            (Some(a), Some(b)) => Ok(Self { a, b }),
            _ => Err(LatticeError::Overflow("mul")),
        }
    }

    pub fn checked_scale(self, k: i64) -> Result<Self, LatticeError> {
        match (self.a.checked_mul(k), self.b.checked_mul(k)) {
            (Some(a), Some(b)) => Ok(Self { a, b }),
            _ => Err(LatticeError::Overflow("scale")),
        }
    }

    pub fn checked_pow(self, exp: u32) -> Result<Self, LatticeError> {
        let mut acc = Self::ONE;
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// `ω^k` for any integer `k`, reduced with `ω⁶ = 1`.
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(6) {
            0 => Self::new(1, 0),
            1 => Self::new(0, 1),
            2 => Self::new(-1, 1),
            3 => Self::new(-1, 0),
            4 => Self::new(0, -1),
            _ => Self::new(1, -1),
        }
    }

    /// Imaginary part in units of √3/2, i.e. the `b` coefficient.
    pub fn im_half_sqrt3(self) -> i64 {
        self.b
    }

    /// Real part in units of 1/2, i.e. `2a + b`.
    pub fn re_twice(self) -> i64 {
        2 * self.a + self.b
    }

    /// Squared modulus `a² + ab + b²`.
    pub fn norm(self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a + a * b + b * b
    }

    /// Complex conjugate: `a + bω̄ = (a+b) − bω`.
    pub fn conj(self) -> Self {
        Self::new(self.a + self.b, -self.b)
    }

    /// Componentwise exact division.
    pub fn div_exact(self, k: i64) -> Result<Self, LatticeError> {
        if k == 0 || self.a % k != 0 || self.b % k != 0 {
            return Err(LatticeError::NotDivisible { value: self, divisor: k });
        }
        Ok(Self::new(self.a / k, self.b / k))
    }

    /// Cartesian embedding `(a + b/2, b·√3/2)`.
    pub fn to_xy(self) -> (f64, f64) {
        (self.a as f64 + 0.5 * self.b as f64, self.b as f64 * SQRT3_2)
    }

    /// Cartesian embedding divided by `3^scale_exp`.
    pub fn to_xy_scaled(self, scale_exp: u32) -> (f64, f64) {
        let s = 3f64.powi(scale_exp as i32);
        let (x, y) = self.to_xy();
        (x / s, y / s)
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("EisensteinInt addition overflowed")
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("EisensteinInt subtraction overflowed")
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("EisensteinInt multiplication overflowed")
    }
}

impl Mul<i64> for EisensteinInt {
    type Output = Self;
    fn mul(self, rhs: i64) -> Self {
        self.checked_scale(rhs).expect("EisensteinInt scaling overflowed")
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::ZERO - self
    }
}

impl From<i64> for EisensteinInt {
    fn from(a: i64) -> Self {
        Self::from_int(a)
    }
}

impl fmt::Debug for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}ω"),
            (a, b) if b < 0 => write!(f, "{a}{b}ω"),
            (a, b) => write!(f, "{a}+{b}ω"),
        }
    }
}

/// `(a+bω)(c+dω)` with overflow reported as an error.
pub fn eis_mul(x: EisensteinInt, y: EisensteinInt) -> Result<EisensteinInt, LatticeError> {
    x.checked_mul(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    fn cmul(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
        (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(e(1, 1) * e(1, 1), e(0, 3));
        assert_eq!(e(0, 1) * e(0, 1) * e(0, 1), e(-1, 0));
        let p = e(1, 1) * -e(0, 1);
        assert_eq!(p, e(1, -2));
        let f = cmul(e(1, 1).to_xy(), (-e(0, 1)).to_xy());
        let g = p.to_xy();
        assert!((f.0 - g.0).abs() < 1e-12 && (f.1 - g.1).abs() < 1e-12);
    }

    #[test]
    fn omega_powers() {
        assert_eq!(EisensteinInt::omega_pow(0), e(1, 0));
        assert_eq!(EisensteinInt::omega_pow(-2), e(0, -1));
        assert_eq!(EisensteinInt::omega_pow(2), e(-1, 1));
        let mut acc = EisensteinInt::ONE;
        for k in 0..24 {
            assert_eq!(EisensteinInt::omega_pow(k), acc);
            acc = acc * EisensteinInt::OMEGA;
        }
    }

    #[test]
    fn imaginary_part_in_half_sqrt3_units() {
        assert_eq!(e(2, 1).im_half_sqrt3(), 1);
        assert_eq!(e(4, 4).im_half_sqrt3(), 4);
        assert_eq!(EisensteinInt::ZERO.im_half_sqrt3(), 0);
    }

    #[test]
    fn overflow_is_reported() {
        let big = e(i64::MAX / 2, i64::MAX / 2);
        assert!(matches!(big.checked_mul(big), Err(LatticeError::Overflow(_))));
        assert!(big.checked_add(big).and_then(|x| x.checked_add(x)).is_err());
        assert!(eis_mul(e(3, 0), e(0, 3)).is_ok());
    }

    #[test]
    fn conjugate_matches_float_conjugate() {
        let z = e(3, -7);
        let (x, y) = z.to_xy();
        let (cx, cy) = z.conj().to_xy();
        assert!((x - cx).abs() < 1e-12 && (y + cy).abs() < 1e-12);
        assert_eq!(z.norm(), z.conj().norm());
    }

    #[test]
    fn exact_division() {
        assert_eq!(e(9, -3).div_exact(3).unwrap(), e(3, -1));
        assert!(e(9, 1).div_exact(3).is_err());
    }
}
