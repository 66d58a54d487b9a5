//! Tiles bounded by copies of the curve, finite coverings of a window by
//! placed tiles, and a sampling check that a covering is a partition.

mod check;
mod covering;
mod tiles;

pub use check::{check_covering, check_covering_with, CheckOptions, CheckReport, Offender};
pub use covering::{cover, cover_periodic, cover_scale_invariant, Covering};
pub use tiles::{build_tile, CurveCopy, Tile, TileKind};

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::construct::ConstructError;
use crate::geom::Point;
use crate::lattice::{rational_serde, EisensteinInt, LatticeError, QOmega};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TilingError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown tile kind `{0}`")]
    UnknownKind(String),
    #[error("{0} boundary does not close")]
    NotClosed(TileKind),
    #[error("{kind} boundary at n={n} crosses itself: edge {edge_a:?} meets edge {edge_b:?}")]
    SelfIntersecting {
        kind: TileKind,
        n: u32,
        edge_a: (EisensteinInt, EisensteinInt),
        edge_b: (EisensteinInt, EisensteinInt),
    },
    #[error("{kind} has no {scheme} covering")]
    WrongScheme { kind: TileKind, scheme: &'static str },
    #[error(
        "covering check failed: {:.4}% of {} counted samples have multiplicity 1; histogram {:?}",
        .0.multiplicity_one_fraction * 100.0, .0.counted, .0.histogram
    )]
    CheckFailed(Box<CheckReport>),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `z ↦ t + 3^k · e^{iπ·rot/6} · z̄` (the conjugate only when mirrored).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub kind: TileKind,
    /// Iteration of the placed tile.
    pub n: u32,
    /// Rotation in 30° units, `0..12`.
    pub rot: u8,
    pub scale_exp: i32,
    pub translation: QOmega,
    pub mirrored: bool,
}

pub(crate) fn pow3_rational(k: i32) -> BigRational {
    let p = BigInt::from(3).pow(k.unsigned_abs());
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(1.into(), p)
    }
}

impl Placement {
    pub fn new(kind: TileKind, n: u32, rot: i64, scale_exp: i32, translation: QOmega) -> Self {
        Self { kind, n, rot: rot.rem_euclid(12) as u8, scale_exp, translation, mirrored: false }
    }

    /// Exact image of a point. Odd rotations leave ℚ(ω), so they are refused.
    pub fn apply_exact(&self, z: &QOmega) -> Result<QOmega, TilingError> {
        if self.rot % 2 == 1 {
            return Err(TilingError::Precondition(format!("rotation {}·30° is not exact in ℚ(ω)", self.rot)));
        }
        let z = if self.mirrored { z.conj() } else { z.clone() };
        let r = QOmega::from_eis(EisensteinInt::omega_pow(i64::from(self.rot / 2)));
        Ok(&self.translation + &(&r * &z).scale(&pow3_rational(self.scale_exp)))
    }

    pub fn apply_xy(&self, p: Point) -> Point {
        let (x, y) = if self.mirrored { (p.0, -p.1) } else { p };
        let th = PI * f64::from(self.rot) / 6.0;
        let (s, c) = th.sin_cos();
        let k = 3f64.powi(self.scale_exp);
        let t = self.translation.to_xy();
        (t.0 + k * (c * x - s * y), t.1 + k * (s * x + c * y))
    }

    /// The same tile scaled about the origin by `3^e`.
    pub fn scaled(&self, e: i32) -> Self {
        Self { scale_exp: self.scale_exp + e, translation: self.translation.scale(&pow3_rational(e)), ..self.clone() }
    }

    /// Exact `(a, b)` box `[t−r·3^k, t+r·3^k]` around the translation.
    fn reach_box(&self, r: i64) -> [BigRational; 4] {
        let d = pow3_rational(self.scale_exp) * BigRational::from_integer(r.into());
        let t = &self.translation;
        [&t.a - &d, &t.a + &d, &t.b - &d, &t.b + &d]
    }
}

/// The parallelogram `origin + x + yω` for `0 ≤ x ≤ width`, `0 ≤ y ≤ height`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub origin: QOmega,
    #[serde(with = "rational_serde")]
    pub width: BigRational,
    #[serde(with = "rational_serde")]
    pub height: BigRational,
}

impl Window {
    pub fn new(origin: QOmega, width: BigRational, height: BigRational) -> Result<Self, TilingError> {
        if width.is_negative() || height.is_negative() {
            return Err(TilingError::Precondition("window sides must be non-negative".into()));
        }
        Ok(Self { origin, width, height })
    }

    /// Integer window, handy for tests and the command line.
    pub fn units(a: i64, b: i64, width: i64, height: i64) -> Result<Self, TilingError> {
        Self::new(
            QOmega::from_eis(EisensteinInt::new(a, b)),
            BigRational::from_integer(width.into()),
            BigRational::from_integer(height.into()),
        )
    }

    pub fn is_empty(&self) -> bool {
        self.width.is_zero() || self.height.is_zero()
    }

    pub fn scaled(&self, e: i32) -> Self {
        let k = pow3_rational(e);
        Self { origin: self.origin.scale(&k), width: &self.width * &k, height: &self.height * &k }
    }

    pub fn point_at(&self, u: f64, v: f64) -> Point {
        let (ox, oy) = self.origin.to_xy();
        let (w, h) = (f64_of(&self.width), f64_of(&self.height));
        let half_sqrt3 = 3f64.sqrt() / 2.0;
        (ox + u * w + 0.5 * v * h, oy + half_sqrt3 * v * h)
    }

    pub fn corners(&self) -> [Point; 4] {
        [self.point_at(0.0, 0.0), self.point_at(1.0, 0.0), self.point_at(1.0, 1.0), self.point_at(0.0, 1.0)]
    }

    /// Whether an `(a, b)` box meets the window (closed sets).
    fn meets(&self, b: &[BigRational; 4]) -> bool {
        let a1 = &self.origin.a + &self.width;
        let b1 = &self.origin.b + &self.height;
        !self.is_empty() && b[0] <= a1 && self.origin.a <= b[1] && b[2] <= b1 && self.origin.b <= b[3]
    }
}

pub(crate) fn f64_of(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_and_float_transforms_agree() {
        let p = Placement {
            kind: TileKind::Dart,
            n: 2,
            rot: 4,
            scale_exp: -1,
            translation: QOmega::from_ratios(1, 3, -2, 9),
            mirrored: true,
        };
        let z = QOmega::from_ratios(5, 7, 2, 3);
        let exact = p.apply_exact(&z).unwrap().to_xy();
        let float = p.apply_xy(z.to_xy());
        assert!((exact.0 - float.0).abs() < 1e-12 && (exact.1 - float.1).abs() < 1e-12);
        let odd = Placement { rot: 3, ..p };
        assert!(odd.apply_exact(&z).is_err());
    }

    #[test]
    fn window_corners() {
        let w = Window::units(1, 0, 2, 2).unwrap();
        let c = w.corners();
        assert_eq!(c[0], (1.0, 0.0));
        assert!((c[2].0 - 4.0).abs() < 1e-12 && (c[2].1 - 3f64.sqrt()).abs() < 1e-12);
        assert!(Window::units(0, 0, -1, 1).is_err());
        assert!(Window::units(0, 0, 0, 1).unwrap().is_empty());
    }
}
