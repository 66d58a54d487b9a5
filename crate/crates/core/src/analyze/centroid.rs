use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{measures::curve_area_limit, AnalyzeError};
use crate::lattice::{ratio, rational_serde, QOmega};

/// One piece of the self-similar dissection: it contributes
/// `weight · (offset + coeff·m) / 3` to the centroid `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentroidPart {
    #[serde(with = "rational_serde")]
    pub weight: BigRational,
    pub offset: QOmega,
    pub coeff: QOmega,
}

/// Four curve copies and one triangle, in the frame scaled by 3: copies on
/// `0→1`, `1→2+ω` (weight 1/3), `2+ω→2` and `2→3`, plus the spike triangle
/// with centroid `(5+ω)/3`.
pub fn centroid_parts() -> Vec<CentroidPart> {
    let part = |w: (i64, i64), off: QOmega, c: QOmega| CentroidPart { weight: ratio(w.0, w.1), offset: off, coeff: c };
    vec![
        part((1, 9), QOmega::zero(), QOmega::one()),
        part((1, 3), QOmega::one(), QOmega::from_ratios(1, 1, 1, 1)),
        part((1, 9), QOmega::from_ratios(2, 1, 1, 1), QOmega::from_ratios(0, 1, -1, 1)),
        part((1, 9), QOmega::from_ratios(2, 1, 0, 1), QOmega::one()),
        part((1, 3), QOmega::from_ratios(5, 3, 1, 3), QOmega::zero()),
    ]
}

/// Right-hand side of the centroid equation evaluated at `m`.
pub fn centroid_rhs(parts: &[CentroidPart], m: &QOmega) -> QOmega {
    let third = ratio(1, 3);
    parts.iter().fold(QOmega::zero(), |acc, p| {
        let term = (&p.offset + &(&p.coeff * m)).scale(&(&p.weight * &third));
        &acc + &term
    })
}

/// `m − rhs(m)`; zero exactly at the centroid.
pub fn centroid_residual(parts: &[CentroidPart], m: &QOmega) -> QOmega {
    m - &centroid_rhs(parts, m)
}

/// Solves `m = Σ wᵢ(oᵢ + cᵢ m)/3` over ℚ(ω).
pub fn centroid_solve_parts(parts: &[CentroidPart]) -> Result<QOmega, AnalyzeError> {
    let third = ratio(1, 3);
    let mut lhs = QOmega::one();
    let mut rhs = QOmega::zero();
    for p in parts {
        let w = &p.weight * &third;
        lhs = &lhs - &p.coeff.scale(&w);
        rhs = &rhs + &p.offset.scale(&w);
    }
    rhs.checked_div(&lhs)
        .map_err(|_| AnalyzeError::Internal("centroid equation is singular; check the part coefficients".into()))
}

pub fn centroid_solve() -> Result<QOmega, AnalyzeError> {
    centroid_solve_parts(&centroid_parts())
}

/// Volume over π of the solid swept by rotating the limit region about its
/// base: `2·Im(m)·A` (Pappus).
pub fn revolution_volume_for(m: &QOmega) -> Result<BigRational, AnalyzeError> {
    let two = crate::lattice::SqrtThreeScalar::from_int(2);
    let v = &(&two * &m.im()) * &curve_area_limit();
    if !v.is_rational() {
        return Err(AnalyzeError::Internal(format!("volume {v} is not rational")));
    }
    Ok(v.p)
}

pub fn revolution_volume() -> Result<BigRational, AnalyzeError> {
    revolution_volume_for(&centroid_solve()?)
}

pub fn weights_sum(parts: &[CentroidPart]) -> BigRational {
    parts.iter().fold(BigRational::zero(), |a, p| a + &p.weight)
}
