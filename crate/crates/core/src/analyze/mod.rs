//! Closed-form and numerical properties of the iterates and of the limit
//! curve, plus loop detection and the loop-free curve.

mod cantor;
mod centroid;
mod connectivity;
mod curve_c;
mod dimension;
mod height;
mod loops;
mod measures;

pub use cantor::{cantor_remainder, middle_thirds, CantorIntervals};
pub use centroid::{
    centroid_parts, centroid_residual, centroid_rhs, centroid_solve, centroid_solve_parts, revolution_volume,
    revolution_volume_for, weights_sum, CentroidPart,
};
pub use connectivity::{
    annulus_fixture, connectivity_of_rings, connectivity_of_triangles, simply_connected_check, ConnectivityReport,
    FillRule, Region,
};
pub use curve_c::{
    curve_c_generate, curve_c_symmetry_check, symmetry_center, Colour, ColouredEdge, CurveC, SymmetryReport,
};
pub use dimension::{dimension_closed, hausdorff_dimension, moran};
pub use height::{height, height_closed, HeightReport};
pub use loops::{detect_loops, edge_contacts, remove_loops, EdgeContacts, Loop, CONTACT_CHECK_MAX_N};
pub use measures::{
    curve_area_exact, curve_area_limit, length_by_steps, length_exact, length_float, rasterized_area, tri_area_closed,
    tri_area_exact,
};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::construct::{generate_segments, ConstructError};
use crate::lattice::{rational_serde, LatticeError, QOmega, SqrtThreeScalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalyzeError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Every property of the n-th iterate, with exact values where they exist.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub n: u32,
    pub length: SqrtThreeScalar,
    pub tri_area: SqrtThreeScalar,
    pub curve_area: SqrtThreeScalar,
    pub height: SqrtThreeScalar,
    pub height_argmax_points: Vec<QOmega>,
    pub height_leftmost: QOmega,
    pub height_rightmost: QOmega,
    pub height_quoted_extremes_hold: bool,
    pub centroid: QOmega,
    #[serde(with = "rational_serde")]
    pub volume_over_pi: BigRational,
    pub hausdorff_dim: f64,
    pub cantor: CantorIntervals,
    pub loops: usize,
    pub curve_c_length: SqrtThreeScalar,
    pub curve_c_bounds_hold: bool,
    /// Hausdorff distance between the loop-free curve and the
    /// loop-removed iterate.
    pub curve_c_vs_loop_removed: f64,
}

/// Gathers every property at iteration `n`. Costs grow as `4ⁿ`.
pub fn property_report(n: u32) -> Result<PropertyReport, AnalyzeError> {
    let h = height(n);
    let p = generate_segments(n)?;
    let loops = detect_loops(&p)?.len();
    let removed = remove_loops(&p);
    let c = curve_c_generate(n)?;
    let diag = if c.polyline == removed {
        0.0
    } else {
        crate::geom::hausdorff(&c.polyline.to_xy(), &removed.to_xy(), 1.0 / (8.0 * 3f64.powi(n as i32)))
    };
    Ok(PropertyReport {
        n,
        length: length_exact(n),
        tri_area: tri_area_exact(n)?,
        curve_area: curve_area_exact(n),
        height: h.height,
        height_argmax_points: h.maximizers,
        height_leftmost: h.leftmost,
        height_rightmost: h.rightmost,
        height_quoted_extremes_hold: h.quoted_extremes_hold,
        centroid: centroid_solve()?,
        volume_over_pi: revolution_volume()?,
        hausdorff_dim: hausdorff_dimension(1e-12)?,
        cantor: cantor_remainder(n),
        loops,
        curve_c_length: c.length.clone(),
        curve_c_bounds_hold: c.bounds_hold(),
        curve_c_vs_loop_removed: diag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips_through_json() {
        let r = property_report(3).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: PropertyReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.loops, 4);
        assert_eq!(r.curve_c_vs_loop_removed, 0.0);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["volume_over_pi"]["num"], "17");
        assert_eq!(v["volume_over_pi"]["den"], "444");
        assert_eq!(v["length"]["q"]["den"], "9");
    }
}
