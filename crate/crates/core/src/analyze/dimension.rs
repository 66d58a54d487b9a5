use super::AnalyzeError;

/// `f(d) = 3^{1−d} + 3^{−d/2} − 1`, strictly decreasing; its root is the
/// similarity dimension (three maps of ratio 1/3 and one of ratio 1/√3).
pub fn moran(d: f64) -> f64 {
    3f64.powf(1.0 - d) + 3f64.powf(-d / 2.0) - 1.0
}

/// `2·ln((1+√13)/2) / ln 3`.
pub fn dimension_closed() -> f64 {
    2.0 * ((1.0 + 13f64.sqrt()) / 2.0).ln() / 3f64.ln()
}

/// Bisection on `[1, 2]` until the bracket is narrower than `tol`.
pub fn hausdorff_dimension(tol: f64) -> Result<f64, AnalyzeError> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(AnalyzeError::Precondition(format!("tolerance must be in (0, 1e-6], got {tol}")));
    }
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    debug_assert!(moran(lo) > 0.0 && moran(hi) < 0.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if moran(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solver_matches_closed_form() {
        let d = hausdorff_dimension(1e-12).unwrap();
        assert!((d - dimension_closed()).abs() < 1e-10);
        assert!((d - 1.5187).abs() < 5e-4);
        assert!((d - 1.518).abs() < 1e-3);
    }

    #[test]
    fn closed_form_is_a_root() {
        assert!(moran(dimension_closed()).abs() < 1e-12);
    }

    #[test]
    fn quadratic_reduction() {
        // x = 3^{−d/2} turns the equation into 3x² + x − 1 = 0
        let x = (13f64.sqrt() - 1.0) / 6.0;
        assert!((3.0 * x * x + x - 1.0).abs() < 1e-15);
        let d = -2.0 * x.ln() / 3f64.ln();
        assert!((d - dimension_closed()).abs() < 1e-12);
    }

    #[test]
    fn tolerance_range() {
        assert!(hausdorff_dimension(0.0).is_err());
        assert!(hausdorff_dimension(1e-5).is_err());
        assert!(hausdorff_dimension(f64::NAN).is_err());
        assert!(hausdorff_dimension(1e-6).is_ok());
    }
}
