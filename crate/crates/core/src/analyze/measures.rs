use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::AnalyzeError;
use crate::construct::{digit_counts, generate_segments, generate_triangles, z_stream};
use crate::geom::EvenOdd;
use crate::lattice::{ratio, SqrtThreeScalar};

fn pow_big(base: u32, e: u32) -> BigInt {
    BigInt::from(base).pow(e)
}

/// `L_n`, the length of the n-th iterate of the unit segment.
///
/// There are `C(n,u)·3^{n−u}` steps of length `√3^u` at scale `3ⁿ`.
pub fn length_exact(n: u32) -> SqrtThreeScalar {
    let total: SqrtThreeScalar = (0..=n)
        .map(|u| {
            let count = binomial(BigInt::from(n), BigInt::from(u)) * pow_big(3, n - u);
            SqrtThreeScalar::sqrt3_pow(u).scale(&BigRational::from_integer(count))
        })
        .sum();
    total.scale(&BigRational::new(BigInt::one(), pow_big(3, n)))
}

/// `L_n` by walking every step of the stream and summing `√3^{u_{k−1}}`.
pub fn length_by_steps(n: u32) -> SqrtThreeScalar {
    let steps = 4u64.pow(n);
    let mut by_u = vec![0u64; n as usize + 1];
    for k in 0..steps {
        by_u[digit_counts(k).0 as usize] += 1;
    }
    let total: SqrtThreeScalar = by_u
        .iter()
        .enumerate()
        .map(|(u, &c)| SqrtThreeScalar::sqrt3_pow(u as u32).scale(&BigRational::from_integer(c.into())))
        .sum();
    total.scale(&BigRational::new(BigInt::one(), pow_big(3, n)))
}

/// `T_n`, the total area of the `4ⁿ` triangles, summed one by one.
pub fn tri_area_exact(n: u32) -> Result<SqrtThreeScalar, AnalyzeError> {
    let tris = generate_triangles(n)?;
    let sum: BigInt = tris.iter().map(|t| BigInt::from(t.u.norm())).sum();
    // each triangle has area (√3/4)|u|², rescaled by 9ⁿ
    Ok(SqrtThreeScalar::new(BigRational::zero(), BigRational::new(sum, pow_big(9, n) * 4)))
}

/// `(√3/4)(2/3)ⁿ`.
pub fn tri_area_closed(n: u32) -> SqrtThreeScalar {
    SqrtThreeScalar::new(BigRational::zero(), BigRational::new(pow_big(2, n), pow_big(3, n) * 4))
}

/// `A_n`, the area between the n-th iterate and its base, through the
/// identity `3A_n + T_n = √3/4`.
pub fn curve_area_exact(n: u32) -> SqrtThreeScalar {
    let whole = SqrtThreeScalar::from_ratios(0, 1, 1, 4);
    (&whole - &tri_area_closed(n)).scale(&ratio(1, 3))
}

/// The limit area `1/(4√3) = √3/12`.
pub fn curve_area_limit() -> SqrtThreeScalar {
    SqrtThreeScalar::from_ratios(0, 1, 1, 12)
}

/// Area of the closed polygon "curve + base" by even-odd sampling at
/// `resolution` cell centres per unit length.
pub fn rasterized_area(n: u32, resolution: u32) -> Result<f64, AnalyzeError> {
    if n > 5 {
        return Err(AnalyzeError::Precondition(format!("rasterized area supports n ≤ 5, got {n}")));
    }
    if (resolution as u64) < 3u64.pow(n) {
        return Err(AnalyzeError::Precondition(format!(
            "resolution {resolution} undersamples n={n}; need at least {}",
            3u64.pow(n)
        )));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let ring = generate_segments(n)?.to_xy();
    let eo = EvenOdd::new(&[ring]);
    let bb = eo.bbox();
    let h = 1.0 / resolution as f64;
    let nx = (bb.width() / h).ceil() as usize;
    let ny = (bb.height() / h).ceil() as usize;
    let hits: usize = (0..ny)
        .into_par_iter()
        .map(|j| {
            let y = bb.min.1 + (j as f64 + 0.5) * h;
            (0..nx).filter(|&i| eo.contains((bb.min.0 + (i as f64 + 0.5) * h, y))).count()
        })
        .sum();
    Ok(hits as f64 * h * h)
}

/// Sum of `|z_{k+1} − z_k|` in floats, for cross-checking `L_n`.
pub fn length_float(n: u32) -> f64 {
    let pts: Vec<_> = z_stream(4usize.pow(n) + 1).map(|z| z.to_xy()).collect();
    pts.windows(2).map(|w| ((w[1].0 - w[0].0).powi(2) + (w[1].1 - w[0].1).powi(2)).sqrt()).sum::<f64>()
        / 3f64.powi(n as i32)
}
