use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::AnalyzeError;
use crate::construct::{pow3, Polyline};
use crate::geom::hausdorff;
use crate::lattice::{EisensteinInt, SqrtThreeScalar};

/// Edge colours of the two-rule substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Colour {
    Black,
    Blue,
    Red,
}

/// One drawn edge of the coloured substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouredEdge {
    pub colour: Colour,
    pub from: EisensteinInt,
    pub to: EisensteinInt,
}

#[derive(Debug, Clone, Copy)]
enum Item {
    /// Black edge with vector `d`.
    Black(EisensteinInt),
    /// Blue edge `−ω·r` followed by red edge `r`.
    Pair(EisensteinInt),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveC {
    pub n: u32,
    pub polyline: Polyline,
    pub edges: Vec<ColouredEdge>,
    /// `c_n`, total length relative to the unit base.
    pub length: SqrtThreeScalar,
    /// `(1/2 + 1/√3)ⁿ`.
    pub lower: SqrtThreeScalar,
    /// `(1 + 1/√3)ⁿ`.
    pub upper: SqrtThreeScalar,
}

impl CurveC {
    pub fn bounds_hold(&self) -> bool {
        self.lower <= self.length && self.length <= self.upper
    }
}

/// The loop-free curve grown directly by two rules, with `w = x/3`:
///
/// - black `d` becomes black `w`, black `(1+ω)w`, then a blue/red pair with red `w`;
/// - a pair with red `r` becomes black `−ωw`, a pair with red `(1+ω)w`, then a pair with red `w`.
pub fn curve_c_generate(n: u32) -> Result<CurveC, AnalyzeError> {
    let mut items = vec![Item::Black(EisensteinInt::from_int(pow3(n)?))];
    let w1 = EisensteinInt::ONE_PLUS_OMEGA;
    let neg_w = EisensteinInt::new(0, -1);
    for _ in 0..n {
        let mut next = Vec::with_capacity(items.len() * 3);
        for it in items {
            match it {
                Item::Black(d) => {
                    let w = d.div_exact(3)?;
                    next.extend([Item::Black(w), Item::Black(w * w1), Item::Pair(w)]);
                }
                Item::Pair(r) => {
                    let w = r.div_exact(3)?;
                    next.extend([Item::Black(w * neg_w), Item::Pair(w * w1), Item::Pair(w)]);
                }
            }
        }
        items = next;
    }
    let mut pos = EisensteinInt::ZERO;
    let mut vertices = vec![pos];
    let mut edges = Vec::new();
    let mut push = |c: Colour, d: EisensteinInt, pos: &mut EisensteinInt| {
        let to = *pos + d;
        edges.push(ColouredEdge { colour: c, from: *pos, to });
        vertices.push(to);
        *pos = to;
    };
    for it in &items {
        match *it {
            Item::Black(d) => push(Colour::Black, d, &mut pos),
            Item::Pair(r) => {
                push(Colour::Blue, r * neg_w, &mut pos);
                push(Colour::Red, r, &mut pos);
            }
        }
    }
    let length = total_length(&edges, n)?;
    let one = SqrtThreeScalar::from_int(1);
    let lower = (&SqrtThreeScalar::from_ratios(1, 2, 0, 1) + &SqrtThreeScalar::inv_sqrt3()).pow(n);
    let upper = (&one + &SqrtThreeScalar::inv_sqrt3()).pow(n);
    Ok(CurveC { n, polyline: Polyline::new(n, vertices), edges, length, lower, upper })
}

/// Exact length of a lattice edge: `k` or `k√3`.
fn edge_length(d: EisensteinInt) -> Result<(i128, i128), AnalyzeError> {
    let n = d.norm();
    let r = n.sqrt();
    if r * r == n {
        return Ok((r, 0));
    }
    if n % 3 == 0 {
        let r = (n / 3).sqrt();
        if r * r * 3 == n {
            return Ok((0, r));
        }
    }
    Err(AnalyzeError::Internal(format!("edge {d} has length outside ℚ(√3)")))
}

fn total_length(edges: &[ColouredEdge], n: u32) -> Result<SqrtThreeScalar, AnalyzeError> {
    let (mut p, mut q) = (0i128, 0i128);
    for e in edges {
        let (a, b) = edge_length(e.to - e.from)?;
        p += a;
        q += b;
    }
    let d = BigInt::from(3).pow(n);
    Ok(SqrtThreeScalar::new(BigRational::new(p.into(), d.clone()), BigRational::new(q.into(), d)))
}

/// Result of comparing the two halves of the curve under a 120° turn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub n: u32,
    /// Hausdorff distance between `AO` turned 120° about `O` and `BO`.
    pub distance: f64,
    /// Same, turning `BO` by −120° onto `AO`.
    pub reverse_distance: f64,
    pub split_index: usize,
    /// Whether `O` itself is a vertex; if not, the split is at the
    /// nearest vertex.
    pub center_attained: bool,
}

/// `O = (1+ω)/3`, the centre of the equilateral triangle on the base,
/// at scale `3ⁿ`.
pub fn symmetry_center(n: u32) -> Result<EisensteinInt, AnalyzeError> {
    Ok(EisensteinInt::ONE_PLUS_OMEGA.checked_scale(pow3(n - 1)?)?)
}

pub fn curve_c_symmetry_check(n: u32) -> Result<SymmetryReport, AnalyzeError> {
    if n == 0 {
        return Err(AnalyzeError::Precondition("symmetry check needs n ≥ 1".into()));
    }
    let c = curve_c_generate(n)?;
    let v = &c.polyline.vertices;
    let o = symmetry_center(n)?;
    let (split_index, _) =
        v.iter().enumerate().min_by_key(|(i, z)| ((**z - o).norm(), *i)).expect("curve has vertices");
    let center_attained = v[split_index] == o;
    let turn = |z: EisensteinInt, k: i64| o + (z - o) * EisensteinInt::omega_pow(k);
    let xy = |zs: &[EisensteinInt]| -> Vec<(f64, f64)> { zs.iter().map(|z| z.to_xy_scaled(n)).collect() };
    let ao = &v[..=split_index];
    let bo = &v[split_index..];
    let step = 1.0 / (16.0 * 3f64.powi(n as i32));
    let ao_turned: Vec<_> = ao.iter().map(|&z| turn(z, 2)).collect();
    let bo_turned: Vec<_> = bo.iter().map(|&z| turn(z, -2)).collect();
    let distance = hausdorff(&xy(&ao_turned), &xy(bo), step);
    let reverse_distance = hausdorff(&xy(&bo_turned), &xy(ao), step);
    Ok(SymmetryReport { n, distance, reverse_distance, split_index, center_attained })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyze::remove_loops;
    use crate::construct::generate_segments;

    #[test]
    fn matches_loop_removal() {
        for n in 0..=6 {
            let c = curve_c_generate(n).unwrap();
            let r = remove_loops(&generate_segments(n).unwrap());
            assert_eq!(c.polyline, r, "n={n}");
        }
    }

    #[test]
    fn first_lengths() {
        assert_eq!(curve_c_generate(0).unwrap().length, SqrtThreeScalar::from_int(1));
        let c1 = curve_c_generate(1).unwrap();
        // edges 1, √3, 1, 1 over a base of 3
        assert_eq!(c1.length, SqrtThreeScalar::from_ratios(1, 1, 1, 3));
        assert_eq!(c1.edges.len(), 4);
        assert_eq!(c1.edges[2].colour, Colour::Blue);
        assert_eq!(c1.edges[3].colour, Colour::Red);
    }

    #[test]
    fn bounds_and_monotonicity() {
        let mut prev = SqrtThreeScalar::default();
        for n in 0..=8 {
            let c = curve_c_generate(n).unwrap();
            assert!(c.bounds_hold(), "n={n}: {}", c.length);
            assert!(c.length >= prev);
            prev = c.length;
        }
    }

    #[test]
    fn symmetry_distances_shrink() {
        let d: Vec<_> = (1..=5).map(|n| curve_c_symmetry_check(n).unwrap()).collect();
        for r in &d {
            assert!(!r.center_attained);
            assert!((r.distance - r.reverse_distance).abs() < 1e-9);
        }
        assert!(d[2].distance > d[3].distance && d[3].distance > d[4].distance);
        assert!(d[0].distance.is_finite());
        assert!(curve_c_symmetry_check(0).is_err());
    }
}
