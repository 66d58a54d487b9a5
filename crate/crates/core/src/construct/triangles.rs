use serde::{Deserialize, Serialize};

use super::{pow3, ConstructError, DEFAULT_MEMORY_BUDGET};
use crate::lattice::EisensteinInt;

/// Equilateral triangle with vertices `p`, `p+u`, `p+uω` (counterclockwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle {
    pub p: EisensteinInt,
    pub u: EisensteinInt,
}

impl Triangle {
    pub fn new(p: EisensteinInt, u: EisensteinInt) -> Self {
        Self { p, u }
    }

    pub fn vertices(&self) -> [EisensteinInt; 3] {
        [self.p, self.p + self.u, self.p + self.u * EisensteinInt::OMEGA]
    }

    /// Twice the signed area in units of `√3/2`; positive for
    /// counterclockwise triangles. Equals `|u|²`.
    pub fn orientation(&self) -> i128 {
        let [a, b, c] = self.vertices();
        let (x1, y1) = ((b.a - a.a) as i128, (b.b - a.b) as i128);
        let (x2, y2) = ((c.a - a.a) as i128, (c.b - a.b) as i128);
        x1 * y2 - y1 * x2
    }
}

/// Replaces a triangle of side `w` by three of side `w/3` and one of side
/// `w/√3`. With `v = u/3` the children are `(p, v)`, `(p+2v, v)`,
/// `(p+2vω, v)` and `(p+2vω, v(1−2ω))`.
pub fn subdivide_triangle(t: Triangle) -> Result<[Triangle; 4], ConstructError> {
    let v = t.u.div_exact(3).map_err(|_| ConstructError::NotDivisible { what: t.u })?;
    let two_v = v.checked_scale(2)?;
    let top = t.p.checked_add(two_v.checked_mul(EisensteinInt::OMEGA)?)?;
    Ok([
        Triangle::new(t.p, v),
        Triangle::new(t.p.checked_add(two_v)?, v),
        Triangle::new(top, v),
        Triangle::new(top, v.checked_mul(EisensteinInt::new(1, -2))?),
    ])
}

/// The `4ⁿ` triangles of the n-th iterate of the unit triangle, at scale `3ⁿ`,
/// in depth-first order.
pub fn generate_triangles(n: u32) -> Result<Vec<Triangle>, ConstructError> {
    generate_triangles_with_budget(n, DEFAULT_MEMORY_BUDGET)
}

pub fn generate_triangles_with_budget(n: u32, budget: u128) -> Result<Vec<Triangle>, ConstructError> {
    let count = 4u128.pow(n.min(60));
    let bytes = count * std::mem::size_of::<Triangle>() as u128;
    if n > 40 || bytes > budget {
        return Err(ConstructError::Resource { n, bytes, budget });
    }
    let root = Triangle::new(EisensteinInt::ZERO, EisensteinInt::from_int(pow3(n)?));
    let mut out = Vec::with_capacity(count as usize);
    expand(root, n, &mut out)?;
    Ok(out)
}

fn expand(t: Triangle, n: u32, out: &mut Vec<Triangle>) -> Result<(), ConstructError> {
    if n == 0 {
        out.push(t);
        return Ok(());
    }
    for c in subdivide_triangle(t)? {
        expand(c, n - 1, out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    fn vset(t: &Triangle) -> Vec<EisensteinInt> {
        let mut v = t.vertices().to_vec();
        v.sort();
        v
    }

    #[test]
    fn children_match_figure_coordinates() {
        let kids = subdivide_triangle(Triangle::new(e(0, 0), e(3, 0))).unwrap();
        assert_eq!(
            kids,
            [
                Triangle::new(e(0, 0), e(1, 0)),
                Triangle::new(e(2, 0), e(1, 0)),
                Triangle::new(e(0, 2), e(1, 0)),
                Triangle::new(e(0, 2), e(1, -2)),
            ]
        );
        // figure vertex sets, relative to (5,0)
        let expect = [
            [e(0, 0), e(1, 0), e(0, 1)],
            [e(2, 0), e(3, 0), e(2, 1)],
            [e(0, 2), e(1, 2), e(0, 3)],
            [e(0, 2), e(1, 0), e(2, 1)],
        ];
        for (k, x) in kids.iter().zip(expect) {
            let mut x = x.to_vec();
            x.sort();
            assert_eq!(vset(k), x);
        }
    }

    #[test]
    fn children_are_counterclockwise_and_two_thirds_area() {
        let parent = Triangle::new(e(4, -7), e(9, 9));
        let kids = subdivide_triangle(parent).unwrap();
        let total: i128 = kids.iter().map(|k| k.u.norm()).sum();
        assert_eq!(total * 3, parent.u.norm() * 2);
        for k in kids {
            assert!(k.orientation() > 0);
        }
        assert_eq!(kids[3].u.norm(), 3 * kids[0].u.norm());
    }

    #[test]
    fn rotation_equivariance() {
        let w = EisensteinInt::OMEGA;
        let a = subdivide_triangle(Triangle::new(e(0, 0), e(0, 3))).unwrap();
        let b = subdivide_triangle(Triangle::new(e(0, 0), e(3, 0))).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.p, y.p * w);
            assert_eq!(x.u, y.u * w);
        }
    }

    #[test]
    fn counts() {
        assert_eq!(generate_triangles(0).unwrap(), vec![Triangle::new(e(0, 0), e(1, 0))]);
        assert_eq!(generate_triangles(1).unwrap().len(), 4);
        let t2 = generate_triangles(2).unwrap();
        assert_eq!(t2.len(), 16);
        let total: i128 = t2.iter().map(|t| t.u.norm()).sum();
        // (2/3)² of 9² = 36
        assert_eq!(total, 36);
        assert!(subdivide_triangle(Triangle::new(e(0, 0), e(2, 0))).is_err());
    }
}
