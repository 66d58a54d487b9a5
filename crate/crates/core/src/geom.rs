//! Float geometry used by the sampling oracles: even-odd point location,
//! distance to a segment soup, Halton points and polyline Hausdorff distance.

use std::collections::HashMap;

pub type Point = (f64, f64);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn of(points: impl IntoIterator<Item = Point>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut b = BBox { min: first, max: first };
        for p in it {
            b.min.0 = b.min.0.min(p.0);
            b.min.1 = b.min.1.min(p.1);
            b.max.0 = b.max.0.max(p.0);
            b.max.1 = b.max.1.max(p.1);
        }
        Some(b)
    }

    pub fn contains(&self, p: Point) -> bool {
        p.0 >= self.min.0 && p.0 <= self.max.0 && p.1 >= self.min.1 && p.1 <= self.max.1
    }

    pub fn width(&self) -> f64 {
        self.max.0 - self.min.0
    }

    pub fn height(&self) -> f64 {
        self.max.1 - self.min.1
    }

    pub fn union(&self, o: &BBox) -> BBox {
        BBox {
            min: (self.min.0.min(o.min.0), self.min.1.min(o.min.1)),
            max: (self.max.0.max(o.max.0), self.max.1.max(o.max.1)),
        }
    }

    pub fn grow(&self, d: f64) -> BBox {
        BBox { min: (self.min.0 - d, self.min.1 - d), max: (self.max.0 + d, self.max.1 + d) }
    }
}

/// Distance from `p` to the segment `a–b`.
pub fn seg_dist(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    let (qx, qy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

/// Even-odd point location against a set of closed rings, bucketed into
/// horizontal strips so a query only looks at edges spanning its height.
#[derive(Debug, Clone)]
pub struct EvenOdd {
    bbox: BBox,
    edges: Vec<(Point, Point)>,
    strips: Vec<Vec<u32>>,
    strip_h: f64,
}

impl EvenOdd {
    /// Each ring is a vertex list; the closing edge is added if the ring is
    /// not already closed.
    pub fn new(rings: &[Vec<Point>]) -> Self {
        let mut edges = Vec::new();
        for r in rings {
            for w in r.windows(2) {
                if w[0].1 != w[1].1 {
                    edges.push((w[0], w[1]));
                }
            }
            if let (Some(&f), Some(&l)) = (r.first(), r.last()) {
                if f != l && f.1 != l.1 {
                    edges.push((l, f));
                }
            }
        }
        let bbox = BBox::of(rings.iter().flatten().copied()).unwrap_or(BBox { min: (0.0, 0.0), max: (0.0, 0.0) });
        let count = (edges.len() / 2).clamp(1, 1 << 16);
        let strip_h = (bbox.height() / count as f64).max(f64::MIN_POSITIVE);
        let mut strips = vec![Vec::new(); count];
        for (i, (a, b)) in edges.iter().enumerate() {
            let lo = ((a.1.min(b.1) - bbox.min.1) / strip_h).floor().max(0.0) as usize;
            let hi = (((a.1.max(b.1) - bbox.min.1) / strip_h).floor() as usize).min(count - 1);
            for s in &mut strips[lo..=hi] {
                s.push(i as u32);
            }
        }
        Self { bbox, edges, strips, strip_h }
    }

    pub fn bbox(&self) -> BBox {
        self.bbox
    }

    pub fn contains(&self, p: Point) -> bool {
        if !self.bbox.contains(p) {
            return false;
        }
        let s = (((p.1 - self.bbox.min.1) / self.strip_h).floor() as usize).min(self.strips.len() - 1);
        let mut inside = false;
        for &i in &self.strips[s] {
            let (a, b) = self.edges[i as usize];
            if (a.1 > p.1) != (b.1 > p.1) {
                let x = a.0 + (p.1 - a.1) * (b.0 - a.0) / (b.1 - a.1);
                if p.0 < x {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

/// A segment soup in a uniform hash grid, for "is this point near any
/// edge" and nearest-distance queries.
#[derive(Debug, Clone)]
pub struct SegmentGrid {
    cell: f64,
    segs: Vec<(Point, Point)>,
    cells: HashMap<(i64, i64), Vec<u32>>,
}

impl SegmentGrid {
    pub fn new(segs: Vec<(Point, Point)>, cell: f64) -> Self {
        assert!(cell > 0.0, "grid cell size must be positive");
        let mut cells: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (i, (a, b)) in segs.iter().enumerate() {
            let (x0, x1) = (key(a.0.min(b.0), cell), key(a.0.max(b.0), cell));
            let (y0, y1) = (key(a.1.min(b.1), cell), key(a.1.max(b.1), cell));
            for x in x0..=x1 {
                for y in y0..=y1 {
                    cells.entry((x, y)).or_default().push(i as u32);
                }
            }
        }
        Self { cell, segs, cells }
    }

    pub fn from_polylines<'a>(lines: impl IntoIterator<Item = &'a [Point]>, cell: f64) -> Self {
        let mut segs = Vec::new();
        for l in lines {
            for w in l.windows(2) {
                segs.push((w[0], w[1]));
            }
            if l.len() == 1 {
                segs.push((l[0], l[0]));
            }
        }
        Self::new(segs, cell)
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    /// Smallest distance from `p` to a segment, if one lies within `r`.
    pub fn dist_within(&self, p: Point, r: f64) -> Option<f64> {
        let (x0, x1) = (key(p.0 - r, self.cell), key(p.0 + r, self.cell));
        let (y0, y1) = (key(p.1 - r, self.cell), key(p.1 + r, self.cell));
        let mut best: Option<f64> = None;
        for x in x0..=x1 {
            for y in y0..=y1 {
                if let Some(ids) = self.cells.get(&(x, y)) {
                    for &i in ids {
                        let (a, b) = self.segs[i as usize];
                        let d = seg_dist(p, a, b);
                        if d <= r && best.is_none_or(|m| d < m) {
                            best = Some(d);
                        }
                    }
                }
            }
        }
        best
    }

    pub fn near(&self, p: Point, r: f64) -> bool {
        self.dist_within(p, r).is_some()
    }

    /// Distance to the nearest segment. Searches in growing squares.
    pub fn nearest(&self, p: Point) -> f64 {
        if self.segs.is_empty() {
            return f64::INFINITY;
        }
        let mut r = self.cell;
        loop {
            if let Some(d) = self.dist_within(p, r) {
                return d;
            }
            r *= 2.0;
            if r > 1e12 {
                return self.segs.iter().map(|&(a, b)| seg_dist(p, a, b)).fold(f64::INFINITY, f64::min);
            }
        }
    }
}

fn key(v: f64, cell: f64) -> i64 {
    (v / cell).floor() as i64
}

/// Radical inverse of `i` in `base`: the Halton / van der Corput sequence.
pub fn halton(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Points along a polyline at spacing at most `step`, vertices included.
pub fn densify(line: &[Point], step: f64) -> Vec<Point> {
    let mut out = Vec::new();
    for w in line.windows(2) {
        let (a, b) = (w[0], w[1]);
        let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
        let m = ((len / step).ceil() as usize).max(1);
        for t in 0..m {
            let f = t as f64 / m as f64;
            out.push((a.0 + (b.0 - a.0) * f, a.1 + (b.1 - a.1) * f));
        }
    }
    if let Some(&l) = line.last() {
        out.push(l);
    }
    out
}

/// Symmetric Hausdorff distance between two polylines, sampling each at
/// spacing `step` against the other's exact segments. The error is at most
/// `step/2`.
pub fn hausdorff(a: &[Point], b: &[Point], step: f64) -> f64 {
    let ga = SegmentGrid::from_polylines([a], step * 4.0);
    let gb = SegmentGrid::from_polylines([b], step * 4.0);
    let ab = densify(a, step).into_iter().map(|p| gb.nearest(p)).fold(0.0, f64::max);
    let ba = densify(b, step).into_iter().map(|p| ga.nearest(p)).fold(0.0, f64::max);
    ab.max(ba)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_odd_square_with_hole() {
        let outer = vec![(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)];
        let inner = vec![(1.0, 1.0), (3.0, 1.0), (3.0, 3.0), (1.0, 3.0), (1.0, 1.0)];
        let eo = EvenOdd::new(&[outer, inner]);
        assert!(eo.contains((0.5, 0.5)));
        assert!(!eo.contains((2.0, 2.0)));
        assert!(!eo.contains((5.0, 2.0)));
        assert!(eo.contains((3.5, 2.0)));
    }

    #[test]
    fn grid_distances() {
        let g = SegmentGrid::new(vec![((0.0, 0.0), (10.0, 0.0))], 0.5);
        assert!(g.near((5.0, 0.2), 0.25));
        assert!(!g.near((5.0, 0.3), 0.25));
        assert!((g.nearest((5.0, 7.0)) - 7.0).abs() < 1e-12);
        assert!((g.nearest((-3.0, 4.0)) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn halton_prefix() {
        let v: Vec<f64> = (1..5).map(|i| halton(i, 2)).collect();
        assert_eq!(v, vec![0.5, 0.25, 0.75, 0.125]);
        assert!((halton(1, 3) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn hausdorff_of_offset_lines() {
        let a = vec![(0.0, 0.0), (1.0, 0.0)];
        let b = vec![(0.0, 0.5), (1.0, 0.5)];
        assert!((hausdorff(&a, &b, 0.01) - 0.5).abs() < 1e-12);
        let c = vec![(0.0, 0.0), (2.0, 0.0)];
        assert!((hausdorff(&a, &c, 0.01) - 1.0).abs() < 1e-12);
    }
}
