use std::cmp::Ordering;
use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::AnalyzeError;
use crate::construct::{generate_segments, generate_triangles, Triangle};
use crate::lattice::EisensteinInt;

/// Which filled region to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    /// Even-odd interior of the curve closed by its base.
    Segments,
    /// Union of the triangles of the triangle construction.
    Triangles,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub cells: usize,
    pub region_cells: usize,
    /// Components of the complement inside the padded box; 1 means no holes.
    pub complement_components: usize,
    /// Edge-connected components of the region itself (pieces meeting only
    /// at a point count separately).
    pub region_components: usize,
    pub simply_connected: bool,
}

/// Cells of the barycentric subdivision of the unit triangular lattice.
/// Every lattice edge and every 30° line through lattice points is a union
/// of cell edges, so a cell is wholly inside or outside any lattice
/// polygon. Coordinates are in the `(a, b)` basis scaled by 6; centroids
/// are scaled by 18.
struct Grid {
    i0: i64,
    j0: i64,
    nj: i64,
    centroids: Vec<EisensteinInt>,
    edges: Vec<[(EisensteinInt, EisensteinInt); 3]>,
}

fn tri_of(i: i64, j: i64, up: bool) -> [EisensteinInt; 3] {
    let e = EisensteinInt::new;
    if up {
        [e(i, j), e(i + 1, j), e(i, j + 1)]
    } else {
        [e(i + 1, j), e(i + 1, j + 1), e(i, j + 1)]
    }
}

impl Grid {
    fn covering(points: &[EisensteinInt]) -> Self {
        let amin = points.iter().map(|p| p.a).min().unwrap_or(0) - 2;
        let amax = points.iter().map(|p| p.a).max().unwrap_or(0) + 2;
        let bmin = points.iter().map(|p| p.b).min().unwrap_or(0) - 2;
        let bmax = points.iter().map(|p| p.b).max().unwrap_or(0) + 2;
        let nj = bmax - bmin;
        let mut centroids = Vec::new();
        let mut edges = Vec::new();
        for i in amin..amax {
            for j in bmin..bmax {
                for up in [true, false] {
                    let t = tri_of(i, j, up);
                    let g6 = (t[0] + t[1] + t[2]) * 2;
                    for k in 0..3 {
                        for l in 0..3 {
                            if k == l {
                                continue;
                            }
                            let v6 = t[k] * 6;
                            let m6 = (t[k] + t[l]) * 3;
                            centroids.push(v6 + m6 + g6);
                            edges.push([ord(v6, m6), ord(m6, g6), ord(v6, g6)]);
                        }
                    }
                }
            }
        }
        Self { i0: amin, j0: bmin, nj, centroids, edges }
    }

    /// Indices of the six cells of lattice triangle `(i, j, up)`.
    fn cells_of(&self, i: i64, j: i64, up: bool) -> std::ops::Range<usize> {
        let t = ((i - self.i0) * self.nj + (j - self.j0)) as usize * 2 + usize::from(!up);
        t * 6..t * 6 + 6
    }

    fn report(&self, inside: &[bool]) -> ConnectivityReport {
        let n = self.centroids.len();
        let mut uf = UnionFind::<u32>::new(n);
        let mut owner: HashMap<(EisensteinInt, EisensteinInt), u32> = HashMap::with_capacity(n * 2);
        for (c, es) in self.edges.iter().enumerate() {
            for e in es {
                match owner.get(e) {
                    Some(&o) if inside[o as usize] == inside[c] => {
                        uf.union(o, c as u32);
                    }
                    Some(_) => {}
                    None => {
                        owner.insert(*e, c as u32);
                    }
                }
            }
        }
        let mut roots_in = std::collections::HashSet::new();
        let mut roots_out = std::collections::HashSet::new();
        for (c, &ins) in inside.iter().enumerate() {
            let r = uf.find(c as u32);
            if ins {
                roots_in.insert(r);
            } else {
                roots_out.insert(r);
            }
        }
        let region_cells = inside.iter().filter(|&&b| b).count();
        ConnectivityReport {
            cells: n,
            region_cells,
            complement_components: roots_out.len(),
            region_components: roots_in.len(),
            simply_connected: region_cells > 0 && roots_out.len() == 1,
        }
    }
}

fn ord(a: EisensteinInt, b: EisensteinInt) -> (EisensteinInt, EisensteinInt) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// How a self-touching ring is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FillRule {
    EvenOdd,
    NonZero,
}

/// Filled region of closed lattice rings (unit lattice).
pub fn connectivity_of_rings(rings: &[Vec<EisensteinInt>], rule: FillRule) -> ConnectivityReport {
    let all: Vec<_> = rings.iter().flatten().copied().collect();
    let grid = Grid::covering(&all);
    let mut edges = Vec::new();
    for r in rings {
        let k = r.len();
        for i in 0..k {
            let (a, b) = (r[i] * 18, r[(i + 1) % k] * 18);
            if a != b && a.b != b.b {
                edges.push((a, b));
            }
        }
    }
    let mut rows: HashMap<i64, Vec<usize>> = HashMap::new();
    for (c, z) in grid.centroids.iter().enumerate() {
        rows.entry(z.b).or_default().push(c);
    }
    let mut inside = vec![false; grid.centroids.len()];
    for (&y, cells) in &rows {
        // crossings of the row as fractions num/den with den > 0, plus direction
        let mut xs: Vec<(i128, i128, i32)> = edges
            .iter()
            .filter(|(a, b)| (a.b < y) != (b.b < y))
            .map(|(a, b)| {
                let (db, da) = ((b.b - a.b) as i128, (b.a - a.a) as i128);
                let num = a.a as i128 * db + (y - a.b) as i128 * da;
                if db < 0 {
                    (-num, -db, -1)
                } else {
                    (num, db, 1)
                }
            })
            .collect();
        xs.sort_by(|p, q| (p.0 * q.1).cmp(&(q.0 * p.1)));
        // winding to the right of each crossing position
        let mut suffix = vec![0i32; xs.len() + 1];
        for i in (0..xs.len()).rev() {
            suffix[i] = suffix[i + 1] + xs[i].2;
        }
        for &c in cells {
            let x = grid.centroids[c].a as i128;
            let left = xs.partition_point(|p| p.0.cmp(&(x * p.1)) == Ordering::Less);
            inside[c] = match rule {
                FillRule::EvenOdd => (xs.len() - left) % 2 == 1,
                FillRule::NonZero => suffix[left] != 0,
            };
        }
    }
    grid.report(&inside)
}

fn strictly_inside(t: &[EisensteinInt; 3], p: EisensteinInt) -> bool {
    let cr = |o: EisensteinInt, a: EisensteinInt, b: EisensteinInt| {
        (a.a - o.a) as i128 * (b.b - o.b) as i128 - (a.b - o.b) as i128 * (b.a - o.a) as i128
    };
    let s = [cr(t[0], t[1], p), cr(t[1], t[2], p), cr(t[2], t[0], p)];
    s.iter().all(|&x| x > 0) || s.iter().all(|&x| x < 0)
}

/// Union of lattice triangles (unit lattice).
pub fn connectivity_of_triangles(tris: &[Triangle]) -> ConnectivityReport {
    let all: Vec<_> = tris.iter().flat_map(|t| t.vertices()).collect();
    let grid = Grid::covering(&all);
    let mut inside = vec![false; grid.centroids.len()];
    for t in tris {
        let v = t.vertices();
        let v18 = [v[0] * 18, v[1] * 18, v[2] * 18];
        let (a0, a1) = (v.iter().map(|p| p.a).min().unwrap(), v.iter().map(|p| p.a).max().unwrap());
        let (b0, b1) = (v.iter().map(|p| p.b).min().unwrap(), v.iter().map(|p| p.b).max().unwrap());
        for i in a0..a1 {
            for j in b0..b1 {
                for up in [true, false] {
                    for c in grid.cells_of(i, j, up) {
                        if !inside[c] && strictly_inside(&v18, grid.centroids[c]) {
                            inside[c] = true;
                        }
                    }
                }
            }
        }
    }
    grid.report(&inside)
}

/// Hole test for the n-th iterate on a grid of pitch `3⁻ⁿ`.
pub fn simply_connected_check(n: u32, region: Region) -> Result<ConnectivityReport, AnalyzeError> {
    if !(1..=5).contains(&n) {
        return Err(AnalyzeError::Precondition(format!("connectivity check supports 1 ≤ n ≤ 5, got {n}")));
    }
    Ok(match region {
        Region::Segments => connectivity_of_rings(&[generate_segments(n)?.vertices], FillRule::NonZero),
        Region::Triangles => connectivity_of_triangles(&generate_triangles(n)?),
    })
}

/// A hexagonal ring with a hexagonal hole; not simply connected.
pub fn annulus_fixture() -> Vec<Vec<EisensteinInt>> {
    let hex = |r: i64| (0..6).map(|k| EisensteinInt::omega_pow(k) * r).collect::<Vec<_>>();
    vec![hex(6), hex(3)]
}
