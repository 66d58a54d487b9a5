use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TilingError;
use crate::analyze::edge_contacts;
use crate::construct::{generate_segments, pow3, Polyline};
use crate::lattice::EisensteinInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TileKind {
    BifaceAntisym,
    BifaceSym,
    Triangular,
    Rhomboidal,
    Dart,
}

impl TileKind {
    pub const ALL: [TileKind; 5] =
        [TileKind::BifaceAntisym, TileKind::BifaceSym, TileKind::Triangular, TileKind::Rhomboidal, TileKind::Dart];

    pub fn name(self) -> &'static str {
        match self {
            TileKind::BifaceAntisym => "biface_antisym",
            TileKind::BifaceSym => "biface_sym",
            TileKind::Triangular => "triangular",
            TileKind::Rhomboidal => "rhomboidal",
            TileKind::Dart => "dart",
        }
    }

    /// Curve copies around the tile at unit scale, traversed clockwise so
    /// the tile lies to the right of every copy and each copy bulges out.
    pub fn copies(self) -> Vec<CurveCopy> {
        let e = EisensteinInt::new;
        let c = |from, to| CurveCopy { from, to, mirrored: false };
        let m = |from, to| CurveCopy { from, to, mirrored: true };
        match self {
            TileKind::BifaceAntisym => vec![c(e(0, 0), e(1, 0)), c(e(1, 0), e(0, 0))],
            TileKind::BifaceSym => vec![c(e(0, 0), e(1, 0)), m(e(1, 0), e(0, 0))],
            TileKind::Triangular => vec![c(e(0, 0), e(0, 1)), c(e(0, 1), e(1, 0)), c(e(1, 0), e(0, 0))],
            TileKind::Rhomboidal => {
                vec![c(e(0, 0), e(1, 1)), c(e(1, 1), e(1, 0)), c(e(1, 0), e(0, -1)), c(e(0, -1), e(0, 0))]
            }
            TileKind::Dart => {
                vec![c(e(0, 0), e(1, 1)), c(e(1, 1), e(1, 0)), m(e(1, 0), e(2, -1)), m(e(2, -1), e(0, 0))]
            }
        }
    }
}

impl fmt::Display for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TileKind {
    type Err = TilingError;
    fn from_str(s: &str) -> Result<Self, TilingError> {
        TileKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| TilingError::UnknownKind(s.to_string()))
    }
}

/// A copy of the curve from `from` to `to`. A mirrored copy is the
/// reflection of the plain one in the line through its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveCopy {
    pub from: EisensteinInt,
    pub to: EisensteinInt,
    pub mirrored: bool,
}

impl CurveCopy {
    /// Vertices at scale `3ⁿ`, given the n-th iterate `k` of the unit curve.
    pub fn vertices(&self, k: &Polyline) -> Result<Vec<EisensteinInt>, TilingError> {
        let s = pow3(k.scale_exp)?;
        let (p, q) = (self.from.checked_scale(s)?, self.to.checked_scale(s)?);
        if !self.mirrored {
            let d = self.to - self.from;
            k.vertices.iter().map(|&z| Ok(p.checked_add(d.checked_mul(z)?)?)).collect()
        } else {
            let d = self.from - self.to;
            k.vertices.iter().rev().map(|&z| Ok(q.checked_add(d.checked_mul(z.conj())?)?)).collect()
        }
    }
}

/// A closed tile boundary made of curve copies at iteration `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tile {
    pub kind: TileKind,
    pub n: u32,
    pub copies: Vec<CurveCopy>,
    /// Closed: the first vertex is repeated at the end.
    pub boundary: Polyline,
}

impl Tile {
    /// The boundary with every edge `p→q` replaced by `p → p+(q−p)(1+ω)/3 → q`,
    /// at scale `3ⁿ⁺¹`. The extra triangle on the outer side of each edge
    /// is what the next iterate adds there, so the even-odd region of this
    /// ring has exactly the area of the limit tile and neighbouring tiles
    /// fit together without gaps.
    pub fn capped_boundary(&self) -> Polyline {
        cap(&self.boundary)
    }
}

pub(crate) fn cap(p: &Polyline) -> Polyline {
    let v = &p.vertices;
    let mut out = Vec::with_capacity(v.len() * 2);
    if let Some(&f) = v.first() {
        out.push(f * 3);
    }
    for w in v.windows(2) {
        out.push(w[0] * 3 + (w[1] - w[0]) * EisensteinInt::ONE_PLUS_OMEGA);
        out.push(w[1] * 3);
    }
    Polyline::new(p.scale_exp + 1, out)
}

pub fn build_tile(kind: TileKind, n: u32) -> Result<Tile, TilingError> {
    if n == 0 {
        return Err(TilingError::Precondition("tiles need n ≥ 1".into()));
    }
    let k = generate_segments(n)?;
    let copies = kind.copies();
    let mut boundary: Vec<EisensteinInt> = Vec::new();
    for c in &copies {
        let v = c.vertices(&k)?;
        if boundary.last() == v.first() {
            boundary.extend_from_slice(&v[1..]);
        } else {
            boundary.extend(v);
        }
    }
    if boundary.first() != boundary.last() {
        return Err(TilingError::NotClosed(kind));
    }
    let contacts = edge_contacts(&boundary);
    if contacts.proper_crossings > 0 {
        let (i, j) = contacts.first.unwrap_or((0, 0));
        return Err(TilingError::SelfIntersecting {
            kind,
            n,
            edge_a: (boundary[i], boundary[i + 1]),
            edge_b: (boundary[j], boundary[j + 1]),
        });
    }
    Ok(Tile { kind, n, copies, boundary: Polyline::new(n, boundary) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyze::remove_loops;
    use std::collections::HashSet;

    fn vset(v: &[EisensteinInt]) -> HashSet<EisensteinInt> {
        v.iter().copied().collect()
    }

    #[test]
    fn all_tiles_close_exactly() {
        for kind in TileKind::ALL {
            for n in 1..=4 {
                let t = build_tile(kind, n).unwrap();
                assert_eq!(t.boundary.vertices.first(), t.boundary.vertices.last());
                let edges = t.boundary.len() - 1;
                assert_eq!(edges, t.copies.len() * 4usize.pow(n), "{kind} n={n}");
            }
        }
    }

    #[test]
    fn antisymmetric_biface_is_point_symmetric() {
        let t = build_tile(TileKind::BifaceAntisym, 1).unwrap();
        assert_eq!(t.boundary.len() - 1, 8);
        for n in 1..=4 {
            let t = build_tile(TileKind::BifaceAntisym, n).unwrap();
            let s = EisensteinInt::from_int(3i64.pow(n));
            let v = vset(&t.boundary.vertices);
            let w: HashSet<_> = v.iter().map(|&z| s - z).collect();
            assert_eq!(v, w);
        }
    }

    #[test]
    fn triangular_tile_has_threefold_symmetry() {
        let t = build_tile(TileKind::Triangular, 1).unwrap();
        assert_eq!(t.boundary.len() - 1, 12);
        for n in 1..=4 {
            let t = build_tile(TileKind::Triangular, n).unwrap();
            let c = EisensteinInt::ONE_PLUS_OMEGA * 3i64.pow(n - 1);
            let turn = EisensteinInt::omega_pow(2);
            let v = vset(&t.boundary.vertices);
            let w: HashSet<_> = v.iter().map(|&z| c + (z - c) * turn).collect();
            assert_eq!(v, w, "n={n}");
        }
    }

    #[test]
    fn no_repeated_edges_after_loop_removal() {
        for kind in TileKind::ALL {
            let t = build_tile(kind, 3).unwrap();
            let r = remove_loops(&t.boundary);
            let mut seen = HashSet::new();
            for w in r.vertices.windows(2) {
                let key = if w[0] < w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
                assert!(seen.insert(key), "{kind}: repeated edge {key:?}");
            }
        }
    }

    #[test]
    fn capped_ring_doubles_edges() {
        let t = build_tile(TileKind::Triangular, 2).unwrap();
        let c = t.capped_boundary();
        assert_eq!(c.scale_exp, 3);
        assert_eq!(c.len() - 1, 2 * (t.boundary.len() - 1));
        assert_eq!(c.vertices.first(), c.vertices.last());
    }

    #[test]
    fn names_round_trip() {
        for k in TileKind::ALL {
            assert_eq!(k.name().parse::<TileKind>().unwrap(), k);
        }
        assert!("hexagonal".parse::<TileKind>().is_err());
        assert!(build_tile(TileKind::Dart, 0).is_err());
    }
}
