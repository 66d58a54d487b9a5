use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_covering, pow3_rational, CheckReport, Placement, TileKind, TilingError, Window};
use crate::lattice::{EisensteinInt, QOmega};

/// Any point of a placed capped tile lies within this many units of its
/// translation in each of the `a`, `b` coordinates (times `3^k`).
const REACH: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Covering {
    pub scheme: TileKind,
    pub n: u32,
    pub window: Window,
    /// Scales used by a scale-invariant covering, inclusive.
    pub k_range: Option<(i32, i32)>,
    pub placements: Vec<Placement>,
    /// Finest-scale biface pieces left over when the scale range stops.
    /// They are not part of the covering; the area they occupy is a gap.
    pub unresolved: Vec<Placement>,
}

impl Covering {
    /// Edge length of the finest placed tiles.
    pub fn finest_edge(&self) -> f64 {
        let k = self.k_range.map_or(0, |r| r.0);
        3f64.powi(k - self.n as i32)
    }

    pub fn default_epsilon(&self) -> f64 {
        self.finest_edge() / 10.0
    }

    /// Runs the checker and fails with its report unless it passes.
    pub fn verified(self, samples: usize, epsilon: f64) -> Result<(Covering, CheckReport), TilingError> {
        let r = check_covering(&self, samples, epsilon)?;
        if r.pass {
            Ok((self, r))
        } else {
            Err(TilingError::CheckFailed(Box::new(r)))
        }
    }
}

fn floor(r: &BigRational) -> i64 {
    let f = r.floor().to_integer();
    i64::try_from(f).unwrap_or(i64::MIN / 4)
}

/// Lattice points `s·(i + jω)` whose tiles might meet the window.
fn lattice_points(window: &Window, k: i32) -> Vec<QOmega> {
    if window.is_empty() {
        return Vec::new();
    }
    let inv = pow3_rational(-k);
    let lo_a = floor(&(&window.origin.a * &inv)) - REACH - 1;
    let hi_a = floor(&((&window.origin.a + &window.width) * &inv)) + REACH + 1;
    let lo_b = floor(&(&window.origin.b * &inv)) - REACH - 1;
    let hi_b = floor(&((&window.origin.b + &window.height) * &inv)) + REACH + 1;
    let s = pow3_rational(k);
    let mut out = Vec::new();
    for i in lo_a..=hi_a {
        for j in lo_b..=hi_b {
            out.push(QOmega::from_eis(EisensteinInt::new(i, j)).scale(&s));
        }
    }
    out
}

fn keep(window: &Window, p: &Placement) -> bool {
    window.meets(&p.reach_box(REACH))
}

/// Three bifaces per lattice point, one on each edge of the up triangle
/// `p, p+s, p+sω`, so every lattice edge carries exactly one.
fn biface_ring(kind: TileKind, n: u32, k: i32, p: &QOmega) -> [Placement; 3] {
    let s = pow3_rational(k);
    let one = QOmega::one().scale(&s);
    let w = QOmega::omega().scale(&s);
    [
        Placement::new(kind, n, 0, k, p.clone()),
        Placement::new(kind, n, 4, k, p + &one),
        Placement::new(kind, n, 8, k, p + &w),
    ]
}

/// Translates of the triangular tile, or bifaces on every lattice edge.
pub fn cover_periodic(kind: TileKind, window: &Window, n: u32) -> Result<Covering, TilingError> {
    if n == 0 {
        return Err(TilingError::Precondition("coverings need n ≥ 1".into()));
    }
    let points = lattice_points(window, 0);
    let placements: Vec<Placement> = match kind {
        TileKind::Triangular => points.into_iter().map(|p| Placement::new(kind, n, 0, 0, p)).collect(),
        TileKind::BifaceAntisym | TileKind::BifaceSym => {
            points.iter().flat_map(|p| biface_ring(kind, n, 0, p)).collect()
        }
        _ => return Err(TilingError::WrongScheme { kind, scheme: "periodic" }),
    };
    let placements = placements.into_iter().filter(|p| keep(window, p)).collect();
    Ok(Covering { scheme: kind, n, window: window.clone(), k_range: None, placements, unresolved: Vec::new() })
}

struct Split<'a> {
    kind: TileKind,
    window: &'a Window,
}

impl Split<'_> {
    /// A biface at scale `3^k` over `t, t + 3^k·r` is a quadrilateral tile
    /// on its middle third plus two bifaces on the outer thirds.
    fn run(&self, biface: Placement, depth: u32, out: &mut Vec<Placement>, left: &mut Vec<Placement>) {
        if !keep(self.window, &biface) {
            return;
        }
        if depth == 0 {
            left.push(biface);
            return;
        }
        let k = biface.scale_exp - 1;
        let n = biface.n - 1;
        let r = QOmega::from_eis(EisensteinInt::omega_pow(i64::from(biface.rot / 2))).scale(&pow3_rational(k));
        let t = &biface.translation;
        let quad = Placement::new(self.kind, n, biface.rot.into(), k, t + &r);
        if keep(self.window, &quad) {
            out.push(quad);
        }
        let two_r = &r + &r;
        let a = Placement { n, scale_exp: k, ..biface.clone() };
        let b = Placement { n, scale_exp: k, translation: t + &two_r, ..biface };
        self.run(a, depth - 1, out, left);
        self.run(b, depth - 1, out, left);
    }
}

/// Rhomboids or darts at scales `3^k` for `k` in `k_range`, obtained by
/// splitting a periodic biface covering at scale `3^{k_max+1}` down to
/// `3^{k_min}`. A tile at scale `3^k` is the iterate `n + k − k_min`, so
/// every tile has the same finest edge length.
pub fn cover_scale_invariant(
    kind: TileKind,
    window: &Window,
    n: u32,
    k_range: (i32, i32),
) -> Result<Covering, TilingError> {
    let base = match kind {
        TileKind::Rhomboidal => TileKind::BifaceAntisym,
        TileKind::Dart => TileKind::BifaceSym,
        _ => return Err(TilingError::WrongScheme { kind, scheme: "scale-invariant" }),
    };
    if n == 0 {
        return Err(TilingError::Precondition("coverings need n ≥ 1".into()));
    }
    let (k_min, k_max) = k_range;
    if k_min > k_max {
        return Err(TilingError::Precondition(format!("empty scale range {k_min}..{k_max}")));
    }
    let steps = u32::try_from(k_max - k_min + 1)
        .ok()
        .filter(|&s| s <= 12)
        .ok_or_else(|| TilingError::Precondition("at most 12 scales".into()))?;
    let top = k_max + 1;
    let coarse: Vec<Placement> =
        lattice_points(window, top).iter().flat_map(|p| biface_ring(base, n + steps, top, p)).collect();
    let split = Split { kind, window };
    let parts: Vec<(Vec<Placement>, Vec<Placement>)> = coarse
        .into_par_iter()
        .map(|b| {
            let (mut out, mut left) = (Vec::new(), Vec::new());
            split.run(b, steps, &mut out, &mut left);
            (out, left)
        })
        .collect();
    let (mut placements, mut unresolved) = (Vec::new(), Vec::new());
    for (p, l) in parts {
        placements.extend(p);
        unresolved.extend(l);
    }
    Ok(Covering { scheme: kind, n, window: window.clone(), k_range: Some(k_range), placements, unresolved })
}

/// Periodic schemes ignore `k_range`; scale-invariant ones require it.
pub fn cover(kind: TileKind, window: &Window, n: u32, k_range: Option<(i32, i32)>) -> Result<Covering, TilingError> {
    match kind {
        TileKind::Rhomboidal | TileKind::Dart => cover_scale_invariant(kind, window, n, k_range.unwrap_or((-2, 1))),
        _ => cover_periodic(kind, window, n),
    }
}
