use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{build_tile, Covering, Placement, TileKind, TilingError};
use crate::geom::{halton, BBox, EvenOdd, Point, SegmentGrid};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOptions {
    pub samples: usize,
    pub epsilon: f64,
    /// Only sample points inside this placed tile count.
    pub restrict_to: Option<Placement>,
    pub max_offenders: usize,
}

impl CheckOptions {
    pub fn new(samples: usize, epsilon: f64) -> Self {
        Self { samples, epsilon, restrict_to: None, max_offenders: 10 }
    }
}

/// A sample point not covered exactly once.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Offender {
    pub sample: usize,
    pub point: Point,
    pub multiplicity: usize,
    /// Indices into the covering's placements.
    pub tiles: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub samples: usize,
    pub epsilon: f64,
    /// Samples dropped by the restriction.
    pub outside: usize,
    /// Samples within `epsilon` of a tile boundary.
    pub excluded: usize,
    pub counted: usize,
    /// Multiplicity to number of counted samples.
    pub histogram: BTreeMap<usize, usize>,
    pub multiplicity_one_fraction: f64,
    /// Uncovered samples lying in an unresolved leftover piece.
    pub in_unresolved: usize,
    pub worst: Vec<Offender>,
    pub pass: bool,
}

/// Placed capped rings with a coarse grid over their boxes.
struct Placed {
    shapes: Vec<EvenOdd>,
    rings: Vec<Vec<Point>>,
    bbox: BBox,
    g: usize,
    cells: Vec<Vec<u32>>,
}

impl Placed {
    fn new(ps: &[Placement], units: &HashMap<(TileKind, u32), Vec<Point>>, frame: BBox) -> Self {
        let rings: Vec<Vec<Point>> =
            ps.par_iter().map(|p| units[&(p.kind, p.n)].iter().map(|&z| p.apply_xy(z)).collect()).collect();
        let shapes: Vec<EvenOdd> = rings.par_iter().map(|r| EvenOdd::new(std::slice::from_ref(r))).collect();
        let g = ((shapes.len() as f64).sqrt().ceil() as usize).clamp(1, 256);
        let mut cells = vec![Vec::new(); g * g];
        let (cw, ch) = (frame.width().max(1e-300) / g as f64, frame.height().max(1e-300) / g as f64);
        let idx = |v: f64, lo: f64, c: f64| (((v - lo) / c).floor().max(0.0) as usize).min(g - 1);
        for (i, s) in shapes.iter().enumerate() {
            let b = s.bbox();
            if b.max.0 < frame.min.0 || b.min.0 > frame.max.0 || b.max.1 < frame.min.1 || b.min.1 > frame.max.1 {
                continue;
            }
            for x in idx(b.min.0, frame.min.0, cw)..=idx(b.max.0, frame.min.0, cw) {
                for y in idx(b.min.1, frame.min.1, ch)..=idx(b.max.1, frame.min.1, ch) {
                    cells[y * g + x].push(i as u32);
                }
            }
        }
        Self { shapes, rings, bbox: frame, g, cells }
    }

    fn containing(&self, p: Point) -> Vec<usize> {
        if !self.bbox.contains(p) {
            return Vec::new();
        }
        let g = self.g;
        let x = (((p.0 - self.bbox.min.0) / self.bbox.width().max(1e-300) * g as f64) as usize).min(g - 1);
        let y = (((p.1 - self.bbox.min.1) / self.bbox.height().max(1e-300) * g as f64) as usize).min(g - 1);
        self.cells[y * g + x].iter().map(|&i| i as usize).filter(|&i| self.shapes[i].contains(p)).collect()
    }
}

pub fn check_covering(c: &Covering, samples: usize, epsilon: f64) -> Result<CheckReport, TilingError> {
    check_covering_with(c, &CheckOptions::new(samples, epsilon))
}

/// Halton points in the window, located against every capped tile by the
/// even-odd rule. Points within `epsilon` of a tile boundary are skipped.
pub fn check_covering_with(c: &Covering, opt: &CheckOptions) -> Result<CheckReport, TilingError> {
    if opt.samples < 1000 {
        return Err(TilingError::Precondition(format!("need at least 1000 samples, got {}", opt.samples)));
    }
    if !(opt.epsilon >= 0.0 && opt.epsilon.is_finite()) {
        return Err(TilingError::Precondition(format!("bad epsilon {}", opt.epsilon)));
    }
    let mut keys: Vec<(TileKind, u32)> =
        c.placements.iter().chain(&c.unresolved).chain(&opt.restrict_to).map(|p| (p.kind, p.n)).collect();
    keys.sort();
    keys.dedup();
    let units = keys
        .par_iter()
        .map(|&(k, n)| Ok(((k, n), build_tile(k, n)?.capped_boundary().to_xy())))
        .collect::<Result<HashMap<_, _>, TilingError>>()?;
    let frame = BBox::of(c.window.corners()).expect("four corners").grow(opt.epsilon + 1e-9);
    let tiles = Placed::new(&c.placements, &units, frame);
    let leftover = Placed::new(&c.unresolved, &units, frame);
    let restrict = opt.restrict_to.as_ref().map(|p| Placed::new(std::slice::from_ref(p), &units, frame));
    let segs: Vec<(Point, Point)> = tiles
        .rings
        .iter()
        .flat_map(|r| r.windows(2).map(|w| (w[0], w[1])))
        .filter(|(a, b)| {
            let e = opt.epsilon;
            a.0.max(b.0) >= frame.min.0 - e
                && a.0.min(b.0) <= frame.max.0 + e
                && a.1.max(b.1) >= frame.min.1 - e
                && a.1.min(b.1) <= frame.max.1 + e
        })
        .collect();
    let cell = (opt.epsilon * 4.0).max(frame.width().max(frame.height()) / 1024.0);
    let near = SegmentGrid::new(segs, cell);

    enum Outcome {
        Outside,
        Excluded,
        Counted { tiles: Vec<usize>, unresolved: bool },
    }
    let outcomes: Vec<Outcome> = (1..=opt.samples as u64)
        .into_par_iter()
        .map(|i| {
            let p = c.window.point_at(halton(i, 2), halton(i, 3));
            if restrict.as_ref().is_some_and(|r| r.containing(p).is_empty()) {
                return Outcome::Outside;
            }
            if opt.epsilon > 0.0 && near.near(p, opt.epsilon) {
                return Outcome::Excluded;
            }
            let tiles = tiles.containing(p);
            let unresolved = tiles.is_empty() && !leftover.containing(p).is_empty();
            Outcome::Counted { tiles, unresolved }
        })
        .collect();

    let mut r = CheckReport {
        samples: opt.samples,
        epsilon: opt.epsilon,
        outside: 0,
        excluded: 0,
        counted: 0,
        histogram: BTreeMap::new(),
        multiplicity_one_fraction: 0.0,
        in_unresolved: 0,
        worst: Vec::new(),
        pass: false,
    };
    let mut worst = Vec::new();
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Outside => r.outside += 1,
            Outcome::Excluded => r.excluded += 1,
            Outcome::Counted { tiles, unresolved } => {
                r.counted += 1;
                *r.histogram.entry(tiles.len()).or_default() += 1;
                r.in_unresolved += usize::from(unresolved);
                if tiles.len() != 1 {
                    let p = c.window.point_at(halton(i as u64 + 1, 2), halton(i as u64 + 1, 3));
                    worst.push(Offender { sample: i + 1, point: p, multiplicity: tiles.len(), tiles });
                }
            }
        }
    }
    worst.sort_by_key(|o| (std::cmp::Reverse(o.multiplicity.abs_diff(1)), o.sample));
    worst.truncate(opt.max_offenders);
    r.worst = worst;
    let ones = r.histogram.get(&1).copied().unwrap_or(0);
    r.multiplicity_one_fraction = if r.counted == 0 { 0.0 } else { ones as f64 / r.counted as f64 };
    r.pass = r.counted > 0 && r.multiplicity_one_fraction >= 0.99;
    Ok(r)
}
