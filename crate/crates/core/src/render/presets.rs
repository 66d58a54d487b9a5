use std::collections::BTreeMap;

use super::{xy_shifted, RenderError, Scene, Style};
use crate::analyze::{cantor_remainder, curve_c_generate, detect_loops};
use crate::construct::{generate_segments, generate_triangles};
use crate::tiling::{build_tile, cover, Covering, TileKind, Window};

pub const PRESETS: [&str; 15] = [
    "fig3", "fig6", "fig8", "fig13", "fig14", "fig16", "fig17", "fig18", "fig19", "fig20", "fig21", "fig22", "fig23",
    "fig24", "fig25",
];

const BLACK: &str = "#000000";
const BLUE: &str = "#1f4fd8";
const GREEN: &str = "#1a9e3a";
const PALETTE: [&str; 6] = ["#f2c14e", "#5fad56", "#4d9de0", "#e15554", "#7768ae", "#3bb273"];

pub fn preset(name: &str) -> Result<Scene, RenderError> {
    match name {
        "fig3" => iterations(),
        "fig6" => triangles(),
        "fig8" => points(),
        "fig13" => cantor(),
        "fig14" => loops(),
        "fig16" => tile(TileKind::BifaceAntisym, name),
        "fig17" => tile(TileKind::BifaceSym, name),
        "fig18" => tile(TileKind::Triangular, name),
        "fig19" => tile(TileKind::Rhomboidal, name),
        "fig20" => tile(TileKind::Dart, name),
        "fig21" => covering(TileKind::BifaceAntisym, name),
        "fig22" => covering(TileKind::BifaceSym, name),
        "fig23" => covering(TileKind::Triangular, name),
        "fig24" => covering(TileKind::Rhomboidal, name),
        "fig25" => covering(TileKind::Dart, name),
        _ => Err(RenderError::UnknownPreset(name.into())),
    }
}

// panels sit side by side with a gap of 10/81 of the base
const PANEL: f64 = 91.0 / 81.0;

fn iterations() -> Result<Scene, RenderError> {
    let mut s = Scene::new("fig3: iterations 1 to 4");
    let l = s.layer("curve", Style::line(BLACK, 0.0015));
    for n in 1..=4 {
        l.polyline(xy_shifted(&generate_segments(n)?, PANEL * f64::from(n - 1)));
    }
    Ok(s)
}

fn triangles() -> Result<Scene, RenderError> {
    let mut s = Scene::new("fig6: triangle construction, iterations 1 to 4");
    let l = s.layer("triangles", Style::filled(BLACK, None, 0.0));
    for n in 1..=4u32 {
        let k = 3f64.powi(n as i32);
        for t in generate_triangles(n)? {
            let v = t.vertices().map(|z| {
                let (x, y) = z.to_xy();
                (x / k + PANEL * f64::from(n - 1), y / k)
            });
            l.polygon(v.to_vec());
        }
    }
    Ok(s)
}

fn points() -> Result<Scene, RenderError> {
    let mut s = Scene::new("fig8: the point sets K_0 to K_3");
    let gap = 32.0 / 27.0;
    let curves: Vec<_> = (0..=3).map(generate_segments).collect::<Result<_, _>>()?;
    let l = s.layer("curve", Style::line(BLACK, 0.0015));
    for (i, c) in curves.iter().enumerate() {
        l.polyline(xy_shifted(c, gap * i as f64));
    }
    let d = s.layer("points", Style::filled(BLUE, None, 0.0));
    for (i, c) in curves.iter().enumerate() {
        d.dots(xy_shifted(c, gap * i as f64), 0.3 / 27.0);
    }
    Ok(s)
}

fn cantor() -> Result<Scene, RenderError> {
    let mut s = Scene::new("fig13: what is left of the base after 1 to 4 iterations");
    let l = s.layer("curve", Style::line(BLACK, 0.0015));
    for n in 1..=4 {
        l.polyline(xy_shifted(&generate_segments(n)?, PANEL * f64::from(n - 1)));
    }
    let b = s.layer("remainder", Style::line(BLUE, 0.003));
    for n in 1..=4u32 {
        let c = cantor_remainder(n);
        let d = c.denominator as f64;
        let dx = PANEL * f64::from(n - 1);
        for &(lo, hi) in &c.intervals {
            b.polyline(vec![(lo as f64 / d + dx, 0.0), (hi as f64 / d + dx, 0.0)]);
        }
    }
    Ok(s)
}

fn loops() -> Result<Scene, RenderError> {
    let mut s = Scene::new("fig14: closed loops of the fourth iteration");
    let c = curve_c_generate(4)?;
    s.layer("curve", Style::line(BLACK, 0.001)).polyline(c.polyline.to_xy());
    let k = generate_segments(4)?;
    let g = s.layer("loops", Style::line(GREEN, 0.003));
    for lp in detect_loops(&k)? {
        g.polygon(lp.vertices.iter().map(|z| z.to_xy_scaled(4)).collect());
    }
    Ok(s)
}

fn tile(kind: TileKind, name: &str) -> Result<Scene, RenderError> {
    let t = build_tile(kind, 4)?;
    let mut s = Scene::new(format!("{name}: {kind} tile"));
    s.layer("tile", Style::filled(PALETTE[2], Some(BLACK), 0.001)).polygon(t.boundary.to_xy());
    Ok(s)
}

fn covering_scene(c: &Covering, title: &str) -> Result<Scene, RenderError> {
    let mut units = BTreeMap::new();
    let mut classes: BTreeMap<i64, Vec<Vec<(f64, f64)>>> = BTreeMap::new();
    for p in &c.placements {
        if let std::collections::btree_map::Entry::Vacant(e) = units.entry((p.kind, p.n)) {
            e.insert(build_tile(p.kind, p.n)?.capped_boundary().to_xy());
        }
        let ring: Vec<_> = units[&(p.kind, p.n)].iter().map(|&z| p.apply_xy(z)).collect();
        let class = if c.k_range.is_some() {
            i64::from(p.scale_exp)
        } else if p.kind == TileKind::Triangular {
            let t = &p.translation;
            num_traits::ToPrimitive::to_i64(&(&t.a - &t.b).floor().to_integer()).unwrap_or(0)
        } else {
            i64::from(p.rot / 4)
        };
        classes.entry(class.rem_euclid(PALETTE.len() as i64)).or_default().push(ring);
    }
    let mut s = Scene::new(title);
    for (class, rings) in classes {
        let l = s.layer(&format!("tiles-{class}"), Style::filled(PALETTE[class as usize], Some(BLACK), 0.0004));
        for r in rings {
            l.polygon(r);
        }
    }
    let w: Vec<_> = c.window.corners().to_vec();
    s.layer("window", Style::line(BLACK, 0.0015)).polygon(w);
    Ok(s)
}

fn covering(kind: TileKind, name: &str) -> Result<Scene, RenderError> {
    let (w, n) = match kind {
        TileKind::Rhomboidal | TileKind::Dart => (Window::units(0, 0, 2, 2)?, 2),
        _ => (Window::units(0, 0, 3, 3)?, 3),
    };
    let c = cover(kind, &w, n, Some((-2, 1)))?;
    covering_scene(&c, &format!("{name}: covering by {kind} tiles"))
}

/// Tiles of a covering, coloured by scale for scale-invariant schemes
/// and by orientation otherwise.
pub fn scene_of_covering(c: &Covering) -> Result<Scene, RenderError> {
    covering_scene(c, &format!("covering by {} tiles", c.scheme))
}
