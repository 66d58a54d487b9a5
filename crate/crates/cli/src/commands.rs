use std::fmt::Write as _;
use std::io::Write;

use anyhow::{bail, Context, Result};
use kochawave::analyze::property_report;
use kochawave::construct::{
    generate_segments, generate_triangles, rewrite_lsystem, turtle_run, z_stream, Polyline, Triangle,
};
use kochawave::render::{curve_scene, preset, render_svg, scene_of_covering, Scene, Style};
use kochawave::tiling::{check_covering, cover, Window};
use kochawave::verify::{run_verify, VerifyConfig};
use kochawave::EisensteinInt;
use serde::Serialize;

use crate::output::{open, write_json, write_json_compact, write_text};
use crate::{Construction, Format, GenerateArgs, PropertiesArgs, RenderArgs, TessellateArgs, VerifyArgs};

pub const VERTICES_SCHEMA: &str = "kochawave-vertices/1";
pub const COVERING_SCHEMA: &str = "kochawave-covering/1";
pub const PROPERTIES_SCHEMA: &str = "kochawave-properties/1";

fn pair(z: &EisensteinInt) -> [i64; 2] {
    [z.a, z.b]
}

#[derive(Serialize)]
struct VerticesDoc<'a> {
    schema: &'static str,
    config: &'a GenerateArgs,
    /// Coordinates are lattice points `a+bω` divided by `3^scale_exp`.
    scale_exp: u32,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<[i64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    triangles: Option<Vec<[[i64; 2]; 3]>>,
}

fn polyline_of(c: Construction, n: u32) -> Result<Polyline> {
    Ok(match c {
        Construction::Segments => generate_segments(n)?,
        Construction::Lsystem => turtle_run(&rewrite_lsystem(n))?,
        Construction::Numeric => Polyline::new(n, z_stream(count(n)?).collect()),
        Construction::Triangles => unreachable!("triangles have no polyline"),
    })
}

fn count(n: u32) -> Result<usize> {
    4usize.checked_pow(n).and_then(|c| c.checked_add(1)).context("4^n + 1 overflows")
}

fn triangle_scene(ts: &[Triangle], n: u32) -> Scene {
    let mut s = Scene::new(format!("triangles of iteration {n}"));
    let l = s.layer("triangles", Style::filled("#000000", None, 0.0));
    for t in ts {
        l.polygon(t.vertices().iter().map(|z| z.to_xy_scaled(n)).collect());
    }
    s
}

pub fn generate(a: &GenerateArgs) -> Result<bool> {
    if a.n > a.max_n && !a.allow_large {
        bail!("n={} is above the cap of {}; pass --allow-large to go on (4^n growth)", a.n, a.max_n);
    }
    let out = a.output.as_deref();
    let n = a.n;
    if a.construction == Construction::Triangles {
        let ts = generate_triangles(n)?;
        match a.format {
            Format::Svg => write_text(out, &render_svg(&triangle_scene(&ts, n))?)?,
            Format::Json => {
                let tri: Vec<_> = ts.iter().map(|t| t.vertices().map(|z| pair(&z))).collect();
                let doc = VerticesDoc {
                    schema: VERTICES_SCHEMA,
                    config: a,
                    scale_exp: n,
                    count: tri.len(),
                    vertices: None,
                    triangles: Some(tri),
                };
                write_json_compact(out, &doc)?;
            }
            Format::Csv => {
                // three rows per triangle; triangle t holds rows 3t..3t+2
                let mut w = csv::Writer::from_writer(open(out)?);
                w.write_record(["k", "a", "b"])?;
                for (k, z) in ts.iter().flat_map(|t| t.vertices()).enumerate() {
                    w.serialize((k, z.a, z.b))?;
                }
                w.flush()?;
            }
        }
        return Ok(true);
    }
    if a.construction == Construction::Numeric && a.format == Format::Csv {
        let mut w = csv::Writer::from_writer(open(out)?);
        w.write_record(["k", "a", "b"])?;
        for (k, z) in z_stream(count(n)?).enumerate() {
            w.serialize((k, z.a, z.b))?;
        }
        w.flush()?;
        return Ok(true);
    }
    let p = polyline_of(a.construction, n)?;
    match a.format {
        Format::Svg => write_text(out, &render_svg(&curve_scene(&p, &format!("iteration {n}")))?)?,
        Format::Json => {
            let doc = VerticesDoc {
                schema: VERTICES_SCHEMA,
                config: a,
                scale_exp: p.scale_exp,
                count: p.len(),
                vertices: Some(p.vertices.iter().map(pair).collect()),
                triangles: None,
            };
            write_json_compact(out, &doc)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(open(out)?);
            w.write_record(["k", "a", "b"])?;
            for (k, z) in p.vertices.iter().enumerate() {
                w.serialize((k, z.a, z.b))?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}

pub fn verify(a: &VerifyArgs) -> Result<bool> {
    let cfg = VerifyConfig { n: a.n, tol: a.tol, only: a.only.clone(), fault: a.inject_fault };
    let r = run_verify(&cfg)?;
    write_json(a.output.as_deref(), &r)?;
    for f in r.failures() {
        eprintln!("FAILED {}: expected {}, got {}", f.name, f.expected, f.actual);
    }
    Ok(r.passed)
}

#[derive(Serialize)]
struct TessellateConfig {
    scheme: String,
    n: u32,
    k_range: Option<(i32, i32)>,
    samples: usize,
    epsilon: f64,
    window: [i64; 4],
}

#[derive(Serialize)]
struct CoveringDoc<'a, C, R> {
    schema: &'static str,
    config: TessellateConfig,
    covering: &'a C,
    report: &'a R,
}

pub fn tessellate(a: &TessellateArgs) -> Result<bool> {
    let [wa, wb, ww, wh] = a.window;
    let window = Window::units(wa, wb, ww, wh)?;
    let c = cover(a.scheme, &window, a.n, a.k_range)?;
    let epsilon = a.epsilon.unwrap_or_else(|| c.default_epsilon());
    let r = check_covering(&c, a.samples, epsilon)?;
    let config = TessellateConfig {
        scheme: a.scheme.name().into(),
        n: a.n,
        k_range: c.k_range,
        samples: a.samples,
        epsilon,
        window: a.window,
    };
    let json = format!("{}.json", a.output);
    let svg = format!("{}.svg", a.output);
    write_json(Some(&json), &CoveringDoc { schema: COVERING_SCHEMA, config, covering: &c, report: &r })?;
    write_text(Some(&svg), &render_svg(&scene_of_covering(&c)?)?)?;
    let hist: Vec<String> = r.histogram.iter().map(|(m, k)| format!("{m}:{k}")).collect();
    let line = format!(
        "{}: {} tiles, {} counted, {} near a boundary, multiplicity-1 fraction {:.5}, histogram {{{}}}",
        a.scheme,
        c.placements.len(),
        r.counted,
        r.excluded,
        r.multiplicity_one_fraction,
        hist.join(", ")
    );
    if r.pass {
        eprintln!("pass {line}");
    } else {
        eprintln!("FAILED {line}");
    }
    Ok(r.pass)
}

#[derive(Serialize)]
struct PropertiesDoc<T> {
    schema: &'static str,
    n: u32,
    report: T,
}

pub fn properties(a: &PropertiesArgs) -> Result<bool> {
    let r = property_report(a.n)?;
    if a.json {
        write_json(a.output.as_deref(), &PropertiesDoc { schema: PROPERTIES_SCHEMA, n: a.n, report: &r })?;
        return Ok(true);
    }
    let mut t = String::new();
    let mut row = |name: &str, formula: &str, exact: String, approx: Option<f64>| {
        let approx = approx.map_or(String::new(), |x| format!("≈ {x:.10}"));
        let _ = writeln!(t, "{}", format!("{name:<18} {formula:<34} {exact:<28} {approx}").trim_end());
    };
    let n = a.n;
    row("n", "", n.to_string(), None);
    row("length", "(1+1/√3)^n", r.length.to_string(), Some(r.length.to_f64()));
    row("triangle area", "(√3/4)(2/3)^n", r.tri_area.to_string(), Some(r.tri_area.to_f64()));
    row("curve area", "(√3/4 − T_n)/3", r.curve_area.to_string(), Some(r.curve_area.to_f64()));
    row("height", "1/(2√3), then 2/(3√3)", r.height.to_string(), Some(r.height.to_f64()));
    row("height argmax", "", format!("{} points", r.height_argmax_points.len()), None);
    row("  leftmost", "", r.height_leftmost.to_string(), None);
    row("  rightmost", "", r.height_rightmost.to_string(), None);
    row("  quoted extremes", "", r.height_quoted_extremes_hold.to_string(), None);
    row("centroid", "(59+17ω)/111", r.centroid.to_string(), None);
    row("volume / π", "17/444", r.volume_over_pi.to_string(), None);
    row("dimension", "2 log((1+√13)/2) / log 3", String::new(), Some(r.hausdorff_dim));
    row("base remainder", "middle thirds", format!("{} intervals", r.cantor.intervals.len()), None);
    row("loops", "", r.loops.to_string(), None);
    row(
        "loop-free length",
        "(1/2+1/√3)^n ≤ c_n ≤ (1+1/√3)^n",
        r.curve_c_length.to_string(),
        Some(r.curve_c_length.to_f64()),
    );
    row("  bounds hold", "", r.curve_c_bounds_hold.to_string(), None);
    row("  vs loops cut", "Hausdorff distance", String::new(), Some(r.curve_c_vs_loop_removed));
    let mut w = open(a.output.as_deref())?;
    w.write_all(t.as_bytes())?;
    w.flush()?;
    Ok(true)
}

pub fn render(a: &RenderArgs) -> Result<bool> {
    let s = preset(&a.preset)?;
    write_text(a.output.as_deref(), &render_svg(&s)?)?;
    if let Some(p) = &a.scene_json {
        write_json(Some(p), &s)?;
    }
    Ok(true)
}
