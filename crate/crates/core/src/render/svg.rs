use std::fmt::Write;

use super::{RenderError, Scene, Shape};
use crate::geom::Point;

/// Larger side of the view box. Coordinates stay below it, so nine
/// significant digits leave eight decimals.
pub const FRAME: f64 = 10.0;

/// Decimal with at most nine significant digits, trailing zeros dropped.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let e = format!("{:.8e}", x);
    let (mant, exp) = e.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    let mut out = String::new();
    if exp >= 0 {
        let int_len = exp as usize + 1;
        if digits.len() <= int_len {
            out.push_str(&digits);
            out.extend(std::iter::repeat_n('0', int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    } else {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&digits);
    }
    if out.contains('.') {
        let t = out.trim_end_matches('0').trim_end_matches('.').len();
        out.truncate(t);
    }
    if neg && out != "0" {
        out.insert(0, '-');
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Frame {
    min_x: f64,
    max_y: f64,
    margin: f64,
    scale: f64,
}

impl Frame {
    fn map(&self, p: Point) -> (String, String) {
        let x = (p.0 - self.min_x + self.margin) * self.scale;
        let y = (self.max_y - p.1 + self.margin) * self.scale;
        (fmt_sig9(x), fmt_sig9(y))
    }
}

/// SVG 1.1 with the y axis pointing up. The view box is the bounding box
/// plus a 2% margin, scaled so its larger side is [`FRAME`].
pub fn render_svg(scene: &Scene) -> Result<String, RenderError> {
    if scene.is_empty() {
        return Err(RenderError::EmptyScene);
    }
    for l in &scene.layers {
        if l.shapes.iter().flat_map(|s| s.points()).any(|p| !p.0.is_finite() || !p.1.is_finite()) {
            return Err(RenderError::NonFinite(l.name.clone()));
        }
    }
    let b = scene.bbox().ok_or(RenderError::EmptyScene)?;
    let side = b.width().max(b.height());
    let side = if side > 0.0 { side } else { 1.0 };
    let margin = 0.02 * side;
    let scale = FRAME / (side + 2.0 * margin);
    let f = Frame { min_x: b.min.0, max_y: b.max.1, margin, scale };
    let vw = (b.width() + 2.0 * margin) * scale;
    let vh = (b.height() + 2.0 * margin) * scale;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt_sig9(vw * 100.0),
        fmt_sig9(vh * 100.0),
        fmt_sig9(vw),
        fmt_sig9(vh)
    );
    if let Some(t) = &scene.title {
        let _ = writeln!(out, "<title>{}</title>", escape(t));
    }
    for l in &scene.layers {
        let st = &l.style;
        let _ = write!(out, "<g id=\"{}\"", escape(&l.name));
        let _ = write!(out, " fill=\"{}\"", escape(st.fill.as_deref().unwrap_or("none")));
        if st.fill.is_some() {
            out.push_str(" fill-rule=\"evenodd\"");
        }
        match &st.stroke {
            Some(c) => {
                let _ = write!(
                    out,
                    " stroke=\"{}\" stroke-width=\"{}\" stroke-linejoin=\"round\" stroke-linecap=\"round\"",
                    escape(c),
                    fmt_sig9(st.width * FRAME)
                );
            }
            None => out.push_str(" stroke=\"none\""),
        }
        out.push_str(">\n");
        for s in &l.shapes {
            match s {
                Shape::Polyline { points } | Shape::Polygon { points } => {
                    if points.is_empty() {
                        continue;
                    }
                    out.push_str("<path d=\"");
                    for (i, &p) in points.iter().enumerate() {
                        let (x, y) = f.map(p);
                        let _ = write!(
                            out,
                            "{}{x},{y}",
                            if i == 0 {
                                "M"
                            } else if i == 1 {
                                "L"
                            } else {
                                " "
                            }
                        );
                    }
                    if matches!(s, Shape::Polygon { .. }) {
                        out.push('Z');
                    }
                    out.push_str("\"/>\n");
                }
                Shape::Dots { points, radius } => {
                    let r = fmt_sig9(radius * scale);
                    for &p in points {
                        let (x, y) = f.map(p);
                        let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"{r}\"/>");
                    }
                }
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
