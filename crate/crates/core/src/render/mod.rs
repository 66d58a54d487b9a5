//! Scenes of float geometry and a deterministic SVG writer.

mod presets;
mod svg;

pub use presets::{preset, scene_of_covering, PRESETS};
pub use svg::{fmt_sig9, render_svg, FRAME};

use serde::{Deserialize, Serialize};

use crate::analyze::AnalyzeError;
use crate::construct::{ConstructError, Polyline};
use crate::geom::{BBox, Point};
use crate::tiling::TilingError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RenderError {
    #[error("scene has no geometry")]
    EmptyScene,
    #[error("non-finite coordinate in layer `{0}`")]
    NonFinite(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Shape {
    Polyline {
        points: Vec<Point>,
    },
    /// Closed; filled with the even-odd rule.
    Polygon {
        points: Vec<Point>,
    },
    Dots {
        points: Vec<Point>,
        radius: f64,
    },
}

impl Shape {
    fn points(&self) -> &[Point] {
        match self {
            Shape::Polyline { points } | Shape::Polygon { points } | Shape::Dots { points, .. } => points,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Style {
    pub stroke: Option<String>,
    pub fill: Option<String>,
    /// Stroke width as a fraction of the larger side of the drawing.
    pub width: f64,
}

impl Style {
    pub fn line(colour: &str, width: f64) -> Self {
        Self { stroke: Some(colour.into()), fill: None, width }
    }

    pub fn filled(fill: &str, stroke: Option<&str>, width: f64) -> Self {
        Self { stroke: stroke.map(Into::into), fill: Some(fill.into()), width }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub name: String,
    pub style: Style,
    pub shapes: Vec<Shape>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub title: Option<String>,
    pub layers: Vec<Layer>,
}

impl Scene {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: Some(title.into()), layers: Vec::new() }
    }

    pub fn layer(&mut self, name: &str, style: Style) -> &mut Layer {
        self.layers.push(Layer { name: name.into(), style, shapes: Vec::new() });
        self.layers.last_mut().expect("just pushed")
    }

    pub fn is_empty(&self) -> bool {
        self.layers.iter().all(|l| l.shapes.iter().all(|s| s.points().is_empty()))
    }

    /// Box around every point, dots grown by their radius.
    pub fn bbox(&self) -> Option<BBox> {
        let mut out: Option<BBox> = None;
        for l in &self.layers {
            for s in &l.shapes {
                let r = if let Shape::Dots { radius, .. } = s { *radius } else { 0.0 };
                if let Some(b) = BBox::of(s.points().iter().copied()) {
                    let b = b.grow(r);
                    out = Some(out.map_or(b, |o| o.union(&b)));
                }
            }
        }
        out
    }
}

impl Layer {
    pub fn polyline(&mut self, points: Vec<Point>) -> &mut Self {
        self.shapes.push(Shape::Polyline { points });
        self
    }

    pub fn polygon(&mut self, points: Vec<Point>) -> &mut Self {
        self.shapes.push(Shape::Polygon { points });
        self
    }

    pub fn dots(&mut self, points: Vec<Point>, radius: f64) -> &mut Self {
        self.shapes.push(Shape::Dots { points, radius });
        self
    }
}

/// Polyline in float coordinates, shifted by `dx` along the real axis.
pub fn xy_shifted(p: &Polyline, dx: f64) -> Vec<Point> {
    p.to_xy().into_iter().map(|(x, y)| (x + dx, y)).collect()
}

/// A scene with a single black polyline.
pub fn curve_scene(p: &Polyline, title: &str) -> Scene {
    let mut s = Scene::new(title);
    s.layer("curve", Style::line("#000000", 0.002)).polyline(p.to_xy());
    s
}
