//! The four constructions of the curve: segment substitution, triangle
//! substitution, an L-system with a scaling turtle, and the closed-form
//! `z_k` recurrence.

mod lsystem;
mod numeric;
mod segments;
mod triangles;

pub use lsystem::{rewrite_lsystem, turtle_run, turtle_run_with, LSystemWord, Symbol, TurtleRules, TurtleState};
pub use numeric::{digit_counts, z_at, z_stream, DigitCounters, ZStream};
pub use segments::{generate_segments, generate_segments_with_budget, subdivide_segment, DEFAULT_MEMORY_BUDGET};
pub use triangles::{generate_triangles, generate_triangles_with_budget, subdivide_triangle, Triangle};

use serde::{Deserialize, Serialize};

use crate::lattice::{EisensteinInt, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("{what} is not divisible by 3; scale the input by 3ⁿ first")]
    NotDivisible { what: EisensteinInt },
    #[error("n={n} needs about {bytes} bytes, over the {budget}-byte budget")]
    Resource { n: u32, bytes: u128, budget: u128 },
    #[error("turtle parity broken at symbol {index}: heading {h} and scale exponent {a} differ in parity")]
    TurtleParity { index: usize, a: i64, h: i64 },
    #[error("turtle scale exponent went negative at symbol {index}")]
    TurtleNegativeScale { index: usize },
    #[error("unknown L-system symbol {0:?}")]
    BadSymbol(char),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// An ordered vertex list; actual coordinates are `vertices / 3^scale_exp`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyline {
    pub scale_exp: u32,
    pub vertices: Vec<EisensteinInt>,
}

impl Polyline {
    pub fn new(scale_exp: u32, vertices: Vec<EisensteinInt>) -> Self {
        Self { scale_exp, vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EisensteinInt, EisensteinInt)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn to_xy(&self) -> Vec<(f64, f64)> {
        self.vertices.iter().map(|z| z.to_xy_scaled(self.scale_exp)).collect()
    }

    /// Same polyline expressed at a finer scale `3^(scale_exp + k)`.
    pub fn rescaled(&self, k: u32) -> Result<Self, LatticeError> {
        let f = 3i64.checked_pow(k).ok_or(LatticeError::Overflow("rescale"))?;
        let vertices = self.vertices.iter().map(|z| z.checked_scale(f)).collect::<Result<_, _>>()?;
        Ok(Self::new(self.scale_exp + k, vertices))
    }
}

/// `3^n` as an i64, or an overflow error.
pub(crate) fn pow3(n: u32) -> Result<i64, LatticeError> {
    3i64.checked_pow(n).ok_or(LatticeError::Overflow("3^n"))
}
