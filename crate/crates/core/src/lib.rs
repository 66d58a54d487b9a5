//! The Kochawave curve: an asymmetric Koch variant whose spike sits on the
//! third quarter of each segment.
//!
//! Everything is generated on the hexagonal lattice ℤ[ω] at scale `3ⁿ`, so
//! vertices are exact integers and the different constructions can be
//! compared for equality.

pub mod analyze;
pub mod construct;
pub mod geom;
pub mod lattice;
pub mod render;
pub mod tiling;
pub mod verify;

pub use lattice::{EisensteinInt, QOmega, SqrtThreeScalar};
