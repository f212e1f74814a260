//! Verifiable computational topology on finite data.
//!
//! The crate covers finite proximity spaces and their descriptive counterparts,
//! proximal continuity and discretised homotopy checking, homotopic cycle
//! structures, covers and nerves with GF(2) Betti numbers, Jordan-curve region
//! partitioning on pixel grids, and Betti-number persistence tracking over
//! frame sequences.

pub mod alexandrov;
pub mod axioms;
pub mod cycles;
pub mod descriptive;
pub mod error;
mod gf2;
pub mod homotopy;
pub mod jordan;
pub mod maps;
pub mod nerve;
pub mod persistence;
pub mod pixel;
pub mod pointset;
pub mod proximity;
pub mod schema;

pub use error::{Error, Result};
pub use pointset::PointSet;
