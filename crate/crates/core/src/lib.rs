//! Hochschild (co)homology and Batalin–Vilkovisky structures of quantum
//! generalized Weyl algebras.

pub mod bv;
pub mod check;
pub mod error;
pub mod duality;
pub mod envelope;
pub mod gwa;
pub mod homology;
pub mod linalg;
pub mod presets;
pub mod report;
pub mod resolution;
pub mod scalars;

pub use error::{Error, Result};
