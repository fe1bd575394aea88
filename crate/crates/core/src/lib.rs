//! Iterated tilting complexes over finite-dimensional basic symmetric
//! algebras, with Cartan invariants of the derived-equivalent algebras and
//! growth analysis of the associated syzygy resolutions.

pub mod algebra;
pub mod analysis;
pub mod cli;
pub mod data;
pub mod error;
pub mod field;
pub mod homotopy;
pub mod matrix;
pub mod module;
pub mod report;

pub use error::{Error, Result};
