//! Resolutions of ordinary arithmetically Cohen–Macaulay curves.
//!
//! The crate computes the genus bound `π'(n, d)` and the resolution shapes
//! of curves of degree `d` in `P^n` attaining it, builds Eagon–Northcott
//! complexes for calibrated degrees, reads Hilbert functions off shapes,
//! and checks hyperplane sections of monomial curves for general position.

pub mod cli;
pub mod combinat;
pub mod complexes;
pub mod curves;
pub mod eagon_northcott;
pub mod fixtures;
pub mod json;
pub mod error;
pub mod linalg;
pub mod ordinary;
pub mod polyring;
pub mod shapes;

pub use error::{Error, Result};
