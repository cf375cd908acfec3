//! Exact computations around fat points in projective space.
//!
//! The crate pairs closed formulas (initial degrees and regularity of
//! symbolic powers, Waldschmidt constants, weak Lefschetz failure witnesses)
//! with an independent rank oracle that recomputes the same numbers by brute
//! force linear algebra over a prime field or the rationals.

pub mod cache;
pub mod cli;
pub mod closed_forms;
pub mod combinatorics;
pub mod error;
pub mod field;
pub mod hilbert;
pub mod linsys;
pub mod oracle;
pub mod splines;
pub mod verify;
pub mod wlp;
mod serde_big;

pub use error::{Error, Result};
