//! Exact symbolic engine for the topological-string partition function of a
//! local toric surface, its free energy, and Gopakumar-Vafa integrality.
//!
//! Everything is computed in exact arithmetic over the formal variable
//! `x = q^{1/2}`. The partition function is available along three
//! independent routes (vertex sums, symmetric-group matrix elements, and the
//! forest expansion of vacuum expectation values) which cross-check each
//! other.

pub mod characters;
pub mod cli;
pub mod error;
pub mod graph_engine;
pub mod gv;
pub mod partitions;
pub mod qalgebra;
pub mod schur_vertex;
pub mod series;

pub use error::{Error, Result};
pub use partitions::{Partition, RSet};
pub use qalgebra::{QLaurent, QRatio, TPoly, YPoly};
