//! Distances between linear codes in the Grassmann graph and in the graph of
//! non-degenerate codes.
//!
//! A linear `[n, k]_q` code is a k-dimensional subspace of F_q^n; it is
//! non-degenerate when no coordinate vanishes on all of it. Two codes are
//! adjacent when they meet in dimension `k - 1`. Restricting the Grassmann
//! graph to the non-degenerate codes can stretch distances by one, and this
//! crate computes both distances, builds pairs where the stretch happens, and
//! produces independently checkable certificates for it.

pub mod analytics;
pub mod cli;
pub mod code;
pub mod error;
pub mod field;
pub mod graph;
pub mod linalg;
pub mod scan;
pub mod witness;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use linalg::{Matrix, Subspace, Vector};
