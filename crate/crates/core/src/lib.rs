//! Ellipsoid fitting for random Gaussian points.
//!
//! Explicit constructions of a PSD `X` with `v_iᵀ X v_i = 1`, the graph-matrix calculus
//! for the random matrices involved, a heuristic SDP feasibility check, the discrepancy
//! reduction and a phase-grid experiment harness.

pub mod ellipsoid;
pub mod error;
pub mod experiments;
pub mod graphmatrix;
pub mod hermite;
pub mod numerics;
pub mod sdpfeas;

pub use error::{Error, Result};
