//! Heuristic SDP feasibility and the discrepancy connection.

pub mod disc;
pub mod projections;

pub use disc::{disc_bruteforce, kernel_basis, sample_null, sample_planted, sdp_zero_via_kernel, DiscInstance};
pub use projections::{
    ef_feasible, project_affine, project_psd, FeasibilityConfig, FeasibilityStatus, FeasibilityVerdict,
};
