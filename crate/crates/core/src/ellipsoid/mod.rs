//! Fitting operators, the explicit constructions and the Woodbury route.

pub mod cloud;
pub mod constructions;
pub mod fit;
pub mod operators;
pub mod pseudocal;
pub mod woodbury;

pub use cloud::PointCloud;
pub use constructions::{
    alpha, build_m, check_invertibility, decompose_b, factor_gram, fit_identity_perturbation,
    fit_least_squares, sym_dim, w_vector, BDecomposition, Invertibility, MForms,
};
pub use fit::{check_fit, FitResult, Verdict, EXTERNAL_RESIDUAL_TOL, INTERNAL_RESIDUAL_TOL, PSD_TOL};
pub use operators::{apply_a, apply_a_star, gram};
pub use pseudocal::{fit_pseudo_calibration, pc_coefficient, pseudo_expectation, PseudoExpectation};
pub use woodbury::{fit_least_squares_woodbury, Diagnostics, WoodburyScalars};
