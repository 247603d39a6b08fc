//! Dense linear algebra, eigensolver and random streams.

pub mod cholesky;
pub mod eigen;
pub mod linalg;
pub mod rng;

pub use cholesky::{solve_spd, Cholesky};
pub use eigen::{
    min_eigenvalue, operator_norm, sym_eig, sym_eigenvalues, symmetric_operator_norm,
    EigenDecomposition,
};
pub use linalg::{Matrix, SymmetricMatrix, Vector};
pub use rng::{gaussian_vector, stream_id, RngStream};
