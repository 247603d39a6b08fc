//! Graph matrices: labeled shapes over circles (samples) and squares (coordinates),
//! their dense evaluation, products, separators and norm predictions.

pub mod algebra;
pub mod catalogue;
pub mod evaluate;
pub mod separator;
pub mod shape;
pub mod verify;

pub use algebra::{apply_a_star, multiply, multiply_terms};
pub use catalogue::{a_star_operator_terms, catalogue, improper_shapes, shape_by_name};
pub use evaluate::{evaluate, evaluate_sum, tuple_dim, EVAL_LIMIT};
pub use separator::{min_vertex_separator, norm_predictor, phi, separates, NormPrediction, SeparatorResult};
pub use shape::{
    collect_terms, resolve_multi_edges, resolve_multi_edges_with, simplify_isolated, Edge, Kind, Shape,
    ShapeTerm,
};
pub use verify::{
    decompositions, measured_norm, norm_check, verify_decompositions, verify_decompositions_with,
    DecompositionReport, Decompositions, NormCheck,
};
