//! Named shapes used to expand `AA*`, `W`, `B`, `Δ`, `1_n`, `w` and `A*`.

use std::collections::BTreeMap;

use super::shape::{Kind::Circle as C, Kind::Square as S, Shape, ShapeTerm};

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn term(coeff: f64, shape: Shape) -> ShapeTerm {
    ShapeTerm { coeff, shape }
}

/// Every catalogue shape with its leading coefficient.
pub fn catalogue() -> BTreeMap<&'static str, ShapeTerm> {
    let mut m = BTreeMap::new();
    // A(X) as a vector of shapes: rows indexed by circles, columns by square pairs.
    m.insert("alpha_A1", term(1.0, Shape::build(&[("u", C), ("x1", S), ("x2", S)], &[0], &[1, 2], &[(0, 1, 1), (0, 2, 1)])));
    m.insert("alpha_A2", term(1.0, Shape::build(&[("u", C), ("x", S)], &[0], &[1, 1], &[(0, 1, 1), (0, 1, 1)])));
    m.insert(
        "alpha_1",
        term(
            1.0,
            Shape::build(
                &[("u", C), ("v", C), ("x1", S), ("x2", S)],
                &[0],
                &[1],
                &[(0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)],
            ),
        ),
    );
    m.insert("alpha_2a", term(1.0, Shape::build(&[("u", C), ("v", C), ("x", S)], &[0], &[1], &[(0, 2, 2), (1, 2, 2)])));
    m.insert("alpha_2b", term(1.0, Shape::build(&[("u", C), ("v", C), ("x", S)], &[0], &[1], &[(0, 2, 2)])));
    m.insert("alpha_2c", term(1.0, Shape::build(&[("u", C), ("v", C), ("x", S)], &[0], &[1], &[(1, 2, 2)])));
    m.insert("alpha_2d", term(1.0, Shape::build(&[("u", C), ("v", C)], &[0], &[1], &[])));
    m.insert("alpha_3a", term(1.0, Shape::build(&[("u", C), ("x1", S), ("x2", S)], &[0], &[0], &[(0, 1, 2), (0, 2, 2)])));
    m.insert("alpha_3b", term(1.0, Shape::build(&[("u", C), ("x", S)], &[0], &[0], &[(0, 1, 2)])));
    m.insert("alpha_3c", term(1.0, Shape::build(&[("u", C)], &[0], &[0], &[])));
    m.insert("alpha_4", term(1.0, Shape::build(&[("u", C), ("x", S)], &[0], &[0], &[(0, 1, 4)])));
    m.insert("alpha_w", term(SQRT2, Shape::build(&[("u", C), ("x", S)], &[0], &[], &[(0, 1, 2)])));
    m.insert("alpha_1n", term(1.0, Shape::build(&[("u", C)], &[0], &[], &[])));
    m.insert("alpha_Astar1", term(1.0, Shape::build(&[("u", S), ("v", S), ("x", C)], &[0], &[1], &[(2, 0, 1), (2, 1, 1)])));
    m.insert("alpha_Astar2", term(1.0, Shape::build(&[("u", S), ("x", C)], &[0], &[0], &[])));
    m.insert("alpha_Astar3", term(SQRT2, Shape::build(&[("u", S), ("x", C)], &[0], &[0], &[(1, 0, 2)])));
    m
}

/// Improper shapes whose multi-edges resolve into catalogue combinations.
pub fn improper_shapes() -> BTreeMap<&'static str, Shape> {
    let mut m = BTreeMap::new();
    m.insert(
        "alpha_2",
        Shape::build(&[("u", C), ("v", C), ("x", S)], &[0], &[1], &[(0, 2, 1), (0, 2, 1), (1, 2, 1), (1, 2, 1)]),
    );
    m.insert(
        "alpha_3",
        Shape::build(&[("u", C), ("x1", S), ("x2", S)], &[0], &[0], &[(0, 1, 1), (0, 1, 1), (0, 2, 1), (0, 2, 1)]),
    );
    m.insert("alpha_4prime", Shape::build(&[("u", C), ("x", S)], &[0], &[0], &[(0, 1, 1); 4]));
    m
}

/// Looks up a catalogue or improper shape by name.
pub fn shape_by_name(name: &str) -> Option<Shape> {
    catalogue()
        .remove(name)
        .map(|t| t.shape)
        .or_else(|| improper_shapes().remove(name))
}

/// `A*` as a map from vectors to vectorized `d x d` matrices:
/// `vec(A*(c)) = Σ_j coeff_j M_j c`, each `M_j` having `U` = a square pair and `V` = one circle.
pub fn a_star_operator_terms() -> Vec<ShapeTerm> {
    vec![
        term(1.0, Shape::build(&[("u", S), ("v", S), ("x", C)], &[0, 1], &[2], &[(2, 0, 1), (2, 1, 1)])),
        term(1.0, Shape::build(&[("u", S), ("x", C)], &[0, 0], &[1], &[])),
        term(SQRT2, Shape::build(&[("u", S), ("x", C)], &[0, 0], &[1], &[(1, 0, 2)])),
    ]
}
