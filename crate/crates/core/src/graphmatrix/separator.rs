use std::collections::BTreeSet;

use super::shape::{Kind, Shape};
use crate::error::{Error, Result};

pub const MAX_SEPARATOR_VERTICES: usize = 24;
const TIE_EPS: f64 = 1e-12;

/// Vertex weight: 1 for circles, `log d / log n` for squares.
pub fn phi(kind: Kind, n: usize, d: usize) -> f64 {
    match kind {
        Kind::Circle => 1.0,
        Kind::Square => (d as f64).ln() / (n as f64).ln(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparatorResult {
    pub vertices: BTreeSet<usize>,
    pub weight: f64,
}

/// Whether every `U -> V` path (length 0 included) meets `blocked`.
pub fn separates(shape: &Shape, blocked: &BTreeSet<usize>) -> bool {
    let nv = shape.num_vertices();
    let mut seen = vec![false; nv];
    let mut stack: Vec<usize> = shape.u().iter().copied().filter(|x| !blocked.contains(x)).collect();
    let targets: BTreeSet<usize> = shape.v().iter().copied().collect();
    while let Some(x) = stack.pop() {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        if targets.contains(&x) {
            return false;
        }
        for e in shape.edges() {
            let y = if e.circle == x {
                e.square
            } else if e.square == x {
                e.circle
            } else {
                continue;
            };
            if !seen[y] && !blocked.contains(&y) {
                stack.push(y);
            }
        }
    }
    true
}

/// Minimum-`φ` vertex separator by exhaustive subset search.
/// Weight ties (within `1e-12`) go to the lexicographically smallest sorted id list.
pub fn min_vertex_separator(shape: &Shape, n: usize, d: usize) -> Result<SeparatorResult> {
    if n < 2 || d < 2 {
        return Err(Error::InvalidArgument("phi needs n >= 2 and d >= 2".into()));
    }
    let nv = shape.num_vertices();
    if nv > MAX_SEPARATOR_VERTICES {
        return Err(Error::TooLarge(format!("{nv} vertices exceeds {MAX_SEPARATOR_VERTICES}")));
    }
    let weights: Vec<f64> = (0..nv).map(|x| phi(shape.kind(x), n, d)).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for mask in 0u32..(1u32 << nv) {
        let set: BTreeSet<usize> = (0..nv).filter(|&x| mask >> x & 1 == 1).collect();
        let w: f64 = set.iter().map(|&x| weights[x]).sum();
        if let Some((bw, _)) = &best {
            if w > bw + TIE_EPS {
                continue;
            }
        }
        if !separates(shape, &set) {
            continue;
        }
        let ids: Vec<usize> = set.iter().copied().collect();
        let better = match &best {
            None => true,
            Some((bw, bids)) => w < bw - TIE_EPS || ids < *bids,
        };
        if better {
            best = Some((w, ids));
        }
    }
    let (weight, ids) = best.expect("the full vertex set always separates");
    Ok(SeparatorResult { vertices: ids.into_iter().collect(), weight })
}

/// Dominant factor `n^{(φ(V) − φ(S_min) + φ(Iso))/2}` of the graph-matrix norm bound.
///
/// The exponent is `(circles + squares · log_n d) / 2` with integer `circles`, `squares`,
/// so `value = n^{circles/2} d^{squares/2}` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct NormPrediction {
    pub circles: i64,
    pub squares: i64,
    pub exponent: f64,
    pub value: f64,
    pub separator: SeparatorResult,
    pub isolated: BTreeSet<usize>,
}

pub fn norm_predictor(shape: &Shape, n: usize, d: usize) -> Result<NormPrediction> {
    let separator = min_vertex_separator(shape, n, d)?;
    let isolated: BTreeSet<usize> = shape.isolated().into_iter().collect();
    let count = |xs: &mut dyn Iterator<Item = usize>| {
        xs.fold((0i64, 0i64), |(c, s), x| match shape.kind(x) {
            Kind::Circle => (c + 1, s),
            Kind::Square => (c, s + 1),
        })
    };
    let (ac, asq) = count(&mut (0..shape.num_vertices()));
    let (sc, ssq) = count(&mut separator.vertices.iter().copied());
    let (ic, isq) = count(&mut isolated.iter().copied());
    let circles = ac - sc + ic;
    let squares = asq - ssq + isq;
    let log_n_d = (d as f64).ln() / (n as f64).ln();
    let exponent = 0.5 * (circles as f64 + squares as f64 * log_n_d);
    let value = (n as f64).powf(circles as f64 / 2.0) * (d as f64).powf(squares as f64 / 2.0);
    Ok(NormPrediction { circles, squares, exponent, value, separator, isolated })
}
