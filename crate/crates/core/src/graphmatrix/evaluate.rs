use super::shape::{Kind, Shape, ShapeTerm};
use crate::ellipsoid::PointCloud;
use crate::error::{Error, Result};
use crate::hermite::hermite_eval;
use crate::numerics::Matrix;

/// Upper bound on `n^{#circles} d^{#squares}` for exhaustive evaluation.
pub const EVAL_LIMIT: f64 = 1e9;

/// Number of rows (or columns) indexed by a boundary tuple.
pub fn tuple_dim(sig: &[Kind], n: usize, d: usize) -> usize {
    sig.iter().map(|k| if *k == Kind::Circle { n } else { d }).product()
}

struct Step {
    vertex: usize,
    kind: Kind,
    /// (earlier vertex, label table index)
    links: Vec<(usize, usize)>,
}

struct Ctx<'a> {
    steps: Vec<Step>,
    tables: Vec<Vec<f64>>,
    d: usize,
    n: usize,
    u_radix: Vec<(usize, usize)>,
    v_radix: Vec<(usize, usize)>,
    out: &'a mut Matrix,
}

/// Dense graph matrix `M_α` on `cloud`.
///
/// Entry `(A, B)` sums, over injective maps of circles into `[n]` and squares into `[d]`
/// sending `U` to `A` and `V` to `B`, the product of `h_l(v_{circle, square})` along edges.
/// Tuples with clashing indices give zero rows/columns.
pub fn evaluate(shape: &Shape, cloud: &PointCloud) -> Result<Matrix> {
    let (n, d) = (cloud.n(), cloud.d());
    let nc = shape.circles().len() as i32;
    let ns = shape.squares().len() as i32;
    let work = (n as f64).powi(nc) * (d as f64).powi(ns);
    if work > EVAL_LIMIT {
        return Err(Error::TooLarge(format!(
            "n^{nc} d^{ns} = {work:e} exceeds {EVAL_LIMIT:e}"
        )));
    }
    let rows = tuple_dim(&shape.u_signature(), n, d);
    let cols = tuple_dim(&shape.v_signature(), n, d);
    let mut out = Matrix::zeros(rows, cols);
    if n < nc as usize || d < ns as usize {
        return Ok(out);
    }

    let mut labels: Vec<usize> = shape.edges().iter().map(|e| e.label).collect();
    labels.sort_unstable();
    labels.dedup();
    let mut tables = Vec::with_capacity(labels.len());
    for &l in &labels {
        let mut t = Vec::with_capacity(n * d);
        for i in 0..n {
            for k in 0..d {
                t.push(hermite_eval(l, cloud.coord(i, k))?);
            }
        }
        tables.push(t);
    }

    // Boundary vertices first so each leaf writes one entry.
    let mut order: Vec<usize> = Vec::new();
    for &x in shape.u().iter().chain(shape.v()) {
        if !order.contains(&x) {
            order.push(x);
        }
    }
    order.extend(shape.middle());
    let position = |x: usize| order.iter().position(|&y| y == x).expect("ordered");
    let steps = order
        .iter()
        .enumerate()
        .map(|(pos, &x)| {
            let links = shape
                .edges()
                .iter()
                .filter_map(|e| {
                    let other = if e.circle == x {
                        e.square
                    } else if e.square == x {
                        e.circle
                    } else {
                        return None;
                    };
                    (position(other) < pos)
                        .then(|| (other, labels.binary_search(&e.label).expect("label indexed")))
                })
                .collect();
            Step { vertex: x, kind: shape.kind(x), links }
        })
        .collect();
    let radix = |t: &[usize]| {
        let mut stride = 1;
        let mut r: Vec<(usize, usize)> = t
            .iter()
            .rev()
            .map(|&x| {
                let s = stride;
                stride *= if shape.kind(x) == Kind::Circle { n } else { d };
                (x, s)
            })
            .collect();
        r.reverse();
        r
    };
    let mut ctx = Ctx { steps, tables, d, n, u_radix: radix(shape.u()), v_radix: radix(shape.v()), out: &mut out };
    let mut assign = vec![usize::MAX; shape.num_vertices()];
    let mut used_c = vec![false; n];
    let mut used_s = vec![false; d];
    recurse(&mut ctx, 0, 1.0, &mut assign, &mut used_c, &mut used_s);
    Ok(out)
}

fn recurse(ctx: &mut Ctx<'_>, step: usize, prod: f64, assign: &mut [usize], used_c: &mut [bool], used_s: &mut [bool]) {
    if step == ctx.steps.len() {
        let row: usize = ctx.u_radix.iter().map(|&(x, s)| assign[x] * s).sum();
        let col: usize = ctx.v_radix.iter().map(|&(x, s)| assign[x] * s).sum();
        ctx.out.add_at(row, col, prod);
        return;
    }
    let vertex = ctx.steps[step].vertex;
    let kind = ctx.steps[step].kind;
    let range = if kind == Kind::Circle { ctx.n } else { ctx.d };
    for idx in 0..range {
        let used = if kind == Kind::Circle { &mut *used_c } else { &mut *used_s };
        if used[idx] {
            continue;
        }
        let mut p = prod;
        for &(other, t) in &ctx.steps[step].links {
            let (i, k) = if kind == Kind::Circle { (idx, assign[other]) } else { (assign[other], idx) };
            p *= ctx.tables[t][i * ctx.d + k];
        }
        if p == 0.0 {
            continue;
        }
        used[idx] = true;
        assign[vertex] = idx;
        recurse(ctx, step + 1, p, assign, used_c, used_s);
        let used = if kind == Kind::Circle { &mut *used_c } else { &mut *used_s };
        used[idx] = false;
    }
    assign[vertex] = usize::MAX;
}

/// `Σ coeff · M_shape` over terms sharing one boundary signature.
pub fn evaluate_sum(terms: &[ShapeTerm], cloud: &PointCloud) -> Result<Matrix> {
    let first = terms
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty shape combination".into()))?;
    let (us, vs) = (first.shape.u_signature(), first.shape.v_signature());
    let mut acc = Matrix::zeros(tuple_dim(&us, cloud.n(), cloud.d()), tuple_dim(&vs, cloud.n(), cloud.d()));
    for t in terms {
        if t.shape.u_signature() != us || t.shape.v_signature() != vs {
            return Err(Error::SignatureMismatch("terms of a sum must share boundary signatures".into()));
        }
        acc.add_scaled_assign(t.coeff, &evaluate(&t.shape, cloud)?)?;
    }
    Ok(acc)
}
