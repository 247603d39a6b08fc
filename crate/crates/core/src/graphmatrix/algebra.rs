use super::catalogue::a_star_operator_terms;
use super::shape::{collect_terms, resolve_multi_edges, Edge, Kind, Shape, ShapeTerm};
use crate::error::{Error, Result};

/// Shape expansion of `M_a M_b`.
///
/// `V_a` is glued to `U_b`; then every partial injection between the remaining vertices
/// of `a` and of `b` (same kind only) gives one merged shape, whose multi-edges are resolved.
/// If the repeat patterns of `V_a` and `U_b` disagree the product is zero and the result is empty.
pub fn multiply(a: &Shape, b: &Shape) -> Result<Vec<ShapeTerm>> {
    if a.v_signature() != b.u_signature() {
        return Err(Error::SignatureMismatch(format!(
            "V of left shape has signature {:?}, U of right shape has {:?}",
            a.v_signature(),
            b.u_signature()
        )));
    }
    let (va, ub) = (a.v(), b.u());
    for p in 0..va.len() {
        for q in 0..va.len() {
            if (va[p] == va[q]) != (ub[p] == ub[q]) {
                return Ok(Vec::new());
            }
        }
    }

    let na = a.num_vertices();
    // Map b's vertices into the combined id space.
    let mut b_map = vec![usize::MAX; b.num_vertices()];
    let mut b_only = Vec::new();
    let mut next = na;
    for y in 0..b.num_vertices() {
        if let Some(p) = ub.iter().position(|&z| z == y) {
            b_map[y] = va[p];
        } else {
            b_map[y] = next;
            b_only.push(next);
            next += 1;
        }
    }
    let total = next;
    let mut kinds: Vec<Kind> = a.kinds().to_vec();
    let mut names: Vec<String> = (0..na).map(|x| a.name(x).to_string()).collect();
    for y in 0..b.num_vertices() {
        if b_map[y] >= na {
            kinds.push(b.kind(y));
            names.push(format!("{}'", b.name(y)));
        }
    }
    let a_only: Vec<usize> = (0..na).filter(|x| !va.contains(x)).collect();
    let edges: Vec<Edge> = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|e| Edge { circle: b_map[e.circle], square: b_map[e.square], label: e.label }))
        .collect();
    let u: Vec<usize> = a.u().to_vec();
    let v: Vec<usize> = b.v().iter().map(|&y| b_map[y]).collect();

    let mut out = Vec::new();
    let mut target: Vec<Option<usize>> = vec![None; a_only.len()];
    let mut taken = vec![false; b_only.len()];
    let mut err = None;
    enumerate_injections(&a_only, &b_only, &kinds, 0, &mut target, &mut taken, &mut |target| {
        if err.is_some() {
            return;
        }
        // Merge each matched b-only vertex into its a-only partner.
        let mut rep: Vec<usize> = (0..total).collect();
        for (i, t) in target.iter().enumerate() {
            if let Some(j) = *t {
                rep[b_only[j]] = a_only[i];
            }
        }
        let mut compact = vec![usize::MAX; total];
        let mut verts = Vec::new();
        for x in 0..total {
            if rep[x] == x {
                compact[x] = verts.len();
                verts.push((names[x].clone(), kinds[x]));
            }
        }
        let m = |x: usize| compact[rep[x]];
        let merged = Shape::new(
            verts,
            u.iter().map(|&x| m(x)).collect(),
            v.iter().map(|&x| m(x)).collect(),
            edges.iter().map(|e| (m(e.circle), m(e.square), e.label)),
        );
        match merged.and_then(|s| resolve_multi_edges(&s)) {
            Ok(terms) => out.extend(terms),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(collect_terms(out))
}

fn enumerate_injections(
    a_only: &[usize],
    b_only: &[usize],
    kinds: &[Kind],
    i: usize,
    target: &mut Vec<Option<usize>>,
    taken: &mut Vec<bool>,
    f: &mut impl FnMut(&[Option<usize>]),
) {
    if i == a_only.len() {
        f(target);
        return;
    }
    target[i] = None;
    enumerate_injections(a_only, b_only, kinds, i + 1, target, taken, f);
    for j in 0..b_only.len() {
        if !taken[j] && kinds[b_only[j]] == kinds[a_only[i]] {
            taken[j] = true;
            target[i] = Some(j);
            enumerate_injections(a_only, b_only, kinds, i + 1, target, taken, f);
            taken[j] = false;
        }
    }
    target[i] = None;
}

/// Expands `Σ_i c_i · Σ_j c_j M_{a_i} M_{b_j}`.
pub fn multiply_terms(left: &[ShapeTerm], right: &[ShapeTerm]) -> Result<Vec<ShapeTerm>> {
    let mut out = Vec::new();
    for l in left {
        for r in right {
            for t in multiply(&l.shape, &r.shape)? {
                out.push(ShapeTerm { coeff: l.coeff * r.coeff * t.coeff, shape: t.shape });
            }
        }
    }
    Ok(collect_terms(out))
}

/// Expands `A*(c)` for a vector `c = Σ coeff M_γ` (each `γ` with `U` one circle and `V` empty)
/// into `d x d` shapes with `U` and `V` single squares (or a shared square).
pub fn apply_a_star(vector: &[ShapeTerm]) -> Result<Vec<ShapeTerm>> {
    for t in vector {
        if t.shape.u_signature() != [Kind::Circle] || !t.shape.v().is_empty() {
            return Err(Error::SignatureMismatch("A* expects a vector shape: U one circle, V empty".into()));
        }
    }
    let products = multiply_terms(&a_star_operator_terms(), vector)?;
    let reshaped = products
        .into_iter()
        .map(|t| Ok(ShapeTerm { coeff: t.coeff, shape: t.shape.move_boundary(1)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(collect_terms(reshaped))
}
