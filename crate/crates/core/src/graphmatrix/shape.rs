use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hermite::{product_coeffs, HermiteExpansion};

/// Vertex kind: circles range over `[n]` (sample indices), squares over `[d]` (coordinates).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Circle,
    Square,
}

impl Kind {
    pub fn glyph(self) -> char {
        match self {
            Kind::Circle => '○',
            Kind::Square => '□',
        }
    }
}

/// Hermite-labeled edge between a circle and a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub circle: usize,
    pub square: usize,
    pub label: usize,
}

/// Structural identity of a shape, ignoring display names.
pub type ShapeKey = (Vec<Kind>, Vec<usize>, Vec<usize>, Vec<Edge>);

/// A labeled bipartite multigraph with left/right boundary tuples.
#[derive(Debug, Clone)]
pub struct Shape {
    kinds: Vec<Kind>,
    names: Vec<String>,
    u: Vec<usize>,
    v: Vec<usize>,
    edges: Vec<Edge>,
}

impl PartialEq for Shape {
    fn eq(&self, other: &Self) -> bool {
        self.kinds == other.kinds && self.u == other.u && self.v == other.v && self.edges == other.edges
    }
}

impl Shape {
    /// Validates and builds a shape. Edges may be given in either endpoint order.
    pub fn new(
        vertices: Vec<(String, Kind)>,
        u: Vec<usize>,
        v: Vec<usize>,
        edges: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let (names, kinds): (Vec<String>, Vec<Kind>) = vertices.into_iter().unzip();
        let nv = kinds.len();
        if let Some(&bad) = u.iter().chain(&v).find(|&&x| x >= nv) {
            return Err(Error::InvalidArgument(format!("boundary vertex {bad} is not declared")));
        }
        let mut out = Vec::new();
        for (a, b, label) in edges {
            if a >= nv || b >= nv {
                return Err(Error::InvalidArgument(format!("edge ({a},{b}) uses an undeclared vertex")));
            }
            if label == 0 {
                return Err(Error::InvalidArgument("edge labels must be at least 1".into()));
            }
            let e = match (kinds[a], kinds[b]) {
                (Kind::Circle, Kind::Square) => Edge { circle: a, square: b, label },
                (Kind::Square, Kind::Circle) => Edge { circle: b, square: a, label },
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "edge ({a},{b}) does not join a circle and a square"
                    )))
                }
            };
            out.push(e);
        }
        out.sort();
        Ok(Self { kinds, names, u, v, edges: out })
    }

    /// Shorthand for catalogue definitions: vertex names with a trailing `o` (circle) or `s` (square).
    pub(crate) fn build(
        vertices: &[(&str, Kind)],
        u: &[usize],
        v: &[usize],
        edges: &[(usize, usize, usize)],
    ) -> Self {
        Self::new(
            vertices.iter().map(|(s, k)| (s.to_string(), *k)).collect(),
            u.to_vec(),
            v.to_vec(),
            edges.iter().copied(),
        )
        .expect("catalogue shape is well formed")
    }

    fn from_parts(kinds: Vec<Kind>, names: Vec<String>, u: Vec<usize>, v: Vec<usize>, mut edges: Vec<Edge>) -> Self {
        edges.sort();
        Self { kinds, names, u, v, edges }
    }

    pub fn num_vertices(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, x: usize) -> Kind {
        self.kinds[x]
    }

    pub fn kinds(&self) -> &[Kind] {
        &self.kinds
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    pub fn v(&self) -> &[usize] {
        &self.v
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn circles(&self) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&x| self.kinds[x] == Kind::Circle).collect()
    }

    pub fn squares(&self) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&x| self.kinds[x] == Kind::Square).collect()
    }

    pub fn is_boundary(&self, x: usize) -> bool {
        self.u.contains(&x) || self.v.contains(&x)
    }

    /// Vertices outside `U ∪ V`.
    pub fn middle(&self) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&x| !self.is_boundary(x)).collect()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.edges.iter().filter(|e| e.circle == x || e.square == x).count()
    }

    /// Sum of labels over incident edges.
    pub fn weighted_degree(&self, x: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.circle == x || e.square == x)
            .map(|e| e.label)
            .sum()
    }

    /// Middle vertices with no incident edges.
    pub fn isolated(&self) -> Vec<usize> {
        self.middle().into_iter().filter(|&x| self.degree(x) == 0).collect()
    }

    /// Sum of edge labels.
    pub fn total_label(&self) -> usize {
        self.edges.iter().map(|e| e.label).sum()
    }

    pub fn is_proper(&self) -> bool {
        self.edges.windows(2).all(|w| (w[0].circle, w[0].square) != (w[1].circle, w[1].square))
    }

    pub fn signature(tuple: &[usize], kinds: &[Kind]) -> Vec<Kind> {
        tuple.iter().map(|&x| kinds[x]).collect()
    }

    pub fn u_signature(&self) -> Vec<Kind> {
        Self::signature(&self.u, &self.kinds)
    }

    pub fn v_signature(&self) -> Vec<Kind> {
        Self::signature(&self.v, &self.kinds)
    }

    pub fn key(&self) -> ShapeKey {
        (self.kinds.clone(), self.u.clone(), self.v.clone(), self.edges.clone())
    }

    pub fn transpose(&self) -> Shape {
        let mut t = self.clone();
        std::mem::swap(&mut t.u, &mut t.v);
        t
    }

    /// Keeps the first `k` entries of `U` and prepends the rest to `V`.
    pub fn move_boundary(&self, k: usize) -> Result<Shape> {
        if k > self.u.len() {
            return Err(Error::InvalidArgument(format!("cannot split U of length {} at {k}", self.u.len())));
        }
        let mut s = self.clone();
        let moved: Vec<usize> = s.u.split_off(k);
        s.v = moved.into_iter().chain(self.v.iter().copied()).collect();
        Ok(s)
    }

    /// Relabels vertices through `map` (old id -> new id), dropping ids mapped to `None`.
    fn relabel(&self, map: &[Option<usize>], count: usize) -> Shape {
        let mut kinds = vec![Kind::Circle; count];
        let mut names = vec![String::new(); count];
        for (old, new) in map.iter().enumerate() {
            if let Some(new) = *new {
                kinds[new] = self.kinds[old];
                names[new] = self.names[old].clone();
            }
        }
        let m = |x: usize| map[x].expect("relabel drops a used vertex");
        Shape::from_parts(
            kinds,
            names,
            self.u.iter().map(|&x| m(x)).collect(),
            self.v.iter().map(|&x| m(x)).collect(),
            self.edges.iter().map(|e| Edge { circle: m(e.circle), square: m(e.square), label: e.label }).collect(),
        )
    }

    /// Removes vertex `x`, which must have no edges and not lie on the boundary.
    fn remove_vertex(&self, x: usize) -> Shape {
        let map: Vec<Option<usize>> = (0..self.kinds.len())
            .map(|y| match y.cmp(&x) {
                std::cmp::Ordering::Less => Some(y),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(y - 1),
            })
            .collect();
        self.relabel(&map, self.kinds.len() - 1)
    }

    /// Canonical relabeling: boundary vertices in order of first appearance in `U` then `V`,
    /// middle vertices in the arrangement giving the smallest edge list. Isomorphic shapes
    /// with the same boundary therefore compare equal.
    pub fn canonical(&self) -> Shape {
        let nv = self.kinds.len();
        let mut order: Vec<usize> = Vec::new();
        for &x in self.u.iter().chain(&self.v) {
            if !order.contains(&x) {
                order.push(x);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for kind in [Kind::Circle, Kind::Square] {
            let g: Vec<usize> = (0..nv).filter(|&x| !order.contains(&x) && self.kinds[x] == kind).collect();
            if !g.is_empty() {
                groups.push(g);
            }
        }
        let fixed = order.len();
        let work: usize = groups.iter().map(|g| (1..=g.len()).product::<usize>()).product();
        let mut best: Option<Shape> = None;
        let mut consider = |arrangement: &[usize]| {
            let mut map = vec![None; nv];
            for (new, &old) in order.iter().chain(arrangement).enumerate() {
                map[old] = Some(new);
            }
            let cand = self.relabel(&map, nv);
            if best.as_ref().is_none_or(|b| cand.key() < b.key()) {
                best = Some(cand);
            }
        };
        if work <= 40_320 {
            for_each_arrangement(&groups, &mut Vec::new(), 0, &mut consider);
        } else {
            let mut middle: Vec<usize> = groups.concat();
            middle.sort_by_key(|&x| (self.kinds[x], self.weighted_degree(x), x));
            consider(&middle);
        }
        let mut out = best.expect("at least one arrangement");
        for (i, name) in out.names.iter_mut().enumerate() {
            if i >= fixed || name.is_empty() {
                *name = format!("{}{}", if out.kinds[i] == Kind::Circle { 'i' } else { 'a' }, i);
            }
        }
        out
    }
}

fn for_each_arrangement(groups: &[Vec<usize>], prefix: &mut Vec<usize>, g: usize, f: &mut impl FnMut(&[usize])) {
    if g == groups.len() {
        f(prefix);
        return;
    }
    let mut items = groups[g].clone();
    permute(&mut items, 0, &mut |perm| {
        let len = prefix.len();
        prefix.extend_from_slice(perm);
        for_each_arrangement(groups, prefix, g + 1, f);
        prefix.truncate(len);
    });
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vname = |x: usize| format!("{}{}", self.names[x], self.kinds[x].glyph());
        let tuple = |t: &[usize]| t.iter().map(|&x| vname(x)).collect::<Vec<_>>().join(",");
        let mid = self.middle().into_iter().map(vname).collect::<Vec<_>>().join(",");
        let edges = self
            .edges
            .iter()
            .map(|e| format!("{}-{}:{}", self.names[e.circle], self.names[e.square], e.label))
            .collect::<Vec<_>>()
            .join(" ");
        write!(f, "U=({}) V=({}) W={{{}}} E={{{}}}", tuple(&self.u), tuple(&self.v), mid, edges)
    }
}

/// `coeff * M_shape`
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeTerm {
    pub coeff: f64,
    pub shape: Shape,
}

impl ShapeTerm {
    pub fn new(coeff: f64, shape: Shape) -> Result<Self> {
        if !coeff.is_finite() || coeff == 0.0 {
            return Err(Error::InvalidArgument(format!("shape coefficient must be finite and nonzero, got {coeff}")));
        }
        Ok(Self { coeff, shape })
    }
}

const COLLECT_TOL: f64 = 1e-12;

/// Sums coefficients of structurally equal shapes (after canonicalization) and drops zeros.
pub fn collect_terms(terms: impl IntoIterator<Item = ShapeTerm>) -> Vec<ShapeTerm> {
    let mut acc: BTreeMap<ShapeKey, ShapeTerm> = BTreeMap::new();
    for t in terms {
        let shape = t.shape.canonical();
        acc.entry(shape.key())
            .and_modify(|e| e.coeff += t.coeff)
            .or_insert(ShapeTerm { coeff: t.coeff, shape });
    }
    acc.into_values().filter(|t| t.coeff.abs() > COLLECT_TOL).collect()
}

/// `h_a h_b ... ` as a Hermite expansion.
fn label_product(labels: &[usize]) -> Result<HermiteExpansion> {
    let mut cur = HermiteExpansion::from_terms([(labels[0], 1.0)]);
    for &l in &labels[1..] {
        let mut terms = Vec::new();
        for (k, c) in cur.iter() {
            for (m, cm) in product_coeffs(k, l)?.iter() {
                terms.push((m, c * cm));
            }
        }
        cur = HermiteExpansion::from_terms(terms);
    }
    Ok(cur)
}

/// Replaces every multi-edge by the Hermite expansion of its label product.
///
/// Label-0 results delete the edge; isolated middle vertices created this way are kept.
pub fn resolve_multi_edges(shape: &Shape) -> Result<Vec<ShapeTerm>> {
    if shape.is_proper() {
        return Ok(vec![ShapeTerm { coeff: 1.0, shape: shape.clone() }]);
    }
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in &shape.edges {
        groups.entry((e.circle, e.square)).or_default().push(e.label);
    }
    let mut partial: Vec<(f64, Vec<Edge>)> = vec![(1.0, Vec::new())];
    for ((c, s), labels) in groups {
        let expansion = label_product(&labels)?;
        let mut next = Vec::with_capacity(partial.len() * expansion.len());
        for (coeff, edges) in &partial {
            for (k, ck) in expansion.iter() {
                let mut e = edges.clone();
                if k > 0 {
                    e.push(Edge { circle: c, square: s, label: k });
                }
                next.push((coeff * ck, e));
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(|(coeff, edges)| ShapeTerm {
            coeff,
            shape: Shape::from_parts(shape.kinds.clone(), shape.names.clone(), shape.u.clone(), shape.v.clone(), edges),
        })
        .collect())
}

/// Deletes isolated middle vertices, multiplying by the exact number of free choices:
/// `d - (#other squares)` for a square, `n - (#other circles)` for a circle.
pub fn simplify_isolated(term: &ShapeTerm, n: usize, d: usize) -> ShapeTerm {
    let mut coeff = term.coeff;
    let mut shape = term.shape.clone();
    while let Some(&x) = shape.isolated().last() {
        let kind = shape.kinds[x];
        let same = shape.kinds.iter().filter(|&&k| k == kind).count() - 1;
        let range = if kind == Kind::Circle { n } else { d };
        coeff *= range.saturating_sub(same) as f64;
        shape = shape.remove_vertex(x);
    }
    ShapeTerm { coeff, shape }
}

/// `resolve_multi_edges`, optionally followed by isolated-vertex simplification at `(n, d)`.
pub fn resolve_multi_edges_with(shape: &Shape, simplify: Option<(usize, usize)>) -> Result<Vec<ShapeTerm>> {
    let terms = resolve_multi_edges(shape)?;
    Ok(match simplify {
        None => terms,
        Some((n, d)) => collect_terms(terms.iter().map(|t| simplify_isolated(t, n, d))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Kind::{Circle as C, Square as S};

    #[test]
    fn rejects_bad_edges() {
        let v = vec![("u".to_string(), C), ("w".to_string(), C)];
        assert!(Shape::new(v.clone(), vec![0], vec![1], [(0, 1, 1)]).is_err());
        assert!(Shape::new(v, vec![0], vec![2], []).is_err());
        let v = vec![("u".to_string(), C), ("x".to_string(), S)];
        assert!(Shape::new(v, vec![0], vec![], [(1, 0, 0)]).is_err());
    }

    #[test]
    fn double_edge_resolution() {
        let s = Shape::build(&[("u", C), ("x", S)], &[0], &[1, 1], &[(0, 1, 1), (0, 1, 1)]);
        assert!(!s.is_proper());
        let terms = resolve_multi_edges(&s).unwrap();
        assert_eq!(terms.len(), 2);
        let by_label: Vec<(usize, f64)> =
            terms.iter().map(|t| (t.shape.total_label(), t.coeff)).collect();
        assert!(by_label.iter().any(|&(l, c)| l == 0 && (c - 1.0).abs() < 1e-14));
        assert!(by_label.iter().any(|&(l, c)| l == 2 && (c - 2f64.sqrt()).abs() < 1e-14));
    }

    #[test]
    fn canonical_merges_isomorphic() {
        let a = Shape::build(&[("u", C), ("x1", S), ("x2", S)], &[0], &[0], &[(0, 1, 2)]);
        let b = Shape::build(&[("u", C), ("x1", S), ("x2", S)], &[0], &[0], &[(0, 2, 2)]);
        assert_ne!(a, b);
        assert_eq!(a.canonical(), b.canonical());
        let merged = collect_terms([ShapeTerm { coeff: 1.0, shape: a }, ShapeTerm { coeff: 2.0, shape: b }]);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].coeff, 3.0);
    }

    #[test]
    fn isolated_factor_counts_other_vertices() {
        let s = Shape::build(&[("u", C), ("x1", S), ("x2", S)], &[0], &[0], &[(0, 1, 2)]);
        let t = simplify_isolated(&ShapeTerm { coeff: 1.0, shape: s }, 10, 7);
        assert_eq!(t.coeff, 6.0);
        assert_eq!(t.shape.num_vertices(), 2);
    }
}
