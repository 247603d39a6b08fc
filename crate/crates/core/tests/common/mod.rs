//! Independent oracles shared by the integration tests. Nothing here calls into the
//! Hermite or pseudo-calibration code it is used to check.
#![allow(dead_code)]

/// Monomial coefficients of the normalized probabilists' Hermite polynomial `h_n = He_n / √n!`.
pub fn hermite_monomial(n: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for k in 1..n {
        // He_{k+1} = x He_k − k He_{k−1}
        let mut next = vec![0.0; k + 2];
        for (p, c) in cur.iter().enumerate() {
            next[p + 1] += c;
        }
        for (p, c) in prev.iter().enumerate() {
            next[p] -= k as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    let norm = factorial(n).sqrt();
    cur.iter().map(|c| c / norm).collect()
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

pub fn double_factorial_odd(m: usize) -> f64 {
    // (m − 1)!! for even m, the m-th moment of a standard Gaussian.
    if m % 2 == 1 {
        return 0.0;
    }
    (1..m).step_by(2).fold(1.0, |acc, i| acc * i as f64)
}

pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Rewrites a monomial-basis polynomial in the normalized Hermite basis by peeling leading terms.
pub fn to_hermite_basis(poly: &[f64]) -> Vec<f64> {
    let mut rest = poly.to_vec();
    let top = rest.len() - 1;
    let mut out = vec![0.0; top + 1];
    for k in (0..=top).rev() {
        let h = hermite_monomial(k);
        let c = rest[k] / h[k];
        out[k] = c;
        for (p, hp) in h.iter().enumerate() {
            rest[p] -= c * hp;
        }
    }
    out
}

/// Coefficients `c_k` of `h_i h_j = Σ c_k h_k`, index `k` in the returned vector.
pub fn hermite_product_oracle(i: usize, j: usize) -> Vec<f64> {
    to_hermite_basis(&poly_mul(&hermite_monomial(i), &hermite_monomial(j)))
}

pub fn hermite_value(j: usize, x: f64) -> f64 {
    poly_eval(&hermite_monomial(j), x)
}

/// `q(c0 + c1 w)` as a polynomial in `w`.
fn compose_linear(q: &[f64], c0: f64, c1: f64) -> Vec<f64> {
    let mut out = vec![0.0];
    for c in q.iter().rev() {
        out = poly_mul(&out, &[c0, c1]);
        out[0] += c;
    }
    out
}

fn gaussian_expectation(p: &[f64]) -> f64 {
    p.iter().enumerate().map(|(m, c)| c * double_factorial_odd(m)).sum()
}

/// Planted-model moment `E[f(x) · h_α(v)]` for `d = 2`, with every factor expanded.
///
/// `x` is uniform on `{±1/√2}²`, each row `v_i = s_i x + w_i x^⊥` with a uniform sign `s_i`
/// and `w_i ~ N(0, 1)` independent, so `⟨v_i, x⟩² = 1`. `f = 1` or `f = x_0 x_1`.
/// `alpha` is row-major `n x 2`.
pub fn planted_moment_d2(alpha: &[usize], pair: bool) -> f64 {
    assert_eq!(alpha.len() % 2, 0);
    let n = alpha.len() / 2;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut total = 0.0;
    let mut count = 0.0;
    for xs in 0..4u32 {
        let x = [if xs & 1 == 0 { r } else { -r }, if xs & 2 == 0 { r } else { -r }];
        let perp = [-x[1], x[0]];
        let f = if pair { x[0] * x[1] } else { 1.0 };
        for signs in 0..(1u32 << n) {
            let mut prod = f;
            for i in 0..n {
                let s = if signs >> i & 1 == 0 { 1.0 } else { -1.0 };
                let p0 = compose_linear(&hermite_monomial(alpha[2 * i]), s * x[0], perp[0]);
                let p1 = compose_linear(&hermite_monomial(alpha[2 * i + 1]), s * x[1], perp[1]);
                prod *= gaussian_expectation(&poly_mul(&p0, &p1));
            }
            total += prod;
            count += 1.0;
        }
    }
    total / count
}

/// All row-major exponent arrays of length `cells` with total at most `budget`.
pub fn exponent_arrays(cells: usize, budget: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, cells: usize, budget: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == cells {
            out.push(cur.clone());
            return;
        }
        for k in 0..=budget {
            cur.push(k);
            rec(cur, cells, budget - k, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), cells, budget, &mut out);
    out
}

/// Operator norm by power iteration on `MᵀM`, for cross-checks.
pub fn power_norm(rows: usize, cols: usize, get: impl Fn(usize, usize) -> f64) -> f64 {
    let mut x = vec![1.0 / (cols as f64).sqrt(); cols];
    let mut est = 0.0;
    for _ in 0..2000 {
        let y: Vec<f64> = (0..rows).map(|i| (0..cols).map(|j| get(i, j) * x[j]).sum()).collect();
        let z: Vec<f64> = (0..cols).map(|j| (0..rows).map(|i| get(i, j) * y[i]).sum()).collect();
        let nz = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        if nz == 0.0 {
            return 0.0;
        }
        let next = nz.sqrt();
        x = z.iter().map(|v| v / nz).collect();
        if (next - est).abs() <= 1e-13 * next {
            return next;
        }
        est = next;
    }
    est
}
