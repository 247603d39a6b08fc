//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line; the binary
//! exits non-zero if any criterion fails.

mod common;

use std::panic;
use std::time::{Duration, Instant};

use ellfit::ellipsoid::{
    fit_identity_perturbation, fit_least_squares, fit_least_squares_woodbury, fit_pseudo_calibration,
    pc_coefficient, pseudo_expectation, sym_dim, PointCloud, Verdict,
};
use ellfit::experiments::{run_phase_grid, write_csv, Construction, PhaseGridConfig, Shortcut};
use ellfit::graphmatrix::{catalogue, norm_check, norm_predictor, shape_by_name, verify_decompositions};
use ellfit::hermite::{hermite_eval, product_coeffs};
use ellfit::numerics::RngStream;
use ellfit::sdpfeas::{
    disc_bruteforce, ef_feasible, sample_null, sample_planted, sdp_zero_via_kernel, FeasibilityConfig,
    FeasibilityStatus,
};

type Outcome = Result<String, String>;

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(t)
    } else {
        Err(format!("runtime {:.1}s exceeds {:.0}s", t.as_secs_f64(), limit.as_secs_f64()))
    }
}

fn decomposition_identities() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for seed in 0..10 {
        let cloud = PointCloud::sample(8, 6, seed).map_err(|e| e.to_string())?;
        let report = verify_decompositions(&cloud).map_err(|e| e.to_string())?;
        worst = worst.max(report.max());
    }
    let t = within(Duration::from_secs(10), start)?;
    let msg = format!("max residual {worst:.2e} over 10 clouds (n=8, d=6) in {:.2}s", t.as_secs_f64());
    if worst <= 1e-8 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn woodbury_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst_rel = 0.0f64;
    let mut min_disc = f64::INFINITY;
    let mut count = 0;
    for d in [10usize, 20] {
        for n in [3 * d, d * d / 8] {
            for seed in 0..5 {
                let cloud = PointCloud::sample(n, d, seed).map_err(|e| e.to_string())?;
                let direct = fit_least_squares(&cloud).map_err(|e| e.to_string())?;
                let (wb, scalars, _) = fit_least_squares_woodbury(&cloud).map_err(|e| e.to_string())?;
                let rel = wb.x.max_abs_diff(&direct.x) / direct.x.max_abs();
                worst_rel = worst_rel.max(rel);
                min_disc = min_disc.min(scalars.discriminant());
                count += 1;
            }
        }
    }
    let t = within(Duration::from_secs(30), start)?;
    let msg = format!(
        "{count} instances, max relative gap {worst_rel:.2e}, min s^2-ru {min_disc:.3e}, {:.2}s",
        t.as_secs_f64()
    );
    if count == 20 && worst_rel <= 1e-7 && min_disc > 0.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn hermite_oracle() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..=8 {
        for j in 0..=8 {
            let lib = product_coeffs(i, j).map_err(|e| e.to_string())?;
            let oracle = common::hermite_product_oracle(i, j);
            for (k, c) in oracle.iter().enumerate() {
                worst = worst.max((lib.coeff(k) - c).abs());
            }
            if lib.max_degree().is_some_and(|k| k > i + j) {
                return Err(format!("h_{i} h_{j} has a term above degree {}", i + j));
            }
        }
    }
    if worst > 1e-9 {
        return Err(format!("product coefficients differ from the monomial oracle by {worst:.2e}"));
    }
    for i in 0..=12 {
        for j in 0..=12 {
            let lib = product_coeffs(i, j).map_err(|e| e.to_string())?;
            for k in 0..=i + j + 2 {
                let allowed = k >= i.abs_diff(j) && k <= i + j && (i + j - k.min(i + j)) % 2 == 0;
                let present = lib.coeff(k) != 0.0;
                if allowed != present {
                    return Err(format!("support of h_{i} h_{j} wrong at k={k}"));
                }
                if present && lib.coeff(k) < 0.0 {
                    return Err(format!("negative coefficient in h_{i} h_{j} at k={k}"));
                }
            }
        }
    }
    let mut worst_id = 0.0f64;
    for j in 0..=12usize {
        let h = |k: usize| hermite_eval(k, 1.0);
        let lower = if j >= 2 { ((j * (j - 1)) as f64).sqrt() * h(j - 2).map_err(|e| e.to_string())? } else { 0.0 };
        let lhs = lower
            + (2 * j + 1) as f64 * h(j).map_err(|e| e.to_string())?
            + (((j + 1) * (j + 2)) as f64).sqrt() * h(j + 2).map_err(|e| e.to_string())?;
        worst_id = worst_id.max((lhs - h(j).map_err(|e| e.to_string())?).abs());
        worst_id = worst_id.max((h(j).map_err(|e| e.to_string())? - common::hermite_value(j, 1.0)).abs());
    }
    let msg = format!("products i,j<=8 max gap {worst:.2e}; support i,j<=12 ok; x=1 identity j<=12 max gap {worst_id:.2e}");
    if worst_id <= 1e-9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn separator_exponents() -> Outcome {
    let (d, n) = (100usize, 5000usize);
    // (shape, circles, squares): d√n, n, d, √d, √d
    let expected = [("alpha_1", 1, 2), ("alpha_2a", 2, 0), ("alpha_3a", 0, 2), ("alpha_3b", 0, 1), ("alpha_4", 0, 1)];
    let mut parts = Vec::new();
    for (name, c, s) in expected {
        let shape = shape_by_name(name).ok_or_else(|| format!("missing shape {name}"))?;
        let p = norm_predictor(&shape, n, d).map_err(|e| e.to_string())?;
        let value = (n as f64).powf(c as f64 / 2.0) * (d as f64).powf(s as f64 / 2.0);
        if (p.circles, p.squares) != (c, s) || p.value != value {
            return Err(format!("{name}: got n^{}/2 d^{}/2, expected n^{c}/2 d^{s}/2", p.circles, p.squares));
        }
        parts.push(format!("{name}=n^{c}/2 d^{s}/2"));
    }
    Ok(format!("n=5000, d=100: {}", parts.join(", ")))
}

fn norm_bound_sanity() -> Outcome {
    let start = Instant::now();
    let cat = catalogue();
    let mut checks = 0;
    let mut worst = 0.0f64;
    for (n, d) in [(40usize, 20usize), (400, 20)] {
        for seed in 0..5 {
            let cloud = PointCloud::sample(n, d, seed).map_err(|e| e.to_string())?;
            for (name, term) in &cat {
                let c = norm_check(&term.shape, &cloud).map_err(|e| format!("{name}: {e}"))?;
                if !c.within_bound() {
                    return Err(format!(
                        "{name} at n={n}, d={d}, seed={seed}: measured {:.3e} > {:.3e}",
                        c.measured,
                        c.polylog * c.predicted
                    ));
                }
                worst = worst.max(c.ratio());
                checks += 1;
            }
        }
    }
    let t = within(Duration::from_secs(120), start)?;
    Ok(format!(
        "{checks} checks over {} shapes, max measured/predicted {worst:.2}, {:.1}s",
        cat.len(),
        t.as_secs_f64()
    ))
}

fn concentration_diagnostics() -> Outcome {
    let (d, n) = (40usize, 200usize);
    let (df, nf) = (d as f64, n as f64);
    let mut op = (f64::INFINITY, 0.0f64);
    let mut obo = (f64::INFINITY, 0.0f64);
    let mut obw = 0.0f64;
    for seed in 0..10 {
        let cloud = PointCloud::sample(n, d, seed).map_err(|e| e.to_string())?;
        let (_, _, diag) = fit_least_squares_woodbury(&cloud).map_err(|e| e.to_string())?;
        let r1 = diag.op_norm_b_minus_alpha / (df * nf.sqrt());
        let r2 = diag.one_b_one / (nf / (df * df));
        op = (op.0.min(r1), op.1.max(r1));
        obo = (obo.0.min(r2), obo.1.max(r2));
        obw = obw.max(diag.one_b_w.abs());
    }
    let msg = format!(
        "|B-aI|/(d sqrt n) in [{:.3}, {:.3}], 1B1/(n/d^2) in [{:.3}, {:.3}], max |1B w| {obw:.3}",
        op.0, op.1, obo.0, obo.1
    );
    if op.0 >= 0.05 && op.1 <= 20.0 && obo.0 >= 0.2 && obo.1 <= 5.0 && obw <= 1.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn count_verdicts(n: usize, d: usize, seeds: u64, fit: fn(&PointCloud) -> ellfit::Result<ellfit::ellipsoid::FitResult>, want: Verdict) -> Result<usize, String> {
    let mut hits = 0;
    for seed in 0..seeds {
        let cloud = PointCloud::sample(n, d, seed).map_err(|e| e.to_string())?;
        if fit(&cloud).map_err(|e| e.to_string())?.verdict == want {
            hits += 1;
        }
    }
    Ok(hits)
}

fn count_sdp(n: usize, d: usize, feasible: bool) -> Result<usize, String> {
    let cfg = FeasibilityConfig::default();
    let mut hits = 0;
    for seed in 0..10 {
        let cloud = PointCloud::sample(n, d, seed).map_err(|e| e.to_string())?;
        let status = ef_feasible(&cloud, &cfg).map_err(|e| e.to_string())?.status;
        if (status == FeasibilityStatus::Feasible) == feasible {
            hits += 1;
        }
    }
    Ok(hits)
}

fn phase_transition() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    let mut part = |label: &str, hits: Result<usize, String>| -> Result<(), String> {
        let hits = hits?;
        let pass = hits >= 9;
        ok &= pass;
        lines.push(format!("{label} {hits}/10 {}", if pass { "ok" } else { "FAIL" }));
        Ok(())
    };
    part("7a LS d=30 n=50 Fit", count_verdicts(50, 30, 10, fit_least_squares, Verdict::Fit))?;
    part("7a LS d=30 n=200 NotPSD", count_verdicts(200, 30, 10, fit_least_squares, Verdict::NotPsd))?;
    part("7b IP d=30 n=70 Fit", count_verdicts(70, 30, 10, fit_identity_perturbation, Verdict::Fit))?;
    part("7b IP d=30 n=300 NotPSD", count_verdicts(300, 30, 10, fit_identity_perturbation, Verdict::NotPsd))?;
    part("7c SDP d=15 n=30 Feasible", count_sdp(30, 15, true))?;
    part("7c SDP d=15 n=110 not Feasible", count_sdp(110, 15, false))?;

    let mut cfg = PhaseGridConfig::new(Construction::Sdp, 8, 45);
    cfg.trials = 2;
    let first = run_phase_grid(&cfg).map_err(|e| e.to_string())?;
    let second = run_phase_grid(&cfg).map_err(|e| e.to_string())?;
    let over: Vec<_> = first.iter().filter(|c| c.n > sym_dim(c.d)).collect();
    let shortcut_ok = first == second
        && !over.is_empty()
        && over.iter().all(|c| c.shortcut == Shortcut::DimensionInfeasible && c.successes == 0 && c.trials_run == 0);
    ok &= shortcut_ok;
    lines.push(format!(
        "7d {} cells with n > d(d+1)/2 dimension_infeasible {}",
        over.len(),
        if shortcut_ok { "ok" } else { "FAIL" }
    ));

    let t = within(Duration::from_secs(600), start);
    ok &= t.is_ok();
    let msg = format!("{}; {}", lines.join("; "), match t {
        Ok(t) => format!("{:.1}s", t.as_secs_f64()),
        Err(e) => e,
    });
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn discrepancy_connection() -> Outcome {
    let start = Instant::now();
    let cfg = FeasibilityConfig::default();
    let mut worst = 0.0f64;
    for seed in 0..20 {
        let inst = sample_planted(6, 10, &mut RngStream::new(seed, 0)).map_err(|e| e.to_string())?;
        let (value, _) = disc_bruteforce(&inst).map_err(|e| e.to_string())?;
        worst = worst.max(value);
        let v = sdp_zero_via_kernel(&inst, &cfg).map_err(|e| e.to_string())?;
        if v.status != FeasibilityStatus::Feasible {
            return Err(format!("planted seed {seed}: SDP(A)=0 reported {}", v.status.as_str()));
        }
    }
    if worst > 1e-9 {
        return Err(format!("planted disc up to {worst:.2e}"));
    }
    for seed in 0..3 {
        for _ in 0..2 {
            let inst = sample_null(21, 25, &mut RngStream::new(seed, 0)).map_err(|e| e.to_string())?;
            let v = sdp_zero_via_kernel(&inst, &cfg).map_err(|e| e.to_string())?;
            if v.status != FeasibilityStatus::InfeasibleHeuristic || v.iterations != 0 {
                return Err(format!("m=21, n=25 seed {seed}: {} after {} iterations", v.status.as_str(), v.iterations));
            }
        }
    }
    let t = within(Duration::from_secs(60), start)?;
    Ok(format!(
        "20 planted (m=6, n=10) disc <= {worst:.1e} and Feasible; m=21, n=25 InfeasibleHeuristic by dimension; {:.2}s",
        t.as_secs_f64()
    ))
}

fn pseudo_calibration_witness() -> Outcome {
    let (n, d, seed) = (2usize, 2usize, 5u64);
    let cloud = PointCloud::sample(n, d, seed).map_err(|e| e.to_string())?;
    let r0 = fit_pseudo_calibration(&cloud, 0).map_err(|e| e.to_string())?.residual_inf;
    let r4 = fit_pseudo_calibration(&cloud, 4).map_err(|e| e.to_string())?.residual_inf;
    if !(r4 < r0) {
        return Err(format!("T=4 residual {r4:.6} not below T=0 residual {r0:.6}"));
    }

    // Library weight of h_α, zeroed where the planted moment vanishes by parity.
    let lib = |alpha: &[usize], pair: bool| -> Result<f64, String> {
        let rows_even = (0..n).all(|i| alpha[i * d..(i + 1) * d].iter().sum::<usize>() % 2 == 0);
        let odd_cols = (0..d).filter(|&a| (0..n).map(|i| alpha[i * d + a]).sum::<usize>() % 2 == 1).count();
        let cols_ok = if pair { odd_cols == 2 } else { odd_cols == 0 };
        if !(rows_even && cols_ok) {
            return Ok(0.0);
        }
        let c = pc_coefficient(alpha, n, d).map_err(|e| e.to_string())?;
        Ok(if pair { c / d as f64 } else { c })
    };
    let mut worst = 0.0f64;
    let mut single = 0;
    for alpha in common::exponent_arrays(n * d, 4) {
        let nonzero = alpha.iter().filter(|&&a| a > 0).count();
        let is_single = nonzero == 1 || (nonzero == 2 && alpha[0] == 1 && alpha[1] == 1 && alpha.iter().sum::<usize>() == 2);
        for pair in [false, true] {
            let gap = (lib(&alpha, pair)? - common::planted_moment_d2(&alpha, pair)).abs();
            worst = worst.max(gap);
        }
        single += is_single as usize;
    }
    // Consistency of the enumerated sum with the oracle weights on this cloud.
    let pe = pseudo_expectation(&cloud, 4).map_err(|e| e.to_string())?;
    let (mut one, mut pair01) = (0.0, 0.0);
    for alpha in common::exponent_arrays(n * d, 4) {
        let h: f64 = alpha
            .iter()
            .enumerate()
            .map(|(c, &k)| common::hermite_value(k, cloud.coord(c / d, c % d)))
            .product();
        one += common::planted_moment_d2(&alpha, false) * h;
        pair01 += common::planted_moment_d2(&alpha, true) * h;
    }
    worst = worst.max((pe.one - one).abs()).max((pe.pairs[1] - pair01).abs());
    let msg = format!(
        "seed {seed}: residual T=0 {r0:.4}, T=4 {r4:.4}; coefficient gap {worst:.2e} over all |alpha|<=4 ({single} single-entry)"
    );
    if worst <= 1e-9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn determinism() -> Outcome {
    let csv_for = |threads: usize| -> Result<Vec<u8>, String> {
        let mut cfg = PhaseGridConfig::new(Construction::Ls, 30, 60);
        cfg.threads = Some(threads);
        let results = run_phase_grid(&cfg).map_err(|e| e.to_string())?;
        let mut buf = Vec::new();
        write_csv(&results, &mut buf).map_err(|e| e.to_string())?;
        Ok(buf)
    };
    let a = csv_for(1)?;
    let b = csv_for(1)?;
    let c = csv_for(8)?;
    let e = csv_for(8)?;
    if a == b && b == c && c == e {
        Ok(format!("30x60 LS grid, {} bytes identical across 2 runs and threads {{1, 8}}", a.len()))
    } else {
        Err("CSV output differs between runs".into())
    }
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, decomposition_identities),
        (2, woodbury_equivalence),
        (3, hermite_oracle),
        (4, separator_exponents),
        (5, norm_bound_sanity),
        (6, concentration_diagnostics),
        (7, phase_transition),
        (8, discrepancy_connection),
        (9, pseudo_calibration_witness),
        (10, determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for (id, check) in criteria {
        let outcome = panic::catch_unwind(check).unwrap_or_else(|p| {
            let why = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {why}"))
        });
        match outcome {
            Ok(msg) => println!("criterion {id}: PASS  {msg}"),
            Err(msg) => {
                println!("criterion {id}: FAIL  {msg}");
                failed.push(id);
            }
        }
    }
    println!("acceptance: {}/10 passed", 10 - failed.len());
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
