//! End-to-end acceptance gate. Each test prints one pass/fail line for its
//! criterion before asserting, so a full run yields a scannable scoreboard.

use numsparse::bounds::{adversarial_signal, bpdn_upper_bound, minimax_lower_bound, Matrix};
use numsparse::estimator::{jensen_lower_bound, minimize_variance, nu_hat_at, variance_ext};
use numsparse::noise::NoiseModel;
use numsparse::rng::{derive_key, CounterRng};
use numsparse::simlab::{run_clt, run_relative_error, ExperimentConfig, SignalSpec};
use numsparse::sparsity::{
    induced_distribution, majorizes, numerical_sparsity, renyi_entropy, Signal,
};
use numsparse::stable::Mode;

fn report(id: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {id} ({name}): {} {detail}",
        if ok { "pass" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} failed: {detail}");
}

fn base_config(p: usize, grid: Vec<(usize, usize)>, replicates: usize, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        signal: SignalSpec::PowerLaw { p, tau: 1.0 },
        q: 2.0,
        grid,
        gamma_1: 1.0,
        gamma_q: 1.0,
        sigma: 0.0,
        noise: NoiseModel::Gaussian,
        replicates,
        mode: Mode::Induced,
        eta0_override: Some(0.3),
        epsilon_2: 0.3,
        alpha: 0.05,
        alpha_prime: 0.05,
        seed,
    }
}

#[test]
fn criterion_1_dimension_free_relative_error() {
    // Noiseless tau = 1 signals over four decades of dimension, with the
    // measurement counts fixed: the mean relative error must not depend on p
    // and must track the theoretical value.
    let mut rows = Vec::new();
    for (i, p) in [10usize, 100, 1000, 10_000].into_iter().enumerate() {
        let cfg = base_config(p, vec![(500, 500)], 500, 100 + i as u64);
        let res = run_relative_error(&cfg).unwrap();
        rows.push(res.rows[0].clone());
    }
    let theory = rows[0].theory;
    let mut ok = true;
    let mut detail = format!("theory={theory:.4}");
    for i in 0..rows.len() {
        detail.push_str(&format!(" p={}:{:.4}", rows[i].p, rows[i].mean_abs_rel_err));
        if (rows[i].mean_abs_rel_err - theory).abs() > 0.25 * theory {
            ok = false;
        }
        for j in (i + 1)..rows.len() {
            let pooled = (rows[i].std_err.unwrap().powi(2) + rows[j].std_err.unwrap().powi(2))
                .sqrt();
            if (rows[i].mean_abs_rel_err - rows[j].mean_abs_rel_err).abs() > 3.0 * pooled {
                ok = false;
                detail.push_str(&format!(" [pair {i},{j} beyond 3 SE]"));
            }
        }
    }
    report(1, "dimension-free relative error", ok, &detail);
}

#[test]
fn criterion_2_theory_curve_tracking() {
    let grid: Vec<(usize, usize)> = (1..=10).map(|k| (50 * k, 50 * k)).collect();
    let cfg = base_config(100, grid, 300, 200);
    let res = run_relative_error(&cfg).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for row in &res.rows {
        let n_total = row.n1 + row.nq;
        if n_total < 400 {
            continue;
        }
        let rel = (row.mean_abs_rel_err - row.theory).abs() / row.theory;
        detail.push_str(&format!(" n={n_total}:{:.0}%", 100.0 * rel));
        if rel > 0.35 {
            ok = false;
        }
    }
    report(2, "theory-curve tracking", ok, &detail);
}

#[test]
fn criterion_3_clt_calibration() {
    let mut cfg = base_config(2, vec![(1000, 1000)], 3000, 300);
    cfg.signal = SignalSpec::Explicit {
        values: vec![0.6, 0.8],
    };
    cfg.sigma = 0.1;
    let gaussian = run_clt(&cfg, &[]).unwrap();
    let mean_ok = gaussian.mean.abs() <= 0.1;
    let var_ok = (0.85..=1.15).contains(&gaussian.variance);
    let cov_ok = (0.87..=0.93).contains(&gaussian.coverage);

    cfg.noise = NoiseModel::StudentT(2);
    cfg.seed = 301;
    let heavy = run_clt(&cfg, &[]).unwrap();
    let ks_ok = heavy.ks_statistic.is_finite() && heavy.ks_statistic > gaussian.ks_statistic;

    let ok = mean_ok && var_ok && cov_ok && ks_ok;
    report(
        3,
        "CLT calibration",
        ok,
        &format!(
            "mean={:.3} var={:.3} coverage={:.3} ks_gauss={:.4} ks_t2={:.4}",
            gaussian.mean, gaussian.variance, gaussian.coverage, gaussian.ks_statistic,
            heavy.ks_statistic
        ),
    );
}

#[test]
fn criterion_4_stable_noise_unique_minimizer() {
    // Under stable(q) noise, the variance in the variable u = c^q divided by
    // u^2 is strictly convex; the grid search must agree and find a single
    // minimizer.
    let mut ok = true;
    let mut detail = String::new();
    for q in [0.5, 1.0, 1.5, 2.0] {
        for rho in [0.0, 0.5, 1.0] {
            let noise = NoiseModel::Stable(q);
            let g = |u: f64| variance_ext(u.powf(1.0 / q), rho, q, noise).unwrap();
            let h = 0.01;
            let mut convex = true;
            let mut k = 2;
            while (k as f64) * h < 10.0 - 1e-12 {
                let u = k as f64 * h;
                let dd = g(u - h) + g(u + h) - 2.0 * g(u);
                if dd <= 0.0 {
                    convex = false;
                    break;
                }
                k += 1;
            }
            let eps = if q == 2.0 { 0.3 } else { 0.0 };
            let m = minimize_variance(rho, q, noise, eps).unwrap();
            if !convex || m.near_tie {
                ok = false;
                detail.push_str(&format!(" [q={q} rho={rho} convex={convex} tie={}]", m.near_tie));
            }
        }
    }
    report(4, "stable-noise unique minimizer", ok, &detail);
}

#[test]
fn criterion_5_exact_math_oracles() {
    let mut rng = CounterRng::new(500);
    // two independent computation routes for s_q
    let mut paths_ok = true;
    for _ in 0..1000 {
        let p = 2 + (rng.next_u64() % 30) as usize;
        let x = Signal::new((0..p).map(|_| 3.0 * rng.normal()).collect());
        let q = loop {
            let q = 0.1 + 2.9 * rng.uniform();
            if (q - 1.0).abs() > 1e-3 {
                break q;
            }
        };
        let via_ratio = numerical_sparsity(&x, q);
        let via_entropy = renyi_entropy(&induced_distribution(&x, 1.0).unwrap(), q).exp();
        if (via_ratio - via_entropy).abs() > 1e-12 * via_entropy.max(1.0) {
            paths_ok = false;
        }
    }

    // the estimator formula against a naive loop with no shared code
    let mut nu_ok = true;
    for _ in 0..100 {
        let n = 2 + (rng.next_u64() % 40) as usize;
        let y: Vec<f64> = (0..n).map(|_| 2.0 * rng.normal()).collect();
        let t = 3.0 * rng.uniform() + 0.01;
        let q = 0.2 + 1.8 * rng.uniform();
        let gamma = 0.5 + rng.uniform();
        let sigma = rng.uniform();
        let phi = (-0.5 * (sigma * t) * (sigma * t)).exp();
        let mut re = 0.0;
        for &v in &y {
            re += (t * v).cos();
        }
        re /= n as f64;
        let r = re / phi;
        let lp = if r == 0.0 { 1.0 } else { r.abs().ln() };
        let naive = -lp / (gamma.powf(q) * t.powf(q));
        let lib = nu_hat_at(&y, t, q, gamma, sigma, NoiseModel::Gaussian).unwrap();
        if (lib - naive).abs() > 1e-12 * naive.abs().max(1.0) {
            nu_ok = false;
        }
    }

    // variance never dips below its noise-free lower bound
    let mut bound_ok = true;
    for _ in 0..2000 {
        let c = 0.01 + 6.0 * rng.uniform();
        let rho = 2.0 * rng.uniform();
        let q = 0.1 + 1.9 * rng.uniform();
        let noise = [
            NoiseModel::Gaussian,
            NoiseModel::Laplace,
            NoiseModel::Uniform,
            NoiseModel::Stable(1.0),
            NoiseModel::StudentT(2),
            NoiseModel::StudentT(3),
        ][(rng.next_u64() % 6) as usize];
        let v = variance_ext(c, rho, q, noise).unwrap();
        if v.is_finite() && v < jensen_lower_bound(c, q) - 1e-9 {
            bound_ok = false;
        }
    }

    let ok = paths_ok && nu_ok && bound_ok;
    report(
        5,
        "exact-math oracles",
        ok,
        &format!("paths={paths_ok} nu={nu_ok} bound={bound_ok}"),
    );
}

#[test]
fn criterion_6_property_suites() {
    let mut rng = CounterRng::new(600);
    let cases = 10_000;
    let random_signal = |rng: &mut CounterRng| {
        let p = 1 + (rng.next_u64() % 20) as usize;
        loop {
            let x = Signal::new((0..p).map(|_| 2.0 * rng.normal()).collect());
            if !x.is_zero() {
                return x;
            }
        }
    };
    // keep continuous q away from 1 so the q/(1-q) exponent does not
    // amplify roundoff past the tolerances
    let random_q = |rng: &mut CounterRng| match rng.next_u64() % 5 {
        0 => 0.0,
        1 => 1.0,
        2 => f64::INFINITY,
        _ => loop {
            let q = 3.0 * rng.uniform();
            if (q - 1.0).abs() > 1e-3 {
                break q;
            }
        },
    };

    let mut scale_fail = 0;
    for _ in 0..cases {
        let x = random_signal(&mut rng);
        let q = random_q(&mut rng);
        let c = loop {
            let c = 4.0 * rng.normal();
            if c.abs() > 1e-3 {
                break c;
            }
        };
        let scaled = Signal::new(x.values.iter().map(|&v| c * v).collect());
        let (a, b) = (numerical_sparsity(&x, q), numerical_sparsity(&scaled, q));
        if (a - b).abs() > 1e-12 * a.max(1.0) {
            scale_fail += 1;
        }
    }

    let mut mono_fail = 0;
    for _ in 0..cases {
        let x = random_signal(&mut rng);
        let (q1, q2) = loop {
            let q1 = 3.0 * rng.uniform();
            let q2 = q1 + 3.0 * rng.uniform();
            if (q1 - 1.0).abs() > 1e-3 && (q2 - 1.0).abs() > 1e-3 {
                break (q1, q2);
            }
        };
        let (s1, s2) = (numerical_sparsity(&x, q1), numerical_sparsity(&x, q2));
        if s2 > s1 + 1e-9 || s1 > x.l0() + 1e-9 {
            mono_fail += 1;
        }
    }

    let mut range_fail = 0;
    for _ in 0..cases {
        let x = random_signal(&mut rng);
        let q = random_q(&mut rng);
        let s = numerical_sparsity(&x, q);
        if !(0.0..=x.len() as f64 + 1e-9).contains(&s) {
            range_fail += 1;
        }
    }

    let mut schur_fail = 0;
    for _ in 0..cases {
        // build a pair ordered by majorization: b concentrates a's mass
        let p = 2 + (rng.next_u64() % 10) as usize;
        let a: Vec<f64> = (0..p).map(|_| rng.uniform() + 0.01).collect();
        let mut b = a.clone();
        let i = (rng.next_u64() % p as u64) as usize;
        let j = (rng.next_u64() % p as u64) as usize;
        if i != j {
            // move mass from the smaller to the larger entry
            let (lo, hi) = if b[i] <= b[j] { (i, j) } else { (j, i) };
            let delta = b[lo] * rng.uniform();
            b[lo] -= delta;
            b[hi] += delta;
        }
        let sa = Signal::new(a);
        let sb = Signal::new(b);
        if majorizes(&sa, &sb).unwrap() {
            let q = random_q(&mut rng);
            if numerical_sparsity(&sa, q) < numerical_sparsity(&sb, q) - 1e-9 {
                schur_fail += 1;
            }
        } else {
            schur_fail += 1; // the construction must produce a majorized pair
        }
    }

    let ok = scale_fail == 0 && mono_fail == 0 && range_fail == 0 && schur_fail == 0;
    report(
        6,
        "property suites",
        ok,
        &format!(
            "scale={scale_fail} monotone={mono_fail} range={range_fail} schur={schur_fail} (of {cases} each)"
        ),
    );
}

#[test]
fn criterion_7_adversarial_construction() {
    let (p, n, q, trials) = (100usize, 10usize, 2.0, 50usize);
    let mut successes = 0;
    let mut residual_ok = true;
    for inst in 0..200u64 {
        let mut rng = CounterRng::new(derive_key(700, inst));
        let a = Matrix::new(n, p, (0..n * p).map(|_| rng.normal()).collect());
        let x0 = Signal::new((0..p).map(|_| rng.normal()).collect());
        let r = adversarial_signal(&a, &x0, q, trials, &mut rng).unwrap();
        if r.success {
            successes += 1;
        }
        if r.residual > 1e-8 * a.frobenius() * r.x_tilde.norm(2.0) {
            residual_ok = false;
        }
    }
    let freq = successes as f64 / 200.0;
    let ok = freq >= 0.95 && residual_ok;
    report(
        7,
        "adversarial construction",
        ok,
        &format!("success={freq:.3} residuals_ok={residual_ok}"),
    );
}

#[test]
fn criterion_8_bound_calculators() {
    use std::f64::consts::{E, PI};
    let mut rng = CounterRng::new(800);
    let mut match_ok = true;
    for _ in 0..100 {
        let p = 20 + (rng.next_u64() % 2000) as usize;
        let n = 1 + (rng.next_u64() % (p as u64 - 1)) as usize;
        let s2 = p as f64 * rng.uniform();

        let direct = (s2 * (p as f64 * E / n as f64).ln() / n as f64).sqrt();
        let got = bpdn_upper_bound(s2, n, p, 0.0, 1.0, 1.0).unwrap();
        if (got - direct).abs() > 1e-12 * direct.max(1.0) {
            match_ok = false;
        }

        let gap = 1.0 - n as f64 / p as f64;
        let raw = gap * gap / (2.0 * PI * E) - 0.5 / p as f64;
        let (got, clamped) = minimax_lower_bound(n, p, 2.0).unwrap();
        let want = raw.max(0.0);
        if (got - want).abs() > 1e-12 || clamped != (raw < 0.0) {
            match_ok = false;
        }

        let raw_hi = gap / ((2.0 * PI * E).sqrt() * (1.0 + (16.0 * (2.0 * p as f64).ln()).sqrt()))
            - 0.5 / p as f64;
        let (got_hi, _) = minimax_lower_bound(n, p, 3.0).unwrap();
        if (got_hi - raw_hi.max(0.0)).abs() > 1e-12 {
            match_ok = false;
        }
    }

    // quadrupling s2 doubles the rate term at fixed (n, p)
    let r1 = bpdn_upper_bound(5.0, 100, 1000, 0.0, 1.0, 1.0).unwrap();
    let r4 = bpdn_upper_bound(20.0, 100, 1000, 0.0, 1.0, 1.0).unwrap();
    let scaling_ok = (r4 / r1 - 2.0).abs() < 1e-12;

    let ok = match_ok && scaling_ok;
    report(
        8,
        "bound calculators",
        ok,
        &format!("oracle_match={match_ok} s2_scaling={scaling_ok}"),
    );
}
