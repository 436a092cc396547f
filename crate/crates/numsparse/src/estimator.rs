//! Norm estimation from a measurement batch: empirical characteristic
//! function, the deconvolved log estimator nu_hat(t), the pilot/optimal
//! tuning pipeline, and the extended asymptotic variance with its minimizer.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::noise::{noise_cf, NoiseModel};
use crate::stable::MeasurementBatch;

/// Threshold below which a characteristic-function value counts as a root.
const CF_ROOT_TOL: f64 = 1e-12;

/// Empirical characteristic function (1/n) sum exp(i t y_k), as (re, im).
pub fn ecf(y: &[f64], t: f64) -> Result<(f64, f64)> {
    if y.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let n = y.len() as f64;
    let (mut re, mut im) = (0.0, 0.0);
    for &v in y {
        let (s, c) = (t * v).sin_cos();
        re += c;
        im += s;
    }
    Ok((re / n, im / n))
}

/// The deconvolved norm estimator nu_hat(t).
///
/// nu_hat(t) = -Log+( Re(Psi_n(t) / phi_0(sigma t)) ) / (gamma |t|)^q with
/// Log+(r) = ln|r| for r != 0 and Log+(0) = 1. Returns 1 at t = 0 or when
/// phi_0(sigma t) vanishes.
pub fn nu_hat_at(
    y: &[f64],
    t: f64,
    q: f64,
    gamma: f64,
    sigma: f64,
    noise: NoiseModel,
) -> Result<f64> {
    if y.is_empty() {
        return Err(Error::EmptyBatch);
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    let phi = noise_cf(noise, sigma * t)?;
    if phi.abs() < CF_ROOT_TOL {
        return Ok(1.0);
    }
    let (re, _) = ecf(y, t)?;
    let r = re / phi;
    let log_plus = if r == 0.0 { 1.0 } else { r.abs().ln() };
    Ok(-log_plus / (gamma.powf(q) * t.abs().powf(q)))
}

/// Median of the absolute values; for even n, the midpoint of the two middle
/// order statistics.
pub fn mad_statistic(y: &[f64]) -> Result<f64> {
    if y.is_empty() {
        return Err(Error::EmptyBatch);
    }
    if y.iter().all(|&v| v == 0.0) {
        return Err(Error::AllZero);
    }
    let mut abs: Vec<f64> = y.iter().map(|v| v.abs()).collect();
    abs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = abs.len();
    Ok(if n % 2 == 1 {
        abs[n / 2]
    } else {
        0.5 * (abs[n / 2 - 1] + abs[n / 2])
    })
}

/// Largest grid value eta0 such that phi_0 stays above 1/2 on every grid
/// point of [0, eta0], capped at 10. The grid step starts at 0.01 and is
/// refined tenfold up to twice if even the first point fails.
pub fn find_eta0(noise: NoiseModel) -> Result<f64> {
    find_eta0_cf(|t| noise_cf(noise, t))
}

fn find_eta0_cf(cf: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let mut step = 0.01;
    for _ in 0..3 {
        let mut k = 0u64;
        loop {
            let next = (k + 1) as f64 * step;
            if next > 10.0 + 1e-12 {
                return Ok(10.0);
            }
            if cf(next)? > 0.5 {
                k += 1;
            } else {
                break;
            }
        }
        if k >= 1 {
            return Ok(k as f64 * step);
        }
        step /= 10.0;
    }
    Err(Error::NoEta0)
}

/// Extended asymptotic variance v_q(c, rho); +infinity at c <= 0 and at
/// roots of phi_0(rho c).
pub fn variance_ext(c: f64, rho: f64, q: f64, noise: NoiseModel) -> Result<f64> {
    if c <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let phi = noise_cf(noise, rho * c)?;
    if phi.abs() < CF_ROOT_TOL {
        return Ok(f64::INFINITY);
    }
    let phi2 = noise_cf(noise, 2.0 * rho * c)?;
    let cq = c.powf(q);
    let v = (0.5 * (2.0 * cq).exp() / (phi * phi) + 0.5 * phi2 * ((2.0 - 2f64.powf(q)) * cq).exp() / (phi * phi)
        - 1.0)
        / c.powf(2.0 * q);
    Ok(v)
}

/// Noise-free lower bound on the extended variance, from Jensen's
/// inequality; used to truncate the minimizer search.
pub fn jensen_lower_bound(c: f64, q: f64) -> f64 {
    if c <= 0.0 {
        return f64::INFINITY;
    }
    let cq = c.powf(q);
    (0.5 * (2.0 * cq).exp() + 0.5 * ((2.0 - 2f64.powf(q)) * cq).exp() - 1.0) / c.powf(2.0 * q)
}

/// Result of minimizing the extended variance over c >= epsilon_q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimizer {
    pub c_star: f64,
    pub v_min: f64,
    /// Set when a second grid-local minimum comes within 1e-6 of the best
    /// value; uniqueness of the minimizer is then doubtful.
    pub near_tie: bool,
}

/// Minimizes v_q(., rho) over [epsilon_q, infinity): coarse 0.01 grid,
/// truncated where the noise-free lower bound exceeds the best value seen
/// (cap 50), then golden-section refinement. Ties break toward smaller c.
pub fn minimize_variance(
    rho: f64,
    q: f64,
    noise: NoiseModel,
    epsilon_q: f64,
) -> Result<Minimizer> {
    const STEP: f64 = 0.01;
    let c0 = epsilon_q.max(STEP);
    let mut grid_c = Vec::new();
    let mut grid_v = Vec::new();
    let mut best = f64::INFINITY;
    let mut k = 0usize;
    loop {
        let c = c0 + k as f64 * STEP;
        if c > 50.0 || (k > 0 && jensen_lower_bound(c, q) > best) {
            break;
        }
        let v = variance_ext(c, rho, q, noise)?;
        if v < best {
            best = v;
        }
        grid_c.push(c);
        grid_v.push(v);
        k += 1;
    }
    let m = grid_v.len();
    let best_idx = (0..m)
        .min_by(|&a, &b| grid_v[a].partial_cmp(&grid_v[b]).unwrap())
        .expect("grid nonempty");

    // Golden-section refinement inside the bracketing interval.
    let lo = if best_idx == 0 { c0 } else { grid_c[best_idx - 1] };
    let hi = if best_idx + 1 < m {
        grid_c[best_idx + 1]
    } else {
        grid_c[best_idx] + STEP
    };
    let f = |c: f64| variance_ext(c, rho, q, noise).unwrap_or(f64::INFINITY);
    let (c_star, v_min) = golden_section(f, lo, hi, 1e-6);
    let (c_star, v_min) = if grid_v[best_idx] < v_min {
        (grid_c[best_idx], grid_v[best_idx])
    } else {
        (c_star, v_min)
    };

    // Uniqueness diagnostic: another grid-local minimum essentially as deep.
    let mut near_tie = false;
    for i in 0..m {
        if (grid_c[i] - c_star).abs() <= 5.0 * STEP {
            continue;
        }
        let left_ok = i == 0 || grid_v[i] <= grid_v[i - 1];
        let right_ok = i + 1 == m || grid_v[i] <= grid_v[i + 1];
        if left_ok && right_ok && grid_v[i] - v_min < 1e-6 {
            near_tie = true;
        }
    }
    Ok(Minimizer {
        c_star,
        v_min,
        near_tie,
    })
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.6180339887498949;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    // prefer the smaller c on a tie
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Intermediates of the tuning pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TuningState {
    pub m_hat: f64,
    pub t_initial: f64,
    pub eta0: f64,
    pub t_pilot: f64,
    pub nu_pilot: f64,
    pub rho_hat: f64,
    pub c_star: f64,
    pub t_opt: f64,
    pub epsilon_q: f64,
    /// Re(Psi_n/phi_0) was negative at t_opt; the estimate comes from the
    /// absolute value inside Log+.
    pub re_negative_at_t_opt: bool,
    /// Minimizer uniqueness diagnostic from the grid search.
    pub near_tie: bool,
}

/// Point estimate of |x|_q^q with its variance proxy and tuning provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormEstimate {
    pub q: f64,
    pub nu_hat: f64,
    pub omega_hat: f64,
    pub n: usize,
    #[serde(flatten)]
    pub tuning: TuningState,
}

/// Runs the full tuning pipeline on a batch: median statistic, pilot t,
/// pilot estimate, plug-in noise-to-signal ratio, variance minimizer, and
/// the final estimate at the optimal t.
pub fn estimate_norm(
    batch: &MeasurementBatch,
    noise: NoiseModel,
    epsilon_q: f64,
    eta0_override: Option<f64>,
) -> Result<NormEstimate> {
    let q = batch.q;
    if !(q > 0.0 && q <= 2.0) {
        return Err(Error::InvalidQ(q));
    }
    let y = &batch.y;
    let (gamma, sigma) = (batch.gamma_q, batch.sigma);

    let m_hat = mad_statistic(y)?;
    let t_initial = 1.0 / m_hat;
    let eta0 = match eta0_override {
        Some(v) => v,
        None => find_eta0(noise)?,
    };
    let t_pilot = if sigma > 0.0 {
        t_initial.min(eta0 / sigma)
    } else {
        t_initial
    };
    let nu_pilot = nu_hat_at(y, t_pilot, q, gamma, sigma, noise)?;
    if nu_pilot <= 0.0 {
        return Err(Error::PilotFailure(nu_pilot));
    }
    let rho_hat = if sigma > 0.0 {
        sigma / (gamma * nu_pilot.powf(1.0 / q))
    } else {
        0.0
    };
    let min = minimize_variance(rho_hat, q, noise, epsilon_q)?;
    let t_opt = min.c_star / (gamma * nu_pilot.powf(1.0 / q));
    let nu_hat = nu_hat_at(y, t_opt, q, gamma, sigma, noise)?;
    let phi_opt = noise_cf(noise, sigma * t_opt)?;
    let re_negative = {
        let (re, _) = ecf(y, t_opt)?;
        phi_opt.abs() >= CF_ROOT_TOL && re / phi_opt < 0.0
    };
    Ok(NormEstimate {
        q,
        nu_hat,
        omega_hat: min.v_min,
        n: y.len(),
        tuning: TuningState {
            m_hat,
            t_initial,
            eta0,
            t_pilot,
            nu_pilot,
            rho_hat,
            c_star: min.c_star,
            t_opt,
            epsilon_q,
            re_negative_at_t_opt: re_negative,
            near_tie: min.near_tie,
        },
    })
}
