//! Monte Carlo experiment engine: relative-error curves over measurement
//! grids and normality checks for the standardized sparsity statistic, with
//! theoretical overlay values.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{estimate_norm, minimize_variance};
use crate::inference::{estimate_sparsity, sparsity_ci, test_sparsity};
use crate::noise::NoiseModel;
use crate::rng::derive_key;
use crate::sparsity::{numerical_sparsity, Signal};
use crate::special::normal_cdf;
use crate::stable::{measure, Mode};

/// How the experiment signal is produced.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SignalSpec {
    PowerLaw { p: usize, tau: f64 },
    Explicit { values: Vec<f64> },
}

impl SignalSpec {
    pub fn build(&self) -> Signal {
        match self {
            SignalSpec::PowerLaw { p, tau } => Signal::power_law(*p, *tau),
            SignalSpec::Explicit { values } => Signal::new(values.clone()),
        }
    }

    pub fn tau(&self) -> Option<f64> {
        match self {
            SignalSpec::PowerLaw { tau, .. } => Some(*tau),
            SignalSpec::Explicit { .. } => None,
        }
    }
}

fn default_gamma() -> f64 {
    1.0
}
fn default_epsilon_2() -> f64 {
    0.3
}
fn default_alpha() -> f64 {
    0.05
}
fn default_mode() -> Mode {
    Mode::Induced
}

/// Full description of a Monte Carlo experiment.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExperimentConfig {
    pub signal: SignalSpec,
    pub q: f64,
    /// Measurement-count grid as (n1, nq) pairs.
    pub grid: Vec<(usize, usize)>,
    #[serde(default = "default_gamma")]
    pub gamma_1: f64,
    #[serde(default = "default_gamma")]
    pub gamma_q: f64,
    #[serde(default)]
    pub sigma: f64,
    pub noise: NoiseModel,
    pub replicates: usize,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub eta0_override: Option<f64>,
    #[serde(default = "default_epsilon_2")]
    pub epsilon_2: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_alpha")]
    pub alpha_prime: f64,
    #[serde(default)]
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, reason: &str| {
            Err(Error::InvalidConfig {
                field: field.to_string(),
                reason: reason.to_string(),
            })
        };
        if !(self.q > 0.0 && self.q <= 2.0) {
            return bad("q", "must lie in (0, 2]");
        }
        if (self.q - 1.0).abs() < 0.05 {
            return bad("q", "must differ from 1 by at least 0.05");
        }
        if self.replicates < 1 {
            return bad("replicates", "must be at least 1");
        }
        if self.grid.is_empty() {
            return bad("grid", "must contain at least one (n1, nq) pair");
        }
        if self.grid.iter().any(|&(n1, nq)| n1 == 0 || nq == 0) {
            return bad("grid", "every n1 and nq must be positive");
        }
        if self.gamma_1 <= 0.0 || self.gamma_q <= 0.0 {
            return bad("gamma", "measurement energies must be positive");
        }
        if self.sigma < 0.0 {
            return bad("sigma", "noise scale must be nonnegative");
        }
        if self.epsilon_2 <= 0.0 && self.q == 2.0 {
            return bad("epsilon_2", "must be positive when q = 2");
        }
        if !(0.0..=0.5).contains(&self.alpha) || !(0.0..=0.5).contains(&self.alpha_prime) {
            return bad("alpha", "levels must lie in [0, 1/2]");
        }
        self.noise.validate()?;
        if let SignalSpec::Explicit { values } = &self.signal {
            if values.is_empty() || values.iter().all(|&v| v == 0.0) {
                return bad("signal", "explicit signal must be nonzero");
            }
        }
        Ok(())
    }

    fn epsilon_q(&self) -> f64 {
        if self.q == 2.0 {
            self.epsilon_2
        } else {
            0.0
        }
    }
}

/// Theoretical large-sample value of E|s_hat/s - 1|: sqrt((2/pi) vartheta)
/// divided by sqrt(n_total), with vartheta assembled from the minimized
/// variances at the true noise-to-signal ratios.
#[allow(clippy::too_many_arguments)]
pub fn theoretical_error_curve(
    q: f64,
    rho_bar_q: f64,
    rho_bar_1: f64,
    pi_bar: f64,
    noise: NoiseModel,
    epsilon_q: f64,
    n_total: usize,
) -> Result<f64> {
    assert!(n_total >= 1);
    assert!(pi_bar > 0.0 && pi_bar < 1.0);
    let vq = minimize_variance(rho_bar_q, q, noise, epsilon_q)?.v_min;
    let v1 = minimize_variance(rho_bar_1, 1.0, noise, 0.0)?.v_min;
    let a = 1.0 / (1.0 - q);
    let b = q / (1.0 - q);
    let vartheta = vq / pi_bar * a * a + v1 / (1.0 - pi_bar) * b * b;
    Ok(((2.0 / std::f64::consts::PI) * vartheta).sqrt() / (n_total as f64).sqrt())
}

/// One grid point of a relative-error experiment.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct GridRow {
    pub n1: usize,
    pub nq: usize,
    pub p: usize,
    pub q: f64,
    pub tau: Option<f64>,
    pub rho_q: f64,
    pub mean_abs_rel_err: f64,
    pub std_err: Option<f64>,
    pub failures: usize,
    pub theory: f64,
}

/// Result of a relative-error sweep.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct RelativeErrorResult {
    pub rows: Vec<GridRow>,
}

impl RelativeErrorResult {
    /// CSV with one row per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n_total,p,q,tau,rho_q,mean_abs_rel_err,std_err,failures,theory\n");
        for r in &self.rows {
            let tau = r.tau.map_or(String::new(), |t| format!("{t}"));
            let se = r.std_err.map_or(String::new(), |s| format!("{s}"));
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                r.n1 + r.nq,
                r.p,
                r.q,
                tau,
                r.rho_q,
                r.mean_abs_rel_err,
                se,
                r.failures,
                r.theory
            ));
        }
        out
    }
}

fn replicate_estimate(
    config: &ExperimentConfig,
    x: &Signal,
    n1: usize,
    nq: usize,
    key: u64,
) -> Result<crate::inference::SparsityEstimate> {
    let bq = measure(
        x,
        nq,
        config.q,
        config.gamma_q,
        config.sigma,
        config.noise,
        config.mode,
        derive_key(key, 1),
    )?;
    let b1 = measure(
        x,
        n1,
        1.0,
        config.gamma_1,
        config.sigma,
        config.noise,
        config.mode,
        derive_key(key, 2),
    )?;
    let eq = estimate_norm(&bq, config.noise, config.epsilon_q(), config.eta0_override)?;
    let e1 = estimate_norm(&b1, config.noise, 0.0, config.eta0_override)?;
    estimate_sparsity(&eq, &e1)
}

/// Runs the relative-error experiment: for each grid point, `replicates`
/// independent estimates of s_q with the exact truth as reference.
pub fn run_relative_error(config: &ExperimentConfig) -> Result<RelativeErrorResult> {
    config.validate()?;
    let x = config.signal.build();
    let s_true = numerical_sparsity(&x, config.q);
    let rho_q = config.sigma / (config.gamma_q * x.norm(config.q));
    let rho_1 = config.sigma / (config.gamma_1 * x.norm(1.0));
    let r = config.replicates;

    let mut rows = Vec::with_capacity(config.grid.len());
    for (g, &(n1, nq)) in config.grid.iter().enumerate() {
        let pi_bar = nq as f64 / (n1 + nq) as f64;
        let theory = theoretical_error_curve(
            config.q,
            rho_q,
            rho_1,
            pi_bar,
            config.noise,
            config.epsilon_q(),
            n1 + nq,
        )?;
        let outcomes: Vec<Option<f64>> = (0..r)
            .into_par_iter()
            .map(|k| {
                let key = derive_key(config.seed, (g * r + k) as u64);
                match replicate_estimate(config, &x, n1, nq, key) {
                    Ok(est) => Some((est.s_hat / s_true - 1.0).abs()),
                    Err(Error::PilotFailure(_)) => None,
                    Err(Error::NonPositiveNormEstimate(_)) => None,
                    Err(e) => panic!("replicate failed: {e}"),
                }
            })
            .collect();
        let errs: Vec<f64> = outcomes.iter().flatten().copied().collect();
        let failures = r - errs.len();
        let m = errs.len() as f64;
        let mean = errs.iter().sum::<f64>() / m;
        let std_err = if errs.len() >= 2 {
            let var = errs.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / (m - 1.0);
            Some((var / m).sqrt())
        } else {
            None
        };
        rows.push(GridRow {
            n1,
            nq,
            p: x.len(),
            q: config.q,
            tau: config.signal.tau(),
            rho_q,
            mean_abs_rel_err: mean,
            std_err,
            failures,
            theory,
        });
    }
    Ok(RelativeErrorResult { rows })
}

/// Result of a normality experiment on the standardized statistic.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CltResult {
    /// Standardized statistic per successful replicate, in replicate order.
    pub stats: Vec<f64>,
    /// Whether the two-sided CI covered the truth, aligned with `stats`.
    pub covered: Vec<bool>,
    pub mean: f64,
    pub variance: f64,
    pub ks_statistic: f64,
    pub coverage: f64,
    pub failures: usize,
    /// Rejection frequency of the sparsity test per requested kappa.
    pub rejections: Vec<(f64, f64)>,
}

impl CltResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("replicate,standardized_stat,covered\n");
        for (i, (s, c)) in self.stats.iter().zip(&self.covered).enumerate() {
            out.push_str(&format!("{i},{s},{c}\n"));
        }
        out
    }
}

/// One-sample Kolmogorov-Smirnov distance to the standard normal.
pub fn ks_against_normal(samples: &[f64]) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = s.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in s.iter().enumerate() {
        let f = normal_cdf(x);
        d = d.max(f - i as f64 / n);
        d = d.max((i + 1) as f64 / n - f);
    }
    d
}

/// Runs the normality experiment at the first grid point: replicates of the
/// standardized statistic sqrt(n_total / vartheta_hat) (s_hat/s - 1), CI
/// coverage at (alpha, alpha_prime), and optional test rejections.
pub fn run_clt(config: &ExperimentConfig, kappa_list: &[f64]) -> Result<CltResult> {
    config.validate()?;
    let x = config.signal.build();
    let s_true = numerical_sparsity(&x, config.q);
    let (n1, nq) = config.grid[0];
    let r = config.replicates;

    struct Rep {
        stat: f64,
        covered: bool,
        rejected: Vec<bool>,
    }
    let outcomes: Vec<Option<Rep>> = (0..r)
        .into_par_iter()
        .map(|k| {
            let key = derive_key(config.seed, k as u64);
            match replicate_estimate(config, &x, n1, nq, key) {
                Ok(est) => {
                    let stat = ((est.n_total() as f64) / est.vartheta_hat).sqrt()
                        * (est.s_hat / s_true - 1.0);
                    let ci = sparsity_ci(&est, config.alpha, config.alpha_prime)
                        .expect("levels validated");
                    let covered = ci.lower <= s_true && s_true <= ci.upper;
                    let rejected = kappa_list
                        .iter()
                        .map(|&kappa| {
                            test_sparsity(&est, kappa, config.alpha)
                                .map(|t| t.reject)
                                .unwrap_or(false)
                        })
                        .collect();
                    Some(Rep {
                        stat,
                        covered,
                        rejected,
                    })
                }
                Err(Error::PilotFailure(_)) | Err(Error::NonPositiveNormEstimate(_)) => None,
                Err(e) => panic!("replicate failed: {e}"),
            }
        })
        .collect();

    let reps: Vec<&Rep> = outcomes.iter().flatten().collect();
    let failures = r - reps.len();
    let stats: Vec<f64> = reps.iter().map(|r| r.stat).collect();
    let covered: Vec<bool> = reps.iter().map(|r| r.covered).collect();
    let m = stats.len() as f64;
    let mean = stats.iter().sum::<f64>() / m;
    let variance = stats.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (m - 1.0);
    let ks = ks_against_normal(&stats);
    let coverage = covered.iter().filter(|&&c| c).count() as f64 / m;
    let rejections = kappa_list
        .iter()
        .enumerate()
        .map(|(j, &kappa)| {
            let freq = reps.iter().filter(|r| r.rejected[j]).count() as f64 / m;
            (kappa, freq)
        })
        .collect();
    Ok(CltResult {
        stats,
        covered,
        mean,
        variance,
        ks_statistic: ks,
        coverage,
        failures,
        rejections,
    })
}
