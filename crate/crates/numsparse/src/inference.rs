//! Sparsity estimation from a pair of norm estimates, confidence intervals,
//! the one-sided sparsity test with its asymptotic power, and constraint
//! radii for tuning l1/l2-ball regularizers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimator::NormEstimate;
use crate::special::{normal_cdf, normal_ppf};

/// Combined estimate of s_q(x) from the q-batch and 1-batch norm estimates.
#[derive(Debug, Clone, Serialize)]
pub struct SparsityEstimate {
    pub q: f64,
    pub s_hat: f64,
    pub vartheta_hat: f64,
    pub n1: usize,
    pub nq: usize,
    pub pi_q: f64,
    pub parts: (NormEstimate, NormEstimate),
}

impl SparsityEstimate {
    pub fn n_total(&self) -> usize {
        self.n1 + self.nq
    }
}

/// Two-sided (possibly half-open) confidence interval at levels
/// (alpha, alpha_prime); a zero level opens that side to infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub lower: f64,
    pub upper: f64,
    pub alpha: f64,
    pub alpha_prime: f64,
}

/// Decision record for H0: s_q(x) >= kappa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SparsityTest {
    pub kappa: f64,
    pub alpha: f64,
    pub u_hat: f64,
    pub reject: bool,
}

fn z_quantile(level: f64) -> f64 {
    if level == 0.5 {
        0.0
    } else {
        normal_ppf(1.0 - level)
    }
}

fn check_alphas(alpha: f64, alpha_prime: f64) -> Result<()> {
    let ok = |a: f64| (0.0..=0.5).contains(&a);
    if !ok(alpha) || !ok(alpha_prime) || (alpha == 0.0 && alpha_prime == 0.0) {
        return Err(Error::InvalidAlpha);
    }
    Ok(())
}

/// Combines the two norm estimates into s_hat and its variance proxy.
pub fn estimate_sparsity(est_q: &NormEstimate, est_1: &NormEstimate) -> Result<SparsityEstimate> {
    let q = est_q.q;
    if !(q > 0.0 && q <= 2.0) {
        return Err(Error::InvalidQ(q));
    }
    if (q - 1.0).abs() < 0.05 {
        return Err(Error::QTooCloseToOne(q));
    }
    if est_1.q != 1.0 {
        return Err(Error::WrongQ {
            expected: 1.0,
            got: est_1.q,
        });
    }
    if est_q.nu_hat <= 0.0 {
        return Err(Error::NonPositiveNormEstimate(est_q.nu_hat));
    }
    if est_1.nu_hat <= 0.0 {
        return Err(Error::NonPositiveNormEstimate(est_1.nu_hat));
    }
    let pi_q = est_q.n as f64 / (est_1.n + est_q.n) as f64;
    let s_hat = est_q.nu_hat.powf(1.0 / (1.0 - q)) / est_1.nu_hat.powf(q / (1.0 - q));
    let a = 1.0 / (1.0 - q);
    let b = q / (1.0 - q);
    let vartheta_hat = est_q.omega_hat / pi_q * a * a + est_1.omega_hat / (1.0 - pi_q) * b * b;
    Ok(SparsityEstimate {
        q,
        s_hat,
        vartheta_hat,
        n1: est_1.n,
        nq: est_q.n,
        pi_q,
        parts: (est_q.clone(), est_1.clone()),
    })
}

/// Confidence interval for |x|_q^q around nu_hat.
pub fn norm_ci(est: &NormEstimate, alpha: f64, alpha_prime: f64) -> Result<ConfidenceInterval> {
    check_alphas(alpha, alpha_prime)?;
    let half_width = est.omega_hat.sqrt() / (est.n as f64).sqrt();
    let lower = if alpha == 0.0 {
        f64::NEG_INFINITY
    } else {
        (1.0 - half_width * z_quantile(alpha)) * est.nu_hat
    };
    let upper = if alpha_prime == 0.0 {
        f64::INFINITY
    } else {
        (1.0 + half_width * z_quantile(alpha_prime)) * est.nu_hat
    };
    Ok(ConfidenceInterval {
        lower,
        upper,
        alpha,
        alpha_prime,
    })
}

/// Confidence interval for s_q(x) around s_hat.
pub fn sparsity_ci(
    est: &SparsityEstimate,
    alpha: f64,
    alpha_prime: f64,
) -> Result<ConfidenceInterval> {
    check_alphas(alpha, alpha_prime)?;
    let half_width = est.vartheta_hat.sqrt() / (est.n_total() as f64).sqrt();
    let lower = if alpha == 0.0 {
        f64::NEG_INFINITY
    } else {
        (1.0 - half_width * z_quantile(alpha)) * est.s_hat
    };
    let upper = if alpha_prime == 0.0 {
        f64::INFINITY
    } else {
        (1.0 + half_width * z_quantile(alpha_prime)) * est.s_hat
    };
    Ok(ConfidenceInterval {
        lower,
        upper,
        alpha,
        alpha_prime,
    })
}

/// Tests H0: s_q(x) >= kappa at level alpha; rejects iff the upper
/// confidence limit u_hat falls strictly below kappa.
pub fn test_sparsity(est: &SparsityEstimate, kappa: f64, alpha: f64) -> Result<SparsityTest> {
    if kappa <= 1.0 {
        return Err(Error::InvalidKappa(kappa));
    }
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(Error::InvalidAlpha);
    }
    let u_hat = (1.0 + est.vartheta_hat.sqrt() * z_quantile(alpha) / (est.n_total() as f64).sqrt())
        * est.s_hat;
    Ok(SparsityTest {
        kappa,
        alpha,
        u_hat,
        reject: u_hat < kappa,
    })
}

/// Asymptotic power of the sparsity test at a true value s_true.
pub fn test_power(s_true: f64, kappa: f64, alpha: f64, vartheta: f64, n_total: usize) -> f64 {
    assert!(s_true > 0.0);
    let z = z_quantile(alpha);
    normal_cdf((n_total as f64).sqrt() / vartheta.sqrt() * (kappa / s_true - 1.0) - z)
}

/// One-sided upper radii for the l1 ball (and optionally the l2 ball, via
/// the squared-norm estimate): with probability about 1 - alpha_prime the
/// true signal lies inside the corresponding ball.
pub fn tuning_radii(
    est_1: &NormEstimate,
    est_2: Option<&NormEstimate>,
    alpha_prime: f64,
) -> Result<(f64, Option<f64>)> {
    if est_1.q != 1.0 {
        return Err(Error::WrongQ {
            expected: 1.0,
            got: est_1.q,
        });
    }
    if !(alpha_prime > 0.0 && alpha_prime <= 0.5) {
        return Err(Error::InvalidAlpha);
    }
    let z = z_quantile(alpha_prime);
    let r_hat = (1.0 + est_1.omega_hat.sqrt() * z / (est_1.n as f64).sqrt()) * est_1.nu_hat;
    let varrho = match est_2 {
        None => None,
        Some(e2) => {
            if e2.q != 2.0 {
                return Err(Error::WrongQ {
                    expected: 2.0,
                    got: e2.q,
                });
            }
            Some((1.0 + e2.omega_hat.sqrt() * z / (e2.n as f64).sqrt()) * e2.nu_hat)
        }
    };
    Ok((r_hat, varrho))
}
