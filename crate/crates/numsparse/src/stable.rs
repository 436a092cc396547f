//! Symmetric q-stable sampling and measurement generation.
//!
//! A symmetric q-stable variable with scale gamma has characteristic function
//! exp(-|gamma t|^q). Measurements follow y_i = <a_i, x> + sigma eps_i with
//! a_ij i.i.d. stable_q(gamma); because <a_1, x> is itself stable_q(gamma
//! |x|_q), the induced mode samples that scalar law directly.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::noise::{sample_noise_one, NoiseModel};
use crate::rng::CounterRng;
use crate::sparsity::Signal;

/// One draw from the standard (gamma = 1) symmetric q-stable law via the
/// Chambers-Mallows-Stuck transform. q = 1 and q = 2 use their closed forms.
pub fn sample_stable_one(q: f64, rng: &mut CounterRng) -> f64 {
    debug_assert!(q > 0.0 && q <= 2.0);
    if q == 2.0 {
        // CF exp(-t^2) is N(0, 2)
        return std::f64::consts::SQRT_2 * rng.normal();
    }
    let theta = FRAC_PI_2 * (2.0 * rng.uniform() - 1.0);
    if q == 1.0 {
        return theta.tan();
    }
    let w = rng.exponential();
    let a = (q * theta).sin() / theta.cos().powf(1.0 / q);
    let b = (((1.0 - q) * theta).cos() / w).powf((1.0 - q) / q);
    a * b
}

/// i.i.d. draws with characteristic function exp(-|gamma t|^q).
pub fn sample_stable(q: f64, gamma: f64, count: usize, rng: &mut CounterRng) -> Result<Vec<f64>> {
    if !(q > 0.0 && q <= 2.0) {
        return Err(Error::InvalidQ(q));
    }
    assert!(gamma > 0.0, "scale must be positive");
    Ok((0..count).map(|_| gamma * sample_stable_one(q, rng)).collect())
}

/// How measurement vectors are realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Materialize the n x p matrix of stable variates.
    Explicit,
    /// Sample y_i directly from stable_q(gamma |x|_q) + sigma noise.
    Induced,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "explicit" => Ok(Mode::Explicit),
            "induced" => Ok(Mode::Induced),
            _ => Err(Error::Parse(format!("unknown mode `{s}`"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Explicit => write!(f, "explicit"),
            Mode::Induced => write!(f, "induced"),
        }
    }
}

/// n scalar observations for one stability index, with full provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBatch {
    pub q: f64,
    pub gamma_q: f64,
    pub sigma: f64,
    pub y: Vec<f64>,
    pub mode: Mode,
    pub seed: u64,
    pub noise: NoiseModel,
}

impl MeasurementBatch {
    pub fn n(&self) -> usize {
        self.y.len()
    }
}

/// Generates a measurement batch under either mode. Both modes are exact
/// samples of the same scalar law.
pub fn measure(
    x: &Signal,
    n: usize,
    q: f64,
    gamma_q: f64,
    sigma: f64,
    noise: NoiseModel,
    mode: Mode,
    seed: u64,
) -> Result<MeasurementBatch> {
    if !(q > 0.0 && q <= 2.0) {
        return Err(Error::InvalidQ(q));
    }
    noise.validate()?;
    assert!(n >= 1, "need at least one measurement");
    assert!(gamma_q > 0.0 && sigma >= 0.0);
    if x.is_zero() {
        eprintln!("warning: measuring a zero signal; all signal terms vanish");
    }
    let mut rng = CounterRng::new(seed);
    let y = match mode {
        Mode::Explicit => {
            let mut y = Vec::with_capacity(n);
            for _ in 0..n {
                let mut dot = 0.0;
                for &xj in &x.values {
                    dot += xj * gamma_q * sample_stable_one(q, &mut rng);
                }
                let eps = if sigma > 0.0 {
                    sample_noise_one(noise, &mut rng)
                } else {
                    0.0
                };
                y.push(dot + sigma * eps);
            }
            y
        }
        Mode::Induced => {
            let scale = gamma_q * x.norm(q);
            let mut y = Vec::with_capacity(n);
            for _ in 0..n {
                let signal = if scale > 0.0 {
                    scale * sample_stable_one(q, &mut rng)
                } else {
                    0.0
                };
                let eps = if sigma > 0.0 {
                    sample_noise_one(noise, &mut rng)
                } else {
                    0.0
                };
                y.push(signal + sigma * eps);
            }
            y
        }
    };
    Ok(MeasurementBatch {
        q,
        gamma_q,
        sigma,
        y,
        mode,
        seed,
        noise,
    })
}
