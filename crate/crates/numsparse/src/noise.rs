//! Symmetric standardized noise families: sampling and exact characteristic
//! functions. The scale sigma multiplies samples externally, so every family
//! here is unit-scale.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::special::bessel_k1;
use crate::stable::sample_stable_one;

/// Supported symmetric noise families. Student-t is available for 2 and 3
/// degrees of freedom, the two cases with a closed-form characteristic
/// function used here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    Gaussian,
    Laplace,
    /// Symmetric stable with index q0 in (0, 2].
    Stable(f64),
    /// Uniform on [-1, 1].
    Uniform,
    /// Student-t with nu degrees of freedom; nu must be 2 or 3.
    StudentT(u32),
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::Stable(q0) if !(q0 > 0.0 && q0 <= 2.0) => {
                Err(Error::UnsupportedFamily(format!("stable({q0})")))
            }
            NoiseModel::StudentT(nu) if nu != 2 && nu != 3 => {
                Err(Error::UnsupportedFamily(format!("student_t({nu})")))
            }
            _ => Ok(()),
        }
    }
}

impl serde::Serialize for NoiseModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for NoiseModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseModel::Gaussian => write!(f, "gaussian"),
            NoiseModel::Laplace => write!(f, "laplace"),
            NoiseModel::Stable(q0) => write!(f, "stable({q0})"),
            NoiseModel::Uniform => write!(f, "uniform"),
            NoiseModel::StudentT(nu) => write!(f, "student_t({nu})"),
        }
    }
}

impl FromStr for NoiseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let model = match s {
            "gaussian" => NoiseModel::Gaussian,
            "laplace" => NoiseModel::Laplace,
            "uniform" => NoiseModel::Uniform,
            _ => {
                let inner = |prefix: &str| {
                    s.strip_prefix(prefix)
                        .and_then(|r| r.strip_suffix(')'))
                        .map(str::to_string)
                };
                if let Some(arg) = inner("stable(") {
                    let q0: f64 = arg
                        .parse()
                        .map_err(|_| Error::UnsupportedFamily(s.to_string()))?;
                    NoiseModel::Stable(q0)
                } else if let Some(arg) = inner("student_t(") {
                    let nu: u32 = arg
                        .parse()
                        .map_err(|_| Error::UnsupportedFamily(s.to_string()))?;
                    NoiseModel::StudentT(nu)
                } else {
                    return Err(Error::UnsupportedFamily(s.to_string()));
                }
            }
        };
        model.validate()?;
        Ok(model)
    }
}

/// Characteristic function phi_0(t) of the standardized family. Real-valued
/// by symmetry; phi_0(0) = 1 for every family.
pub fn noise_cf(model: NoiseModel, t: f64) -> Result<f64> {
    model.validate()?;
    let a = t.abs();
    Ok(match model {
        NoiseModel::Gaussian => (-0.5 * t * t).exp(),
        NoiseModel::Laplace => 1.0 / (1.0 + t * t),
        NoiseModel::Stable(q0) => (-a.powf(q0)).exp(),
        NoiseModel::Uniform => {
            if t == 0.0 {
                1.0
            } else {
                t.sin() / t
            }
        }
        NoiseModel::StudentT(2) => {
            if t == 0.0 {
                1.0
            } else {
                let u = std::f64::consts::SQRT_2 * a;
                u * bessel_k1(u)
            }
        }
        NoiseModel::StudentT(_) => {
            let u = 3.0f64.sqrt() * a;
            (-u).exp() * (1.0 + u)
        }
    })
}

/// Draws one standardized sample from the family.
pub fn sample_noise_one(model: NoiseModel, rng: &mut CounterRng) -> f64 {
    match model {
        NoiseModel::Gaussian => rng.normal(),
        NoiseModel::Laplace => {
            let e = rng.exponential();
            if rng.uniform() < 0.5 {
                -e
            } else {
                e
            }
        }
        NoiseModel::Stable(q0) => sample_stable_one(q0, rng),
        NoiseModel::Uniform => 2.0 * rng.uniform() - 1.0,
        NoiseModel::StudentT(nu) => {
            let z = rng.normal();
            let chi2: f64 = match nu {
                2 => 2.0 * rng.exponential(),
                _ => {
                    let (a, b, c) = (rng.normal(), rng.normal(), rng.normal());
                    a * a + b * b + c * c
                }
            };
            z / (chi2 / nu as f64).sqrt()
        }
    }
}

/// i.i.d. standardized draws.
pub fn sample_noise(model: NoiseModel, count: usize, rng: &mut CounterRng) -> Result<Vec<f64>> {
    model.validate()?;
    Ok((0..count).map(|_| sample_noise_one(model, rng)).collect())
}
