//! Closed-form recovery-error bound calculators and a randomized
//! construction of a maximally non-sparse signal inside the null space of a
//! measurement matrix.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};
use crate::rng::CounterRng;
use crate::sparsity::{numerical_sparsity, Signal};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub n: usize,
    pub p: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn new(n: usize, p: usize, data: Vec<f64>) -> Self {
        assert!(n >= 1 && p >= 1 && data.len() == n * p);
        assert!(data.iter().all(|v| v.is_finite()));
        Matrix { n, p, data }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.p + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.p..(i + 1) * self.p]
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// A * v for v of length p.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.p);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Upper bound on the relative l2 error of basis-pursuit-type recovery:
/// c2 * noise_term + c3 * sqrt(s2 * ln(p e / n) / n). The absolute constants
/// are exposed as parameters since only the scaling is meaningful.
pub fn bpdn_upper_bound(
    s2: f64,
    n: usize,
    p: usize,
    noise_term: f64,
    c2: f64,
    c3: f64,
) -> Result<f64> {
    if n < 1 || n > p {
        return Err(Error::InvalidDims(format!("need 1 <= n <= p, got n={n}, p={p}")));
    }
    assert!((0.0..=p as f64).contains(&s2), "s2 must lie in [0, p]");
    assert!(noise_term >= 0.0);
    let log_term = (p as f64 * E / n as f64).ln();
    if log_term > n as f64 {
        eprintln!("warning: ln(pe/n) > n; the bound's regime condition fails");
    }
    Ok(c2 * noise_term + c3 * (s2 * log_term / n as f64).sqrt())
}

/// Minimax lower bound on the relative error of estimating |x|_q^q from
/// n < p noiseless measurements. Negative values are clamped to 0, with the
/// second component flagging that the clamp fired.
pub fn minimax_lower_bound(n: usize, p: usize, q: f64) -> Result<(f64, bool)> {
    if n < 1 || n >= p {
        return Err(Error::InvalidDims(format!("need 1 <= n < p, got n={n}, p={p}")));
    }
    assert!(q >= 0.0);
    let gap = 1.0 - n as f64 / p as f64;
    let raw = if q <= 2.0 {
        gap * gap / (2.0 * PI * E) - 1.0 / (2.0 * p as f64)
    } else {
        gap / ((2.0 * PI * E).sqrt() * (1.0 + (16.0 * (2.0 * p as f64).ln()).sqrt()))
            - 1.0 / (2.0 * p as f64)
    };
    if raw < 0.0 {
        Ok((0.0, true))
    } else {
        Ok((raw, false))
    }
}

/// Orthonormal basis of the null space of A, as column vectors of length p.
///
/// Built by orthonormalizing the rows of A with modified Gram-Schmidt
/// (re-orthogonalized), then projecting the standard basis onto the
/// complement; rank decisions use tolerance 1e-10 relative to row scale.
pub fn null_space_basis(a: &Matrix) -> Vec<Vec<f64>> {
    let tol = 1e-10;
    let scale = a.frobenius().max(1.0);
    let mut row_basis: Vec<Vec<f64>> = Vec::new();
    for i in 0..a.n {
        let mut v = a.row(i).to_vec();
        for _ in 0..2 {
            for u in &row_basis {
                let c = dot(&v, u);
                for (vj, uj) in v.iter_mut().zip(u) {
                    *vj -= c * uj;
                }
            }
        }
        let nv = norm2(&v);
        if nv > tol * scale {
            v.iter_mut().for_each(|x| *x /= nv);
            row_basis.push(v);
        }
    }
    let mut null_basis: Vec<Vec<f64>> = Vec::new();
    for j in 0..a.p {
        let mut v = vec![0.0; a.p];
        v[j] = 1.0;
        for _ in 0..2 {
            for u in row_basis.iter().chain(null_basis.iter()) {
                let c = dot(&v, u);
                for (vj, uj) in v.iter_mut().zip(u) {
                    *vj -= c * uj;
                }
            }
        }
        let nv = norm2(&v);
        if nv > tol {
            v.iter_mut().for_each(|x| *x /= nv);
            null_basis.push(v);
        }
    }
    null_basis
}

/// Outcome of the adversarial null-space search.
#[derive(Debug, Clone)]
pub struct AdversarialResult {
    pub x_tilde: Signal,
    pub s_q: f64,
    pub bound: f64,
    pub success: bool,
    pub residual: f64,
}

/// Searches for a signal indistinguishable from x0 under A (A x_tilde =
/// A x0) whose sparsity s_q reaches the dimension-scaled lower bound.
/// Randomizes x_tilde = x0 + |x0|_inf * B z over `trials` standard normal z
/// (unscaled B z when x0 = 0) and returns the best draw.
pub fn adversarial_signal(
    a: &Matrix,
    x0: &Signal,
    q: f64,
    trials: usize,
    rng: &mut CounterRng,
) -> Result<AdversarialResult> {
    if a.n >= a.p {
        return Err(Error::InvalidDims(format!(
            "need n < p, got n={}, p={}",
            a.n, a.p
        )));
    }
    if x0.len() != a.p {
        return Err(Error::InvalidDims(format!(
            "signal length {} does not match p={}",
            x0.len(),
            a.p
        )));
    }
    assert!(trials >= 1);
    let basis = null_space_basis(a);
    let d = basis.len();
    let (n, p) = (a.n as f64, a.p as f64);
    let bound = if q <= 2.0 {
        (1.0 - n / p).powi(2) * p / (PI * E)
    } else {
        (2.0 / (PI * E)).sqrt() * (p - n) / (1.0 + (16.0 * (2.0 * p).ln()).sqrt())
    };
    let scale = if x0.is_zero() {
        1.0
    } else {
        x0.norm(f64::INFINITY)
    };

    let mut best: Option<(Vec<f64>, f64)> = None;
    for _ in 0..trials {
        let z: Vec<f64> = (0..d).map(|_| rng.normal()).collect();
        let mut xt = x0.values.clone();
        for (b, &zk) in basis.iter().zip(&z) {
            for (x, &bj) in xt.iter_mut().zip(b) {
                *x += scale * zk * bj;
            }
        }
        let s = numerical_sparsity(&Signal::new(xt.clone()), q);
        if best.as_ref().map_or(true, |(_, bs)| s > *bs) {
            best = Some((xt, s));
        }
    }
    let (xt, s_q) = best.expect("at least one trial");

    let ax0 = a.apply(&x0.values);
    let axt = a.apply(&xt);
    let residual = axt
        .iter()
        .zip(&ax0)
        .map(|(u, v)| (u - v) * (u - v))
        .sum::<f64>()
        .sqrt();
    let x_tilde = Signal::new(xt);
    let allowed = 1e-8 * a.frobenius() * x_tilde.norm(2.0);
    assert!(
        residual <= allowed,
        "null-space residual {residual} exceeds tolerance {allowed}"
    );
    Ok(AdversarialResult {
        s_q,
        bound,
        success: s_q >= bound,
        residual,
        x_tilde,
    })
}
