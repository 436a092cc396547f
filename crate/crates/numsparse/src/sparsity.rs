//! Exact sparsity functionals of a known signal: the Renyi entropy of the
//! index distribution and the derived sparsity measure s_q, together with the
//! majorization order used to test Schur concavity.

use crate::error::{Error, Result};

/// Dense real signal of dimension p >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    pub values: Vec<f64>,
}

impl Signal {
    pub fn new(values: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "signal must have at least one entry");
        assert!(values.iter().all(|v| v.is_finite()), "entries must be finite");
        Signal { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Power-law signal x_i = i^(-tau), i = 1..p.
    pub fn power_law(p: usize, tau: f64) -> Self {
        Signal::new((1..=p).map(|i| (i as f64).powf(-tau)).collect())
    }

    /// lq quasi-norm for q > 0, plus the q = infinity convention.
    pub fn norm(&self, q: f64) -> f64 {
        if q.is_infinite() {
            return self.values.iter().fold(0.0, |m, &v| m.max(v.abs()));
        }
        assert!(q > 0.0);
        self.values
            .iter()
            .map(|&v| v.abs().powf(q))
            .sum::<f64>()
            .powf(1.0 / q)
    }

    /// Number of exactly nonzero entries.
    pub fn l0(&self) -> f64 {
        self.values.iter().filter(|&&v| v != 0.0).count() as f64
    }
}

/// Probability masses induced by a signal: pi_j = |x_j|^t / sum_k |x_k|^t.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexDistribution {
    pub masses: Vec<f64>,
    pub t_norm: f64,
}

/// Normalizes |x|^t_norm into a probability vector over the indices.
pub fn induced_distribution(x: &Signal, t_norm: f64) -> Result<IndexDistribution> {
    assert!(t_norm > 0.0, "t_norm must be positive");
    if x.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let powers: Vec<f64> = x.values.iter().map(|&v| v.abs().powf(t_norm)).collect();
    let total: f64 = powers.iter().sum();
    Ok(IndexDistribution {
        masses: powers.iter().map(|&w| w / total).collect(),
        t_norm,
    })
}

/// Renyi entropy of order q in [0, inf]; the orders 0, 1 and infinity use
/// their closed-form limits (support-size log, Shannon entropy, -log max).
pub fn renyi_entropy(pi: &IndexDistribution, q: f64) -> f64 {
    assert!(q >= 0.0, "order must be nonnegative");
    let m = &pi.masses;
    if q == 0.0 {
        let support = m.iter().filter(|&&v| v > 0.0).count();
        (support as f64).ln()
    } else if q == 1.0 {
        -m.iter()
            .filter(|&&v| v > 0.0)
            .map(|&v| v * v.ln())
            .sum::<f64>()
    } else if q.is_infinite() {
        let max = m.iter().fold(0.0f64, |a, &b| a.max(b));
        -max.ln()
    } else {
        let sum: f64 = m.iter().map(|&v| v.powf(q)).sum();
        sum.ln() / (1.0 - q)
    }
}

/// Numerical sparsity s_q(x) = exp(H_q(pi(x))) in [0, p], with s_q(0) = 0.
///
/// For q outside {0, 1, inf} this is evaluated in the log domain through the
/// norm ratio (lq-norm / l1-norm)^(q/(1-q)), which is an independent route
/// from the entropy formula above.
pub fn numerical_sparsity(x: &Signal, q: f64) -> f64 {
    assert!(q >= 0.0);
    if x.is_zero() {
        return 0.0;
    }
    if q == 0.0 {
        x.l0()
    } else if q == 1.0 {
        let pi = induced_distribution(x, 1.0).expect("nonzero signal");
        renyi_entropy(&pi, 1.0).exp()
    } else if q.is_infinite() {
        x.norm(1.0) / x.norm(f64::INFINITY)
    } else {
        // ln |x|_q computed without forming |x|_q itself, which overflows
        // for small q (the trailing power 1/q is huge).
        let m = x.norm(f64::INFINITY);
        let sum_q: f64 = x.values.iter().map(|v| (v.abs() / m).powf(q)).sum();
        let log_norm_q = m.ln() + sum_q.ln() / q;
        let log_ratio = log_norm_q - x.norm(1.0).ln();
        ((q / (1.0 - q)) * log_ratio).exp()
    }
}

/// True iff |a| is majorized by |b|: after sorting the absolute values in
/// descending order, every partial sum of b dominates the corresponding
/// partial sum of a, with equal totals.
pub fn majorizes(a: &Signal, b: &Signal) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let sort_desc = |s: &Signal| {
        let mut v: Vec<f64> = s.values.iter().map(|x| x.abs()).collect();
        v.sort_by(|x, y| y.partial_cmp(x).unwrap());
        v
    };
    let sa = sort_desc(a);
    let sb = sort_desc(b);
    let ta: f64 = sa.iter().sum();
    let tb: f64 = sb.iter().sum();
    if (ta - tb).abs() > 1e-9 {
        return Err(Error::TotalMismatch(ta, tb));
    }
    let mut pa = 0.0;
    let mut pb = 0.0;
    for i in 0..sa.len() {
        pa += sa[i];
        pb += sb[i];
        if pb < pa - 1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_distribution_normalizes() {
        let x = Signal::new(vec![3.0, 0.0, 1.0]);
        let pi = induced_distribution(&x, 1.0).unwrap();
        assert_eq!(pi.masses, vec![0.75, 0.0, 0.25]);

        let x = Signal::new(vec![1.0, 1.0, 1.0, 1.0]);
        for t in [0.5, 1.0, 2.0] {
            let pi = induced_distribution(&x, t).unwrap();
            assert_eq!(pi.masses, vec![0.25; 4]);
        }

        let x = Signal::new(vec![2.0, 1.0]);
        let pi = induced_distribution(&x, 2.0).unwrap();
        assert!((pi.masses[0] - 0.8).abs() < 1e-15);
        assert!((pi.masses[1] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn induced_distribution_rejects_zero_signal() {
        let x = Signal::new(vec![0.0, 0.0]);
        assert_eq!(induced_distribution(&x, 1.0), Err(Error::ZeroSignal));
    }

    #[test]
    fn renyi_entropy_reference_cases() {
        let uniform = IndexDistribution {
            masses: vec![0.25; 4],
            t_norm: 1.0,
        };
        assert!((renyi_entropy(&uniform, 2.0) - 4.0f64.ln()).abs() < 1e-14);

        let point = IndexDistribution {
            masses: vec![1.0, 0.0, 0.0],
            t_norm: 1.0,
        };
        for q in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
            assert!(renyi_entropy(&point, q).abs() < 1e-14, "q = {q}");
        }

        let skew = IndexDistribution {
            masses: vec![0.75, 0.25],
            t_norm: 1.0,
        };
        // -ln(0.75^2 + 0.25^2) = -ln(0.625)
        assert!((renyi_entropy(&skew, 2.0) - 0.470003629245736) < 1e-14);
    }

    #[test]
    fn sparsity_reference_cases() {
        let e1 = Signal::new(vec![1.0, 0.0, 0.0]);
        for q in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
            assert!((numerical_sparsity(&e1, q) - 1.0).abs() < 1e-14, "q = {q}");
        }

        let ones = Signal::new(vec![1.0; 7]);
        for q in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
            assert!((numerical_sparsity(&ones, q) - 7.0).abs() < 1e-12, "q = {q}");
        }

        // x_i = 1/i, i = 1..100, q = 2: (sum 1/i)^2 / (sum 1/i^2)
        let x = Signal::power_law(100, 1.0);
        assert!((numerical_sparsity(&x, 2.0) - 16.45819601493934).abs() < 1e-10);

        let x = Signal::new(vec![1.0, 0.5, 0.25]);
        assert!((numerical_sparsity(&x, 2.0) - 7.0 / 3.0).abs() < 1e-14);

        let zero = Signal::new(vec![0.0, 0.0]);
        assert_eq!(numerical_sparsity(&zero, 2.0), 0.0);
    }

    #[test]
    fn majorizes_reference_cases() {
        let half = Signal::new(vec![0.5, 0.5]);
        let point = Signal::new(vec![1.0, 0.0]);
        assert_eq!(majorizes(&half, &point), Ok(true));
        assert_eq!(majorizes(&point, &half), Ok(false));

        let a = Signal::new(vec![0.4, 0.35, 0.25]);
        let b = Signal::new(vec![0.6, 0.3, 0.1]);
        assert_eq!(majorizes(&a, &b), Ok(true));

        let short = Signal::new(vec![1.0]);
        assert!(matches!(
            majorizes(&short, &point),
            Err(Error::LengthMismatch(1, 2))
        ));
        let unequal = Signal::new(vec![0.7, 0.5]);
        assert!(matches!(
            majorizes(&unequal, &point),
            Err(Error::TotalMismatch(_, _))
        ));
    }

    #[test]
    fn entropy_and_ratio_paths_agree() {
        let x = Signal::new(vec![0.3, -1.7, 2.2, 0.0, 0.9]);
        for q in [0.2, 0.5, 0.9, 1.5, 2.0, 3.0] {
            let via_ratio = numerical_sparsity(&x, q);
            let pi = induced_distribution(&x, 1.0).unwrap();
            let via_entropy = renyi_entropy(&pi, q).exp();
            assert!(
                (via_ratio - via_entropy).abs() < 1e-12 * via_entropy,
                "q = {q}: {via_ratio} vs {via_entropy}"
            );
        }
    }

    #[test]
    fn limits_are_continuous() {
        let x = Signal::new(vec![2.0, 1.5, 1.0, 0.5]);
        let s1 = numerical_sparsity(&x, 1.0);
        for q in [0.9, 0.99, 0.999] {
            let gap = (numerical_sparsity(&x, q) - s1).abs();
            let tol = 10.0 * (1.0 - q);
            assert!(gap < tol, "q = {q}, gap {gap}");
        }
        let s0 = numerical_sparsity(&x, 0.0);
        for q in [0.1, 0.01, 0.001] {
            let gap = (numerical_sparsity(&x, q) - s0).abs();
            assert!(gap < 20.0 * q, "q = {q}, gap {gap}");
        }
    }
}
