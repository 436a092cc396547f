//! Special functions: error function, normal CDF and quantile, and the
//! modified Bessel function K1. All hand-rolled so results are identical
//! across platforms.

use std::f64::consts::{FRAC_2_SQRT_PI, PI, SQRT_2};

/// Error function. Power series for |x| <= 3, continued fraction for the
/// complement beyond that.
pub fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x <= 3.0 {
        // erf(x) = 2/sqrt(pi) * sum (-1)^k x^(2k+1) / (k! (2k+1))
        let xx = x * x;
        let mut term = x;
        let mut sum = x;
        let mut k = 1.0f64;
        loop {
            term *= -xx / k;
            let add = term / (2.0 * k + 1.0);
            sum += add;
            if add.abs() <= 1e-18 * sum.abs() {
                break;
            }
            k += 1.0;
        }
        FRAC_2_SQRT_PI * sum
    } else {
        1.0 - erfc(x)
    }
}

/// Complementary error function, accurate in the far right tail.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x <= 3.0 {
        return 1.0 - erf(x);
    }
    // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    // evaluated by the modified Lentz algorithm.
    let tiny = 1e-300;
    let mut f = x;
    let mut c = f;
    let mut d = 0.0f64;
    let mut k = 0.5f64;
    for _ in 0..200 {
        d = x + k * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + k / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
        k += 0.5;
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

/// Standard normal cumulative distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal quantile function. Rational initial guess refined by one
/// Halley step against `normal_cdf`, good to machine precision over (0, 1).
pub fn normal_ppf(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "quantile argument must be in (0, 1)");

    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];

    let p_low = 0.02425;
    let mut x = if p < p_low {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - p_low {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };

    let e = normal_cdf(x) - p;
    let u = e / normal_pdf(x);
    x -= u / (1.0 + x * u / 2.0);
    x
}

// Chebyshev coefficients for exp(x) sqrt(x) K1(x) as a function of
// u = 2*(2/x) - 1 on x in [2, inf); relative error below 1e-17.
const K1_CHEB: [f64; 20] = [
    1.3603130952422213347,
    0.10392373657681723844,
    -0.0028578168596227793868,
    0.00019521551847135163111,
    -1.9361979741660829600e-5,
    2.4064849478372171171e-6,
    -3.5019606030878125421e-7,
    5.7410841254500492923e-8,
    -1.0345762465678097027e-8,
    2.0150497551970346161e-9,
    -4.1903547593419255842e-10,
    9.2183151876053141258e-11,
    -2.1299678384277910216e-11,
    5.1396396734823435404e-12,
    -1.2891739609498229352e-12,
    3.3484196660522431201e-13,
    -8.9767051820101460692e-14,
    2.4771544242195986813e-14,
    -7.0198370892147688513e-15,
    2.0387031662398608799e-15,
];

/// Modified Bessel function of the second kind, order one, for x > 0.
///
/// Ascending series with the log term for x <= 2, and a Chebyshev expansion
/// of the exponentially scaled function for x > 2.
pub fn bessel_k1(x: f64) -> f64 {
    assert!(x > 0.0, "bessel_k1 requires x > 0");
    if x <= 2.0 {
        // K1(x) = ln(x/2) I1(x) + 1/x
        //         - (x/4) sum_k [psi(k+1)+psi(k+2)] q^k / (k!(k+1)!),  q = x^2/4
        const EULER_GAMMA: f64 = 0.5772156649015329;
        let q = 0.25 * x * x;
        let mut term = 1.0f64; // q^k / (k! (k+1)!)
        let mut psi_sum = 1.0 - 2.0 * EULER_GAMMA; // psi(k+1) + psi(k+2) at k = 0
        let mut i1_sum = 0.0f64;
        let mut s_sum = 0.0f64;
        let mut k = 0usize;
        loop {
            i1_sum += term;
            s_sum += psi_sum * term;
            k += 1;
            term *= q / (k * (k + 1)) as f64;
            psi_sum += 1.0 / k as f64 + 1.0 / (k + 1) as f64;
            if term < 1e-19 && k > 3 {
                break;
            }
        }
        let i1 = 0.5 * x * i1_sum;
        (0.5 * x).ln() * i1 + 1.0 / x - 0.25 * x * s_sum
    } else {
        let u = 2.0 * (2.0 / x) - 1.0;
        // Clenshaw recurrence
        let mut b0 = 0.0f64;
        let mut b1 = 0.0f64;
        for &a in K1_CHEB.iter().skip(1).rev() {
            let t = 2.0 * u * b0 - b1 + a;
            b1 = b0;
            b0 = t;
        }
        let scaled = u * b0 - b1 + K1_CHEB[0];
        scaled * (-x).exp() / x.sqrt()
    }
}
