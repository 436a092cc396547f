//! Estimate the numerical sparsity s_2(x) from two measurement batches
//! (orders 2 and 1) and report a 90% confidence interval plus a test of
//! H0: s_2(x) >= 20.
//!
//! Run with: cargo run --release --example sparsity_ci

use numsparse::estimator::estimate_norm;
use numsparse::inference::{estimate_sparsity, sparsity_ci, test_sparsity};
use numsparse::noise::NoiseModel;
use numsparse::sparsity::{numerical_sparsity, Signal};
use numsparse::stable::{measure, Mode};

fn main() {
    let x = Signal::power_law(10_000, 1.0);
    let truth = numerical_sparsity(&x, 2.0);

    let noise = NoiseModel::StudentT(2);
    let sigma = 0.1;
    let b2 = measure(&x, 5000, 2.0, 1.0, sigma, noise, Mode::Induced, 1).unwrap();
    let b1 = measure(&x, 5000, 1.0, 1.0, sigma, noise, Mode::Induced, 2).unwrap();

    let e2 = estimate_norm(&b2, noise, 0.3, Some(0.3)).unwrap();
    let e1 = estimate_norm(&b1, noise, 0.0, Some(0.3)).unwrap();
    let est = estimate_sparsity(&e2, &e1).unwrap();
    let ci = sparsity_ci(&est, 0.05, 0.05).unwrap();
    let test = test_sparsity(&est, 20.0, 0.05).unwrap();

    println!("true s_2(x)       = {truth:.4}");
    println!("estimated s_2     = {:.4}", est.s_hat);
    println!("vartheta_hat      = {:.4}", est.vartheta_hat);
    println!("90% CI            = [{:.4}, {:.4}]", ci.lower, ci.upper);
    println!(
        "test s_2 >= 20    : u_hat = {:.4}, reject = {}",
        test.u_hat, test.reject
    );
}
