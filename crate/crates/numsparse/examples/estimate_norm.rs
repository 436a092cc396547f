//! Estimate |x|_2^2 from noisy stable-law measurements and print the full
//! tuning pipeline.
//!
//! Run with: cargo run --release --example estimate_norm

use numsparse::estimator::estimate_norm;
use numsparse::noise::NoiseModel;
use numsparse::sparsity::Signal;
use numsparse::stable::{measure, Mode};

fn main() {
    let x = Signal::power_law(1000, 1.0);
    let truth = x.norm(2.0).powi(2);

    let batch = measure(
        &x,
        5000,
        2.0,
        1.0,
        0.1,
        NoiseModel::Gaussian,
        Mode::Induced,
        42,
    )
    .unwrap();

    let est = estimate_norm(&batch, NoiseModel::Gaussian, 0.3, None).unwrap();
    println!("true |x|_2^2          = {truth:.6}");
    println!("estimated             = {:.6}", est.nu_hat);
    println!("relative error        = {:+.4}", est.nu_hat / truth - 1.0);
    println!();
    println!("{}", serde_json::to_string_pretty(&est).unwrap());
}
