//! Pick data-driven l1 and l2 constraint-ball radii from measurement
//! batches, so that a primal-form lasso or elastic net can be tuned without
//! cross-validation: the true signal lies in the ball with probability about
//! 1 - alpha'.
//!
//! Run with: cargo run --release --example tune_regularizer

use numsparse::estimator::estimate_norm;
use numsparse::inference::tuning_radii;
use numsparse::noise::NoiseModel;
use numsparse::sparsity::Signal;
use numsparse::stable::{measure, Mode};

fn main() {
    let x = Signal::power_law(500, 1.0);
    let noise = NoiseModel::Gaussian;
    let sigma = 0.05;

    let b1 = measure(&x, 3000, 1.0, 1.0, sigma, noise, Mode::Induced, 21).unwrap();
    let b2 = measure(&x, 3000, 2.0, 1.0, sigma, noise, Mode::Induced, 22).unwrap();
    let e1 = estimate_norm(&b1, noise, 0.0, None).unwrap();
    let e2 = estimate_norm(&b2, noise, 0.3, None).unwrap();

    let (r_hat, varrho) = tuning_radii(&e1, Some(&e2), 0.05).unwrap();
    let varrho = varrho.unwrap();

    println!("true |x|_1   = {:.4}", x.norm(1.0));
    println!("l1 radius    = {r_hat:.4}  (should cover |x|_1 with prob ~0.95)");
    println!("true |x|_2^2 = {:.4}", x.norm(2.0).powi(2));
    println!("l2^2 radius  = {varrho:.4}");
    println!("l2 radius    = {:.4}", varrho.sqrt());
}
