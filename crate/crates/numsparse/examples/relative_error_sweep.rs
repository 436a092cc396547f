//! Monte Carlo sweep of the mean relative error of s_2 estimation against
//! the number of measurements, with the theoretical curve overlaid.
//!
//! Run with: cargo run --release --example relative_error_sweep

use numsparse::noise::NoiseModel;
use numsparse::simlab::{run_relative_error, ExperimentConfig, SignalSpec};
use numsparse::stable::Mode;

fn main() {
    let config = ExperimentConfig {
        signal: SignalSpec::PowerLaw { p: 1000, tau: 1.0 },
        q: 2.0,
        grid: (1..=8).map(|k| (125 * k, 125 * k)).collect(),
        gamma_1: 1.0,
        gamma_q: 1.0,
        sigma: 0.0,
        noise: NoiseModel::Gaussian,
        replicates: 200,
        mode: Mode::Induced,
        eta0_override: Some(0.3),
        epsilon_2: 0.3,
        alpha: 0.05,
        alpha_prime: 0.05,
        seed: 7,
    };
    let result = run_relative_error(&config).unwrap();
    print!("{}", result.to_csv());
}
