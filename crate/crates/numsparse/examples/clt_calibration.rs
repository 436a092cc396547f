//! Check that the standardized sparsity statistic is close to standard
//! normal and that the two-sided confidence interval attains its nominal
//! coverage.
//!
//! Run with: cargo run --release --example clt_calibration

use numsparse::noise::NoiseModel;
use numsparse::simlab::{run_clt, ExperimentConfig, SignalSpec};
use numsparse::stable::Mode;

fn main() {
    let config = ExperimentConfig {
        signal: SignalSpec::Explicit {
            values: vec![0.6, 0.8],
        },
        q: 2.0,
        grid: vec![(1000, 1000)],
        gamma_1: 1.0,
        gamma_q: 1.0,
        sigma: 0.1,
        noise: NoiseModel::Gaussian,
        replicates: 1000,
        mode: Mode::Induced,
        eta0_override: Some(0.3),
        epsilon_2: 0.3,
        alpha: 0.05,
        alpha_prime: 0.05,
        seed: 11,
    };
    let res = run_clt(&config, &[]).unwrap();
    println!("replicates          = {}", res.stats.len());
    println!("pilot failures      = {}", res.failures);
    println!("sample mean         = {:+.4} (limit 0)", res.mean);
    println!("sample variance     = {:.4} (limit 1)", res.variance);
    println!("KS vs standard normal = {:.4}", res.ks_statistic);
    println!("90% CI coverage     = {:.4} (nominal 0.90)", res.coverage);

    // coarse histogram of the standardized statistic
    let mut counts = [0usize; 13];
    for &s in &res.stats {
        let bin = (((s + 3.25) / 0.5).floor() as isize).clamp(0, 12) as usize;
        counts[bin] += 1;
    }
    let max = *counts.iter().max().unwrap();
    println!();
    for (i, &c) in counts.iter().enumerate() {
        let center = -3.0 + 0.5 * i as f64;
        let bar = "#".repeat(c * 50 / max.max(1));
        println!("{center:>5.2} | {bar}");
    }
}
