//! Tabulate the extended asymptotic variance v_q(c, rho) over c for several
//! noise-to-signal ratios and locate the optimal c.
//!
//! Run with: cargo run --release --example variance_landscape

use numsparse::estimator::{minimize_variance, variance_ext};
use numsparse::noise::NoiseModel;

fn main() {
    let q = 1.0;
    let noise = NoiseModel::Stable(1.0);

    println!("q = {q}, noise = {noise}");
    println!("{:>6} {:>12} {:>12} {:>12}", "c", "rho=0", "rho=0.5", "rho=1");
    let mut c = 0.1;
    while c <= 1.5 {
        let row: Vec<f64> = [0.0, 0.5, 1.0]
            .iter()
            .map(|&rho| variance_ext(c, rho, q, noise).unwrap())
            .collect();
        println!("{c:>6.2} {:>12.4} {:>12.4} {:>12.4}", row[0], row[1], row[2]);
        c += 0.1;
    }

    println!();
    for rho in [0.0, 0.5, 1.0] {
        let m = minimize_variance(rho, q, noise, 0.0).unwrap();
        println!(
            "rho = {rho}: c* = {:.6}, v_min = {:.6}, near_tie = {}",
            m.c_star, m.v_min, m.near_tie
        );
    }
}
