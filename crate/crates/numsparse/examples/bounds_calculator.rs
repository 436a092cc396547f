//! Evaluate the closed-form recovery and estimation bounds over a range of
//! measurement budgets.
//!
//! Run with: cargo run --release --example bounds_calculator

use numsparse::bounds::{bpdn_upper_bound, minimax_lower_bound};

fn main() {
    let p = 1000;
    println!("p = {p}");
    println!(
        "{:>6} {:>18} {:>18} {:>18}",
        "n", "recovery (s2=10)", "minimax q<=2", "minimax q>2"
    );
    for n in [50, 100, 200, 400, 800] {
        let upper = bpdn_upper_bound(10.0, n, p, 0.0, 1.0, 1.0).unwrap();
        let (lo2, _) = minimax_lower_bound(n, p, 2.0).unwrap();
        let (lohi, _) = minimax_lower_bound(n, p, f64::INFINITY).unwrap();
        println!("{n:>6} {upper:>18.6} {lo2:>18.6} {lohi:>18.6}");
    }
}
