//! Build a signal that a measurement matrix cannot distinguish from a given
//! one but whose numerical sparsity is near the dimension-scaled maximum:
//! sparsity cannot be certified from underdetermined measurements alone.
//!
//! Run with: cargo run --release --example adversarial_null_space

use numsparse::bounds::{adversarial_signal, Matrix};
use numsparse::rng::CounterRng;
use numsparse::sparsity::{numerical_sparsity, Signal};

fn main() {
    let (n, p) = (10, 100);
    let mut rng = CounterRng::new(2718);
    let a = Matrix::new(n, p, (0..n * p).map(|_| rng.normal()).collect());

    // a very sparse base signal
    let mut x0v = vec![0.0; p];
    x0v[0] = 1.0;
    x0v[1] = -0.5;
    let x0 = Signal::new(x0v);

    let r = adversarial_signal(&a, &x0, 2.0, 50, &mut rng).unwrap();
    println!("s_2(x0)          = {:.4}", numerical_sparsity(&x0, 2.0));
    println!("s_2(x_tilde)     = {:.4}", r.s_q);
    println!("guaranteed bound = {:.4}", r.bound);
    println!("bound reached    = {}", r.success);
    println!("|A(x_tilde - x0)| = {:.3e}", r.residual);
}
