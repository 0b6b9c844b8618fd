//! Verified integrals of `η^q ξ` for sine series, against a plain
//! floating-point midpoint rule.
//!
//! `cargo run --release --example verified_integral -- <grid> <degree>`

use semilinear_verify::galerkin::FourierApproximation;
use semilinear_verify::quad::{inner_exact, integral_power, Subdivision};
use semilinear_verify::RationalExp;

fn midpoint(f: impl Fn(f64, f64) -> f64, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += f((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
        }
    }
    s * h * h
}

fn main() {
    let arg = |i: usize, d: usize| {
        std::env::args()
            .nth(i)
            .and_then(|s| s.parse().ok())
            .unwrap_or(d)
    };
    let sub = Subdivision::new(arg(1, 16), 0, arg(2, 6));

    let mut eta = FourierApproximation::zero(3);
    eta.set_coeff(1, 1, 2.0).unwrap();
    eta.set_coeff(3, 1, 0.2).unwrap();
    eta.set_coeff(1, 3, -0.1).unwrap();
    let xi = FourierApproximation::one_mode(1.0);

    for (num, den) in [(1, 2), (3, 2), (1, 3)] {
        let q = RationalExp::new(num, den).unwrap();
        let v = integral_power(&eta, &xi, q, &sub).expect("η positive inside");
        let qf = num as f64 / den as f64;
        let approx = midpoint(
            |x, y| eta.eval(x, y).max(0.0).powf(qf) * xi.eval(x, y),
            2000,
        );
        println!(
            "q = {q}: {v}  width {:.1e}  midpoint rule {approx:.12}",
            v.width()
        );
    }
    println!("(η, ξ) exactly: {}", inner_exact(&eta, &xi));
}
