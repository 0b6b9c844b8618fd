//! Solve the Galerkin system and print the amplitude and norms of û.
//!
//! `cargo run --release --example galerkin_solve -- 20`

use std::time::Instant;

use semilinear_verify::galerkin::{newton_solve_report, GalerkinConfig};

fn main() {
    let max_mode = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(60);
    let cfg = GalerkinConfig {
        max_mode,
        ..Default::default()
    };
    let t = Instant::now();
    let r = newton_solve_report(&cfg).expect("Newton iteration converges");
    let u = &r.approx;
    println!(
        "modes {max_mode}: {} iterations, relative residual {:e}, {:.1?}",
        r.iterations,
        r.residual,
        t.elapsed()
    );
    println!("a_11 = {:.6}", u.coeff(1, 1));
    println!("u(1/2,1/2) in {}", u.centre_value());
    println!("|u|_L2 = {:.6}", u.l2_norm());
}
