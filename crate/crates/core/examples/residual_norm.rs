//! Enclose the residual norm `‖Δû + û^p‖` of a Galerkin solution.
//!
//! `cargo run --release --example residual_norm -- <modes> <grid> <layers> <degree>`

use std::time::Instant;

use semilinear_verify::galerkin::{newton_solve, GalerkinConfig};
use semilinear_verify::quad::{residual_l2, Subdivision};
use semilinear_verify::RationalExp;

fn main() {
    let arg = |i: usize, d: usize| {
        std::env::args()
            .nth(i)
            .and_then(|s| s.parse().ok())
            .unwrap_or(d)
    };
    let (modes, grid, layers, degree) = (arg(1, 60), arg(2, 16), arg(3, 1), arg(4, 12));
    let u = newton_solve(&GalerkinConfig {
        max_mode: modes,
        ..Default::default()
    })
    .expect("Newton converges");
    let p = RationalExp::new(3, 2).unwrap();
    let sub = Subdivision::new(grid, layers, degree);
    let t = Instant::now();
    let r = residual_l2(&u, p, &sub).expect("positivity verified on every cell");
    println!(
        "grid {grid} layers {layers} degree {degree}: residual in {r} (width {:.2e}) {:.1?}",
        r.width(),
        t.elapsed()
    );
}
