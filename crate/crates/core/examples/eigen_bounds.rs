//! Two-sided eigenvalue bounds for the linearization at a Galerkin solution
//! and the resulting bound `K` on the inverse.
//!
//! `cargo run --release --example eigen_bounds -- <modes> <N> <grid> <layers> <degree>`

use std::time::Instant;

use semilinear_verify::galerkin::{newton_solve, GalerkinConfig};
use semilinear_verify::quad::{sup_weight, Subdivision};
use semilinear_verify::spectral::{
    assemble_pencil, c_n, compute_k, two_sided_bounds, verified_discrete_eigs, TAIL_THRESHOLD,
};
use semilinear_verify::RationalExp;

fn main() {
    let arg = |i: usize, d: usize| {
        std::env::args()
            .nth(i)
            .and_then(|s| s.parse().ok())
            .unwrap_or(d)
    };
    let (modes, n, grid, layers, degree) =
        (arg(1, 60), arg(2, 14), arg(3, 16), arg(4, 1), arg(5, 8));
    let u = newton_solve(&GalerkinConfig {
        max_mode: modes,
        ..Default::default()
    })
    .expect("Newton converges");
    let p = RationalExp::new(3, 2).unwrap();
    let sub = Subdivision::new(grid, layers, degree);
    let t = Instant::now();
    let pencil = assemble_pencil(&u, p, n, &sub).expect("Gram matrix");
    let t_gram = t.elapsed();
    let disc = verified_discrete_eigs(&pencil).expect("definite pencil");
    let w = sup_weight(&u, p, &sub).expect("extrema");
    let e = two_sided_bounds(&disc, c_n(n), w);
    println!("dim {} gram {:.1?} sup weight {w}", pencil.dim(), t_gram);
    for (k, d) in disc.iter().enumerate().take(3) {
        println!(
            "lambda_{} in [{}, {}]  (discrete {d})",
            k + 1,
            e.lower[k],
            e.upper[k]
        );
    }
    println!("lambda_dim lower {}", e.lower.last().unwrap());
    match compute_k(&e, Some(TAIL_THRESHOLD)) {
        Ok(k) => println!("K <= {}", k.hi()),
        Err(err) => println!("K failed: {err}"),
    }
}
