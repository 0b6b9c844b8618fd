//! Embedding constants, the projection constant `C_N` and `λ₁`.
//!
//! `cargo run --example constants -- 3`

use semilinear_verify::certify::{embedding_constant, poincare_c2};
use semilinear_verify::pipeline::constants_report;
use semilinear_verify::{Interval, RationalExp};

fn main() {
    let report = constants_report(None, 14).expect("built-in constants");
    println!("{report}");

    let p: RationalExp = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(RationalExp::integer(6));
    match embedding_constant(p, Interval::ONE) {
        Ok(c) => println!("C_{p} on the unit square: {c}"),
        Err(e) => println!("C_{p}: {e}"),
    }
    // on a larger domain the Talenti-type constants grow with the area
    let big = embedding_constant(RationalExp::integer(4), Interval::point(2.0)).unwrap();
    println!("C_4 with area 2: {big}");
    println!("C_2 width: {:e}", poincare_c2().width());
}
