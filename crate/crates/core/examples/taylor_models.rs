//! Arithmetic on one-variable Taylor models with interval coefficients.
//!
//! `cargo run --example taylor_models`

use semilinear_verify::psa::{
    golden::golden_cases, ps_add, ps_compose, ps_mul, ps_range, ElemFn, PowerSeries1D,
};
use semilinear_verify::{Interval, RationalExp};

fn show(name: &str, m: &PowerSeries1D) {
    let terms: Vec<String> = m.coeffs().iter().map(|c| c.to_string()).collect();
    println!("{name:<10} {}", terms.join(" | "));
}

fn main() {
    let d = Interval::new(0.0, 0.1);
    let u = PowerSeries1D::from_f64(&[1.0, 2.0, -3.0], d).unwrap();
    let v = PowerSeries1D::from_f64(&[1.0, -1.0, 1.0], d).unwrap();
    show("u", &u);
    show("v", &v);
    show("u + v", &ps_add(&u, &v).unwrap());
    show("u * v", &ps_mul(&u, &v).unwrap());
    show("log u", &ps_compose(ElemFn::Log, &u).unwrap());
    show(
        "u^(3/2)",
        &ps_compose(ElemFn::PowQ(RationalExp::new(3, 2).unwrap()), &u).unwrap(),
    );
    println!("range of u: {}", ps_range(&u));

    for c in golden_cases() {
        println!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
    }
}
