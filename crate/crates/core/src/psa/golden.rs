//! The worked one-variable examples on `u = 1 + 2x - 3x²`, `v = 1 - x + x²`
//! over `[0, 0.1]`, used by the `psa-selftest` command.

use crate::interval::Interval;

use super::{compose, ElemFn, PowerSeries1D};

#[derive(Clone, Debug)]
pub struct GoldenCase {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn case(name: &'static str, passed: bool, got: &PowerSeries1D) -> GoldenCase {
    GoldenCase {
        name,
        passed,
        detail: format!("{:?}", got.coeffs()),
    }
}

fn exact(s: &PowerSeries1D, want: &[f64]) -> bool {
    s.coeffs().len() == want.len()
        && s.coeffs()
            .iter()
            .zip(want)
            .all(|(c, &w)| *c == Interval::point(w))
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let d = Interval::new(0.0, 0.1);
    let u = PowerSeries1D::from_f64(&[1.0, 2.0, -3.0], d).expect("valid");
    let v = PowerSeries1D::from_f64(&[1.0, -1.0, 1.0], d).expect("valid");
    let mut out = Vec::new();

    let s = u.add(&v).expect("same shape");
    out.push(case("sum 2 + x - 2x^2", exact(&s, &[2.0, 1.0, -2.0]), &s));
    let s = u.sub(&v).expect("same shape");
    out.push(case(
        "difference 0 + 3x - 4x^2",
        exact(&s, &[0.0, 3.0, -4.0]),
        &s,
    ));

    let w = u.mul(&v).expect("same shape");
    let c2 = w.coeff(2);
    let target = Interval::new(-4.0, -3.5);
    let ok = w.coeff(0) == Interval::ONE
        && w.coeff(1) == Interval::ONE
        && target.subset_of(c2)
        && c2.subset_of(target.inflate_ulps(4));
    out.push(case("product 1 + x + [-4,-3.5]x^2", ok, &w));

    match compose(ElemFn::Log, &u) {
        Ok(l) => {
            let target = Interval::new(-5.0, -143.0 / 36.0);
            let ok = l.coeff(0) == Interval::ZERO
                && l.coeff(1) == Interval::point(2.0)
                && target.subset_of(l.coeff(2))
                && l.coeff(2).subset_of(target.inflate_ulps(4));
            out.push(case("log 2x + [-5,-143/36]x^2", ok, &l));
        }
        Err(e) => out.push(GoldenCase {
            name: "log 2x + [-5,-143/36]x^2",
            passed: false,
            detail: e.to_string(),
        }),
    }
    out
}
