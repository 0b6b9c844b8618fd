//! Random Taylor models together with one concrete member function.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use semilinear_verify::psa::{PowerSeries1D, PowerSeries2D};
use semilinear_verify::Interval;

/// A random model with narrow interval coefficients and one concrete
/// member function (given by its point coefficients).
pub fn random_model(rng: &mut ChaCha8Rng, n: usize, dom: Interval) -> (PowerSeries1D, Vec<f64>) {
    let mut coeffs = Vec::new();
    let mut member = Vec::new();
    for i in 0..=n {
        let c: f64 = rng.gen_range(-2.0..2.0) / (1 + i) as f64;
        let w: f64 = rng.gen_range(0.0..1e-3);
        let iv = Interval::new(c - w, c + w);
        coeffs.push(iv);
        member.push(c - w + rng.gen::<f64>() * 2.0 * w);
    }
    (PowerSeries1D::new(coeffs, dom).unwrap(), member)
}

pub fn eval_member(c: &[f64], x: Interval) -> Interval {
    let mut acc = Interval::ZERO;
    for &ci in c.iter().rev() {
        acc = Interval::point(ci) + acc * x;
    }
    acc
}

pub fn sample_points(dom: Interval, k: usize) -> impl Iterator<Item = Interval> {
    (0..=k).map(move |i| {
        let t = dom.lo() + (dom.hi() - dom.lo()) * i as f64 / k as f64;
        Interval::point(t.clamp(dom.lo(), dom.hi()))
    })
}

pub fn random_model_2d(
    rng: &mut ChaCha8Rng,
    n: usize,
    dx: Interval,
    dy: Interval,
) -> (PowerSeries2D, Vec<f64>) {
    let mut coeffs = Vec::new();
    let mut member = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let c: f64 = rng.gen_range(-1.0..1.0) / (1 + i + j) as f64;
            let w: f64 = rng.gen_range(0.0..1e-4);
            coeffs.push(Interval::new(c - w, c + w));
            member.push(c - w + rng.gen::<f64>() * 2.0 * w);
        }
    }
    (PowerSeries2D::new(n, n, coeffs, dx, dy).unwrap(), member)
}

pub fn eval_member_2d(m: &[f64], n: usize, x: Interval, y: Interval) -> Interval {
    let mut acc = Interval::ZERO;
    for i in (0..=n).rev() {
        let mut row = Interval::ZERO;
        for j in (0..=n).rev() {
            row = Interval::point(m[i * (n + 1) + j]) + row * y;
        }
        acc = row + acc * x;
    }
    acc
}
