//! Random sine-series integrands and their quadrature reference values.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use semilinear_verify::galerkin::FourierApproximation;

/// `φ₁₁` plus small odd modes up to 5, positive inside: since
/// `|sin kπx| ≤ k sin πx`, the perturbation is below half of `φ₁₁`.
pub fn random_positive(rng: &mut ChaCha8Rng) -> FourierApproximation {
    let mut f = FourierApproximation::zero(5);
    let mut budget = 0.5;
    f.set_coeff(1, 1, 1.0).unwrap();
    for i in [1usize, 3, 5] {
        for j in [1usize, 3, 5] {
            if (i, j) == (1, 1) {
                continue;
            }
            let a: f64 = rng.gen_range(-1.0..1.0) * 0.06 / (i * j) as f64;
            budget -= a.abs() * (i * j) as f64;
            f.set_coeff(i, j, a).unwrap();
        }
    }
    assert!(budget > 0.0);
    f.set_coeff(1, 1, rng.gen_range(0.5..2.0)).unwrap();
    f
}

pub fn random_factor(rng: &mut ChaCha8Rng) -> FourierApproximation {
    let mut f = FourierApproximation::zero(5);
    f.set_coeff(1, 1, 1.0).unwrap();
    for i in [1usize, 3, 5] {
        for j in [1usize, 3, 5] {
            if (i, j) != (1, 1) {
                f.set_coeff(i, j, rng.gen_range(-0.3..0.3)).unwrap();
            }
        }
    }
    f
}

pub fn oracle_power(eta: &FourierApproximation, xi: &FourierApproximation, q: f64) -> f64 {
    super::tanh_sinh_2d(
        &|x, y| eta.eval(x, y).max(0.0).powf(q) * xi.eval(x, y),
        0.0,
        1.0,
        0.0,
        1.0,
    )
}
