//! Exact eigenvalue brackets for small definite pencils `A v = λ B v`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use semilinear_verify::spectral::Pencil;
use semilinear_verify::Interval;

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

/// Sign of `det(A - λB)`, exactly: the dyadic entries are scaled to
/// integers and the determinant is taken by fraction-free elimination.
pub fn det_sign(a: &[f64], b: &[f64], lam: &BigRational) -> i32 {
    let n = a.len();
    let entries: Vec<BigRational> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let d = if i == j {
                rat(a[i])
            } else {
                BigRational::zero()
            };
            d - lam * rat(b[k])
        })
        .collect();
    let l = entries.iter().map(|e| e.denom().clone()).max().unwrap();
    let mut m: Vec<BigInt> = entries
        .iter()
        .map(|e| e.numer() * (&l / e.denom()))
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
            return 0;
        };
        if piv != c {
            for k in 0..n {
                m.swap(piv * n + k, c * n + k);
            }
            sign = -sign;
        }
        for r in c + 1..n {
            for k in c + 1..n {
                let v = (&m[r * n + k] * &m[c * n + c] - &m[r * n + c] * &m[c * n + k]) / &prev;
                m[r * n + k] = v;
            }
            m[r * n + c] = BigInt::zero();
        }
        prev = m[c * n + c].clone();
    }
    sign * prev.signum().to_i32().unwrap()
}

/// Exact brackets `(lo, hi)` of every eigenvalue of `A v = λ B v`, each of
/// relative width far below binary64 resolution, in increasing order.
pub fn oracle_eigs(a: &[f64], b: &[f64]) -> Vec<(BigRational, BigRational)> {
    let n = a.len();
    // approximate roots from the f64 symmetric problem
    let s: Vec<f64> = a.iter().map(|x| 1.0 / x.sqrt()).collect();
    let c = DMatrix::from_fn(n, n, |i, j| b[i * n + j] * s[i] * s[j]);
    let mut approx: Vec<f64> = SymmetricEigen::new(c)
        .eigenvalues
        .iter()
        .map(|t| 1.0 / t)
        .collect();
    approx.sort_by(f64::total_cmp);
    let sign = |x: &BigRational| det_sign(a, b, x);
    let mut out: Vec<(BigRational, BigRational)> = Vec::new();
    for &r in &approx {
        let mut rel = 1e-13;
        let (mut lo, mut hi) = loop {
            let lo = rat(r * (1.0 - rel));
            let hi = rat(r * (1.0 + rel));
            if sign(&lo) != sign(&hi) {
                break (lo, hi);
            }
            rel *= 4.0;
            assert!(rel < 1e-3, "no sign change near {r}");
        };
        for _ in 0..40 {
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            if sign(&mid) == sign(&lo) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if let Some(prev) = out.last() {
            assert!(prev.1 < lo, "oracle brackets overlap");
        }
        out.push((lo, hi));
    }
    out
}

pub fn random_pencil(rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>) {
    let n = rng.gen_range(1..=6);
    let a: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..50.0)).collect();
    let m: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut b = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = (0..n).map(|k| m[k * n + i] * m[k * n + j]).sum::<f64>()
                + if i == j { 0.2 } else { 0.0 };
            b[i * n + j] = v;
            b[j * n + i] = v;
        }
    }
    (a, b)
}

pub fn pencil_of(a: &[f64], b: &[f64], widen: f64) -> Pencil {
    let n = a.len();
    Pencil::new(
        (0..n).map(|k| (2 * k + 1, 1)).collect(),
        a.iter().map(|&x| Interval::point(x)).collect(),
        b.iter()
            .map(|&x| Interval::point(x) + Interval::symmetric(widen))
            .collect(),
    )
    .unwrap()
}
