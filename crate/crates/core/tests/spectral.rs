mod common;

use std::f64::consts::PI;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semilinear_verify::galerkin::FourierApproximation;
use semilinear_verify::psa::PowerSeries2D;
use semilinear_verify::quad::{CellBasis, CellWeight, Rect, Subdivision, WeightModel};
use semilinear_verify::spectral::{
    assemble_pencil, assemble_pencil_with, c_n, compute_k, two_sided_bounds,
    verified_discrete_eigs, EigenEnclosure, Pencil,
};
use semilinear_verify::{Error, Interval, RationalExp};

use common::pencil::{oracle_eigs, pencil_of, random_pencil, rat};

#[test]
fn random_pencils_contain_oracle_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for case in 0..100 {
        let (a, b) = random_pencil(&mut rng);
        let enc = verified_discrete_eigs(&pencil_of(&a, &b, 0.0)).unwrap();
        let oracle = oracle_eigs(&a, &b);
        assert_eq!(enc.len(), oracle.len());
        for (k, (e, (lo, hi))) in enc.iter().zip(&oracle).enumerate() {
            assert!(
                rat(e.lo()) <= *lo && *hi <= rat(e.hi()),
                "case {case}, eigenvalue {k}: {e}"
            );
            assert!(e.width() <= 1e-9 * e.mid(), "case {case}: {e}");
        }
    }
}

#[test]
fn diagonal_pencil_is_decoupled() {
    let a = [2.0, 5.0, 9.0];
    let b = [4.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 3.0];
    let enc = verified_discrete_eigs(&pencil_of(&a, &b, 0.0)).unwrap();
    for (e, want) in enc.iter().zip([0.5, 3.0, 5.0]) {
        assert!(e.contains(want), "{e} vs {want}");
    }
}

#[test]
fn widening_the_gram_matrix_widens_enclosures() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let (a, b) = random_pencil(&mut rng);
        let tight = verified_discrete_eigs(&pencil_of(&a, &b, 0.0)).unwrap();
        let loose = verified_discrete_eigs(&pencil_of(&a, &b, 1e-6)).unwrap();
        for (t, l) in tight.iter().zip(&loose) {
            assert!(t.subset_of(*l), "{t} not in {l}");
        }
        let k = |e: &[Interval]| {
            let enc = two_sided_bounds(e, c_n(14), Interval::ONE);
            compute_k(&enc, None).map(|v| v.hi())
        };
        if let (Ok(kt), Ok(kl)) = (k(&tight), k(&loose)) {
            assert!(kl >= kt);
        }
    }
}

#[test]
fn indefinite_gram_matrix_is_rejected() {
    let a = [1.0, 1.0];
    let b = [-1.0, 0.0, 0.0, 1.0];
    let err = verified_discrete_eigs(&pencil_of(&a, &b, 0.0)).unwrap_err();
    assert!(matches!(err, Error::Definiteness(_)), "{err}");
}

#[test]
fn asymmetric_gram_matrix_is_rejected() {
    let r = Pencil::new(
        vec![(1, 1), (1, 3)],
        vec![Interval::ONE; 2],
        vec![
            Interval::ONE,
            Interval::point(0.5),
            Interval::point(0.25),
            Interval::ONE,
        ],
    );
    assert!(r.is_err());
}

#[test]
fn pencil_dump_lists_both_matrices() {
    let p = pencil_of(&[1.0, 2.0], &[1.0, 0.5, 0.5, 1.0], 0.0);
    let v: serde_json::Value = serde_json::from_str(&p.to_json().unwrap()).unwrap();
    assert_eq!(v["a"].as_array().unwrap().len(), 2);
    assert_eq!(v["b"].as_array().unwrap().len(), 4);
    assert_eq!(v["basis"][1], serde_json::json!([3, 1]));
}

/// Constant weight ignoring the boundary condition.
struct ConstWeight(Interval);

impl CellWeight for ConstWeight {
    fn weight(&self, basis: &CellBasis, _r: &Rect) -> semilinear_verify::Result<WeightModel> {
        Ok(WeightModel {
            model: PowerSeries2D::constant(self.0, 0, 0, basis.dx, basis.dy),
            exponents: (RationalExp::integer(0), RationalExp::integer(0)),
        })
    }
}

#[test]
fn one_dimensional_pencil_is_a_quotient() {
    let (p, c) = (1.5f64, 4.0f64);
    let w = Interval::point(p) * Interval::point(c).sqrt().unwrap();
    let pencil = assemble_pencil_with(&ConstWeight(w), 1, &Subdivision::new(4, 0, 6)).unwrap();
    assert_eq!(pencil.dim(), 1);
    assert!(pencil.a[0].contains(PI * PI / 2.0));
    assert!(pencil.b[0].contains(p * c.sqrt() / 4.0));
    let lam = verified_discrete_eigs(&pencil).unwrap()[0];
    let want = 2.0 * PI * PI / (p * c.sqrt());
    assert!(
        (lam.lo() - 1e-12..=lam.hi() + 1e-12).contains(&want),
        "{lam}"
    );
}

#[test]
fn first_discrete_eigenvalue_decreases_with_n() {
    let mut u = FourierApproximation::zero(3);
    u.set_coeff(1, 1, 20.0).unwrap();
    u.set_coeff(1, 3, -0.8).unwrap();
    u.set_coeff(3, 1, -0.8).unwrap();
    let p = RationalExp::new(3, 2).unwrap();
    let sub = Subdivision::new(6, 0, 6);
    let mut prev = f64::INFINITY;
    for n in [1, 3, 5, 7] {
        let pencil = assemble_pencil(&u, p, n, &sub).unwrap();
        let lam1 = verified_discrete_eigs(&pencil).unwrap()[0];
        assert!(lam1.lo() <= prev, "N = {n}: {lam1} above {prev}");
        prev = lam1.hi();
    }
}

#[test]
fn lower_bound_of_ten() {
    let e = two_sided_bounds(
        &[Interval::point(10.0)],
        Interval::point(0.1),
        Interval::ONE,
    );
    let exact = BigRational::new(100.into(), 11.into());
    assert!(rat(e.lower[0]) <= exact);
    assert!((e.lower[0] - 10.0 / 1.1).abs() <= 1e-12);
    assert_eq!(e.upper[0], 10.0);
}

#[test]
fn zero_weight_keeps_discrete_values() {
    let e = two_sided_bounds(&[Interval::point(10.0)], c_n(14), Interval::ZERO);
    assert_eq!((e.lower[0], e.upper[0]), (10.0, 10.0));
}

#[test]
fn c_n_at_fourteen() {
    let c = c_n(14);
    assert!(c.contains(1.0 / (15.0 * PI)));
    assert!(c.width() < 1e-17);
}

fn enclosure(lower: Vec<f64>, upper: Vec<f64>) -> EigenEnclosure {
    EigenEnclosure {
        discrete: lower
            .iter()
            .zip(&upper)
            .map(|(&l, &u)| Interval::new(l, u))
            .collect(),
        lower,
        upper,
        c_n: c_n(14),
        sup_weight: Interval::ZERO,
    }
}

#[test]
fn k_for_eigenvalue_two() {
    let k = compute_k(&enclosure(vec![2.0], vec![2.0]), None).unwrap();
    assert!(k.contains(2.0) && k.hi() - 2.0 < 1e-15, "{k}");
}

#[test]
fn k_for_eigenvalue_below_one() {
    let k = compute_k(&enclosure(vec![0.5], vec![0.6]), None).unwrap();
    assert!(k.hi() >= 1.5 && k.hi() - 1.5 < 1e-12, "{k}");
}

#[test]
fn eigenvalue_near_one_blocks_k() {
    let r = compute_k(&enclosure(vec![0.9], vec![1.1]), None);
    assert!(matches!(r, Err(Error::Verification(_))));
}

#[test]
fn tail_threshold_is_enforced() {
    let e = enclosure(vec![0.5, 1.9], vec![0.6, 2.0]);
    assert!(compute_k(&e, Some(2.0)).is_err());
    let e = enclosure(vec![0.5, 3.0], vec![0.6, 3.5]);
    let k = compute_k(&e, Some(2.0)).unwrap();
    // |μ| from [0.5, 0.6] is at least 2/3, and so is the tail's
    assert!(k.hi() >= 1.5 && k.hi() < 1.5 + 1e-12, "{k}");
}

proptest! {
    #[test]
    fn two_sided_bounds_are_ordered(
        lo in 0.01f64..1e4,
        w in 0.0f64..10.0,
        n in 1usize..40,
        sup in 0.0f64..1e3,
    ) {
        let d = Interval::new(lo, lo + w);
        let e = two_sided_bounds(&[d], c_n(n), Interval::new(0.0, sup));
        prop_assert!(e.lower[0] > 0.0);
        prop_assert!(e.lower[0] <= e.upper[0]);
        prop_assert!(e.lower[0] <= d.lo());
    }

    #[test]
    fn k_grows_as_enclosures_widen(lo in 1.05f64..50.0, w in 0.0f64..1.0, extra in 0.0f64..0.04) {
        let a = compute_k(&enclosure(vec![lo], vec![lo + w]), None).unwrap();
        let b = compute_k(&enclosure(vec![lo - extra], vec![lo + w + extra]), None).unwrap();
        prop_assert!(b.hi() >= a.hi());
        prop_assert!(a.hi() >= 1.0);
    }
}
