mod common;

use common::Fx;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semilinear_verify::interval::{arith, elem, gamma_half, ElemKind, Op};
use semilinear_verify::{Interval, RationalExp};

fn iv(a: f64, b: f64) -> Interval {
    Interval::new(a, b)
}

fn rat(s: &str) -> RationalExp {
    s.parse().unwrap()
}

#[test]
fn pow_three_halves_encloses_oracle() {
    let r = iv(1.0, 1.2).pow(rat("3/2")).unwrap();
    assert_eq!(r.lo(), 1.0);
    let top = common::pow_rat(1.2, 3, 2);
    assert!(top.inside(Interval::new(1.0, r.hi())));
    assert!((r.hi() - 1.3145341380123987).abs() < 1e-15);
    // cross-check against 1.2 * sqrt(1.2)
    let alt = Fx::from_f64(1.2).mul(&Fx::from_f64(1.2).sqrt());
    assert!((alt.to_f64() - top.to_f64()).abs() < 1e-30);
}

#[test]
fn exp_one_encloses_e() {
    let r = elem(ElemKind::Exp, Interval::ONE).unwrap();
    assert!(common::exp(1.0).inside(r));
    assert!(r.contains(std::f64::consts::E));
    assert!(r.width() <= 4.0 * f64::EPSILON * 2.72);
}

#[test]
fn gamma_half_values() {
    assert_eq!(gamma_half(rat("2")).unwrap(), Interval::ONE);
    let root_pi = common::pi().sqrt();
    let g = gamma_half(rat("1/2")).unwrap();
    assert!(root_pi.inside(g));
    assert!(g.contains(1.7724538509055159));
    let g = gamma_half(rat("3/2")).unwrap();
    assert!(root_pi.div_int(2).inside(g));
    assert!(g.contains(0.886226925452758));
    // Γ(7/2) = 15√π/8
    let g = gamma_half(rat("7/2")).unwrap();
    assert!(root_pi.mul(&Fx::ratio(15, 8)).inside(g));
    assert!(gamma_half(rat("5/3")).is_err());
}

#[test]
fn pi_constant_is_enclosure() {
    assert!(common::pi().inside(Interval::PI));
    assert!(common::ln2().inside(Interval::LN_2));
}

/// Random endpoint drawn from a spread of magnitudes, sometimes exactly
/// zero or an integer.
fn draw(rng: &mut ChaCha8Rng) -> f64 {
    match rng.gen_range(0..10) {
        0 => 0.0,
        1 => rng.gen_range(-20i32..20) as f64,
        _ => {
            let m: f64 = rng.gen_range(-1.0..1.0);
            m * 2f64.powi(rng.gen_range(-30..30))
        }
    }
}

fn draw_interval(rng: &mut ChaCha8Rng) -> Interval {
    let (a, b) = (draw(rng), draw(rng));
    iv(a.min(b), a.max(b))
}

fn pick(rng: &mut ChaCha8Rng, x: Interval) -> f64 {
    match rng.gen_range(0..4) {
        0 => x.lo(),
        1 => x.hi(),
        _ => {
            let t: f64 = rng.gen();
            (x.lo() + t * (x.hi() - x.lo())).clamp(x.lo(), x.hi())
        }
    }
}

fn exact(op: Op, x: f64, y: f64) -> BigRational {
    let (a, b) = (
        BigRational::from_float(x).unwrap(),
        BigRational::from_float(y).unwrap(),
    );
    match op {
        Op::Add => a + b,
        Op::Sub => a - b,
        Op::Mul => a * b,
        Op::Div => a / b,
    }
}

fn contains_exact(r: Interval, v: &BigRational) -> bool {
    BigRational::from_float(r.lo()).unwrap() <= *v && *v <= BigRational::from_float(r.hi()).unwrap()
}

#[test]
fn arithmetic_enclosure_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for op in [Op::Add, Op::Sub, Op::Mul, Op::Div] {
        let mut checked = 0;
        while checked < 1_000_000 {
            let (a, b) = (draw_interval(&mut rng), draw_interval(&mut rng));
            let Ok(r) = arith(op, a, b) else {
                assert!(op == Op::Div && b.contains_zero());
                continue;
            };
            let (x, y) = (pick(&mut rng, a), pick(&mut rng, b));
            assert!(
                contains_exact(r, &exact(op, x, y)),
                "{op:?} {a} {b} at {x} {y} gave {r}"
            );
            checked += 1;
        }
    }
}

#[test]
fn arithmetic_is_tight_within_one_ulp() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20_000 {
        let (a, b) = (draw_interval(&mut rng), draw_interval(&mut rng));
        for op in [Op::Add, Op::Sub, Op::Mul] {
            let r = arith(op, a, b).unwrap();
            let corners = [
                (a.lo(), b.lo()),
                (a.lo(), b.hi()),
                (a.hi(), b.lo()),
                (a.hi(), b.hi()),
            ];
            let vals: Vec<BigRational> = corners.iter().map(|&(x, y)| exact(op, x, y)).collect();
            let lo = vals.iter().min().unwrap();
            let hi = vals.iter().max().unwrap();
            // one step inward from each endpoint must cut the exact range
            if r.lo() != 0.0 {
                assert!(
                    BigRational::from_float(r.lo().next_up()).unwrap() > *lo,
                    "{op:?} {a} {b} -> {r}"
                );
            }
            if r.hi() != 0.0 {
                assert!(
                    BigRational::from_float(r.hi().next_down()).unwrap() < *hi,
                    "{op:?} {a} {b} -> {r}"
                );
            }
        }
    }
}

#[test]
fn elementary_functions_contain_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let x: f64 = rng.gen_range(-30.0..30.0);
        let r = elem(ElemKind::Exp, Interval::point(x)).unwrap();
        assert!(common::exp(x).inside(r), "exp {x} {r}");
        assert!(r.width() <= 1e-14 * r.hi());

        let y = 2f64.powi(rng.gen_range(-40..40)) * rng.gen_range(0.5..1.0);
        let r = elem(ElemKind::Log, Interval::point(y)).unwrap();
        assert!(common::ln(y).inside(r), "ln {y} {r}");
        assert!(r.width() <= 1e-14 * r.mag().max(1e-3));

        let z: f64 = rng.gen_range(-6.0..6.0);
        let s = Interval::point(z).sin_pi();
        let c = Interval::point(z).cos_pi();
        assert!(common::sin_pi(z).inside(s), "sin_pi {z} {s}");
        assert!(common::cos_pi(z).inside(c), "cos_pi {z} {c}");
        assert!(s.width() < 1e-15 && c.width() < 1e-15);

        let w: f64 = rng.gen_range(0.0..100.0);
        let r = elem(ElemKind::Sqrt, Interval::point(w)).unwrap();
        assert!(Fx::from_f64(w).sqrt().inside(r));

        let t: f64 = rng.gen_range(-10.0..10.0);
        let r = elem(ElemKind::Sin, Interval::point(t)).unwrap();
        let (so, co) = common::sin_cos(&Fx::from_f64(t));
        assert!(so.inside(r), "sin {t} {r}");
        assert!(co.inside(elem(ElemKind::Cos, Interval::point(t)).unwrap()));
    }
}

#[test]
fn fractional_pow_contains_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let x: f64 = rng.gen_range(0.01..50.0);
        let (a, b) = (rng.gen_range(-7i64..8), rng.gen_range(1i64..6));
        let e = RationalExp::new(a, b).unwrap();
        let r = Interval::point(x).pow(e).unwrap();
        assert!(common::pow_rat(x, a, b).encloses_in(r), "{x}^{e} -> {r}");
    }
}

#[test]
fn interval_sin_covers_sampled_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..2000 {
        let a: f64 = rng.gen_range(-4.0..4.0);
        let w: f64 = rng.gen_range(0.0..2.5);
        let x = iv(a, a + w);
        let (s, c) = (x.sin_pi(), x.cos_pi());
        for k in 0..=20 {
            let t = a + w * k as f64 / 20.0;
            let t = t.min(x.hi());
            assert!(Interval::point(t).sin_pi().subset_of(s));
            assert!(Interval::point(t).cos_pi().subset_of(c));
        }
    }
}

#[test]
fn integer_pow_close_to_repeated_multiplication() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..5000 {
        let x = draw_interval(&mut rng);
        if x.mag() > 1e6 {
            continue;
        }
        let n = rng.gen_range(1..8);
        let p = x.pow(RationalExp::integer(n as i64)).unwrap();
        let mut rep = x;
        for _ in 1..n {
            rep = arith(Op::Mul, rep, x).unwrap();
        }
        // the power respects the dependency between factors, so it is the
        // tighter of the two, and never loses more than 4 ulps against it
        assert!(p.subset_of(rep.inflate_ulps(4)), "{x}^{n}: {p} vs {rep}");
        for k in 0..=8 {
            let t = x.lo() + (x.hi() - x.lo()) * k as f64 / 8.0;
            let t = t.clamp(x.lo(), x.hi());
            let v = BigRational::from_float(t).unwrap().pow(n);
            assert!(contains_exact(p, &v));
        }
    }
}

fn nested() -> impl Strategy<Value = (Interval, Interval)> {
    (-1e3f64..1e3, 0f64..1e3, 0f64..1e2, 0f64..1e2).prop_map(|(a, w, l, r)| {
        let inner = iv(a, a + w);
        (inner, iv(a - l, a + w + r))
    })
}

proptest! {
    #[test]
    fn inclusion_monotone((a, a2) in nested(), (b, b2) in nested()) {
        for op in [Op::Add, Op::Sub, Op::Mul] {
            let r = arith(op, a, b).unwrap();
            let r2 = arith(op, a2, b2).unwrap();
            prop_assert!(r.subset_of(r2));
        }
        if !b2.contains_zero() {
            prop_assert!(arith(Op::Div, a, b).unwrap().subset_of(arith(Op::Div, a2, b2).unwrap()));
        }
        prop_assert!(a.sin_pi().subset_of(a2.sin_pi()));
        prop_assert!(a.cos_pi().subset_of(a2.cos_pi()));
        prop_assert!(a.sqr().subset_of(a2.sqr()));
        if a2.lo() > 0.0 {
            prop_assert!(a.ln().unwrap().subset_of(a2.ln().unwrap()));
            let q = RationalExp::new(2, 3).unwrap();
            prop_assert!(a.pow(q).unwrap().subset_of(a2.pow(q).unwrap()));
        }
        let (s, s2) = (a.scale(1e-3), a2.scale(1e-3));
        prop_assert!(s.exp().unwrap().subset_of(s2.exp().unwrap()));
    }

    #[test]
    fn serialization_roundtrip_contains(a in -1e300f64..1e300, w in 0f64..1e10) {
        let x = iv(a, a + w);
        let y: Interval = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        prop_assert!(x.subset_of(y));
    }
}
