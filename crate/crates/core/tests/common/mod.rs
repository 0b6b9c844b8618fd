//! Independent reference values for the integration tests.
//!
//! `Fx` is a bracket `[lo, hi] · 2^-P` of big integers with directed
//! rounding, accurate to far beyond binary64. It shares no code with the
//! library's interval type.

#![allow(dead_code)]

pub mod models;
pub mod pencil;
pub mod sines;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use semilinear_verify::Interval;

pub const P: u32 = 320;

fn one_scaled() -> BigInt {
    BigInt::one() << P
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -num_integer::Integer::div_floor(&-a, b)
}

#[derive(Clone, Debug)]
pub struct Fx {
    pub lo: BigInt,
    pub hi: BigInt,
}

impl Fx {
    pub fn exact_rat(r: &BigRational) -> Fx {
        let n = r.numer() << P;
        Fx {
            lo: div_floor(&n, r.denom()),
            hi: div_ceil(&n, r.denom()),
        }
    }

    pub fn from_f64(x: f64) -> Fx {
        Fx::exact_rat(&BigRational::from_float(x).unwrap())
    }

    pub fn int(k: i64) -> Fx {
        let v = BigInt::from(k) << P;
        Fx {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn ratio(a: i64, b: i64) -> Fx {
        Fx::exact_rat(&BigRational::new(a.into(), b.into()))
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn neg(&self) -> Fx {
        Fx {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Fx) -> Fx {
        let s = one_scaled();
        let prods = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = prods.iter().min().unwrap();
        let hi = prods.iter().max().unwrap();
        Fx {
            lo: div_floor(lo, &s),
            hi: div_ceil(hi, &s),
        }
    }

    /// Requires `o` bounded away from zero.
    pub fn div(&self, o: &Fx) -> Fx {
        assert!(
            o.lo.is_positive() || o.hi.is_negative(),
            "oracle division by bracket around 0"
        );
        let cands = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let lo = cands
            .iter()
            .map(|(a, b)| div_floor(&(*a << P), b))
            .min()
            .unwrap();
        let hi = cands
            .iter()
            .map(|(a, b)| div_ceil(&(*a << P), b))
            .max()
            .unwrap();
        Fx { lo, hi }
    }

    pub fn div_int(&self, k: i64) -> Fx {
        self.div(&Fx::int(k))
    }

    pub fn widen(&self, e: &BigInt) -> Fx {
        Fx {
            lo: &self.lo - e,
            hi: &self.hi + e,
        }
    }

    pub fn hull(&self, o: &Fx) -> Fx {
        Fx {
            lo: (&self.lo).min(&o.lo).clone(),
            hi: (&self.hi).max(&o.hi).clone(),
        }
    }

    pub fn mag(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn to_f64(&self) -> f64 {
        let m = (&self.lo + &self.hi) >> 1u32;
        BigRational::new(m, one_scaled()).to_f64().unwrap()
    }

    pub fn width_f64(&self) -> f64 {
        BigRational::new(&self.hi - &self.lo, one_scaled())
            .to_f64()
            .unwrap()
    }

    fn lo_rat(&self) -> BigRational {
        BigRational::new(self.lo.clone(), one_scaled())
    }

    fn hi_rat(&self) -> BigRational {
        BigRational::new(self.hi.clone(), one_scaled())
    }

    /// Whether the library interval contains this whole bracket.
    pub fn inside(&self, x: Interval) -> bool {
        BigRational::from_float(x.lo()).unwrap() <= self.lo_rat()
            && self.hi_rat() <= BigRational::from_float(x.hi()).unwrap()
    }

    /// Soundness check for a library result: the bracket must lie inside
    /// `x`, except that a point result may sit inside the bracket (the
    /// oracle cannot certify exact values).
    pub fn encloses_in(&self, x: Interval) -> bool {
        if x.is_point() {
            let v = BigRational::from_float(x.lo()).unwrap();
            return self.lo_rat() <= v && v <= self.hi_rat();
        }
        self.inside(x)
    }

    pub fn sqrt(&self) -> Fx {
        assert!(!self.lo.is_negative());
        let lo = (&self.lo << P).sqrt();
        let mut hi = (&self.hi << P).sqrt();
        if &hi * &hi < (&self.hi << P) {
            hi += 1;
        }
        Fx { lo, hi }
    }
}

fn tiny() -> BigInt {
    BigInt::one() << 8u32
}

/// exp on a bracket with |x| <= 1/2 by Taylor series.
fn exp_small(x: &Fx) -> Fx {
    let mut sum = Fx::int(1);
    let mut term = Fx::int(1);
    for k in 1..120 {
        term = term.mul(x).div_int(k);
        sum = sum.add(&term);
        if term.mag() < tiny() {
            // remaining terms sum below twice the last one
            return sum.widen(&(term.mag() * 2 + tiny()));
        }
    }
    panic!("exp series did not converge")
}

pub fn exp(x: f64) -> Fx {
    let mut s = 0;
    while x.abs() / 2f64.powi(s) > 0.5 {
        s += 1;
    }
    let y = Fx::from_f64(x).div(&Fx::int(1i64 << s));
    let mut r = exp_small(&y);
    for _ in 0..s {
        r = r.mul(&r);
    }
    r
}

/// atanh(s) for |s| <= 1/3.
fn atanh(s: &Fx) -> Fx {
    let s2 = s.mul(s);
    let mut pow = s.clone();
    let mut sum = s.clone();
    for k in 1..400 {
        pow = pow.mul(&s2);
        let t = pow.div_int(2 * k + 1);
        sum = sum.add(&t);
        if t.mag() < tiny() {
            return sum.widen(&(t.mag() * 2 + tiny()));
        }
    }
    panic!("atanh series did not converge")
}

pub fn ln2() -> Fx {
    atanh(&Fx::ratio(1, 3)).add(&atanh(&Fx::ratio(1, 3)))
}

pub fn ln(x: f64) -> Fx {
    assert!(x > 0.0);
    let mut m = Fx::from_f64(x);
    let mut e = 0i64;
    let two = Fx::int(2);
    while m.hi > (BigInt::from(3) << (P - 1)) {
        m = m.div(&two);
        e += 1;
    }
    while m.lo < (BigInt::from(3) << (P - 2)) {
        m = m.mul(&two);
        e -= 1;
    }
    let one = Fx::int(1);
    let s = m.sub(&one).div(&m.add(&one));
    let a = atanh(&s);
    a.add(&a).add(&ln2().mul(&Fx::int(e)))
}

fn atan_inv(k: i64) -> Fx {
    let x = Fx::ratio(1, k);
    let x2 = x.mul(&x);
    let mut pow = x.clone();
    let mut sum = x.clone();
    for j in 1..400 {
        pow = pow.mul(&x2).neg();
        let t = pow.div_int(2 * j + 1);
        sum = sum.add(&t);
        if t.mag() < tiny() {
            return sum.widen(&(t.mag() + tiny()));
        }
    }
    panic!("atan series did not converge")
}

pub fn pi() -> Fx {
    atan_inv(5)
        .mul(&Fx::int(16))
        .sub(&atan_inv(239).mul(&Fx::int(4)))
}

/// sin and cos of a bracket by Taylor series (any moderate magnitude).
pub fn sin_cos(t: &Fx) -> (Fx, Fx) {
    let mut s = t.clone();
    let mut c = Fx::int(1);
    let mut term = t.clone();
    let mut k = 1i64;
    loop {
        // term = t^k / k!
        term = term.mul(t).div_int(k + 1);
        k += 1;
        let sign_c = if (k / 2) % 2 == 1 { -1 } else { 1 };
        c = if sign_c < 0 {
            c.sub(&term)
        } else {
            c.add(&term)
        };
        term = term.mul(t).div_int(k + 1);
        k += 1;
        let sign_s = if (k / 2) % 2 == 1 { -1 } else { 1 };
        s = if sign_s < 0 {
            s.sub(&term)
        } else {
            s.add(&term)
        };
        if k > 20 && term.mag() < tiny() {
            let e = term.mag() * 2 + tiny();
            return (s.widen(&e), c.widen(&e));
        }
        assert!(k < 2000, "sin series did not converge");
    }
}

pub fn sin_pi(x: f64) -> Fx {
    sin_cos(&pi().mul(&Fx::from_f64(x))).0
}

pub fn cos_pi(x: f64) -> Fx {
    sin_cos(&pi().mul(&Fx::from_f64(x))).1
}

/// x^(a/b) for x > 0.
pub fn pow_rat(x: f64, a: i64, b: i64) -> Fx {
    let l = ln(x).mul(&Fx::ratio(a, b));
    // exp on a bracket: evaluate at both ends
    let lo = exp_fx_point(&l.lo);
    let hi = exp_fx_point(&l.hi);
    Fx {
        lo: lo.lo,
        hi: hi.hi,
    }
}

fn exp_fx_point(v: &BigInt) -> Fx {
    let x = Fx {
        lo: v.clone(),
        hi: v.clone(),
    };
    let mut s = 0u32;
    let half = BigInt::one() << (P - 1);
    while (x.lo.abs() >> s) > half {
        s += 1;
    }
    let y = x.div(&Fx::int(1i64 << s));
    let mut r = exp_small(&y);
    for _ in 0..s {
        r = r.mul(&r);
    }
    r
}

/// Nested tanh-sinh quadrature on [0,1]² of a function that may have
/// algebraic endpoint singularities.
pub fn tanh_sinh_2d(f: &dyn Fn(f64, f64) -> f64, x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    tanh_sinh(&|x| tanh_sinh(&|y| f(x, y), y0, y1), x0, x1)
}

/// Tanh-sinh rule on [a,b], refined until successive levels agree.
pub fn tanh_sinh(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let h2 = 0.5 * (b - a);
    let pi2 = std::f64::consts::FRAC_PI_2;
    let node = |t: f64| -> f64 {
        let s = pi2 * t.sinh();
        let ch = s.cosh();
        let w = pi2 * t.cosh() / (ch * ch);
        // distance to the nearer endpoint, computed without cancellation
        let d = h2 / (s.abs().exp() * ch);
        let u = if t >= 0.0 { b - d } else { a + d };
        if u <= a || u >= b {
            return 0.0;
        }
        w * f(u)
    };
    let tmax = 4.0;
    let mut h = 0.5;
    let mut sum = node(0.0);
    let mut t = h;
    while t <= tmax {
        sum += node(t) + node(-t);
        t += h;
    }
    let mut prev = sum * h * h2;
    for _ in 0..8 {
        h *= 0.5;
        let mut t = h;
        while t <= tmax {
            sum += node(t) + node(-t);
            t += 2.0 * h;
        }
        let cur = sum * h * h2;
        if (cur - prev).abs() <= 1e-15 * cur.abs().max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    prev
}
