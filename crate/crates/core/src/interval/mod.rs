//! Outward-rounded interval arithmetic over binary64.

mod elementary;
mod rational;
pub(crate) mod round;

pub use elementary::{elem, gamma, gamma_half, ElemKind};
pub use rational::RationalExp;

use crate::error::{Error, Result};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// A closed interval `[lo, hi]` with finite binary64 endpoints.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// Binary arithmetic selector for [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// `a op b`, reporting division by an interval containing zero.
pub fn arith(op: Op, a: Interval, b: Interval) -> Result<Interval> {
    match op {
        Op::Add => Ok(a + b),
        Op::Sub => Ok(a - b),
        Op::Mul => Ok(a * b),
        Op::Div => a.try_div(b),
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    /// Encloses π. The binary64 constant lies just below π.
    pub const PI: Interval = Interval {
        lo: std::f64::consts::PI,
        hi: f64::from_bits(std::f64::consts::PI.to_bits() + 1),
    };
    /// Encloses ln 2.
    pub const LN_2: Interval = Interval {
        lo: std::f64::consts::LN_2,
        hi: f64::from_bits(std::f64::consts::LN_2.to_bits() + 1),
    };

    /// Panics if `lo > hi` or an endpoint is not finite.
    pub fn new(lo: f64, hi: f64) -> Self {
        Self::try_new(lo, hi).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::Domain(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Interval {
            lo: lo + 0.0,
            hi: hi + 0.0,
        })
    }

    pub const fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Build from endpoints already known to be ordered and finite.
    pub(crate) fn checked(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "unordered endpoints {lo} {hi}");
        debug_assert!(lo.is_finite() && hi.is_finite(), "overflow {lo} {hi}");
        Interval { lo, hi }
    }

    /// Encloses the rational `num/den`.
    pub fn ratio(num: f64, den: f64) -> Self {
        Interval::checked(round::div_lo(num, den), round::div_hi(num, den))
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn mid(self) -> f64 {
        if self.lo == -self.hi {
            return 0.0;
        }
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound on the radius.
    pub fn rad(self) -> f64 {
        round::sub_hi(self.hi, self.lo) * 0.5
    }

    pub fn width(self) -> f64 {
        round::sub_hi(self.hi, self.lo)
    }

    /// Largest absolute value.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value.
    pub fn mig(self) -> f64 {
        if self.lo > 0.0 {
            self.lo
        } else if self.hi < 0.0 {
            -self.hi
        } else {
            0.0
        }
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(self) -> bool {
        self.contains(0.0)
    }

    pub fn subset_of(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn overlaps(self, other: Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn abs(self) -> Interval {
        Interval {
            lo: self.mig(),
            hi: self.mag(),
        }
    }

    /// `[-r, r]`.
    pub fn symmetric(r: f64) -> Interval {
        let r = r.abs();
        Interval { lo: -r, hi: r }
    }

    /// Widen each endpoint outward by `ulps` units in the last place.
    pub fn inflate_ulps(self, ulps: u32) -> Interval {
        let (mut lo, mut hi) = (self.lo, self.hi);
        for _ in 0..ulps {
            lo = lo.next_down();
            hi = hi.next_up();
        }
        Interval::checked(lo, hi)
    }

    pub fn sqr(self) -> Interval {
        let (a, b) = (self.mig(), self.mag());
        Interval::checked(round::mul_lo(a, a), round::mul_hi(b, b))
    }

    /// Multiply by an exact binary64 scalar.
    pub fn scale(self, s: f64) -> Interval {
        if s >= 0.0 {
            Interval::checked(round::mul_lo(self.lo, s), round::mul_hi(self.hi, s))
        } else {
            Interval::checked(round::mul_lo(self.hi, s), round::mul_hi(self.lo, s))
        }
    }

    pub fn recip(self) -> Result<Interval> {
        Interval::ONE.try_div(self)
    }

    pub fn try_div(self, rhs: Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::Domain(format!(
                "division by {rhs}, which contains zero"
            )));
        }
        let (a, b) = (self, rhs);
        let (lo, hi) = if b.lo > 0.0 {
            if a.lo >= 0.0 {
                (round::div_lo(a.lo, b.hi), round::div_hi(a.hi, b.lo))
            } else if a.hi <= 0.0 {
                (round::div_lo(a.lo, b.lo), round::div_hi(a.hi, b.hi))
            } else {
                (round::div_lo(a.lo, b.lo), round::div_hi(a.hi, b.lo))
            }
        } else if a.lo >= 0.0 {
            (round::div_lo(a.hi, b.hi), round::div_hi(a.lo, b.lo))
        } else if a.hi <= 0.0 {
            (round::div_lo(a.hi, b.lo), round::div_hi(a.lo, b.hi))
        } else {
            (round::div_lo(a.hi, b.hi), round::div_hi(a.lo, b.hi))
        };
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::Domain(format!("overflow in {a} / {b}")));
        }
        Ok(Interval::checked(lo, hi))
    }

    /// Integer power with the dependency between factors respected
    /// (even powers are nonnegative).
    pub fn powi(self, n: i32) -> Interval {
        if n < 0 {
            return self
                .powi(-n)
                .recip()
                .unwrap_or_else(|e| panic!("negative power of {self}: {e}"));
        }
        let n = n as u32;
        if n == 0 {
            return Interval::ONE;
        }
        if n.is_multiple_of(2) {
            let (a, b) = (self.mig(), self.mag());
            Interval::checked(pow_lo_nonneg(a, n), pow_hi_nonneg(b, n))
        } else {
            let lo = if self.lo >= 0.0 {
                pow_lo_nonneg(self.lo, n)
            } else {
                -pow_hi_nonneg(-self.lo, n)
            };
            let hi = if self.hi >= 0.0 {
                pow_hi_nonneg(self.hi, n)
            } else {
                -pow_lo_nonneg(-self.hi, n)
            };
            Interval::checked(lo, hi)
        }
    }

    /// Rational power; see [`RationalExp`].
    pub fn pow(self, e: RationalExp) -> Result<Interval> {
        elementary::pow(self, e)
    }

    pub fn sqrt(self) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(Error::Domain(format!("sqrt of {self}")));
        }
        Ok(Interval::checked(
            round::sqrt_lo(self.lo),
            round::sqrt_hi(self.hi),
        ))
    }

    pub fn exp(self) -> Result<Interval> {
        elementary::exp(self)
    }

    pub fn ln(self) -> Result<Interval> {
        elementary::ln(self)
    }

    pub fn sin(self) -> Interval {
        elementary::sin(self)
    }

    pub fn cos(self) -> Interval {
        elementary::cos(self)
    }

    /// `sin(π x)` with the π factor handled exactly.
    pub fn sin_pi(self) -> Interval {
        elementary::sin_pi(self)
    }

    /// `cos(π x)` with the π factor handled exactly.
    pub fn cos_pi(self) -> Interval {
        elementary::cos_pi(self)
    }

    /// Intersect with `[0, ∞)`, for quantities known to be nonnegative.
    pub fn clamp_nonneg(self) -> Interval {
        Interval {
            lo: self.lo.max(0.0),
            hi: self.hi.max(0.0),
        }
    }

    /// Fused `self + a*b` with a single interval product.
    #[inline]
    pub fn mul_add(self, a: Interval, b: Interval) -> Interval {
        self + a * b
    }
}

fn pow_lo_nonneg(x: f64, n: u32) -> f64 {
    let (mut acc, mut base, mut k) = (1.0f64, x, n);
    loop {
        if k & 1 == 1 {
            acc = round::mul_lo(acc, base);
        }
        k >>= 1;
        if k == 0 {
            return acc;
        }
        base = round::mul_lo(base, base);
    }
}

fn pow_hi_nonneg(x: f64, n: u32) -> f64 {
    let (mut acc, mut base, mut k) = (1.0f64, x, n);
    loop {
        if k & 1 == 1 {
            acc = round::mul_hi(acc, base);
        }
        k >>= 1;
        if k == 0 {
            return acc;
        }
        base = round::mul_hi(base, base);
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval::ZERO
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::new(x, x)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, b: Interval) -> Interval {
        Interval::checked(round::add_lo(self.lo, b.lo), round::add_hi(self.hi, b.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, b: Interval) -> Interval {
        Interval::checked(round::sub_lo(self.lo, b.hi), round::sub_hi(self.hi, b.lo))
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, b: Interval) -> Interval {
        use round::{mul_hi as h, mul_lo as l};
        let a = self;
        let (lo, hi) = if a.lo >= 0.0 {
            if b.lo >= 0.0 {
                (l(a.lo, b.lo), h(a.hi, b.hi))
            } else if b.hi <= 0.0 {
                (l(a.hi, b.lo), h(a.lo, b.hi))
            } else {
                (l(a.hi, b.lo), h(a.hi, b.hi))
            }
        } else if a.hi <= 0.0 {
            if b.lo >= 0.0 {
                (l(a.lo, b.hi), h(a.hi, b.lo))
            } else if b.hi <= 0.0 {
                (l(a.hi, b.hi), h(a.lo, b.lo))
            } else {
                (l(a.lo, b.hi), h(a.lo, b.lo))
            }
        } else if b.lo >= 0.0 {
            (l(a.lo, b.hi), h(a.hi, b.hi))
        } else if b.hi <= 0.0 {
            (l(a.hi, b.lo), h(a.lo, b.lo))
        } else {
            (
                l(a.lo, b.hi).min(l(a.hi, b.lo)),
                h(a.lo, b.lo).max(h(a.hi, b.hi)),
            )
        };
        Interval::checked(lo, hi)
    }
}

/// Panics on division by an interval containing zero; use
/// [`Interval::try_div`] when that can happen.
impl Div for Interval {
    type Output = Interval;
    fn div(self, b: Interval) -> Interval {
        self.try_div(b).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add<f64> for Interval {
    type Output = Interval;
    fn add(self, b: f64) -> Interval {
        self + Interval::point(b)
    }
}

impl Sub<f64> for Interval {
    type Output = Interval;
    fn sub(self, b: f64) -> Interval {
        self - Interval::point(b)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, b: f64) -> Interval {
        self.scale(b)
    }
}

impl AddAssign for Interval {
    fn add_assign(&mut self, b: Interval) {
        *self = *self + b;
    }
}

impl SubAssign for Interval {
    fn sub_assign(&mut self, b: Interval) {
        *self = *self - b;
    }
}

impl MulAssign for Interval {
    fn mul_assign(&mut self, b: Interval) {
        *self = *self * b;
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |a, b| a + b)
    }
}

// Serialized as a pair of shortest round-trip decimal strings. Parsing widens
// each nonzero endpoint by one ulp so a re-read value always contains the
// written one, whichever tool produced the decimals.
impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&format!("{:?}", self.lo))?;
        t.serialize_element(&format!("{:?}", self.hi))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Interval;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a pair of decimal strings [lo, hi]")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Interval, A::Error> {
                let lo: String = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let hi: String = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                Interval::parse_outward(&lo, &hi).map_err(de::Error::custom)
            }
        }
        d.deserialize_tuple(2, V)
    }
}

impl Interval {
    /// Parse decimal endpoints, widening each nonzero one by an ulp.
    pub fn parse_outward(lo: &str, hi: &str) -> Result<Interval> {
        let p = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Usage(format!("bad interval endpoint {s:?}: {e}")))
        };
        let (l, h) = (p(lo)?, p(hi)?);
        let l = if l == 0.0 { 0.0 } else { l.next_down() };
        let h = if h == 0.0 { 0.0 } else { h.next_up() };
        Interval::try_new(l, h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b)
    }

    #[test]
    fn add_example() {
        let r = arith(Op::Add, iv(1.0, 2.0), iv(3.0, 4.0)).unwrap();
        assert!(iv(4.0, 6.0).subset_of(r));
        assert_eq!(r, iv(4.0, 6.0));
    }

    #[test]
    fn mul_sign_cases() {
        let r = arith(Op::Mul, iv(-1.0, 2.0), iv(3.0, 4.0)).unwrap();
        assert_eq!(r, iv(-4.0, 8.0));
        let r = iv(-2.0, 3.0) * iv(-5.0, 7.0);
        assert_eq!(r, iv(-15.0, 21.0));
        let r = iv(-2.0, -1.0) * iv(-5.0, -3.0);
        assert_eq!(r, iv(3.0, 10.0));
    }

    #[test]
    fn mul_example_brute_force() {
        let (a, b) = (iv(0.8, 1.0), iv(0.4, 0.5));
        let r = arith(Op::Mul, a, b).unwrap();
        // every endpoint product, computed exactly with FMA residuals
        for x in [a.lo(), a.hi()] {
            for y in [b.lo(), b.hi()] {
                let p = x * y;
                let e = x.mul_add(y, -p);
                assert!(r.lo() <= p && (r.lo() < p || e >= 0.0));
                assert!(p <= r.hi() && (p < r.hi() || e <= 0.0));
            }
        }
        assert!(r.lo() <= 0.32 && r.hi() >= 0.5);
        assert!(r.width() < 0.18 + 1e-15);
    }

    #[test]
    fn division_by_zero_interval() {
        assert!(matches!(
            arith(Op::Div, iv(1.0, 2.0), iv(-1.0, 1.0)),
            Err(Error::Domain(_))
        ));
        assert!(iv(1.0, 2.0).try_div(iv(0.0, 1.0)).is_err());
        let r = arith(Op::Div, iv(1.0, 2.0), iv(4.0, 8.0)).unwrap();
        assert_eq!(r, iv(0.125, 0.5));
    }

    #[test]
    fn pi_encloses() {
        assert!(Interval::PI.lo() < Interval::PI.hi());
        assert_eq!(Interval::PI.hi(), std::f64::consts::PI.next_up());
    }

    #[test]
    fn powi_even_uses_dependency() {
        assert_eq!(iv(-2.0, 1.0).powi(2), iv(0.0, 4.0));
        assert_eq!(iv(-2.0, 1.0).powi(3), iv(-8.0, 1.0));
        assert_eq!(iv(2.0, 3.0).powi(0), Interval::ONE);
        assert_eq!(iv(2.0, 4.0).powi(-1), iv(0.25, 0.5));
    }

    #[test]
    fn serde_roundtrip_contains() {
        let x = Interval::ratio(1.0, 3.0);
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with("[\"0.333"));
        let y: Interval = serde_json::from_str(&s).unwrap();
        assert!(x.subset_of(y));
        let z: Interval = serde_json::from_str("[\"0\",\"0\"]").unwrap();
        assert_eq!(z, Interval::ZERO);
    }

    #[test]
    fn invalid_construction() {
        assert!(Interval::try_new(2.0, 1.0).is_err());
        assert!(Interval::try_new(f64::NAN, 1.0).is_err());
        assert!(Interval::try_new(0.0, f64::INFINITY).is_err());
    }
}
