//! Rigorous enclosures of elementary functions.
//!
//! Every routine reduces its argument exactly (or into a tiny interval),
//! sums a truncated series in interval arithmetic and adds an explicit bound
//! on the truncation error.

use super::{Interval, RationalExp};
use crate::error::{Error, Result};

/// Function selector for [`elem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElemKind {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
}

/// Range enclosure of `f` over `x`.
pub fn elem(f: ElemKind, x: Interval) -> Result<Interval> {
    match f {
        ElemKind::Sin => Ok(sin(x)),
        ElemKind::Cos => Ok(cos(x)),
        ElemKind::Exp => exp(x),
        ElemKind::Log => ln(x),
        ElemKind::Sqrt => x.sqrt(),
    }
}

// ln 2 = LN2_HI + LN2_LO with LN2_HI short enough that k*LN2_HI is exact.
const LN2_HI: f64 = 0.6931471803691238;
const LN2_LO: Interval = Interval {
    lo: 1.9082149292705877e-10,
    hi: 1.908214929270588e-10,
};

fn ln2_times(k: i32) -> Interval {
    Interval::point(LN2_HI * k as f64) + LN2_LO.scale(k as f64)
}

fn pt(x: f64) -> Interval {
    Interval::point(x)
}

/// Upper bound on `r^n / n!` for `r >= 0`.
fn taylor_bound(r: f64, n: u32) -> f64 {
    let mut b = pt(r).powi(n as i32);
    for j in 2..=n {
        b = b / pt(j as f64);
    }
    b.hi()
}

fn exp_point(x: f64) -> Result<Interval> {
    if x > 709.78 {
        return Err(Error::Domain(format!("exp({x}) overflows")));
    }
    if x < -745.2 {
        return Ok(Interval::new(0.0, f64::from_bits(1)));
    }
    if x == 0.0 {
        return Ok(Interval::ONE);
    }
    let k = (x / std::f64::consts::LN_2).round() as i32;
    let r = pt(x) - ln2_times(k);
    const N: u32 = 20;
    let mut acc = Interval::ONE;
    for j in (1..=N).rev() {
        acc = Interval::ONE + acc * r / pt(j as f64);
    }
    // e^r stays below 2 for |r| <= 0.35
    let rem = 2.0 * taylor_bound(r.mag(), N + 1);
    let e = acc + Interval::symmetric(rem);
    let h = k / 2;
    Ok(e.scale(2f64.powi(h)).scale(2f64.powi(k - h)))
}

pub(super) fn exp(x: Interval) -> Result<Interval> {
    let lo = exp_point(x.lo())?.lo().max(0.0);
    let hi = exp_point(x.hi())?.hi();
    Ok(Interval::checked(lo, hi))
}

fn ln_point(x: f64) -> Result<Interval> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("log of nonpositive {x}")));
    }
    let (mut x, mut shift) = (x, 0i32);
    if x < f64::MIN_POSITIVE {
        x *= 2f64.powi(54);
        shift = -54;
    }
    let bits = x.to_bits();
    let mut e = ((bits >> 52) & 0x7ff) as i32 - 1023;
    let mut m = f64::from_bits((bits & ((1u64 << 52) - 1)) | (1023u64 << 52));
    if m > std::f64::consts::SQRT_2 {
        m *= 0.5;
        e += 1;
    }
    e += shift;
    // ln m = 2 atanh(s), s = (m-1)/(m+1), |s| < 0.172; m-1 is exact
    let s = pt(m - 1.0) / (pt(m) + 1.0);
    let s2 = s.sqr();
    const J: u32 = 22;
    let mut acc = Interval::ZERO;
    for j in (0..=J).rev() {
        acc = Interval::ONE / pt((2 * j + 1) as f64) + acc * s2;
    }
    let sm = s.mag();
    let tail = if sm == 0.0 {
        0.0
    } else {
        let t =
            pt(sm).powi(2 * J as i32 + 3) / pt((2 * J + 3) as f64) / (Interval::ONE - pt(sm).sqr());
        t.hi()
    };
    let atanh = s * acc + Interval::symmetric(tail);
    Ok(atanh.scale(2.0) + ln2_times(e))
}

pub(super) fn ln(x: Interval) -> Result<Interval> {
    if x.lo() <= 0.0 {
        return Err(Error::Domain(format!("log of {x}")));
    }
    Ok(Interval::checked(
        ln_point(x.lo())?.lo(),
        ln_point(x.hi())?.hi(),
    ))
}

/// `sin(t)` for `|t| <= π/4`.
fn sin_kernel(t: Interval) -> Interval {
    const K: u32 = 12;
    let t2 = t.sqr();
    let mut acc = Interval::ONE;
    for k in (1..=K).rev() {
        acc = Interval::ONE - acc * t2 / pt((2 * k * (2 * k + 1)) as f64);
    }
    let rem = taylor_bound(t.mag(), 2 * K + 3);
    t * acc + Interval::symmetric(rem)
}

/// `cos(t)` for `|t| <= π/4`.
fn cos_kernel(t: Interval) -> Interval {
    const K: u32 = 12;
    let t2 = t.sqr();
    let mut acc = Interval::ONE;
    for k in (1..=K).rev() {
        acc = Interval::ONE - acc * t2 / pt(((2 * k - 1) * (2 * k)) as f64);
    }
    let rem = taylor_bound(t.mag(), 2 * K + 2);
    acc + Interval::symmetric(rem)
}

fn clamp_unit(x: Interval) -> Interval {
    Interval::checked(x.lo().clamp(-1.0, 1.0), x.hi().clamp(-1.0, 1.0))
}

/// Exact reduction `x = 2n + j/2 + s` with `|s| <= 1/4`; returns `(j mod 4, s)`.
fn reduce_half_periods(x: f64) -> (i32, f64) {
    const BIG: f64 = 4503599627370496.0; // 2^52
    if x.abs() >= BIG {
        // x is an integer; only its parity matters
        let odd = x.abs() < 2.0 * BIG && (x.abs() as u64) & 1 == 1;
        return (if odd { 2 } else { 0 }, 0.0);
    }
    let v = x - 2.0 * (0.5 * x).round();
    let j = (2.0 * v).round();
    let s = v - 0.5 * j;
    ((j as i32).rem_euclid(4), s)
}

fn sin_pi_point(x: f64) -> Interval {
    let (q, s) = reduce_half_periods(x);
    if s == 0.0 {
        return pt([0.0, 1.0, 0.0, -1.0][q as usize]);
    }
    let t = Interval::PI * pt(s);
    clamp_unit(match q {
        0 => sin_kernel(t),
        1 => cos_kernel(t),
        2 => -sin_kernel(t),
        _ => -cos_kernel(t),
    })
}

fn cos_pi_point(x: f64) -> Interval {
    let (q, s) = reduce_half_periods(x);
    if s == 0.0 {
        return pt([1.0, 0.0, -1.0, 0.0][q as usize]);
    }
    let t = Interval::PI * pt(s);
    clamp_unit(match q {
        0 => cos_kernel(t),
        1 => -sin_kernel(t),
        2 => -cos_kernel(t),
        _ => sin_kernel(t),
    })
}

/// Whether some `c + 2k` lies in `[a, b]`.
fn hits_lattice(a: f64, b: f64, c: f64) -> bool {
    let k0 = ((a - c) / 2.0).floor();
    (-1..=2).any(|d| {
        let p = c + 2.0 * (k0 + d as f64);
        a <= p && p <= b
    })
}

pub(super) fn sin_pi(x: Interval) -> Interval {
    if x.is_point() {
        return sin_pi_point(x.lo());
    }
    if x.hi() - x.lo() >= 2.0 || x.mag() >= 1e15 {
        return Interval::new(-1.0, 1.0);
    }
    let r = sin_pi_point(x.lo()).hull(sin_pi_point(x.hi()));
    let hi = if hits_lattice(x.lo(), x.hi(), 0.5) {
        1.0
    } else {
        r.hi()
    };
    let lo = if hits_lattice(x.lo(), x.hi(), -0.5) {
        -1.0
    } else {
        r.lo()
    };
    Interval::checked(lo, hi)
}

pub(super) fn cos_pi(x: Interval) -> Interval {
    if x.is_point() {
        return cos_pi_point(x.lo());
    }
    if x.hi() - x.lo() >= 2.0 || x.mag() >= 1e15 {
        return Interval::new(-1.0, 1.0);
    }
    let r = cos_pi_point(x.lo()).hull(cos_pi_point(x.hi()));
    let hi = if hits_lattice(x.lo(), x.hi(), 0.0) {
        1.0
    } else {
        r.hi()
    };
    let lo = if hits_lattice(x.lo(), x.hi(), 1.0) {
        -1.0
    } else {
        r.lo()
    };
    Interval::checked(lo, hi)
}

pub(super) fn sin(x: Interval) -> Interval {
    if x == Interval::ZERO {
        return x;
    }
    sin_pi(x / Interval::PI)
}

pub(super) fn cos(x: Interval) -> Interval {
    cos_pi(x / Interval::PI)
}

pub(super) fn pow(x: Interval, e: RationalExp) -> Result<Interval> {
    if e.is_integer() {
        let n =
            i32::try_from(e.num()).map_err(|_| Error::Domain(format!("exponent {e} too large")))?;
        if n < 0 && x.contains_zero() {
            return Err(Error::Domain(format!("{x} to negative power {e}")));
        }
        return Ok(x.powi(n));
    }
    if x.lo() < 0.0 {
        return Err(Error::Domain(format!(
            "negative base {x} with fractional exponent {e}"
        )));
    }
    if !e.is_positive() && x.lo() == 0.0 {
        return Err(Error::Domain(format!("{x} to negative power {e}")));
    }
    if e.den() == 2 {
        let n =
            i32::try_from(e.num()).map_err(|_| Error::Domain(format!("exponent {e} too large")))?;
        return Ok(x.sqrt()?.powi(n));
    }
    let ei = e.to_interval();
    let at = |t: f64| -> Result<Interval> {
        if t == 0.0 {
            Ok(Interval::ZERO)
        } else {
            exp(ei * ln_point(t)?)
        }
    };
    let (a, b) = (at(x.lo())?, at(x.hi())?);
    Ok(if e.is_positive() {
        Interval::checked(a.lo(), b.hi())
    } else {
        Interval::checked(b.lo(), a.hi())
    })
}

/// Γ(k) for `k` a positive integer or half-integer.
pub fn gamma_half(k: RationalExp) -> Result<Interval> {
    if !k.is_positive() {
        return Err(Error::Unsupported(format!(
            "gamma at nonpositive argument {k}"
        )));
    }
    match k.den() {
        1 => Ok((2..k.num()).fold(Interval::ONE, |acc, j| acc * pt(j as f64))),
        2 => {
            let n = (k.num() - 1) / 2;
            let root_pi = Interval::PI.sqrt()?;
            Ok((1..=n).fold(root_pi, |acc, j| acc * pt((2 * j - 1) as f64).scale(0.5)))
        }
        _ => Err(Error::Unsupported(format!("gamma at non-half-integer {k}"))),
    }
}

/// Γ(k) for any positive rational `k`: exact products at integers and
/// half-integers, otherwise Stirling's series after shifting the argument
/// past 10, with the first omitted term as the remainder bound.
pub fn gamma(k: RationalExp) -> Result<Interval> {
    if !k.is_positive() {
        return Err(Error::Unsupported(format!(
            "gamma at nonpositive argument {k}"
        )));
    }
    if k.den() <= 2 {
        return gamma_half(k);
    }
    // B_2k / (2k (2k-1)) for k = 1..=8
    const TERMS: [(f64, f64); 8] = [
        (1.0, 12.0),
        (-1.0, 360.0),
        (1.0, 1260.0),
        (-1.0, 1680.0),
        (1.0, 1188.0),
        (-691.0, 360360.0),
        (1.0, 156.0),
        (-3617.0, 122400.0),
    ];
    let x = k.to_interval();
    let shift = (10.0 - k.to_f64()).ceil().max(0.0) as usize;
    let mut prod = Interval::ONE;
    for j in 0..shift {
        prod *= x + pt(j as f64);
    }
    let z = x + pt(shift as f64);
    let lnz = z.ln()?;
    let two_pi = Interval::PI.scale(2.0);
    let mut lg = (z - pt(0.5)) * lnz - z + two_pi.ln()?.scale(0.5);
    let zr = z.recip()?;
    let zr2 = zr.sqr();
    let mut zp = zr;
    for &(a, b) in &TERMS[..7] {
        lg += Interval::ratio(a, b) * zp;
        zp *= zr2;
    }
    let (a, b) = TERMS[7];
    let tail = (Interval::ratio(a.abs(), b) * zp).hi();
    lg += Interval::symmetric(tail);
    Ok(lg.exp()? / prod)
}
