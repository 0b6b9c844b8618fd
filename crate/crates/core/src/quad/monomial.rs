use crate::error::{Error, Result};
use crate::interval::{Interval, RationalExp};
use crate::psa::PowerSeries2D;

use super::rect::Rect;

/// `coeff · x^x_exp · y^y_exp`, where `coeff` stands for any function with
/// values in the interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonomialTerm {
    pub coeff: Interval,
    pub x_exp: RationalExp,
    pub y_exp: RationalExp,
}

/// `(m, r)` with `[m - r, m + r] ⊇ c`.
pub fn mid_rad(c: Interval) -> (f64, f64) {
    let m = c.mid();
    let r = (Interval::point(c.hi()) - Interval::point(m))
        .hi()
        .max((Interval::point(m) - Interval::point(c.lo())).hi());
    (m, r)
}

/// `∫ s^e ds` and `∫ |s|^e ds` over `[s0, s1]`, with `s0, s1` enclosed.
///
/// A non-integer exponent needs `s0 = 0` exactly; otherwise neither
/// endpoint may straddle zero.
pub fn axis_integrals(e: RationalExp, s0: Interval, s1: Interval) -> Result<(Interval, Interval)> {
    let e1 = e.add(RationalExp::integer(1))?;
    if !e1.is_positive() {
        return Err(Error::Domain(format!("exponent {e} is not integrable")));
    }
    let denom = e1.to_interval();
    if !e.is_integer() {
        if s0 != Interval::ZERO || s1.lo() < 0.0 {
            return Err(Error::Domain(format!(
                "fractional power {e} on a span not starting at 0"
            )));
        }
        let v = s1.pow(e1)? / denom;
        return Ok((v, v));
    }
    let k = e1.num() as i32;
    let signed = (s1.powi(k) - s0.powi(k)) / denom;
    let abs = if s0.lo() >= 0.0 {
        signed
    } else if s1.hi() <= 0.0 {
        (s0.abs().powi(k) - s1.abs().powi(k)) / denom
    } else if s0.hi() <= 0.0 && s1.lo() >= 0.0 {
        (s0.abs().powi(k) + s1.powi(k)) / denom
    } else {
        return Err(Error::Domain("span endpoint straddles zero".into()));
    };
    Ok((signed, abs))
}

/// Encloses `∫∫ t` over the rectangle for every function `t` represented
/// by the term. Evaluated as `mid(c)·I·J ± rad(c)·|I|·|J|`, never as
/// `c·(I·J)`: the coefficient may vary over the rectangle.
pub fn integrate_monomial(t: &MonomialTerm, r: &Rect) -> Result<Interval> {
    let p = |v: f64| Interval::point(v);
    let (ix, ax) = axis_integrals(t.x_exp, p(r.x0), p(r.x1))?;
    let (iy, ay) = axis_integrals(t.y_exp, p(r.y0), p(r.y1))?;
    let (m, rad) = mid_rad(t.coeff);
    let spread = (ax * ay * Interval::point(rad)).hi();
    Ok(Interval::point(m) * ix * iy + Interval::symmetric(spread))
}

/// Tables of `∫ s^(i+off)` and `∫ |s|^(i+off)` for `i = 0..=n`.
#[derive(Clone, Debug)]
pub struct AxisTable {
    pub signed: Vec<Interval>,
    pub abs: Vec<Interval>,
}

impl AxisTable {
    pub fn new(n: usize, off: RationalExp, span: (Interval, Interval)) -> Result<Self> {
        let mut signed = Vec::with_capacity(n + 1);
        let mut abs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let (a, b) = axis_integrals(off.add(RationalExp::integer(i as i64))?, span.0, span.1)?;
            signed.push(a);
            abs.push(b);
        }
        Ok(AxisTable { signed, abs })
    }
}

/// Encloses `∫∫ s^ox t^oy v(s,t)` over the spans for every `v` in the model,
/// term by term with the midpoint/radius split.
pub fn integrate_model(v: &PowerSeries2D, tx: &AxisTable, ty: &AxisTable) -> Interval {
    let (nx, ny) = v.degrees();
    assert!(
        tx.signed.len() > nx && ty.signed.len() > ny,
        "integration table too short"
    );
    let mut centre = Interval::ZERO;
    let mut spread = Interval::ZERO;
    for i in 0..=nx {
        let mut row = Interval::ZERO;
        let mut row_abs = Interval::ZERO;
        for j in 0..=ny {
            let c = v.coeff(i, j);
            if c == Interval::ZERO {
                continue;
            }
            let (m, r) = mid_rad(c);
            row += Interval::point(m) * ty.signed[j];
            row_abs += Interval::point(r) * ty.abs[j];
        }
        centre += row * tx.signed[i];
        spread += row_abs * tx.abs[i];
    }
    centre + Interval::symmetric(spread.hi())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_constant() {
        let t = MonomialTerm {
            coeff: Interval::ONE,
            x_exp: RationalExp::integer(0),
            y_exp: RationalExp::integer(0),
        };
        let v = integrate_monomial(&t, &Rect::new(0.0, 1.0, 0.0, 1.0)).unwrap();
        assert!(v.contains(1.0) && v.width() < 1e-15);
    }

    #[test]
    fn fractional_needs_zero_start() {
        let h = RationalExp::new(1, 2).unwrap();
        assert!(axis_integrals(h, Interval::point(0.5), Interval::ONE).is_err());
        let (a, b) = axis_integrals(h, Interval::ZERO, Interval::ONE).unwrap();
        assert!(a.contains(2.0 / 3.0) && a == b);
    }
}
