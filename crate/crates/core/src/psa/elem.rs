use super::TaylorModel;
use crate::error::{Error, Result};
use crate::interval::{Interval, RationalExp};

/// Smooth function that can be applied to a Taylor model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElemFn {
    /// `t ↦ t^q`
    PowQ(RationalExp),
    Log,
    Sin,
    Exp,
}

impl ElemFn {
    fn needs_positive(self) -> bool {
        match self {
            ElemFn::PowQ(q) => !(q.is_integer() && q.num() >= 0),
            ElemFn::Log => true,
            _ => false,
        }
    }

    /// Enclosures of `f^(i)(t) / i!` for `i = 0..=n`.
    pub fn taylor_coeffs(self, t: Interval, n: usize) -> Result<Vec<Interval>> {
        if self.needs_positive() && t.lo() <= 0.0 {
            return Err(Error::Positivity {
                cell: "argument of composition".into(),
                range: t,
            });
        }
        let mut out = Vec::with_capacity(n + 1);
        match self {
            ElemFn::PowQ(q) => {
                // binomial(q, i) t^(q-i)
                let mut binom = Interval::ONE;
                for i in 0..=n {
                    if binom == Interval::ZERO {
                        out.push(Interval::ZERO);
                        continue;
                    }
                    out.push(binom * t.pow(q.sub_int(i as i64))?);
                    let num = q.sub_int(i as i64).to_interval();
                    binom = binom * num / Interval::point((i + 1) as f64);
                }
            }
            ElemFn::Log => {
                out.push(t.ln()?);
                let r = t.recip()?;
                let mut rp = Interval::ONE;
                for i in 1..=n {
                    rp *= r;
                    let c = rp / Interval::point(i as f64);
                    out.push(if i % 2 == 1 { c } else { -c });
                }
            }
            ElemFn::Exp => {
                let e = t.exp()?;
                let mut c = e;
                for i in 0..=n {
                    if i > 0 {
                        c = c / Interval::point(i as f64);
                    }
                    out.push(c);
                }
            }
            ElemFn::Sin => {
                let (s, c) = (t.sin(), t.cos());
                let mut fact = Interval::ONE;
                for i in 0..=n {
                    if i > 0 {
                        fact *= Interval::point(i as f64);
                    }
                    let d = match i % 4 {
                        0 => s,
                        1 => c,
                        2 => -s,
                        _ => -c,
                    };
                    out.push(d / fact);
                }
            }
        }
        Ok(out)
    }
}

/// `f(u)` by Taylor expansion about the midpoint `u0` of the constant term:
/// the terms of order below `n` use derivatives at `u0`, the order-`n` term
/// uses the derivative over `hull(u0, range(u))`.
pub fn compose<M: TaylorModel>(f: ElemFn, u: &M) -> Result<M> {
    let n = u.order().max(1);
    let range = u.range();
    let c0 = u.constant_term();
    let u0 = Interval::point(c0.mid());
    let hull = u0.hull(range);
    let at_u0 = f.taylor_coeffs(u0, n - 1)?;
    let top = f.taylor_coeffs(hull, n).map_err(|e| match e {
        Error::Positivity { .. } => Error::Positivity {
            cell: "composition".into(),
            range,
        },
        other => other,
    })?[n];
    let delta = u.with_constant_term(c0 - u0);
    let mut out = u.constant_like(at_u0[0]);
    let mut pow = delta.clone();
    for i in 1..=n {
        let c = if i < n { at_u0[i] } else { top };
        out.add_scaled(&pow, c);
        if i < n {
            pow = pow.mul_reduced(&delta);
        }
    }
    Ok(out)
}
