//! Taylor models of sine series on a single cell.

use crate::error::Result;
use crate::galerkin::FourierApproximation;
use crate::interval::{Interval, RationalExp};
use crate::psa::{compose, ElemFn, PowerSeries1D, PowerSeries2D};

use super::rect::{Quadrant, Rect};

/// `(kπ)^m / m!` for `k ≤ kmax`, `m ≤ mmax`.
#[derive(Clone, Debug)]
pub struct SineTable {
    mmax: usize,
    pw: Vec<Vec<Interval>>,
}

impl SineTable {
    pub fn new(kmax: usize, mmax: usize) -> Self {
        let pw = (0..=kmax)
            .map(|k| {
                let kpi = Interval::PI * Interval::point(k as f64);
                let mut v = Vec::with_capacity(mmax + 1);
                let mut c = Interval::ONE;
                v.push(c);
                for m in 1..=mmax {
                    c = c * kpi / Interval::point(m as f64);
                    v.push(c);
                }
                v
            })
            .collect();
        SineTable { mmax, pw }
    }

    pub fn kmax(&self) -> usize {
        self.pw.len() - 1
    }

    /// Coefficients in `s` of `sin(kπ(e + s))` for `s ∈ dom`, degree `n`.
    ///
    /// With `divide`, the expansion point must be `0` and the model is of
    /// `sin(kπ s)/s`, still of degree `n`.
    pub fn axis_model(
        &self,
        k: usize,
        e: f64,
        dom: Interval,
        n: usize,
        divide: bool,
    ) -> Vec<Interval> {
        let nn = n + divide as usize;
        assert!(nn <= self.mmax && k <= self.kmax(), "sine table too small");
        debug_assert!(!divide || e == 0.0);
        let ke = Interval::point(k as f64) * Interval::point(e);
        let (s, c) = (ke.sin_pi(), ke.cos_pi());
        let pw = &self.pw[k];
        let mut out = Vec::with_capacity(nn + 1);
        for m in 0..nn {
            let cyc = match m % 4 {
                0 => s,
                1 => c,
                2 => -s,
                _ => -c,
            };
            out.push(pw[m] * cyc);
        }
        // Lagrange remainder: the nn-th derivative somewhere in e + dom
        let arg = (Interval::point(e) + dom) * Interval::point(k as f64)
            + Interval::point(0.5 * nn as f64);
        out.push(pw[nn] * arg.sin_pi());
        if divide {
            out.remove(0);
        }
        out
    }
}

/// A power `ξ^e` of the global coordinate on one cell axis.
#[derive(Clone, Debug)]
pub enum AxisFactor {
    /// The axis starts at the vanishing edge, so `ξ = s` and `ξ^e = s^e`
    /// is integrated exactly.
    Offset(RationalExp),
    /// `(ξ_e + s)^e` as a Taylor model in `s`, with `ξ_e` at least 1.5
    /// cell widths from the edge.
    Model(PowerSeries1D),
}

/// Axis models of all odd modes `1, 3, …, kmax` on one axis of a cell.
pub struct AxisModels {
    pub n: usize,
    /// Expansion point in quadrant coordinates.
    pub e: f64,
    pub dom: Interval,
    /// Models are of `sin(kπξ)/ξ` rather than `sin(kπξ)`.
    pub divided: bool,
    /// `models[k / 2]` belongs to mode `k`.
    pub models: Vec<Vec<Interval>>,
}

impl AxisModels {
    pub fn new(
        table: &SineTable,
        kmax: usize,
        e: f64,
        dom: Interval,
        n: usize,
        divide: bool,
    ) -> Self {
        let at_edge = divide && e == 0.0;
        let mut models: Vec<Vec<Interval>> = (1..=kmax)
            .step_by(2)
            .map(|k| table.axis_model(k, e, dom, n, at_edge))
            .collect();
        if divide && !at_edge {
            let recip = linear_power(e, dom, 2 * n, RationalExp::integer(-1))
                .expect("cell away from the edge");
            for m in &mut models {
                let f = PowerSeries1D::new(std::mem::take(m), dom).expect("nonempty");
                *m = f.mul_full(&recip).reduce_degree(n).coeffs().to_vec();
            }
        }
        AxisModels {
            n,
            e,
            dom,
            divided: divide,
            models,
        }
    }

    pub fn mode(&self, k: usize) -> &[Interval] {
        &self.models[k / 2]
    }

    /// `ξ^e` on this axis.
    pub fn factor(&self, e: RationalExp) -> Result<AxisFactor> {
        axis_factor(self.e, self.dom, self.n, e)
    }
}

/// `ξ^q` with `ξ = e + s`, `s ∈ dom`; models away from the edge get degree
/// `2n` since they are one-dimensional and cheap.
pub fn axis_factor(e: f64, dom: Interval, n: usize, q: RationalExp) -> Result<AxisFactor> {
    if e == 0.0 || q == RationalExp::integer(0) {
        Ok(AxisFactor::Offset(q))
    } else {
        Ok(AxisFactor::Model(linear_power(e, dom, 2 * n, q)?))
    }
}

/// `(e + s)^q` for `s ∈ dom` as a degree-`n` model.
fn linear_power(e: f64, dom: Interval, n: usize, q: RationalExp) -> Result<PowerSeries1D> {
    let mut c = vec![Interval::ZERO; n + 1];
    c[0] = Interval::point(e);
    if n >= 1 {
        c[1] = Interval::ONE;
    }
    let lin = PowerSeries1D::new(c, dom)?;
    if q.is_integer() && q.num() >= 0 && (q.num() as usize) <= n {
        // exact binomial expansion
        let mut acc = PowerSeries1D::constant(Interval::ONE, n, dom);
        for _ in 0..q.num() {
            acc = acc.mul_full(&lin).reduce_degree(n);
        }
        return Ok(acc);
    }
    compose(ElemFn::PowQ(q), &lin)
}

/// Models of every odd sine mode on both axes of one cell.
pub struct CellBasis {
    pub x: AxisModels,
    pub y: AxisModels,
    pub dx: Interval,
    pub dy: Interval,
    pub quadrant: Quadrant,
}

impl CellBasis {
    /// With `reduced`, the models are of `η / (ξζ)` in quadrant coordinates.
    pub fn new(
        table: &SineTable,
        kmax: usize,
        q: Quadrant,
        r: &Rect,
        n: usize,
        reduced: bool,
    ) -> Self {
        let (xe, ye) = r.expansion_point();
        let (dx, dy) = r.local_domain();
        CellBasis {
            x: AxisModels::new(table, kmax, xe, dx, n, reduced),
            y: AxisModels::new(table, kmax, ye, dy, n, reduced),
            dx,
            dy,
            quadrant: q,
        }
    }

    /// `Σ c_ij X_i(s) Y_j(t)` over odd modes, `coef` already carrying any
    /// multiplier; the quadrant sign is applied here.
    pub fn series(
        &self,
        max_mode: usize,
        coef: impl Fn(usize, usize) -> Interval,
    ) -> PowerSeries2D {
        let n = self.x.n;
        let w = n + 1;
        let mut out = vec![Interval::ZERO; w * w];
        let mut z = vec![Interval::ZERO; w];
        for i in (1..=max_mode).step_by(2) {
            z.iter_mut().for_each(|v| *v = Interval::ZERO);
            let mut any = false;
            for j in (1..=max_mode).step_by(2) {
                let c = coef(i, j);
                if c == Interval::ZERO {
                    continue;
                }
                any = true;
                let c = c * Interval::point(self.quadrant.mode_sign(i, j));
                for (zq, &yq) in z.iter_mut().zip(self.y.mode(j)) {
                    *zq += c * yq;
                }
            }
            if !any {
                continue;
            }
            for (p, &xp) in self.x.mode(i).iter().enumerate() {
                for (o, &zq) in out[p * w..(p + 1) * w].iter_mut().zip(&z) {
                    *o += xp * zq;
                }
            }
        }
        PowerSeries2D::new(n, n, out, self.dx, self.dy).expect("square layout")
    }

    pub fn approx(&self, u: &FourierApproximation) -> PowerSeries2D {
        self.series(u.max_mode(), |i, j| Interval::point(u.coeff(i, j)))
    }

    /// Model of `Δû`, coefficients `-π²(i²+j²) a_ij`.
    pub fn laplacian(&self, u: &FourierApproximation) -> PowerSeries2D {
        let pi2 = Interval::PI.sqr();
        self.series(u.max_mode(), |i, j| {
            let a = u.coeff(i, j);
            if a == 0.0 {
                return Interval::ZERO;
            }
            -(pi2 * Interval::point((i * i + j * j) as f64) * Interval::point(a))
        })
    }
}

/// Model of `η` on `r` about its class expansion point, in local
/// coordinates, not divided by the vanishing monomial.
pub fn enclose_on_rect(eta: &FourierApproximation, r: &Rect, n: usize) -> PowerSeries2D {
    let table = SineTable::new(eta.max_mode(), n + 1);
    CellBasis::new(&table, eta.max_mode(), Quadrant::ALL[0], r, n, false).approx(eta)
}

/// Model of `η / (ξζ)` on `r`, in the cell's local coordinates.
pub fn enclose_reduced(eta: &FourierApproximation, r: &Rect, n: usize) -> PowerSeries2D {
    let table = SineTable::new(eta.max_mode(), n + 1);
    CellBasis::new(&table, eta.max_mode(), Quadrant::ALL[0], r, n, true).approx(eta)
}
