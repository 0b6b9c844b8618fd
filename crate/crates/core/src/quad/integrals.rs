use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galerkin::FourierApproximation;
use crate::interval::{Interval, RationalExp};
use crate::psa::{compose, ElemFn, PowerSeries1D, PowerSeries2D};

use super::cell::{axis_factor, AxisFactor, CellBasis, SineTable};
use super::monomial::{integrate_model, mid_rad, AxisTable};
use super::rect::{Quadrant, Rect, Subdivision};

fn q_int(k: i64) -> RationalExp {
    RationalExp::integer(k)
}

fn positivity(model: &PowerSeries2D, what: &str) -> Result<()> {
    let range = model.range();
    if range.lo() > 0.0 {
        Ok(())
    } else {
        Err(Error::Positivity {
            cell: what.into(),
            range,
        })
    }
}

/// Runs `job` on every cell of every quadrant, bisecting cells that fail a
/// positivity check. Results come back per quadrant in a fixed order.
pub(crate) fn map_cells<T, F>(sub: &Subdivision, job: F) -> Result<Vec<Vec<T>>>
where
    T: Send,
    F: Fn(Quadrant, &Rect) -> Result<T> + Sync,
{
    fn go<T, F: Fn(Quadrant, &Rect) -> Result<T>>(
        job: &F,
        q: Quadrant,
        r: &Rect,
        depth: usize,
        out: &mut Vec<T>,
    ) -> Result<()> {
        match job(q, r) {
            Ok(t) => {
                out.push(t);
                Ok(())
            }
            Err(Error::Positivity { .. }) if depth > 0 => {
                let (a, b) = r.bisect();
                go(job, q, &a, depth - 1, out)?;
                go(job, q, &b, depth - 1, out)
            }
            Err(Error::Positivity { range, .. }) => Err(Error::Positivity {
                cell: format!("cell {r} of quadrant {q:?} after refinement"),
                range,
            }),
            Err(e) => Err(e),
        }
    }
    let (quads, _) = sub.quadrants();
    quads
        .iter()
        .map(|&q| {
            let per_cell: Result<Vec<Vec<T>>> = sub
                .cells()
                .par_iter()
                .map(|r| {
                    let mut out = Vec::new();
                    go(&job, q, r, sub.max_refine, &mut out)?;
                    Ok(out)
                })
                .collect();
            Ok(per_cell?.into_iter().flatten().collect())
        })
        .collect()
}

fn sum_cells(sub: &Subdivision, per_quadrant: Vec<Vec<Interval>>) -> Interval {
    let (_, factor) = sub.quadrants();
    let total: Interval = per_quadrant
        .into_iter()
        .map(|v| v.into_iter().sum::<Interval>())
        .sum();
    total * Interval::point(factor)
}

fn tables(
    r: &Rect,
    nx: usize,
    ny: usize,
    ox: RationalExp,
    oy: RationalExp,
) -> Result<(AxisTable, AxisTable)> {
    let (sx, sy) = r.local_spans();
    Ok((AxisTable::new(nx, ox, sx)?, AxisTable::new(ny, oy, sy)?))
}

/// Multiplies `m` by the factor's model along one axis, or returns the
/// exact offset to integrate with.
fn apply_factor(m: PowerSeries2D, f: &AxisFactor, along_x: bool) -> (PowerSeries2D, RationalExp) {
    match f {
        AxisFactor::Offset(e) => (m, *e),
        AxisFactor::Model(p) => {
            let (dx, dy) = m.domain();
            let t = if along_x {
                PowerSeries2D::tensor(p, &PowerSeries1D::constant(Interval::ONE, 0, dy))
            } else {
                PowerSeries2D::tensor(&PowerSeries1D::constant(Interval::ONE, 0, dx), p)
            };
            (m.mul_full(&t), q_int(0))
        }
    }
}

/// `∫_r ξ^… ζ^… m` with the coordinate powers given as per-axis factors.
fn integrate_factored(
    m: PowerSeries2D,
    fx: &AxisFactor,
    fy: &AxisFactor,
    r: &Rect,
) -> Result<Interval> {
    let (m, ox) = apply_factor(m, fx, true);
    let (m, oy) = apply_factor(m, fy, false);
    let (nx, ny) = m.degrees();
    let (tx, ty) = tables(r, nx, ny, ox, oy)?;
    Ok(integrate_model(&m, &tx, &ty))
}

fn rect_factors(r: &Rect, n: usize, q: RationalExp) -> Result<(AxisFactor, AxisFactor)> {
    let (xe, ye) = r.expansion_point();
    let (dx, dy) = r.local_domain();
    Ok((axis_factor(xe, dx, n, q)?, axis_factor(ye, dy, n, q)?))
}

/// `∫_r η^q ξ` in local coordinates, where `eta_reduced` models `η/(ξζ)`
/// in quadrant coordinates and `xi` models the second factor.
pub fn integrate_rect(
    eta_reduced: &PowerSeries2D,
    xi: &PowerSeries2D,
    q: RationalExp,
    r: &Rect,
) -> Result<Interval> {
    positivity(eta_reduced, "reduced base")?;
    let pq = compose(ElemFn::PowQ(q), eta_reduced)?;
    let (fx, fy) = rect_factors(r, eta_reduced.degrees().0, q)?;
    integrate_factored(pq.mul_full(xi), &fx, &fy, r)
}

fn kmax(modes: &[usize]) -> usize {
    modes.iter().copied().max().unwrap_or(1) | 1
}

/// Per-quadrant sums of `∫ η^q ξ`, before the symmetry factor.
pub fn integral_power_quadrants(
    eta: &FourierApproximation,
    xi: &FourierApproximation,
    q: RationalExp,
    sub: &Subdivision,
) -> Result<Vec<Interval>> {
    let n = sub.degree;
    let km = kmax(&[eta.max_mode(), xi.max_mode()]);
    let table = SineTable::new(km, n + 1);
    let parts = map_cells(sub, |quad, r| {
        let eta_r = CellBasis::new(&table, km, quad, r, n, true).approx(eta);
        let xi_m = CellBasis::new(&table, km, quad, r, n, false).approx(xi);
        integrate_rect(&eta_r, &xi_m, q, r)
    })?;
    Ok(parts.into_iter().map(|v| v.into_iter().sum()).collect())
}

/// Encloses `∫_Ω η^q ξ` for `η` positive inside the unit square.
pub fn integral_power(
    eta: &FourierApproximation,
    xi: &FourierApproximation,
    q: RationalExp,
    sub: &Subdivision,
) -> Result<Interval> {
    let (_, factor) = sub.quadrants();
    let total: Interval = integral_power_quadrants(eta, xi, q, sub)?.into_iter().sum();
    Ok(total * Interval::point(factor))
}

/// `∫_r (Δû + û^p)²` on one cell. With `η̃ = û/(ξζ)` and `L̃ = Δû/(ξζ)`
/// the integrand is `(ξζ)² (L̃ + (ξζ)^(p-1) η̃^p)²`. Away from both edges the
/// bracket is formed as one model; on an edge cell the three expanded terms
/// carry exact fractional offsets instead.
pub fn residual_sq_cell(
    basis: &CellBasis,
    u: &FourierApproximation,
    p: RationalExp,
    r: &Rect,
) -> Result<Interval> {
    let n = basis.x.n;
    let eta = basis.approx(u);
    positivity(&eta, "reduced approximation")?;
    let lap = basis.laplacian(u);
    let up = compose(ElemFn::PowQ(p), &eta)?;
    let q = p.sub(q_int(1))?;
    if basis.x.e != 0.0 && basis.y.e != 0.0 {
        let (AxisFactor::Model(gx), AxisFactor::Model(gy)) =
            (basis.x.factor(q)?, basis.y.factor(q)?)
        else {
            unreachable!("cells off the edges get model factors")
        };
        let g = PowerSeries2D::tensor(&gx, &gy);
        let res = lap.add(&up.mul_full(&g).reduce_degree(n, n))?;
        let sq = res.mul_full(&res);
        return integrate_factored(
            sq,
            &basis.x.factor(q_int(2))?,
            &basis.y.factor(q_int(2))?,
            r,
        );
    }
    let mut total = Interval::ZERO;
    for (m, scale, e) in [
        (lap.mul_full(&lap), 1.0, q_int(2)),
        (lap.mul_full(&up), 2.0, q_int(1).add(p)?),
        (up.mul_full(&up), 1.0, p.add(p)?),
    ] {
        let v = integrate_factored(m, &basis.x.factor(e)?, &basis.y.factor(e)?, r)?;
        total += v * Interval::point(scale);
    }
    Ok(total)
}

/// Encloses `‖Δû + û^p‖²_L²` by integrating the squared residual model
/// cell by cell.
pub fn residual_sq(
    u: &FourierApproximation,
    p: RationalExp,
    sub: &Subdivision,
) -> Result<Interval> {
    if u.terms().all(|t| t.2 == 0.0) {
        return Ok(Interval::ZERO);
    }
    let n = sub.degree;
    let km = u.max_mode() | 1;
    let table = SineTable::new(km, n + 1);
    let parts = map_cells(sub, |quad, r| {
        let basis = CellBasis::new(&table, km, quad, r, n, true);
        residual_sq_cell(&basis, u, p, r)
    })?;
    Ok(sum_cells(sub, parts).clamp_nonneg())
}

/// Encloses `‖Δû + û^p‖_L²`.
pub fn residual_l2(
    u: &FourierApproximation,
    p: RationalExp,
    sub: &Subdivision,
) -> Result<Interval> {
    residual_sq(u, p, sub)?.sqrt()
}

/// The same norm from `∫(Δû)² + 2∫Δû·û^p + ∫û^(2p)`: the first term by
/// orthogonality, the last in closed form when `2p = 3`. The large terms
/// cancel, so this enclosure is much wider than [`residual_l2`].
pub fn residual_l2_expanded(
    u: &FourierApproximation,
    p: RationalExp,
    sub: &Subdivision,
) -> Result<Interval> {
    let lap = u.laplacian();
    let first = inner_exact(&lap, &lap);
    let middle = integral_power(u, &lap, p, sub)?;
    let two_p = p.add(p)?;
    let last = if two_p == q_int(3) {
        cube_integral_exact(u)
    } else {
        integral_power(u, u, two_p.sub(q_int(1))?, sub)?
    };
    let sq = first + middle * Interval::point(2.0) + last;
    sq.clamp_nonneg().sqrt()
}

/// `∫_Ω u v` for sine series, by orthogonality.
pub fn inner_exact(u: &FourierApproximation, v: &FourierApproximation) -> Interval {
    u.terms()
        .filter(|t| t.2 != 0.0)
        .map(|(i, j, a)| Interval::point(a) * Interval::point(v.coeff(i, j)))
        .sum::<Interval>()
        * Interval::point(0.25)
}

/// `2π ∫₀¹ sin(iπx) sin(jπx) sin(kπx) dx` for odd `i, j, k`.
fn triple_scaled(i: usize, j: usize, k: usize) -> Interval {
    let (i, j, k) = (i as i64, j as i64, k as i64);
    let r = |n: i64| Interval::ONE / Interval::point(n as f64);
    r(i + j - k) + r(i - j + k) + r(-i + j + k) - r(i + j + k)
}

/// `∫_Ω û³` in closed form through products of three sines.
pub fn cube_integral_exact(u: &FourierApproximation) -> Interval {
    let m = u.modes_per_axis();
    let a = u.odd_coeffs();
    let mut t = vec![Interval::ZERO; m * m * m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                t[(i * m + j) * m + k] = triple_scaled(2 * i + 1, 2 * j + 1, 2 * k + 1);
            }
        }
    }
    // contract one x-index at a time: d[l][j][k] = Σ_i a_il T(i,j,k)
    let contract = |src: &[Interval]| -> Vec<Interval> {
        // src indexed [free..][x][rest]: here generic over the leading x index
        let mut out = vec![Interval::ZERO; m * m * m];
        out.par_chunks_mut(m * m).enumerate().for_each(|(l, blk)| {
            for x in 0..m {
                let c = Interval::point(a[x * m + l]);
                if c == Interval::ZERO {
                    continue;
                }
                for (o, &s) in blk.iter_mut().zip(&src[x * m * m..(x + 1) * m * m]) {
                    *o += c * s;
                }
            }
        });
        out
    };
    // rotate so the contracted index is always leading
    let rotate = |v: &[Interval]| -> Vec<Interval> {
        let mut out = vec![Interval::ZERO; m * m * m];
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    out[(y * m + z) * m + x] = v[(x * m + y) * m + z];
                }
            }
        }
        out
    };
    // after three contract+rotate steps, e[l][m][n] = Σ a a a T
    let mut e = contract(&t);
    e = contract(&rotate(&e));
    e = contract(&rotate(&e));
    let e = rotate(&e);
    let sum: Interval = t.iter().zip(&e).map(|(&x, &y)| x * y).sum();
    let two_pi = Interval::PI * Interval::point(2.0);
    sum / two_pi.sqr()
}

/// A weight `w = ξ^ex ζ^ey · model` on one cell, `model` in the cell's
/// local coordinates and `(ξ, ζ)` quadrant coordinates.
pub struct WeightModel {
    pub model: PowerSeries2D,
    pub exponents: (RationalExp, RationalExp),
}

/// Source of the weight in a weighted Gram matrix.
pub trait CellWeight: Sync {
    fn weight(&self, basis: &CellBasis, r: &Rect) -> Result<WeightModel>;
    /// Largest sine mode the weight needs tabulated.
    fn max_mode(&self) -> usize {
        1
    }
}

/// `p |û|^(p-1)` for positive `û`.
pub struct PowerWeight<'a> {
    pub u: &'a FourierApproximation,
    pub p: RationalExp,
}

impl CellWeight for PowerWeight<'_> {
    fn weight(&self, basis: &CellBasis, _r: &Rect) -> Result<WeightModel> {
        let eta = basis.approx(self.u);
        positivity(&eta, "reduced approximation")?;
        let q = self.p.sub(q_int(1))?;
        let w = compose(ElemFn::PowQ(q), &eta)?.scale(self.p.to_interval());
        Ok(WeightModel {
            model: w,
            exponents: (q, q),
        })
    }

    fn max_mode(&self) -> usize {
        self.u.max_mode()
    }
}

/// Odd modes `(i, j)` with `i, j ≤ n`, ordered by `i` then `j`.
pub fn odd_basis(n: usize) -> Vec<(usize, usize)> {
    let ks: Vec<usize> = (1..=n).step_by(2).collect();
    ks.iter()
        .flat_map(|&i| ks.iter().map(move |&j| (i, j)))
        .collect()
}

/// Per-axis pair data for the separable midpoint/radius integration.
struct PairSums {
    /// `Σ_c mid(F_c) I_(a+c)`
    mid: Vec<Interval>,
    /// `Σ_c (|mid F_c| + rad F_c) |I|_(a+c)`
    upper: Vec<Interval>,
    /// `Σ_c |mid F_c| |I|_(a+c)`
    lower: Vec<Interval>,
}

fn pair_sums(f: &[Interval], t: &AxisTable, nw: usize) -> PairSums {
    let mr: Vec<(f64, f64)> = f.iter().map(|&c| mid_rad(c)).collect();
    let mut s = PairSums {
        mid: Vec::with_capacity(nw + 1),
        upper: Vec::new(),
        lower: Vec::new(),
    };
    for a in 0..=nw {
        let (mut m, mut u, mut l) = (Interval::ZERO, Interval::ZERO, Interval::ZERO);
        for (c, &(fm, fr)) in mr.iter().enumerate() {
            if fm == 0.0 && fr == 0.0 {
                continue;
            }
            m += Interval::point(fm) * t.signed[a + c];
            let big = Interval::point(fm.abs()) + Interval::point(fr);
            u += big * t.abs[a + c];
            l += Interval::point(fm.abs()) * t.abs[a + c];
        }
        s.mid.push(m);
        s.upper.push(u);
        s.lower.push(l);
    }
    s
}

fn conv(a: &[Interval], b: &[Interval]) -> Vec<Interval> {
    let mut out = vec![Interval::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Encloses `(w φ_α, φ_β)` for all basis pairs, with `w` supplied per cell.
///
/// Returned row-major, `dim × dim`.
pub fn gram_with_weight(
    weight: &dyn CellWeight,
    basis: &[(usize, usize)],
    sub: &Subdivision,
) -> Result<Vec<Interval>> {
    let n = sub.degree;
    let mut xmodes: Vec<usize> = basis.iter().map(|b| b.0).collect();
    xmodes.sort_unstable();
    xmodes.dedup();
    let mut ymodes: Vec<usize> = basis.iter().map(|b| b.1).collect();
    ymodes.sort_unstable();
    ymodes.dedup();
    let pairs = |ms: &[usize]| -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for (x, &i) in ms.iter().enumerate() {
            for &k in &ms[x..] {
                v.push((i, k));
            }
        }
        v
    };
    let (px, py) = (pairs(&xmodes), pairs(&ymodes));
    let km = kmax(&[
        weight.max_mode(),
        *xmodes.last().unwrap_or(&1),
        *ymodes.last().unwrap_or(&1),
    ]);
    let table = SineTable::new(km, n + 1);
    let parts = map_cells(sub, |quad, r| {
        let cb = CellBasis::new(&table, km, quad, r, n, true);
        let w = weight.weight(&cb, r)?;
        let (nwx, nwy) = w.model.degrees();
        // both basis functions carry one power of ξζ
        let fx = cb.x.factor(w.exponents.0.add(q_int(2))?)?;
        let fy = cb.y.factor(w.exponents.1.add(q_int(2))?)?;
        let split = |f: &AxisFactor| match f {
            AxisFactor::Offset(e) => (*e, None),
            AxisFactor::Model(m) => (q_int(0), Some(m.coeffs().to_vec())),
        };
        let ((ox, gx), (oy, gy)) = (split(&fx), split(&fy));
        let extra = |g: &Option<Vec<Interval>>| g.as_ref().map_or(0, |v| v.len() - 1);
        let (sx, sy) = r.local_spans();
        let tx = AxisTable::new(nwx + 2 * n + extra(&gx), ox, sx)?;
        let ty = AxisTable::new(nwy + 2 * n + extra(&gy), oy, sy)?;
        let pair_poly = |a: &[Interval], b: &[Interval], g: &Option<Vec<Interval>>| {
            let f = conv(a, b);
            match g {
                Some(g) => conv(&f, g),
                None => f,
            }
        };
        let sums_x: Vec<PairSums> = px
            .iter()
            .map(|&(i, k)| pair_sums(&pair_poly(cb.x.mode(i), cb.x.mode(k), &gx), &tx, nwx))
            .collect();
        let sums_y: Vec<PairSums> = py
            .iter()
            .map(|&(j, l)| pair_sums(&pair_poly(cb.y.mode(j), cb.y.mode(l), &gy), &ty, nwy))
            .collect();
        // contract the weight's y index against each y pair
        let wmr: Vec<(f64, f64)> = w.model.coeffs().iter().map(|&c| mid_rad(c)).collect();
        let kys: Vec<[Vec<Interval>; 3]> = sums_y
            .iter()
            .map(|sy| {
                let mut km_ = vec![Interval::ZERO; nwx + 1];
                let mut ku = vec![Interval::ZERO; nwx + 1];
                let mut kl = vec![Interval::ZERO; nwx + 1];
                for ax in 0..=nwx {
                    for by in 0..=nwy {
                        let (m, rr) = wmr[ax * (nwy + 1) + by];
                        if m == 0.0 && rr == 0.0 {
                            continue;
                        }
                        km_[ax] += Interval::point(m) * sy.mid[by];
                        ku[ax] += (Interval::point(m.abs()) + Interval::point(rr)) * sy.upper[by];
                        kl[ax] += Interval::point(m.abs()) * sy.lower[by];
                    }
                }
                [km_, ku, kl]
            })
            .collect();
        let mut out = Vec::with_capacity(px.len() * py.len());
        for sx in &sums_x {
            for k in &kys {
                let (mut c, mut u, mut l) = (Interval::ZERO, Interval::ZERO, Interval::ZERO);
                for ax in 0..=nwx {
                    c += sx.mid[ax] * k[0][ax];
                    u += sx.upper[ax] * k[1][ax];
                    l += sx.lower[ax] * k[2][ax];
                }
                let spread = (u - l).hi().max(0.0);
                out.push(c + Interval::symmetric(spread));
            }
        }
        Ok(out)
    })?;
    let (_, factor) = sub.quadrants();
    let npy = py.len();
    let mut acc = vec![Interval::ZERO; px.len() * npy];
    for quad in parts {
        for cell in quad {
            for (a, v) in acc.iter_mut().zip(cell) {
                *a += v;
            }
        }
    }
    let idx = |ms: &[usize], i: usize, k: usize| -> usize {
        let (i, k) = (i.min(k), i.max(k));
        let (xi, xk) = (ms.binary_search(&i).unwrap(), ms.binary_search(&k).unwrap());
        // position of (xi, xk) in the upper-triangular pair list
        xi * ms.len() - xi * (xi + 1) / 2 + xk
    };
    let dim = basis.len();
    let mut g = vec![Interval::ZERO; dim * dim];
    for (al, &(i, j)) in basis.iter().enumerate() {
        for (be, &(k, l)) in basis.iter().enumerate() {
            let v = acc[idx(&xmodes, i, k) * npy + idx(&ymodes, j, l)];
            g[al * dim + be] = v * Interval::point(factor);
        }
    }
    Ok(g)
}

/// Encloses `(p û^(p-1) φ_α, φ_β)`, row-major `dim × dim`.
pub fn weighted_gram(
    u: &FourierApproximation,
    p: RationalExp,
    basis: &[(usize, usize)],
    sub: &Subdivision,
) -> Result<Vec<Interval>> {
    gram_with_weight(&PowerWeight { u, p }, basis, sub)
}

/// Bounds on the extreme values of `û` over the closed square.
#[derive(Clone, Copy, Debug)]
pub struct Extrema {
    pub min: Interval,
    pub max: Interval,
    /// `û > 0` inside was verified on every cell.
    pub positive: bool,
}

/// Encloses `min û` and `max û`. The lower end of the maximum comes from
/// the exact centre value; cells whose range could still exceed it are
/// bisected up to the refinement depth.
pub fn extrema(u: &FourierApproximation, sub: &Subdivision) -> Result<Extrema> {
    let n = sub.degree;
    let km = u.max_mode() | 1;
    let table = SineTable::new(km, n + 1);
    let centre = u.centre_value();
    let (quads, _) = sub.quadrants();
    let info = |q: Quadrant, r: &Rect| -> (Interval, bool) {
        let full = CellBasis::new(&table, km, q, r, n, false).approx(u).range();
        let red = if r.class() == super::RectClass::S00 {
            full
        } else {
            CellBasis::new(&table, km, q, r, n, true).approx(u).range()
        };
        (full, red.lo() > 0.0)
    };
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    let mut positive = true;
    for &q in quads {
        let mut work: Vec<(Rect, usize)> = sub.cells().iter().map(|r| (*r, 0)).collect();
        while !work.is_empty() {
            let res: Vec<(Interval, bool)> = work.par_iter().map(|(r, _)| info(q, r)).collect();
            let mut next = Vec::new();
            for ((r, d), (range, pos)) in work.into_iter().zip(res) {
                let refine_max = range.hi() > centre.hi();
                if (!pos || refine_max) && d < sub.max_refine {
                    let (a, b) = r.bisect();
                    next.push((a, d + 1));
                    next.push((b, d + 1));
                    continue;
                }
                hi = hi.max(range.hi());
                lo = lo.min(range.lo());
                positive &= pos;
            }
            work = next;
        }
    }
    let max = Interval::new(centre.lo(), hi.max(centre.hi()));
    let min = if positive {
        Interval::ZERO
    } else {
        Interval::new(lo.min(0.0), 0.0)
    };
    Ok(Extrema { min, max, positive })
}

/// Encloses `p · (max |û|)^(p-1)`, an upper bound for `‖p |û|^(p-1)‖_∞`.
pub fn sup_weight(u: &FourierApproximation, p: RationalExp, sub: &Subdivision) -> Result<Interval> {
    sup_weight_from(&extrema(u, sub)?, p)
}

pub fn sup_weight_from(e: &Extrema, p: RationalExp) -> Result<Interval> {
    let top = e.max.hi().max(-e.min.lo());
    Ok(p.to_interval() * Interval::new(e.max.lo().max(0.0), top).pow(p.sub(q_int(1))?)?)
}

/// Encloses `‖û‖_{L^e}` for positive `û`: by orthogonality when `e = 2`,
/// otherwise as `(∫ û^(e-1) û)^(1/e)`.
pub fn lp_norm(u: &FourierApproximation, e: RationalExp, sub: &Subdivision) -> Result<Interval> {
    let integral = if e == q_int(2) {
        inner_exact(u, u)
    } else {
        integral_power(u, u, e.sub(q_int(1))?, sub)?
    };
    integral.clamp_nonneg().pow(e.recip()?)
}
