use super::series1d::{horner, PowerSeries1D};
use super::TaylorModel;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Bivariate model `Σ v_ij x^i y^j` on `dx × dy`, read as a series in `x`
/// whose coefficients are series in `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries2D {
    nx: usize,
    ny: usize,
    coeffs: Vec<Interval>,
    dx: Interval,
    dy: Interval,
}

impl PowerSeries2D {
    /// `coeffs[i * (ny + 1) + j]` multiplies `x^i y^j`.
    pub fn new(
        nx: usize,
        ny: usize,
        coeffs: Vec<Interval>,
        dx: Interval,
        dy: Interval,
    ) -> Result<Self> {
        if coeffs.len() != (nx + 1) * (ny + 1) {
            return Err(Error::Usage(format!(
                "expected {} coefficients for degrees ({nx},{ny}), got {}",
                (nx + 1) * (ny + 1),
                coeffs.len()
            )));
        }
        Ok(PowerSeries2D {
            nx,
            ny,
            coeffs,
            dx,
            dy,
        })
    }

    pub fn zero(nx: usize, ny: usize, dx: Interval, dy: Interval) -> Self {
        PowerSeries2D {
            nx,
            ny,
            coeffs: vec![Interval::ZERO; (nx + 1) * (ny + 1)],
            dx,
            dy,
        }
    }

    pub fn constant(c: Interval, nx: usize, ny: usize, dx: Interval, dy: Interval) -> Self {
        let mut s = Self::zero(nx, ny, dx, dy);
        s.coeffs[0] = c;
        s
    }

    /// Outer product of a series in `x` and a series in `y`.
    pub fn tensor(a: &PowerSeries1D, b: &PowerSeries1D) -> Self {
        let (nx, ny) = (a.degree(), b.degree());
        let mut coeffs = Vec::with_capacity((nx + 1) * (ny + 1));
        for &ai in a.coeffs() {
            for &bj in b.coeffs() {
                coeffs.push(ai * bj);
            }
        }
        PowerSeries2D {
            nx,
            ny,
            coeffs,
            dx: a.domain(),
            dy: b.domain(),
        }
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn domain(&self) -> (Interval, Interval) {
        (self.dx, self.dy)
    }

    pub fn coeffs(&self) -> &[Interval] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Interval] {
        &mut self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> Interval {
        if i > self.nx || j > self.ny {
            return Interval::ZERO;
        }
        self.coeffs[i * (self.ny + 1) + j]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: Interval) {
        self.coeffs[i * (self.ny + 1) + j] = c;
    }

    fn row(&self, i: usize) -> &[Interval] {
        &self.coeffs[i * (self.ny + 1)..(i + 1) * (self.ny + 1)]
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if (self.nx, self.ny, self.dx, self.dy) != (o.nx, o.ny, o.dx, o.dy) {
            return Err(Error::Usage("incompatible bivariate power series".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let mut r = self.clone();
        r.add_assign_unchecked(o);
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        let mut r = self.clone();
        for (a, &b) in r.coeffs.iter_mut().zip(&o.coeffs) {
            *a -= b;
        }
        Ok(r)
    }

    pub(crate) fn add_assign_unchecked(&mut self, o: &Self) {
        debug_assert_eq!((self.nx, self.ny), (o.nx, o.ny));
        for (a, &b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
    }

    /// Exact product of degrees `(nx + mx, ny + my)`.
    pub fn mul_full(&self, o: &Self) -> Self {
        let (nx, ny) = (self.nx + o.nx, self.ny + o.ny);
        let mut w = vec![Interval::ZERO; (nx + 1) * (ny + 1)];
        let orow = o.ny + 1;
        for i1 in 0..=self.nx {
            for j1 in 0..=self.ny {
                let a = self.coeffs[i1 * (self.ny + 1) + j1];
                if a == Interval::ZERO {
                    continue;
                }
                for i2 in 0..=o.nx {
                    let base = (i1 + i2) * (ny + 1) + j1;
                    let src = &o.coeffs[i2 * orow..(i2 + 1) * orow];
                    let dst = &mut w[base..base + orow];
                    for (d, &b) in dst.iter_mut().zip(src) {
                        *d += a * b;
                    }
                }
            }
        }
        PowerSeries2D {
            nx,
            ny,
            coeffs: w,
            dx: self.dx,
            dy: self.dy,
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(self.mul_full(o).reduce_degree(self.nx, self.ny))
    }

    /// Degree reduction in `y` inside every coefficient, then in `x` with
    /// the surplus `y`-series folded by Horner over `dx`.
    pub fn reduce_degree(&self, nx: usize, ny: usize) -> Self {
        if self.nx <= nx && self.ny <= ny {
            return self.clone();
        }
        let ty = self.ny.min(ny);
        let rows: Vec<Vec<Interval>> = (0..=self.nx)
            .map(|i| {
                let r = self.row(i);
                if self.ny <= ny {
                    r.to_vec()
                } else {
                    let mut v = r[..ny].to_vec();
                    v.push(horner(&r[ny..], self.dy));
                    v
                }
            })
            .collect();
        let tx = self.nx.min(nx);
        let mut coeffs = Vec::with_capacity((tx + 1) * (ty + 1));
        for r in rows.iter().take(tx) {
            coeffs.extend_from_slice(r);
        }
        if self.nx <= nx {
            coeffs.extend_from_slice(&rows[tx]);
        } else {
            let mut acc = vec![Interval::ZERO; ty + 1];
            for r in rows[nx..].iter().rev() {
                for (a, &c) in acc.iter_mut().zip(r) {
                    *a = c + *a * self.dx;
                }
            }
            coeffs.extend_from_slice(&acc);
        }
        PowerSeries2D {
            nx: tx,
            ny: ty,
            coeffs,
            dx: self.dx,
            dy: self.dy,
        }
    }

    /// Enclosure of every member's values by nested Horner evaluation.
    pub fn range(&self) -> Interval {
        self.eval(self.dx, self.dy)
    }

    pub fn eval(&self, x: Interval, y: Interval) -> Interval {
        let mut acc = Interval::ZERO;
        for i in (0..=self.nx).rev() {
            acc = horner(self.row(i), y) + acc * x;
        }
        acc
    }

    /// Restrict to `x = x0` (exactly representable), giving a series in `y`.
    pub fn partial_x(&self, x: Interval) -> PowerSeries1D {
        let mut acc = vec![Interval::ZERO; self.ny + 1];
        for i in (0..=self.nx).rev() {
            for (a, &c) in acc.iter_mut().zip(self.row(i)) {
                *a = c + *a * x;
            }
        }
        PowerSeries1D::new(acc, self.dy).expect("nonempty")
    }

    /// Restrict to `y` in the given interval, giving a series in `x`.
    pub fn partial_y(&self, y: Interval) -> PowerSeries1D {
        let c = (0..=self.nx).map(|i| horner(self.row(i), y)).collect();
        PowerSeries1D::new(c, self.dx).expect("nonempty")
    }

    pub fn scale(&self, c: Interval) -> Self {
        let mut r = self.clone();
        for a in &mut r.coeffs {
            *a *= c;
        }
        r
    }

    /// Divide by `x^a y^b` when every coefficient below those powers is
    /// exactly zero.
    pub fn divide_monomial(&self, a: usize, b: usize) -> Result<Self> {
        if a > self.nx || b > self.ny {
            return Err(Error::Usage("monomial degree exceeds model degree".into()));
        }
        for i in 0..=self.nx {
            for j in 0..=self.ny {
                if (i < a || j < b) && self.coeff(i, j) != Interval::ZERO {
                    return Err(Error::Domain(format!(
                        "model is not divisible by x^{a} y^{b}: coefficient ({i},{j}) = {}",
                        self.coeff(i, j)
                    )));
                }
            }
        }
        let (nx, ny) = (self.nx - a, self.ny - b);
        let mut coeffs = Vec::with_capacity((nx + 1) * (ny + 1));
        for i in a..=self.nx {
            coeffs.extend_from_slice(&self.row(i)[b..]);
        }
        Ok(PowerSeries2D {
            nx,
            ny,
            coeffs,
            dx: self.dx,
            dy: self.dy,
        })
    }
}

impl TaylorModel for PowerSeries2D {
    fn order(&self) -> usize {
        self.nx.max(self.ny)
    }

    fn constant_term(&self) -> Interval {
        self.coeffs[0]
    }

    fn with_constant_term(&self, c: Interval) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = c;
        s
    }

    fn range(&self) -> Interval {
        PowerSeries2D::range(self)
    }

    fn mul_reduced(&self, o: &Self) -> Self {
        self.mul_full(o).reduce_degree(self.nx, self.ny)
    }

    fn scaled(&self, c: Interval) -> Self {
        self.scale(c)
    }

    fn add_scaled(&mut self, o: &Self, c: Interval) {
        for (a, &b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b * c;
        }
    }

    fn constant_like(&self, c: Interval) -> Self {
        PowerSeries2D::constant(c, self.nx, self.ny, self.dx, self.dy)
    }
}
