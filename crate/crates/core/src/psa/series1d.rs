use super::TaylorModel;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// The set of continuous functions `v` on `domain` with
/// `v(x) ∈ Σ c_i x^i` for every `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries1D {
    coeffs: Vec<Interval>,
    domain: Interval,
}

/// Range of `Σ c_i x^i` over `x` by the Horner scheme.
pub fn horner(coeffs: &[Interval], x: Interval) -> Interval {
    let mut acc = Interval::ZERO;
    for &c in coeffs.iter().rev() {
        acc = c + acc * x;
    }
    acc
}

impl PowerSeries1D {
    pub fn new(coeffs: Vec<Interval>, domain: Interval) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage(
                "power series needs at least one coefficient".into(),
            ));
        }
        Ok(PowerSeries1D { coeffs, domain })
    }

    pub fn from_f64(coeffs: &[f64], domain: Interval) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Interval::point(c)).collect(), domain)
    }

    pub fn constant(c: Interval, degree: usize, domain: Interval) -> Self {
        let mut coeffs = vec![Interval::ZERO; degree + 1];
        coeffs[0] = c;
        PowerSeries1D { coeffs, domain }
    }

    /// The identity function `x`; `degree >= 1`.
    pub fn variable(degree: usize, domain: Interval) -> Self {
        let mut s = Self::constant(Interval::ZERO, degree.max(1), domain);
        s.coeffs[1] = Interval::ONE;
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Interval] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Interval {
        self.coeffs.get(i).copied().unwrap_or(Interval::ZERO)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.degree() != o.degree() || self.domain != o.domain {
            return Err(Error::Usage(format!(
                "incompatible power series: degree {} on {} vs degree {} on {}",
                self.degree(),
                self.domain,
                o.degree(),
                o.domain
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(self.zip(o, |a, b| a + b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(self.zip(o, |a, b| a - b))
    }

    fn zip(&self, o: &Self, f: impl Fn(Interval, Interval) -> Interval) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(&a, &b)| f(a, b))
            .collect();
        PowerSeries1D {
            coeffs,
            domain: self.domain,
        }
    }

    /// Exact product of degree `m + n`, before any reduction.
    pub fn mul_full(&self, o: &Self) -> Self {
        let mut w = vec![Interval::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Interval::ZERO {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                w[i + j] += a * b;
            }
        }
        PowerSeries1D {
            coeffs: w,
            domain: self.domain,
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_compatible(o)?;
        Ok(self.mul_full(o).reduce_degree(self.degree()))
    }

    /// Fold the terms above degree `n` into the degree-`n` coefficient.
    pub fn reduce_degree(&self, n: usize) -> Self {
        if self.degree() <= n {
            return self.clone();
        }
        let mut coeffs = self.coeffs[..n].to_vec();
        coeffs.push(horner(&self.coeffs[n..], self.domain));
        PowerSeries1D {
            coeffs,
            domain: self.domain,
        }
    }

    pub fn range(&self) -> Interval {
        horner(&self.coeffs, self.domain)
    }

    /// Pointwise enclosure at `x` (which should lie in the domain).
    pub fn eval(&self, x: Interval) -> Interval {
        horner(&self.coeffs, x)
    }

    pub fn scale(&self, c: Interval) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| a * c).collect();
        PowerSeries1D {
            coeffs,
            domain: self.domain,
        }
    }
}

impl TaylorModel for PowerSeries1D {
    fn order(&self) -> usize {
        self.degree()
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
        PowerSeries1D::range(self)
    }

    fn mul_reduced(&self, o: &Self) -> Self {
        self.mul_full(o).reduce_degree(self.degree())
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
        PowerSeries1D::constant(c, self.degree(), self.domain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> Interval {
        Interval::new(0.0, 0.1)
    }

    #[test]
    fn reduce_keeps_low_coefficients() {
        let u = PowerSeries1D::from_f64(&[0.0, 0.0, 1.0, 1.0], Interval::new(0.0, 1.0)).unwrap();
        let v = u.reduce_degree(2);
        assert_eq!(v.degree(), 2);
        assert!(Interval::new(1.0, 2.0).subset_of(v.coeff(2)));
        assert_eq!(v.coeff(0), Interval::ZERO);
        assert_eq!(u.reduce_degree(3), u);
    }

    #[test]
    fn mismatch_is_usage_error() {
        let a = PowerSeries1D::from_f64(&[1.0, 2.0], d()).unwrap();
        let b = PowerSeries1D::from_f64(&[1.0, 2.0, 3.0], d()).unwrap();
        assert!(matches!(a.add(&b), Err(Error::Usage(_))));
        let c = PowerSeries1D::from_f64(&[1.0, 2.0], Interval::new(0.0, 1.0)).unwrap();
        assert!(a.mul(&c).is_err());
    }

    #[test]
    fn range_of_identity() {
        let x = PowerSeries1D::variable(3, Interval::new(-1.0, 1.0));
        let r = x.range();
        assert!(Interval::new(-1.0, 1.0).subset_of(r));
        assert!(r.width() <= 2.0 + 4.0 * f64::EPSILON);
    }
}
