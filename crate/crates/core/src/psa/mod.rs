//! Type-II power series arithmetic: polynomials with interval coefficients
//! that represent sets of functions, closed under arithmetic and under
//! composition with smooth functions.

mod elem;
pub mod golden;
mod series1d;
mod series2d;

pub use elem::{compose, ElemFn};
pub use series1d::{horner, PowerSeries1D};
pub use series2d::PowerSeries2D;

use crate::error::Result;
use crate::interval::Interval;

/// Operations shared by the univariate and bivariate models, enough to
/// drive [`compose`].
pub trait TaylorModel: Clone {
    /// Expansion order used for composition.
    fn order(&self) -> usize;
    fn constant_term(&self) -> Interval;
    fn with_constant_term(&self, c: Interval) -> Self;
    fn range(&self) -> Interval;
    /// Product reduced back to the degree of `self`.
    fn mul_reduced(&self, other: &Self) -> Self;
    fn scaled(&self, c: Interval) -> Self;
    /// `self += c * other`.
    fn add_scaled(&mut self, other: &Self, c: Interval);
    /// Constant model with the same shape as `self`.
    fn constant_like(&self, c: Interval) -> Self;
}

pub fn ps_add(a: &PowerSeries1D, b: &PowerSeries1D) -> Result<PowerSeries1D> {
    a.add(b)
}

pub fn ps_sub(a: &PowerSeries1D, b: &PowerSeries1D) -> Result<PowerSeries1D> {
    a.sub(b)
}

pub fn ps_mul(a: &PowerSeries1D, b: &PowerSeries1D) -> Result<PowerSeries1D> {
    a.mul(b)
}

pub fn ps_range<M: TaylorModel>(u: &M) -> Interval {
    u.range()
}

pub fn ps_compose<M: TaylorModel>(f: ElemFn, u: &M) -> Result<M> {
    compose(f, u)
}

pub fn reduce_degree(u: &PowerSeries1D, n: usize) -> PowerSeries1D {
    u.reduce_degree(n)
}

pub fn ps2_tensor(a: &PowerSeries1D, b: &PowerSeries1D) -> PowerSeries2D {
    PowerSeries2D::tensor(a, b)
}
