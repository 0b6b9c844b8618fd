//! Computer-assisted existence proofs for positive solutions of
//! `-Δu = |u|^(p-1) u` on the unit square with zero boundary values.
//!
//! The pipeline runs bottom-up through the modules: [`interval`] arithmetic,
//! Taylor models in [`psa`], verified integration in [`quad`], the
//! Fourier-Galerkin approximation in [`galerkin`], eigenvalue enclosures in
//! [`spectral`], and the existence test and certificate in [`certify`].

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod certify;
pub mod error;
pub mod galerkin;
pub mod interval;
pub mod pipeline;
pub mod psa;
pub mod quad;
pub mod spectral;

pub use error::{Error, Result};
pub use interval::{Interval, RationalExp};
