//! Verified integration over the unit square of integrands built from
//! positive sine series, including fractional powers of a base that
//! vanishes on the boundary.
//!
//! Each quadrant is tiled into cells. On every cell the base is divided by
//! `ξζ` before a fractional power is taken, so the power is composed with a
//! model bounded away from zero. On a cell touching an edge the matching
//! power of `ξ` or `ζ` reappears as an exact fractional offset in the
//! term-by-term integration; elsewhere it is a short one-variable Taylor
//! model of `(ξ_e + s)^q`.

mod cell;
mod integrals;
mod monomial;
mod rect;

pub use cell::{
    axis_factor, enclose_on_rect, enclose_reduced, AxisFactor, AxisModels, CellBasis, SineTable,
};
pub use integrals::{
    cube_integral_exact, extrema, gram_with_weight, inner_exact, integral_power,
    integral_power_quadrants, integrate_rect, lp_norm, odd_basis, residual_l2,
    residual_l2_expanded, residual_sq, residual_sq_cell, sup_weight, sup_weight_from,
    weighted_gram, CellWeight, Extrema, PowerWeight, WeightModel,
};
pub use monomial::{
    axis_integrals, integrate_model, integrate_monomial, mid_rad, AxisTable, MonomialTerm,
};
pub use rect::{Quadrant, QuadrantMode, Rect, RectClass, Subdivision};
