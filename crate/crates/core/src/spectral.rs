//! Two-sided eigenvalue bounds for the linearized operator and the bound
//! `K` on the norm of its inverse.
//!
//! The eigenproblem is `(∇u, ∇v) = λ (w u, v)` with `w = p |û|^(p-1)`,
//! discretized on the odd sine modes `φ_ij`, `i, j ≤ N`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galerkin::{stiffness_diag, FourierApproximation};
use crate::interval::{Interval, RationalExp};
use crate::quad::{gram_with_weight, odd_basis, CellWeight, PowerWeight, Subdivision};

/// Default lower bound required of the last discrete eigenvalue.
pub const TAIL_THRESHOLD: f64 = 2.0;

/// Discrete pencil `A v = λ B v`, `A` diagonal.
#[derive(Clone, Debug, Serialize)]
pub struct Pencil {
    pub basis: Vec<(usize, usize)>,
    /// Diagonal of the stiffness matrix.
    pub a: Vec<Interval>,
    /// Weighted Gram matrix, row-major.
    pub b: Vec<Interval>,
}

impl Pencil {
    pub fn new(basis: Vec<(usize, usize)>, a: Vec<Interval>, b: Vec<Interval>) -> Result<Self> {
        let n = basis.len();
        if a.len() != n || b.len() != n * n {
            return Err(Error::Usage(format!(
                "pencil of dimension {n} needs {n} + {} entries",
                n * n
            )));
        }
        if a.iter().any(|v| v.lo() <= 0.0) {
            return Err(Error::Usage("stiffness diagonal must be positive".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if !b[i * n + j].overlaps(b[j * n + i]) {
                    return Err(Error::Usage(format!("B is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Pencil { basis, a, b })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Pencil for the weight supplied by `weight`, on the odd modes up to `n`.
pub fn assemble_pencil_with(
    weight: &dyn CellWeight,
    n: usize,
    sub: &Subdivision,
) -> Result<Pencil> {
    let basis = odd_basis(n);
    let a = stiffness_diag(&basis)
        .iter()
        .map(|m| m.to_interval())
        .collect();
    let b = gram_with_weight(weight, &basis, sub)?;
    Pencil::new(basis, a, b)
}

pub fn assemble_pencil(
    u: &FourierApproximation,
    p: RationalExp,
    n: usize,
    sub: &Subdivision,
) -> Result<Pencil> {
    assemble_pencil_with(&PowerWeight { u, p }, n, sub)
}

/// Upper bound on the Frobenius norm of every matrix in the enclosure.
fn frobenius(m: &[Interval]) -> f64 {
    let s: Interval = m.iter().map(|v| Interval::point(v.mag()).sqr()).sum();
    s.sqrt().expect("nonnegative").hi()
}

/// Encloses all eigenvalues `λ_1 ≤ … ≤ λ_dim` of the pencil.
///
/// The problem is rewritten as `C = A^(-1/2) B A^(-1/2)` with eigenvalues
/// `θ = 1/λ`. With `V` the approximate eigenvectors of `mid(C)`, Weyl's
/// inequality bounds the eigenvalues of `VᵀCV` around the computed ones and
/// Ostrowski's theorem transfers them back to `C` through `σ(VᵀV)`.
pub fn verified_discrete_eigs(p: &Pencil) -> Result<Vec<Interval>> {
    let n = p.dim();
    let s: Vec<Interval> =
        p.a.iter()
            .map(|a| a.sqrt().and_then(|r| r.recip()))
            .collect::<Result<_>>()?;
    let mut c = vec![Interval::ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            // B is symmetric, so both entries enclose the same value
            let bij = p.b[i * n + j]
                .intersect(p.b[j * n + i])
                .expect("checked in Pencil::new");
            c[i * n + j] = bij * s[i] * s[j];
        }
    }
    let eig = SymmetricEigen::new(DMatrix::from_fn(n, n, |i, j| c[i * n + j].mid()));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
    let theta: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let v = DMatrix::from_fn(n, n, |i, k| eig.eigenvectors[(i, order[k])]);

    // W = C V, then M = Vᵀ W - Θ and F = Vᵀ V - I
    let mut w = vec![Interval::ZERO; n * n];
    for i in 0..n {
        for k in 0..n {
            w[i * n + k] = (0..n)
                .map(|j| c[i * n + j] * Interval::point(v[(j, k)]))
                .sum();
        }
    }
    let mut e = vec![Interval::ZERO; n * n];
    let mut f = vec![Interval::ZERO; n * n];
    for k in 0..n {
        for l in 0..n {
            let m: Interval = (0..n)
                .map(|i| Interval::point(v[(i, k)]) * w[i * n + l])
                .sum();
            let g: Interval = (0..n)
                .map(|i| Interval::point(v[(i, k)]) * Interval::point(v[(i, l)]))
                .sum();
            let (dm, dg) = if k == l {
                (Interval::point(theta[k]), Interval::ONE)
            } else {
                (Interval::ZERO, Interval::ZERO)
            };
            e[k * n + l] = m - dm;
            f[k * n + l] = g - dg;
        }
    }
    let (eps, phi) = (frobenius(&e), frobenius(&f));
    if phi >= 0.5 {
        return Err(Error::Definiteness(format!(
            "eigenvector basis too far from orthonormal ({phi:e})"
        )));
    }
    let scale = Interval::ONE + Interval::symmetric(phi);
    let mut lams = Vec::with_capacity(n);
    for (k, &t) in theta.iter().enumerate() {
        let tk = (Interval::point(t) + Interval::symmetric(eps)) / scale;
        if tk.lo() <= 0.0 {
            return Err(Error::Definiteness(format!(
                "eigenvalue {} of the transformed Gram matrix not positive: {tk}",
                k + 1
            )));
        }
        lams.push(tk.recip()?);
    }
    Ok(lams)
}

/// `1 / ((N + 1) π)`.
pub fn c_n(n: usize) -> Interval {
    Interval::ONE / (Interval::point((n + 1) as f64) * Interval::PI)
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenEnclosure {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub discrete: Vec<Interval>,
    pub c_n: Interval,
    pub sup_weight: Interval,
}

/// Rayleigh-Ritz upper bounds and the lower bounds
/// `λ^N / (λ^N C_N² sup w + 1)`.
pub fn two_sided_bounds(discrete: &[Interval], c_n: Interval, sup_w: Interval) -> EigenEnclosure {
    let kappa = c_n.sqr() * Interval::point(sup_w.hi());
    let lower = discrete
        .iter()
        .map(|l| {
            let lo = Interval::point(l.lo());
            (lo / (lo * kappa + Interval::ONE)).lo()
        })
        .collect();
    EigenEnclosure {
        lower,
        upper: discrete.iter().map(|l| l.hi()).collect(),
        discrete: discrete.to_vec(),
        c_n,
        sup_weight: sup_w,
    }
}

/// Upper bound `K` for `‖(F')^(-1)‖`, as the upper end of the returned
/// interval: `1/μ₀` with `μ₀ = min(1, inf |1 - 1/λ_k|)`.
///
/// With `tail_threshold` set, the enclosures cover only the lowest part of
/// the spectrum; the last lower bound must reach the threshold and every
/// further eigenvalue contributes at least `1 - 1/λ_dim`. With `None` the
/// enclosures are taken as the whole spectrum.
pub fn compute_k(e: &EigenEnclosure, tail_threshold: Option<f64>) -> Result<Interval> {
    let mut mu0 = 1.0f64;
    for (k, (&lo, &hi)) in e.lower.iter().zip(&e.upper).enumerate() {
        if lo <= 0.0 {
            return Err(Error::Verification(format!(
                "eigenvalue {} has no positive lower bound",
                k + 1
            )));
        }
        let mu = Interval::ONE - Interval::new(lo, hi).recip()?;
        if mu.contains_zero() {
            return Err(Error::Verification(format!(
                "eigenvalue {} enclosure [{lo}, {hi}] contains 1; K cannot be established",
                k + 1
            )));
        }
        mu0 = mu0.min(mu.mig());
    }
    if let Some(t) = tail_threshold {
        let last = e.lower.last().copied().unwrap_or(0.0);
        if last < t {
            return Err(Error::Verification(format!(
                "last eigenvalue lower bound {last} below the tail threshold {t}; enlarge N"
            )));
        }
        mu0 = mu0.min((Interval::ONE - Interval::point(last).recip()?).lo());
    }
    Interval::point(mu0).recip()
}
