//! Fourier-Galerkin approximation with odd sine modes, and the exact
//! manipulations of sine series used downstream.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::num::NonZeroUsize;
use std::path::Path;

use gauss_quad::legendre::GaussLegendre;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Interval, RationalExp};

/// `û(x,y) = Σ a_ij sin(iπx) sin(jπy)` over odd `i, j ≤ max_mode`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierApproximation {
    max_mode: usize,
    m: usize,
    coeffs: Vec<f64>,
}

impl FourierApproximation {
    pub fn zero(max_mode: usize) -> Self {
        let m = max_mode.div_ceil(2);
        FourierApproximation {
            max_mode,
            m,
            coeffs: vec![0.0; m * m],
        }
    }

    pub fn one_mode(a: f64) -> Self {
        let mut f = Self::zero(1);
        f.coeffs[0] = a;
        f
    }

    /// `coeffs` is the row-major array of `a_ij` over odd `i` then odd `j`.
    pub fn from_odd_coeffs(max_mode: usize, coeffs: Vec<f64>) -> Result<Self> {
        let f = Self::zero(max_mode);
        if coeffs.len() != f.m * f.m {
            return Err(Error::Usage(format!(
                "{} odd modes per axis need {} coefficients, got {}",
                f.m,
                f.m * f.m,
                coeffs.len()
            )));
        }
        Ok(FourierApproximation { coeffs, ..f })
    }

    pub fn max_mode(&self) -> usize {
        self.max_mode
    }

    /// Number of odd modes per axis.
    pub fn modes_per_axis(&self) -> usize {
        self.m
    }

    pub fn odd_coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i.is_multiple_of(2) || j.is_multiple_of(2) || i > self.max_mode || j > self.max_mode {
            return 0.0;
        }
        self.coeffs[(i / 2) * self.m + j / 2]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, a: f64) -> Result<()> {
        if i.is_multiple_of(2) || j.is_multiple_of(2) || i > self.max_mode || j > self.max_mode {
            return Err(Error::Usage(format!(
                "mode ({i},{j}) is not an odd mode up to {}",
                self.max_mode
            )));
        }
        self.coeffs[(i / 2) * self.m + j / 2] = a;
        Ok(())
    }

    /// `(i, j, a_ij)` over all stored modes.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let m = self.m;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(k, &a)| (2 * (k / m) + 1, 2 * (k % m) + 1, a))
    }

    /// Coefficients of `Δû`, that is `-(i² + j²) π² a_ij`.
    pub fn laplacian(&self) -> Self {
        let mut out = self.clone();
        for (k, (i, j, a)) in self.terms().enumerate() {
            out.coeffs[k] = -((i * i + j * j) as f64) * PI * PI * a;
        }
        out
    }

    /// `‖û‖_L²` from orthogonality, `‖φ_ij‖² = 1/4`.
    pub fn l2_norm(&self) -> f64 {
        0.5 * self.coeffs.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let sy: Vec<f64> = (0..self.m)
            .map(|j| ((2 * j + 1) as f64 * PI * y).sin())
            .collect();
        (0..self.m)
            .map(|i| {
                let row = &self.coeffs[i * self.m..(i + 1) * self.m];
                ((2 * i + 1) as f64 * PI * x).sin()
                    * row.iter().zip(&sy).map(|(a, s)| a * s).sum::<f64>()
            })
            .sum()
    }

    /// Rigorous enclosure of `û(1/2, 1/2) = Σ a_ij (-1)^((i-1)/2 + (j-1)/2)`.
    pub fn centre_value(&self) -> Interval {
        self.terms()
            .map(|(i, j, a)| {
                let s = if ((i / 2) + (j / 2)) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                Interval::point(s * a)
            })
            .sum()
    }

    pub fn to_json(&self) -> String {
        let doc = CoeffFile {
            max_mode: self.max_mode,
            coefficients: self.terms().filter(|t| t.2 != 0.0).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: CoeffFile = serde_json::from_str(s)?;
        Self::from_terms(doc.max_mode, doc.coefficients)
    }

    /// One `i j a` line per nonzero coefficient; `#` starts a comment.
    pub fn to_text(&self) -> String {
        let mut s = format!("# max_mode {}\n", self.max_mode);
        for (i, j, a) in self.terms().filter(|t| t.2 != 0.0) {
            writeln!(s, "{i} {j} {a:?}").unwrap();
        }
        s
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut max_mode = None;
        let mut terms: Vec<(usize, usize, f64)> = Vec::new();
        for (n, line) in s.lines().enumerate() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("max_mode") {
                    max_mode = Some(parse_field::<usize>(v.trim(), n)?);
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(Error::Usage(format!("line {}: expected `i j a`", n + 1)));
            }
            terms.push((
                parse_field(f[0], n)?,
                parse_field(f[1], n)?,
                parse_field(f[2], n)?,
            ));
        }
        let max_mode =
            max_mode.unwrap_or_else(|| terms.iter().map(|t| t.0.max(t.1)).max().unwrap_or(1));
        Self::from_terms(max_mode, terms)
    }

    fn from_terms(max_mode: usize, terms: Vec<(usize, usize, f64)>) -> Result<Self> {
        if max_mode == 0 {
            return Err(Error::Usage("max_mode must be at least 1".into()));
        }
        let mut f = Self::zero(max_mode);
        for (i, j, a) in terms {
            f.set_coeff(i, j, a)?;
        }
        Ok(f)
    }

    /// Reads JSON when the file name ends in `.json`, text otherwise.
    pub fn read(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::from_json(&s)
        } else {
            Self::from_text(&s)
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let s = if path.extension().is_some_and(|e| e == "json") {
            self.to_json()
        } else {
            self.to_text()
        };
        std::fs::write(path, s)?;
        Ok(())
    }
}

fn parse_field<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Usage(format!("line {}: cannot parse `{s}`", line + 1)))
}

#[derive(Serialize, Deserialize)]
struct CoeffFile {
    max_mode: usize,
    coefficients: Vec<(usize, usize, f64)>,
}

/// A rational multiple `num/den · π²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PiSquaredMultiple {
    pub num: u64,
    pub den: u64,
}

impl PiSquaredMultiple {
    fn reduced(num: u64, den: u64) -> Self {
        let (mut a, mut b) = (num, den);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        let g = a.max(1);
        PiSquaredMultiple {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_interval(self) -> Interval {
        Interval::PI.sqr() * Interval::point(self.num as f64) / Interval::point(self.den as f64)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64 * PI * PI
    }
}

/// `(∇φ_a, ∇φ_b)` for sine modes `a = (i,j)`, `b = (k,l)`.
pub fn stiffness(a: (usize, usize), b: (usize, usize)) -> PiSquaredMultiple {
    if a != b {
        return PiSquaredMultiple { num: 0, den: 1 };
    }
    PiSquaredMultiple::reduced((a.0 * a.0 + a.1 * a.1) as u64, 4)
}

pub fn stiffness_diag(indices: &[(usize, usize)]) -> Vec<PiSquaredMultiple> {
    indices.iter().map(|&ij| stiffness(ij, ij)).collect()
}

#[derive(Clone, Debug)]
pub enum InitialGuess {
    /// `a_11` from the one-mode fixed point, other modes zero.
    OneMode,
    Given(FourierApproximation),
}

#[derive(Clone, Debug)]
pub struct GalerkinConfig {
    pub max_mode: usize,
    pub p: RationalExp,
    /// Bound on `‖F(a)‖ / ‖(λ/4)·a‖` at convergence.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Gauss-Legendre nodes per axis on `[0, 1/2]`; `None` picks `max(64, 4·max_mode)`.
    pub quad_order: Option<usize>,
    pub initial: InitialGuess,
}

impl Default for GalerkinConfig {
    fn default() -> Self {
        GalerkinConfig {
            max_mode: 60,
            p: RationalExp::new(3, 2).expect("valid"),
            tolerance: 1e-11,
            max_iterations: 60,
            quad_order: None,
            initial: InitialGuess::OneMode,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NewtonReport {
    pub approx: FourierApproximation,
    pub iterations: usize,
    pub residual: f64,
}

/// Odd sine modes tabulated at Gauss-Legendre nodes of `[0, 1/2]`.
struct Assembly {
    m: usize,
    q: usize,
    p: f64,
    /// `s[i * q + k] = sin((2i+1) π x_k)`
    s: Vec<f64>,
    w: Vec<f64>,
}

impl Assembly {
    fn new(m: usize, q: usize, p: f64) -> Self {
        let rule = GaussLegendre::new(NonZeroUsize::new(q).expect("positive order"));
        let (x, w): (Vec<f64>, Vec<f64>) = rule
            .iter()
            .map(|&(x, w)| ((x + 1.0) * 0.25, w * 0.25))
            .unzip();
        let mut s = vec![0.0; m * q];
        for i in 0..m {
            for k in 0..q {
                s[i * q + k] = ((2 * i + 1) as f64 * PI * x[k]).sin();
            }
        }
        Assembly { m, q, p, s, w }
    }

    fn lam(&self, i: usize, j: usize) -> f64 {
        let (a, b) = ((2 * i + 1) as f64, (2 * j + 1) as f64);
        (a * a + b * b) * PI * PI
    }

    /// `û` on the tensor grid, `q × q` row-major.
    fn values(&self, a: &[f64]) -> Vec<f64> {
        let (m, q) = (self.m, self.q);
        // t[i][r] = Σ_j a_ij s_j(r)
        let mut t = vec![0.0; m * q];
        for i in 0..m {
            for j in 0..m {
                let c = a[i * m + j];
                if c == 0.0 {
                    continue;
                }
                for r in 0..q {
                    t[i * q + r] += c * self.s[j * q + r];
                }
            }
        }
        let mut u = vec![0.0; q * q];
        u.par_chunks_mut(q).enumerate().for_each(|(k, row)| {
            for i in 0..m {
                let si = self.s[i * q + k];
                for r in 0..q {
                    row[r] += si * t[i * q + r];
                }
            }
        });
        u
    }

    /// `4 Σ w_k w_r g(k,r) s_i(k) s_j(r)`, the projection of `g` on each mode.
    fn project(&self, g: &[f64]) -> Vec<f64> {
        let (m, q) = (self.m, self.q);
        let mut t = vec![0.0; m * q];
        for i in 0..m {
            for k in 0..q {
                let c = 4.0 * self.w[k] * self.s[i * q + k];
                for r in 0..q {
                    t[i * q + r] += c * g[k * q + r];
                }
            }
        }
        let mut out = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                out[i * m + j] = (0..q)
                    .map(|r| t[i * q + r] * self.w[r] * self.s[j * q + r])
                    .sum();
            }
        }
        out
    }

    fn residual(&self, a: &[f64], u: &[f64]) -> Vec<f64> {
        let p = self.p;
        let g: Vec<f64> = u.iter().map(|&v| v.abs().powf(p - 1.0) * v).collect();
        let proj = self.project(&g);
        let m = self.m;
        (0..m * m)
            .map(|k| self.lam(k / m, k % m) * a[k] / 4.0 - proj[k])
            .collect()
    }

    /// Jacobian of the residual, indexed `[(i,j), (k,l)]`.
    fn jacobian(&self, u: &[f64]) -> DMatrix<f64> {
        let (m, q, p) = (self.m, self.q, self.p);
        let m2 = m * m;
        // weight W(k,r) = 4 p |u|^(p-1) w_k w_r
        let wt: Vec<f64> = (0..q * q)
            .map(|kr| 4.0 * p * u[kr].abs().powf(p - 1.0) * self.w[kr / q] * self.w[kr % q])
            .collect();
        // t[k][(j,l)] = Σ_r W(k,r) s_j(r) s_l(r)
        let mut t = vec![0.0; q * m2];
        t.par_chunks_mut(m2).enumerate().for_each(|(k, row)| {
            for j in 0..m {
                for l in j..m {
                    let v: f64 = (0..q)
                        .map(|r| wt[k * q + r] * self.s[j * q + r] * self.s[l * q + r])
                        .sum();
                    row[j * m + l] = v;
                    row[l * m + j] = v;
                }
            }
        });
        // J[(i,j),(k,l)] = δ λ/4 - Σ_k s_i s_k t[k][(j,l)]
        let mut jac = vec![0.0; m2 * m2];
        jac.par_chunks_mut(m * m2)
            .enumerate()
            .for_each(|(i, block)| {
                for kk in 0..m {
                    let mut acc = vec![0.0; m2];
                    for node in 0..q {
                        let c = self.s[i * q + node] * self.s[kk * q + node];
                        for (a, &b) in acc.iter_mut().zip(&t[node * m2..(node + 1) * m2]) {
                            *a += c * b;
                        }
                    }
                    for j in 0..m {
                        for l in 0..m {
                            block[j * m2 + kk * m + l] = -acc[j * m + l];
                        }
                    }
                }
            });
        let mut jm = DMatrix::from_row_slice(m2, m2, &jac);
        for k in 0..m2 {
            jm[(k, k)] += self.lam(k / m, k % m) / 4.0;
        }
        jm
    }

    fn scale(&self, a: &[f64]) -> f64 {
        let m = self.m;
        (0..m * m)
            .map(|k| (self.lam(k / m, k % m) * a[k] / 4.0).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `a_11` solving `(π²/2) a = a^p ∫φ_11^(p+1)`.
pub fn one_mode_amplitude(p: f64) -> f64 {
    let rule = GaussLegendre::new(NonZeroUsize::new(200).expect("positive"));
    let half: f64 = rule.integrate(0.0, 0.5, |t| (PI * t).sin().powf(p + 1.0));
    let i1 = 2.0 * half;
    ((PI * PI / 2.0) / (i1 * i1)).powf(1.0 / (p - 1.0))
}

pub fn newton_solve(cfg: &GalerkinConfig) -> Result<FourierApproximation> {
    newton_solve_report(cfg).map(|r| r.approx)
}

/// Damped Newton iteration on the Galerkin system
/// `(∇û, ∇φ_ij) - (|û|^(p-1) û, φ_ij) = 0`.
pub fn newton_solve_report(cfg: &GalerkinConfig) -> Result<NewtonReport> {
    if !(cfg.tolerance > 0.0) {
        return Err(Error::Usage("tolerance must be positive".into()));
    }
    if cfg.max_mode == 0 {
        return Err(Error::Usage("max_mode must be at least 1".into()));
    }
    let p = cfg.p.to_f64();
    let q = cfg.quad_order.unwrap_or((4 * cfg.max_mode).max(64));
    let mut approx = FourierApproximation::zero(cfg.max_mode);
    match &cfg.initial {
        InitialGuess::OneMode => approx.coeffs[0] = one_mode_amplitude(p),
        InitialGuess::Given(g) => {
            for (i, j, a) in g.terms() {
                if i <= cfg.max_mode && j <= cfg.max_mode {
                    approx.set_coeff(i, j, a)?;
                }
            }
        }
    }
    let asm = Assembly::new(approx.m, q, p);
    let mut a = approx.coeffs.clone();
    let mut u = asm.values(&a);
    let mut f = asm.residual(&a, &u);
    let mut rel = norm(&f) / asm.scale(&a).max(f64::MIN_POSITIVE);
    for it in 0..=cfg.max_iterations {
        if rel < cfg.tolerance {
            approx.coeffs = a;
            return Ok(NewtonReport {
                approx,
                iterations: it,
                residual: rel,
            });
        }
        if it == cfg.max_iterations {
            break;
        }
        let jac = asm.jacobian(&u);
        let Some(step) = jac.lu().solve(&DVector::from_column_slice(&f)) else {
            return Err(Error::Solver {
                iterations: it,
                residual: rel,
            });
        };
        let mut t = 1.0;
        loop {
            let trial: Vec<f64> = a.iter().zip(step.iter()).map(|(x, d)| x - t * d).collect();
            let tu = asm.values(&trial);
            let tf = asm.residual(&trial, &tu);
            let trel = norm(&tf) / asm.scale(&trial).max(f64::MIN_POSITIVE);
            if trel < rel || t < 1e-3 {
                (a, u, f, rel) = (trial, tu, tf, trel);
                break;
            }
            t *= 0.5;
        }
    }
    Err(Error::Solver {
        iterations: cfg.max_iterations,
        residual: rel,
    })
}
