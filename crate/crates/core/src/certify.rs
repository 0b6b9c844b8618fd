//! Constants, the existence test, the `L∞` error bound, positivity and the
//! final certificate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{gamma, Interval, RationalExp};
use crate::quad::Extrema;

fn q_int(k: i64) -> RationalExp {
    RationalExp::integer(k)
}

fn dec(s: &str) -> Interval {
    Interval::parse_outward(s, s).expect("decimal literal")
}

/// `C₂ = 1/(√2 π)`, the Poincaré constant of the unit square.
pub fn poincare_c2() -> Interval {
    Interval::parse_outward(
        "0.22507907903927651738879979775",
        "0.22507907903927651738879979776",
    )
    .expect("decimal literal")
}

/// `|Ω|^((2-q)/(2q)) T_p` with `q = 2p/(2+p)` and `T_p` the best constant
/// of the Sobolev inequality on the plane, for `p > 2`.
pub fn embedding_constant(p: RationalExp, area: Interval) -> Result<Interval> {
    if p.to_f64() <= 2.0 {
        return Err(Error::Usage(format!(
            "embedding constant needs p > 2 (got {p}); use the Poincaré constant for p = 2"
        )));
    }
    let n = q_int(2);
    let q = n.mul(p)?.mul(n.add(p)?.recip()?)?;
    let n_over_q = n.mul(q.recip()?)?;
    let qi = q.to_interval();
    let two = Interval::point(2.0);
    let gam =
        gamma(q_int(2))? * gamma(q_int(2))? / (gamma(n_over_q)? * gamma(q_int(3).sub(n_over_q)?)?);
    let one_minus_inv_q = q_int(1).sub(q.recip()?)?;
    let t = Interval::PI.sqrt()?.recip()?
        * two.pow(q.recip()?)?.recip()?
        * ((qi - Interval::ONE) / (two - qi)).pow(one_minus_inv_q)?
        * gam.sqrt()?;
    let area_exp = q_int(2).sub(q)?.mul(q_int(2).mul(q)?.recip()?)?;
    Ok(area.pow(area_exp)? * t)
}

/// Constant `C_r` of `‖u‖_{L^r} ≤ C_r ‖∇u‖` on the unit square: `C₂` for
/// `r ≤ 2` (Hölder with unit area), the embedding constant above otherwise.
pub fn lp_constant(r: RationalExp) -> Result<Interval> {
    if r.to_f64() < 1.0 {
        return Err(Error::Usage(format!(
            "no embedding constant for exponent {r} < 1"
        )));
    }
    if r.to_f64() <= 2.0 {
        Ok(poincare_c2())
    } else {
        embedding_constant(r, Interval::ONE)
    }
}

/// Exponents `(q, r, s)` of the Hölder split behind `g`, written `q,r,s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct HolderTriple {
    pub q: RationalExp,
    pub r: RationalExp,
    pub s: RationalExp,
}

impl Default for HolderTriple {
    fn default() -> Self {
        HolderTriple {
            q: q_int(4),
            r: q_int(4),
            s: q_int(2),
        }
    }
}

impl HolderTriple {
    /// Requires `1/q + 1/r + 1/s = 1` and `q(p-1) ≥ 1`.
    pub fn validate(&self, p: RationalExp) -> Result<()> {
        let sum = self.q.recip()?.add(self.r.recip()?)?.add(self.s.recip()?)?;
        if sum != q_int(1) {
            return Err(Error::Usage(format!(
                "Hölder exponents {self} do not satisfy 1/q + 1/r + 1/s = 1"
            )));
        }
        if self.q.mul(p.sub_int(1))?.to_f64() < 1.0 {
            return Err(Error::Usage(format!(
                "Hölder exponents {self} need q(p-1) >= 1 for p = {p}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for HolderTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.q, self.r, self.s)
    }
}

impl TryFrom<String> for HolderTriple {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<HolderTriple> for String {
    fn from(h: HolderTriple) -> String {
        h.to_string()
    }
}

impl FromStr for HolderTriple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Usage(format!("expected q,r,s, got {s:?}")));
        }
        let e = |t: &str| t.parse::<RationalExp>();
        Ok(HolderTriple {
            q: e(parts[0])?,
            r: e(parts[1])?,
            s: e(parts[2])?,
        })
    }
}

/// Constants of the `L∞` estimate on the unit square.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LinfConstants {
    pub gamma: [Interval; 3],
    pub c0: Interval,
    pub c1: Interval,
    /// Built from `γ₂`.
    pub c2: Interval,
}

impl LinfConstants {
    pub fn unit_square() -> Self {
        let gamma = [Interval::ONE, dec("1.1548"), dec("0.22361")];
        let two_thirds = Interval::point(2.0) / Interval::point(3.0);
        let c1 = two_thirds.sqrt().expect("positive") * gamma[1];
        let c2 = gamma[2] / Interval::point(3.0)
            * (Interval::point(28.0) / Interval::point(5.0))
                .sqrt()
                .expect("positive");
        LinfConstants {
            gamma,
            c0: gamma[0],
            c1,
            c2,
        }
    }
}

/// The pair `(q, r)` in the `L∞` bound: `q ≥ 2`, `r ≥ 1/(p-1)`,
/// `2/q + 1/r = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinfExponents {
    pub q: RationalExp,
    pub r: RationalExp,
}

impl Default for LinfExponents {
    fn default() -> Self {
        LinfExponents {
            q: q_int(4),
            r: q_int(2),
        }
    }
}

impl LinfExponents {
    pub fn validate(&self, p: RationalExp) -> Result<()> {
        let ok = self.q.to_f64() >= 2.0
            && self.r.mul(p.sub_int(1))?.to_f64() >= 1.0
            && q_int(2).mul(self.q.recip()?)?.add(self.r.recip()?)? == q_int(1);
        if ok {
            Ok(())
        } else {
            Err(Error::Usage(format!(
                "L-infinity exponents ({}, {}) invalid for p = {p}",
                self.q, self.r
            )))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationConstants {
    pub p: RationalExp,
    pub holder: HolderTriple,
    pub linf_exponents: LinfExponents,
    pub c2: Interval,
    pub c4: Interval,
    pub c_n: Interval,
    /// First Dirichlet eigenvalue `2π²`.
    pub lambda1: Interval,
    pub linf: LinfConstants,
}

impl VerificationConstants {
    pub fn new(
        p: RationalExp,
        holder: HolderTriple,
        linf_exponents: LinfExponents,
        n: usize,
    ) -> Result<Self> {
        holder.validate(p)?;
        linf_exponents.validate(p)?;
        Ok(VerificationConstants {
            p,
            holder,
            linf_exponents,
            c2: poincare_c2(),
            c4: embedding_constant(q_int(4), Interval::ONE)?,
            c_n: crate::spectral::c_n(n),
            lambda1: Interval::point(2.0) * Interval::PI.sqr(),
            linf: LinfConstants::unit_square(),
        })
    }
}

/// `p C_r C_s C_{q(p-1)}^(p-1)` from given constants.
pub fn g_from_constants(
    p: RationalExp,
    c_r: Interval,
    c_s: Interval,
    c_qp: Interval,
) -> Result<Interval> {
    Ok(p.to_interval() * c_r * c_s * c_qp.pow(p.sub_int(1))?)
}

/// Coefficient `c` of `g(t) = c t^(p-1)`.
pub fn g_coefficient(p: RationalExp, holder: HolderTriple) -> Result<Interval> {
    holder.validate(p)?;
    g_from_constants(
        p,
        lp_constant(holder.r)?,
        lp_constant(holder.s)?,
        lp_constant(holder.q.mul(p.sub_int(1))?)?,
    )
}

/// `g(t) = c t^(p-1)`.
pub fn g_value(c: Interval, p: RationalExp, t: Interval) -> Result<Interval> {
    Ok(c * t.pow(p.sub_int(1))?)
}

/// `G(t) = (c/p) t^p`.
pub fn big_g(c: Interval, p: RationalExp, t: Interval) -> Result<Interval> {
    Ok(c / p.to_interval() * t.pow(p)?)
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AlphaSearch {
    pub alpha: f64,
    /// `α/K - G(α) - δ`, must be `≥ 0`.
    pub margin: Interval,
    /// `K g(α)`, must be `< 1`.
    pub kg: Interval,
}

/// Both inequalities of the existence test at `alpha`, using the upper
/// ends of `δ`, `K` and `c`.
pub fn existence_gate(
    delta: Interval,
    k: Interval,
    c: Interval,
    p: RationalExp,
    alpha: f64,
) -> Result<AlphaSearch> {
    let (d, kk, cc) = (
        Interval::point(delta.hi()),
        Interval::point(k.hi()),
        Interval::point(c.hi()),
    );
    let a = Interval::point(alpha);
    let margin = a / kk - big_g(cc, p, a)? - d;
    let kg = kk * g_value(cc, p, a)?;
    Ok(AlphaSearch { alpha, margin, kg })
}

impl AlphaSearch {
    pub fn holds(&self) -> bool {
        self.margin.lo() >= 0.0 && self.kg.hi() < 1.0
    }
}

/// Smallest `α` (up to inflation) with `δ ≤ α/K - G(α)` and `K g(α) < 1`.
///
/// The root of `α/K - G(α) = δ` below the peak of the left side is located
/// by bisection in floating point, then grown by factors `1 + 2⁻²⁰` until
/// both inequalities hold in interval arithmetic.
pub fn find_alpha(
    delta: Interval,
    k: Interval,
    c: Interval,
    p: RationalExp,
) -> Result<AlphaSearch> {
    if delta.lo() < 0.0 || k.lo() <= 0.0 || c.lo() < 0.0 {
        return Err(Error::Usage("find_alpha needs δ ≥ 0, K > 0, c ≥ 0".into()));
    }
    let (d, kk, cc, pf) = (delta.hi(), k.hi(), c.hi(), p.to_f64());
    let f = |a: f64| a / kk - cc / pf * a.powf(pf) - d;
    let mut alpha = if d == 0.0 {
        1e-12
    } else if cc == 0.0 {
        kk * d
    } else {
        let peak = (1.0 / (kk * cc)).powf(1.0 / (pf - 1.0));
        if f(peak) < 0.0 {
            return Err(Error::Verification(format!(
                "existence test fails: max of α/K - G(α) is {:.6e} < δ = {d:.6e}",
                f(peak) + d
            )));
        }
        let (mut lo, mut hi) = (0.0, peak);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    };
    let grow = 1.0 + 2f64.powi(-20);
    let mut last = existence_gate(delta, k, c, p, alpha)?;
    for _ in 0..100_000 {
        if last.holds() {
            return Ok(last);
        }
        alpha *= grow;
        last = existence_gate(delta, k, c, p, alpha)?;
    }
    Err(Error::Verification(format!(
        "no α verified: margin {} and K g(α) = {} at α = {alpha}",
        last.margin, last.kg
    )))
}

/// `δ = C₂ ‖Δû + |û|^(p-1) û‖`.
pub fn delta_from_residual(res_norm: Interval, c2: Interval) -> Interval {
    res_norm * c2
}

/// Bound `r₂` on `‖u - û‖_∞` from the `H¹₀` radius `eps`.
///
/// `u_norm` is `‖û‖` in `L^(r p')`, `p' = 2(p-1)`.
pub fn linf_bound(
    eps: Interval,
    u_norm: Interval,
    res_norm: Interval,
    consts: &VerificationConstants,
) -> Result<Interval> {
    let p = consts.p;
    let pp = q_int(2).mul(p.sub_int(1))?;
    let LinfExponents { q, r } = consts.linf_exponents;
    let lc = &consts.linf;
    let factor = if pp.to_f64() <= 1.0 {
        Interval::ONE
    } else {
        Interval::point(2.0).pow(pp.sub_int(1).mul(RationalExp::new(1, 2)?)?)?
    };
    let c_q = lp_constant(q)?;
    let c_rp = lp_constant(r.mul(pp)?)?;
    let inner = u_norm.pow(pp)?
        + eps.clamp_nonneg().pow(pp)? / (pp.to_interval() + Interval::ONE) * c_rp.pow(pp)?;
    let hess = factor * p.to_interval() * eps * c_q * inner.sqrt()? + res_norm;
    Ok(lc.c0 * consts.c2 * eps + lc.c1 * eps + lc.c2 * hess)
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PositivityVerdict {
    /// Upper bound for `sup √(u₋)`: `(|min û| + r₂)^(p-1)`.
    pub bound: Interval,
    /// Some region where `û - r₂ > 0`, so `u > 0` there.
    pub witness: bool,
    pub positive: bool,
}

/// Positivity test from the extrema of `û`: `u` is positive when the bound
/// stays below `λ₁` and `u` is positive somewhere.
pub fn positivity_check(
    ext: &Extrema,
    r2: Interval,
    p: RationalExp,
    lambda1: Interval,
) -> Result<PositivityVerdict> {
    let base = Interval::point(ext.min.mag()) + Interval::point(r2.hi());
    let bound = base.pow(p.sub_int(1))?;
    let witness = (ext.max - Interval::point(r2.hi())).lo() > 0.0;
    Ok(PositivityVerdict {
        bound,
        witness,
        positive: witness && bound.hi() < lambda1.lo(),
    })
}

/// `[max û - r₂, max û + r₂]`.
pub fn amplitude_enclosure(ext: &Extrema, r2: Interval) -> Interval {
    Interval::new(
        (Interval::point(ext.max.lo()) - Interval::point(r2.hi())).lo(),
        (Interval::point(ext.max.hi()) + Interval::point(r2.hi())).hi(),
    )
}

/// Pipeline stages that can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Config,
    Galerkin,
    Residual,
    Extrema,
    InverseBound,
    ExistenceTest,
    LinfBound,
    Positivity,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Config => "config",
            Stage::Galerkin => "galerkin",
            Stage::Residual => "residual",
            Stage::Extrema => "extrema",
            Stage::InverseBound => "inverse-bound",
            Stage::ExistenceTest => "existence-test",
            Stage::LinfBound => "linf-bound",
            Stage::Positivity => "positivity",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Provenance {
    pub p: String,
    pub modes: usize,
    pub eig_dim: usize,
    pub grid: usize,
    pub layers: usize,
    pub psa_degree: usize,
    pub holder: String,
    pub galerkin_iterations: Option<usize>,
    pub crate_version: String,
}

/// Everything the certificate reports. Stages that did not run stay `None`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ProofCertificate {
    /// `"valid"` or `"failed: <stage>"`.
    pub status: String,
    pub failure: Option<String>,
    pub residual_norm: Option<Interval>,
    pub delta: Option<Interval>,
    pub k: Option<Interval>,
    pub lambda_lower: Option<Vec<f64>>,
    pub lambda_upper: Option<Vec<f64>>,
    pub sup_weight: Option<Interval>,
    pub c_n: Option<Interval>,
    pub g_coefficient: Option<Interval>,
    /// `r₁`, the radius of the `H¹₀` ball.
    pub alpha: Option<f64>,
    pub existence_margin: Option<Interval>,
    pub kg: Option<Interval>,
    pub u_l2_norm: Option<Interval>,
    /// `r₂`, the `L∞` radius.
    pub r2: Option<Interval>,
    pub min_u: Option<Interval>,
    pub max_u: Option<Interval>,
    pub positivity: Option<PositivityVerdict>,
    pub amplitude: Option<Interval>,
    pub provenance: Provenance,
    pub config: serde_json::Value,
    /// Seconds since the Unix epoch; excluded from determinism checks.
    pub created: u64,
}

impl ProofCertificate {
    pub fn is_valid(&self) -> bool {
        self.status == "valid"
    }

    pub fn fail(&mut self, stage: Stage, msg: impl Into<String>) {
        self.status = format!("failed: {stage}");
        self.failure = Some(msg.into());
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// JSON with the timestamp zeroed, for comparing runs.
    pub fn body_json(&self) -> Result<String> {
        let mut c = self.clone();
        c.created = 0;
        c.to_json()
    }
}

/// Final gate: unless a stage already failed, re-checks the existence
/// inequalities from the stored intervals and the positivity verdict, and
/// sets the status.
pub fn build_certificate(mut cert: ProofCertificate, p: RationalExp) -> ProofCertificate {
    if cert.failure.is_some() {
        return cert;
    }
    let gate = match (cert.delta, cert.k, cert.g_coefficient, cert.alpha) {
        (Some(d), Some(k), Some(c), Some(a)) => existence_gate(d, k, c, p, a),
        _ => {
            cert.fail(Stage::ExistenceTest, "existence test inputs missing");
            return cert;
        }
    };
    match gate {
        Ok(g) if g.holds() => {}
        Ok(g) => {
            cert.fail(
                Stage::ExistenceTest,
                format!("re-check failed: margin {} K g(α) {}", g.margin, g.kg),
            );
            return cert;
        }
        Err(e) => {
            cert.fail(Stage::ExistenceTest, e.to_string());
            return cert;
        }
    }
    match cert.positivity {
        Some(v) if v.positive => cert.status = "valid".into(),
        Some(v) => cert.fail(
            Stage::Positivity,
            format!("bound {} vs λ₁, witness {}", v.bound, v.witness),
        ),
        None => cert.fail(Stage::Positivity, "positivity not checked"),
    }
    cert
}
