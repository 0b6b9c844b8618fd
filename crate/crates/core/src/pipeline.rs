//! End-to-end verification run and the data behind the CLI subcommands.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::certify::{
    amplitude_enclosure, build_certificate, delta_from_residual, embedding_constant, find_alpha,
    g_coefficient, linf_bound, positivity_check, HolderTriple, LinfExponents, ProofCertificate,
    Provenance, Stage, VerificationConstants,
};
use crate::error::{Error, Result};
use crate::galerkin::{newton_solve_report, FourierApproximation, GalerkinConfig};
use crate::interval::{Interval, RationalExp};
use crate::quad::{extrema, lp_norm, residual_l2, sup_weight_from, Subdivision};
use crate::spectral::{assemble_pencil, compute_k, two_sided_bounds, verified_discrete_eigs};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub p: RationalExp,
    /// Largest sine mode `N_u` of the approximate solution.
    pub modes: usize,
    /// Largest mode `N` of the eigenvalue basis.
    pub eig_dim: usize,
    /// Cells per edge of the uniform mesh on one quadrant.
    pub grid: usize,
    /// Extra strips splitting the mesh row and column at the boundary.
    pub layers: usize,
    pub psa_degree: usize,
    pub holder: HolderTriple,
    pub linf: LinfExponents,
    /// Required lower bound of the last enclosed eigenvalue.
    pub tail_threshold: f64,
    pub newton_tolerance: f64,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub coeffs_in: Option<PathBuf>,
    pub coeffs_out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: RationalExp::new(3, 2).expect("valid"),
            modes: 60,
            eig_dim: 14,
            grid: 16,
            layers: 1,
            psa_degree: 12,
            holder: HolderTriple::default(),
            linf: LinfExponents::default(),
            tail_threshold: crate::spectral::TAIL_THRESHOLD,
            newton_tolerance: 1e-11,
            workers: None,
            out: None,
            coeffs_in: None,
            coeffs_out: None,
        }
    }
}

impl RunConfig {
    pub fn from_toml(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Usage(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let pf = self.p.to_f64();
        if !(pf > 1.0 && pf < 2.0) {
            return Err(Error::Usage(format!(
                "p must satisfy 1 < p < 2, got {}",
                self.p
            )));
        }
        for (name, v) in [
            ("modes", self.modes),
            ("eig-dim", self.eig_dim),
            ("grid", self.grid),
            ("psa-degree", self.psa_degree),
        ] {
            if v == 0 {
                return Err(Error::Usage(format!("{name} must be at least 1")));
            }
        }
        if self.workers == Some(0) {
            return Err(Error::Usage("workers must be at least 1".into()));
        }
        if !(self.tail_threshold > 1.0) {
            return Err(Error::Usage("tail threshold must exceed 1".into()));
        }
        self.holder.validate(self.p)?;
        self.linf.validate(self.p)
    }

    pub fn subdivision(&self) -> Subdivision {
        Subdivision::new(self.grid, self.layers, self.psa_degree)
    }

    /// Runs `f` on a pool with the configured number of workers.
    pub fn with_workers<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = self.workers {
            b = b.num_threads(w);
        }
        let pool = b
            .build()
            .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
        Ok(pool.install(f))
    }
}

fn log(msg: impl AsRef<str>) {
    eprintln!("{}", msg.as_ref());
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// The approximate solution: read from `coeffs_in` or computed by Newton.
pub fn approximate_solution(cfg: &RunConfig) -> Result<(FourierApproximation, Option<usize>)> {
    if let Some(path) = &cfg.coeffs_in {
        return Ok((FourierApproximation::read(path)?, None));
    }
    let gc = GalerkinConfig {
        max_mode: cfg.modes,
        p: cfg.p,
        tolerance: cfg.newton_tolerance,
        ..Default::default()
    };
    let rep = newton_solve_report(&gc)?;
    Ok((rep.approx, Some(rep.iterations)))
}

/// Runs every stage and returns the certificate. Stage failures are
/// recorded in the certificate; `Err` means the run could not start or an
/// output could not be written.
pub fn run_verify(cfg: &RunConfig) -> Result<ProofCertificate> {
    cfg.validate()?;
    let cert = cfg.with_workers(|| run_stages(cfg))?;
    if let Some(out) = &cfg.out {
        std::fs::write(out, cert.to_json()?)?;
    }
    Ok(cert)
}

fn run_stages(cfg: &RunConfig) -> ProofCertificate {
    let mut cert = ProofCertificate {
        status: "running".into(),
        provenance: Provenance {
            p: cfg.p.to_string(),
            modes: cfg.modes,
            eig_dim: cfg.eig_dim,
            grid: cfg.grid,
            layers: cfg.layers,
            psa_degree: cfg.psa_degree,
            holder: cfg.holder.to_string(),
            galerkin_iterations: None,
            crate_version: env!("CARGO_PKG_VERSION").into(),
        },
        config: serde_json::to_value(cfg).unwrap_or_default(),
        created: now(),
        ..Default::default()
    };
    if let Err((stage, e)) = stages(cfg, &mut cert) {
        log(format!("stage {stage} failed: {e}"));
        cert.fail(stage, e.to_string());
    }
    build_certificate(cert, cfg.p)
}

fn stages(cfg: &RunConfig, cert: &mut ProofCertificate) -> std::result::Result<(), (Stage, Error)> {
    let at = |s: Stage| move |e: Error| (s, e);
    let p = cfg.p;
    let consts = VerificationConstants::new(p, cfg.holder, cfg.linf, cfg.eig_dim)
        .map_err(at(Stage::Config))?;

    let t = Instant::now();
    let (u, iterations) = approximate_solution(cfg).map_err(at(Stage::Galerkin))?;
    cert.provenance.galerkin_iterations = iterations;
    if let Some(path) = &cfg.coeffs_out {
        u.write(path).map_err(at(Stage::Galerkin))?;
    }
    log(format!(
        "galerkin: N_u = {}, {:.1?}",
        u.max_mode(),
        t.elapsed()
    ));

    let sub = cfg.subdivision();
    let t = Instant::now();
    let res = residual_l2(&u, p, &sub).map_err(at(Stage::Residual))?;
    cert.residual_norm = Some(res);
    let delta = delta_from_residual(res, consts.c2);
    cert.delta = Some(delta);
    log(format!(
        "residual: {res}, delta {delta}, {:.1?}",
        t.elapsed()
    ));

    let t = Instant::now();
    let ext = extrema(&u, &sub).map_err(at(Stage::Extrema))?;
    cert.min_u = Some(ext.min);
    cert.max_u = Some(ext.max);
    if !ext.positive {
        return Err((
            Stage::Extrema,
            Error::Verification("approximate solution not verified positive inside".into()),
        ));
    }
    let sup_w = sup_weight_from(&ext, p).map_err(at(Stage::Extrema))?;
    cert.sup_weight = Some(sup_w);
    log(format!("extrema: max {}, {:.1?}", ext.max, t.elapsed()));

    let t = Instant::now();
    let pencil = assemble_pencil(&u, p, cfg.eig_dim, &sub).map_err(at(Stage::InverseBound))?;
    let disc = verified_discrete_eigs(&pencil).map_err(at(Stage::InverseBound))?;
    let enc = two_sided_bounds(&disc, consts.c_n, sup_w);
    cert.c_n = Some(consts.c_n);
    cert.lambda_lower = Some(enc.lower.clone());
    cert.lambda_upper = Some(enc.upper.clone());
    let k = compute_k(&enc, Some(cfg.tail_threshold)).map_err(at(Stage::InverseBound))?;
    cert.k = Some(k);
    log(format!(
        "inverse bound: K <= {}, {:.1?}",
        k.hi(),
        t.elapsed()
    ));

    let c = g_coefficient(p, cfg.holder).map_err(at(Stage::ExistenceTest))?;
    cert.g_coefficient = Some(c);
    let alpha = find_alpha(delta, k, c, p).map_err(at(Stage::ExistenceTest))?;
    cert.alpha = Some(alpha.alpha);
    cert.existence_margin = Some(alpha.margin);
    cert.kg = Some(alpha.kg);
    log(format!("existence: r1 = {}", alpha.alpha));

    let pp = RationalExp::integer(2)
        .mul(p.sub_int(1))
        .map_err(at(Stage::LinfBound))?;
    let e = cfg.linf.r.mul(pp).map_err(at(Stage::LinfBound))?;
    let u_norm = lp_norm(&u, e, &sub).map_err(at(Stage::LinfBound))?;
    cert.u_l2_norm =
        Some(lp_norm(&u, RationalExp::integer(2), &sub).map_err(at(Stage::LinfBound))?);
    let r2 = linf_bound(Interval::point(alpha.alpha), u_norm, res, &consts)
        .map_err(at(Stage::LinfBound))?;
    cert.r2 = Some(r2);
    log(format!("linf: r2 <= {}", r2.hi()));

    let verdict = positivity_check(&ext, r2, p, consts.lambda1).map_err(at(Stage::Positivity))?;
    cert.positivity = Some(verdict);
    cert.amplitude = Some(amplitude_enclosure(&ext, r2));
    Ok(())
}

/// Enclosures printed by the `constants` subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub c2: Interval,
    pub c4: Interval,
    /// Embedding constant for the requested exponent, when it is not 2 or 4.
    pub c_p: Option<(RationalExp, Interval)>,
    pub c_n: Interval,
    pub n: usize,
    pub lambda1: Interval,
}

pub fn constants_report(p: Option<RationalExp>, n: usize) -> Result<ConstantsReport> {
    let c_p = match p {
        Some(p) if p != RationalExp::integer(2) && p != RationalExp::integer(4) => {
            Some((p, embedding_constant(p, Interval::ONE)?))
        }
        _ => None,
    };
    Ok(ConstantsReport {
        c2: crate::certify::poincare_c2(),
        c4: embedding_constant(RationalExp::integer(4), Interval::ONE)?,
        c_p,
        c_n: crate::spectral::c_n(n),
        n,
        lambda1: Interval::point(2.0) * Interval::PI.sqr(),
    })
}

impl std::fmt::Display for ConstantsReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "C_2      {}  (upper {:.12})", self.c2, self.c2.hi())?;
        writeln!(f, "C_4      {}  (upper {:.12})", self.c4, self.c4.hi())?;
        if let Some((p, c)) = &self.c_p {
            writeln!(f, "{:<8} {c}  (upper {:.12})", format!("C_{p}"), c.hi())?;
        }
        writeln!(f, "C_N      {}  (N = {})", self.c_n, self.n)?;
        write!(f, "lambda_1 {}", self.lambda1)
    }
}

/// CSV rows `x,y,u,lower,upper` on a `(grid + 1)²` lattice, with the band
/// `u ∓ r2` when a radius is given.
pub fn plot_csv(u: &FourierApproximation, grid: usize, r2: Option<f64>) -> String {
    let mut s = String::from("x,y,u,lower,upper\n");
    let r = r2.unwrap_or(0.0);
    for i in 0..=grid {
        for j in 0..=grid {
            let (x, y) = (i as f64 / grid as f64, j as f64 / grid as f64);
            let v = u.eval(x, y);
            let _ = writeln!(s, "{x},{y},{v:.12e},{:.12e},{:.12e}", v - r, v + r);
        }
    }
    s
}
