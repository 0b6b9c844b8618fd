use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use semilinear_verify::certify::HolderTriple;
use semilinear_verify::pipeline::{
    approximate_solution, constants_report, plot_csv, run_verify, RunConfig,
};
use semilinear_verify::psa::golden::golden_cases;
use semilinear_verify::{Error, RationalExp};

const EXIT_STAGE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "semilinear-verify",
    version,
    about = "Verified positive solutions of -Δu = |u|^(p-1)u on the unit square"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full verification and write a certificate.
    Verify(RunArgs),
    /// Print the embedding constants, C_N and the first eigenvalue.
    Constants {
        /// Also print the embedding constant for this exponent.
        #[arg(long)]
        p: Option<RationalExp>,
        #[arg(long, default_value_t = 14)]
        eig_dim: usize,
    },
    /// Check the worked power-series examples.
    PsaSelftest,
    /// Sample the approximate solution on a lattice as CSV.
    PlotData {
        /// Lattice intervals per axis.
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long)]
        p: Option<RationalExp>,
        #[arg(long)]
        modes: Option<usize>,
        /// Read û instead of solving for it.
        #[arg(long)]
        coeffs_in: Option<PathBuf>,
        /// Radius of the error band around û.
        #[arg(long)]
        r2: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Default)]
struct RunArgs {
    /// TOML file with any of the settings below; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<RationalExp>,
    /// Largest sine mode of the approximate solution.
    #[arg(long)]
    modes: Option<usize>,
    /// Largest sine mode of the eigenvalue basis.
    #[arg(long)]
    eig_dim: Option<usize>,
    /// Cells per edge of the mesh on one quadrant.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    layers: Option<usize>,
    #[arg(long)]
    psa_degree: Option<usize>,
    /// Hölder exponents q,r,s.
    #[arg(long)]
    holder: Option<HolderTriple>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    coeffs_in: Option<PathBuf>,
    #[arg(long)]
    coeffs_out: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let mut c = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = &self.$f { c.$f = v.clone(); } )* };
        }
        take!(p, modes, eig_dim, grid, layers, psa_degree, holder);
        macro_rules! take_opt {
            ($($f:ident),*) => { $( if self.$f.is_some() { c.$f = self.$f.clone(); } )* };
        }
        take_opt!(out, workers, coeffs_in, coeffs_out);
        c.validate()?;
        Ok(c)
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Usage(_) => ExitCode::from(EXIT_USAGE),
        _ => ExitCode::from(EXIT_STAGE),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Verify(args) => {
            let cfg = match args.resolve() {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            match run_verify(&cfg) {
                Ok(cert) => {
                    match cert.to_json() {
                        Ok(j) if cfg.out.is_none() => println!("{j}"),
                        Ok(_) => println!("{}", cert.status),
                        Err(e) => return fail(&e),
                    }
                    if cert.is_valid() {
                        ExitCode::SUCCESS
                    } else {
                        eprintln!("{}: {}", cert.status, cert.failure.as_deref().unwrap_or(""));
                        ExitCode::from(EXIT_STAGE)
                    }
                }
                Err(e) => fail(&e),
            }
        }
        Cmd::Constants { p, eig_dim } => match constants_report(p, eig_dim) {
            Ok(r) => {
                println!("{r}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
        Cmd::PsaSelftest => {
            let cases = golden_cases();
            let mut ok = true;
            for c in &cases {
                println!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
                if !c.passed {
                    println!("     got {}", c.detail);
                    ok = false;
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_STAGE)
            }
        }
        Cmd::PlotData {
            grid,
            p,
            modes,
            coeffs_in,
            r2,
            out,
        } => {
            if grid == 0 {
                return fail(&Error::Usage("grid must be at least 1".into()));
            }
            let run = RunArgs {
                p,
                modes,
                coeffs_in,
                out,
                ..Default::default()
            };
            let cfg = match run.resolve() {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            let u = match approximate_solution(&cfg) {
                Ok((u, _)) => u,
                Err(e) => return fail(&e),
            };
            let csv = plot_csv(&u, grid, r2);
            match &cfg.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, csv) {
                        return fail(&e.into());
                    }
                }
                None => print!("{csv}"),
            }
            ExitCode::SUCCESS
        }
    }
}
