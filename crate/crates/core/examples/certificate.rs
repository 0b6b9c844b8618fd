//! A complete verification run at reduced size, printing the certificate.
//!
//! `cargo run --release --example certificate -- <modes> <eig-dim> <grid>`

use semilinear_verify::pipeline::{run_verify, RunConfig};

fn main() {
    let arg = |i: usize, d: usize| {
        std::env::args()
            .nth(i)
            .and_then(|s| s.parse().ok())
            .unwrap_or(d)
    };
    let cfg = RunConfig {
        modes: arg(1, 20),
        eig_dim: arg(2, 7),
        grid: arg(3, 6),
        psa_degree: 8,
        ..RunConfig::default()
    };
    let cert = run_verify(&cfg).expect("configuration is valid");
    println!("{}", cert.to_json().unwrap());
    if let (Some(r1), Some(r2)) = (cert.alpha, cert.r2) {
        println!("status {}: r1 = {r1}, r2 <= {}", cert.status, r2.hi());
    } else {
        println!("status {}", cert.status);
    }
}
