//! Phase factors for the scaled Hamiltonian-simulation target
//! `scale * cos(tau x)`, truncated by the Jacobi-Anger expansion.
//!
//! Usage: `cargo run --release --example jacobi_anger -- [tau] [scale]`

use rhw_qsp::nlft::roundtrip_error;
use rhw_qsp::target::jacobi_anger_target;
use rhw_qsp::{solve_target, RunConfig};
use std::time::Instant;

fn main() -> rhw_qsp::Result<()> {
    let mut args = std::env::args().skip(1);
    let tau: f64 = args.next().map_or(100.0, |s| s.parse().expect("tau"));
    let scale: f64 = args.next().map_or(0.99, |s| s.parse().expect("scale"));

    let target = jacobi_anger_target(tau, scale, 1e-12)?;
    let config = RunConfig {
        eps: 1e-10,
        ..RunConfig::default()
    };
    let start = Instant::now();
    let solution = solve_target(&target, &config)?;
    let elapsed = start.elapsed().as_secs_f64();

    println!("tau = {tau}, scale = {scale}, eta = {:.3e}", target.eta());
    println!("d = {}, N = {}", target.half_degree(), solution.weiss.grid_size);
    println!("wall time {elapsed:.3} s");
    println!("max |f - f_psi| on 1000 nodes: {:.3e}", roundtrip_error(&target, &solution.phases, 1000)?);
    Ok(())
}
