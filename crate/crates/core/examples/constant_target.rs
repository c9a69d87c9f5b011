//! Solves the degree-zero target `f = 1/2`, whose single phase is `pi/6`.

use rhw_qsp::nlft::reconstruct_f;
use rhw_qsp::{solve_target, ChebyshevTarget, RunConfig};

fn main() -> rhw_qsp::Result<()> {
    let target = ChebyshevTarget::new(vec![0.5], 0.5)?;
    let solution = solve_target(&target, &RunConfig::default())?;
    let psi = solution.phases.values()[0];
    println!("psi_0        = {psi:.16}");
    println!("pi/6         = {:.16}", std::f64::consts::FRAC_PI_6);
    println!("f_psi(0.3)   = {:.16}", reconstruct_f(0.3, &solution.phases));
    Ok(())
}
