//! Compares the phase-side sum `-sum log cos^2 psi` with the Szego integral of
//! the target for a handful of random instances.

use rhw_qsp::nlft::{plancherel_lhs, plancherel_residual};
use rhw_qsp::target::{random_phase_target, RandomPhaseSpec};

fn main() -> rhw_qsp::Result<()> {
    println!("{:>6} {:>20} {:>20} {:>10}", "length", "phase side", "integral", "residual");
    for (i, length) in [5, 21, 81, 161].into_iter().enumerate() {
        let (phases, target) = random_phase_target(&RandomPhaseSpec::new(length, 100 + i as u64, 0.8))?;
        println!(
            "{length:>6} {:>20.15} {:>20.15} {:>10.2e}",
            plancherel_lhs(&phases),
            target.szego_integral_converged()?,
            plancherel_residual(&phases, &target)?
        );
    }
    Ok(())
}
