//! Draws random phases, builds their target with the forward NLFT, and checks
//! that the solver recovers the phases.

use rhw_qsp::target::{random_phase_target, RandomPhaseSpec};
use rhw_qsp::{solve_target, RunConfig};

fn main() -> rhw_qsp::Result<()> {
    for (length, damped) in [(51, false), (301, true)] {
        let mut spec = RandomPhaseSpec::new(length, 17, 0.5);
        if damped {
            spec = spec.with_outer_thirds_damped();
        }
        let (truth, target) = random_phase_target(&spec)?;
        let config = RunConfig {
            eps: 1e-10,
            ..RunConfig::default()
        };
        let solved = solve_target(&target, &config)?;
        println!(
            "length {length:4} damped {damped:5}  eta {:.3}  max |psi - psi*| = {:.3e}",
            target.eta(),
            solved.phases.max_abs_diff(&truth)?
        );
    }
    Ok(())
}
