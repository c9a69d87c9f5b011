//! Inspects the `k`-th Hankel system: pivots, residual, and the spectral
//! bracket `[1, 1 + ||Xi||^2]` against the margin bound `||Xi|| <= 1/sqrt(eta)`.

use rhw_qsp::riemann_hilbert::{condition_report, HankelSystem};
use rhw_qsp::target::{random_phase_target, RandomPhaseSpec};
use rhw_qsp::weiss::weiss_coefficients;

fn main() -> rhw_qsp::Result<()> {
    let (_, target) = random_phase_target(&RandomPhaseSpec::new(41, 5, 1.0))?;
    let w = weiss_coefficients(&target.to_laurent_b(), target.eta(), 1e-10, None)?;
    let c = w.imag();
    println!("eta = {:.4}", target.eta());
    println!("{:>3} {:>12} {:>12} {:>12} {:>12}", "k", "||Xi||", "bound", "cond", "residual");
    for k in [0, 10, 20, 30, 40] {
        let sys = HankelSystem::new(&c, k)?;
        let solved = sys.solve()?;
        let report = condition_report(&c, k, target.eta())?;
        println!(
            "{k:>3} {:>12.6} {:>12.6} {:>12.6} {:>12.3e}",
            report.xi_norm,
            report.xi_bound,
            report.condition_number(),
            sys.residual(&solved.pair)
        );
    }
    Ok(())
}
