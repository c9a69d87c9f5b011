//! The forward nonlinear Fourier transform of `F_n = i tan psi_|n|` reproduces
//! the QSP response: its `b` evaluated at `z = e^{2 i theta}` equals
//! `i f(cos theta)`. Coefficients outside `[-d, d]` vanish.

use num_complex::Complex64;
use rhw_qsp::nlft::{nlft_forward, phases_to_sequence, reconstruct_f};
use rhw_qsp::PhaseFactors;

fn main() -> rhw_qsp::Result<()> {
    let phases = PhaseFactors::exact(vec![0.3, -0.2, 0.15, 0.05]);
    let pair = nlft_forward(&phases_to_sequence(&phases)?);
    let d = phases.half_degree() as i64;
    let outside = (pair.b.lo()..=pair.b.hi())
        .filter(|j| j.abs() > d)
        .map(|j| pair.b.coeff(j).norm())
        .fold(0.0, f64::max);
    println!("max |b_j| for |j| > {d}: {outside:.2e}, det defect {:.2e}", pair.determinant_defect());
    for theta in [0.0, 0.4, 1.1, 2.5] {
        let z = Complex64::from_polar(1.0, 2.0 * theta);
        let b = pair.b.eval(z);
        let f = reconstruct_f(theta.cos(), &phases);
        println!("theta {theta:.1}: Im b = {:+.15}, f_psi = {:+.15}, |Re b| = {:.1e}", b.im, f, b.re.abs());
    }
    Ok(())
}
