//! Weiss coefficients of `b / a` for a small target with a known completion.
//!
//! For `f(x) = 0.6 (2x^2 - 1)` the complementary polynomial is
//! `a = 0.1 (9 - z^-2)`, so `c_0 = 0` and `c_1 = i/3`. The example also prints
//! the decay bound `|c_j| <= r^(d-j) / eta`.

use rhw_qsp::weiss::{coefficient_decay_check, select_grid_size, weiss_coefficients};
use rhw_qsp::ChebyshevTarget;

fn main() -> rhw_qsp::Result<()> {
    let target = ChebyshevTarget::new(vec![0.0, 0.6], 0.4)?;
    let n = select_grid_size(target.half_degree(), target.eta(), 1e-12)?;
    let w = weiss_coefficients(&target.to_laurent_b(), target.eta(), 1e-12, None)?;
    println!("grid size N = {n}");
    for (j, c) in w.coeffs.iter().enumerate() {
        println!("c_{j} = {:+.16} i", c.im);
    }
    println!("expected c_1 = {:+.16} i", 1.0 / 3.0);
    println!("real-part residual before projection {:.2e}", w.residual_real_part);

    let report = coefficient_decay_check(&w);
    println!("decay radius {:.6}, bound holds: {}", report.radius, report.holds(1e-12));
    Ok(())
}
