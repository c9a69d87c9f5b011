//! Fourier coefficients of `b / a`, where `a` is the outer completion of `b`.
//!
//! Given `|b| <= 1 - eta` on the unit circle, `a = exp(G)` with
//! `G = R - i H(R)` and `R = log sqrt(1 - |b|^2)`. On a grid of `N` roots of
//! unity this becomes two transforms around the one-sided projection in
//! [`crate::fourier::analytic_projection`].

use crate::error::{Error, Result};
use crate::fourier::{analytic_projection, dft_on_roots, evaluate_laurent_on_roots, UnitCircleGrid};
use crate::laurent::LaurentPoly;
use num_complex::Complex64;

/// Relative slack on `|b(z_l)| <= 1 - eta`.
pub const MARGIN_TOLERANCE: f64 = 1e-12;

/// Smallest power of two `N` with `N >= (8d/eta) log(576 d^2 / (eta^4 eps))`
/// and `N > 2d/eta`.
///
/// A constant target (`d = 0`) is sized as `d = 1`.
pub fn select_grid_size(d: usize, eta: f64, eps: f64) -> Result<usize> {
    if !(eta > 0.0 && eta <= 0.5) {
        return Err(Error::InvalidParameter(format!("eta = {eta} outside (0, 1/2]")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps = {eps} outside (0, 1)")));
    }
    let d = d.max(1) as f64;
    let bound = (8.0 * d / eta) * (576.0 * d * d / (eta.powi(4) * eps)).ln();
    let floor = 2.0 * d / eta;
    let need = bound.max(floor + 1.0);
    if !need.is_finite() || need >= (1u64 << 62) as f64 {
        return Err(Error::SizingOverflow(need));
    }
    Ok((need.ceil() as usize).next_power_of_two())
}

/// Output of [`weiss_coefficients`].
#[derive(Debug, Clone, PartialEq)]
pub struct WeissResult {
    /// `c_0 ..= c_d`, projected onto the imaginary axis.
    pub coeffs: Vec<Complex64>,
    pub grid_size: usize,
    pub eta: f64,
    pub eps: f64,
    /// `max_j |Re c_j|` before projection.
    pub residual_real_part: f64,
    /// `max_l |b(z_l) exp(-G(z_l))|` over the grid.
    pub ratio_sup: f64,
}

impl WeissResult {
    pub fn half_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Imaginary parts of `c_0 ..= c_d`.
    pub fn imag(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.im).collect()
    }

    /// Coefficient accuracy targeted by the grid choice, `eps eta^2 / (12 d)`.
    pub fn accuracy_budget(&self) -> f64 {
        self.eps * self.eta * self.eta / (12.0 * self.half_degree().max(1) as f64)
    }

    /// Analyticity radius `r` with `r^{2d} = 1 / (1 - eta)`; `1` when `d = 0`.
    pub fn decay_radius(&self) -> f64 {
        let d = self.half_degree();
        if d == 0 {
            1.0
        } else {
            (1.0 - self.eta).powf(-1.0 / (2.0 * d as f64))
        }
    }
}

/// Coefficients `c_0 ..= c_d` of `b / a` on an `N`-point grid.
///
/// `b` must be the Laurent image of an even real target: support in
/// `[-d, d]`, symmetric, pure imaginary coefficients. `N` defaults to
/// [`select_grid_size`]; an override must be a power of two covering
/// `2d + 1` indices.
pub fn weiss_coefficients(
    b: &LaurentPoly,
    eta: f64,
    eps: f64,
    grid_override: Option<usize>,
) -> Result<WeissResult> {
    let d = b.max_abs_index() as usize;
    let n = match grid_override {
        Some(n) => n,
        None => select_grid_size(d, eta, eps)?,
    };
    if !(eta > 0.0 && eta <= 0.5) {
        return Err(Error::InvalidParameter(format!("eta = {eta} outside (0, 1/2]")));
    }
    let grid = UnitCircleGrid::new(n)?;
    let support = LaurentPoly::new(-(d as i64), (-(d as i64)..=d as i64).map(|j| b.coeff(j)).collect());
    let b_samples = evaluate_laurent_on_roots(&support, grid)?;

    let limit = 1.0 - eta;
    let mut log_modulus = Vec::with_capacity(n);
    for (node, v) in b_samples.iter().enumerate() {
        let m = v.norm();
        if m >= 1.0 {
            return Err(Error::SingularFactorization { node, value: m });
        }
        if m > limit * (1.0 + MARGIN_TOLERANCE) {
            return Err(Error::MarginViolation {
                node,
                grid: n,
                value: m,
                limit,
            });
        }
        log_modulus.push(Complex64::new(0.5 * (-m * m).ln_1p(), 0.0));
    }

    // Intermediate buffers are dropped as soon as possible; grids reach 2^24.
    let r_hat = dft_on_roots(&log_modulus)?;
    drop(log_modulus);
    let g_hat = analytic_projection(&r_hat);
    drop(r_hat);
    let mut ratio = evaluate_laurent_on_roots(&g_hat, grid)?;
    drop(g_hat);
    for (gv, bv) in ratio.iter_mut().zip(&b_samples) {
        *gv = bv * (-*gv).exp();
    }
    drop(b_samples);
    let ratio_sup = ratio.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let c_hat = dft_on_roots(&ratio)?;
    drop(ratio);

    let raw: Vec<Complex64> = (0..=d as i64).map(|j| c_hat.get(j)).collect();
    let residual_real_part = raw.iter().map(|c| c.re.abs()).fold(0.0, f64::max);
    let coeffs = raw.iter().map(|c| Complex64::new(0.0, c.im)).collect();
    Ok(WeissResult {
        coeffs,
        grid_size: n,
        eta,
        eps,
        residual_real_part,
        ratio_sup,
    })
}

/// Per-index comparison of `|c_j|` against `r^{d - j} / eta`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport {
    pub radius: f64,
    pub bounds: Vec<f64>,
    pub margins: Vec<f64>,
}

impl DecayReport {
    pub fn min_margin(&self) -> f64 {
        self.margins.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn holds(&self, tolerance: f64) -> bool {
        self.min_margin() >= -tolerance
    }
}

pub fn coefficient_decay_check(result: &WeissResult) -> DecayReport {
    let d = result.half_degree();
    let radius = result.decay_radius();
    let bounds: Vec<f64> = (0..=d)
        .map(|j| radius.powi((d - j) as i32) / result.eta)
        .collect();
    let margins = bounds
        .iter()
        .zip(&result.coeffs)
        .map(|(bound, c)| bound - c.norm())
        .collect();
    DecayReport {
        radius,
        bounds,
        margins,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::target::{jacobi_anger_target, ChebyshevTarget};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_size_examples() {
        // (8 / 0.4) log(576 / (0.0256 * 0.5)) = 20 log(45000) ~ 214.3
        assert_eq!(select_grid_size(1, 0.4, 0.5).unwrap(), 256);
        // 8000 log(5.76e18) ~ 3.46e5
        assert_eq!(select_grid_size(100, 0.1, 1e-8).unwrap(), 1 << 19);
        let mut last = 0;
        for p in 1..14 {
            let n = select_grid_size(20, 0.05, 10f64.powi(-p)).unwrap();
            assert!(n >= last);
            last = n;
        }
        for &(d, eta) in &[(1usize, 0.5), (7, 0.01), (300, 0.3)] {
            let n = select_grid_size(d, eta, 0.1).unwrap();
            assert!(n as f64 > 2.0 * d as f64 / eta);
            assert!(n.is_power_of_two());
        }
    }

    #[test]
    fn grid_size_rejects() {
        assert!(select_grid_size(3, 0.0, 0.1).is_err());
        assert!(select_grid_size(3, 0.7, 0.1).is_err());
        assert!(select_grid_size(3, 0.1, 0.0).is_err());
        assert!(select_grid_size(3, 0.1, 1.0).is_err());
        assert!(matches!(
            select_grid_size(usize::MAX / 4, 1e-12, 1e-300),
            Err(Error::SizingOverflow(_))
        ));
    }

    #[test]
    fn zero_b() {
        let b = ChebyshevTarget::new(vec![0.0; 4], 0.5).unwrap().to_laurent_b();
        let w = weiss_coefficients(&b, 0.5, 1e-6, Some(64)).unwrap();
        assert!(w.coeffs.iter().all(|c| c.norm() == 0.0));
        let report = coefficient_decay_check(&w);
        assert_eq!(report.margins, report.bounds);
    }

    #[test]
    fn constant_b() {
        let b = ChebyshevTarget::new(vec![0.5], 0.5).unwrap().to_laurent_b();
        let w = weiss_coefficients(&b, 0.5, 1e-10, None).unwrap();
        assert_eq!(w.coeffs.len(), 1);
        assert!((w.coeffs[0] - c(0.0, 0.5 / 0.75f64.sqrt())).norm() < 1e-14);
        let report = coefficient_decay_check(&w);
        assert_eq!(report.bounds, vec![2.0]);
        assert!(report.margins[0] > 2.0 - 0.5774);
    }

    // For b = 0.3i (z + 1/z), 1 + b^2 = -0.09 z^-2 (z^2 - 9)(z^2 - 1/9); the outer
    // factor is a*(z) = 0.1 (9 - z^2), so a(z) = 0.1 (9 - z^-2) and
    // b / a = (i/3)(z + 1/z) sum_m (z^-2 / 9)^m, giving c_0 = 0, c_1 = i/3.
    #[test]
    fn two_term_b_against_outer_factor_oracle() {
        let m = 1_000_000usize;
        let mut c0 = c(0.0, 0.0);
        let mut c1 = c(0.0, 0.0);
        for l in 0..m {
            let z = Complex64::from_polar(1.0, 2.0 * PI * l as f64 / m as f64);
            let b = c(0.0, 0.3) * (z + z.inv());
            let a = (c(9.0, 0.0) - z.powi(-2)) * 0.1;
            // a a* + b b* = 1 on the circle
            debug_assert!(((a.norm_sqr() + b.norm_sqr()) - 1.0).abs() < 1e-12);
            let ratio = b / a;
            c0 += ratio;
            c1 += ratio * z.inv();
        }
        c0 /= m as f64;
        c1 /= m as f64;
        assert!(c0.norm() < 1e-12);
        assert!((c1 - c(0.0, 1.0 / 3.0)).norm() < 1e-12);

        let b = ChebyshevTarget::new(vec![0.0, 0.6], 0.4).unwrap().to_laurent_b();
        let w = weiss_coefficients(&b, 0.4, 1e-12, None).unwrap();
        assert!((w.coeffs[0] - c0).norm() < 1e-10);
        assert!((w.coeffs[1] - c1).norm() < 1e-10);
    }

    #[test]
    fn margin_violation_names_node() {
        let b = ChebyshevTarget::new(vec![0.0, 0.6], 0.4).unwrap().to_laurent_b();
        match weiss_coefficients(&b, 0.45, 1e-6, Some(64)) {
            Err(Error::MarginViolation { node, grid, value, .. }) => {
                assert_eq!(grid, 64);
                assert_eq!(node, 0);
                assert!((value - 0.6).abs() < 1e-14);
            }
            other => panic!("expected margin violation, got {other:?}"),
        }
        let unit = LaurentPoly::constant(c(0.0, 1.0));
        assert!(matches!(
            weiss_coefficients(&unit, 0.1, 1e-6, Some(8)),
            Err(Error::SingularFactorization { node: 0, .. })
        ));
    }

    #[test]
    fn override_must_be_valid() {
        let b = ChebyshevTarget::new(vec![0.1, 0.1, 0.1], 0.5).unwrap().to_laurent_b();
        assert!(matches!(weiss_coefficients(&b, 0.5, 1e-6, Some(48)), Err(Error::Sizing(48))));
        assert!(matches!(
            weiss_coefficients(&b, 0.5, 1e-6, Some(4)),
            Err(Error::Aliasing { .. })
        ));
    }

    #[test]
    fn imaginary_and_bounded_on_jacobi_anger() {
        let t = jacobi_anger_target(20.0, 0.9, 1e-12).unwrap();
        let w = weiss_coefficients(&t.to_laurent_b(), t.eta(), 1e-8, None).unwrap();
        let scale = w.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        assert!(w.residual_real_part <= 1e-10 * scale);
        assert!(coefficient_decay_check(&w).holds(1e-9));
        let eta = t.eta();
        let bound = (1.0 - eta) / (1.0 - (1.0 - eta).powi(2)).sqrt();
        assert!(w.ratio_sup <= bound * (1.0 + 1e-12));
        assert!(bound <= 1.0 / eta.sqrt());
    }

    #[test]
    fn stabilizes_under_grid_doubling() {
        let t = jacobi_anger_target(10.0, 0.8, 1e-10).unwrap();
        let b = t.to_laurent_b();
        let eps = 1e-6;
        let base = weiss_coefficients(&b, t.eta(), eps, None).unwrap();
        let budget = base.accuracy_budget();
        let mut prev = base.clone();
        for shift in 1..=2 {
            let next = weiss_coefficients(&b, t.eta(), eps, Some(base.grid_size << shift)).unwrap();
            for (x, y) in prev.coeffs.iter().zip(&next.coeffs) {
                assert!((x - y).norm() < budget);
            }
            prev = next;
        }
    }

    #[test]
    fn deterministic() {
        let t = jacobi_anger_target(8.0, 0.7, 1e-10).unwrap();
        let b = t.to_laurent_b();
        let a = weiss_coefficients(&b, t.eta(), 1e-8, None).unwrap();
        let again = weiss_coefficients(&b, t.eta(), 1e-8, None).unwrap();
        assert_eq!(a, again);
    }
}
