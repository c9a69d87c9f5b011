//! Forward nonlinear Fourier transform and the QSP unitary it encodes.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::riemann_hilbert::PhaseFactors;
use crate::target::{ChebyshevTarget, KahanSum};
use num_complex::Complex64;

/// A pair `(a, b)` of Laurent polynomials, multiplied as
/// `(a, b)(c, d) = (ac - b d*, ad + b c*)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SU2LaurentPair {
    pub a: LaurentPoly,
    pub b: LaurentPoly,
}

impl SU2LaurentPair {
    pub fn identity() -> Self {
        Self {
            a: LaurentPoly::constant(Complex64::new(1.0, 0.0)),
            b: LaurentPoly::zero(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            a: &(&self.a * &rhs.a) - &(&self.b * &rhs.b.star()),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a.star()),
        }
    }

    /// Largest coefficient of `a a* + b b* - 1`.
    pub fn determinant_defect(&self) -> f64 {
        let det = &(&self.a * &self.a.star()) + &(&self.b * &self.b.star());
        let one = LaurentPoly::constant(Complex64::new(1.0, 0.0));
        (&det - &one).max_abs_coeff()
    }
}

/// A finitely supported sequence `F_lo, ..., F_{lo + len - 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NlftSequence {
    pub lo: i64,
    pub values: Vec<Complex64>,
}

/// `F_n = i tan(psi_|n|)` for `n` in `[-d, d]`.
pub fn phases_to_sequence(phases: &PhaseFactors) -> Result<NlftSequence> {
    let psi = phases.values();
    if psi.is_empty() {
        return Err(Error::InvalidParameter("empty phase list".into()));
    }
    for (index, p) in psi.iter().enumerate() {
        if !p.is_finite() || p.cos().abs() < 1e-15 {
            return Err(Error::Pole { index });
        }
    }
    let d = psi.len() as i64 - 1;
    let values = (-d..=d)
        .map(|n| Complex64::new(0.0, psi[n.unsigned_abs() as usize].tan()))
        .collect();
    Ok(NlftSequence { lo: -d, values })
}

/// Ordered product of `(1, F_n z^n) / sqrt(1 + |F_n|^2)`, ascending in `n`.
pub fn nlft_forward(seq: &NlftSequence) -> SU2LaurentPair {
    let mut pair = SU2LaurentPair::identity();
    for (offset, &f) in seq.values.iter().enumerate() {
        let n = seq.lo + offset as i64;
        let s = Complex64::new(1.0 / (1.0 + f.norm_sqr()).sqrt(), 0.0);
        let a = &pair.a - &pair.b.shift(-n).scale(f.conj());
        let b = &pair.a.shift(n).scale(f) + &pair.b;
        pair = SU2LaurentPair {
            a: a.scale(s),
            b: b.scale(s),
        };
    }
    pair
}

/// Dense complex 2x2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (self.0, rhs.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }

    /// `exp(i psi Z)`.
    pub fn z_rotation(psi: f64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Mat2([
            [Complex64::from_polar(1.0, psi), zero],
            [zero, Complex64::from_polar(1.0, -psi)],
        ])
    }

    /// The signal operator `[[x, i sqrt(1-x^2)], [i sqrt(1-x^2), x]]`.
    pub fn signal(x: f64) -> Self {
        let s = Complex64::new(0.0, (1.0 - x * x).max(0.0).sqrt());
        let x = Complex64::new(x, 0.0);
        Mat2([[x, s], [s, x]])
    }
}

/// `U_0 = e^{i psi_0 Z}`, `U_k = e^{i psi_k Z} W U_{k-1} W e^{i psi_k Z}`.
pub fn qsp_unitary(x: f64, phases: &PhaseFactors) -> Mat2 {
    let w = Mat2::signal(x);
    let psi = phases.values();
    let mut u = Mat2::z_rotation(psi[0]);
    for &p in &psi[1..] {
        let r = Mat2::z_rotation(p);
        u = r.mul(&w).mul(&u).mul(&w).mul(&r);
    }
    u
}

/// `Im` of the top-left entry of the QSP unitary.
pub fn reconstruct_f(x: f64, phases: &PhaseFactors) -> f64 {
    qsp_unitary(x, phases).0[0][0].im
}

/// `sum_{k in Z} log(1 + tan^2 psi_|k|)`, with `k = 0` counted once.
pub fn plancherel_lhs(phases: &PhaseFactors) -> f64 {
    let mut sum = KahanSum::default();
    for (k, p) in phases.values().iter().enumerate() {
        let term = -2.0 * p.cos().abs().ln();
        sum.add(if k == 0 { term } else { 2.0 * term });
    }
    sum.total()
}

/// `|LHS - RHS| / |RHS|`, the right side being the log-energy integral of
/// the target.
pub fn plancherel_residual(phases: &PhaseFactors, target: &ChebyshevTarget) -> Result<f64> {
    check_dimensions(phases, target)?;
    let rhs = target.szego_integral_converged()?;
    let lhs = plancherel_lhs(phases);
    Ok((lhs - rhs).abs() / rhs.abs().max(1e-300))
}

/// `max_j |f(x_j) - f_Psi(x_j)|` on `nodes` Chebyshev nodes in `(0, 1]`.
pub fn roundtrip_error(target: &ChebyshevTarget, phases: &PhaseFactors, nodes: usize) -> Result<f64> {
    check_dimensions(phases, target)?;
    if nodes == 0 {
        return Err(Error::InvalidParameter("nodes must be >= 1".into()));
    }
    let mut err: f64 = 0.0;
    for x in ChebyshevTarget::chebyshev_nodes(nodes) {
        err = err.max((target.eval_f(x)? - reconstruct_f(x, phases)).abs());
    }
    Ok(err)
}

fn check_dimensions(phases: &PhaseFactors, target: &ChebyshevTarget) -> Result<()> {
    if phases.values().len() != target.half_degree() + 1 {
        return Err(Error::DimensionMismatch {
            target: target.half_degree(),
            phases: phases.half_degree(),
        });
    }
    Ok(())
}
