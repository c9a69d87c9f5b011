//! Discrete Fourier machinery on the `N`th roots of unity.
//!
//! The forward transform uses the `1/N` normalization
//! `c_j = (1/N) sum_l z_l^{-j} u(z_l)` with `z_l = exp(2 pi i l / N)`, so a
//! sampled Laurent polynomial maps back to its own coefficients. The inverse is
//! plain evaluation `u(z_l) = sum_j c_j z_l^j`.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// The `N`th roots of unity for a power-of-two `N >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitCircleGrid {
    size: usize,
}

impl UnitCircleGrid {
    pub fn new(size: usize) -> Result<Self> {
        if size < 2 || !size.is_power_of_two() {
            return Err(Error::Sizing(size));
        }
        Ok(Self { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `z_l = exp(2 pi i l / N)`.
    pub fn node(&self, l: usize) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * l as f64 / self.size as f64)
    }

    pub fn nodes(&self) -> impl Iterator<Item = Complex64> + '_ {
        (0..self.size).map(move |l| self.node(l))
    }
}

/// Transform output indexed by signed frequency `j` in `-N/2 ..= N/2 - 1`.
///
/// Storage is the natural transform order: slot `s` holds frequency `s` for
/// `s < N/2` and frequency `s - N` otherwise. The endpoint `-N/2` is counted
/// on the negative side.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    values: Vec<Complex64>,
}

impl SpectralCoefficients {
    /// Wraps coefficients already in natural transform order.
    pub fn from_natural(values: Vec<Complex64>) -> Result<Self> {
        UnitCircleGrid::new(values.len())?;
        Ok(Self { values })
    }

    /// Builds from a centered vector ordered `-N/2, ..., N/2 - 1`.
    pub fn from_centered(centered: &[Complex64]) -> Result<Self> {
        let n = centered.len();
        UnitCircleGrid::new(n)?;
        let mut values = centered.to_vec();
        values.rotate_left(n / 2);
        Ok(Self { values })
    }

    pub fn grid_size(&self) -> usize {
        self.values.len()
    }

    pub fn min_index(&self) -> i64 {
        -(self.values.len() as i64 / 2)
    }

    pub fn max_index(&self) -> i64 {
        self.values.len() as i64 / 2 - 1
    }

    fn slot(&self, j: i64) -> usize {
        j.rem_euclid(self.values.len() as i64) as usize
    }

    /// Coefficient at frequency `j`; panics outside `-N/2 ..= N/2 - 1`.
    pub fn get(&self, j: i64) -> Complex64 {
        assert!(
            j >= self.min_index() && j <= self.max_index(),
            "frequency {j} outside the centered window"
        );
        self.values[self.slot(j)]
    }

    pub fn natural(&self) -> &[Complex64] {
        &self.values
    }

    pub fn centered(&self) -> Vec<Complex64> {
        let mut v = self.values.clone();
        v.rotate_right(self.values.len() / 2);
        v
    }
}

fn transform(buf: &mut [Complex64], forward: bool) {
    let mut planner = FftPlanner::<f64>::new();
    let fft = if forward {
        planner.plan_fft_forward(buf.len())
    } else {
        planner.plan_fft_inverse(buf.len())
    };
    fft.process(buf);
}

/// Forward transform of samples at the roots of unity, `1/N` normalized.
pub fn dft_on_roots(samples: &[Complex64]) -> Result<SpectralCoefficients> {
    let n = UnitCircleGrid::new(samples.len())?.size();
    let mut buf = samples.to_vec();
    transform(&mut buf, true);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    Ok(SpectralCoefficients { values: buf })
}

/// Inverse of [`dft_on_roots`]: evaluates `sum_j c_j z_l^j` at every node.
pub fn inverse_dft_on_roots(coeffs: &SpectralCoefficients) -> Vec<Complex64> {
    let mut buf = coeffs.values.clone();
    transform(&mut buf, false);
    buf
}

fn check_alias(p: &LaurentPoly, grid: UnitCircleGrid) -> Result<()> {
    if p.span() > grid.size() {
        return Err(Error::Aliasing {
            grid: grid.size(),
            lo: p.lo(),
            hi: p.hi(),
        });
    }
    Ok(())
}

/// Samples `p` at the grid nodes through a zero-padded inverse transform.
///
/// Requires the index window of `p` to fit in `N` distinct residues, so that
/// the samples determine `p` uniquely.
pub fn evaluate_laurent_on_roots(p: &LaurentPoly, grid: UnitCircleGrid) -> Result<Vec<Complex64>> {
    check_alias(p, grid)?;
    let n = grid.size() as i64;
    let mut buf = vec![Complex64::new(0.0, 0.0); grid.size()];
    for (offset, c) in p.coeffs().iter().enumerate() {
        let j = p.lo() + offset as i64;
        buf[j.rem_euclid(n) as usize] += c;
    }
    transform(&mut buf, false);
    Ok(buf)
}

/// Direct Horner evaluation at each node; reference path for
/// [`evaluate_laurent_on_roots`].
pub fn evaluate_laurent_on_roots_direct(
    p: &LaurentPoly,
    grid: UnitCircleGrid,
) -> Result<Vec<Complex64>> {
    check_alias(p, grid)?;
    Ok(grid.nodes().map(|z| p.eval(z)).collect())
}

/// One-sided projection `r_0 + 2 sum_{l=1}^{N/2} r_{-l} z^{-l}`: positive
/// frequencies are dropped and negative ones doubled.
pub fn analytic_projection(r_hat: &SpectralCoefficients) -> LaurentPoly {
    let half = r_hat.grid_size() as i64 / 2;
    let coeffs = (-half..=0)
        .map(|j| {
            if j == 0 {
                r_hat.get(0)
            } else {
                r_hat.get(j) * 2.0
            }
        })
        .collect();
    LaurentPoly::new(-half, coeffs)
}
