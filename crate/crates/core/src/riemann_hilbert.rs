//! Phase factors from the Hankel systems built on the Weiss coefficients.
//!
//! For each `k` the coefficients `c_k ..= c_d` fill a real Hankel matrix `H`
//! with `Xi_k = i H`. The reduced system `(I + H^2) a = e_0`,
//! `(I + H^2) beta = H e_0` is symmetric positive definite with spectrum in
//! `[1, 1 + ||H||^2]`, so a Cholesky factorization shared by both right-hand
//! sides is enough. Then `psi_k = atan2(beta_0, a_0)`.

use crate::error::{Error, Result};
use crate::target::ChebyshevTarget;
use crate::weiss::{weiss_coefficients, WeissResult};
use num_complex::Complex64;
use rayon::prelude::*;
use std::time::SystemTime;

/// Pivots of `I + H^2` are at least one in exact arithmetic.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

/// Provenance attached to a phase sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMeta {
    pub eta: Option<f64>,
    pub eps: Option<f64>,
    pub grid_size: Option<usize>,
    /// Wall-clock time of the solve. Not serialized, so files stay reproducible.
    pub timestamp: Option<SystemTime>,
}

/// Symmetric phase factors `psi_0 ..= psi_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFactors {
    values: Vec<f64>,
    pub meta: PhaseMeta,
}

impl PhaseFactors {
    /// Phases known exactly, e.g. drawn to generate a target.
    pub fn exact(values: Vec<f64>) -> Self {
        Self {
            values,
            meta: PhaseMeta {
                eta: None,
                eps: None,
                grid_size: None,
                timestamp: None,
            },
        }
    }

    pub fn with_meta(values: Vec<f64>, meta: PhaseMeta) -> Self {
        Self { values, meta }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn half_degree(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// `max_k |psi_k - other_k|`; lengths must agree.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.values.len() != other.values.len() {
            return Err(Error::DimensionMismatch {
                target: other.half_degree(),
                phases: self.half_degree(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max))
    }
}

/// `(a, b)` with `b = i beta`, the solution of the reduced system.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorPair {
    pub a: Vec<f64>,
    pub beta: Vec<f64>,
}

impl FactorPair {
    pub fn b(&self) -> Vec<Complex64> {
        self.beta.iter().map(|&v| Complex64::new(0.0, v)).collect()
    }
}

/// Result of solving the `k`-th system.
#[derive(Debug, Clone, PartialEq)]
pub struct SolvedPhase {
    pub k: usize,
    pub psi: f64,
    pub pair: FactorPair,
    /// Squared diagonal of the Cholesky factor, i.e. the pivots `L_ii^2`.
    pub pivots: Vec<f64>,
}

impl SolvedPhase {
    pub fn min_pivot(&self) -> f64 {
        self.pivots.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// The `k`-th Hankel system for coefficient imaginary parts `c_0 ..= c_d`.
///
/// Only the generator `c_k ..= c_d` is stored; `H_ij = c_{i+j+k}`.
#[derive(Debug, Clone)]
pub struct HankelSystem {
    k: usize,
    generator: Vec<f64>,
}

impl HankelSystem {
    pub fn new(coeffs_imag: &[f64], k: usize) -> Result<Self> {
        let d = coeffs_imag.len().checked_sub(1).ok_or_else(|| {
            Error::InvalidParameter("empty coefficient list".into())
        })?;
        if k > d {
            return Err(Error::IndexOutOfRange { k, d });
        }
        Ok(Self {
            k,
            generator: coeffs_imag[k..].to_vec(),
        })
    }

    pub fn size(&self) -> usize {
        self.generator.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `H_ij = Im c_{i+j+k}`, zero once `i + j + k > d`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.generator.get(i + j).copied().unwrap_or(0.0)
    }

    /// `I + H^2` as a row-major dense matrix.
    pub fn reduced_matrix(&self) -> Vec<f64> {
        let n = self.size();
        let c = &self.generator;
        let mut s = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                // H_il vanishes for l > n - 1 - i, and n - 1 - j <= n - 1 - i.
                let acc = dot(&c[i..n - j + i], &c[j..n]);
                s[i * n + j] = acc;
                s[j * n + i] = acc;
            }
            s[i * n + i] += 1.0;
        }
        s
    }

    pub fn solve(&self) -> Result<SolvedPhase> {
        let n = self.size();
        let mut l = self.reduced_matrix();
        let pivots = cholesky_in_place(&mut l, n).map_err(|(minor, pivot)| Error::Degeneracy {
            k: self.k,
            minor,
            pivot,
        })?;
        let mut a = vec![0.0; n];
        a[0] = 1.0;
        // H e_0 is the generator itself.
        let mut beta = self.generator.clone();
        cholesky_solve(&l, n, &mut a);
        cholesky_solve(&l, n, &mut beta);
        if !(a[0] > 0.0) || !a[0].is_finite() || !beta[0].is_finite() {
            return Err(Error::InvariantViolation {
                k: self.k,
                what: format!("a_0 = {} is not positive", a[0]),
            });
        }
        Ok(SolvedPhase {
            k: self.k,
            psi: beta[0].atan2(a[0]),
            pair: FactorPair { a, beta },
            pivots,
        })
    }

    /// `max(|S a - e_0|, |S beta - H e_0|)` in the sup norm, with `S = I + H^2`.
    pub fn residual(&self, pair: &FactorPair) -> f64 {
        let n = self.size();
        let s = self.reduced_matrix();
        let mut e0 = vec![0.0; n];
        e0[0] = 1.0;
        mat_vec_residual(&s, n, &pair.a, &e0).max(mat_vec_residual(&s, n, &pair.beta, &self.generator))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Overwrites the lower triangle of `s` with `L`, `L L^T = s`, and returns
/// the pivots `L_jj^2`. On failure returns the offending leading minor and
/// its pivot.
fn cholesky_in_place(s: &mut [f64], n: usize) -> std::result::Result<Vec<f64>, (usize, f64)> {
    let mut pivots = Vec::with_capacity(n);
    for j in 0..n {
        let (head, tail) = s.split_at_mut((j + 1) * n);
        let row_j = &mut head[j * n..];
        let diag = row_j[j] - dot(&row_j[..j], &row_j[..j]);
        if !(diag > 0.0) || !diag.is_finite() {
            return Err((j + 1, diag));
        }
        pivots.push(diag);
        let ljj = diag.sqrt();
        row_j[j] = ljj;
        let row_j = &head[j * n..j * n + j];
        for row_i in tail.chunks_exact_mut(n) {
            row_i[j] = (row_i[j] - dot(&row_i[..j], row_j)) / ljj;
        }
    }
    Ok(pivots)
}

/// Solves `L L^T x = y` in place, `L` in the lower triangle of `l`.
fn cholesky_solve(l: &[f64], n: usize, y: &mut [f64]) {
    for i in 0..n {
        let row = &l[i * n..i * n + i];
        y[i] = (y[i] - dot(row, &y[..i])) / l[i * n + i];
    }
    for i in (0..n).rev() {
        y[i] /= l[i * n + i];
        let yi = y[i];
        for (yp, lp) in y[..i].iter_mut().zip(&l[i * n..i * n + i]) {
            *yp -= lp * yi;
        }
    }
}

fn mat_vec_residual(s: &[f64], n: usize, x: &[f64], rhs: &[f64]) -> f64 {
    (0..n)
        .map(|i| (dot(&s[i * n..(i + 1) * n], x) - rhs[i]).abs())
        .fold(0.0, f64::max)
}

/// Solves the `k`-th system alone.
pub fn phase_at(coeffs_imag: &[f64], k: usize) -> Result<SolvedPhase> {
    HankelSystem::new(coeffs_imag, k)?.solve()
}

/// Solves all `d + 1` systems on a pool of `workers` threads.
///
/// Each system is independent, so the result does not depend on `workers`.
/// When several systems fail, the error for the smallest `k` is returned.
/// A single worker runs on the calling thread.
pub fn all_phases(coeffs_imag: &[f64], workers: usize) -> Result<Vec<SolvedPhase>> {
    if workers == 0 {
        return Err(Error::InvalidParameter("workers must be >= 1".into()));
    }
    if coeffs_imag.is_empty() {
        return Err(Error::InvalidParameter("empty coefficient list".into()));
    }
    if workers == 1 {
        return (0..coeffs_imag.len()).map(|k| phase_at(coeffs_imag, k)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let results: Vec<Result<SolvedPhase>> = pool.install(|| {
        (0..coeffs_imag.len())
            .into_par_iter()
            .map(|k| phase_at(coeffs_imag, k))
            .collect()
    });
    results.into_iter().collect()
}

/// Spectral information for one system.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub k: usize,
    /// Power-iteration estimate of `||Xi_k|| = ||H||`.
    pub xi_norm: f64,
    /// The a priori bound `1 / sqrt(eta)`.
    pub xi_bound: f64,
    /// `[1, 1 + ||Xi_k||^2]` brackets the spectrum of `I - Xi_k^2`.
    pub spectrum_bracket: (f64, f64),
    pub iterations: usize,
}

impl ConditionReport {
    pub fn condition_number(&self) -> f64 {
        self.spectrum_bracket.1 / self.spectrum_bracket.0
    }
}

pub fn condition_report(coeffs_imag: &[f64], k: usize, eta: f64) -> Result<ConditionReport> {
    const MAX_ITERATIONS: usize = 500;
    const TOLERANCE: f64 = 1e-12;
    let sys = HankelSystem::new(coeffs_imag, k)?;
    let n = sys.size();
    let apply = |v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| (0..n).map(|j| sys.entry(i, j) * v[j]).sum())
            .collect()
    };
    // Power iteration on H^2 = H^T H, whose top eigenvalue is ||H||^2.
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 / (1.0 + i as f64).sqrt()).collect();
    let mut lambda = 0.0;
    let mut iterations = 0;
    for it in 1..=MAX_ITERATIONS {
        iterations = it;
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        let w = apply(&apply(&v));
        let next: f64 = v.iter().zip(&w).map(|(x, y)| x * y).sum();
        v = w;
        let converged = (next - lambda).abs() <= TOLERANCE * next.abs().max(1e-300);
        lambda = next;
        if converged {
            break;
        }
    }
    let xi_norm = lambda.max(0.0).sqrt();
    Ok(ConditionReport {
        k,
        xi_norm,
        xi_bound: 1.0 / eta.sqrt(),
        spectrum_bracket: (1.0, 1.0 + xi_norm * xi_norm),
        iterations,
    })
}

/// Parameters for a full solve.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Overrides the target's own margin when set.
    pub eta: Option<f64>,
    pub eps: f64,
    pub grid_size: Option<usize>,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            eta: None,
            eps: 1e-10,
            grid_size: None,
            workers: 1,
        }
    }
}

/// Everything produced by [`solve_target`].
#[derive(Debug, Clone)]
pub struct Solution {
    pub phases: PhaseFactors,
    pub weiss: WeissResult,
    pub systems: Vec<SolvedPhase>,
}

/// Target to phase factors: Weiss coefficients, then every Hankel solve.
pub fn solve_target(target: &ChebyshevTarget, config: &RunConfig) -> Result<Solution> {
    let eta = config.eta.unwrap_or(target.eta());
    let weiss = weiss_coefficients(&target.to_laurent_b(), eta, config.eps, config.grid_size)?;
    let systems = all_phases(&weiss.imag(), config.workers)?;
    let phases = PhaseFactors::with_meta(
        systems.iter().map(|s| s.psi).collect(),
        PhaseMeta {
            eta: Some(eta),
            eps: Some(config.eps),
            grid_size: Some(weiss.grid_size),
            timestamp: Some(SystemTime::now()),
        },
    );
    Ok(Solution {
        phases,
        weiss,
        systems,
    })
}
