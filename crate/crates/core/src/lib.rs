//! Symmetric quantum signal processing phase factors for even real
//! polynomial targets, computed through a Riemann-Hilbert factorization of
//! the nonlinear Fourier transform.
//!
//! The pipeline is
//!
//! 1. [`target::ChebyshevTarget`]: `f(x) = sum_k c_k T_{2k}(x)` with a
//!    certified margin `sup |f| <= 1 - eta`;
//! 2. [`weiss::weiss_coefficients`]: Fourier coefficients of `b / a` on a
//!    grid of roots of unity;
//! 3. [`riemann_hilbert::all_phases`]: one symmetric positive definite
//!    Hankel solve per phase;
//! 4. [`nlft`]: forward evaluation for validation.
//!
//! [`riemann_hilbert::solve_target`] runs steps 2 and 3.

pub mod cli;
pub mod error;
pub mod format;
pub mod fourier;
pub mod laurent;
pub mod nlft;
pub mod riemann_hilbert;
pub mod target;
pub mod weiss;

pub use error::{Error, Result};
pub use riemann_hilbert::{solve_target, PhaseFactors, RunConfig, Solution};
pub use target::ChebyshevTarget;
