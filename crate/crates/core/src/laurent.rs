//! Complex Laurent polynomials with an explicit index window.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// `p(z) = sum_{j=lo}^{hi} coeffs[j - lo] z^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Complex64>,
}

impl LaurentPoly {
    /// Builds a polynomial whose lowest stored index is `lo`. An empty
    /// coefficient vector is stored as the zero constant.
    pub fn new(lo: i64, coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            return Self::zero();
        }
        Self { lo, coeffs }
    }

    pub fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self {
            lo: 0,
            coeffs: vec![c],
        }
    }

    pub fn monomial(index: i64, c: Complex64) -> Self {
        Self {
            lo: index,
            coeffs: vec![c],
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    /// Number of stored indices, `hi - lo + 1`.
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest `|j|` over the stored window.
    pub fn max_abs_index(&self) -> i64 {
        self.lo.abs().max(self.hi().abs())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^j`, zero outside the stored window.
    pub fn coeff(&self, j: i64) -> Complex64 {
        if j < self.lo || j > self.hi() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(j - self.lo) as usize]
        }
    }

    /// Horner evaluation at an arbitrary nonzero `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z.powi(self.lo as i32)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            lo: self.lo + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `p*(z) = conj(p(1 / conj(z)))`, i.e. coefficient `j` becomes `conj(p_{-j})`.
    pub fn star(&self) -> Self {
        Self {
            lo: -self.hi(),
            coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect(),
        }
    }

    /// Maximum coefficient modulus.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let coeffs = (lo..=hi)
            .map(|j| self.coeff(j) + other.coeff(j) * sign)
            .collect();
        Self { lo, coeffs }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.span() + rhs.span() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly {
            lo: self.lo + rhs.lo,
            coeffs,
        }
    }
}
