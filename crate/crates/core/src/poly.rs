//! Dense complex polynomials in one variable.

use alloc::vec::Vec;
use core::ops::{Add, Sub};

use num_complex::Complex64;

/// `Σ coeffs[r] y^r`. Trailing zero coefficients are stripped on construction,
/// so the zero polynomial has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_real(&[1.0])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `y^r`, zero beyond the degree.
    pub fn coeff(&self, r: usize) -> Complex64 {
        self.coeffs.get(r).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, y: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * y + c)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Multiplication by the variable `y`.
    pub fn mul_y(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    /// Largest coefficient-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Polynomial) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|r| (self.coeff(r) - other.coeff(r)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest coefficient-wise relative deviation from `reference`, measured
    /// against `max(|reference[r]|, floor)`.
    pub fn max_rel_diff(&self, reference: &Polynomial, floor: f64) -> f64 {
        let len = self.coeffs.len().max(reference.coeffs.len());
        (0..len)
            .map(|r| {
                let want = reference.coeff(r);
                (self.coeff(r) - want).norm() / want.norm().max(floor)
            })
            .fold(0.0, f64::max)
    }

    fn zip_with(&self, other: &Polynomial, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|r| f(self.coeff(r), other.coeff(r))).collect())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.zip_with(rhs, |a, b| a - b)
    }
}
