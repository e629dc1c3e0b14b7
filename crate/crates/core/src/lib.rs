//! Numerics for the q-deformed harmonic oscillator on the circle.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`qseries`]: q-Pochhammer symbols, Gaussian binomials, q-numbers and the
//!   finite Cauchy expansion, plus the [`QParam`] deformation parameter.
//! - [`rspoly`]: Rogers-Szegő polynomials `H_n(y;q)`, the Jackson q-derivative
//!   and the normalized functions `R_n(φ;q)`.
//! - [`theta`]: the Jacobi θ₃ measure as a Fourier series or as a periodic sum
//!   of Gaussians, with automatic branch selection.
//! - [`qalgebra`]: the ladder operators `A`, `A†`, `N` on the `{H_n}` basis, as
//!   q-difference operators and as truncated matrices, with relation checks.
//! - [`wigner`]: orthogonality integrals, the action-angle Wigner function and
//!   its two marginal distributions.
//!
//! Everything is pure and allocation-light; the `qps` crate carries the CLI and
//! the file formats.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod dd;
mod error;
pub mod matrix;
pub mod poly;
pub mod qalgebra;
pub mod qseries;
pub mod rspoly;
pub mod theta;
pub mod wigner;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use poly::Polynomial;
pub use qseries::QParam;
