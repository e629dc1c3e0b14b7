//! The Jacobi θ₃ measure `θ₃(φ;q) = Σ_m e^{-μ m² + i m φ}`.
//!
//! Two representations are provided:
//!
//! - the Fourier series `1 + 2 Σ_{m≥1} e^{-μ m²} cos(mφ)`, fast for large `μ`;
//! - the Poisson-transformed sum of Gaussians
//!   `(π/μ)^{1/2} Σ_n exp(-(φ - 2πn)² / (4μ))`, fast for small `μ` and free of
//!   cancellation (all terms are positive).
//!
//! [`theta3`] picks between them at [`MU_SWITCH`].

use core::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{check_tol, Error, Result};
use crate::qseries::QParam;

/// Below this `μ` the Gaussian sum is used.
pub const MU_SWITCH: f64 = FRAC_PI_2;

/// Per-branch term cap; hitting it is an error.
pub const MAX_THETA_TERMS: usize = 5_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    FourierSeries,
    GaussianSum,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Representation::FourierSeries => "fourier",
            Representation::GaussianSum => "gaussian",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEval {
    pub phi: f64,
    pub mu: f64,
    pub value: f64,
    pub representation: Representation,
    /// Non-zero index terms summed (both signs counted).
    pub terms_used: usize,
}

/// Maps `phi` into `[-π, π)`.
pub fn reduce_angle(phi: f64) -> f64 {
    let mut r = phi - TAU * libm::round(phi / TAU);
    if r >= PI {
        r -= TAU;
    } else if r < -PI {
        r += TAU;
    }
    r
}

/// Number of Fourier modes `T` needed for `e^{-μ T²} < tol (1 - e^{-μ})`.
pub fn fourier_cutoff(mu: f64, tol: f64) -> f64 {
    let bound = tol * -libm::expm1(-mu);
    if bound >= 1.0 {
        return 1.0;
    }
    libm::ceil(libm::sqrt(-libm::log(bound) / mu)).max(1.0)
}

/// Fourier-series branch. The tail after the last mode is below `tol`
/// in absolute terms.
pub fn theta3_series(phi: f64, qp: &QParam, tol: f64) -> Result<ThetaEval> {
    check_tol(tol)?;
    let mu = qp.mu();
    let cutoff = fourier_cutoff(mu, tol);
    if cutoff > MAX_THETA_TERMS as f64 {
        return Err(Error::NonConvergence {
            op: "theta3_series",
            terms: MAX_THETA_TERMS,
        });
    }
    let t = cutoff as usize;
    // smallest terms first
    let mut acc = 0.0;
    for m in (1..=t).rev() {
        let m = m as f64;
        acc += libm::exp(-mu * m * m) * libm::cos(m * phi);
    }
    Ok(ThetaEval {
        phi,
        mu,
        value: 1.0 + 2.0 * acc,
        representation: Representation::FourierSeries,
        terms_used: 2 * t,
    })
}

/// Gaussian-sum branch. Stops once the next pair of images contributes less
/// than `tol/2` relative to the running sum; the images decay
/// super-geometrically so the dropped tail stays below `tol` relative.
pub fn theta3_gaussian(phi: f64, qp: &QParam, tol: f64) -> Result<ThetaEval> {
    check_tol(tol)?;
    let mu = qp.mu();
    let r = reduce_angle(phi).abs();
    let inv4mu = 0.25 / mu;
    let gauss = |d: f64| libm::exp(-d * d * inv4mu);
    let mut acc = gauss(r);
    let mut terms = 0;
    let mut n = 1usize;
    loop {
        if n > MAX_THETA_TERMS {
            return Err(Error::NonConvergence {
                op: "theta3_gaussian",
                terms: MAX_THETA_TERMS,
            });
        }
        let shift = TAU * n as f64;
        let pair = gauss(r - shift) + gauss(r + shift);
        if pair <= 0.5 * tol * acc {
            break;
        }
        acc += pair;
        terms += 2;
        n += 1;
    }
    Ok(ThetaEval {
        phi,
        mu,
        value: libm::sqrt(PI / mu) * acc,
        representation: Representation::GaussianSum,
        terms_used: terms,
    })
}

/// θ₃ through whichever representation converges fastest at this `μ`.
pub fn theta3(phi: f64, qp: &QParam, tol: f64) -> Result<ThetaEval> {
    if qp.mu() < MU_SWITCH {
        theta3_gaussian(phi, qp, tol)
    } else {
        theta3_series(phi, qp, tol)
    }
}
