//! The θ₃-weighted inner products `I_mn = ∫ H_m(y) H_n(ȳ) θ₃(φ) dφ/2π`,
//! `y = -q^{-1/2} e^{iφ}`, three ways.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::dd::Dd;
use crate::error::{check_tol, Result};
use crate::qseries::{qbinomial_row_dd, qfactorial, QParam};
use crate::rspoly::{rs_normalization, RsFunctions};
use crate::theta::theta3;

use super::PhaseGrid;

/// `Σ_{r,s} (-1)^{r+s} [m r][n s] q^{r(r-1)/2 + s(s-1)/2 - rs}`.
///
/// The terms grow like `q^{-mn}` and cancel to `O(1)`, so the sum is
/// accumulated in double-double.
pub fn carlitz_double_sum(m: usize, n: usize, qp: &QParam) -> f64 {
    let row_m = qbinomial_row_dd(m, qp);
    let row_n = qbinomial_row_dd(n, qp);
    let q = qp.q_dd();
    let mut acc = Dd::ZERO;
    for (r, &bm) in row_m.iter().enumerate() {
        for (s, &bn) in row_n.iter().enumerate() {
            let (r, s) = (r as i64, s as i64);
            let e = r * (r - 1) / 2 + s * (s - 1) / 2 - r * s;
            let term = bm * bn * q.powi(e);
            if (r + s) % 2 == 0 {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
    }
    acc.to_f64()
}

/// `q^{-n} (q;q)_n δ_{m,n}`.
pub fn carlitz_closed_form(m: usize, n: usize, qp: &QParam) -> f64 {
    if m != n {
        return 0.0;
    }
    qfactorial(n, qp) / qp.pow(n as i64)
}

/// Highest Fourier mode of the quadrature integrand, with θ₃ cut where
/// its coefficients fall below `tol`.
pub fn theta_bandwidth(m: usize, n: usize, qp: &QParam, tol: f64) -> usize {
    let t = libm::ceil(libm::sqrt(libm::log(1.0 / tol).max(0.0) / qp.mu()));
    m + n + t as usize
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Estimated highest Fourier mode of the integrand.
    pub bandwidth: usize,
    /// False when the bandwidth exceeds half the grid size; the value is
    /// then aliased and should not be trusted.
    pub resolved: bool,
}

/// Trapezoidal rule for `I_mn` on the periodic grid. The polynomials are
/// evaluated as `R_m R_n* / (c_m c_n)` with `R` from its recurrence.
pub fn orthogonality_quadrature(
    m: usize,
    n: usize,
    qp: &QParam,
    grid: &PhaseGrid,
    tol: f64,
) -> Result<QuadratureResult> {
    check_tol(tol)?;
    let rs = RsFunctions::new(m.max(n), qp);
    let mut buf: Vec<Complex64> = Vec::with_capacity(m.max(n) + 1);
    let mut acc = 0.0;
    for k in 0..grid.len() {
        let phi = grid.point(k);
        rs.eval_all_into(phi, &mut buf);
        let th = theta3(phi, qp, tol * 1e-3)?.value;
        acc += (buf[m] * buf[n].conj()).re * th;
    }
    let scale = rs_normalization(m, qp) * rs_normalization(n, qp);
    let bandwidth = theta_bandwidth(m, n, qp, tol);
    Ok(QuadratureResult {
        value: acc * grid.weight() / scale,
        bandwidth,
        resolved: 2 * bandwidth <= grid.len(),
    })
}
