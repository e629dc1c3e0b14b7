//! Scalar q-series primitives.
//!
//! Conventions: `(x;q)_n = ∏_{s=0}^{n-1} (1 - q^s x)` with `(x;q)_0 = 1`, the
//! Gaussian binomial `[n j] = (q;q)_n / ((q;q)_j (q;q)_{n-j})` and the
//! q-number `[n] = (1 - q^n)/(1 - q)`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dd::Dd;
use crate::error::{check_tol, Error, Result};

/// The deformation parameter, stored both as `q` and as `μ = -ln(q)/2`.
///
/// Only `0 < q < 1` is admitted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam {
    q: f64,
    mu: f64,
    ln_q: f64,
}

impl QParam {
    pub fn from_q(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0 && q < 1.0) {
            return Err(Error::invalid("q", q, "0 < q < 1"));
        }
        // q - 1 is exact for q >= 1/2, so log1p keeps full accuracy near q = 1.
        let ln_q = if q >= 0.5 {
            libm::log1p(q - 1.0)
        } else {
            libm::log(q)
        };
        Ok(QParam {
            q,
            mu: -0.5 * ln_q,
            ln_q,
        })
    }

    pub fn from_mu(mu: f64) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::invalid("mu", mu, "a finite value > 0"));
        }
        let ln_q = -2.0 * mu;
        let q = libm::exp(ln_q);
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::invalid("mu", mu, "exp(-2 mu) strictly inside (0, 1)"));
        }
        Ok(QParam { q, mu, ln_q })
    }

    #[inline]
    pub fn q(&self) -> f64 {
        self.q
    }

    #[inline]
    pub fn mu(&self) -> f64 {
        self.mu
    }

    #[inline]
    pub fn ln_q(&self) -> f64 {
        self.ln_q
    }

    /// `q^k` for integer `k` (negative allowed).
    #[inline]
    pub fn pow(&self, k: i64) -> f64 {
        libm::pow(self.q, k as f64)
    }

    /// `q^{x}` for real `x`, through `exp(x ln q)`.
    #[inline]
    pub fn powf(&self, x: f64) -> f64 {
        libm::exp(x * self.ln_q)
    }

    /// `1 - q^k`, accurate also when `q` is close to one.
    #[inline]
    pub fn one_minus_pow(&self, k: u64) -> f64 {
        -libm::expm1(k as f64 * self.ln_q)
    }

    pub(crate) fn q_dd(&self) -> Dd {
        Dd::from_f64(self.q)
    }
}

/// `(x;q)_n`, the n-factor q-Pochhammer symbol.
pub fn qpochhammer(x: Complex64, qp: &QParam, n: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for s in 0..n {
        acc *= pochhammer_factor(x, qp, s);
    }
    acc
}

#[inline]
fn pochhammer_factor(x: Complex64, qp: &QParam, s: usize) -> Complex64 {
    Complex64::new(1.0, 0.0) - x * qp.pow(s as i64)
}

/// Default cap on the number of factors of [`qpochhammer_inf`].
pub const MAX_PRODUCT_TERMS: usize = 10_000;

/// A truncated infinite product together with its error certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedProduct {
    pub value: Complex64,
    /// Factors multiplied in.
    pub terms: usize,
    /// Bound on `|value_true / value - 1|` from the dropped factors,
    /// `expm1(Σ_{j>=terms} |q^j x|)`.
    pub tail_bound: f64,
}

/// `(x;q)_∞`, stopping at the first factor with `|q^s x| < tol`.
pub fn qpochhammer_inf(x: Complex64, qp: &QParam, tol: f64) -> Result<TruncatedProduct> {
    qpochhammer_inf_capped(x, qp, tol, MAX_PRODUCT_TERMS)
}

pub fn qpochhammer_inf_capped(
    x: Complex64,
    qp: &QParam,
    tol: f64,
    max_terms: usize,
) -> Result<TruncatedProduct> {
    check_tol(tol)?;
    if !(x.re.is_finite() && x.im.is_finite()) {
        return Err(Error::invalid("|x|", x.norm(), "a finite value"));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for s in 0..=max_terms {
        let z = x * qp.pow(s as i64);
        let size = z.norm();
        if size < tol {
            let tail = size / (1.0 - qp.q());
            return Ok(TruncatedProduct {
                value: acc,
                terms: s,
                tail_bound: libm::expm1(tail),
            });
        }
        if s == max_terms {
            break;
        }
        acc *= Complex64::new(1.0, 0.0) - z;
        if acc == Complex64::new(0.0, 0.0) {
            return Ok(TruncatedProduct {
                value: acc,
                terms: s + 1,
                tail_bound: 0.0,
            });
        }
    }
    Err(Error::NonConvergence {
        op: "qpochhammer_inf",
        terms: max_terms,
    })
}

/// Gaussian binomial `[n j]` as the telescoped product
/// `∏_{s=1}^{k} (1 - q^{n-k+s}) / (1 - q^s)` with `k = min(j, n-j)`.
///
/// Using the smaller of `j`, `n - j` makes the symmetry `[n j] = [n n-j]`
/// and the boundary values `[n 0] = [n n] = 1` hold bit for bit.
pub fn qbinomial(n: usize, j: usize, qp: &QParam) -> Result<f64> {
    if j > n {
        return Err(Error::IndexOutOfRange {
            op: "qbinomial",
            index: j as i64,
            bound: n as i64,
        });
    }
    let k = j.min(n - j);
    let mut acc = 1.0;
    for s in 1..=k {
        acc *= qp.one_minus_pow((n - k + s) as u64) / qp.one_minus_pow(s as u64);
    }
    Ok(acc)
}

/// The row `[n 0], [n 1], …, [n n]`.
pub fn qbinomial_row(n: usize, qp: &QParam) -> Vec<f64> {
    (0..=n)
        .map(|j| qbinomial(n, j, qp).expect("j <= n"))
        .collect()
}

/// `[n] = (1 - q^n)/(1 - q)`; identical to `qbinomial(n, 1)` for `n >= 1`.
pub fn qnumber(n: usize, qp: &QParam) -> f64 {
    if n == 1 {
        return 1.0;
    }
    qp.one_minus_pow(n as u64) / qp.one_minus_pow(1)
}

/// `(q;q)_n = ∏_{s=1}^{n} (1 - q^s)`.
pub fn qfactorial(n: usize, qp: &QParam) -> f64 {
    (1..=n).map(|s| qp.one_minus_pow(s as u64)).product()
}

/// Coefficients `c_j = (-1)^j [n j] q^{j(j-1)/2}` of the expansion
/// `(x;q)_n = Σ_j c_j x^j`.
pub fn finite_cauchy_coeffs(n: usize, qp: &QParam) -> Vec<f64> {
    (0..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let tri = (j * j.saturating_sub(1) / 2) as i64;
            sign * qbinomial(n, j, qp).expect("j <= n") * qp.pow(tri)
        })
        .collect()
}

/// Double-double `1 - q^k`.
pub(crate) fn one_minus_pow_dd(qp: &QParam, k: u64) -> Dd {
    Dd::ONE - qp.q_dd().powi(k as i64)
}

/// Double-double Gaussian binomial row, same telescoped scheme as
/// [`qbinomial`].
pub(crate) fn qbinomial_row_dd(n: usize, qp: &QParam) -> Vec<Dd> {
    let factors: Vec<Dd> = (0..=n as u64).map(|k| one_minus_pow_dd(qp, k)).collect();
    (0..=n)
        .map(|j| {
            let k = j.min(n - j);
            let mut acc = Dd::ONE;
            for s in 1..=k {
                acc = acc * factors[n - k + s] / factors[s];
            }
            acc
        })
        .collect()
}

/// Double-double `(q;q)_n`.
pub(crate) fn qfactorial_dd(n: usize, qp: &QParam) -> Dd {
    let mut acc = Dd::ONE;
    for s in 1..=n as u64 {
        acc = acc * one_minus_pow_dd(qp, s);
    }
    acc
}
