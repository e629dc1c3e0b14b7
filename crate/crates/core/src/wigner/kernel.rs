//! Fourier-coefficient evaluation of the Wigner triple sum.
//!
//! For fixed `m` the triple sum is a trigonometric polynomial in `θ`:
//! `O(m, θ) = Σ_p D_p(m) e^{ipθ}` with real
//!
//! `D_p(m) = q^n/(q;q)_n Σ_{t+r-s=p} w_t a_r a_s sinc(m - (t+r+s)/2)`,
//!
//! `w_t = e^{-μt²}`, `a_r = (-1)^r [n r] q^{-r/2}`. The coefficients are
//! accumulated in double-double, since the `a_r a_s` products grow like
//! `q^{-n}` before the prefactor brings them back to `O(1)`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dd::Dd;
use crate::error::{check_tol, Error, Result};
use crate::qseries::{qbinomial_row_dd, qfactorial_dd, QParam};

use super::{sinc_dd, windowed_sinc_sum, HalfInteger};

/// Largest admissible `t` cut-off.
const MAX_T_CUT: i64 = 100_000;

/// Where the θ₃ measure sits in the defining integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MeasureShift {
    /// `θ₃(θ - θ'/2)`, the standard choice.
    #[default]
    Minus,
    /// `θ₃(θ + θ'/2)`. Gives the complex conjugate of the standard map.
    Plus,
}

/// `T = ⌈(ln(1/tol)/μ)^{1/2}⌉ + 1`, the symmetric `t` cut-off.
pub fn t_cutoff(qp: &QParam, tol: f64) -> Result<i64> {
    check_tol(tol)?;
    let t = libm::ceil(libm::sqrt(libm::log(1.0 / tol).max(0.0) / qp.mu())) + 1.0;
    if t > MAX_T_CUT as f64 {
        return Err(Error::NonConvergence {
            op: "wigner t-sum",
            terms: MAX_T_CUT as usize,
        });
    }
    Ok(t as i64)
}

/// `O_n(m, θ)` with its indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerValue {
    pub n: usize,
    pub m: i64,
    pub theta: f64,
    pub value: Complex64,
}

/// Precomputed tables for one state `n` at one `q`.
#[derive(Debug, Clone)]
pub struct WignerKernel {
    n: usize,
    shift: MeasureShift,
    t_cut: i64,
    // w_t for t = -T..=T
    gauss: Vec<Dd>,
    // a_r for r = 0..=n
    amps: Vec<Dd>,
    pref: Dd,
}

/// `O_n(m, θ)` as a function of `θ` for fixed `m` (or summed over a window
/// of `m`): `Σ_p coeffs[p - p_min] e^{ipθ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerSlice {
    pub n: usize,
    p_min: i64,
    coeffs: Vec<f64>,
}

impl WignerSlice {
    pub fn eval(&self, theta: f64) -> Complex64 {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, &d) in self.coeffs.iter().enumerate() {
            if d == 0.0 {
                continue;
            }
            let (s, c) = libm::sincos((self.p_min + i as i64) as f64 * theta);
            re += d * c;
            im += d * s;
        }
        Complex64::new(re, im)
    }

    /// The exact θ-average, `D_0`.
    pub fn mean(&self) -> f64 {
        self.coefficient(0)
    }

    pub fn coefficient(&self, p: i64) -> f64 {
        usize::try_from(p - self.p_min)
            .ok()
            .and_then(|i| self.coeffs.get(i).copied())
            .unwrap_or(0.0)
    }

    /// Largest `|p|` with a non-zero coefficient.
    pub fn bandwidth(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, d)| **d != 0.0)
            .map(|(i, _)| (self.p_min + i as i64).unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }
}

impl WignerKernel {
    pub fn new(n: usize, qp: &QParam, tol: f64) -> Result<Self> {
        Self::with_shift(n, qp, tol, MeasureShift::Minus)
    }

    pub fn with_shift(n: usize, qp: &QParam, tol: f64, shift: MeasureShift) -> Result<Self> {
        let t_cut = t_cutoff(qp, tol)?;
        let sqrt_q = qp.q_dd().sqrt();
        let gauss = (-t_cut..=t_cut).map(|t| sqrt_q.powi(t * t)).collect();
        let inv_sqrt_q = sqrt_q.recip();
        let amps = qbinomial_row_dd(n, qp)
            .into_iter()
            .enumerate()
            .map(|(r, b)| {
                let v = b * inv_sqrt_q.powi(r as i64);
                if r % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect();
        let pref = qp.q_dd().powi(n as i64) / qfactorial_dd(n, qp);
        Ok(WignerKernel {
            n,
            shift,
            t_cut,
            gauss,
            amps,
            pref,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_cut(&self) -> i64 {
        self.t_cut
    }

    /// Fourier coefficients with `sinc(m - c)` replaced by `weight(2c)`.
    fn coefficients(&self, weight: impl Fn(i64) -> Dd) -> WignerSlice {
        let n = self.n as i64;
        let p_min = -self.t_cut - n;
        let mut acc = vec![Dd::ZERO; (2 * (self.t_cut + n) + 1) as usize];
        for (ti, &w) in self.gauss.iter().enumerate() {
            let t = ti as i64 - self.t_cut;
            // the Plus map is the Minus map with t -> -t in the sinc centre
            let (c_t, p_t) = match self.shift {
                MeasureShift::Minus => (t, t),
                MeasureShift::Plus => (-t, t),
            };
            for (r, &ar) in self.amps.iter().enumerate() {
                let war = w * ar;
                for (s, &as_) in self.amps.iter().enumerate() {
                    let k = weight(HalfInteger::half_sum(c_t, r as i64, s as i64).twice());
                    if k == Dd::ZERO {
                        continue;
                    }
                    let p = p_t + r as i64 - s as i64;
                    let slot = &mut acc[(p - p_min) as usize];
                    *slot = *slot + war * as_ * k;
                }
            }
        }
        WignerSlice {
            n: self.n,
            p_min,
            coeffs: acc.into_iter().map(|d| (d * self.pref).to_f64()).collect(),
        }
    }

    /// `θ -> O_n(m, θ)`.
    pub fn slice(&self, m: i64) -> WignerSlice {
        self.coefficients(|c2| sinc_dd(2 * m - c2))
    }

    /// `θ -> Σ_{m=-M}^{M} O_n(m, θ)`, with the sinc sums over the window
    /// formed exactly.
    pub fn m_summed_slice(&self, m_cut: i64) -> WignerSlice {
        let n = self.n as i64;
        let lo = -self.t_cut;
        let table: Vec<Dd> = (lo..=self.t_cut + 2 * n)
            .map(|c2| windowed_sinc_sum(m_cut, HalfInteger::from_twice(c2)))
            .collect();
        self.coefficients(|c2| table[(c2 - lo) as usize])
    }

    pub fn eval(&self, m: i64, theta: f64) -> WignerValue {
        WignerValue {
            n: self.n,
            m,
            theta,
            value: self.slice(m).eval(theta),
        }
    }
}

/// One value of the Wigner function of `|n><n|`.
pub fn wigner_eval(n: usize, m: i64, theta: f64, qp: &QParam, tol: f64) -> Result<WignerValue> {
    Ok(WignerKernel::new(n, qp, tol)?.eval(m, theta))
}
