//! The action-angle Wigner function of the Rogers-Szegő states and its
//! marginals.
//!
//! For the projector `|n><n|` the map
//!
//! `O_n(m, θ) = ∫ e^{imθ'} R_n(θ - θ'/2) R_n*(θ + θ'/2) θ₃(θ - θ'/2) dθ'/2π`
//!
//! reduces to the triple sum
//!
//! `q^n/(q;q)_n Σ_t e^{-μt² + itθ} Σ_{r,s} (-1)^{r+s} [n r][n s] e^{μ(r+s)} e^{iθ(r-s)} sinc(m - (t+r+s)/2)`,
//!
//! evaluated by [`WignerKernel`]. The value is complex in general: the
//! half-integer shift `θ'/2` breaks the `t -> -t` pairing. Its θ-average is
//! `δ_{m,n}` and its sum over `m` is `θ₃(θ) |R_n(θ)|²`.

mod kernel;
mod marginals;
mod orthogonality;

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::dd::Dd;
use crate::error::{Error, Result};

pub use kernel::{t_cutoff, MeasureShift, WignerKernel, WignerSlice, WignerValue, wigner_eval};
pub use marginals::{
    action_distribution, action_table, angle_distribution, angle_distribution_from_wigner,
    angle_table, circular_variance, mixed_angle_distribution, DistributionKind, DistributionTable,
    Support, TableMetadata,
};
pub use orthogonality::{
    carlitz_closed_form, carlitz_double_sum, orthogonality_quadrature, theta_bandwidth,
    QuadratureResult,
};

pub const DEFAULT_GRID_POINTS: usize = 256;

/// Uniform grid `θ_k = -π + 2πk/K`, `k = 0..K`, each point weighted `1/K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseGrid {
    size: usize,
}

impl PhaseGrid {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("grid_points", 0.0, "at least one point"));
        }
        Ok(PhaseGrid { size })
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, k: usize) -> f64 {
        -PI + TAU * k as f64 / self.size as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.size).map(|k| self.point(k)).collect()
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.size as f64
    }

    /// Weighted sum `Σ f(θ_k) / K`.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        values.iter().sum::<f64>() * self.weight()
    }
}

impl Default for PhaseGrid {
    fn default() -> Self {
        PhaseGrid {
            size: DEFAULT_GRID_POINTS,
        }
    }
}

/// A number of the form `k/2`, stored as `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInteger { twice }
    }

    pub const fn from_int(k: i64) -> Self {
        HalfInteger { twice: 2 * k }
    }

    /// `(t + r + s) / 2`.
    pub const fn half_sum(t: i64, r: i64, s: i64) -> Self {
        HalfInteger { twice: t + r + s }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 * 0.5
    }
}

/// `sin((m - c)π) / ((m - c)π)` by case analysis on `2(m - c)`.
///
/// Exactly 1 at `m = c` and exactly 0 at other integer offsets; at
/// half-odd offsets `x = k + 1/2` it is `(-1)^k / (πx)`.
pub fn sinc_kernel(m: i64, c: HalfInteger) -> f64 {
    sinc_dd(2 * m - c.twice()).to_f64()
}

/// Double-double sinc at `x = d2/2`.
pub(crate) fn sinc_dd(d2: i64) -> Dd {
    if d2 == 0 {
        return Dd::ONE;
    }
    if d2 % 2 == 0 {
        return Dd::ZERO;
    }
    // x = k + 1/2 with k = floor(x)
    let k = d2.div_euclid(2);
    let v = (Dd::PI * (d2 as f64 * 0.5)).recip();
    if k % 2 == 0 {
        v
    } else {
        -v
    }
}

/// `Σ_{m=-M}^{M} sinc(m - c)` in double-double. Integer centres give 0 or
/// 1; half-integer centres are accumulated as mirror pairs `x = ±(k+1/2)`
/// over the part of the window symmetric about `c`, then the one-sided
/// remainder.
pub(crate) fn windowed_sinc_sum(m_cut: i64, c: HalfInteger) -> Dd {
    if c.is_integer() {
        let centre = c.twice() / 2;
        return if centre.abs() <= m_cut { Dd::ONE } else { Dd::ZERO };
    }
    // offsets x = m - c run over twice-values d2 in [lo, hi], all odd
    let lo = -2 * m_cut - c.twice();
    let hi = 2 * m_cut - c.twice();
    let sym = hi.min(-lo);
    let mut acc = Dd::ZERO;
    // pairs (d2, -d2), largest first so the small terms are added early
    if sym > 0 {
        let mut d2 = sym;
        while d2 > 0 {
            let v = sinc_dd(d2);
            acc = acc + v + v;
            d2 -= 2;
        }
    }
    let single = |from: i64, to: i64, acc: &mut Dd| {
        let mut d2 = from;
        while d2 <= to {
            *acc = *acc + sinc_dd(d2);
            d2 += 2;
        }
    };
    if sym > 0 {
        if hi > sym {
            single(sym + 2, hi, &mut acc);
        }
        if -lo > sym {
            single(lo, -sym - 2, &mut acc);
        }
    } else {
        single(lo, hi, &mut acc);
    }
    acc
}
