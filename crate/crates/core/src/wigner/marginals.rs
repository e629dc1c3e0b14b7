//! Action and angle marginals of the Wigner function.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qseries::QParam;
use crate::rspoly::RsFunctions;
use crate::theta::theta3;

use super::kernel::{WignerKernel, WignerSlice};
use super::PhaseGrid;

/// `Ω⁽ⁿ⁾(θ) = θ₃(θ) |R_n(θ)|²`.
pub fn angle_distribution(n: usize, theta: f64, qp: &QParam, tol: f64) -> Result<f64> {
    let th = theta3(theta, qp, tol)?.value;
    Ok(th * RsFunctions::new(n, qp).eval(theta).norm_sqr())
}

/// `Σ_{m=-M}^{M} O_n(m, θ)`; converges to [`angle_distribution`] with an
/// error of order `1/M²`.
pub fn angle_distribution_from_wigner(
    n: usize,
    theta: f64,
    qp: &QParam,
    m_cut: i64,
    tol: f64,
) -> Result<f64> {
    if m_cut < n as i64 + 10 {
        return Err(Error::IndexOutOfRange {
            op: "angle_distribution_from_wigner",
            index: m_cut,
            bound: n as i64 + 10,
        });
    }
    Ok(WignerKernel::new(n, qp, tol)?
        .m_summed_slice(m_cut)
        .eval(theta)
        .re)
}

fn grid_average(slice: &WignerSlice, grid: &PhaseGrid) -> Result<f64> {
    // the grid sum is exact once the top mode is below K
    if slice.bandwidth() >= grid.len() {
        return Err(Error::invalid(
            "grid_points",
            grid.len() as f64,
            "more points than the Wigner bandwidth",
        ));
    }
    let values: Vec<f64> = grid.points().iter().map(|&t| slice.eval(t).re).collect();
    Ok(grid.integrate(&values))
}

/// `Λ⁽ⁿ⁾(m)`: the θ-average of `O_n(m, θ)` on the grid.
pub fn action_distribution(
    n: usize,
    m: i64,
    qp: &QParam,
    grid: &PhaseGrid,
    tol: f64,
) -> Result<f64> {
    grid_average(&WignerKernel::new(n, qp, tol)?.slice(m), grid)
}

/// `Σ_n p_n Ω⁽ⁿ⁾(θ)` for the diagonal mixed state `Σ_n p_n |n><n|`.
pub fn mixed_angle_distribution(probs: &[f64], theta: f64, qp: &QParam, tol: f64) -> Result<f64> {
    check_probabilities(probs)?;
    if probs.is_empty() {
        return Ok(0.0);
    }
    let th = theta3(theta, qp, tol)?.value;
    let r = RsFunctions::new(probs.len() - 1, qp).eval_all(theta);
    Ok(th * probs.iter().zip(&r).map(|(p, r)| p * r.norm_sqr()).sum::<f64>())
}

fn check_probabilities(probs: &[f64]) -> Result<()> {
    if let Some(&p) = probs.iter().find(|p| !(**p >= 0.0 && p.is_finite())) {
        return Err(Error::invalid("probability", p, "finite and >= 0"));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::invalid("sum of probabilities", total, "1"));
    }
    Ok(())
}

/// `1 - |Σ_k w Ω(θ_k) e^{iθ_k}|` for a density sampled on `grid`.
pub fn circular_variance(grid: &PhaseGrid, values: &[f64]) -> f64 {
    let moment: Complex64 = grid
        .points()
        .iter()
        .zip(values)
        .map(|(&t, &v)| Complex64::from_polar(v, t))
        .sum();
    1.0 - (moment * grid.weight()).norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionKind {
    Angle,
    Action,
}

impl DistributionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DistributionKind::Angle => "angle",
            DistributionKind::Action => "action",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Support {
    Angles(Vec<f64>),
    Actions(Vec<i64>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableMetadata {
    pub tol: f64,
    /// θ₃ terms (angle tables) or the `t` cut-off (action tables).
    pub terms: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTable {
    pub kind: DistributionKind,
    pub n: usize,
    pub q: f64,
    pub mu: f64,
    pub support: Support,
    pub values: Vec<f64>,
    /// Quadrature weight per point for angle tables, 1 for action tables.
    pub weight: f64,
    pub metadata: TableMetadata,
}

impl DistributionTable {
    /// Weighted total; 1 for a normalized distribution.
    pub fn total(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.weight
    }
}

/// `Ω⁽ⁿ⁾` sampled on the grid.
pub fn angle_table(n: usize, qp: &QParam, grid: &PhaseGrid, tol: f64) -> Result<DistributionTable> {
    let rs = RsFunctions::new(n, qp);
    let points = grid.points();
    let mut values = Vec::with_capacity(points.len());
    let mut terms = 0;
    for &t in &points {
        let th = theta3(t, qp, tol)?;
        terms = terms.max(th.terms_used);
        values.push(th.value * rs.eval(t).norm_sqr());
    }
    Ok(DistributionTable {
        kind: DistributionKind::Angle,
        n,
        q: qp.q(),
        mu: qp.mu(),
        support: Support::Angles(points),
        values,
        weight: grid.weight(),
        metadata: TableMetadata { tol, terms },
    })
}

/// `Λ⁽ⁿ⁾(m)` for `m` in `m_lo..=m_hi`.
pub fn action_table(
    n: usize,
    m_lo: i64,
    m_hi: i64,
    qp: &QParam,
    grid: &PhaseGrid,
    tol: f64,
) -> Result<DistributionTable> {
    if m_hi < m_lo {
        return Err(Error::IndexOutOfRange {
            op: "action_table",
            index: m_hi,
            bound: m_lo,
        });
    }
    let kernel = WignerKernel::new(n, qp, tol)?;
    let values = (m_lo..=m_hi)
        .map(|m| grid_average(&kernel.slice(m), grid))
        .collect::<Result<Vec<_>>>()?;
    Ok(DistributionTable {
        kind: DistributionKind::Action,
        n,
        q: qp.q(),
        mu: qp.mu(),
        support: Support::Actions((m_lo..=m_hi).collect()),
        values,
        weight: 1.0,
        metadata: TableMetadata {
            tol,
            terms: kernel.t_cut() as usize,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::theta3;
    use core::f64::consts::{FRAC_PI_2, PI};

    fn mu(m: f64) -> QParam {
        QParam::from_mu(m).unwrap()
    }

    fn n1_closed_form(theta: f64, qp: &QParam) -> f64 {
        let m = qp.mu();
        let q = qp.q();
        q / (1.0 - q)
            * (1.0 - 2.0 * libm::exp(m) * libm::cos(theta) + libm::exp(2.0 * m))
            * theta3(theta, qp, 1e-15).unwrap().value
    }

    #[test]
    fn angle_examples() {
        let g = PhaseGrid::default();
        for &m in &[0.1, 0.5, 1.0] {
            let qp = mu(m);
            for t in g.points() {
                let th = theta3(t, &qp, 1e-15).unwrap().value;
                assert_eq!(angle_distribution(0, t, &qp, 1e-15).unwrap(), th);
                let got = angle_distribution(1, t, &qp, 1e-15).unwrap();
                let want = n1_closed_form(t, &qp);
                assert!((got - want).abs() < 1e-12 * want.max(1e-300) + 1e-300, "μ={m} θ={t}");
            }
        }
    }

    #[test]
    fn angle_distribution_is_even_positive_and_normalized() {
        let g = PhaseGrid::default();
        for &q in &[0.1, 0.5, 0.9] {
            let qp = QParam::from_q(q).unwrap();
            for n in 0..=6 {
                let table = angle_table(n, &qp, &g, 1e-15).unwrap();
                assert!((table.total() - 1.0).abs() < 1e-10, "q={q} n={n}: {}", table.total());
                assert!(table.values.iter().all(|&v| v > 0.0));
                for k in 1..g.len() {
                    let t = g.point(k);
                    let a = angle_distribution(n, t, &qp, 1e-15).unwrap();
                    let b = angle_distribution(n, -t, &qp, 1e-15).unwrap();
                    assert!((a - b).abs() < 1e-12 * a.max(1.0));
                }
            }
        }
    }

    #[test]
    fn action_marginal_is_kronecker_delta() {
        let g = PhaseGrid::default();
        let qp = QParam::from_q(0.5).unwrap();
        assert!((action_distribution(2, 2, &qp, &g, 1e-12).unwrap() - 1.0).abs() < 1e-8);
        assert!(action_distribution(2, 5, &qp, &g, 1e-12).unwrap().abs() < 1e-8);
        assert!(action_distribution(0, -1, &qp, &g, 1e-12).unwrap().abs() < 1e-8);
        for &q in &[0.1, 0.9] {
            let qp = QParam::from_q(q).unwrap();
            for n in 0..=6usize {
                let t = action_table(n, -2, 10, &qp, &g, 1e-12).unwrap();
                assert!((t.total() - 1.0).abs() < 1e-8);
                for (m, v) in (-2..=10).zip(&t.values) {
                    let want = if m == n as i64 { 1.0 } else { 0.0 };
                    assert!((v - want).abs() < 1e-8, "q={q} n={n} m={m}: {v}");
                }
            }
        }
    }

    #[test]
    fn action_marginal_rejects_aliasing_grids() {
        let qp = QParam::from_q(0.9).unwrap();
        let g = PhaseGrid::new(8).unwrap();
        assert!(action_distribution(3, 3, &qp, &g, 1e-12).is_err());
        assert!(action_table(0, 3, 2, &qp, &PhaseGrid::default(), 1e-12).is_err());
    }

    #[test]
    fn wigner_m_sum_recovers_the_angle_marginal() {
        let qp = mu(0.5);
        let v = angle_distribution_from_wigner(0, 0.0, &qp, 200, 1e-14).unwrap();
        assert!((v - theta3(0.0, &qp, 1e-15).unwrap().value).abs() < 1e-3);
        let v = angle_distribution_from_wigner(1, FRAC_PI_2, &qp, 400, 1e-14).unwrap();
        assert!((v - n1_closed_form(FRAC_PI_2, &qp)).abs() < 1e-3);
        assert!(angle_distribution_from_wigner(3, 0.0, &qp, 12, 1e-12).is_err());
    }

    #[test]
    fn wigner_m_sum_converges_quadratically() {
        let qp = mu(0.5);
        for n in [0usize, 1, 3] {
            for theta in [0.0, 0.7] {
                let exact = angle_distribution(n, theta, &qp, 1e-15).unwrap();
                let e1 = (angle_distribution_from_wigner(n, theta, &qp, 200, 1e-14).unwrap() - exact).abs();
                let e2 = (angle_distribution_from_wigner(n, theta, &qp, 400, 1e-14).unwrap() - exact).abs();
                let order = libm::log2(e1 / e2);
                assert!((order - 2.0).abs() < 0.1, "n={n} θ={theta}: {e1} {e2}");
            }
        }
    }

    #[test]
    fn width_shrinks_with_mu() {
        let g = PhaseGrid::default();
        let var: Vec<f64> = [1.0, 0.5, 0.1]
            .iter()
            .map(|&m| circular_variance(&g, &angle_table(0, &mu(m), &g, 1e-15).unwrap().values))
            .collect();
        assert!(var[0] > var[1] && var[1] > var[2]);
        for (v, m) in var.iter().zip([1.0, 0.5, 0.1]) {
            assert!((v - (1.0 - libm::exp(-m))).abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_states_are_convex_combinations() {
        let qp = mu(0.4);
        let probs = [0.2, 0.0, 0.5, 0.3];
        for theta in [-PI, -0.5, 1.3] {
            let want: f64 = probs
                .iter()
                .enumerate()
                .map(|(n, p)| p * angle_distribution(n, theta, &qp, 1e-15).unwrap())
                .sum();
            let got = mixed_angle_distribution(&probs, theta, &qp, 1e-15).unwrap();
            assert!((got - want).abs() < 1e-14 * want.max(1.0));
        }
        assert!(mixed_angle_distribution(&[0.5, 0.6], 0.0, &qp, 1e-15).is_err());
        assert!(mixed_angle_distribution(&[1.5, -0.5], 0.0, &qp, 1e-15).is_err());
    }
}
