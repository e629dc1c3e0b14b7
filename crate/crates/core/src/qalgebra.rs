//! The q-deformed oscillator algebra `{A, A†, N}` on the Rogers-Szegő basis.
//!
//! On polynomials, `A = D_q` and `A† = (1 + y) - (1 - q) y D_q`, so that
//! `A† H_n = H_{n+1}` and `A H_n = [n] H_{n-1}`. In the truncated basis
//! `H_0 … H_{n_max}` the same operators are sparse matrices; relations are
//! checked on the interior block `0..n_max`, away from the truncation edge.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{check_tol, Error, Result};
use crate::matrix::CMatrix;
use crate::poly::Polynomial;
use crate::qseries::{qnumber, QParam};
use crate::rspoly::{jackson_derivative, rs_coefficients};

/// Coefficients in the `{H_n}` basis: `Σ coeffs[n] H_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    coeffs: Vec<Complex64>,
}

impl StateVector {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("coeffs.len", 0.0, "at least one coefficient"));
        }
        Ok(StateVector { coeffs })
    }

    /// `H_n` inside a basis of size `n_max + 1`.
    pub fn basis(n: usize, n_max: usize) -> Result<Self> {
        if n > n_max {
            return Err(Error::IndexOutOfRange {
                op: "StateVector::basis",
                index: n as i64,
                bound: n_max as i64,
            });
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n_max + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Ok(StateVector { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Σ coeffs[n] H_n(y)` as a monomial-basis polynomial.
    pub fn to_polynomial(&self, qp: &QParam) -> Polynomial {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
            .fold(Polynomial::zero(), |acc, (n, &c)| {
                &acc + &rs_coefficients(n, qp).scale(c)
            })
    }
}

/// `A p = D_q p`.
pub fn apply_a_poly(p: &Polynomial, qp: &QParam) -> Polynomial {
    jackson_derivative(p, qp)
}

/// `A† p = (1 + y) p - (1 - q) y D_q p`.
pub fn apply_adag_poly(p: &Polynomial, qp: &QParam) -> Polynomial {
    let shifted = &(p + &p.mul_y());
    let correction = jackson_derivative(p, qp)
        .mul_y()
        .scale(Complex64::new(qp.one_minus_pow(1), 0.0));
    shifted - &correction
}

/// Expands `p` in the `{H_n}` basis by peeling off leading coefficients
/// (`H_n` is monic of degree `n`). The zero polynomial maps to `[0]`.
pub fn expand_in_rs_basis(p: &Polynomial, qp: &QParam) -> StateVector {
    let Some(deg) = p.degree() else {
        return StateVector {
            coeffs: vec![Complex64::new(0.0, 0.0)],
        };
    };
    let mut rem: Vec<Complex64> = p.coeffs().to_vec();
    let mut out = vec![Complex64::new(0.0, 0.0); deg + 1];
    for d in (0..=deg).rev() {
        let lead = rem[d];
        out[d] = lead;
        if lead == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (r, c) in rs_coefficients(d, qp).coeffs().iter().enumerate() {
            rem[r] -= lead * c;
        }
        rem[d] = Complex64::new(0.0, 0.0);
    }
    StateVector { coeffs: out }
}

/// `A`, `A†` and `N` on `H_0 … H_{n_max}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderMatrices {
    pub n_max: usize,
    pub a_mat: CMatrix,
    pub adag_mat: CMatrix,
    pub n_mat: CMatrix,
}

impl LadderMatrices {
    pub fn dim(&self) -> usize {
        self.n_max + 1
    }
}

pub fn build_ladder_matrices(n_max: usize, qp: &QParam) -> Result<LadderMatrices> {
    if n_max < 1 {
        return Err(Error::IndexOutOfRange {
            op: "build_ladder_matrices",
            index: n_max as i64,
            bound: 1,
        });
    }
    let dim = n_max + 1;
    let mut a_mat = CMatrix::zeros(dim);
    let mut adag_mat = CMatrix::zeros(dim);
    for n in 1..dim {
        a_mat.set(n - 1, n, Complex64::new(qnumber(n, qp), 0.0));
        adag_mat.set(n, n - 1, Complex64::new(1.0, 0.0));
    }
    let n_mat = CMatrix::diagonal(
        &(0..dim)
            .map(|n| Complex64::new(n as f64, 0.0))
            .collect::<Vec<_>>(),
    );
    Ok(LadderMatrices {
        n_max,
        a_mat,
        adag_mat,
        n_mat,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `[A, A†] = q^N`
    Commutator,
    /// `[N, A†] = A†`
    NumberRaising,
    /// `[N, A] = -A`
    NumberLowering,
    /// `A A† - q A† A = 1`
    QCommutator,
    /// `A† A = [N]`
    NumberOperator,
}

impl Relation {
    pub const ALL: [Relation; 5] = [
        Relation::Commutator,
        Relation::NumberRaising,
        Relation::NumberLowering,
        Relation::QCommutator,
        Relation::NumberOperator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Commutator => "[A,A+]-q^N",
            Relation::NumberRaising => "[N,A+]-A+",
            Relation::NumberLowering => "[N,A]+A",
            Relation::QCommutator => "AA+-qA+A-1",
            Relation::NumberOperator => "A+A-[N]",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationResidual {
    pub relation: Relation,
    /// Max-norm of the defect on the interior block.
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub n_max: usize,
    pub q: f64,
    pub mu: f64,
    pub tol: f64,
    pub residuals: Vec<RelationResidual>,
    /// Max-norm of `[A, A†] - 1` on the interior block; tends to 0 as `q -> 1`.
    pub commutator_identity_deviation: f64,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationResidual> {
        self.residuals.iter().filter(|r| !r.passed)
    }

    pub fn residual(&self, relation: Relation) -> f64 {
        self.residuals
            .iter()
            .find(|r| r.relation == relation)
            .map_or(f64::NAN, |r| r.residual)
    }
}

/// Checks the algebra on the interior `n_max x n_max` block of the
/// truncated matrices.
pub fn verify_algebra(n_max: usize, qp: &QParam, tol: f64) -> Result<RelationReport> {
    check_tol(tol)?;
    if n_max < 2 {
        return Err(Error::IndexOutOfRange {
            op: "verify_algebra",
            index: n_max as i64,
            bound: 2,
        });
    }
    let m = build_ladder_matrices(n_max, qp)?;
    let (a, ad, num) = (&m.a_mat, &m.adag_mat, &m.n_mat);
    let dim = m.dim();
    let diag = |f: &dyn Fn(usize) -> f64| {
        CMatrix::diagonal(&(0..dim).map(|n| Complex64::new(f(n), 0.0)).collect::<Vec<_>>())
    };
    let q_pow_n = diag(&|n| qp.pow(n as i64));
    let q_num_n = diag(&|n| qnumber(n, qp));
    let ident = CMatrix::identity(dim);
    let q = Complex64::new(qp.q(), 0.0);

    let a_ad = a * ad;
    let ad_a = ad * a;
    let commutator = &a_ad - &ad_a;
    let defects = [
        (Relation::Commutator, &commutator - &q_pow_n),
        (Relation::NumberRaising, &(&(num * ad) - &(ad * num)) - ad),
        (Relation::NumberLowering, &(&(num * a) - &(a * num)) + a),
        (Relation::QCommutator, &(&a_ad - &ad_a.scale(q)) - &ident),
        (Relation::NumberOperator, &ad_a - &q_num_n),
    ];
    let residuals = defects
        .iter()
        .map(|(relation, d)| {
            let residual = d.max_abs_block(n_max);
            RelationResidual {
                relation: *relation,
                residual,
                passed: residual < tol,
            }
        })
        .collect();
    Ok(RelationReport {
        n_max,
        q: qp.q(),
        mu: qp.mu(),
        tol,
        residuals,
        commutator_identity_deviation: (&commutator - &ident).max_abs_block(n_max),
    })
}
