//! Rogers-Szegő polynomials `H_n(y;q) = Σ_r [n r] y^r` and the normalized
//! functions `R_n(φ;q) = q^{n/2} (q;q)_n^{-1/2} H_n(-q^{-1/2} e^{iφ}; q)`.
//!
//! The polynomials can be evaluated from their coefficients or through the
//! three-term recurrence
//! `H_{n+1} = (1 + y) H_n - (1 - q^n) y H_{n-1}`; the two routes are kept
//! independent so each can check the other.
//!
//! For `R_n` the recurrence is rewritten for the normalized functions,
//!
//! `R_{n+1} = [(q^{1/2} - e^{iφ}) R_n + q^{1/2} (1 - q^n)^{1/2} e^{iφ} R_{n-1}] / (1 - q^{n+1})^{1/2}`,
//!
//! which stays well conditioned as `q -> 1`, where the coefficient sum
//! suffers catastrophic cancellation (prefactor `(q;q)_n^{-1/2}` blows up).

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::poly::Polynomial;
use crate::qseries::{qbinomial_row, qfactorial, qnumber, QParam};

/// `H_n` as a coefficient vector, `coeffs[r] = [n r]`.
pub fn rs_coefficients(n: usize, qp: &QParam) -> Polynomial {
    Polynomial::from_real(&qbinomial_row(n, qp))
}

/// Horner evaluation of [`rs_coefficients`].
pub fn rs_eval_direct(n: usize, y: Complex64, qp: &QParam) -> Complex64 {
    rs_coefficients(n, qp).eval(y)
}

/// `H_n(y)` through the three-term recurrence.
pub fn rs_eval_recurrence(n: usize, y: Complex64, qp: &QParam) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut prev = one;
    if n == 0 {
        return prev;
    }
    let mut cur = one + y;
    for k in 1..n {
        let next = (one + y) * cur - y * prev * qp.one_minus_pow(k as u64);
        prev = cur;
        cur = next;
    }
    cur
}

/// Jackson q-derivative `D_q p(y) = (p(y) - p(qy)) / (y (1 - q))`.
///
/// On coefficients: `(D_q p)[r] = [r+1] p[r+1]`.
pub fn jackson_derivative(p: &Polynomial, qp: &QParam) -> Polynomial {
    let coeffs = p.coeffs();
    Polynomial::new(
        (1..coeffs.len())
            .map(|r| coeffs[r] * qnumber(r, qp))
            .collect(),
    )
}

/// The substitution variable `y = -q^{-1/2} e^{iφ}`.
pub fn circle_variable(phi: f64, qp: &QParam) -> Complex64 {
    -Complex64::from_polar(libm::exp(qp.mu()), phi)
}

/// Normalization `c_n = q^{n/2} / (q;q)_n^{1/2}` with `R_n = c_n H_n(y)`.
pub fn rs_normalization(n: usize, qp: &QParam) -> f64 {
    qp.powf(0.5 * n as f64) / libm::sqrt(qfactorial(n, qp))
}

/// One sample of a Rogers-Szegő function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsFunctionValue {
    pub n: usize,
    pub phi: f64,
    pub value: Complex64,
}

/// Evaluator for `R_0 … R_{n_max}` with the recurrence weights cached, for
/// sweeping many angles.
#[derive(Debug, Clone)]
pub struct RsFunctions {
    sqrt_q: f64,
    // sqrt(1 - q^k) for k = 0..=n_max
    root_gaps: Vec<f64>,
}

impl RsFunctions {
    pub fn new(n_max: usize, qp: &QParam) -> Self {
        RsFunctions {
            sqrt_q: libm::exp(-qp.mu()),
            root_gaps: (0..=n_max as u64)
                .map(|k| libm::sqrt(qp.one_minus_pow(k)))
                .collect(),
        }
    }

    pub fn n_max(&self) -> usize {
        self.root_gaps.len() - 1
    }

    /// `R_0(φ) … R_{n_max}(φ)` written into `out` (resized as needed).
    pub fn eval_all_into(&self, phi: f64, out: &mut Vec<Complex64>) {
        let n_max = self.n_max();
        out.clear();
        out.push(Complex64::new(1.0, 0.0));
        if n_max == 0 {
            return;
        }
        let e = Complex64::from_polar(1.0, phi);
        let lead = Complex64::new(self.sqrt_q, 0.0) - e;
        out.push(lead / self.root_gaps[1]);
        for k in 1..n_max {
            let next = (lead * out[k] + e * (self.sqrt_q * self.root_gaps[k]) * out[k - 1])
                / self.root_gaps[k + 1];
            out.push(next);
        }
    }

    pub fn eval_all(&self, phi: f64) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.n_max() + 1);
        self.eval_all_into(phi, &mut out);
        out
    }

    /// `R_{n_max}(φ)`.
    pub fn eval(&self, phi: f64) -> Complex64 {
        *self.eval_all(phi).last().expect("non-empty")
    }

    pub fn sample(&self, phi: f64) -> RsFunctionValue {
        RsFunctionValue {
            n: self.n_max(),
            phi,
            value: self.eval(phi),
        }
    }
}

/// `R_n(φ;q)`; `R_0 ≡ 1`.
pub fn rs_function(n: usize, phi: f64, qp: &QParam) -> Complex64 {
    RsFunctions::new(n, qp).eval(phi)
}

/// `R_n(φ;q)` from the regrouped coefficient sum
/// `(q;q)_n^{-1/2} Σ_r [n r] (-1)^r q^{(n-r)/2} e^{irφ}`.
///
/// Accurate for moderate `q`; loses digits as `q -> 1`. Kept as an
/// independent route for [`rs_function`].
pub fn rs_function_direct(n: usize, phi: f64, qp: &QParam) -> Complex64 {
    let row = qbinomial_row(n, qp);
    let e = Complex64::from_polar(1.0, phi);
    let sum = row
        .iter()
        .enumerate()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (r, &b)| {
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            acc * e + sign * b * qp.powf(0.5 * (n - r) as f64)
        });
    sum / libm::sqrt(qfactorial(n, qp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qp(q: f64) -> QParam {
        QParam::from_q(q).unwrap()
    }

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn coefficient_examples() {
        let p = qp(0.5);
        assert_eq!(rs_coefficients(0, &p), Polynomial::from_real(&[1.0]));
        assert_eq!(rs_coefficients(1, &p), Polynomial::from_real(&[1.0, 1.0]));
        let h2 = rs_coefficients(2, &p);
        assert!(h2.max_abs_diff(&Polynomial::from_real(&[1.0, 1.5, 1.0])) < 1e-15);
        for n in 0..20 {
            assert!(rs_coefficients(n, &p).coeffs().iter().all(|c| c.re > 0.0 && c.im == 0.0));
        }
    }

    #[test]
    fn direct_evaluation_examples() {
        for q in [0.1, 0.5, 0.9] {
            let p = qp(q);
            assert_eq!(rs_eval_direct(0, cx(3.0, 2.0), &p), cx(1.0, 0.0));
            assert_eq!(rs_eval_direct(5, cx(0.0, 0.0), &p), cx(1.0, 0.0));
        }
        // 1 + 1.75 + 1.75 + 1
        let v = rs_eval_direct(3, cx(1.0, 0.0), &qp(0.5));
        assert!((v - cx(5.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn recurrence_examples() {
        let p = qp(0.3);
        let y = cx(0.4, -0.8);
        let one = cx(1.0, 0.0);
        let want = (one + y) * (one + y) - y * (1.0 - 0.3);
        assert!((rs_eval_recurrence(2, y, &p) - want).norm() < 1e-15);
        assert_eq!(rs_eval_recurrence(1, cx(-1.0, 0.0), &p), cx(0.0, 0.0));
        let p = qp(0.7);
        let y = cx(0.3, 0.1);
        let a = rs_eval_recurrence(4, y, &p);
        let b = rs_eval_direct(4, y, &p);
        assert!((a - b).norm() <= 1e-13 * b.norm());
    }

    #[test]
    fn direct_and_recurrence_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [0.1, 0.5, 0.9] {
            let p = qp(q);
            for _ in 0..50 {
                let y = Complex64::from_polar(3.0 * libm::sqrt(rng.gen::<f64>()), rng.gen_range(-PI..PI));
                for n in 0..=25 {
                    let a = rs_eval_direct(n, y, &p);
                    let b = rs_eval_recurrence(n, y, &p);
                    // rounding floor of Horner near a zero of H_n
                    let scale: f64 = rs_coefficients(n, &p)
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(r, c)| c.norm() * y.norm().powi(r as i32))
                        .sum();
                    let bound = 1e-12 * (1.0 + a.norm()) + 1e-15 * scale;
                    assert!((a - b).norm() < bound, "q={q} n={n} y={y}");
                }
            }
        }
    }

    #[test]
    fn jackson_derivative_examples() {
        let p = qp(0.5);
        assert!(jackson_derivative(&Polynomial::from_real(&[4.2]), &p).is_zero());
        assert_eq!(
            jackson_derivative(&rs_coefficients(1, &p), &p),
            Polynomial::from_real(&[1.0])
        );
        let d = jackson_derivative(&rs_coefficients(3, &p), &p);
        let want = rs_coefficients(2, &p).scale(cx(1.75, 0.0));
        assert!(d.max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn jackson_derivative_matches_difference_quotient() {
        let p = qp(0.6);
        let poly = Polynomial::from_real(&[0.3, -1.0, 2.0, 0.5, -0.25]);
        let d = jackson_derivative(&poly, &p);
        for y in [cx(0.7, 0.2), cx(-1.3, 0.5), cx(2.0, -1.0)] {
            let quotient = (poly.eval(y) - poly.eval(y * p.q())) / (y * (1.0 - p.q()));
            assert!((d.eval(y) - quotient).norm() < 1e-13 * quotient.norm().max(1.0));
        }
    }

    #[test]
    fn jackson_derivative_lowers_rs_polynomials() {
        for q in [0.1, 0.5, 0.9] {
            let p = qp(q);
            for n in 1..=20 {
                let d = jackson_derivative(&rs_coefficients(n, &p), &p);
                let want = rs_coefficients(n - 1, &p).scale(cx(qnumber(n, &p), 0.0));
                assert!(d.max_rel_diff(&want, 1.0) < 1e-13, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn jackson_derivative_tends_to_ordinary_derivative() {
        let p = qp(1.0 - 1e-8);
        let poly = Polynomial::from_real(&[1.0, 2.0, -3.0, 4.0]);
        let d = jackson_derivative(&poly, &p);
        let ordinary = Polynomial::from_real(&[2.0, -6.0, 12.0]);
        assert!(d.max_abs_diff(&ordinary) < 1e-6);
    }

    #[test]
    fn classical_limit_is_binomial_power() {
        let p = qp(1.0 - 1e-8);
        for y in [cx(0.5, 0.0), cx(-0.3, 0.7), cx(1.5, -0.5)] {
            for n in 0..=10 {
                let want = (cx(1.0, 0.0) + y).powu(n as u32);
                let got = rs_eval_direct(n, y, &p);
                assert!((got - want).norm() < 1e-5 * want.norm().max(1e-300), "n={n}");
            }
        }
    }

    #[test]
    fn rs_function_examples() {
        let p = qp(0.5);
        assert_eq!(rs_function(0, 1.2, &p), cx(1.0, 0.0));
        for q in [0.1, 0.5, 0.9] {
            let p = qp(q);
            let want = (libm::sqrt(q) - 1.0) / libm::sqrt(1.0 - q);
            assert!((rs_function(1, 0.0, &p) - cx(want, 0.0)).norm() < 1e-14);
        }
        // composition of oracles: prefactor times H_2 at the circle variable
        let phi = PI / 3.0;
        let pref = libm::pow(0.5, 1.0) / libm::sqrt(qfactorial(2, &p));
        let want = rs_eval_direct(2, circle_variable(phi, &p), &p) * pref;
        assert!((rs_function(2, phi, &p) - want).norm() < 1e-14);
    }

    #[test]
    fn recurrence_and_regrouped_sum_agree_at_moderate_q() {
        for q in [0.1, 0.5, 0.8] {
            let p = qp(q);
            for n in 0..=15 {
                for k in 0..16 {
                    let phi = -PI + 2.0 * PI * k as f64 / 16.0;
                    let a = rs_function(n, phi, &p);
                    let b = rs_function_direct(n, phi, &p);
                    let c = rs_normalization(n, &p) * rs_eval_direct(n, circle_variable(phi, &p), &p);
                    assert!((a - b).norm() < 1e-11 * (1.0 + a.norm()), "q={q} n={n}");
                    assert!((a - c).norm() < 1e-11 * (1.0 + a.norm()), "q={q} n={n}");
                }
            }
        }
    }

    #[test]
    fn rs_function_conjugation_symmetry() {
        for q in [0.1, 0.5, 0.9] {
            let p = qp(q);
            for n in 0..=12 {
                for phi in [0.1, 0.9, 2.0, 3.1] {
                    let a = rs_function(n, -phi, &p);
                    let b = rs_function(n, phi, &p).conj();
                    assert!((a - b).norm() < 1e-14 * (1.0 + a.norm()));
                }
            }
        }
    }

    #[test]
    fn eval_all_matches_individual_orders() {
        let p = qp(0.9);
        let all = RsFunctions::new(8, &p).eval_all(0.4);
        for (n, v) in all.iter().enumerate() {
            assert_eq!(*v, rs_function(n, 0.4, &p));
        }
        let s = RsFunctions::new(3, &p).sample(0.4);
        assert_eq!(s.n, 3);
        assert_eq!(s.value, all[3]);
    }
}
