use proptest::prelude::*;

use qps_core::qalgebra::{apply_a_poly, apply_adag_poly, expand_in_rs_basis};
use qps_core::qseries::{qbinomial, qnumber};
use qps_core::rspoly::{rs_coefficients, rs_function, rs_function_direct};
use qps_core::theta::{theta3, theta3_gaussian, theta3_series};
use qps_core::wigner::{wigner_eval, MeasureShift, WignerKernel};
use qps_core::{Complex64, QParam};

fn qparam() -> impl Strategy<Value = QParam> {
    (0.05f64..0.95).prop_map(|q| QParam::from_q(q).unwrap())
}

proptest! {
    #[test]
    fn qbinomial_is_symmetric_and_obeys_pascal(qp in qparam(), n in 1usize..30, j in 0usize..30) {
        let j = j % (n + 1);
        let a = qbinomial(n, j, &qp).unwrap();
        let b = qbinomial(n, n - j, &qp).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * a);
        if j >= 1 && j < n {
            // [n j] = [n-1 j-1] + q^j [n-1 j]
            let rhs = qbinomial(n - 1, j - 1, &qp).unwrap()
                + qp.pow(j as i64) * qbinomial(n - 1, j, &qp).unwrap();
            prop_assert!((a - rhs).abs() <= 1e-13 * a);
        }
    }

    #[test]
    fn ladder_moves_between_basis_states(qp in qparam(), n in 0usize..15) {
        let h = rs_coefficients(n, &qp);
        let up = expand_in_rs_basis(&apply_adag_poly(&h, &qp), &qp);
        for (k, c) in up.coeffs().iter().enumerate() {
            let want = if k == n + 1 { 1.0 } else { 0.0 };
            prop_assert!((c - Complex64::new(want, 0.0)).norm() < 1e-10);
        }
        let down = expand_in_rs_basis(&apply_a_poly(&h, &qp), &qp);
        for (k, c) in down.coeffs().iter().enumerate() {
            let want = if n > 0 && k == n - 1 { qnumber(n, &qp) } else { 0.0 };
            prop_assert!((c - Complex64::new(want, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn rs_function_routes_agree(q in 0.1f64..0.7, n in 0usize..12, phi in -3.2f64..3.2) {
        let qp = QParam::from_q(q).unwrap();
        let a = rs_function(n, phi, &qp);
        let b = rs_function_direct(n, phi, &qp);
        prop_assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()));
    }

    #[test]
    fn theta3_branches_agree_on_the_peak_scale(mu in 0.05f64..5.0, phi in -10.0f64..10.0) {
        let qp = QParam::from_mu(mu).unwrap();
        let a = theta3_series(phi, &qp, 1e-15).unwrap().value;
        let b = theta3_gaussian(phi, &qp, 1e-15).unwrap().value;
        let peak = theta3(0.0, &qp, 1e-15).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-13 * peak);
        prop_assert!(b > 0.0);
    }

    #[test]
    fn alternate_shift_is_the_conjugate(
        qp in qparam(),
        n in 0usize..5,
        m in -3i64..8,
        theta in -3.1f64..3.1,
    ) {
        let o = wigner_eval(n, m, theta, &qp, 1e-12).unwrap().value;
        let alt = WignerKernel::with_shift(n, &qp, 1e-12, MeasureShift::Plus)
            .unwrap()
            .eval(m, theta)
            .value;
        prop_assert!((alt - o.conj()).norm() <= 1e-11 * (1.0 + o.norm()));
    }
}
