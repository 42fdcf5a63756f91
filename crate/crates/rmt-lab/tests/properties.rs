//! Property tests for the structural invariants: text-format round
//! trips, spectral identities under permutation similarity, confidence
//! interval ordering, and embedding isometries.

use num_complex::Complex64;
use proptest::prelude::*;
use rmt_lab::eigen::eigh;
use rmt_lab::estimators::clopper_pearson;
use rmt_lab::linalg::complex_to_real_embed;
use rmt_lab::matrix::{HermitianMatrix, Vector};

fn finite_f64() -> impl Strategy<Value = f64> {
    prop_oneof![-1e6..1e6f64, -1.0..1.0f64, Just(0.0)]
}

fn real_matrix(max_n: usize) -> impl Strategy<Value = HermitianMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(finite_f64(), n * n)
            .prop_map(move |rows| HermitianMatrix::from_rows_real(n, rows).unwrap())
    })
}

fn complex_matrix(max_n: usize) -> impl Strategy<Value = HermitianMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((finite_f64(), finite_f64()), n * n).prop_map(move |rows| {
            HermitianMatrix::from_rows_complex(
                n,
                rows.into_iter().map(|(re, im)| Complex64::new(re, im)).collect(),
            )
            .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_roundtrip_real(m in real_matrix(5)) {
        let back = HermitianMatrix::from_text(&m.to_text()).unwrap();
        prop_assert_eq!(m, back);
    }

    #[test]
    fn text_roundtrip_complex(m in complex_matrix(4)) {
        let back = HermitianMatrix::from_text(&m.to_text()).unwrap();
        prop_assert_eq!(m, back);
    }

    #[test]
    fn trace_is_eigenvalue_sum(m in real_matrix(6)) {
        let s = eigh(&m, false).unwrap();
        let sum: f64 = s.eigenvalues().iter().sum();
        let tol = 1e-10 * m.frobenius_norm().max(1.0);
        prop_assert!((sum - m.trace()).abs() <= tol);
    }

    #[test]
    fn eigenvalues_invariant_under_permutation(
        m in complex_matrix(5),
        shift in 0usize..5,
    ) {
        let n = m.dim();
        // cyclic permutation: entry (i, j) -> (p(i), p(j))
        let p = |i: usize| (i + shift) % n;
        let mut rows = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                rows[p(i) * n + p(j)] = m.entry(i, j);
            }
        }
        let permuted = HermitianMatrix::from_rows_complex(n, rows).unwrap();
        let a = eigh(&m, false).unwrap();
        let b = eigh(&permuted, false).unwrap();
        let tol = 1e-10 * m.frobenius_norm().max(1.0);
        for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
            prop_assert!((x - y).abs() <= tol, "{x} vs {y}");
        }
    }

    #[test]
    fn reconstruction_residual_small(m in real_matrix(6)) {
        let s = eigh(&m, true).unwrap();
        let tol = 1e-10 * m.frobenius_norm().max(1.0);
        prop_assert!(s.reconstruction_residual(&m) <= tol);
    }

    #[test]
    fn clopper_pearson_orders(successes in 0u64..500, extra in 0u64..500, level in 0.5f64..0.999) {
        let n = successes + extra.max(1);
        let (lo, hi) = clopper_pearson(successes, n, level);
        let p_hat = successes as f64 / n as f64;
        prop_assert!((0.0..=1.0).contains(&lo));
        prop_assert!((0.0..=1.0).contains(&hi));
        prop_assert!(lo <= p_hat + 1e-12);
        prop_assert!(p_hat <= hi + 1e-12);
    }

    #[test]
    fn embedding_preserves_quadratic_form(
        m in complex_matrix(4),
        raw in prop::collection::vec((finite_f64(), finite_f64()), 4),
    ) {
        let n = m.dim();
        let v = Vector::complex(
            raw.into_iter().take(n).chain(std::iter::repeat((1.0, 0.0)))
                .take(n)
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
        .unwrap();
        let (qe, ve) = complex_to_real_embed(&m, Some(&v)).unwrap();
        let ve = ve.unwrap();
        let scale = m.frobenius_norm().max(v.norm()).max(1.0);
        // action norm
        let lhs = qe.mul_vec(&ve).unwrap().norm();
        let rhs = m.mul_vec(&v).unwrap().norm();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale * scale);
        // Frobenius factor
        let ratio = qe.frobenius_norm() / m.frobenius_norm().max(f64::MIN_POSITIVE);
        if m.frobenius_norm() > 0.0 {
            prop_assert!((ratio - 2.0f64.sqrt()).abs() <= 1e-12);
        }
    }
}
