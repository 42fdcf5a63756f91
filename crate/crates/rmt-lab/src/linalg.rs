//! Spectral linear algebra on top of [`eigen`](crate::eigen):
//! inverse application, inverse norms, restriction to the orthogonal
//! complement of a vector, and the complex-to-real embedding.

use num_complex::Complex64;

use crate::eigen::{EigenVectors, Spectrum};
use crate::matrix::{HermitianMatrix, MatrixData, Vector, VectorData};
use crate::{Error, Result};

/// Relative tolerance below which a spectrum counts as singular. The
/// singular event has probability zero under the Gaussian ensembles, so
/// estimators treat draws that trip this as exceeding every threshold.
pub const SINGULAR_REL_TOL: f64 = 1e-13;

/// Error when `min |lambda|` is under the relative singularity tolerance.
pub fn check_invertible(spec: &Spectrum) -> Result<()> {
    let min = spec.min_abs_eigenvalue();
    if min <= SINGULAR_REL_TOL * spec.max_abs_eigenvalue().max(1.0) {
        return Err(Error::NearSingular {
            min_abs_eigenvalue: min,
        });
    }
    Ok(())
}

/// `H^{-1} phi` computed from the eigendecomposition of `H` as
/// `sum_i <v_i, phi> / lambda_i * v_i`.
pub fn apply_inverse(spec: &Spectrum, phi: &Vector) -> Result<Vector> {
    let n = spec.dim();
    if phi.dim() != n {
        return Err(Error::InvalidInput(format!(
            "spectrum dim {n} vs vector dim {}",
            phi.dim()
        )));
    }
    check_invertible(spec)?;
    let vectors = spec
        .vectors
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("apply_inverse needs eigenvectors".into()))?;

    match (vectors, &phi.data) {
        (EigenVectors::Real { n, cols }, VectorData::Real(x)) => {
            let mut y = vec![0.0; *n];
            for (k, lam) in spec.eigenvalues().iter().enumerate() {
                let col = &cols[k * n..(k + 1) * n];
                let c: f64 = col.iter().zip(x).map(|(a, b)| a * b).sum();
                let c = c / lam;
                for (yi, &vi) in y.iter_mut().zip(col) {
                    *yi += c * vi;
                }
            }
            Ok(Vector {
                data: VectorData::Real(y),
            })
        }
        _ => {
            // mixed or complex: work in the complex field
            let x = phi.to_complex();
            let x = x.as_complex_slice();
            match vectors {
                EigenVectors::Complex { n, cols } => {
                    let mut y = vec![Complex64::ZERO; *n];
                    for (k, lam) in spec.eigenvalues().iter().enumerate() {
                        let col = &cols[k * n..(k + 1) * n];
                        let c: Complex64 =
                            col.iter().zip(x).map(|(a, b)| a.conj() * b).sum();
                        let c = c / lam;
                        for (yi, &vi) in y.iter_mut().zip(col) {
                            *yi += c * vi;
                        }
                    }
                    Ok(Vector {
                        data: VectorData::Complex(y),
                    })
                }
                EigenVectors::Real { n, cols } => {
                    let mut y = vec![Complex64::ZERO; *n];
                    for (k, lam) in spec.eigenvalues().iter().enumerate() {
                        let col = &cols[k * n..(k + 1) * n];
                        let c: Complex64 = col.iter().zip(x).map(|(a, b)| a * b).sum();
                        let c = c / lam;
                        for (yi, &vi) in y.iter_mut().zip(col) {
                            *yi += c * vi;
                        }
                    }
                    Ok(Vector {
                        data: VectorData::Complex(y),
                    })
                }
            }
        }
    }
}

/// Frobenius and operator norms of `H^{-1}` from the spectrum:
/// `(sqrt(sum lambda_i^{-2}), 1 / min |lambda_i|)`.
pub fn inverse_norms(spec: &Spectrum) -> Result<(f64, f64)> {
    check_invertible(spec)?;
    let frob = spec
        .eigenvalues()
        .iter()
        .map(|l| 1.0 / (l * l))
        .sum::<f64>()
        .sqrt();
    let op = 1.0 / spec.min_abs_eigenvalue();
    Ok((frob, op))
}

/// Restrict `H` to the orthogonal complement of `phi`:
/// `H_phi = B^* H B` where `B` is the deterministic Householder basis of
/// `phi^perp` (columns `1..n` of the reflector sending `phi/||phi||` to
/// a multiple of `e_1`).
pub fn restrict_orthogonal(h: &HermitianMatrix, phi: &Vector) -> Result<HermitianMatrix> {
    let n = h.dim();
    if phi.dim() != n {
        return Err(Error::InvalidInput(format!(
            "matrix dim {n} vs vector dim {}",
            phi.dim()
        )));
    }
    if n < 2 {
        return Err(Error::InvalidInput(
            "cannot restrict a 1x1 matrix to a codimension-1 subspace".into(),
        ));
    }
    let norm = phi.norm();
    if norm == 0.0 {
        return Err(Error::InvalidInput("phi must be nonzero".into()));
    }

    match (&h.data, &phi.data) {
        (MatrixData::Real(a), VectorData::Real(p)) => {
            let mut v: Vec<f64> = p.iter().map(|x| x / norm).collect();
            let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
            v[0] += sign;
            let beta = 2.0 / v.iter().map(|x| x * x).sum::<f64>();
            // P H P = H - v w^T - w v^T with w = beta H v - (beta^2 (v^T H v)/2) v
            let mut w = vec![0.0; n];
            for i in 0..n {
                w[i] = beta
                    * a[i * n..(i + 1) * n]
                        .iter()
                        .zip(&v)
                        .map(|(x, y)| x * y)
                        .sum::<f64>();
            }
            let kappa = 0.5 * beta * v.iter().zip(&w).map(|(x, y)| x * y).sum::<f64>();
            for i in 0..n {
                w[i] -= kappa * v[i];
            }
            let m = n - 1;
            let mut out = vec![0.0; m * m];
            for i in 0..m {
                for j in 0..m {
                    let (ii, jj) = (i + 1, j + 1);
                    out[i * m + j] = a[ii * n + jj] - v[ii] * w[jj] - w[ii] * v[jj];
                }
            }
            HermitianMatrix::from_rows_real(m, out)
        }
        _ => {
            let hc = h.to_complex();
            let a = hc.as_complex().unwrap();
            let pc = phi.to_complex();
            let p = pc.as_complex_slice();
            let mut v: Vec<Complex64> = p.iter().map(|z| z / norm).collect();
            let phase = if v[0] == Complex64::ZERO {
                Complex64::ONE
            } else {
                v[0] / v[0].norm()
            };
            v[0] += phase;
            let beta = 2.0 / v.iter().map(|z| z.norm_sqr()).sum::<f64>();
            let mut w = vec![Complex64::ZERO; n];
            for i in 0..n {
                w[i] = beta
                    * a[i * n..(i + 1) * n]
                        .iter()
                        .zip(&v)
                        .map(|(x, y)| x * y)
                        .sum::<Complex64>();
            }
            let kappa = 0.5
                * beta
                * v.iter()
                    .zip(&w)
                    .map(|(x, y)| (x.conj() * y).re)
                    .sum::<f64>();
            for i in 0..n {
                w[i] -= kappa * v[i];
            }
            let m = n - 1;
            let mut out = vec![Complex64::ZERO; m * m];
            for i in 0..m {
                for j in 0..m {
                    let (ii, jj) = (i + 1, j + 1);
                    out[i * m + j] =
                        a[ii * n + jj] - v[ii] * w[jj].conj() - w[ii] * v[jj].conj();
                }
            }
            HermitianMatrix::from_rows_complex(m, out)
        }
    }
}

/// Represent a complex Hermitian `Q` (and optionally a complex vector) as
/// a real symmetric matrix of dimension `2n` in the basis
/// `(e_1, i e_1, e_2, i e_2, ...)`. Preserves `||Q v||` and `v^* Q v`
/// exactly and multiplies the Frobenius norm by `sqrt(2)`.
pub fn complex_to_real_embed(
    q: &HermitianMatrix,
    v: Option<&Vector>,
) -> Result<(HermitianMatrix, Option<Vector>)> {
    let n = q.dim();
    let qc = q.to_complex();
    let a = qc.as_complex().unwrap();
    let m = 2 * n;
    let mut out = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = a[i * n + j];
            out[(2 * i) * m + 2 * j] = z.re;
            out[(2 * i) * m + 2 * j + 1] = -z.im;
            out[(2 * i + 1) * m + 2 * j] = z.im;
            out[(2 * i + 1) * m + 2 * j + 1] = z.re;
        }
    }
    let embedded_v = match v {
        None => None,
        Some(v) => {
            if v.dim() != n {
                return Err(Error::InvalidInput(format!(
                    "matrix dim {n} vs vector dim {}",
                    v.dim()
                )));
            }
            let vc = v.to_complex();
            let vs = vc.as_complex_slice();
            let mut out = vec![0.0; m];
            for (j, z) in vs.iter().enumerate() {
                out[2 * j] = z.re;
                out[2 * j + 1] = z.im;
            }
            Some(Vector::real(out)?)
        }
    };
    Ok((HermitianMatrix::from_rows_real(m, out)?, embedded_v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::eigh;
    use crate::matrix::Field;
    use crate::rng::RngStream;

    fn random_sym(n: usize, seed: u64) -> HermitianMatrix {
        let mut rng = RngStream::new(seed, 0);
        let rows: Vec<f64> = (0..n * n).map(|_| rng.normal()).collect();
        HermitianMatrix::from_rows_real(n, rows).unwrap()
    }

    fn random_herm(n: usize, seed: u64) -> HermitianMatrix {
        let mut rng = RngStream::new(seed, 1);
        let rows: Vec<Complex64> = (0..n * n)
            .map(|_| Complex64::new(rng.normal(), rng.normal()))
            .collect();
        HermitianMatrix::from_rows_complex(n, rows).unwrap()
    }

    #[test]
    fn apply_inverse_diagonal() {
        let h = HermitianMatrix::diagonal(&[2.0, 4.0]);
        let s = eigh(&h, true).unwrap();
        let phi = Vector::real(vec![1.0, 1.0]).unwrap();
        let y = apply_inverse(&s, &phi).unwrap();
        assert!((y.entry(0).re - 0.5).abs() < 1e-15);
        assert!((y.entry(1).re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn apply_inverse_identity() {
        let h = HermitianMatrix::scaled_identity(Field::Real, 4, 1.0);
        let s = eigh(&h, true).unwrap();
        let phi = Vector::real(vec![0.5, -1.0, 2.0, 0.0]).unwrap();
        let y = apply_inverse(&s, &phi).unwrap();
        for i in 0..4 {
            assert!((y.entry(i) - phi.entry(i)).norm() < 1e-14);
        }
    }

    #[test]
    fn apply_inverse_residual_random() {
        for (h, seed) in [(random_sym(16, 21), 21), (random_herm(16, 22), 22)] {
            let _ = seed;
            let s = eigh(&h, true).unwrap();
            let mut rng = RngStream::new(77, 0);
            let phi = Vector::real((0..16).map(|_| rng.normal()).collect()).unwrap();
            let y = apply_inverse(&s, &phi).unwrap();
            let hy = h.mul_vec(&y).unwrap();
            let mut err = 0.0f64;
            for i in 0..16 {
                err += (hy.entry(i) - phi.entry(i)).norm_sqr();
            }
            let cond = s.max_abs_eigenvalue() / s.min_abs_eigenvalue();
            assert!(
                err.sqrt() <= 1e-10 * phi.norm() * cond,
                "residual {} cond {cond}",
                err.sqrt()
            );
        }
    }

    #[test]
    fn near_singular_detected() {
        let h = HermitianMatrix::diagonal(&[1e-15, 1.0]);
        let s = eigh(&h, true).unwrap();
        let phi = Vector::real(vec![1.0, 1.0]).unwrap();
        match apply_inverse(&s, &phi) {
            Err(Error::NearSingular {
                min_abs_eigenvalue,
            }) => assert!(min_abs_eigenvalue <= 1e-14),
            other => panic!("expected NearSingular, got {other:?}"),
        }
    }

    #[test]
    fn inverse_norms_diagonal() {
        let h = HermitianMatrix::diagonal(&[1.0, 2.0]);
        let s = eigh(&h, false).unwrap();
        let (frob, op) = inverse_norms(&s).unwrap();
        assert!((frob - 1.25f64.sqrt()).abs() < 1e-15);
        assert!((op - 1.0).abs() < 1e-15);

        let h = HermitianMatrix::diagonal(&[0.5]);
        let s = eigh(&h, false).unwrap();
        let (frob, op) = inverse_norms(&s).unwrap();
        assert_eq!((frob, op), (2.0, 2.0));
    }

    #[test]
    fn inverse_norms_match_explicit_inverse() {
        let h = random_sym(8, 5);
        let s = eigh(&h, true).unwrap();
        let (frob, op) = inverse_norms(&s).unwrap();
        // explicit inverse column by column
        let n = 8;
        let mut inv = vec![0.0; n * n];
        for j in 0..n {
            let e = Vector::basis(Field::Real, n, j);
            let col = apply_inverse(&s, &e).unwrap();
            for i in 0..n {
                inv[i * n + j] = col.entry(i).re;
            }
        }
        let hinv = HermitianMatrix::from_rows_real(n, inv).unwrap();
        let si = eigh(&hinv, false).unwrap();
        let frob2 = hinv.frobenius_norm();
        let op2 = si.max_abs_eigenvalue();
        assert!((frob - frob2).abs() <= 1e-10 * frob);
        assert!((op - op2).abs() <= 1e-10 * op);
    }

    #[test]
    fn operator_norm_below_frobenius() {
        for seed in 0..20 {
            let h = random_sym(6, 100 + seed);
            let s = eigh(&h, false).unwrap();
            let (frob, op) = inverse_norms(&s).unwrap();
            assert!(op <= frob * (1.0 + 1e-12));
        }
    }

    #[test]
    fn restrict_coordinate_case() {
        let h = random_sym(5, 9);
        let phi = Vector::basis(Field::Real, 5, 0);
        let r = restrict_orthogonal(&h, &phi).unwrap();
        assert_eq!(r.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert!(
                    (r.entry(i, j) - h.entry(i + 1, j + 1)).norm() < 1e-12,
                    "principal block mismatch at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn restrict_two_dim_formula() {
        let (a, b, c) = (1.5, -0.75, 0.25);
        let h = HermitianMatrix::from_rows_real(2, vec![a, b, b, c]).unwrap();
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        let phi = Vector::real(vec![inv_sqrt2, inv_sqrt2]).unwrap();
        let r = restrict_orthogonal(&h, &phi).unwrap();
        assert_eq!(r.dim(), 1);
        let expect = 0.5 * (a + c) - b;
        assert!((r.entry(0, 0).re - expect).abs() < 1e-14);
    }

    #[test]
    fn restrict_interlaces() {
        for seed in 0..20 {
            let n = 7;
            let h = random_herm(n, 300 + seed);
            let mut rng = RngStream::new(400 + seed, 0);
            let phi = Vector::complex(
                (0..n)
                    .map(|_| Complex64::new(rng.normal(), rng.normal()))
                    .collect(),
            )
            .unwrap();
            let r = restrict_orthogonal(&h, &phi).unwrap();
            let lam = eigh(&h, false).unwrap();
            let mu = eigh(&r, false).unwrap();
            for k in 0..n - 1 {
                assert!(lam.eigenvalues()[k] <= mu.eigenvalues()[k] + 1e-10);
                assert!(mu.eigenvalues()[k] <= lam.eigenvalues()[k + 1] + 1e-10);
            }
        }
    }

    #[test]
    fn restrict_rejects_zero_phi() {
        let h = random_sym(4, 1);
        let phi = Vector::real(vec![0.0; 4]).unwrap();
        assert!(matches!(
            restrict_orthogonal(&h, &phi),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn embed_identity() {
        let q = HermitianMatrix::scaled_identity(Field::Complex, 3, 1.0);
        let (qe, _) = complex_to_real_embed(&q, None).unwrap();
        let expect = HermitianMatrix::scaled_identity(Field::Real, 6, 1.0);
        assert_eq!(qe, expect);
    }

    #[test]
    fn embed_preserves_action_and_quadratic_form() {
        let q = HermitianMatrix::from_rows_complex(
            2,
            vec![
                Complex64::ZERO,
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
                Complex64::ZERO,
            ],
        )
        .unwrap();
        let mut rng = RngStream::new(55, 0);
        for _ in 0..20 {
            let v = Vector::complex(
                (0..2)
                    .map(|_| Complex64::new(rng.normal(), rng.normal()))
                    .collect(),
            )
            .unwrap();
            let (qe, ve) = complex_to_real_embed(&q, Some(&v)).unwrap();
            let ve = ve.unwrap();
            let lhs = qe.mul_vec(&ve).unwrap().norm();
            let rhs = q.mul_vec(&v).unwrap().norm();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
            // quadratic form
            let qv = q.mul_vec(&v).unwrap();
            let quad = v.dot(&qv).re;
            let qeve = qe.mul_vec(&ve).unwrap();
            let quad_e = ve.dot(&qeve).re;
            assert!((quad - quad_e).abs() <= 1e-12 * quad.abs().max(1.0));
        }
    }

    #[test]
    fn embed_frobenius_factor() {
        let q = random_herm(6, 77);
        let (qe, _) = complex_to_real_embed(&q, None).unwrap();
        let ratio = qe.frobenius_norm() / q.frobenius_norm();
        assert!((ratio - 2.0f64.sqrt()).abs() < 1e-12);
    }
}
