//! Dense Hermitian eigendecomposition.
//!
//! Real symmetric and complex Hermitian matrices are reduced to real
//! symmetric tridiagonal form by Householder reflections (a diagonal
//! phase similarity makes the complex off-diagonals real), then
//! diagonalized by the implicitly shifted QL iteration. Eigenvectors,
//! when requested, are obtained by rotating the tridiagonal eigenbasis
//! and replaying the stored reflectors.

use num_complex::Complex64;

use crate::matrix::{HermitianMatrix, MatrixData, Vector, VectorData};
use crate::{Error, Result};

/// QL sweeps allowed per eigenvalue before giving up.
const MAX_QL_ITER: usize = 40;

/// Eigenvalues in ascending order with an optional orthonormal eigenbasis.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    pub(crate) vectors: Option<EigenVectors>,
}

/// Column-major unitary eigenvector storage; column `i` pairs with
/// eigenvalue `i`.
#[derive(Debug, Clone)]
pub(crate) enum EigenVectors {
    Real { n: usize, cols: Vec<f64> },
    Complex { n: usize, cols: Vec<Complex64> },
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn has_vectors(&self) -> bool {
        self.vectors.is_some()
    }

    pub fn min_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|x| x.abs())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// Eigenvector paired with eigenvalue `i`; panics without vectors.
    pub fn eigenvector(&self, i: usize) -> Vector {
        match self.vectors.as_ref().expect("spectrum lacks eigenvectors") {
            EigenVectors::Real { n, cols } => Vector {
                data: VectorData::Real(cols[i * n..(i + 1) * n].to_vec()),
            },
            EigenVectors::Complex { n, cols } => Vector {
                data: VectorData::Complex(cols[i * n..(i + 1) * n].to_vec()),
            },
        }
    }

    /// `|| U diag(lambda) U^* - H ||_F`; requires eigenvectors.
    pub fn reconstruction_residual(&self, h: &HermitianMatrix) -> f64 {
        let n = self.dim();
        assert_eq!(n, h.dim());
        let mut acc = 0.0f64;
        match self.vectors.as_ref().expect("spectrum lacks eigenvectors") {
            EigenVectors::Real { cols, .. } => {
                let hr = h.as_real().expect("field mismatch");
                for i in 0..n {
                    for j in 0..n {
                        let mut s = 0.0;
                        for (k, lam) in self.eigenvalues.iter().enumerate() {
                            s += cols[k * n + i] * lam * cols[k * n + j];
                        }
                        let d = s - hr[i * n + j];
                        acc += d * d;
                    }
                }
            }
            EigenVectors::Complex { cols, .. } => {
                let hc = h.as_complex().expect("field mismatch");
                for i in 0..n {
                    for j in 0..n {
                        let mut s = Complex64::ZERO;
                        for (k, lam) in self.eigenvalues.iter().enumerate() {
                            s += cols[k * n + i] * lam * cols[k * n + j].conj();
                        }
                        acc += (s - hc[i * n + j]).norm_sqr();
                    }
                }
            }
        }
        acc.sqrt()
    }
}

/// Eigendecomposition of a Hermitian matrix. Eigenvalues come back
/// ascending; with `want_vectors` the unitary eigenbasis is attached.
pub fn eigh(h: &HermitianMatrix, want_vectors: bool) -> Result<Spectrum> {
    let n = h.dim();
    match &h.data {
        MatrixData::Real(a) => {
            let mut work = a.clone();
            let (mut d, mut e, refl) = tridiagonalize_real(&mut work, n, want_vectors);
            let mut z = want_vectors.then(|| identity_cols(n));
            ql_implicit(&mut d, &mut e, n, |i, c, s| {
                if let Some(z) = z.as_mut() {
                    rotate_cols(z, n, i, c, s);
                }
            })?;
            let perm = sort_perm(&mut d);
            let vectors = z.map(|mut z| {
                permute_cols(&mut z, n, &perm);
                let refl = refl.expect("reflectors stored with want_vectors");
                replay_real(&mut z, n, &refl);
                EigenVectors::Real { n, cols: z }
            });
            Ok(Spectrum {
                eigenvalues: d,
                vectors,
            })
        }
        MatrixData::Complex(a) => {
            let mut work = a.clone();
            let (mut d, mut e, refl, phases) =
                tridiagonalize_complex(&mut work, n, want_vectors);
            let mut z = want_vectors.then(|| identity_cols(n));
            ql_implicit(&mut d, &mut e, n, |i, c, s| {
                if let Some(z) = z.as_mut() {
                    rotate_cols(z, n, i, c, s);
                }
            })?;
            let perm = sort_perm(&mut d);
            let vectors = z.map(|mut z| {
                permute_cols(&mut z, n, &perm);
                let mut zc: Vec<Complex64> =
                    z.iter().map(|&x| Complex64::new(x, 0.0)).collect();
                // undo the phase similarity, then the reflectors
                for col in 0..n {
                    for (row, ph) in phases.iter().enumerate() {
                        zc[col * n + row] *= ph.conj();
                    }
                }
                let refl = refl.expect("reflectors stored with want_vectors");
                replay_complex(&mut zc, n, &refl);
                EigenVectors::Complex { n, cols: zc }
            });
            Ok(Spectrum {
                eigenvalues: d,
                vectors,
            })
        }
    }
}

fn identity_cols(n: usize) -> Vec<f64> {
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    z
}

#[inline]
fn rotate_cols(z: &mut [f64], n: usize, i: usize, c: f64, s: f64) {
    let (lo, hi) = z.split_at_mut((i + 1) * n);
    let a = &mut lo[i * n..];
    let b = &mut hi[..n];
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let h = *y;
        *y = s * *x + c * h;
        *x = c * *x - s * h;
    }
}

fn sort_perm(d: &mut [f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..d.len()).collect();
    idx.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    let sorted: Vec<f64> = idx.iter().map(|&i| d[i]).collect();
    d.copy_from_slice(&sorted);
    idx
}

fn permute_cols(z: &mut [f64], n: usize, perm: &[usize]) {
    let old = z.to_owned();
    for (new_col, &src) in perm.iter().enumerate() {
        z[new_col * n..(new_col + 1) * n].copy_from_slice(&old[src * n..(src + 1) * n]);
    }
}

/// Packed Householder reflectors: `vecs` concatenates u_k for
/// k = 0..n-2, u_k of length n-1-k; beta_k = 2 / ||u_k||^2, zero when the
/// column needed no reflection.
struct Reflectors<T> {
    vecs: Vec<T>,
    betas: Vec<f64>,
}

fn tridiagonalize_real(
    a: &mut [f64],
    n: usize,
    keep_reflectors: bool,
) -> (Vec<f64>, Vec<f64>, Option<Reflectors<f64>>) {
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut refl = keep_reflectors.then(|| Reflectors {
        vecs: Vec::with_capacity(n * n / 2),
        betas: Vec::with_capacity(n.saturating_sub(2)),
    });
    let mut u = vec![0.0; n];
    let mut w = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let scale: f64 = (0..m).map(|i| a[(k + 1 + i) * n + k].abs()).sum();
        if scale == 0.0 {
            e[k] = 0.0;
            if let Some(r) = refl.as_mut() {
                r.betas.push(0.0);
                r.vecs.extend(std::iter::repeat_n(0.0, m));
            }
            continue;
        }
        let inv_scale = 1.0 / scale;
        for i in 0..m {
            u[i] = a[(k + 1 + i) * n + k] * inv_scale;
        }
        let norm = u[..m].iter().map(|x| x * x).sum::<f64>().sqrt();
        let gamma = if u[0] >= 0.0 { -norm } else { norm };
        e[k] = scale * gamma;
        u[0] -= gamma;
        let unorm2: f64 = u[..m].iter().map(|x| x * x).sum();
        let beta = if unorm2 > 0.0 { 2.0 / unorm2 } else { 0.0 };

        // p = beta * B u over the trailing block B = a[k+1.., k+1..]
        for i in 0..m {
            let row = &a[(k + 1 + i) * n + (k + 1)..(k + 1 + i) * n + n];
            w[i] = beta * row.iter().zip(&u[..m]).map(|(x, y)| x * y).sum::<f64>();
        }
        let kappa = 0.5 * beta * u[..m].iter().zip(&w[..m]).map(|(x, y)| x * y).sum::<f64>();
        for i in 0..m {
            w[i] -= kappa * u[i];
        }
        // B <- B - u w^T - w u^T
        for i in 0..m {
            let ui = u[i];
            let wi = w[i];
            let row = &mut a[(k + 1 + i) * n + (k + 1)..(k + 1 + i) * n + n];
            for ((x, &uj), &wj) in row.iter_mut().zip(&u[..m]).zip(&w[..m]) {
                *x -= ui * wj + wi * uj;
            }
        }
        if let Some(r) = refl.as_mut() {
            r.betas.push(beta);
            r.vecs.extend_from_slice(&u[..m]);
        }
    }
    if n >= 2 {
        e[n - 2] = a[(n - 1) * n + (n - 2)];
    }
    let d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    (d, e, refl)
}

fn replay_real(z: &mut [f64], n: usize, refl: &Reflectors<f64>) {
    // offsets of u_k inside the packed buffer
    let mut offsets = Vec::with_capacity(refl.betas.len());
    let mut off = 0;
    for k in 0..refl.betas.len() {
        offsets.push(off);
        off += n - 1 - k;
    }
    for k in (0..refl.betas.len()).rev() {
        let beta = refl.betas[k];
        if beta == 0.0 {
            continue;
        }
        let m = n - 1 - k;
        let u = &refl.vecs[offsets[k]..offsets[k] + m];
        for col in 0..n {
            let x = &mut z[col * n + (k + 1)..col * n + n];
            let y: f64 = x.iter().zip(u).map(|(a, b)| a * b).sum();
            let by = beta * y;
            for (xi, &ui) in x.iter_mut().zip(u) {
                *xi -= by * ui;
            }
        }
    }
}

fn tridiagonalize_complex(
    a: &mut [Complex64],
    n: usize,
    keep_reflectors: bool,
) -> (
    Vec<f64>,
    Vec<f64>,
    Option<Reflectors<Complex64>>,
    Vec<Complex64>,
) {
    let mut e_c = vec![Complex64::ZERO; n.saturating_sub(1)];
    let mut refl = keep_reflectors.then(|| Reflectors {
        vecs: Vec::with_capacity(n * n / 2),
        betas: Vec::with_capacity(n.saturating_sub(2)),
    });
    let mut u = vec![Complex64::ZERO; n];
    let mut w = vec![Complex64::ZERO; n];

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let scale: f64 = (0..m)
            .map(|i| {
                let z = a[(k + 1 + i) * n + k];
                z.re.abs() + z.im.abs()
            })
            .sum();
        if scale == 0.0 {
            e_c[k] = Complex64::ZERO;
            if let Some(r) = refl.as_mut() {
                r.betas.push(0.0);
                r.vecs.extend(std::iter::repeat_n(Complex64::ZERO, m));
            }
            continue;
        }
        let inv_scale = 1.0 / scale;
        for i in 0..m {
            u[i] = a[(k + 1 + i) * n + k] * inv_scale;
        }
        let norm = u[..m].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let phase = if u[0] == Complex64::ZERO {
            Complex64::ONE
        } else {
            u[0] / u[0].norm()
        };
        let gamma = -phase * norm;
        e_c[k] = scale * gamma;
        u[0] -= gamma;
        let unorm2: f64 = u[..m].iter().map(|z| z.norm_sqr()).sum();
        let beta = if unorm2 > 0.0 { 2.0 / unorm2 } else { 0.0 };

        // p = beta * B u
        for i in 0..m {
            let row = &a[(k + 1 + i) * n + (k + 1)..(k + 1 + i) * n + n];
            let s: Complex64 = row.iter().zip(&u[..m]).map(|(x, y)| x * y).sum();
            w[i] = beta * s;
        }
        // u^* w is real because B is Hermitian
        let kappa = 0.5
            * beta
            * u[..m]
                .iter()
                .zip(&w[..m])
                .map(|(x, y)| (x.conj() * y).re)
                .sum::<f64>();
        for i in 0..m {
            w[i] -= kappa * u[i];
        }
        // B <- B - u w^* - w u^*
        for i in 0..m {
            let ui = u[i];
            let wi = w[i];
            let row = &mut a[(k + 1 + i) * n + (k + 1)..(k + 1 + i) * n + n];
            for ((x, &uj), &wj) in row.iter_mut().zip(&u[..m]).zip(&w[..m]) {
                *x -= ui * wj.conj() + wi * uj.conj();
            }
        }
        if let Some(r) = refl.as_mut() {
            r.betas.push(beta);
            r.vecs.extend_from_slice(&u[..m]);
        }
    }
    if n >= 2 {
        e_c[n - 2] = a[(n - 1) * n + (n - 2)];
    }

    // phase similarity making the off-diagonal real and non-negative
    let mut phases = vec![Complex64::ONE; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    for k in 0..n.saturating_sub(1) {
        let t = e_c[k].norm();
        e[k] = t;
        phases[k + 1] = if t > 0.0 {
            (e_c[k].conj() / t) * phases[k]
        } else {
            phases[k]
        };
    }
    let d: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    (d, e, refl, phases)
}

fn replay_complex(z: &mut [Complex64], n: usize, refl: &Reflectors<Complex64>) {
    let mut offsets = Vec::with_capacity(refl.betas.len());
    let mut off = 0;
    for k in 0..refl.betas.len() {
        offsets.push(off);
        off += n - 1 - k;
    }
    for k in (0..refl.betas.len()).rev() {
        let beta = refl.betas[k];
        if beta == 0.0 {
            continue;
        }
        let m = n - 1 - k;
        let u = &refl.vecs[offsets[k]..offsets[k] + m];
        for col in 0..n {
            let x = &mut z[col * n + (k + 1)..col * n + n];
            let y: Complex64 = x.iter().zip(u).map(|(a, b)| b.conj() * a).sum();
            let by = beta * y;
            for (xi, &ui) in x.iter_mut().zip(u) {
                *xi -= by * ui;
            }
        }
    }
}

/// Implicitly shifted QL on a symmetric tridiagonal `(d, e)`;
/// `e[i]` couples `d[i]` and `d[i+1]`. `rotate(i, c, s)` reports each
/// plane rotation applied to columns `i`, `i+1` of the eigenbasis.
fn ql_implicit(
    d: &mut [f64],
    e: &mut [f64],
    n: usize,
    mut rotate: impl FnMut(usize, f64, f64),
) -> Result<()> {
    if n <= 1 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let mut e = {
        // local copy padded so that e[n-1] = 0
        let mut v = e.to_vec();
        v.push(0.0);
        v
    };
    let mut f_acc = 0.0f64;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                if e[m].abs() <= eps * tst1 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITER {
                return Err(Error::NonConvergence {
                    dim: n,
                    residual: e[l].abs(),
                });
            }

            let g = d[l];
            let mut p = (d[l + 1] - g) / (2.0 * e[l]);
            let mut r = p.hypot(1.0);
            if p < 0.0 {
                r = -r;
            }
            d[l] = e[l] / (p + r);
            d[l + 1] = e[l] * (p + r);
            let dl1 = d[l + 1];
            let mut h = g - d[l];
            for item in d.iter_mut().take(n).skip(l + 2) {
                *item -= h;
            }
            f_acc += h;

            p = d[m];
            let mut c = 1.0;
            let mut c2 = c;
            let mut c3 = c;
            let el1 = e[l + 1];
            let mut s = 0.0;
            let mut s2 = 0.0;
            for i in (l..m).rev() {
                c3 = c2;
                c2 = c;
                s2 = s;
                let g = c * e[i];
                h = c * p;
                r = p.hypot(e[i]);
                e[i + 1] = s * r;
                s = e[i] / r;
                c = p / r;
                p = c * d[i] - s * g;
                d[i + 1] = h + s * (c * g + s * d[i]);
                rotate(i, c, s);
            }
            p = -s * s2 * c3 * el1 * e[l] / dl1;
            e[l] = s * p;
            d[l] = c * p;

            if e[l].abs() <= eps * tst1 {
                break;
            }
        }
        d[l] += f_acc;
        e[l] = 0.0;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn identity_eigenvalues() {
        let h = HermitianMatrix::scaled_identity(Field::Real, 2, 1.0);
        let s = eigh(&h, false).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 1.0]);
    }

    #[test]
    fn swap_matrix_eigenvalues() {
        let h = HermitianMatrix::from_rows_real(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let s = eigh(&h, true).unwrap();
        assert!((s.eigenvalues()[0] + 1.0).abs() < 1e-14);
        assert!((s.eigenvalues()[1] - 1.0).abs() < 1e-14);
        assert!(s.reconstruction_residual(&h) < 1e-14);
    }

    #[test]
    fn real_reconstruction_residual() {
        for n in [1, 2, 3, 5, 8, 17, 33] {
            let h = random_sym(n, 42 + n as u64);
            let s = eigh(&h, true).unwrap();
            let rel = s.reconstruction_residual(&h) / h.frobenius_norm().max(1.0);
            assert!(rel < 1e-12, "n={n} rel={rel:e}");
        }
    }

    #[test]
    fn complex_reconstruction_residual() {
        for n in [1, 2, 3, 5, 8, 17, 33] {
            let h = random_herm(n, 1000 + n as u64);
            let s = eigh(&h, true).unwrap();
            let rel = s.reconstruction_residual(&h) / h.frobenius_norm().max(1.0);
            assert!(rel < 1e-12, "n={n} rel={rel:e}");
        }
    }

    #[test]
    fn trace_matches_eigenvalue_sum() {
        for (n, seed) in [(6, 5u64), (12, 6), (24, 7)] {
            let h = random_sym(n, seed);
            let s = eigh(&h, false).unwrap();
            let sum: f64 = s.eigenvalues().iter().sum();
            assert!((sum - h.trace()).abs() <= 1e-10 * h.frobenius_norm().max(1.0));

            let h = random_herm(n, seed);
            let s = eigh(&h, false).unwrap();
            let sum: f64 = s.eigenvalues().iter().sum();
            assert!((sum - h.trace()).abs() <= 1e-10 * h.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn values_match_with_and_without_vectors() {
        let h = random_herm(16, 9);
        let a = eigh(&h, false).unwrap();
        let b = eigh(&h, true).unwrap();
        for (x, y) in a.eigenvalues().iter().zip(b.eigenvalues()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn eigenvalues_ascending() {
        let h = random_sym(20, 11);
        let s = eigh(&h, false).unwrap();
        assert!(s.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn eigenvectors_orthonormal_complex() {
        let h = random_herm(10, 33);
        let s = eigh(&h, true).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let d = s.eigenvector(i).dot(&s.eigenvector(j));
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((d - expect).norm() < 1e-12, "({i},{j}) {d}");
            }
        }
    }

    #[test]
    fn diagonal_with_zero_columns() {
        // exercises the scale == 0 path of the tridiagonalization
        let h = HermitianMatrix::diagonal(&[3.0, -1.0, 2.0, 0.5]);
        let s = eigh(&h, true).unwrap();
        assert_eq!(s.eigenvalues(), &[-1.0, 0.5, 2.0, 3.0]);
        assert!(s.reconstruction_residual(&h) < 1e-14);
    }
}
