//! Samplers for the GOE, GUE, and Bernoulli-Wigner ensembles, the
//! deterministic base matrices they deform, and uniform sphere vectors.
//!
//! Matrices are sampled entrywise from the marginal variances implied by
//! the ensemble density `exp(-beta N / 4 tr V^2)`: GOE diagonal
//! `N(0, 2/N)` and off-diagonal `N(0, 1/N)`; GUE diagonal `N(0, 1/N)`
//! and off-diagonal real/imaginary parts `N(0, 1/(2N))` each. Entries
//! are drawn in row-major upper-triangle order (diagonal first in each
//! row), so a draw is a pure function of the stream.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::matrix::{Field, HermitianMatrix, Vector};
use crate::rng::RngStream;
use crate::{Error, Result};

/// Which random ensemble to draw the perturbation from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleKind {
    Goe,
    Gue,
    WignerBernoulli,
}

impl EnsembleKind {
    pub fn field(self) -> Field {
        match self {
            EnsembleKind::Goe | EnsembleKind::WignerBernoulli => Field::Real,
            EnsembleKind::Gue => Field::Complex,
        }
    }
}

/// Declarative description of the random perturbation `lambda V`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
    /// Disorder strength; defaults to 1.
    #[serde(default = "default_lambda")]
    pub lambda: f64,
}

fn default_lambda() -> f64 {
    1.0
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, n: usize) -> Self {
        EnsembleSpec {
            kind,
            n,
            lambda: 1.0,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidInput("ensemble dimension must be >= 1".into()));
        }
        if !self.lambda.is_finite() || self.lambda < 0.0 {
            return Err(Error::InvalidInput(format!(
                "lambda must be finite and >= 0, got {}",
                self.lambda
            )));
        }
        Ok(())
    }
}

/// Declarative description of the deterministic base matrix `A`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum BaseMatrixSpec {
    /// `A = 0`.
    Zero,
    /// `A = energy * I`.
    ScalarIdentity { energy: f64 },
    /// `A = N^{1/2 + epsilon} * P_{e_1}^perp`, i.e.
    /// `diag(0, N^{1/2+eps}, ..., N^{1/2+eps})`.
    ProjComplement { epsilon: f64 },
    /// `A = diag(1, M, ..., M) / sqrt(N)`.
    CounterexampleDiag { m: f64 },
    /// Load from a file in the `hmat` text format.
    FromFile { path: PathBuf },
}

/// Materialize a [`BaseMatrixSpec`] at dimension `n`.
pub fn build_base(spec: &BaseMatrixSpec, n: usize) -> Result<HermitianMatrix> {
    if n == 0 {
        return Err(Error::InvalidInput("base dimension must be >= 1".into()));
    }
    match spec {
        BaseMatrixSpec::Zero => Ok(HermitianMatrix::zero(Field::Real, n)),
        BaseMatrixSpec::ScalarIdentity { energy } => {
            Ok(HermitianMatrix::scaled_identity(Field::Real, n, *energy))
        }
        BaseMatrixSpec::ProjComplement { epsilon } => {
            if *epsilon < 0.0 {
                return Err(Error::InvalidInput("epsilon must be >= 0".into()));
            }
            let level = (n as f64).powf(0.5 + epsilon);
            let mut d = vec![level; n];
            d[0] = 0.0;
            Ok(HermitianMatrix::diagonal(&d))
        }
        BaseMatrixSpec::CounterexampleDiag { m } => {
            let root_n = (n as f64).sqrt();
            let mut d = vec![m / root_n; n];
            d[0] = 1.0 / root_n;
            Ok(HermitianMatrix::diagonal(&d))
        }
        BaseMatrixSpec::FromFile { path } => {
            let h = HermitianMatrix::load(path)?;
            if h.dim() != n {
                return Err(Error::InvalidInput(format!(
                    "matrix file {} has dimension {}, expected {n}",
                    path.display(),
                    h.dim()
                )));
            }
            Ok(h)
        }
    }
}

/// One GOE draw: exactly symmetric, diagonal `N(0, 2/n)`, off-diagonal
/// `N(0, 1/n)`.
pub fn sample_goe(n: usize, rng: &mut RngStream) -> HermitianMatrix {
    assert!(n >= 1);
    let diag_sd = (2.0 / n as f64).sqrt();
    let off_sd = (1.0 / n as f64).sqrt();
    let mut data = vec![0.0f64; n * n];
    for i in 0..n {
        data[i * n + i] = diag_sd * rng.normal();
        for j in (i + 1)..n {
            let x = off_sd * rng.normal();
            data[i * n + j] = x;
            data[j * n + i] = x;
        }
    }
    HermitianMatrix::from_rows_real(n, data).expect("finite by construction")
}

/// One GUE draw: exactly Hermitian, real diagonal `N(0, 1/n)`,
/// off-diagonal with independent `N(0, 1/(2n))` real and imaginary parts.
pub fn sample_gue(n: usize, rng: &mut RngStream) -> HermitianMatrix {
    assert!(n >= 1);
    let diag_sd = (1.0 / n as f64).sqrt();
    let off_sd = (0.5 / n as f64).sqrt();
    let mut data = vec![Complex64::ZERO; n * n];
    for i in 0..n {
        data[i * n + i] = Complex64::new(diag_sd * rng.normal(), 0.0);
        for j in (i + 1)..n {
            let z = Complex64::new(off_sd * rng.normal(), off_sd * rng.normal());
            data[i * n + j] = z;
            data[j * n + i] = z.conj();
        }
    }
    HermitianMatrix::from_rows_complex(n, data).expect("finite by construction")
}

/// One Bernoulli-Wigner draw: every entry uniform on
/// `{-1/sqrt(n), +1/sqrt(n)}`, symmetric.
pub fn sample_wigner_bernoulli(n: usize, rng: &mut RngStream) -> HermitianMatrix {
    assert!(n >= 1);
    let unit = 1.0 / (n as f64).sqrt();
    let mut data = vec![0.0f64; n * n];
    for i in 0..n {
        data[i * n + i] = if rng.coin() { unit } else { -unit };
        for j in (i + 1)..n {
            let x = if rng.coin() { unit } else { -unit };
            data[i * n + j] = x;
            data[j * n + i] = x;
        }
    }
    HermitianMatrix::from_rows_real(n, data).expect("finite by construction")
}

/// One draw of the bare perturbation `V` for the given ensemble.
pub fn sample_ensemble(kind: EnsembleKind, n: usize, rng: &mut RngStream) -> HermitianMatrix {
    match kind {
        EnsembleKind::Goe => sample_goe(n, rng),
        EnsembleKind::Gue => sample_gue(n, rng),
        EnsembleKind::WignerBernoulli => sample_wigner_bernoulli(n, rng),
    }
}

/// One deformed draw `H = base + lambda V`. A real base combines with a
/// GUE perturbation by promotion to the complex field; a complex base
/// with a real ensemble is rejected.
pub fn sample_deformed(
    base: &HermitianMatrix,
    spec: &EnsembleSpec,
    rng: &mut RngStream,
) -> Result<HermitianMatrix> {
    spec.validate()?;
    if base.dim() != spec.n {
        return Err(Error::InvalidInput(format!(
            "base dimension {} vs ensemble dimension {}",
            base.dim(),
            spec.n
        )));
    }
    if base.field() == Field::Complex && spec.kind.field() == Field::Real {
        return Err(Error::InvalidInput(
            "complex base with a real ensemble; use GUE for Hermitian bases".into(),
        ));
    }
    let v = sample_ensemble(spec.kind, spec.n, rng);
    base.add_scaled(&v, spec.lambda)
}

/// A vector uniformly distributed on the unit sphere of the field,
/// generated as `g / ||g||` with `g` standard Gaussian.
pub fn uniform_sphere(n: usize, field: Field, rng: &mut RngStream) -> Vector {
    assert!(n >= 1);
    loop {
        let v = match field {
            Field::Real => {
                Vector::real((0..n).map(|_| rng.normal()).collect()).expect("finite")
            }
            Field::Complex => {
                let sd = 0.5f64.sqrt();
                Vector::complex(
                    (0..n)
                        .map(|_| Complex64::new(sd * rng.normal(), sd * rng.normal()))
                        .collect(),
                )
                .expect("finite")
            }
        };
        let norm = v.norm();
        if norm > 0.0 {
            // true division keeps the n = 1 case exactly on {-1, +1}
            return v.div_norm(norm);
        }
    }
}

/// Diagonal matrix with iid uniform `[0, 1)` entries; the "fixed random
/// diagonal" base used by the weak-disorder and acceptance runs.
pub fn uniform_diag(n: usize, rng: &mut RngStream) -> HermitianMatrix {
    assert!(n >= 1);
    let d: Vec<f64> = (0..n).map(|_| rng.uniform()).collect();
    HermitianMatrix::diagonal(&d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_variance(xs: &[f64]) -> f64 {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n
    }

    #[test]
    fn goe_is_exactly_symmetric() {
        let mut rng = RngStream::new(3, 0);
        let v = sample_goe(6, &mut rng);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(v.entry(i, j), v.entry(j, i));
            }
        }
    }

    #[test]
    fn goe_scalar_variance() {
        // n = 1: the single entry is N(0, 2)
        let draws = 100_000;
        let mut xs = Vec::with_capacity(draws);
        for i in 0..draws {
            let mut rng = RngStream::new(11, i as u64);
            xs.push(sample_goe(1, &mut rng).entry(0, 0).re);
        }
        let var = sample_variance(&xs);
        let target = 2.0;
        let tol = 3.0 * 2.0f64.sqrt() * target / (draws as f64).sqrt();
        assert!((var - target).abs() < tol, "var {var} target {target}");
    }

    #[test]
    fn goe_offdiag_variance() {
        let n = 4;
        let draws = 100_000;
        let mut xs = Vec::with_capacity(draws);
        for i in 0..draws {
            let mut rng = RngStream::new(12, i as u64);
            xs.push(sample_goe(n, &mut rng).entry(0, 1).re);
        }
        let var = sample_variance(&xs);
        let target = 1.0 / n as f64;
        let tol = 3.0 * 2.0f64.sqrt() * target / (draws as f64).sqrt();
        assert!((var - target).abs() < tol, "var {var} target {target}");
    }

    #[test]
    fn gue_moments() {
        let n = 4;
        let draws = 100_000;
        let mut diag = Vec::with_capacity(draws);
        let mut off_sq = Vec::with_capacity(draws);
        for i in 0..draws {
            let mut rng = RngStream::new(13, i as u64);
            let v = sample_gue(n, &mut rng);
            assert_eq!(v.entry(0, 0).im, 0.0);
            diag.push(v.entry(0, 0).re);
            off_sq.push(v.entry(0, 1).norm_sqr());
        }
        let target = 1.0 / n as f64;
        let var = sample_variance(&diag);
        let tol = 3.0 * 2.0f64.sqrt() * target / (draws as f64).sqrt();
        assert!((var - target).abs() < tol, "diag var {var}");
        // E |V_01|^2 = 1/n; |V_01|^2 / (1/(2n)) ~ chi^2_2 so sd = 1/n
        let mean_sq = off_sq.iter().sum::<f64>() / draws as f64;
        let tol = 3.0 * target / (draws as f64).sqrt();
        assert!((mean_sq - target).abs() < tol, "E|V01|^2 {mean_sq}");
    }

    #[test]
    fn gue_is_exactly_hermitian() {
        let mut rng = RngStream::new(14, 0);
        let v = sample_gue(5, &mut rng);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(v.entry(i, j), v.entry(j, i).conj());
            }
        }
    }

    #[test]
    fn bernoulli_support_and_mean() {
        let n = 4;
        let unit = 0.5;
        let draws = 100_000;
        let mut sum = 0.0;
        for i in 0..draws {
            let mut rng = RngStream::new(15, i as u64);
            let v = sample_wigner_bernoulli(n, &mut rng);
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(v.entry(a, b).re.abs(), unit);
                    assert_eq!(v.entry(a, b), v.entry(b, a));
                }
            }
            sum += v.entry(0, 1).re;
        }
        let mean = sum / draws as f64;
        let tol = 3.0 * unit / (draws as f64).sqrt();
        assert!(mean.abs() < tol, "mean {mean}");
    }

    #[test]
    fn base_constructions() {
        let z = build_base(&BaseMatrixSpec::Zero, 5).unwrap();
        assert_eq!(z.frobenius_norm(), 0.0);

        let s = build_base(&BaseMatrixSpec::ScalarIdentity { energy: 0.5 }, 3).unwrap();
        assert_eq!(s.entry(0, 0).re, 0.5);
        assert_eq!(s.entry(0, 1).re, 0.0);

        let p = build_base(&BaseMatrixSpec::ProjComplement { epsilon: 0.1 }, 100).unwrap();
        assert_eq!(p.entry(0, 0).re, 0.0);
        let level = 100.0f64.powf(0.6);
        for i in 1..100 {
            assert_eq!(p.entry(i, i).re, level);
        }

        let c = build_base(&BaseMatrixSpec::CounterexampleDiag { m: 1e3 }, 4).unwrap();
        assert_eq!(c.entry(0, 0).re, 0.5);
        for i in 1..4 {
            assert_eq!(c.entry(i, i).re, 500.0);
        }
    }

    #[test]
    fn base_from_file_roundtrip() {
        let dir = std::env::temp_dir().join("rmt_lab_base_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("base.hmat");
        let m = HermitianMatrix::diagonal(&[0.25, 0.5, 0.75]);
        m.store(&path).unwrap();
        let spec = BaseMatrixSpec::FromFile { path: path.clone() };
        let back = build_base(&spec, 3).unwrap();
        assert_eq!(back, m);
        assert!(build_base(&spec, 4).is_err());
    }

    #[test]
    fn deformed_lambda_zero_is_base() {
        let base = HermitianMatrix::diagonal(&[1.0, 2.0, 3.0]);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 3).with_lambda(0.0);
        let mut rng = RngStream::new(8, 0);
        let h = sample_deformed(&base, &spec, &mut rng).unwrap();
        assert_eq!(h, base);
    }

    #[test]
    fn deformed_scales_linearly_in_lambda() {
        let base = HermitianMatrix::zero(Field::Real, 4);
        let one = {
            let mut rng = RngStream::new(9, 5);
            sample_deformed(&base, &EnsembleSpec::new(EnsembleKind::Goe, 4), &mut rng).unwrap()
        };
        let two = {
            let mut rng = RngStream::new(9, 5);
            sample_deformed(
                &base,
                &EnsembleSpec::new(EnsembleKind::Goe, 4).with_lambda(2.0),
                &mut rng,
            )
            .unwrap()
        };
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(two.entry(i, j).re, 2.0 * one.entry(i, j).re);
            }
        }
    }

    #[test]
    fn deformed_field_promotion() {
        let base = HermitianMatrix::diagonal(&[1.0, -1.0]);
        let spec = EnsembleSpec::new(EnsembleKind::Gue, 2);
        let mut rng = RngStream::new(10, 0);
        let h = sample_deformed(&base, &spec, &mut rng).unwrap();
        assert_eq!(h.field(), Field::Complex);

        let cbase = base.to_complex();
        let real_spec = EnsembleSpec::new(EnsembleKind::Goe, 2);
        let mut rng = RngStream::new(10, 0);
        assert!(sample_deformed(&cbase, &real_spec, &mut rng).is_err());
    }

    #[test]
    fn deformed_dimension_mismatch() {
        let base = HermitianMatrix::diagonal(&[1.0, 2.0]);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 3);
        let mut rng = RngStream::new(1, 0);
        assert!(matches!(
            sample_deformed(&base, &spec, &mut rng),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_gue(8, &mut RngStream::new(77, 123));
        let b = sample_gue(8, &mut RngStream::new(77, 123));
        assert_eq!(a, b);
    }

    #[test]
    fn sphere_normalization_and_marginal() {
        let n = 8;
        let draws = 100_000;
        let mut sum_sq = 0.0;
        for i in 0..draws {
            let mut rng = RngStream::new(20, i as u64);
            let phi = uniform_sphere(n, Field::Complex, &mut rng);
            assert!((phi.norm() - 1.0).abs() < 1e-14);
            sum_sq += phi.entry(0).norm_sqr();
        }
        let mean = sum_sq / draws as f64;
        let target = 1.0 / n as f64;
        // |phi_1|^2 has variance below target^2 on the complex sphere
        let tol = 3.0 * target / (draws as f64).sqrt();
        assert!((mean - target).abs() < tol, "mean {mean} target {target}");
    }

    #[test]
    fn sphere_one_dimensional_real() {
        for i in 0..32 {
            let mut rng = RngStream::new(21, i);
            let phi = uniform_sphere(1, Field::Real, &mut rng);
            assert_eq!(phi.entry(0).re.abs(), 1.0);
        }
    }

    #[test]
    fn trace_scale_check() {
        // E[tr V^2] / n = 1 + 1/n for GOE, 1 for GUE; 3 sigma at n = 64
        let n = 64;
        let draws = 2_000;
        for (kind, expect) in [
            (EnsembleKind::Goe, 1.0 + 1.0 / n as f64),
            (EnsembleKind::Gue, 1.0),
        ] {
            let mut sum = 0.0;
            for i in 0..draws {
                let mut rng = RngStream::new(31, i as u64);
                let v = sample_ensemble(kind, n, &mut rng);
                let f = v.frobenius_norm();
                sum += f * f / n as f64;
            }
            let mean = sum / draws as f64;
            // sd of tr V^2 is about 2 for either ensemble at this size
            let tol = 3.0 * 2.0 / n as f64 / (draws as f64).sqrt();
            assert!((mean - expect).abs() < tol, "{kind:?}: {mean} vs {expect}");
        }
    }
}
