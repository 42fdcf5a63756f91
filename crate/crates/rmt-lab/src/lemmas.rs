//! Executable forms of the structural ingredients behind the regularity
//! bounds: the Schur column-inversion identity, the conditional tail
//! with a frozen minor, the sphere small-ball bound, rank-one and
//! general ratio-of-quadratic-forms tails, the eigenvalue reordering
//! with its `(r, nu, delta)` selection, the analytic characteristic
//! function of the associated Gaussian quadratic forms, and Cauchy
//! interlacing.

use num_complex::Complex64;
use serde::Serialize;

use crate::eigen::eigh;
use crate::ensembles::{sample_ensemble, EnsembleKind, EnsembleSpec};
use crate::estimators::{run_chunked, validate_t_grid, MonteCarloConfig, TailCurve};
use crate::linalg::{apply_inverse, restrict_orthogonal, SINGULAR_REL_TOL};
use crate::matrix::{Field, HermitianMatrix, MatrixData, Vector};
use crate::rng::RngStream;
use crate::{Error, Result};

/// Threshold factor in the eigenvalue reordering rule for `r`.
pub const REORDER_THRESHOLD: f64 = 0.1;

/// Absolute slack for interlacing inequalities.
pub const INTERLACING_TOL: f64 = 1e-10;

/// `||H^{-1} e_1||` through the block inversion of the first column:
/// with `sqrt(N) H = [[h11, w^*], [w, B]]` and `Q = B^{-1}`,
/// the value is `sqrt(N) sqrt(1 + ||Q w||^2) / |h11 - w^* Q w|`.
pub fn schur_inverse_column(h: &HermitianMatrix) -> Result<f64> {
    let n = h.dim();
    if n < 2 {
        return Err(Error::InvalidInput(
            "schur_inverse_column needs dimension >= 2".into(),
        ));
    }
    let root_n = (n as f64).sqrt();
    let scaled = h.scale(root_n);
    let h11 = scaled.entry(0, 0).re;

    let (b, w) = split_first(&scaled);
    let spec_b = eigh(&b, true)?;
    let qw = match apply_inverse(&spec_b, &w) {
        Ok(v) => v,
        Err(Error::NearSingular {
            min_abs_eigenvalue,
        }) => {
            return Err(Error::BlockSingular {
                min_abs_eigenvalue,
            })
        }
        Err(e) => return Err(e),
    };
    let quad = w.dot(&qw).re;
    let denom = h11 - quad;
    let denom_scale = h11.abs().max(w.norm() * qw.norm()).max(1.0);
    if denom.abs() <= SINGULAR_REL_TOL * denom_scale {
        return Err(Error::NearSingular {
            min_abs_eigenvalue: denom.abs(),
        });
    }
    let numer = (1.0 + qw.norm().powi(2)).sqrt();
    Ok(root_n * numer / denom.abs())
}

/// Split a matrix into its trailing principal block and first column tail.
fn split_first(m: &HermitianMatrix) -> (HermitianMatrix, Vector) {
    let n = m.dim();
    let k = n - 1;
    match &m.data {
        MatrixData::Real(d) => {
            let mut block = vec![0.0; k * k];
            let mut w = vec![0.0; k];
            for i in 0..k {
                w[i] = d[(i + 1) * n];
                for j in 0..k {
                    block[i * k + j] = d[(i + 1) * n + (j + 1)];
                }
            }
            (
                HermitianMatrix::from_rows_real(k, block).expect("finite"),
                Vector::real(w).expect("finite"),
            )
        }
        MatrixData::Complex(d) => {
            let mut block = vec![Complex64::ZERO; k * k];
            let mut w = vec![Complex64::ZERO; k];
            for i in 0..k {
                w[i] = d[(i + 1) * n];
                for j in 0..k {
                    block[i * k + j] = d[(i + 1) * n + (j + 1)];
                }
            }
            (
                HermitianMatrix::from_rows_complex(k, block).expect("finite"),
                Vector::complex(w).expect("finite"),
            )
        }
    }
}

/// Tail of `||H^{-1} e_1||` conditional on the minor: the trailing
/// `(N-1) x (N-1)` block of `V` is drawn once from a reserved stream and
/// frozen; each sample redraws only the first row and column. Evaluated
/// through the Schur column formula against the frozen block.
pub fn mc_conditional_tail(
    spec: &EnsembleSpec,
    base: &HermitianMatrix,
    t_grid: &[f64],
    cfg: &MonteCarloConfig,
) -> Result<TailCurve> {
    spec.validate()?;
    cfg.validate()?;
    validate_t_grid(t_grid)?;
    if base.dim() != spec.n {
        return Err(Error::InvalidInput(format!(
            "base dimension {} vs ensemble dimension {}",
            base.dim(),
            spec.n
        )));
    }
    if spec.n < 2 {
        return Err(Error::InvalidInput("conditional tail needs N >= 2".into()));
    }
    if spec.kind == EnsembleKind::WignerBernoulli {
        return Err(Error::InvalidInput(
            "conditional tail is defined for the Gaussian ensembles".into(),
        ));
    }
    if base.field() == Field::Complex && spec.kind.field() == Field::Real {
        return Err(Error::InvalidInput(
            "complex base with a real ensemble; use GUE for Hermitian bases".into(),
        ));
    }
    let n = spec.n;
    let root_n = (n as f64).sqrt();

    // frozen minor from the reserved stream
    let v_fixed = sample_ensemble(spec.kind, n, &mut RngStream::new(cfg.seed, u64::MAX));
    let h_fixed = base.add_scaled(&v_fixed, spec.lambda)?;
    let scaled = h_fixed.scale(root_n);
    let (block, _) = split_first(&scaled);
    let spec_b = eigh(&block, true)?;
    if let Err(Error::NearSingular {
        min_abs_eigenvalue,
    }) = crate::linalg::check_invertible(&spec_b)
    {
        return Err(Error::BlockSingular {
            min_abs_eigenvalue,
        });
    }

    // deterministic first row/column of sqrt(N) * base
    let a11 = root_n * base.entry(0, 0).re;
    let b_off: Vec<Complex64> = (1..n).map(|i| root_n * base.entry(i, 0)).collect();
    let complex_path = spec.kind.field() == Field::Complex;
    let lambda = spec.lambda;

    let chunks = run_chunked(
        cfg,
        || TailAccumLocal::new(t_grid.len()),
        |acc, idx| {
            let mut rng = RngStream::new(cfg.seed, idx);
            // diagonal entry of sqrt(N) V: sqrt(2) g0 for GOE, g0 for GUE
            let g0 = rng.normal() * if complex_path { 1.0 } else { 2.0f64.sqrt() };
            let m11 = a11 + lambda * g0;
            let w = if complex_path {
                let sd = 0.5f64.sqrt();
                Vector::complex(
                    b_off
                        .iter()
                        .map(|b| {
                            b + lambda * Complex64::new(sd * rng.normal(), sd * rng.normal())
                        })
                        .collect(),
                )
                .expect("finite")
            } else {
                Vector::real(
                    b_off
                        .iter()
                        .map(|b| b.re + lambda * rng.normal())
                        .collect(),
                )
                .expect("finite")
            };
            match apply_inverse(&spec_b, &w) {
                Ok(qw) => {
                    let denom = m11 - w.dot(&qw).re;
                    let ratio = (1.0 + qw.norm().powi(2)).sqrt() / denom.abs();
                    if denom == 0.0 {
                        acc.near_singular += 1;
                        acc.tally_all();
                    } else {
                        acc.tally(t_grid, ratio);
                    }
                }
                Err(Error::NearSingular { .. }) => {
                    acc.near_singular += 1;
                    acc.tally_all();
                }
                Err(e) => return Err(e),
            }
            Ok(())
        },
    )?;
    let total = chunks
        .into_iter()
        .fold(TailAccumLocal::new(t_grid.len()), TailAccumLocal::merge);
    Ok(TailCurve::from_counts(
        t_grid.to_vec(),
        &total.counts,
        cfg.n_samples,
        cfg.ci_level,
        total.near_singular,
    ))
}

#[derive(Clone)]
struct TailAccumLocal {
    counts: Vec<u64>,
    near_singular: u64,
}

impl TailAccumLocal {
    fn new(len: usize) -> Self {
        TailAccumLocal {
            counts: vec![0; len],
            near_singular: 0,
        }
    }

    fn tally(&mut self, grid: &[f64], value: f64) {
        for (slot, t) in self.counts.iter_mut().zip(grid) {
            if value >= *t {
                *slot += 1;
            }
        }
    }

    fn tally_all(&mut self) {
        for slot in self.counts.iter_mut() {
            *slot += 1;
        }
    }

    fn merge(mut self, other: TailAccumLocal) -> TailAccumLocal {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.near_singular += other.near_singular;
        self
    }
}

/// Small-ball probability `P{ ||Q phi|| <= eps ||Q||_F / sqrt(N) }` for
/// `phi` uniform on the unit sphere of `field`. The returned curve is
/// indexed by `eps` and is non-decreasing in it.
pub fn mc_small_ball(
    q: &HermitianMatrix,
    eps_grid: &[f64],
    field: Field,
    cfg: &MonteCarloConfig,
) -> Result<TailCurve> {
    cfg.validate()?;
    if eps_grid.is_empty()
        || !eps_grid.iter().all(|e| e.is_finite() && *e > 0.0)
        || !eps_grid.windows(2).all(|w| w[0] < w[1])
    {
        return Err(Error::InvalidInput(
            "eps grid must be strictly ascending and positive".into(),
        ));
    }
    let frob = q.frobenius_norm();
    if frob == 0.0 {
        return Err(Error::InvalidInput("Q must be nonzero".into()));
    }
    if q.field() == Field::Complex && field == Field::Real {
        return Err(Error::InvalidInput(
            "complex Q needs the complex sphere".into(),
        ));
    }
    let q = if field == Field::Complex {
        q.to_complex()
    } else {
        q.clone()
    };
    let n = q.dim();
    let scale = frob / (n as f64).sqrt();

    let chunks = run_chunked(
        cfg,
        || vec![0u64; eps_grid.len()],
        |counts, idx| {
            let mut rng = RngStream::new(cfg.seed, idx);
            let phi = crate::ensembles::uniform_sphere(n, field, &mut rng);
            let val = q.mul_vec(&phi)?.norm();
            for (slot, eps) in counts.iter_mut().zip(eps_grid) {
                if val <= eps * scale {
                    *slot += 1;
                }
            }
            Ok(())
        },
    )?;
    let counts = chunks.into_iter().fold(vec![0u64; eps_grid.len()], |mut a, b| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    });
    Ok(TailCurve::from_counts(
        eps_grid.to_vec(),
        &counts,
        cfg.n_samples,
        cfg.ci_level,
        0,
    ))
}

/// Per-sample value of the rank-one ratio `|h + b| / |(h + b)^2 - a|`.
fn rank_one_value(rng: &mut RngStream, a: f64, b: f64) -> f64 {
    let s = rng.normal() + b;
    s.abs() / (s * s - a).abs()
}

/// Tail of the rank-one ratio `|h + b| / |(h + b)^2 - a|` for a standard
/// Gaussian `h`; bounded by `sqrt(8/pi) / t`.
pub fn mc_rank_one_ratio(
    a: f64,
    b: f64,
    t_grid: &[f64],
    cfg: &MonteCarloConfig,
) -> Result<TailCurve> {
    cfg.validate()?;
    validate_t_grid(t_grid)?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput("a and b must be finite".into()));
    }
    let chunks = run_chunked(
        cfg,
        || vec![0u64; t_grid.len()],
        |counts, idx| {
            let mut rng = RngStream::new(cfg.seed, idx);
            let val = rank_one_value(&mut rng, a, b);
            for (slot, t) in counts.iter_mut().zip(t_grid) {
                if val >= *t {
                    *slot += 1;
                }
            }
            Ok(())
        },
    )?;
    let counts = chunks.into_iter().fold(vec![0u64; t_grid.len()], |mut x, y| {
        for (p, q) in x.iter_mut().zip(y) {
            *p += q;
        }
        x
    });
    Ok(TailCurve::from_counts(
        t_grid.to_vec(),
        &counts,
        cfg.n_samples,
        cfg.ci_level,
        0,
    ))
}

/// Raw per-sample values of the rank-one ratio, in sample order.
pub(crate) fn rank_one_samples(a: f64, b: f64, cfg: &MonteCarloConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let chunks = run_chunked(
        cfg,
        Vec::new,
        |vals: &mut Vec<f64>, idx| {
            let mut rng = RngStream::new(cfg.seed, idx);
            vals.push(rank_one_value(&mut rng, a, b));
            Ok(())
        },
    )?;
    Ok(chunks.into_iter().flatten().collect())
}

/// The diagonal-form data of the ratio-of-quadratic-forms tail:
/// eigenvalues of `Q`, Gaussian offsets, and the scalar shift.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioProblem {
    /// Eigenvalues of the symmetric matrix (the diagonal reduction).
    pub eigenvalues: Vec<f64>,
    /// Per-coordinate offsets `b_j`.
    pub offsets: Vec<f64>,
    /// Scalar shift `a` in the denominator.
    pub shift: f64,
}

impl RatioProblem {
    pub fn new(eigenvalues: Vec<f64>, offsets: Vec<f64>, shift: f64) -> Result<Self> {
        let p = RatioProblem {
            eigenvalues,
            offsets,
            shift,
        };
        p.validate()?;
        Ok(p)
    }

    /// Diagonalize a symmetric/Hermitian `Q` into problem form;
    /// offsets were given in the same basis as `Q` and are rotated along.
    pub fn from_matrix(q: &HermitianMatrix, offsets: &Vector, shift: f64) -> Result<Self> {
        if offsets.dim() != q.dim() {
            return Err(Error::InvalidInput(format!(
                "matrix dim {} vs offsets dim {}",
                q.dim(),
                offsets.dim()
            )));
        }
        if q.field() == Field::Complex {
            return Err(Error::InvalidInput(
                "ratio problem is defined for real symmetric matrices".into(),
            ));
        }
        let s = eigh(q, true)?;
        let rotated: Vec<f64> = (0..q.dim())
            .map(|k| s.eigenvector(k).dot(offsets).re)
            .collect();
        RatioProblem::new(s.eigenvalues().to_vec(), rotated, shift)
    }

    pub fn validate(&self) -> Result<()> {
        if self.eigenvalues.is_empty() || self.eigenvalues.len() != self.offsets.len() {
            return Err(Error::InvalidInput(
                "eigenvalues and offsets must be nonempty and of equal length".into(),
            ));
        }
        if !self
            .eigenvalues
            .iter()
            .chain(&self.offsets)
            .chain(std::iter::once(&self.shift))
            .all(|x| x.is_finite())
        {
            return Err(Error::InvalidInput("ratio problem data must be finite".into()));
        }
        if self.eigenvalues.iter().all(|e| *e == 0.0) {
            return Err(Error::InvalidInput(
                "at least one eigenvalue must be nonzero".into(),
            ));
        }
        Ok(())
    }

    /// One draw of `||Q(g+b)|| / |(g+b)^T Q (g+b) - a|`.
    fn sample_value(&self, rng: &mut RngStream) -> f64 {
        let mut num_sq = 0.0;
        let mut quad = 0.0;
        for (e, b) in self.eigenvalues.iter().zip(&self.offsets) {
            let s = rng.normal() + b;
            let s2 = s * s;
            num_sq += e * e * s2;
            quad += e * s2;
        }
        num_sq.sqrt() / (quad - self.shift).abs()
    }
}

/// Tail of the ratio of quadratic forms
/// `||Q(g+b)|| / |(g+b)^T Q (g+b) - a|` over a standard Gaussian vector.
pub fn mc_ratio_quadratic(
    problem: &RatioProblem,
    t_grid: &[f64],
    cfg: &MonteCarloConfig,
) -> Result<TailCurve> {
    problem.validate()?;
    cfg.validate()?;
    validate_t_grid(t_grid)?;
    let chunks = run_chunked(
        cfg,
        || vec![0u64; t_grid.len()],
        |counts, idx| {
            let mut rng = RngStream::new(cfg.seed, idx);
            let val = problem.sample_value(&mut rng);
            for (slot, t) in counts.iter_mut().zip(t_grid) {
                if val >= *t {
                    *slot += 1;
                }
            }
            Ok(())
        },
    )?;
    let counts = chunks.into_iter().fold(vec![0u64; t_grid.len()], |mut x, y| {
        for (p, q) in x.iter_mut().zip(y) {
            *p += q;
        }
        x
    });
    Ok(TailCurve::from_counts(
        t_grid.to_vec(),
        &counts,
        cfg.n_samples,
        cfg.ci_level,
        0,
    ))
}

/// Raw per-sample ratio values, in sample order.
pub(crate) fn ratio_samples(problem: &RatioProblem, cfg: &MonteCarloConfig) -> Result<Vec<f64>> {
    problem.validate()?;
    cfg.validate()?;
    let chunks = run_chunked(
        cfg,
        Vec::new,
        |vals: &mut Vec<f64>, idx| {
            let mut rng = RngStream::new(cfg.seed, idx);
            vals.push(problem.sample_value(&mut rng));
            Ok(())
        },
    )?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Reordered ratio-problem data with the tail split index `r`, the
/// residual scale `nu^2`, and the contour shift `delta`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharFnParams {
    eigenvalues: Vec<f64>,
    offsets: Vec<f64>,
    r: usize,
    nu_sq: f64,
    delta: f64,
}

impl CharFnParams {
    /// Eigenvalues in descending `E_j^2 (1 + b_j^2)` order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Number of leading coordinates handled by the rank-one bound.
    pub fn r(&self) -> usize {
        self.r
    }

    /// `nu^2 = sum_{j > r} E_j^2 (1 + b_j^2)`.
    pub fn nu_sq(&self) -> f64 {
        self.nu_sq
    }

    /// Contour shift `delta = 1 / (10 nu^2)`; infinite when the tail sum
    /// is empty (then no shifted factor ever references it).
    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Sort `(E_j, b_j)` pairs by descending `E_j^2 (1 + b_j^2)` (ties by
/// original index) and derive `r`, `nu^2`, and `delta`. The split index
/// `r` is the smallest of `{0, 1, 2}` such that the leading key does not
/// dominate ten times the remaining tail sum.
pub fn compute_reorder_r(eigenvalues: &[f64], offsets: &[f64]) -> Result<CharFnParams> {
    if eigenvalues.is_empty() || eigenvalues.len() != offsets.len() {
        return Err(Error::InvalidInput(
            "eigenvalues and offsets must be nonempty and of equal length".into(),
        ));
    }
    if !eigenvalues
        .iter()
        .chain(offsets)
        .all(|x| x.is_finite())
    {
        return Err(Error::InvalidInput("inputs must be finite".into()));
    }
    if eigenvalues.iter().all(|e| *e == 0.0) {
        return Err(Error::InvalidInput(
            "at least one eigenvalue must be nonzero".into(),
        ));
    }
    let mut pairs: Vec<(f64, f64)> = eigenvalues
        .iter()
        .copied()
        .zip(offsets.iter().copied())
        .collect();
    // stable sort: ties keep original index order
    pairs.sort_by(|x, y| key_of(y).partial_cmp(&key_of(x)).expect("finite keys"));
    let keys: Vec<f64> = pairs.iter().map(key_of).collect();
    let tail_sum = |from: usize| -> f64 { keys.iter().skip(from).sum() };

    let r = if keys[0] <= REORDER_THRESHOLD * tail_sum(1) {
        0
    } else if keys.len() < 2 || keys[1] <= REORDER_THRESHOLD * tail_sum(2) {
        1
    } else {
        2
    };
    let nu_sq = tail_sum(r);
    let delta = if nu_sq > 0.0 {
        1.0 / (10.0 * nu_sq)
    } else {
        f64::INFINITY
    };
    // analyticity: delta < 1 / (2 max_{j>r} E_j^2) holds by construction
    let max_tail_eig_sq = pairs
        .iter()
        .skip(r)
        .map(|(e, _)| e * e)
        .fold(0.0, f64::max);
    debug_assert!(max_tail_eig_sq == 0.0 || delta < 0.5 / max_tail_eig_sq);

    let (eigenvalues, offsets): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    Ok(CharFnParams {
        eigenvalues,
        offsets,
        r,
        nu_sq,
        delta,
    })
}

#[inline]
fn key_of(pair: &(f64, f64)) -> f64 {
    let (e, b) = *pair;
    e * e * (1.0 + b * b)
}

/// `E exp(i alpha (h + beta)^2)` for a standard Gaussian `h`:
/// `(1 - 2 i alpha)^{-1/2} exp(i alpha beta^2 / (1 - 2 i alpha))` on the
/// principal square-root branch.
pub fn gaussian_quad_cf(alpha: f64, beta: f64) -> Complex64 {
    let z = Complex64::new(1.0, -2.0 * alpha);
    let phase = (Complex64::i() * (alpha * beta * beta) / z).exp();
    phase / z.sqrt()
}

/// Joint characteristic function `chi(xi, eta) = E exp(i (xi X + eta Y))`
/// of `X = sum_{j>r} E_j^2 (g_j + b_j)^2` and
/// `Y = sum_j E_j (g_j + b_j)^2`, as a product of per-coordinate factors.
/// With `shifted`, evaluates the analytic continuation
/// `chi(xi - i delta, eta)` at the params' contour shift.
pub fn char_fn(params: &CharFnParams, xi: f64, eta: f64, shifted: bool) -> Complex64 {
    let delta = if shifted { params.delta } else { 0.0 };
    let mut out = Complex64::ONE;
    for (j, (&e, &b)) in params
        .eigenvalues
        .iter()
        .zip(&params.offsets)
        .enumerate()
    {
        if e == 0.0 {
            continue;
        }
        if j < params.r {
            out *= gaussian_quad_cf(eta * e, b);
        } else {
            let zeta = xi * e * e + eta * e;
            let de2 = delta * e * e;
            let denom = Complex64::new(1.0 - 2.0 * de2, -2.0 * zeta);
            let arg = Complex64::new(de2, zeta) * (b * b) / denom;
            out *= arg.exp() / denom.sqrt();
        }
    }
    out
}

/// Interlacing check `lambda_k(H) <= lambda_k(H_phi) <= lambda_{k+1}(H)`
/// and the rescaled minor `sqrt(N/(N-1)) H_phi` for downstream reuse.
#[derive(Debug, Clone)]
pub struct InterlacingReport {
    pub holds: bool,
    /// Largest violation of either inequality (0 when slack everywhere).
    pub max_violation: f64,
    pub eigenvalues: Vec<f64>,
    pub minor_eigenvalues: Vec<f64>,
    /// `sqrt(N / (N-1)) H_phi`.
    pub rescaled_minor: HermitianMatrix,
}

/// Verify Cauchy interlacing of `H_phi` inside `H` at tolerance
/// [`INTERLACING_TOL`].
pub fn check_interlacing(h: &HermitianMatrix, phi: &Vector) -> Result<InterlacingReport> {
    let n = h.dim();
    let h_phi = restrict_orthogonal(h, phi)?;
    let lam = eigh(h, false)?;
    let mu = eigh(&h_phi, false)?;
    let mut max_violation = 0.0f64;
    for k in 0..n - 1 {
        max_violation = max_violation
            .max(lam.eigenvalues()[k] - mu.eigenvalues()[k])
            .max(mu.eigenvalues()[k] - lam.eigenvalues()[k + 1]);
    }
    let rescale = (n as f64 / (n as f64 - 1.0)).sqrt();
    Ok(InterlacingReport {
        holds: max_violation <= INTERLACING_TOL,
        max_violation: max_violation.max(0.0),
        eigenvalues: lam.eigenvalues().to_vec(),
        minor_eigenvalues: mu.eigenvalues().to_vec(),
        rescaled_minor: h_phi.scale(rescale),
    })
}

/// Direct `||H^{-1} e_1||` via the eigendecomposition, for checking the
/// Schur identity against an independent route.
pub fn direct_inverse_column_norm(h: &HermitianMatrix) -> Result<f64> {
    let s = eigh(h, true)?;
    let e1 = Vector::basis(h.field(), h.dim(), 0);
    Ok(apply_inverse(&s, &e1)?.norm())
}
