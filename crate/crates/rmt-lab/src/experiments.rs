//! End-to-end experiment scans: the two tail-sharpness regimes, the
//! density-of-states scaling contrast between them, the Bernoulli
//! counterexample, and the weak-disorder sweep.

use serde::Serialize;

use crate::eigen::eigh;
use crate::ensembles::{
    build_base, sample_deformed, sample_wigner_bernoulli, BaseMatrixSpec, EnsembleKind,
    EnsembleSpec,
};
use crate::estimators::{
    clopper_pearson, fit_power_law, mc_dos, mc_tail_fixed_vector, run_chunked,
    MonteCarloConfig, PowerLawFit,
};
use crate::matrix::{Field, HermitianMatrix, Vector};
use crate::rng::RngStream;
use crate::{Error, Result};

/// Which saturation regime to scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum SharpnessCase {
    /// `A = 0`: the inverse is dominated by a single bulk eigenvalue at
    /// distance ~ `1/N` with overlap ~ `1/sqrt(N)`.
    ZeroBase,
    /// `A = N^{1/2+eps} P_{e_1}^perp`: distance ~ `1/sqrt(N)` with
    /// overlap ~ `1`.
    ProjBase { epsilon: f64 },
}

impl SharpnessCase {
    fn label(&self) -> String {
        match self {
            SharpnessCase::ZeroBase => "zero_base".into(),
            SharpnessCase::ProjBase { epsilon } => format!("proj_base(eps={epsilon})"),
        }
    }

    fn base_spec(&self) -> BaseMatrixSpec {
        match self {
            SharpnessCase::ZeroBase => BaseMatrixSpec::Zero,
            SharpnessCase::ProjBase { epsilon } => BaseMatrixSpec::ProjComplement {
                epsilon: *epsilon,
            },
        }
    }
}

/// Per-size medians of the saturation statistics and their power-law
/// fits against `N`.
#[derive(Debug, Clone, Serialize)]
pub struct SharpnessResult {
    pub case_label: String,
    pub n_grid: Vec<usize>,
    /// Median of `dist(0, spec H)` per size.
    pub median_dist: Vec<f64>,
    /// Median of `|<phi, Psi_1>|` per size.
    pub median_overlap: Vec<f64>,
    /// Median of `||H^{-1} phi|| / sqrt(N)` per size.
    pub median_inv_ratio: Vec<f64>,
    pub dist_fit: PowerLawFit,
    pub overlap_fit: PowerLawFit,
    pub n_samples: u64,
}

fn median(sorted: &mut [f64]) -> f64 {
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite medians"));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Scan `dist(0, spec H)`, the overlap with the eigenvector nearest 0,
/// and `||H^{-1} e_1|| / sqrt(N)` over a size grid, reporting medians
/// and power-law fits in `N`. One draw costs a full eigendecomposition.
pub fn sharpness_scan(
    case: SharpnessCase,
    kind: EnsembleKind,
    n_grid: &[usize],
    cfg: &MonteCarloConfig,
) -> Result<SharpnessResult> {
    cfg.validate()?;
    if n_grid.len() < 3 || !n_grid.windows(2).all(|w| w[0] < w[1]) || n_grid[0] < 2 {
        return Err(Error::InvalidInput(
            "size grid must be ascending with at least 3 entries >= 2".into(),
        ));
    }
    let base_spec = case.base_spec();
    let mut median_dist = Vec::with_capacity(n_grid.len());
    let mut median_overlap = Vec::with_capacity(n_grid.len());
    let mut median_inv_ratio = Vec::with_capacity(n_grid.len());

    for (grid_idx, &n) in n_grid.iter().enumerate() {
        let base = build_base(&base_spec, n)?;
        let spec = EnsembleSpec::new(kind, n);
        let sub_cfg = MonteCarloConfig {
            seed: RngStream::derive_seed(cfg.seed, grid_idx as u64),
            ..cfg.clone()
        };
        let chunks = run_chunked(
            &sub_cfg,
            Vec::new,
            |vals: &mut Vec<(f64, f64, f64)>, idx| {
                let mut rng = RngStream::new(sub_cfg.seed, idx);
                let h = sample_deformed(&base, &spec, &mut rng)?;
                let s = eigh(&h, true)?;
                let (i0, dist) = s
                    .eigenvalues()
                    .iter()
                    .map(|l| l.abs())
                    .enumerate()
                    .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
                    .expect("nonempty spectrum");
                let psi1 = s.eigenvector(i0);
                let overlap = psi1.entry(0).norm();
                let mut inv_sq = 0.0;
                for (k, lam) in s.eigenvalues().iter().enumerate() {
                    let c = s.eigenvector(k).entry(0).norm_sqr();
                    inv_sq += c / (lam * lam);
                }
                // per-draw consistency: the nearest-eigenvalue term is one
                // summand of ||H^{-1} e_1||^2
                let dominant = overlap * overlap / (dist * dist);
                assert!(
                    inv_sq >= dominant * (1.0 - 1e-10),
                    "spectral sum {inv_sq} below its own term {dominant}"
                );
                vals.push((dist, overlap, inv_sq.sqrt() / (n as f64).sqrt()));
                Ok(())
            },
        )?;
        let all: Vec<(f64, f64, f64)> = chunks.into_iter().flatten().collect();
        median_dist.push(median(&mut all.iter().map(|v| v.0).collect::<Vec<_>>()));
        median_overlap.push(median(&mut all.iter().map(|v| v.1).collect::<Vec<_>>()));
        median_inv_ratio.push(median(&mut all.iter().map(|v| v.2).collect::<Vec<_>>()));
    }

    let pts_dist: Vec<(f64, f64)> = n_grid
        .iter()
        .zip(&median_dist)
        .map(|(n, m)| (*n as f64, *m))
        .collect();
    let pts_overlap: Vec<(f64, f64)> = n_grid
        .iter()
        .zip(&median_overlap)
        .map(|(n, m)| (*n as f64, *m))
        .collect();
    Ok(SharpnessResult {
        case_label: case.label(),
        n_grid: n_grid.to_vec(),
        median_dist,
        median_overlap,
        median_inv_ratio,
        dist_fit: fit_power_law(&pts_dist)?,
        overlap_fit: fit_power_law(&pts_overlap)?,
        n_samples: cfg.n_samples,
    })
}

/// Expected eigenvalue count per unit length in a width `1/sqrt(N)`
/// window at zero, fitted against `N`, for the zero base and the
/// projector base.
#[derive(Debug, Clone, Serialize)]
pub struct DosScalingResult {
    pub n_grid: Vec<usize>,
    pub zero_count_per_len: Vec<f64>,
    pub proj_count_per_len: Vec<f64>,
    pub zero_fit: PowerLawFit,
    pub proj_fit: PowerLawFit,
    pub n_samples: u64,
}

/// Contrast the density-of-states scaling at energy zero between the
/// zero base (count per unit length ~ `N`) and the projector base
/// (~ `sqrt(N)`).
pub fn dos_scaling_contrast(
    epsilon: f64,
    kind: EnsembleKind,
    n_grid: &[usize],
    cfg: &MonteCarloConfig,
) -> Result<DosScalingResult> {
    cfg.validate()?;
    if n_grid.len() < 3 || !n_grid.windows(2).all(|w| w[0] < w[1]) || n_grid[0] < 2 {
        return Err(Error::InvalidInput(
            "size grid must be ascending with at least 3 entries >= 2".into(),
        ));
    }
    let cases = [
        BaseMatrixSpec::Zero,
        BaseMatrixSpec::ProjComplement { epsilon },
    ];
    let mut per_case: Vec<Vec<f64>> = Vec::with_capacity(2);
    for (case_idx, base_spec) in cases.iter().enumerate() {
        let mut counts = Vec::with_capacity(n_grid.len());
        for (grid_idx, &n) in n_grid.iter().enumerate() {
            let base = build_base(base_spec, n)?;
            let spec = EnsembleSpec::new(kind, n);
            let half = 0.5 / (n as f64).sqrt();
            let sub_cfg = MonteCarloConfig {
                seed: RngStream::derive_seed(cfg.seed, (case_idx * n_grid.len() + grid_idx) as u64),
                ..cfg.clone()
            };
            let dos = mc_dos(&base, &spec, &[-half, half], &sub_cfg)?;
            counts.push(dos.mean_count[0] / (2.0 * half));
        }
        per_case.push(counts);
    }
    let pts = |counts: &[f64]| -> Vec<(f64, f64)> {
        n_grid
            .iter()
            .zip(counts)
            .map(|(n, c)| (*n as f64, *c))
            .collect()
    };
    let zero_fit = fit_power_law(&pts(&per_case[0]))?;
    let proj_fit = fit_power_law(&pts(&per_case[1]))?;
    Ok(DosScalingResult {
        n_grid: n_grid.to_vec(),
        zero_count_per_len: per_case.remove(0),
        proj_count_per_len: per_case.remove(0),
        zero_fit,
        proj_fit,
        n_samples: cfg.n_samples,
    })
}

/// Operator-norm blowup probabilities for one deformation scale `M`.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexamplePoint {
    pub m: f64,
    pub p_unconditional: f64,
    pub unconditional_ci: (f64, f64),
    /// Probability conditioned on the corner entry being `-1/sqrt(N)`.
    pub p_conditional: f64,
    pub conditional_ci: (f64, f64),
    pub n_conditioning: u64,
}

/// The Bernoulli-Wigner counterexample scan over deformation scales.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleResult {
    pub n: usize,
    pub t: f64,
    pub points: Vec<CounterexamplePoint>,
    pub n_samples: u64,
}

/// Estimate `P{ ||(A + V)^{-1}||_op >= t }` for
/// `A = diag(1, M, ..., M)/sqrt(N)` and Bernoulli-Wigner `V`, overall
/// and conditioned on `V_11 = -1/sqrt(N)`. Near-singular draws count as
/// exceeding the threshold.
pub fn bernoulli_counterexample(
    n: usize,
    m_grid: &[f64],
    t: f64,
    cfg: &MonteCarloConfig,
) -> Result<CounterexampleResult> {
    cfg.validate()?;
    if n < 2 {
        return Err(Error::InvalidInput("need dimension >= 2".into()));
    }
    if m_grid.is_empty()
        || !m_grid.iter().all(|m| m.is_finite() && *m > 0.0)
        || !m_grid.windows(2).all(|w| w[0] < w[1])
    {
        return Err(Error::InvalidInput(
            "M grid must be ascending and positive".into(),
        ));
    }
    if !(t.is_finite() && t >= 1.0) {
        return Err(Error::InvalidInput("t must be finite and >= 1".into()));
    }

    let mut points = Vec::with_capacity(m_grid.len());
    for (m_idx, &m) in m_grid.iter().enumerate() {
        let base = build_base(&BaseMatrixSpec::CounterexampleDiag { m }, n)?;
        let sub_cfg = MonteCarloConfig {
            seed: RngStream::derive_seed(cfg.seed, m_idx as u64),
            ..cfg.clone()
        };
        let chunks = run_chunked(
            &sub_cfg,
            || (0u64, 0u64, 0u64),
            |(hits, cond, cond_hits), idx| {
                let mut rng = RngStream::new(sub_cfg.seed, idx);
                let v = sample_wigner_bernoulli(n, &mut rng);
                let h = base.add_scaled(&v, 1.0)?;
                let s = eigh(&h, false)?;
                // min |lambda| = 0 means an infinite operator norm;
                // treat as exceeding
                let exceed = 1.0 >= t * s.min_abs_eigenvalue();
                let on_event = v.entry(0, 0).re < 0.0;
                if exceed {
                    *hits += 1;
                }
                if on_event {
                    *cond += 1;
                    if exceed {
                        *cond_hits += 1;
                    }
                }
                Ok(())
            },
        )?;
        let (hits, cond, cond_hits) = chunks
            .into_iter()
            .fold((0, 0, 0), |(a, b, c), (x, y, z)| (a + x, b + y, c + z));
        let unconditional_ci = clopper_pearson(hits, cfg.n_samples, cfg.ci_level);
        let (p_conditional, conditional_ci) = if cond > 0 {
            (
                cond_hits as f64 / cond as f64,
                clopper_pearson(cond_hits, cond, cfg.ci_level),
            )
        } else {
            (0.0, (0.0, 1.0))
        };
        points.push(CounterexamplePoint {
            m,
            p_unconditional: hits as f64 / cfg.n_samples as f64,
            unconditional_ci,
            p_conditional,
            conditional_ci,
            n_conditioning: cond,
        });
    }
    Ok(CounterexampleResult {
        n,
        t,
        points,
        n_samples: cfg.n_samples,
    })
}

/// Per-disorder-strength fitted quantities of the weak-disorder sweep.
#[derive(Debug, Clone, Serialize)]
pub struct WeakDisorderResult {
    pub lambda_grid: Vec<f64>,
    /// Largest density estimate over the partition, per lambda.
    pub sup_density: Vec<f64>,
    pub sup_density_ci_hi: Vec<f64>,
    /// Fitted tail constant `max_t t * ci_hi` of the fixed-vector tail,
    /// per lambda.
    pub tail_constant: Vec<f64>,
    /// Power-law fit of `sup_density` against lambda; present when the
    /// grid has at least three points.
    pub density_fit: Option<PowerLawFit>,
    pub n: usize,
    pub n_samples: u64,
}

/// Partition used by the weak-disorder sweep: 60 cells over `[-3, 3]`.
pub fn weak_disorder_partition() -> Vec<f64> {
    (0..=60).map(|i| -3.0 + 0.1 * i as f64).collect()
}

/// Sweep the disorder strength: for each `lambda`, estimate the
/// density-of-states profile of `base + lambda V` on a fixed partition
/// and the fixed-vector tail with its fitted constant, then fit
/// `sup density ~ lambda^p`.
pub fn weak_disorder_scan(
    base: &HermitianMatrix,
    kind: EnsembleKind,
    lambda_grid: &[f64],
    cfg: &MonteCarloConfig,
) -> Result<WeakDisorderResult> {
    cfg.validate()?;
    if lambda_grid.is_empty()
        || !lambda_grid.iter().all(|l| l.is_finite() && *l > 0.0)
        || !lambda_grid.windows(2).all(|w| w[0] < w[1])
    {
        return Err(Error::InvalidInput(
            "lambda grid must be ascending and positive".into(),
        ));
    }
    let n = base.dim();
    let edges = weak_disorder_partition();
    let phi = Vector::basis(Field::Real, n, 0);
    let t_grid = [2.0, 4.0, 8.0];

    let mut sup_density = Vec::with_capacity(lambda_grid.len());
    let mut sup_density_ci_hi = Vec::with_capacity(lambda_grid.len());
    let mut tail_constant = Vec::with_capacity(lambda_grid.len());
    for (idx, &lambda) in lambda_grid.iter().enumerate() {
        let spec = EnsembleSpec::new(kind, n).with_lambda(lambda);
        let sub_cfg = MonteCarloConfig {
            seed: RngStream::derive_seed(cfg.seed, idx as u64),
            ..cfg.clone()
        };
        let dos = mc_dos(base, &spec, &edges, &sub_cfg)?;
        sup_density.push(dos.sup_density());
        sup_density_ci_hi.push(dos.sup_density_ci_hi());

        let tail_cfg = MonteCarloConfig {
            seed: RngStream::derive_seed(cfg.seed, 1000 + idx as u64),
            ..cfg.clone()
        };
        let tail = mc_tail_fixed_vector(base, &spec, &phi, &t_grid, &tail_cfg)?;
        tail_constant.push(tail.fitted_constant());
    }
    let density_fit = if lambda_grid.len() >= 3 {
        let pts: Vec<(f64, f64)> = lambda_grid
            .iter()
            .zip(&sup_density)
            .map(|(l, d)| (*l, *d))
            .collect();
        Some(fit_power_law(&pts)?)
    } else {
        None
    };
    Ok(WeakDisorderResult {
        lambda_grid: lambda_grid.to_vec(),
        sup_density,
        sup_density_ci_hi,
        tail_constant,
        density_fit,
        n,
        n_samples: cfg.n_samples,
    })
}
