//! Deterministic, parallel Monte Carlo estimation of tail probabilities,
//! density of states, and eigenvalue-counting moments, with exact
//! binomial confidence intervals.
//!
//! Results are a pure function of `(n_samples, seed)` regardless of
//! `max_workers`: sample `i` always owns the stream `(seed, i)`, integer
//! tallies merge commutatively, and floating-point partial sums are
//! accumulated per fixed-size chunk and merged in ascending chunk order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF, Normal};

use crate::eigen::eigh;
use crate::ensembles::{sample_deformed, EnsembleSpec};
use crate::linalg::{apply_inverse, inverse_norms};
use crate::matrix::{HermitianMatrix, Vector};
use crate::rng::RngStream;
use crate::{Error, Result};

/// Samples per work unit; fixed so float merges are order-stable.
pub(crate) const CHUNK_SIZE: u64 = 64;

/// Repo-wide ceiling on fitted tail constants `max_t t * ci_hi` for the
/// `C/t`-shaped bounds.
pub const TAIL_CONSTANT_CEILING: f64 = 5.0;

/// Repo-wide ceiling on density-of-states upper confidence bounds over
/// the built-in base-matrix family.
pub const DENSITY_CEILING: f64 = 2.0;

/// Shared Monte Carlo run parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub n_samples: u64,
    pub seed: u64,
    /// Worker threads; results never depend on this.
    #[serde(default = "default_workers")]
    pub max_workers: usize,
    /// Two-sided confidence level for all intervals.
    #[serde(default = "default_ci_level")]
    pub ci_level: f64,
}

fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn default_ci_level() -> f64 {
    0.95
}

impl MonteCarloConfig {
    pub fn new(n_samples: u64, seed: u64) -> Self {
        MonteCarloConfig {
            n_samples,
            seed,
            max_workers: default_workers(),
            ci_level: default_ci_level(),
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.max_workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_samples == 0 {
            return Err(Error::InvalidInput("n_samples must be >= 1".into()));
        }
        if self.max_workers == 0 {
            return Err(Error::InvalidInput("max_workers must be >= 1".into()));
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            return Err(Error::InvalidInput(format!(
                "ci_level must lie in (0, 1), got {}",
                self.ci_level
            )));
        }
        Ok(())
    }
}

/// Run `body` once per sample index, chunked; returns the per-chunk
/// accumulators in ascending chunk order.
pub(crate) fn run_chunked<A, M, B>(cfg: &MonteCarloConfig, make: M, body: B) -> Result<Vec<A>>
where
    A: Send,
    M: Fn() -> A + Sync,
    B: Fn(&mut A, u64) -> Result<()> + Sync,
{
    let n_chunks = cfg.n_samples.div_ceil(CHUNK_SIZE);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.max_workers)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    pool.install(|| {
        (0..n_chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = make();
                let lo = c * CHUNK_SIZE;
                let hi = ((c + 1) * CHUNK_SIZE).min(cfg.n_samples);
                for i in lo..hi {
                    body(&mut acc, i)?;
                }
                Ok(acc)
            })
            .collect()
    })
}

/// Exact binomial (Clopper-Pearson) confidence interval by Beta-quantile
/// inversion; `lo = 0` at zero successes and `hi = 1` at `n` successes.
pub fn clopper_pearson(successes: u64, n: u64, level: f64) -> (f64, f64) {
    assert!(n > 0, "need at least one trial");
    assert!(successes <= n, "successes cannot exceed trials");
    assert!(level > 0.0 && level < 1.0, "level must lie in (0, 1)");
    let alpha = 1.0 - level;
    let s = successes as f64;
    let nf = n as f64;
    let lo = if successes == 0 {
        0.0
    } else {
        Beta::new(s, nf - s + 1.0)
            .expect("valid Beta parameters")
            .inverse_cdf(alpha / 2.0)
    };
    let hi = if successes == n {
        1.0
    } else {
        Beta::new(s + 1.0, nf - s)
            .expect("valid Beta parameters")
            .inverse_cdf(1.0 - alpha / 2.0)
    };
    (lo, hi)
}

/// Two-sided standard normal quantile for the given confidence level.
pub(crate) fn normal_two_sided_z(level: f64) -> f64 {
    Normal::standard().inverse_cdf(0.5 + level / 2.0)
}

/// Empirical exceedance curve over a threshold grid, with exact binomial
/// confidence intervals per point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailCurve {
    /// Grid of thresholds (`t`, `epsilon`, or `k` depending on the
    /// estimator).
    pub thresholds: Vec<f64>,
    pub p_hat: Vec<f64>,
    pub ci_lo: Vec<f64>,
    pub ci_hi: Vec<f64>,
    pub n_samples: u64,
    /// Draws whose spectrum failed the singularity tolerance; they count
    /// as exceeding every threshold.
    pub n_near_singular: u64,
}

impl TailCurve {
    pub(crate) fn from_counts(
        thresholds: Vec<f64>,
        counts: &[u64],
        n_samples: u64,
        level: f64,
        n_near_singular: u64,
    ) -> Self {
        let mut p_hat = Vec::with_capacity(counts.len());
        let mut ci_lo = Vec::with_capacity(counts.len());
        let mut ci_hi = Vec::with_capacity(counts.len());
        for &c in counts {
            let (lo, hi) = clopper_pearson(c, n_samples, level);
            p_hat.push(c as f64 / n_samples as f64);
            ci_lo.push(lo);
            ci_hi.push(hi);
        }
        TailCurve {
            thresholds,
            p_hat,
            ci_lo,
            ci_hi,
            n_samples,
            n_near_singular,
        }
    }

    /// Largest `threshold * ci_hi` over the grid: the fitted empirical
    /// constant for a `C / t` shaped bound.
    pub fn fitted_constant(&self) -> f64 {
        self.thresholds
            .iter()
            .zip(&self.ci_hi)
            .map(|(t, hi)| t * hi)
            .fold(0.0, f64::max)
    }
}

pub(crate) fn validate_t_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(Error::InvalidInput("empty threshold grid".into()));
    }
    if !t_grid.iter().all(|t| t.is_finite() && *t >= 1.0) {
        return Err(Error::InvalidInput("thresholds must be finite and >= 1".into()));
    }
    if !t_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput("thresholds must be strictly ascending".into()));
    }
    Ok(())
}

#[derive(Clone)]
struct TailAccum {
    counts: Vec<u64>,
    near_singular: u64,
}

impl TailAccum {
    fn new(len: usize) -> Self {
        TailAccum {
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

    fn merge(mut self, other: TailAccum) -> TailAccum {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.near_singular += other.near_singular;
        self
    }
}

/// Estimate `P{ ||H^{-1} phi|| >= t sqrt(N) ||phi|| }` over `t_grid` for
/// `H = base + lambda V`. Near-singular draws count as exceeding every
/// threshold.
pub fn mc_tail_fixed_vector(
    base: &HermitianMatrix,
    spec: &EnsembleSpec,
    phi: &Vector,
    t_grid: &[f64],
    cfg: &MonteCarloConfig,
) -> Result<TailCurve> {
    spec.validate()?;
    cfg.validate()?;
    validate_t_grid(t_grid)?;
    if base.dim() != spec.n || phi.dim() != spec.n {
        return Err(Error::InvalidInput(format!(
            "dimension mismatch: base {}, ensemble {}, phi {}",
            base.dim(),
            spec.n,
            phi.dim()
        )));
    }
    let phi_norm = phi.norm();
    if phi_norm == 0.0 {
        return Err(Error::InvalidInput("phi must be nonzero".into()));
    }
    let denom = (spec.n as f64).sqrt() * phi_norm;

    let chunks = run_chunked(
        cfg,
        || TailAccum::new(t_grid.len()),
        |acc, idx| {
            let mut rng = RngStream::new(cfg.seed, idx);
            let h = sample_deformed(base, spec, &mut rng)?;
            let s = eigh(&h, true)?;
            match apply_inverse(&s, phi) {
                Ok(y) => acc.tally(t_grid, y.norm() / denom),
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
        .fold(TailAccum::new(t_grid.len()), TailAccum::merge);
    Ok(TailCurve::from_counts(
        t_grid.to_vec(),
        &total.counts,
        cfg.n_samples,
        cfg.ci_level,
        total.near_singular,
    ))
}

/// Estimate `P{ ||H^{-1}||_F >= t N }` and `P{ ||H^{-1}||_op >= t N }`
/// on the same draws. The operator curve is dominated pointwise by the
/// Frobenius curve because the event is nested per sample.
pub fn mc_tail_norms(
    base: &HermitianMatrix,
    spec: &EnsembleSpec,
    t_grid: &[f64],
    cfg: &MonteCarloConfig,
) -> Result<(TailCurve, TailCurve)> {
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
    let nf = spec.n as f64;

    let chunks = run_chunked(
        cfg,
        || (TailAccum::new(t_grid.len()), TailAccum::new(t_grid.len())),
        |(frob_acc, op_acc), idx| {
            let mut rng = RngStream::new(cfg.seed, idx);
            let h = sample_deformed(base, spec, &mut rng)?;
            let s = eigh(&h, false)?;
            match inverse_norms(&s) {
                Ok((frob, op)) => {
                    frob_acc.tally(t_grid, frob / nf);
                    op_acc.tally(t_grid, op / nf);
                }
                Err(Error::NearSingular { .. }) => {
                    frob_acc.near_singular += 1;
                    op_acc.near_singular += 1;
                    frob_acc.tally_all();
                    op_acc.tally_all();
                }
                Err(e) => return Err(e),
            }
            Ok(())
        },
    )?;
    let (frob_total, op_total) = chunks.into_iter().fold(
        (TailAccum::new(t_grid.len()), TailAccum::new(t_grid.len())),
        |(fa, oa), (fb, ob)| (fa.merge(fb), oa.merge(ob)),
    );
    Ok((
        TailCurve::from_counts(
            t_grid.to_vec(),
            &frob_total.counts,
            cfg.n_samples,
            cfg.ci_level,
            frob_total.near_singular,
        ),
        TailCurve::from_counts(
            t_grid.to_vec(),
            &op_total.counts,
            cfg.n_samples,
            cfg.ci_level,
            op_total.near_singular,
        ),
    ))
}

/// Count of sorted eigenvalues in the half-open interval `[lo, hi)`.
pub(crate) fn count_half_open(sorted: &[f64], lo: f64, hi: f64) -> u64 {
    let a = sorted.partition_point(|x| *x < lo);
    let b = sorted.partition_point(|x| *x < hi);
    (b - a) as u64
}

/// Counts per partition cell: cells are `[e_i, e_{i+1})`, the last cell
/// closed on the right.
pub(crate) fn counts_per_cell(sorted: &[f64], edges: &[f64]) -> Vec<u64> {
    let cells = edges.len() - 1;
    let mut cuts = Vec::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        if i == edges.len() - 1 {
            cuts.push(sorted.partition_point(|x| *x <= *e));
        } else {
            cuts.push(sorted.partition_point(|x| *x < *e));
        }
    }
    (0..cells).map(|i| (cuts[i + 1] - cuts[i]) as u64).collect()
}

fn validate_partition(edges: &[f64]) -> Result<()> {
    if edges.len() < 2 {
        return Err(Error::InvalidInput("partition needs at least two edges".into()));
    }
    if !edges.iter().all(|e| e.is_finite()) {
        return Err(Error::InvalidInput("partition edges must be finite".into()));
    }
    if !edges.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput("partition edges must be strictly ascending".into()));
    }
    Ok(())
}

/// Mean eigenvalue counts and densities per partition cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DosEstimate {
    /// Ascending cell edges; cell `i` is `[edges[i], edges[i+1])`, the
    /// last cell closed.
    pub edges: Vec<f64>,
    pub mean_count: Vec<f64>,
    /// `mean_count / (N |I|)`.
    pub density: Vec<f64>,
    pub density_se: Vec<f64>,
    /// Normal-approximation upper confidence bound on the density.
    pub density_ci_hi: Vec<f64>,
    pub n_samples: u64,
    pub dim: usize,
}

impl DosEstimate {
    pub fn sup_density(&self) -> f64 {
        self.density.iter().copied().fold(0.0, f64::max)
    }

    pub fn sup_density_ci_hi(&self) -> f64 {
        self.density_ci_hi.iter().copied().fold(0.0, f64::max)
    }
}

/// Estimate the mean density of states of `H = base + lambda V` over a
/// partition.
pub fn mc_dos(
    base: &HermitianMatrix,
    spec: &EnsembleSpec,
    edges: &[f64],
    cfg: &MonteCarloConfig,
) -> Result<DosEstimate> {
    spec.validate()?;
    cfg.validate()?;
    validate_partition(edges)?;
    if base.dim() != spec.n {
        return Err(Error::InvalidInput(format!(
            "base dimension {} vs ensemble dimension {}",
            base.dim(),
            spec.n
        )));
    }
    let cells = edges.len() - 1;

    let chunks = run_chunked(
        cfg,
        || (vec![0u64; cells], vec![0u64; cells]),
        |(sums, sumsqs), idx| {
            let mut rng = RngStream::new(cfg.seed, idx);
            let h = sample_deformed(base, spec, &mut rng)?;
            let s = eigh(&h, false)?;
            let counts = counts_per_cell(s.eigenvalues(), edges);
            for ((sum, sumsq), c) in sums.iter_mut().zip(sumsqs.iter_mut()).zip(counts) {
                *sum += c;
                *sumsq += c * c;
            }
            Ok(())
        },
    )?;
    let (sums, sumsqs) = chunks.into_iter().fold(
        (vec![0u64; cells], vec![0u64; cells]),
        |(mut sa, mut qa), (sb, qb)| {
            for (a, b) in sa.iter_mut().zip(sb) {
                *a += b;
            }
            for (a, b) in qa.iter_mut().zip(qb) {
                *a += b;
            }
            (sa, qa)
        },
    );

    let k = cfg.n_samples as f64;
    let z = normal_two_sided_z(cfg.ci_level);
    let mut mean_count = Vec::with_capacity(cells);
    let mut density = Vec::with_capacity(cells);
    let mut density_se = Vec::with_capacity(cells);
    let mut density_ci_hi = Vec::with_capacity(cells);
    for i in 0..cells {
        let mean = sums[i] as f64 / k;
        let var = if cfg.n_samples > 1 {
            (sumsqs[i] as f64 - k * mean * mean).max(0.0) / (k - 1.0)
        } else {
            0.0
        };
        let width = edges[i + 1] - edges[i];
        let scale = 1.0 / (spec.n as f64 * width);
        let se = (var / k).sqrt() * scale;
        mean_count.push(mean);
        density.push(mean * scale);
        density_se.push(se);
        density_ci_hi.push(mean * scale + z * se);
    }
    Ok(DosEstimate {
        edges: edges.to_vec(),
        mean_count,
        density,
        density_se,
        density_ci_hi,
        n_samples: cfg.n_samples,
        dim: spec.n,
    })
}

/// Estimate `P{ N(I) >= k }` for the half-open interval `I = [lo, hi)`.
/// Returns a single-point [`TailCurve`] whose threshold slot holds `k`.
pub fn mc_counting_tail(
    base: &HermitianMatrix,
    spec: &EnsembleSpec,
    interval: (f64, f64),
    k: u64,
    cfg: &MonteCarloConfig,
) -> Result<TailCurve> {
    spec.validate()?;
    cfg.validate()?;
    if k == 0 {
        return Err(Error::InvalidInput("k must be >= 1".into()));
    }
    let (lo, hi) = interval;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidInput(format!(
            "bad interval [{lo}, {hi})"
        )));
    }
    if base.dim() != spec.n {
        return Err(Error::InvalidInput(format!(
            "base dimension {} vs ensemble dimension {}",
            base.dim(),
            spec.n
        )));
    }

    let chunks = run_chunked(
        cfg,
        || 0u64,
        |hits, idx| {
            let mut rng = RngStream::new(cfg.seed, idx);
            let h = sample_deformed(base, spec, &mut rng)?;
            let s = eigh(&h, false)?;
            if count_half_open(s.eigenvalues(), lo, hi) >= k {
                *hits += 1;
            }
            Ok(())
        },
    )?;
    let hits: u64 = chunks.into_iter().sum();
    Ok(TailCurve::from_counts(
        vec![k as f64],
        &[hits],
        cfg.n_samples,
        cfg.ci_level,
        0,
    ))
}

/// Result of a factorial-moment estimate
/// `E[N(I_1) (N(I_2) - 1)_+ ... (N(I_k) - k + 1)_+]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorialMomentResult {
    pub intervals: Vec<(f64, f64)>,
    pub k: usize,
    pub estimate: f64,
    pub std_error: f64,
    pub n_samples: u64,
}

/// Estimate the clamped factorial moment over the given intervals, in
/// order: the `j`-th factor is `(N(I_j) - j + 1)_+` (1-indexed).
pub fn mc_factorial_moment(
    base: &HermitianMatrix,
    spec: &EnsembleSpec,
    intervals: &[(f64, f64)],
    cfg: &MonteCarloConfig,
) -> Result<FactorialMomentResult> {
    spec.validate()?;
    cfg.validate()?;
    if intervals.is_empty() {
        return Err(Error::InvalidInput("need at least one interval".into()));
    }
    for &(lo, hi) in intervals {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::InvalidInput(format!("bad interval [{lo}, {hi})")));
        }
    }
    if base.dim() != spec.n {
        return Err(Error::InvalidInput(format!(
            "base dimension {} vs ensemble dimension {}",
            base.dim(),
            spec.n
        )));
    }

    let chunks = run_chunked(
        cfg,
        || (0.0f64, 0.0f64),
        |(sum, sumsq), idx| {
            let mut rng = RngStream::new(cfg.seed, idx);
            let h = sample_deformed(base, spec, &mut rng)?;
            let s = eigh(&h, false)?;
            let mut product = 1.0f64;
            for (j, &(lo, hi)) in intervals.iter().enumerate() {
                let c = count_half_open(s.eigenvalues(), lo, hi);
                let factor = c.saturating_sub(j as u64) as f64;
                product *= factor;
                if product == 0.0 {
                    break;
                }
            }
            *sum += product;
            *sumsq += product * product;
            Ok(())
        },
    )?;
    // ascending chunk order keeps the float merge deterministic
    let (sum, sumsq) = chunks
        .into_iter()
        .fold((0.0, 0.0), |(sa, qa), (sb, qb)| (sa + sb, qa + qb));
    let k = cfg.n_samples as f64;
    let estimate = sum / k;
    let var = if cfg.n_samples > 1 {
        (sumsq - k * estimate * estimate).max(0.0) / (k - 1.0)
    } else {
        0.0
    };
    Ok(FactorialMomentResult {
        intervals: intervals.to_vec(),
        k: intervals.len(),
        estimate,
        std_error: (var / k).sqrt(),
        n_samples: cfg.n_samples,
    })
}

/// Least-squares power-law fit `y ~ exp(intercept) x^exponent` on
/// log-log coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    /// Intercept in log space: `ln y` at `ln x = 0`.
    pub log_intercept: f64,
    /// Standard error of the exponent.
    pub std_error: f64,
}

/// Fit a power law through `(x, y)` points with `x, y > 0`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if !points
        .iter()
        .all(|&(x, y)| x.is_finite() && y.is_finite() && x > 0.0 && y > 0.0)
    {
        return Err(Error::InvalidInput(
            "power-law fit needs finite positive coordinates".into(),
        ));
    }
    let m = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mean_x = lx.iter().sum::<f64>() / m;
    let mean_y = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidInput("x values must not all coincide".into()));
    }
    let sxy: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ssr: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let sigma2 = ssr / (m - 2.0);
    Ok(PowerLawFit {
        exponent: slope,
        log_intercept: intercept,
        std_error: (sigma2 / sxx).sqrt(),
    })
}

/// Two-sample Kolmogorov-Smirnov statistic `sup |F_a - F_b|`.
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty());
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).expect("finite samples"));
    ys.sort_by(|p, q| p.partial_cmp(q).expect("finite samples"));
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let mut i = 0;
    let mut j = 0;
    let mut d: f64 = 0.0;
    // evaluate |F_a - F_b| after consuming every sample tied at each
    // distinct value
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] == v {
            i += 1;
        }
        while j < ys.len() && ys[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Large-sample two-sample KS critical value at significance `alpha`.
pub fn ks_critical(na: usize, nb: usize, alpha: f64) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    c * ((na + nb) as f64 / (na as f64 * nb as f64)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::EnsembleKind;
    use crate::matrix::Field;

    /// Binomial CDF by direct summation of log-binomial terms.
    fn binom_cdf(k: u64, n: u64, p: f64) -> f64 {
        let mut ln_coef = 0.0; // ln C(n, 0)
        let mut total = 0.0;
        for i in 0..=k {
            if i > 0 {
                ln_coef += ((n - i + 1) as f64).ln() - (i as f64).ln();
            }
            total += (ln_coef + i as f64 * p.ln() + (n - i) as f64 * (1.0 - p).ln()).exp();
        }
        total.min(1.0)
    }

    /// Clopper-Pearson bounds by bisection on the binomial CDF.
    fn cp_bisect(successes: u64, n: u64, level: f64) -> (f64, f64) {
        let alpha = 1.0 - level;
        let solve = |target: &dyn Fn(f64) -> f64| {
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if target(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        let lo = if successes == 0 {
            0.0
        } else {
            // P(X >= s) = alpha/2  <=>  1 - cdf(s-1) = alpha/2
            solve(&|p| alpha / 2.0 - (1.0 - binom_cdf(successes - 1, n, p)))
        };
        let hi = if successes == n {
            1.0
        } else {
            // P(X <= s) = alpha/2
            solve(&|p| binom_cdf(successes, n, p) - alpha / 2.0)
        };
        (lo, hi)
    }

    #[test]
    fn clopper_pearson_boundaries() {
        let (lo, _) = clopper_pearson(0, 100, 0.95);
        assert_eq!(lo, 0.0);
        let (_, hi) = clopper_pearson(100, 100, 0.95);
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn clopper_pearson_matches_cdf_bisection() {
        for (s, n) in [(5u64, 50u64), (1, 10), (9, 10), (17, 200)] {
            let (lo, hi) = clopper_pearson(s, n, 0.95);
            let (blo, bhi) = cp_bisect(s, n, 0.95);
            assert!((lo - blo).abs() < 1e-8, "lo {lo} vs {blo} at ({s},{n})");
            assert!((hi - bhi).abs() < 1e-8, "hi {hi} vs {bhi} at ({s},{n})");
        }
    }

    #[test]
    fn power_law_exact_cases() {
        let pts: Vec<(f64, f64)> = (1..=6).map(|i| (i as f64, 1.0 / i as f64)).collect();
        let fit = fit_power_law(&pts).unwrap();
        assert!((fit.exponent + 1.0).abs() < 1e-12);

        let pts: Vec<(f64, f64)> = (1..=6).map(|i| (i as f64, 2.5)).collect();
        let fit = fit_power_law(&pts).unwrap();
        assert_eq!(fit.exponent, 0.0);
    }

    #[test]
    fn power_law_noisy_case() {
        let mut rng = RngStream::new(5, 0);
        let pts: Vec<(f64, f64)> = (1..=12)
            .map(|i| {
                let x = i as f64;
                (x, x.powf(-0.5) * (1.0 + 0.01 * (2.0 * rng.uniform() - 1.0)))
            })
            .collect();
        let fit = fit_power_law(&pts).unwrap();
        assert!(
            fit.exponent > -0.55 && fit.exponent < -0.45,
            "exponent {}",
            fit.exponent
        );
    }

    #[test]
    fn power_law_rejects_bad_input() {
        assert!(fit_power_law(&[(1.0, 1.0), (2.0, 0.5)]).is_err());
        assert!(fit_power_law(&[(1.0, 1.0), (2.0, -0.5), (3.0, 0.25)]).is_err());
    }

    #[test]
    fn tail_fixed_vector_scales_with_phi() {
        let base = HermitianMatrix::zero(Field::Real, 8);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 8);
        let cfg = MonteCarloConfig::new(200, 3);
        let phi = Vector::real(vec![1.0, -0.5, 0.25, 0.0, 2.0, -1.0, 0.5, 1.5]).unwrap();
        let a = mc_tail_fixed_vector(&base, &spec, &phi, &[1.0, 2.0, 4.0], &cfg).unwrap();
        let b =
            mc_tail_fixed_vector(&base, &spec, &phi.scale(2.0), &[1.0, 2.0, 4.0], &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tail_fixed_vector_far_spectrum() {
        let base = HermitianMatrix::scaled_identity(Field::Real, 16, 1e6);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 16);
        let cfg = MonteCarloConfig::new(200, 4);
        let phi = Vector::basis(Field::Real, 16, 0);
        let curve = mc_tail_fixed_vector(&base, &spec, &phi, &[1.0], &cfg).unwrap();
        assert_eq!(curve.p_hat[0], 0.0);
    }

    #[test]
    fn tail_norms_dominance_and_monotonicity() {
        let base = HermitianMatrix::zero(Field::Real, 16);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 16);
        let cfg = MonteCarloConfig::new(400, 5);
        let grid = [1.0, 2.0, 4.0, 8.0];
        let (frob, op) = mc_tail_norms(&base, &spec, &grid, &cfg).unwrap();
        for i in 0..grid.len() {
            assert!(op.p_hat[i] <= frob.p_hat[i]);
        }
        for w in frob.p_hat.windows(2) {
            assert!(w[0] >= w[1]);
        }
        for w in op.p_hat.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn dos_empty_region_and_total_mass() {
        let base = HermitianMatrix::zero(Field::Real, 32);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 32);
        let cfg = MonteCarloConfig::new(200, 6);
        let far = mc_dos(&base, &spec, &[100.0, 101.0], &cfg).unwrap();
        assert_eq!(far.density[0], 0.0);

        let edges: Vec<f64> = (0..=30).map(|i| -3.0 + 0.2 * i as f64).collect();
        let dos = mc_dos(&base, &spec, &edges, &cfg).unwrap();
        let total: f64 = dos.mean_count.iter().sum();
        assert!(total >= 0.99 * 32.0, "total mean count {total}");
        assert!(total <= 32.0 + 1e-9);
    }

    #[test]
    fn dos_deterministic_across_workers() {
        let base = HermitianMatrix::zero(Field::Real, 12);
        let spec = EnsembleSpec::new(EnsembleKind::Gue, 12);
        let edges: Vec<f64> = (0..=12).map(|i| -3.0 + 0.5 * i as f64).collect();
        let a = mc_dos(
            &base,
            &spec,
            &edges,
            &MonteCarloConfig::new(300, 7).with_workers(1),
        )
        .unwrap();
        let b = mc_dos(
            &base,
            &spec,
            &edges,
            &MonteCarloConfig::new(300, 7).with_workers(3),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tail_deterministic_across_workers() {
        let base = HermitianMatrix::zero(Field::Real, 10);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 10);
        let phi = Vector::basis(Field::Real, 10, 0);
        let grid = [1.0, 2.0];
        let a = mc_tail_fixed_vector(
            &base,
            &spec,
            &phi,
            &grid,
            &MonteCarloConfig::new(257, 8).with_workers(1),
        )
        .unwrap();
        let b = mc_tail_fixed_vector(
            &base,
            &spec,
            &phi,
            &grid,
            &MonteCarloConfig::new(257, 8).with_workers(4),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn counting_tail_edge_cases() {
        let base = HermitianMatrix::zero(Field::Real, 8);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 8);
        let cfg = MonteCarloConfig::new(100, 9);
        // more eigenvalues than the dimension can hold
        let c = mc_counting_tail(&base, &spec, (-10.0, 10.0), 9, &cfg).unwrap();
        assert_eq!(c.p_hat[0], 0.0);
        // zero-width interval
        let c = mc_counting_tail(&base, &spec, (0.5, 0.5), 1, &cfg).unwrap();
        assert_eq!(c.p_hat[0], 0.0);
    }

    #[test]
    fn counting_tail_matches_manual_replay() {
        let base = HermitianMatrix::zero(Field::Real, 8);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 8);
        let cfg = MonteCarloConfig::new(150, 10);
        let interval = (-0.25, 0.25);
        let curve = mc_counting_tail(&base, &spec, interval, 1, &cfg).unwrap();
        let mut hits = 0u64;
        for i in 0..cfg.n_samples {
            let mut rng = RngStream::new(cfg.seed, i);
            let h = sample_deformed(&base, &spec, &mut rng).unwrap();
            let s = eigh(&h, false).unwrap();
            if count_half_open(s.eigenvalues(), interval.0, interval.1) >= 1 {
                hits += 1;
            }
        }
        assert_eq!(curve.p_hat[0], hits as f64 / cfg.n_samples as f64);
    }

    #[test]
    fn factorial_moment_k1_matches_dos_cell() {
        let base = HermitianMatrix::zero(Field::Real, 8);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 8);
        let cfg = MonteCarloConfig::new(200, 11);
        // non-final cell of the partition so both sides are half-open
        let edges = [-0.5, 0.5, 10.0];
        let dos = mc_dos(&base, &spec, &edges, &cfg).unwrap();
        let fm = mc_factorial_moment(&base, &spec, &[(-0.5, 0.5)], &cfg).unwrap();
        assert_eq!(fm.estimate, dos.mean_count[0]);
    }

    #[test]
    fn factorial_moment_clamps_to_zero() {
        let base = HermitianMatrix::zero(Field::Real, 8);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 8);
        let cfg = MonteCarloConfig::new(100, 12);
        let fm =
            mc_factorial_moment(&base, &spec, &[(-2.0, 2.0), (0.3, 0.3)], &cfg).unwrap();
        assert_eq!(fm.estimate, 0.0);
    }

    #[test]
    fn nested_interval_monotonicity() {
        let base = HermitianMatrix::zero(Field::Real, 12);
        let spec = EnsembleSpec::new(EnsembleKind::Goe, 12);
        let cfg = MonteCarloConfig::new(200, 13);
        let inner = mc_factorial_moment(&base, &spec, &[(-0.5, 0.5)], &cfg).unwrap();
        let outer = mc_factorial_moment(&base, &spec, &[(-1.0, 1.0)], &cfg).unwrap();
        assert!(inner.estimate <= outer.estimate);
    }

    #[test]
    fn ks_statistic_sanity() {
        let a: Vec<f64> = (0..1000).map(|i| i as f64 / 1000.0).collect();
        let b: Vec<f64> = (0..1000).map(|i| i as f64 / 1000.0 + 0.5).collect();
        assert!(two_sample_ks(&a, &a) < 1e-12);
        assert!(two_sample_ks(&a, &b) > 0.4);
        assert!(ks_critical(10_000, 10_000, 0.01) < 0.0255);
    }

    #[test]
    fn ensemble_conjugation_invariance_ks() {
        // Independent GOE samples, one conjugated by a fixed orthogonal
        // matrix, have matching spectral distributions. (Conjugation
        // preserves each draw's spectrum exactly; independent seeds make
        // this a real two-sample comparison of the sampler.)
        let n = 8;
        let draws = 10_000;
        // fixed orthogonal matrix: eigenbasis of a fixed symmetric draw,
        // flattened row-major as o[r * n + k] = (eigvec k)_r
        let omat: Vec<f64> = {
            let mut rng = RngStream::new(999, 0);
            let m = HermitianMatrix::from_rows_real(
                n,
                (0..n * n).map(|_| rng.normal()).collect(),
            )
            .unwrap();
            let s = eigh(&m, true).unwrap();
            let mut o = vec![0.0; n * n];
            for k in 0..n {
                let v = s.eigenvector(k);
                for r in 0..n {
                    o[r * n + k] = v.entry(r).re;
                }
            }
            o
        };
        let mut esd_a = Vec::with_capacity(draws * n);
        let mut esd_b = Vec::with_capacity(draws * n);
        for i in 0..draws {
            let va = crate::ensembles::sample_goe(n, &mut RngStream::new(14, i as u64));
            esd_a.extend_from_slice(eigh(&va, false).unwrap().eigenvalues());

            let vb = crate::ensembles::sample_goe(n, &mut RngStream::new(15, i as u64));
            // O V O^T in two O(n^3) passes
            let mut w = vec![0.0; n * n];
            for r in 0..n {
                for c in 0..n {
                    let mut s = 0.0;
                    for k in 0..n {
                        s += omat[r * n + k] * vb.entry(k, c).re;
                    }
                    w[r * n + c] = s;
                }
            }
            let mut rows = vec![0.0; n * n];
            for r in 0..n {
                for c in 0..n {
                    let mut s = 0.0;
                    for k in 0..n {
                        s += w[r * n + k] * omat[c * n + k];
                    }
                    rows[r * n + c] = s;
                }
            }
            let conj = HermitianMatrix::from_rows_real(n, rows).unwrap();
            esd_b.extend_from_slice(eigh(&conj, false).unwrap().eigenvalues());
        }
        let d = two_sample_ks(&esd_a, &esd_b);
        let crit = ks_critical(esd_a.len(), esd_b.len(), 0.01);
        assert!(d < crit, "KS {d} vs critical {crit}");
    }
}
