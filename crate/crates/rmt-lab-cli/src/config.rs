//! Experiment configuration: the JSON config-file schema, the matching
//! command-line flags, and the merge/validation logic. Flags override
//! file values key by key.

use std::path::PathBuf;

use clap::Args;
use rmt_lab::ensembles::{BaseMatrixSpec, EnsembleKind, EnsembleSpec};
use rmt_lab::estimators::MonteCarloConfig;
use rmt_lab::matrix::Field;
use serde::{Deserialize, Serialize};

/// The published JSON schema for config files.
pub const CONFIG_SCHEMA: &str = include_str!("../schema/config.schema.json");

/// One experiment configuration. Every field is optional here; each
/// subcommand validates that the keys it needs are present.
#[derive(Debug, Clone, Default, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields, rename_all = "kebab-case", default)]
pub struct ExperimentConfig {
    /// Ensemble kind: goe | gue | wigner-bernoulli.
    #[arg(long)]
    pub ensemble: Option<String>,
    /// Matrix dimension N.
    #[arg(long)]
    pub n: Option<usize>,
    /// Disorder strength lambda (default 1).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Base matrix: zero | scalar:<E> | proj:<eps> | counterexample:<M>
    /// | uniform-diag:<seed> | file:<path>.
    #[arg(long)]
    pub base: Option<String>,
    /// Monte Carlo sample count.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Root seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (results never depend on this). Falls back to the
    /// RMT_LAB_THREADS environment variable, then to all cores.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Two-sided confidence level in (0, 1).
    #[arg(long)]
    pub ci_level: Option<f64>,
    /// Threshold grid, comma separated (tail commands).
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    /// Epsilon grid, comma separated (small-ball).
    #[arg(long, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    /// Partition as lo,hi,cells (dos, weak-disorder).
    #[arg(long, value_delimiter = ',')]
    pub partition: Option<Vec<f64>>,
    /// Interval as lo,hi (minami-tail).
    #[arg(long, value_delimiter = ',')]
    pub interval: Option<Vec<f64>>,
    /// Intervals as lo,hi;lo,hi (minami-moment).
    #[arg(long)]
    pub intervals: Option<String>,
    /// Eigenvalue count threshold k (minami-tail).
    #[arg(long)]
    pub k: Option<u64>,
    /// Size grid, comma separated (sharpness, dos-scaling).
    #[arg(long, value_delimiter = ',')]
    pub n_grid: Option<Vec<usize>>,
    /// Lambda grid, comma separated (weak-disorder).
    #[arg(long, value_delimiter = ',')]
    pub lambda_grid: Option<Vec<f64>>,
    /// Deformation scale grid, comma separated (counterexample).
    #[arg(long, value_delimiter = ',')]
    pub m_grid: Option<Vec<f64>>,
    /// Projector exponent offset epsilon (sharpness, dos-scaling).
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Operator-norm threshold t (counterexample).
    #[arg(long)]
    pub t_threshold: Option<f64>,
    /// Ratio-problem eigenvalues, comma separated (ratio, char-fn).
    #[arg(long, value_delimiter = ',')]
    pub eigs: Option<Vec<f64>>,
    /// Ratio-problem offsets, comma separated (ratio, char-fn).
    #[arg(long, value_delimiter = ',')]
    pub offsets: Option<Vec<f64>>,
    /// Ratio-problem shift a (ratio).
    #[arg(long)]
    pub shift: Option<f64>,
    /// Rank-one parameters (rank-one).
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    /// Characteristic function arguments (char-fn).
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    /// Evaluate the analytic continuation at the contour shift (char-fn).
    #[arg(long)]
    pub shifted: Option<bool>,
    /// Scalar field: real | complex (small-ball, sample phi draws).
    #[arg(long)]
    pub field: Option<String>,
    /// Q shape: rank-one | random:<seed> | file:<path> (small-ball).
    #[arg(long)]
    pub q_shape: Option<String>,
    /// Instance count (schur-check, interlace).
    #[arg(long)]
    pub instances: Option<u64>,
    /// Sharpness case: zero | proj (sharpness).
    #[arg(long)]
    pub case: Option<String>,
    /// Acceptance criteria ids, comma separated (accept; default all).
    #[arg(long, value_delimiter = ',')]
    pub criteria: Option<Vec<usize>>,
    /// Output stem; writes <stem>.json and <stem>.csv.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Configuration error carrying the message for exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl ExperimentConfig {
    /// Layer `self` (flags) over `file` (config file), key by key.
    pub fn over(self, file: ExperimentConfig) -> ExperimentConfig {
        macro_rules! pick {
            ($field:ident) => {
                self.$field.or(file.$field)
            };
        }
        ExperimentConfig {
            ensemble: pick!(ensemble),
            n: pick!(n),
            lambda: pick!(lambda),
            base: pick!(base),
            samples: pick!(samples),
            seed: pick!(seed),
            workers: pick!(workers),
            ci_level: pick!(ci_level),
            t: pick!(t),
            eps: pick!(eps),
            partition: pick!(partition),
            interval: pick!(interval),
            intervals: pick!(intervals),
            k: pick!(k),
            n_grid: pick!(n_grid),
            lambda_grid: pick!(lambda_grid),
            m_grid: pick!(m_grid),
            epsilon: pick!(epsilon),
            t_threshold: pick!(t_threshold),
            eigs: pick!(eigs),
            offsets: pick!(offsets),
            shift: pick!(shift),
            a: pick!(a),
            b: pick!(b),
            xi: pick!(xi),
            eta: pick!(eta),
            shifted: pick!(shifted),
            field: pick!(field),
            q_shape: pick!(q_shape),
            instances: pick!(instances),
            case: pick!(case),
            criteria: pick!(criteria),
            output: pick!(output),
        }
    }

    pub fn require_n(&self) -> Result<usize, ConfigError> {
        match self.n {
            Some(n) if n >= 1 => Ok(n),
            Some(n) => Err(ConfigError(format!("n must be >= 1, got {n}"))),
            None => Err(ConfigError("missing required key `n`".into())),
        }
    }

    pub fn ensemble_kind(&self) -> Result<EnsembleKind, ConfigError> {
        match self.ensemble.as_deref().unwrap_or("goe") {
            "goe" => Ok(EnsembleKind::Goe),
            "gue" => Ok(EnsembleKind::Gue),
            "wigner-bernoulli" => Ok(EnsembleKind::WignerBernoulli),
            other => Err(ConfigError(format!(
                "unknown ensemble {other:?}; expected goe | gue | wigner-bernoulli"
            ))),
        }
    }

    pub fn ensemble_spec(&self) -> Result<EnsembleSpec, ConfigError> {
        let n = self.require_n()?;
        let mut spec = EnsembleSpec::new(self.ensemble_kind()?, n);
        if let Some(lambda) = self.lambda {
            spec = spec.with_lambda(lambda);
        }
        spec.validate()
            .map_err(|e| ConfigError(e.to_string()))?;
        Ok(spec)
    }

    /// Parse the `base` grammar into a spec. `uniform-diag:<seed>` is a
    /// CLI convenience resolved outside [`BaseMatrixSpec`].
    pub fn base_spec(&self) -> Result<ResolvedBase, ConfigError> {
        let text = self.base.as_deref().unwrap_or("zero");
        let parse_f64 = |s: &str, what: &str| {
            s.parse::<f64>()
                .map_err(|_| ConfigError(format!("bad {what} in base spec: {s:?}")))
        };
        if text == "zero" {
            return Ok(ResolvedBase::Spec(BaseMatrixSpec::Zero));
        }
        if let Some(rest) = text.strip_prefix("scalar:") {
            return Ok(ResolvedBase::Spec(BaseMatrixSpec::ScalarIdentity {
                energy: parse_f64(rest, "energy")?,
            }));
        }
        if let Some(rest) = text.strip_prefix("proj:") {
            return Ok(ResolvedBase::Spec(BaseMatrixSpec::ProjComplement {
                epsilon: parse_f64(rest, "epsilon")?,
            }));
        }
        if let Some(rest) = text.strip_prefix("counterexample:") {
            return Ok(ResolvedBase::Spec(BaseMatrixSpec::CounterexampleDiag {
                m: parse_f64(rest, "M")?,
            }));
        }
        if let Some(rest) = text.strip_prefix("uniform-diag:") {
            let seed = rest
                .parse::<u64>()
                .map_err(|_| ConfigError(format!("bad seed in base spec: {rest:?}")))?;
            return Ok(ResolvedBase::UniformDiag { seed });
        }
        if let Some(rest) = text.strip_prefix("file:") {
            return Ok(ResolvedBase::Spec(BaseMatrixSpec::FromFile {
                path: PathBuf::from(rest),
            }));
        }
        Err(ConfigError(format!(
            "unknown base {text:?}; expected zero | scalar:<E> | proj:<eps> | \
             counterexample:<M> | uniform-diag:<seed> | file:<path>"
        )))
    }

    pub fn mc_config(&self, default_samples: u64) -> Result<MonteCarloConfig, ConfigError> {
        let mut cfg = MonteCarloConfig::new(
            self.samples.unwrap_or(default_samples),
            self.seed.unwrap_or(0),
        );
        let env_workers = std::env::var("RMT_LAB_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok());
        if let Some(w) = self.workers.or(env_workers) {
            cfg = cfg.with_workers(w);
        }
        if let Some(level) = self.ci_level {
            cfg.ci_level = level;
        }
        cfg.validate().map_err(|e| ConfigError(e.to_string()))?;
        Ok(cfg)
    }

    pub fn field_kind(&self) -> Result<Field, ConfigError> {
        match self.field.as_deref().unwrap_or("real") {
            "real" => Ok(Field::Real),
            "complex" => Ok(Field::Complex),
            other => Err(ConfigError(format!(
                "unknown field {other:?}; expected real | complex"
            ))),
        }
    }

    /// Partition triple `lo,hi,cells` into explicit edges.
    pub fn partition_edges(&self) -> Result<Vec<f64>, ConfigError> {
        let p = self
            .partition
            .as_ref()
            .ok_or_else(|| ConfigError("missing required key `partition` (lo,hi,cells)".into()))?;
        if p.len() != 3 {
            return Err(ConfigError(format!(
                "partition must be lo,hi,cells; got {p:?}"
            )));
        }
        let (lo, hi, cells) = (p[0], p[1], p[2]);
        if !(cells.fract() == 0.0 && cells >= 1.0) {
            return Err(ConfigError(format!("cell count must be a positive integer, got {cells}")));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(ConfigError(format!("need lo < hi, got {lo}, {hi}")));
        }
        let cells = cells as usize;
        Ok((0..=cells)
            .map(|i| lo + (hi - lo) * i as f64 / cells as f64)
            .collect())
    }

    /// Interval list `lo,hi;lo,hi;...`.
    pub fn interval_list(&self) -> Result<Vec<(f64, f64)>, ConfigError> {
        let text = self
            .intervals
            .as_ref()
            .ok_or_else(|| ConfigError("missing required key `intervals` (lo,hi;lo,hi)".into()))?;
        let mut out = Vec::new();
        for part in text.split(';') {
            let nums: Vec<&str> = part.split(',').collect();
            if nums.len() != 2 {
                return Err(ConfigError(format!("bad interval {part:?}; expected lo,hi")));
            }
            let lo = nums[0]
                .trim()
                .parse::<f64>()
                .map_err(|_| ConfigError(format!("bad interval bound {:?}", nums[0])))?;
            let hi = nums[1]
                .trim()
                .parse::<f64>()
                .map_err(|_| ConfigError(format!("bad interval bound {:?}", nums[1])))?;
            out.push((lo, hi));
        }
        if out.is_empty() {
            return Err(ConfigError("interval list is empty".into()));
        }
        Ok(out)
    }
}

/// A base matrix request after parsing the CLI grammar.
#[derive(Debug, Clone)]
pub enum ResolvedBase {
    Spec(BaseMatrixSpec),
    UniformDiag { seed: u64 },
}

impl ResolvedBase {
    pub fn build(&self, n: usize) -> Result<rmt_lab::matrix::HermitianMatrix, rmt_lab::Error> {
        match self {
            ResolvedBase::Spec(spec) => rmt_lab::ensembles::build_base(spec, n),
            ResolvedBase::UniformDiag { seed } => Ok(rmt_lab::ensembles::uniform_diag(
                n,
                &mut rmt_lab::rng::RngStream::new(*seed, 0),
            )),
        }
    }
}

/// Load and strictly parse a JSON config file.
pub fn load_config_file(path: &PathBuf) -> Result<ExperimentConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| ConfigError(format!("{} does not match the config schema: {e}", path.display())))
}
