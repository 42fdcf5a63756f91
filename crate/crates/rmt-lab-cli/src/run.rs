//! Subcommand handlers: validate the merged configuration, call the
//! library, and write the JSON + CSV report.

use std::path::PathBuf;
use std::time::Instant;

use rmt_lab::acceptance;
use rmt_lab::ensembles::{sample_deformed, sample_goe, sample_gue, uniform_diag};
use rmt_lab::estimators::{
    mc_counting_tail, mc_dos, mc_factorial_moment, mc_tail_fixed_vector, mc_tail_norms,
};
use rmt_lab::experiments::{
    bernoulli_counterexample, dos_scaling_contrast, sharpness_scan, weak_disorder_scan,
    SharpnessCase,
};
use rmt_lab::lemmas::{
    char_fn, check_interlacing, compute_reorder_r, direct_inverse_column_norm,
    mc_ratio_quadratic, mc_rank_one_ratio, mc_small_ball, schur_inverse_column, RatioProblem,
};
use rmt_lab::matrix::{Field, HermitianMatrix, Vector};
use rmt_lab::report::{dos_rows, fit_row, moment_row, scalar_row, tail_rows, CsvRow, Report};
use rmt_lab::rng::RngStream;

use crate::config::{ConfigError, ExperimentConfig};
use crate::CliFailure;

pub fn dispatch(name: &str, cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    match name {
        "sample" => sample(cfg),
        "tail-vec" => tail_vec(cfg),
        "tail-norm" => tail_norm(cfg),
        "dos" => dos(cfg),
        "minami-tail" => minami_tail(cfg),
        "minami-moment" => minami_moment(cfg),
        "ratio" => ratio(cfg),
        "rank-one" => rank_one(cfg),
        "small-ball" => small_ball(cfg),
        "char-fn" => char_fn_cmd(cfg),
        "schur-check" => schur_check(cfg),
        "interlace" => interlace(cfg),
        "sharpness" => sharpness(cfg),
        "dos-scaling" => dos_scaling(cfg),
        "counterexample" => counterexample(cfg),
        "weak-disorder" => weak_disorder(cfg),
        "accept" => accept(cfg),
        other => Err(CliFailure::Config(format!("unknown command {other:?}"))),
    }
}

fn output_stem(cfg: &ExperimentConfig, command: &str) -> PathBuf {
    cfg.output
        .clone()
        .unwrap_or_else(|| PathBuf::from("rmt-out").join(command))
}

/// Echo only the keys the user actually set.
fn echo_inputs(cfg: &ExperimentConfig) -> serde_json::Value {
    let mut value = serde_json::to_value(cfg).expect("config serializes");
    if let serde_json::Value::Object(map) = &mut value {
        map.retain(|_, v| !v.is_null());
    }
    value
}

fn finish(
    command: &str,
    cfg: &ExperimentConfig,
    seed: u64,
    results: serde_json::Value,
    fitted: Vec<(&str, f64)>,
    rows: Vec<CsvRow>,
    started: Instant,
) -> Result<(), CliFailure> {
    let mut report = Report::new(command, echo_inputs(cfg), seed);
    report.results = results;
    for (k, v) in fitted {
        report.fitted_constants.insert(k.to_string(), v);
    }
    report.wall_clock_seconds = started.elapsed().as_secs_f64();
    let stem = output_stem(cfg, command);
    report.write(&stem, &rows)?;
    println!(
        "{command}: wrote {}.json and {}.csv ({:.2}s)",
        stem.display(),
        stem.display(),
        report.wall_clock_seconds
    );
    Ok(())
}

fn default_t_grid(cfg: &ExperimentConfig) -> Vec<f64> {
    cfg.t.clone().unwrap_or_else(|| vec![1.0, 2.0, 4.0, 8.0])
}

fn sample(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let spec = cfg.ensemble_spec()?;
    let base = cfg.base_spec()?.build(spec.n)?;
    let seed = cfg.seed.unwrap_or(0);
    let mut rng = RngStream::new(seed, 0);
    let h = sample_deformed(&base, &spec, &mut rng)?;
    let stem = output_stem(cfg, "sample");
    if let Some(parent) = stem.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(rmt_lab::Error::from)?;
        }
    }
    let matrix_path = stem.with_extension("hmat");
    h.store(&matrix_path)?;
    let rows = vec![scalar_row(
        "frobenius_norm",
        "H",
        h.frobenius_norm(),
        None,
        1,
        seed,
    )];
    finish(
        "sample",
        cfg,
        seed,
        serde_json::json!({
            "matrix_file": matrix_path.display().to_string(),
            "dim": h.dim(),
            "field": h.field().to_string(),
            "frobenius_norm": h.frobenius_norm(),
        }),
        vec![],
        rows,
        started,
    )
}

fn tail_vec(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let spec = cfg.ensemble_spec()?;
    let base = cfg.base_spec()?.build(spec.n)?;
    let mc = cfg.mc_config(20_000)?;
    let t_grid = default_t_grid(cfg);
    let phi = Vector::basis(Field::Real, spec.n, 0);
    let curve = mc_tail_fixed_vector(&base, &spec, &phi, &t_grid, &mc)?;
    let fitted = curve.fitted_constant();
    let rows = tail_rows("tail_fixed_vector", &curve, mc.seed);
    finish(
        "tail-vec",
        cfg,
        mc.seed,
        serde_json::to_value(&curve).expect("serializes"),
        vec![("tail_constant", fitted)],
        rows,
        started,
    )
}

fn tail_norm(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let spec = cfg.ensemble_spec()?;
    let base = cfg.base_spec()?.build(spec.n)?;
    let mc = cfg.mc_config(20_000)?;
    let t_grid = default_t_grid(cfg);
    let (frob, op) = mc_tail_norms(&base, &spec, &t_grid, &mc)?;
    let mut rows = tail_rows("tail_frobenius", &frob, mc.seed);
    rows.extend(tail_rows("tail_operator", &op, mc.seed));
    let fitted = vec![
        ("frobenius_tail_constant", frob.fitted_constant()),
        ("operator_tail_constant", op.fitted_constant()),
    ];
    finish(
        "tail-norm",
        cfg,
        mc.seed,
        serde_json::json!({ "frobenius": frob, "operator": op }),
        fitted,
        rows,
        started,
    )
}

fn dos(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let spec = cfg.ensemble_spec()?;
    let base = cfg.base_spec()?.build(spec.n)?;
    let mc = cfg.mc_config(5_000)?;
    let edges = cfg.partition_edges()?;
    let est = mc_dos(&base, &spec, &edges, &mc)?;
    let rows = dos_rows("dos_density", &est, mc.seed);
    let fitted = vec![
        ("sup_density", est.sup_density()),
        ("sup_density_ci_hi", est.sup_density_ci_hi()),
    ];
    finish(
        "dos",
        cfg,
        mc.seed,
        serde_json::to_value(&est).expect("serializes"),
        fitted,
        rows,
        started,
    )
}

fn minami_tail(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let spec = cfg.ensemble_spec()?;
    let base = cfg.base_spec()?.build(spec.n)?;
    let mc = cfg.mc_config(20_000)?;
    let interval = cfg
        .interval
        .as_ref()
        .filter(|v| v.len() == 2)
        .map(|v| (v[0], v[1]))
        .ok_or_else(|| ConfigError("missing required key `interval` (lo,hi)".into()))?;
    let k = cfg.k.unwrap_or(2);
    let curve = mc_counting_tail(&base, &spec, interval, k, &mc)?;
    let rows = vec![scalar_row(
        "counting_tail",
        &format!("[{},{}):k={k}", interval.0, interval.1),
        curve.p_hat[0],
        Some((curve.ci_lo[0], curve.ci_hi[0])),
        mc.n_samples,
        mc.seed,
    )];
    finish(
        "minami-tail",
        cfg,
        mc.seed,
        serde_json::to_value(&curve).expect("serializes"),
        vec![],
        rows,
        started,
    )
}

fn minami_moment(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let spec = cfg.ensemble_spec()?;
    let base = cfg.base_spec()?.build(spec.n)?;
    let mc = cfg.mc_config(20_000)?;
    let intervals = cfg.interval_list()?;
    let fm = mc_factorial_moment(&base, &spec, &intervals, &mc)?;
    let rows = vec![moment_row("factorial_moment", &fm, mc.seed)];
    finish(
        "minami-moment",
        cfg,
        mc.seed,
        serde_json::to_value(&fm).expect("serializes"),
        vec![],
        rows,
        started,
    )
}

fn ratio(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let eigs = cfg
        .eigs
        .clone()
        .ok_or_else(|| ConfigError("missing required key `eigs`".into()))?;
    let offsets = cfg.offsets.clone().unwrap_or_else(|| vec![0.0; eigs.len()]);
    let problem = RatioProblem::new(eigs, offsets, cfg.shift.unwrap_or(0.0))?;
    let mc = cfg.mc_config(100_000)?;
    let t_grid = default_t_grid(cfg);
    let curve = mc_ratio_quadratic(&problem, &t_grid, &mc)?;
    let fitted = curve.fitted_constant();
    let rows = tail_rows("ratio_quadratic", &curve, mc.seed);
    finish(
        "ratio",
        cfg,
        mc.seed,
        serde_json::json!({ "problem": problem, "curve": curve }),
        vec![("tail_constant", fitted)],
        rows,
        started,
    )
}

fn rank_one(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let mc = cfg.mc_config(100_000)?;
    let t_grid = default_t_grid(cfg);
    let (a, b) = (cfg.a.unwrap_or(0.0), cfg.b.unwrap_or(0.0));
    let curve = mc_rank_one_ratio(a, b, &t_grid, &mc)?;
    let fitted = curve.fitted_constant();
    let rows = tail_rows("rank_one_ratio", &curve, mc.seed);
    finish(
        "rank-one",
        cfg,
        mc.seed,
        serde_json::to_value(&curve).expect("serializes"),
        vec![
            ("tail_constant", fitted),
            ("bound_constant", (8.0 / std::f64::consts::PI).sqrt()),
        ],
        rows,
        started,
    )
}

fn small_ball(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let n = cfg.require_n()?;
    let field = cfg.field_kind()?;
    let q = match cfg.q_shape.as_deref().unwrap_or("rank-one") {
        "rank-one" => {
            let mut rows = vec![0.0; n * n];
            rows[0] = 1.0;
            HermitianMatrix::from_rows_real(n, rows)?
        }
        shape => {
            if let Some(seed) = shape.strip_prefix("random:") {
                let seed: u64 = seed
                    .parse()
                    .map_err(|_| ConfigError(format!("bad seed in q-shape {shape:?}")))?;
                let mut rng = RngStream::new(seed, 0);
                match field {
                    Field::Real => sample_goe(n, &mut rng),
                    Field::Complex => sample_gue(n, &mut rng),
                }
            } else if let Some(path) = shape.strip_prefix("file:") {
                HermitianMatrix::load(std::path::Path::new(path))?
            } else {
                return Err(CliFailure::Config(format!(
                    "unknown q-shape {shape:?}; expected rank-one | random:<seed> | file:<path>"
                )));
            }
        }
    };
    let mc = cfg.mc_config(20_000)?;
    let eps = cfg.eps.clone().unwrap_or_else(|| vec![0.02, 0.1, 0.5]);
    let curve = mc_small_ball(&q, &eps, field, &mc)?;
    let worst = curve
        .thresholds
        .iter()
        .zip(&curve.ci_lo)
        .map(|(e, lo)| lo / (5.0 * e))
        .fold(0.0f64, f64::max);
    let rows = tail_rows("small_ball", &curve, mc.seed);
    finish(
        "small-ball",
        cfg,
        mc.seed,
        serde_json::to_value(&curve).expect("serializes"),
        vec![("max_ci_lo_over_5eps", worst)],
        rows,
        started,
    )
}

fn char_fn_cmd(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let eigs = cfg
        .eigs
        .clone()
        .ok_or_else(|| ConfigError("missing required key `eigs`".into()))?;
    let offsets = cfg.offsets.clone().unwrap_or_else(|| vec![0.0; eigs.len()]);
    let params = compute_reorder_r(&eigs, &offsets)?;
    let (xi, eta) = (cfg.xi.unwrap_or(0.0), cfg.eta.unwrap_or(0.0));
    let shifted = cfg.shifted.unwrap_or(false);
    let value = char_fn(&params, xi, eta, shifted);
    let seed = cfg.seed.unwrap_or(0);
    let rows = vec![
        scalar_row("char_fn_re", &format!("({xi},{eta})"), value.re, None, 0, seed),
        scalar_row("char_fn_im", &format!("({xi},{eta})"), value.im, None, 0, seed),
        scalar_row("char_fn_abs", &format!("({xi},{eta})"), value.norm(), None, 0, seed),
    ];
    finish(
        "char-fn",
        cfg,
        seed,
        serde_json::json!({
            "params": params,
            "xi": xi,
            "eta": eta,
            "shifted": shifted,
            "value": { "re": value.re, "im": value.im, "abs": value.norm() },
        }),
        vec![],
        rows,
        started,
    )
}

fn schur_check(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let spec = cfg.ensemble_spec()?;
    let instances = cfg.instances.unwrap_or(200);
    let seed = cfg.seed.unwrap_or(0);
    let mut worst: f64 = 0.0;
    for inst in 0..instances {
        let mut rng = RngStream::new(RngStream::derive_seed(seed, inst), 0);
        let base = uniform_diag(spec.n, &mut rng);
        let h = sample_deformed(&base, &spec, &mut rng)?;
        let via_schur = schur_inverse_column(&h)?;
        let direct = direct_inverse_column_norm(&h)?;
        worst = worst.max((via_schur - direct).abs() / direct);
    }
    let rows = vec![scalar_row(
        "schur_worst_rel_error",
        &format!("instances={instances}"),
        worst,
        None,
        instances,
        seed,
    )];
    println!("schur-check: worst relative error {worst:.3e} over {instances} instances");
    finish(
        "schur-check",
        cfg,
        seed,
        serde_json::json!({ "instances": instances, "worst_rel_error": worst }),
        vec![("worst_rel_error", worst)],
        rows,
        started,
    )
}

fn interlace(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let spec = cfg.ensemble_spec()?;
    let instances = cfg.instances.unwrap_or(100);
    let seed = cfg.seed.unwrap_or(0);
    let mut worst: f64 = 0.0;
    let mut all = true;
    for inst in 0..instances {
        let mut rng = RngStream::new(RngStream::derive_seed(seed, inst), 0);
        let h = rmt_lab::ensembles::sample_ensemble(spec.kind, spec.n, &mut rng);
        let phi = match h.field() {
            Field::Real => Vector::real((0..spec.n).map(|_| rng.normal()).collect()),
            Field::Complex => Vector::complex(
                (0..spec.n)
                    .map(|_| num_complex_pair(&mut rng))
                    .collect(),
            ),
        }?;
        let rep = check_interlacing(&h, &phi)?;
        worst = worst.max(rep.max_violation);
        all &= rep.holds;
    }
    let rows = vec![scalar_row(
        "interlacing_max_violation",
        &format!("instances={instances}"),
        worst,
        None,
        instances,
        seed,
    )];
    println!(
        "interlace: {} over {instances} instances (max violation {worst:.3e})",
        if all { "all hold" } else { "VIOLATIONS FOUND" }
    );
    finish(
        "interlace",
        cfg,
        seed,
        serde_json::json!({ "instances": instances, "all_hold": all, "max_violation": worst }),
        vec![],
        rows,
        started,
    )
}

fn num_complex_pair(rng: &mut RngStream) -> rmt_lab::Complex64 {
    rmt_lab::Complex64::new(rng.normal(), rng.normal())
}

fn sharpness(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let case = match cfg.case.as_deref().unwrap_or("zero") {
        "zero" => SharpnessCase::ZeroBase,
        "proj" => SharpnessCase::ProjBase {
            epsilon: cfg.epsilon.unwrap_or(0.1),
        },
        other => {
            return Err(CliFailure::Config(format!(
                "unknown case {other:?}; expected zero | proj"
            )))
        }
    };
    let kind = cfg.ensemble_kind()?;
    let n_grid = cfg
        .n_grid
        .clone()
        .unwrap_or_else(|| vec![32, 64, 128, 256]);
    let mc = cfg.mc_config(200)?;
    let result = sharpness_scan(case, kind, &n_grid, &mc)?;
    let mut rows = Vec::new();
    for (i, n) in result.n_grid.iter().enumerate() {
        let label = format!("N={n}");
        rows.push(scalar_row("median_dist", &label, result.median_dist[i], None, mc.n_samples, mc.seed));
        rows.push(scalar_row("median_overlap", &label, result.median_overlap[i], None, mc.n_samples, mc.seed));
        rows.push(scalar_row("median_inv_ratio", &label, result.median_inv_ratio[i], None, mc.n_samples, mc.seed));
    }
    rows.push(fit_row("dist_exponent", &result.dist_fit, mc.n_samples, mc.seed));
    rows.push(fit_row("overlap_exponent", &result.overlap_fit, mc.n_samples, mc.seed));
    let fitted = vec![
        ("dist_exponent", result.dist_fit.exponent),
        ("overlap_exponent", result.overlap_fit.exponent),
    ];
    finish(
        "sharpness",
        cfg,
        mc.seed,
        serde_json::to_value(&result).expect("serializes"),
        fitted,
        rows,
        started,
    )
}

fn dos_scaling(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let kind = cfg.ensemble_kind()?;
    let n_grid = cfg
        .n_grid
        .clone()
        .unwrap_or_else(|| vec![32, 64, 128, 256]);
    let mc = cfg.mc_config(600)?;
    let result = dos_scaling_contrast(cfg.epsilon.unwrap_or(0.1), kind, &n_grid, &mc)?;
    let mut rows = Vec::new();
    for (i, n) in result.n_grid.iter().enumerate() {
        let label = format!("N={n}");
        rows.push(scalar_row("zero_count_per_len", &label, result.zero_count_per_len[i], None, mc.n_samples, mc.seed));
        rows.push(scalar_row("proj_count_per_len", &label, result.proj_count_per_len[i], None, mc.n_samples, mc.seed));
    }
    rows.push(fit_row("zero_exponent", &result.zero_fit, mc.n_samples, mc.seed));
    rows.push(fit_row("proj_exponent", &result.proj_fit, mc.n_samples, mc.seed));
    let fitted = vec![
        ("zero_exponent", result.zero_fit.exponent),
        ("proj_exponent", result.proj_fit.exponent),
    ];
    finish(
        "dos-scaling",
        cfg,
        mc.seed,
        serde_json::to_value(&result).expect("serializes"),
        fitted,
        rows,
        started,
    )
}

fn counterexample(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let n = cfg.n.unwrap_or(32);
    let m_grid = cfg
        .m_grid
        .clone()
        .unwrap_or_else(|| vec![1.0, 10.0, 1e3, 1e6]);
    let t = cfg.t_threshold.unwrap_or(1e3);
    let mc = cfg.mc_config(10_000)?;
    let result = bernoulli_counterexample(n, &m_grid, t, &mc)?;
    let mut rows = Vec::new();
    for p in &result.points {
        rows.push(scalar_row(
            "counterexample_unconditional",
            &format!("M={}", p.m),
            p.p_unconditional,
            Some(p.unconditional_ci),
            mc.n_samples,
            mc.seed,
        ));
        rows.push(scalar_row(
            "counterexample_conditional",
            &format!("M={}", p.m),
            p.p_conditional,
            Some(p.conditional_ci),
            p.n_conditioning,
            mc.seed,
        ));
    }
    finish(
        "counterexample",
        cfg,
        mc.seed,
        serde_json::to_value(&result).expect("serializes"),
        vec![],
        rows,
        started,
    )
}

fn weak_disorder(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let n = cfg.require_n()?;
    let kind = cfg.ensemble_kind()?;
    let base = cfg.base_spec()?.build(n)?;
    let lambda_grid = cfg
        .lambda_grid
        .clone()
        .unwrap_or_else(|| vec![0.25, 0.5, 1.0]);
    let mc = cfg.mc_config(2_000)?;
    let result = weak_disorder_scan(&base, kind, &lambda_grid, &mc)?;
    let mut rows = Vec::new();
    for (i, lambda) in result.lambda_grid.iter().enumerate() {
        let label = format!("lambda={lambda}");
        rows.push(scalar_row(
            "sup_density",
            &label,
            result.sup_density[i],
            Some((result.sup_density[i], result.sup_density_ci_hi[i])),
            mc.n_samples,
            mc.seed,
        ));
        rows.push(scalar_row(
            "tail_constant",
            &label,
            result.tail_constant[i],
            None,
            mc.n_samples,
            mc.seed,
        ));
    }
    let mut fitted = Vec::new();
    if let Some(fit) = &result.density_fit {
        rows.push(fit_row("sup_density_exponent", fit, mc.n_samples, mc.seed));
        fitted.push(("sup_density_exponent", fit.exponent));
    }
    finish(
        "weak-disorder",
        cfg,
        mc.seed,
        serde_json::to_value(&result).expect("serializes"),
        fitted,
        rows,
        started,
    )
}

fn accept(cfg: &ExperimentConfig) -> Result<(), CliFailure> {
    let started = Instant::now();
    let ids: Vec<usize> = match &cfg.criteria {
        Some(ids) => {
            for id in ids {
                if !(1..=14).contains(id) {
                    return Err(CliFailure::Config(format!(
                        "criterion ids must lie in 1..=14, got {id}"
                    )));
                }
            }
            ids.clone()
        }
        None => (1..=14).collect(),
    };
    let mut rows = Vec::new();
    let mut results = Vec::new();
    let mut failures = 0usize;
    for id in ids {
        let res = acceptance::run_criterion(id)?;
        println!("{}", res.line());
        for d in &res.details {
            println!("    {d}");
        }
        if !res.passed {
            failures += 1;
        }
        rows.push(scalar_row(
            "acceptance",
            res.name,
            if res.passed { 1.0 } else { 0.0 },
            None,
            0,
            cfg.seed.unwrap_or(0),
        ));
        results.push(serde_json::json!({
            "id": res.id,
            "name": res.name,
            "passed": res.passed,
            "details": res.details,
        }));
    }
    finish(
        "accept",
        cfg,
        cfg.seed.unwrap_or(0),
        serde_json::Value::Array(results),
        vec![],
        rows,
        started,
    )?;
    if failures > 0 {
        return Err(CliFailure::CriteriaFailed(failures));
    }
    Ok(())
}
