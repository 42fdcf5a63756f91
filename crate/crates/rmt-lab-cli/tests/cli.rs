//! End-to-end tests of the binary: exit codes, determinism of result
//! files, config-file merging, and the thin-adapter contract (CLI output
//! must equal the library result byte for byte).

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rmt-lab"))
}

fn temp_stem(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rmt-lab-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(tag)
}

#[test]
fn tail_vec_smoke_and_determinism() {
    let stem = temp_stem("tailvec");
    let args = [
        "tail-vec",
        "--ensemble",
        "goe",
        "--n",
        "16",
        "--base",
        "zero",
        "--t",
        "1,2,4,8",
        "--samples",
        "2000",
        "--seed",
        "7",
        "--output",
    ];
    let out = bin().args(args).arg(&stem).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let first = std::fs::read(stem.with_extension("csv")).unwrap();
    assert!(String::from_utf8_lossy(&first)
        .starts_with("statistic,t_or_interval,estimate,ci_lo,ci_hi,n_samples,seed"));

    // identical invocation with a different worker count: byte-identical CSV
    let out = bin()
        .args(args)
        .arg(&stem)
        .args(["--workers", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let second = std::fs::read(stem.with_extension("csv")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn invalid_dimension_exits_2() {
    let out = bin()
        .args(["tail-vec", "--n", "0", "--base", "zero"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("invalid configuration"), "stderr: {err}");
}

#[test]
fn unknown_config_key_exits_2() {
    let stem = temp_stem("badcfg");
    let cfg_path = stem.with_extension("json");
    std::fs::write(&cfg_path, r#"{"n": 8, "no-such-key": 1}"#).unwrap();
    let out = bin()
        .args(["tail-vec", "--config"])
        .arg(&cfg_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("schema"), "stderr: {err}");
}

#[test]
fn cli_matches_library_exactly() {
    // the CLI must be a thin adapter: its CSV equals the library result
    let stem = temp_stem("thin");
    let out = bin()
        .args([
            "tail-norm",
            "--ensemble",
            "gue",
            "--n",
            "12",
            "--base",
            "scalar:0.5",
            "--t",
            "1,2,4",
            "--samples",
            "500",
            "--seed",
            "11",
            "--output",
        ])
        .arg(&stem)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let cli_csv = std::fs::read_to_string(stem.with_extension("csv")).unwrap();

    let base = rmt_lab::ensembles::build_base(
        &rmt_lab::ensembles::BaseMatrixSpec::ScalarIdentity { energy: 0.5 },
        12,
    )
    .unwrap();
    let spec = rmt_lab::ensembles::EnsembleSpec::new(rmt_lab::ensembles::EnsembleKind::Gue, 12);
    let cfg = rmt_lab::estimators::MonteCarloConfig::new(500, 11);
    let (frob, op) =
        rmt_lab::estimators::mc_tail_norms(&base, &spec, &[1.0, 2.0, 4.0], &cfg).unwrap();
    let mut rows = rmt_lab::report::tail_rows("tail_frobenius", &frob, 11);
    rows.extend(rmt_lab::report::tail_rows("tail_operator", &op, 11));
    let lib_csv = rmt_lab::report::to_csv(&rows);
    assert_eq!(cli_csv, lib_csv);
}

#[test]
fn config_file_with_flag_override() {
    let stem = temp_stem("merge");
    let cfg_path = stem.with_extension("config.json");
    std::fs::write(
        &cfg_path,
        r#"{
            "ensemble": "goe",
            "n": 10,
            "base": "zero",
            "t": [1, 2],
            "samples": 400,
            "seed": 3
        }"#,
    )
    .unwrap();
    // flag overrides the file's seed
    let out = bin()
        .args(["tail-vec", "--config"])
        .arg(&cfg_path)
        .args(["--seed", "9", "--output"])
        .arg(&stem)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(stem.with_extension("json")).unwrap())
            .unwrap();
    assert_eq!(report["seed"], 9);
    assert_eq!(report["inputs"]["n"], 10);
    let csv = std::fs::read_to_string(stem.with_extension("csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().ends_with(",400,9"));
}

#[test]
fn sample_writes_matrix_file() {
    let stem = temp_stem("sample");
    let out = bin()
        .args([
            "sample",
            "--ensemble",
            "gue",
            "--n",
            "6",
            "--base",
            "proj:0.1",
            "--seed",
            "2",
            "--output",
        ])
        .arg(&stem)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(stem.with_extension("hmat")).unwrap();
    assert!(text.starts_with("hmat complex 6"));
    let m = rmt_lab::matrix::HermitianMatrix::from_text(&text).unwrap();
    assert_eq!(m.dim(), 6);
}

#[test]
fn accept_single_fast_criterion() {
    let stem = temp_stem("accept");
    let out = bin()
        .args(["accept", "--criteria", "11", "--output"])
        .arg(&stem)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("criterion 11"), "stdout: {text}");
    assert!(text.contains("PASS"), "stdout: {text}");
}

#[test]
fn print_schema() {
    let out = bin().args(["--print-config-schema"]).output().unwrap();
    assert!(out.status.success());
    let schema: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(schema["title"], "rmt-lab experiment configuration");
}
