//! Acceptance gate: one test per criterion, each printing its pass/fail
//! line and the per-cell details.
//!
//! Run just this suite with
//! `cargo test -p rmt-lab --test acceptance -- --nocapture`.

use rmt_lab::acceptance::run_criterion;

fn run(id: usize) {
    let res = run_criterion(id).unwrap_or_else(|e| panic!("criterion {id} errored: {e}"));
    println!("{}", res.line());
    for d in &res.details {
        println!("    {d}");
    }
    assert!(
        res.passed,
        "{}\n{}",
        res.line(),
        res.details.join("\n")
    );
}

#[test]
fn criterion_01_ensemble_moments() {
    run(1);
}

#[test]
fn criterion_02_fixed_vector_tail() {
    run(2);
}

#[test]
fn criterion_03_norm_tails() {
    run(3);
}

#[test]
fn criterion_04_density_of_states() {
    run(4);
}

#[test]
fn criterion_05_counting_bounds() {
    run(5);
}

#[test]
fn criterion_06_schur_identity() {
    run(6);
}

#[test]
fn criterion_07_rank_one_ratio() {
    run(7);
}

#[test]
fn criterion_08_ratio_structure() {
    run(8);
}

#[test]
fn criterion_09_char_fn() {
    run(9);
}

#[test]
fn criterion_10_small_ball() {
    run(10);
}

#[test]
fn criterion_11_interlacing() {
    run(11);
}

#[test]
fn criterion_12_sharpness_scaling() {
    run(12);
}

#[test]
fn criterion_13_bernoulli_counterexample() {
    run(13);
}

#[test]
fn criterion_14_determinism() {
    run(14);
}
