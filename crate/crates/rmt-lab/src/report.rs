//! Result serialization: one JSON report per run plus a flat CSV with
//! the fixed schema
//! `statistic, t_or_interval, estimate, ci_lo, ci_hi, n_samples, seed`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::estimators::{DosEstimate, FactorialMomentResult, PowerLawFit, TailCurve};
use crate::Result;

/// Fixed CSV header shared by every command.
pub const CSV_HEADER: &str = "statistic,t_or_interval,estimate,ci_lo,ci_hi,n_samples,seed";

/// One flat result row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRow {
    pub statistic: String,
    pub t_or_interval: String,
    pub estimate: f64,
    pub ci_lo: Option<f64>,
    pub ci_hi: Option<f64>,
    pub n_samples: u64,
    pub seed: u64,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Render rows under the fixed header.
pub fn to_csv(rows: &[CsvRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.statistic,
            r.t_or_interval,
            r.estimate,
            opt(r.ci_lo),
            opt(r.ci_hi),
            r.n_samples,
            r.seed
        );
    }
    out
}

/// Rows for a tail curve, one per threshold.
pub fn tail_rows(statistic: &str, curve: &TailCurve, seed: u64) -> Vec<CsvRow> {
    curve
        .thresholds
        .iter()
        .enumerate()
        .map(|(i, t)| CsvRow {
            statistic: statistic.to_string(),
            t_or_interval: t.to_string(),
            estimate: curve.p_hat[i],
            ci_lo: Some(curve.ci_lo[i]),
            ci_hi: Some(curve.ci_hi[i]),
            n_samples: curve.n_samples,
            seed,
        })
        .collect()
}

/// Rows for a density estimate, one per partition cell.
pub fn dos_rows(statistic: &str, dos: &DosEstimate, seed: u64) -> Vec<CsvRow> {
    (0..dos.density.len())
        .map(|i| CsvRow {
            statistic: statistic.to_string(),
            t_or_interval: format!("[{},{})", dos.edges[i], dos.edges[i + 1]),
            estimate: dos.density[i],
            ci_lo: Some(dos.density[i] - (dos.density_ci_hi[i] - dos.density[i])),
            ci_hi: Some(dos.density_ci_hi[i]),
            n_samples: dos.n_samples,
            seed,
        })
        .collect()
}

/// Row for a factorial-moment estimate.
pub fn moment_row(statistic: &str, fm: &FactorialMomentResult, seed: u64) -> CsvRow {
    let label = fm
        .intervals
        .iter()
        .map(|(a, b)| format!("[{a},{b})"))
        .collect::<Vec<_>>()
        .join("x");
    CsvRow {
        statistic: statistic.to_string(),
        t_or_interval: label,
        estimate: fm.estimate,
        ci_lo: Some(fm.estimate - fm.std_error),
        ci_hi: Some(fm.estimate + fm.std_error),
        n_samples: fm.n_samples,
        seed,
    }
}

/// Row for a fitted power-law exponent.
pub fn fit_row(statistic: &str, fit: &PowerLawFit, n_samples: u64, seed: u64) -> CsvRow {
    CsvRow {
        statistic: statistic.to_string(),
        t_or_interval: "exponent".to_string(),
        estimate: fit.exponent,
        ci_lo: Some(fit.exponent - fit.std_error),
        ci_hi: Some(fit.exponent + fit.std_error),
        n_samples,
        seed,
    }
}

/// Row for a plain scalar quantity.
pub fn scalar_row(
    statistic: &str,
    label: &str,
    estimate: f64,
    ci: Option<(f64, f64)>,
    n_samples: u64,
    seed: u64,
) -> CsvRow {
    CsvRow {
        statistic: statistic.to_string(),
        t_or_interval: label.to_string(),
        estimate,
        ci_lo: ci.map(|c| c.0),
        ci_hi: ci.map(|c| c.1),
        n_samples,
        seed,
    }
}

/// The JSON report for one run: echoed inputs, structured results,
/// fitted constants, wall clock, and the seed.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: serde_json::Value,
    pub seed: u64,
    pub results: serde_json::Value,
    pub fitted_constants: BTreeMap<String, f64>,
    pub wall_clock_seconds: f64,
}

impl Report {
    pub fn new(command: &str, inputs: serde_json::Value, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            seed,
            results: serde_json::Value::Null,
            fitted_constants: BTreeMap::new(),
            wall_clock_seconds: 0.0,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Write `<stem>.json` and `<stem>.csv`.
    pub fn write(&self, stem: &Path, rows: &[CsvRow]) -> Result<()> {
        if let Some(parent) = stem.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        std::fs::write(stem.with_extension("json"), self.to_json_pretty())?;
        std::fs::write(stem.with_extension("csv"), to_csv(rows))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_is_stable_and_headers_fixed() {
        let rows = vec![
            CsvRow {
                statistic: "tail_fixed_vector".into(),
                t_or_interval: "2".into(),
                estimate: 0.125,
                ci_lo: Some(0.1),
                ci_hi: Some(0.15),
                n_samples: 1000,
                seed: 7,
            },
            CsvRow {
                statistic: "fit".into(),
                t_or_interval: "exponent".into(),
                estimate: -1.0,
                ci_lo: None,
                ci_hi: None,
                n_samples: 0,
                seed: 7,
            },
        ];
        let text = to_csv(&rows);
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(text, to_csv(&rows));
        assert!(text.contains("tail_fixed_vector,2,0.125,0.1,0.15,1000,7"));
        assert!(text.contains("fit,exponent,-1,,,0,7"));
    }

    #[test]
    fn report_json_contains_sections() {
        let mut rep = Report::new("dos", serde_json::json!({"n": 64}), 9);
        rep.fitted_constants.insert("sup_density".into(), 0.32);
        let text = rep.to_json_pretty();
        assert!(text.contains("\"command\": \"dos\""));
        assert!(text.contains("\"sup_density\": 0.32"));
        assert!(text.contains("\"wall_clock_seconds\""));
    }
}
