//! Run reports and their canonical JSON form.
//!
//! Canonical JSON is compact, has object keys in sorted order, prints
//! integers as integers and every float with 15 significant digits in
//! exponent form (`2.50000000000000e-1`). Identical runs therefore produce
//! identical bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Map, Number, Value};

use crate::algorithms::deutsch::DeutschRun;
use crate::algorithms::grover::GroverRun;
use crate::algorithms::qft::{factorization_sum, qft_factorization, qft_network, QftConfig};
use crate::algorithms::shor::{ShorOutcome, ShorRun};
use crate::error::{Error, Result};
use crate::harness::suite::SuiteResult;
use crate::linalg::{fourier_matrix, StateVector};
use crate::qcpu::{postselect_aux, qcpu_of};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    pub algorithm: String,
    pub params: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    /// `[re, im]` pairs of the reported state.
    pub amplitudes: Option<Vec<[f64; 2]>>,
    pub probabilities: Option<BTreeMap<usize, f64>>,
    pub outcome: Option<Value>,
    pub residuals: BTreeMap<String, f64>,
    /// Tolerance each residual is held to.
    pub tolerances: BTreeMap<String, f64>,
    pub wall_time_ms: Option<f64>,
}

impl RunReport {
    pub fn new(algorithm: impl Into<String>) -> Self {
        Self {
            algorithm: algorithm.into(),
            ..Self::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn residual(&mut self, name: &str, value: f64, tolerance: f64) {
        self.residuals.insert(name.to_string(), value);
        self.tolerances.insert(name.to_string(), tolerance);
    }

    /// Names of residuals above their tolerance.
    pub fn violations(&self) -> Vec<String> {
        self.residuals
            .iter()
            .filter(|(name, value)| {
                let tol = self.tolerances.get(*name).copied().unwrap_or(0.0);
                value.is_nan() || **value > tol
            })
            .map(|(name, _)| name.clone())
            .collect()
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("algorithm".into(), Value::String(self.algorithm.clone()));
        obj.insert(
            "params".into(),
            Value::Object(self.params.clone().into_iter().collect()),
        );
        if let Some(seed) = self.seed {
            obj.insert("seed".into(), seed.into());
        }
        if let Some(amps) = &self.amplitudes {
            obj.insert(
                "amplitudes".into(),
                Value::Array(amps.iter().map(|[re, im]| json!([re, im])).collect()),
            );
        }
        if let Some(probs) = &self.probabilities {
            obj.insert(
                "probabilities".into(),
                Value::Object(
                    probs
                        .iter()
                        .map(|(k, v)| (k.to_string(), float(*v)))
                        .collect(),
                ),
            );
        }
        if let Some(outcome) = &self.outcome {
            obj.insert("outcome".into(), outcome.clone());
        }
        obj.insert("residuals".into(), float_map(&self.residuals));
        obj.insert("tolerances".into(), float_map(&self.tolerances));
        if let Some(ms) = self.wall_time_ms {
            obj.insert("wall_time_ms".into(), float(ms));
        }
        Value::Object(obj)
    }

    pub fn to_canonical_json(&self) -> String {
        canonical_json(&self.to_value())
    }
}

fn float(x: f64) -> Value {
    Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn float_map(m: &BTreeMap<String, f64>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.clone(), float(*v))).collect())
}

fn amplitude_pairs(state: &StateVector) -> Vec<[f64; 2]> {
    state.amplitudes().iter().map(|a| [a.re, a.im]).collect()
}

fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    // Normalises -0.0.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}

/// Compact JSON with sorted keys and fixed 15-significant-digit floats.
pub fn canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, &mut out);
    out
}

fn write_value(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format_float(n.as_f64().expect("f64")));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string")),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, key) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(key).expect("string"));
                out.push(':');
                write_value(&map[key], out);
            }
            out.push('}');
        }
    }
}

pub fn write_report(report: &RunReport, path: &Path) -> Result<()> {
    let mut text = report.to_canonical_json();
    text.push('\n');
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn deutsch_report(run: &DeutschRun, tolerance_scale: f64) -> RunReport {
    let mut report = RunReport::new("deutsch").param("function", run.function.name());
    report.amplitudes = Some(amplitude_pairs(&run.register_state));
    report.probabilities = Some(
        run.register_state
            .probabilities()
            .into_iter()
            .enumerate()
            .collect(),
    );
    report.outcome = Some(json!({
        "classification": run.classification.to_string(),
        "output": run.classification.output_bit(),
        "textbook_classification": run.textbook_classification.to_string(),
        "aux_weight": run.aux_weight,
    }));
    let tol = 1e-12 * tolerance_scale;
    report.residual("probability", (run.probability - 1.0).abs(), tol);
    report.residual(
        "textbook_probability",
        (run.textbook_probability - 1.0).abs(),
        tol,
    );
    report.residual("textbook_matrix", run.textbook_matrix_residual, tol);
    report.residual("tensor_sum", run.tensor_sum_residual, 0.0);
    report.residual(
        "route_disagreement",
        if run.routes_agree() { 0.0 } else { 1.0 },
        0.0,
    );
    report
}

pub fn shor_report(run: &ShorRun, tolerance_scale: f64) -> RunReport {
    let cfg = &run.config;
    let mut report = RunReport::new("shor")
        .param("n", cfg.composite)
        .param("a", cfg.base)
        .param("k", cfg.k)
        .param("k2", cfg.k2);
    report.seed = Some(run.seed);
    report.probabilities = Some(
        run.dft_distribution
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > crate::algorithms::shor::BRANCH_CUTOFF)
            .map(|(y, p)| (y, *p))
            .collect(),
    );
    let mut outcome = Map::new();
    outcome.insert("residue".into(), run.measured_residue.into());
    outcome.insert("residue_probability".into(), float(run.residue_probability));
    outcome.insert("y".into(), run.sampled_y.into());
    if let Ok(r) = run.period {
        outcome.insert("period".into(), r.into());
    }
    match &run.outcome {
        ShorOutcome::Factors(p, q) => {
            outcome.insert("factors".into(), json!([p, q]));
        }
        ShorOutcome::Failure(f) => {
            outcome.insert("failure".into(), f.to_string().into());
        }
    }
    report.outcome = Some(Value::Object(outcome));
    let total: f64 = run.dft_distribution.iter().sum();
    report.residual(
        "dft_normalization",
        (total - 1.0).abs(),
        1e-10 * tolerance_scale,
    );
    report.residual(
        "post_measure_normalization",
        (run.post_measure_state.norm_sqr() - 1.0).abs(),
        1e-12 * tolerance_scale,
    );
    report
}

/// Runs `Q(F)` on `|1> ⊗ |0>_A` and reports the aux-1 branch, which is
/// the Fourier image of `|1>`.
pub fn qft_report(cfg: QftConfig, tolerance_scale: f64) -> Result<RunReport> {
    let f = fourier_matrix(cfg.shape)?;
    let network = qft_network(cfg)?;
    let closed = network.closed_form()?;
    let input = StateVector::basis(2, 2 * cfg.dim())?;
    let (image, aux_weight) = postselect_aux(&closed.apply(&input)?, 1)?;

    let mut report = RunReport::new("qft").param("k", cfg.shape.qubits());
    report.amplitudes = Some(amplitude_pairs(&image));
    report.probabilities = Some(image.probabilities().into_iter().enumerate().collect());
    report.outcome = Some(json!({
        "factors": network.factors().len(),
        "aux_weight": aux_weight,
    }));
    let tol = 1e-12 * tolerance_scale;
    let sum = factorization_sum(&qft_factorization(cfg))?;
    report.residual("factorization_sum", sum.max_abs_diff(&f)?, tol);
    report.residual("unitarity", f.unitarity_residual()?, tol);
    report.residual(
        "network_vs_direct",
        closed.max_abs_diff(&qcpu_of(&f)?.closed_form()?)?,
        tol,
    );
    let column = f.apply(&StateVector::basis(1, cfg.dim())?)?;
    report.residual("image_vs_column", image.max_abs_diff(&column)?, tol);
    Ok(report)
}

/// Success probability after `t` rounds for one marked item among `n`.
pub fn amplification_formula(n: usize, t: usize) -> f64 {
    let theta = (1.0 / (n as f64).sqrt()).asin();
    ((2 * t + 1) as f64 * theta).sin().powi(2)
}

pub fn grover_report(run: &GroverRun, tolerance_scale: f64) -> RunReport {
    let cfg = &run.config;
    let mut report = RunReport::new("grover")
        .param("k", cfg.shape.qubits())
        .param("target", cfg.target)
        .param("iterations", cfg.iterations);
    report.seed = Some(run.seed);
    report.amplitudes = Some(amplitude_pairs(&run.register_state));
    report.probabilities = Some(run.distribution.iter().copied().enumerate().collect());
    report.outcome = Some(json!({
        "sampled": run.sampled,
        "success_probability": run.success_probability(),
        "aux_weight": run.aux_weight,
    }));
    let expected = amplification_formula(cfg.shape.dim(), cfg.iterations);
    report.residual(
        "amplification_formula",
        (run.success_probability() - expected).abs(),
        1e-9 * tolerance_scale,
    );
    let total: f64 = run.distribution.iter().sum();
    report.residual(
        "normalization",
        (total - 1.0).abs(),
        1e-10 * tolerance_scale,
    );
    report
}

pub fn suite_report(result: &SuiteResult, trials: usize, seed: u64) -> RunReport {
    let mut report = RunReport::new("verify")
        .param("suite", result.suite.clone())
        .param("trials", trials);
    report.seed = Some(seed);
    let failures: Vec<Value> = result
        .failures
        .iter()
        .map(|f| {
            json!({
                "case": f.case_id,
                "residual": f.residual,
                "tolerance": f.tolerance,
            })
        })
        .collect();
    report.outcome = Some(json!({
        "cases_run": result.cases_run,
        "failures": failures,
        "passed": result.passed(),
    }));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_floats_and_keys() {
        let v = json!({"b": 0.25, "a": [1, 2], "c": -0.0, "d": "x"});
        assert_eq!(
            canonical_json(&v),
            r#"{"a":[1,2],"b":2.50000000000000e-1,"c":0.00000000000000e0,"d":"x"}"#
        );
    }

    #[test]
    fn canonical_json_parses_back() {
        let v = json!({"amp": [[0.1, -0.2]], "n": 3});
        let text = canonical_json(&v);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["n"], 3);
        assert!((back["amp"][0][1].as_f64().unwrap() + 0.2).abs() < 1e-15);
    }

    #[test]
    fn missing_probabilities_are_omitted() {
        let report = RunReport::new("x");
        let text = report.to_canonical_json();
        assert!(!text.contains("probabilities"));
        assert!(!text.contains("null"));
        assert!(!text.contains("wall_time_ms"));
    }

    #[test]
    fn amplitudes_are_numeric_pairs() {
        let mut report = RunReport::new("x");
        report.amplitudes = Some(vec![[1.0, 0.0], [0.0, -0.5]]);
        let v: Value = serde_json::from_str(&report.to_canonical_json()).unwrap();
        assert!(v["amplitudes"][1][1].is_f64());
        assert_eq!(v["amplitudes"][1].as_array().unwrap().len(), 2);
    }

    #[test]
    fn violations_against_tolerances() {
        let mut report = RunReport::new("x");
        report.residual("ok", 1e-13, 1e-12);
        report.residual("bad", 1e-3, 1e-12);
        report.residual("nan", f64::NAN, 1.0);
        assert_eq!(
            report.violations(),
            vec!["bad".to_string(), "nan".to_string()]
        );
    }

    #[test]
    fn write_reports_path_on_error() {
        let err =
            write_report(&RunReport::new("x"), Path::new("/nonexistent-dir/x.json")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x.json"));
    }
}
