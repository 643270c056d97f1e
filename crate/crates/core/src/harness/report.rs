//! CSV and JSON encodings of scaling reports and per-iteration traces.
//!
//! Reals are written with exactly 9 fractional digits, JSON keys are sorted,
//! lines end in `\n`. Output is a pure function of the report.
//!
//! Scaling CSV:
//!
//! ```text
//! model,N,k_half,probability_at_k
//! quantum,1024,13,0.558355923
//! #failed,quantum,8,threshold-not-reached
//! #fit,quantum,0.500000000,-0.123456789,0.999900000
//! ```
//!
//! Run metadata (threshold, seed, brute-force trial count) and fit point
//! counts are carried by the JSON form only.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

use super::fit::FitResult;
use super::scaling::{PointFailure, ScalingPoint, ScalingReport};
use super::{HarnessError, Model};
use crate::classical::AntTrace;
use crate::quantum::GroverTrace;

pub const SCALING_HEADER: &str = "model,N,k_half,probability_at_k";
pub const TRACE_HEADER: &str = "k,target_weight,total_or_norm,probability";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv|json)")),
        }
    }
}

pub fn fixed(x: f64) -> String {
    format!("{x:.9}")
}

fn quantize(x: f64) -> f64 {
    fixed(x).parse().unwrap_or(x)
}

fn fixed_number(x: f64) -> Value {
    // arbitrary_precision keeps the literal digits, trailing zeros included
    Value::Number(Number::from_str(&fixed(x)).expect("finite float formats as a JSON number"))
}

impl ScalingReport {
    /// The report as it reads back after a write: reals rounded to 9 digits.
    pub fn quantized(&self) -> Self {
        let mut out = self.clone();
        out.threshold = quantize(out.threshold);
        for p in &mut out.points {
            p.probability_at_k = quantize(p.probability_at_k);
        }
        for f in &mut out.fits {
            f.slope = quantize(f.slope);
            f.intercept = quantize(f.intercept);
            f.r_squared = quantize(f.r_squared);
        }
        out
    }
}

pub fn to_csv(report: &ScalingReport) -> String {
    let mut out = String::new();
    out.push_str(SCALING_HEADER);
    out.push('\n');
    for p in &report.points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            p.model,
            p.n,
            p.k_half,
            fixed(p.probability_at_k)
        );
    }
    for f in &report.failures {
        let _ = writeln!(out, "#failed,{},{},{}", f.model, f.n, f.reason);
    }
    for f in &report.fits {
        let _ = writeln!(
            out,
            "#fit,{},{},{},{}",
            f.model,
            fixed(f.slope),
            fixed(f.intercept),
            fixed(f.r_squared)
        );
    }
    out
}

pub fn to_json(report: &ScalingReport) -> String {
    let points: Vec<Value> = report
        .points
        .iter()
        .map(|p| {
            json!({
                "model": p.model.as_str(),
                "N": p.n,
                "k_half": p.k_half,
                "probability_at_k": fixed_number(p.probability_at_k),
            })
        })
        .collect();
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| json!({ "model": f.model.as_str(), "N": f.n, "reason": f.reason }))
        .collect();
    let fits: Vec<Value> = report
        .fits
        .iter()
        .map(|f| {
            json!({
                "model": f.model.as_str(),
                "slope": fixed_number(f.slope),
                "intercept": fixed_number(f.intercept),
                "r_squared": fixed_number(f.r_squared),
                "point_count": f.point_count,
            })
        })
        .collect();
    let doc = json!({
        "threshold": fixed_number(report.threshold),
        "seed": report.seed,
        "brute_force_trials": report.brute_force_trials,
        "points": points,
        "failures": failures,
        "fits": fits,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

pub fn render_report(report: &ScalingReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => to_csv(report),
        ReportFormat::Json => to_json(report),
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn emit_report(
    report: &ScalingReport,
    format: ReportFormat,
    path: &Path,
) -> Result<(), HarnessError> {
    write_text(path, &render_report(report, format))
}

fn parse_err(msg: impl Into<String>) -> HarnessError {
    HarnessError::Parse(msg.into())
}

fn parse_field<T: FromStr>(field: &str, what: &str) -> Result<T, HarnessError> {
    field
        .parse()
        .map_err(|_| parse_err(format!("bad {what} `{field}`")))
}

fn parse_model(field: &str) -> Result<Model, HarnessError> {
    field.parse().map_err(parse_err)
}

/// Reads a scaling CSV back. Metadata not present in the CSV (threshold,
/// seed) is taken from `threshold` and `seed`; fit point counts are
/// recomputed from the data rows.
pub fn parse_csv(text: &str, threshold: f64, seed: u64) -> Result<ScalingReport, HarnessError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(SCALING_HEADER) => {}
        other => return Err(parse_err(format!("unexpected header {other:?}"))),
    }
    let mut report = ScalingReport::empty(threshold, seed);
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        match fields.as_slice() {
            ["#fit", model, slope, intercept, r_squared] => {
                let model = parse_model(model)?;
                report.fits.push(FitResult {
                    model,
                    slope: parse_field(slope, "slope")?,
                    intercept: parse_field(intercept, "intercept")?,
                    r_squared: parse_field(r_squared, "r_squared")?,
                    point_count: 0,
                });
            }
            ["#failed", model, n, reason] => report.failures.push(PointFailure {
                model: parse_model(model)?,
                n: parse_field(n, "N")?,
                reason: reason.to_string(),
            }),
            [model, n, k_half, probability] if !model.starts_with('#') => {
                report.points.push(ScalingPoint {
                    model: parse_model(model)?,
                    n: parse_field(n, "N")?,
                    k_half: parse_field(k_half, "k_half")?,
                    probability_at_k: parse_field(probability, "probability_at_k")?,
                })
            }
            _ => return Err(parse_err(format!("unrecognized row `{line}`"))),
        }
    }
    let points = &report.points;
    for fit in &mut report.fits {
        fit.point_count = points
            .iter()
            .filter(|p| p.model == fit.model && p.k_half >= 1)
            .count();
    }
    Ok(report)
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, HarnessError> {
    obj.get(key)
        .ok_or_else(|| parse_err(format!("missing key `{key}`")))
}

fn get_f64(obj: &Map<String, Value>, key: &str) -> Result<f64, HarnessError> {
    get(obj, key)?
        .as_f64()
        .ok_or_else(|| parse_err(format!("`{key}` is not a number")))
}

fn get_u64(obj: &Map<String, Value>, key: &str) -> Result<u64, HarnessError> {
    get(obj, key)?
        .as_u64()
        .ok_or_else(|| parse_err(format!("`{key}` is not an unsigned integer")))
}

fn get_str<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str, HarnessError> {
    get(obj, key)?
        .as_str()
        .ok_or_else(|| parse_err(format!("`{key}` is not a string")))
}

fn get_objects<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
) -> Result<Vec<&'a Map<String, Value>>, HarnessError> {
    get(obj, key)?
        .as_array()
        .ok_or_else(|| parse_err(format!("`{key}` is not an array")))?
        .iter()
        .map(|v| {
            v.as_object()
                .ok_or_else(|| parse_err(format!("`{key}` entry is not an object")))
        })
        .collect()
}

pub fn parse_json(text: &str) -> Result<ScalingReport, HarnessError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let root = doc
        .as_object()
        .ok_or_else(|| parse_err("top level is not an object"))?;
    let mut report = ScalingReport::empty(get_f64(root, "threshold")?, get_u64(root, "seed")?);
    report.brute_force_trials = get_u64(root, "brute_force_trials")?;
    for p in get_objects(root, "points")? {
        report.points.push(ScalingPoint {
            model: parse_model(get_str(p, "model")?)?,
            n: get_u64(p, "N")?,
            k_half: get_u64(p, "k_half")?,
            probability_at_k: get_f64(p, "probability_at_k")?,
        });
    }
    for f in get_objects(root, "failures")? {
        report.failures.push(PointFailure {
            model: parse_model(get_str(f, "model")?)?,
            n: get_u64(f, "N")?,
            reason: get_str(f, "reason")?.to_string(),
        });
    }
    for f in get_objects(root, "fits")? {
        report.fits.push(FitResult {
            model: parse_model(get_str(f, "model")?)?,
            slope: get_f64(f, "slope")?,
            intercept: get_f64(f, "intercept")?,
            r_squared: get_f64(f, "r_squared")?,
            point_count: get_u64(f, "point_count")? as usize,
        });
    }
    Ok(report)
}

pub fn ant_trace_csv(trace: &AntTrace) -> String {
    let mut out = format!("{TRACE_HEADER}\n");
    for r in &trace.records {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.k,
            fixed(r.gamma),
            fixed(r.total),
            fixed(r.probability)
        );
    }
    out
}

pub fn grover_trace_csv(trace: &GroverTrace) -> String {
    let mut out = format!("{TRACE_HEADER}\n");
    for r in &trace.records {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.k,
            fixed(r.target_amplitude),
            fixed(r.norm),
            fixed(r.success_probability)
        );
    }
    out
}
