//! Scaling experiments over both engines, plus report I/O.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::classical::ClassicalError;
use crate::quantum::QuantumError;

pub mod fit;
pub mod report;
pub mod sampling;
pub mod scaling;

pub use fit::{fit_loglog, FitResult};
pub use report::{emit_report, parse_csv, parse_json, render_report, ReportFormat};
pub use sampling::{monte_carlo_validation, FrequencyReport, SampleModel};
pub use scaling::{run_scaling, PointFailure, ScalingConfig, ScalingPoint, ScalingReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error("a log-log fit needs at least 2 points, got {0}")]
    TooFewFitPoints(usize),
    #[error("cannot take logs of point N = {n}, k = {k}")]
    UnfittablePoint { n: u64, k: u64 },
    #[error("all fit points share the same N")]
    DegenerateFit,
    #[error("invalid config: {0}")]
    Config(String),
    #[error("at least 1000 samples are required, got {0}")]
    TooFewSamples(u64),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed report: {0}")]
    Parse(String),
}

impl PartialEq for HarnessError {
    fn eq(&self, other: &Self) -> bool {
        use HarnessError::*;
        match (self, other) {
            (Classical(a), Classical(b)) => a == b,
            (Quantum(a), Quantum(b)) => a == b,
            (TooFewFitPoints(a), TooFewFitPoints(b)) => a == b,
            (UnfittablePoint { n: a, k: b }, UnfittablePoint { n: c, k: d }) => a == c && b == d,
            (DegenerateFit, DegenerateFit) => true,
            (Config(a), Config(b)) => a == b,
            (TooFewSamples(a), TooFewSamples(b)) => a == b,
            (Parse(a), Parse(b)) => a == b,
            (Io { path: a, .. }, Io { path: b, .. }) => a == b,
            _ => false,
        }
    }
}

/// The four iteration-count models compared by the harness, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    ClassicalExact,
    ClassicalIdealized,
    Quantum,
    BruteForce,
}

impl Model {
    pub const ALL: [Model; 4] = [
        Model::ClassicalExact,
        Model::ClassicalIdealized,
        Model::Quantum,
        Model::BruteForce,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Model::ClassicalExact => "classical-exact",
            Model::ClassicalIdealized => "classical-idealized",
            Model::Quantum => "quantum",
            Model::BruteForce => "brute-force",
        }
    }

    /// Stream selector for the random source.
    pub fn id(&self) -> u64 {
        match self {
            Model::ClassicalExact => 1,
            Model::ClassicalIdealized => 2,
            Model::Quantum => 3,
            Model::BruteForce => 4,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Model::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                format!(
                    "unknown model `{s}` (expected one of classical-exact, classical-idealized, quantum, brute-force)"
                )
            })
    }
}
