//! Monte Carlo check that throws and measurements follow the engine
//! probabilities.

use std::fmt;
use std::str::FromStr;

use super::{HarnessError, Model};
use crate::classical::{ThrowSampler, Wheel};
use crate::quantum::{MeasurementSampler, StateVector};
use crate::rng::StreamKey;

pub const MIN_SAMPLES: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleModel {
    /// Exact per-sector ant dynamics, then roulette throws.
    Classical,
    /// Grover iterations, then measurements.
    Quantum,
}

impl SampleModel {
    fn stream_model(&self) -> Model {
        match self {
            SampleModel::Classical => Model::ClassicalExact,
            SampleModel::Quantum => Model::Quantum,
        }
    }
}

impl fmt::Display for SampleModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleModel::Classical => "classical",
            SampleModel::Quantum => "quantum",
        })
    }
}

impl FromStr for SampleModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" => Ok(SampleModel::Classical),
            "quantum" => Ok(SampleModel::Quantum),
            other => Err(format!(
                "unknown model `{other}` (expected classical|quantum)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyReport {
    pub model: SampleModel,
    pub n: usize,
    pub k: u64,
    pub samples: u64,
    pub target: usize,
    pub expected: Vec<f64>,
    pub observed: Vec<u64>,
    pub max_abs_z: f64,
    pub max_z_sector: usize,
}

impl FrequencyReport {
    pub fn expected_target_frequency(&self) -> f64 {
        self.expected[self.target]
    }

    pub fn observed_target_frequency(&self) -> f64 {
        self.observed[self.target] as f64 / self.samples as f64
    }

    /// Binomial z-score of one sector's count. A sector with probability 0
    /// or 1 scores 0 when its count is exactly right and infinity otherwise.
    pub fn z_score(&self, sector: usize) -> f64 {
        z_score(self.expected[sector], self.observed[sector], self.samples)
    }
}

fn z_score(p: f64, observed: u64, samples: u64) -> f64 {
    let n = samples as f64;
    let mean = p * n;
    let sd = (n * p * (1.0 - p)).sqrt();
    let diff = observed as f64 - mean;
    if sd > 0.0 {
        diff / sd
    } else if diff.abs() < 0.5 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Advances the chosen engine `k` steps from uniform, then draws `samples`
/// outcomes and tallies them per sector.
pub fn monte_carlo_validation(
    model: SampleModel,
    n: usize,
    k: u64,
    samples: u64,
    seed: u64,
    target: usize,
) -> Result<FrequencyReport, HarnessError> {
    if samples < MIN_SAMPLES {
        return Err(HarnessError::TooFewSamples(samples));
    }
    let mut rng = StreamKey::new(seed, model.stream_model().id(), n as u64, 0).rng();
    let mut observed = vec![0u64; n];
    let expected = match model {
        SampleModel::Classical => {
            let mut wheel = Wheel::new_uniform(n, 1.0, target)?;
            for _ in 0..k {
                wheel = wheel.ant_iteration()?;
            }
            let sampler = ThrowSampler::new(&wheel)?;
            for _ in 0..samples {
                observed[sampler.throw(&mut rng)] += 1;
            }
            let total = wheel.total();
            wheel.counts().iter().map(|c| c / total).collect::<Vec<_>>()
        }
        SampleModel::Quantum => {
            if !n.is_power_of_two() || n < 2 {
                return Err(HarnessError::Config(format!(
                    "quantum sampling needs N = 2^n, got {n}"
                )));
            }
            let mut state = StateVector::uniform_state(n.trailing_zeros())?;
            for _ in 0..k {
                state = state.grover_iteration(target)?;
            }
            let sampler = MeasurementSampler::new(&state)?;
            for _ in 0..samples {
                observed[sampler.measure(&mut rng)] += 1;
            }
            state.amplitudes().iter().map(|a| a * a).collect::<Vec<_>>()
        }
    };
    let (max_z_sector, max_abs_z) = expected
        .iter()
        .zip(&observed)
        .map(|(&p, &o)| z_score(p, o, samples).abs())
        .enumerate()
        .fold(
            (0, 0.0f64),
            |best, (j, z)| if z > best.1 { (j, z) } else { best },
        );
    Ok(FrequencyReport {
        model,
        n,
        k,
        samples,
        target,
        expected,
        observed,
        max_abs_z,
        max_z_sector,
    })
}
