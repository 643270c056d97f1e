use rayon::prelude::*;

use super::fit::{fit_loglog, FitResult};
use super::{HarnessError, Model};
use crate::classical::{self, brute_force_search, JackpotOracle, Mode, ThrowSampler, Wheel};
use crate::quantum;
use crate::rng::StreamKey;

/// Trials averaged per brute-force point.
pub const BRUTE_FORCE_TRIALS: u64 = 1000;

/// Throw budget per brute-force trial, as a multiple of `N`.
pub const BRUTE_FORCE_THROW_FACTOR: u64 = 64;

pub const MAX_LOG2N: u32 = 20;

/// Points needed per model for a trustworthy fit.
pub const MIN_FIT_POINTS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingConfig {
    pub log2n_min: u32,
    pub log2n_max: u32,
    pub models: Vec<Model>,
    pub threshold: f64,
    pub seed: u64,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        Self {
            log2n_min: 6,
            log2n_max: 16,
            models: vec![Model::ClassicalExact, Model::Quantum],
            threshold: 0.5,
            seed: 0,
        }
    }
}

impl ScalingConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if !(1 <= self.log2n_min && self.log2n_min <= self.log2n_max && self.log2n_max <= MAX_LOG2N)
        {
            return Err(HarnessError::Config(format!(
                "need 1 <= log2n-min <= log2n-max <= {MAX_LOG2N}, got {}..{}",
                self.log2n_min, self.log2n_max
            )));
        }
        if self.models.is_empty() {
            return Err(HarnessError::Config("model set is empty".into()));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(HarnessError::Config(format!(
                "threshold must lie strictly between 0 and 1, got {}",
                self.threshold
            )));
        }
        Ok(())
    }

    /// Requested models, deduplicated, in report order.
    pub fn model_order(&self) -> Vec<Model> {
        let mut models = self.models.clone();
        models.sort();
        models.dedup();
        models
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPoint {
    pub model: Model,
    pub n: u64,
    pub k_half: u64,
    pub probability_at_k: f64,
}

/// A `(model, N)` pair whose threshold was not reached.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFailure {
    pub model: Model,
    pub n: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub threshold: f64,
    pub seed: u64,
    pub brute_force_trials: u64,
    pub points: Vec<ScalingPoint>,
    pub failures: Vec<PointFailure>,
    pub fits: Vec<FitResult>,
}

impl ScalingReport {
    pub fn empty(threshold: f64, seed: u64) -> Self {
        Self {
            threshold,
            seed,
            brute_force_trials: BRUTE_FORCE_TRIALS,
            points: Vec::new(),
            failures: Vec::new(),
            fits: Vec::new(),
        }
    }

    pub fn points_for(&self, model: Model) -> impl Iterator<Item = &ScalingPoint> {
        self.points.iter().filter(move |p| p.model == model)
    }

    pub fn fit_for(&self, model: Model) -> Option<&FitResult> {
        self.fits.iter().find(|f| f.model == model)
    }

    /// Models with fewer than [`MIN_FIT_POINTS`] usable points.
    pub fn underfit_models(&self, requested: &[Model]) -> Vec<Model> {
        requested
            .iter()
            .copied()
            .filter(|&m| fit_points(self, m).len() < MIN_FIT_POINTS)
            .collect()
    }
}

fn fit_points(report: &ScalingReport, model: Model) -> Vec<(u64, u64)> {
    report
        .points_for(model)
        .filter(|p| p.k_half >= 1)
        .map(|p| (p.n, p.k_half))
        .collect()
}

enum Outcome {
    Point(ScalingPoint),
    Failure(PointFailure),
}

fn failure(model: Model, n: u64, reason: &str) -> Outcome {
    Outcome::Failure(PointFailure {
        model,
        n,
        reason: reason.to_string(),
    })
}

fn evaluate(model: Model, log2n: u32, config: &ScalingConfig) -> Result<Outcome, HarnessError> {
    let n = 1u64 << log2n;
    let point = |k_half, probability_at_k| {
        Outcome::Point(ScalingPoint {
            model,
            n,
            k_half,
            probability_at_k,
        })
    };
    match model {
        Model::ClassicalExact | Model::ClassicalIdealized => {
            let mode = if model == Model::ClassicalExact {
                Mode::Exact
            } else {
                Mode::Idealized
            };
            match classical::iterations_to_threshold(n as usize, 1.0, config.threshold, mode) {
                Ok(hit) => Ok(point(hit.k, hit.probability)),
                Err(classical::ClassicalError::ThresholdNotReached { .. }) => {
                    Ok(failure(model, n, "threshold-not-reached"))
                }
                Err(e) => Err(e.into()),
            }
        }
        Model::Quantum => match quantum::iterations_to_threshold(log2n, config.threshold) {
            Ok(hit) => Ok(point(hit.k, hit.probability)),
            Err(quantum::QuantumError::ThresholdNotReached { .. }) => {
                Ok(failure(model, n, "threshold-not-reached"))
            }
            Err(e) => Err(e.into()),
        },
        Model::BruteForce => brute_force_point(n, config),
    }
}

/// Mean throws to hit the jackpot over [`BRUTE_FORCE_TRIALS`] seeded trials.
///
/// `k_half` is the rounded mean; `probability_at_k` is the fraction of
/// trials that found the jackpot within `k_half` throws.
fn brute_force_point(n: u64, config: &ScalingConfig) -> Result<Outcome, HarnessError> {
    let model = Model::BruteForce;
    let wheel = Wheel::new_uniform(n as usize, 1.0, 0)?;
    let sampler = ThrowSampler::new(&wheel)?;
    let oracle = JackpotOracle::for_wheel(&wheel);
    let budget = BRUTE_FORCE_THROW_FACTOR * n;
    let runs = (0..BRUTE_FORCE_TRIALS)
        .into_par_iter()
        .map(|trial| {
            let mut rng = StreamKey::new(config.seed, model.id(), n, trial).rng();
            brute_force_search(&sampler, &oracle, &mut rng, budget)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let total: u64 = runs.iter().map(|r| r.throws_used).sum();
    let mean = total as f64 / BRUTE_FORCE_TRIALS as f64;
    let k_half = (mean.round() as u64).max(1);
    let within = runs
        .iter()
        .filter(|r| r.found.is_some() && r.throws_used <= k_half)
        .count();
    let probability = within as f64 / BRUTE_FORCE_TRIALS as f64;
    if probability < config.threshold {
        return Ok(failure(model, n, "mean-throws-below-threshold"));
    }
    Ok(Outcome::Point(ScalingPoint {
        model,
        n,
        k_half,
        probability_at_k: probability,
    }))
}

/// Computes `k_half` for every requested `(model, N = 2^j)` and fits a
/// log-log slope per model.
///
/// Points are evaluated in parallel and merged in `(model, N)` order, so the
/// report depends only on the config.
pub fn run_scaling(config: &ScalingConfig) -> Result<ScalingReport, HarnessError> {
    config.validate()?;
    let tasks: Vec<(Model, u32)> = config
        .model_order()
        .into_iter()
        .flat_map(|m| (config.log2n_min..=config.log2n_max).map(move |j| (m, j)))
        .collect();
    let outcomes = tasks
        .par_iter()
        .map(|&(model, log2n)| evaluate(model, log2n, config))
        .collect::<Result<Vec<_>, _>>()?;

    let mut report = ScalingReport::empty(config.threshold, config.seed);
    for outcome in outcomes {
        match outcome {
            Outcome::Point(p) => report.points.push(p),
            Outcome::Failure(f) => report.failures.push(f),
        }
    }
    for model in config.model_order() {
        let pts = fit_points(&report, model);
        if pts.len() >= 2 {
            report.fits.push(fit_loglog(model, &pts)?);
        }
    }
    Ok(report)
}
