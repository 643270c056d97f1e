//! The ball-roulette model.
//!
//! A [`Wheel`] holds a nonnegative ball density per sector; the chance that a
//! throw lands on a sector is its share of the total. The ants know which
//! sector is the jackpot and run a fixed routine on the wheel:
//!
//! 1. empty the jackpot sector ([`Wheel::remove_jackpot`]),
//! 2. replace every count `c` by `2A - c`, `A` the mean count
//!    ([`Wheel::invert_about_average`]),
//! 3. put the removed balls back into the jackpot ([`Wheel::restore_balls`]).
//!
//! Applied literally ("exact" mode) the routine conserves the total and
//! shrinks every non-jackpot sector by `(N-2)/N` per pass. The large-N
//! reading ("idealized" mode) freezes the non-jackpot sectors at their
//! starting value, so the jackpot gains `2α` per pass and the total grows.
//! Both are exposed so the approximation can be checked against the exact
//! dynamics.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, Uniform, WeightedIndex};
use rand::Rng;
use thiserror::Error;

/// Slack applied when comparing a probability against a success threshold.
pub const THRESHOLD_SLACK: f64 = 1e-12;

/// Counts that land this close below zero (relative to the wheel total) after
/// inversion are rounding noise and get clamped to zero.
const NEGATIVE_COUNT_SLACK: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassicalError {
    #[error("a wheel needs at least 2 sectors, got {0}")]
    TooFewSectors(usize),
    #[error("initial ball count must be positive and finite, got {0}")]
    InvalidAlpha(f64),
    #[error("target sector {target} out of range for {n_sectors} sectors")]
    TargetOutOfRange { target: usize, n_sectors: usize },
    #[error("sector {sector} has invalid ball count {count}")]
    InvalidCount { sector: usize, count: f64 },
    #[error("inversion about average would leave sector {sector} with {count} balls")]
    NegativeCount { sector: usize, count: f64 },
    #[error("cannot restore a negative number of balls ({0})")]
    NegativeRestore(f64),
    #[error("the wheel holds no balls")]
    EmptyWheel,
    #[error("target total must be positive and finite, got {0}")]
    InvalidTotal(f64),
    #[error("threshold must lie strictly between 0 and 1, got {0}")]
    InvalidThreshold(f64),
    #[error("max_throws must be at least 1")]
    ZeroThrowBudget,
    #[error("threshold {threshold} not reached within {cap} iterations")]
    ThresholdNotReached { threshold: f64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, ClassicalError>;

/// Sector ball densities plus the ants' label for the jackpot sector.
///
/// An all-zero wheel is representable (emptying the jackpot of a wheel whose
/// balls all sit there produces one), but it cannot be thrown, normalized or
/// asked for a probability.
#[derive(Debug, Clone, PartialEq)]
pub struct Wheel {
    counts: Vec<f64>,
    target: usize,
}

impl Wheel {
    /// The unbiased starting wheel: `alpha` balls in each of `n_sectors`.
    pub fn new_uniform(n_sectors: usize, alpha: f64, target: usize) -> Result<Self> {
        if n_sectors < 2 {
            return Err(ClassicalError::TooFewSectors(n_sectors));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(ClassicalError::InvalidAlpha(alpha));
        }
        if target >= n_sectors {
            return Err(ClassicalError::TargetOutOfRange { target, n_sectors });
        }
        Ok(Self {
            counts: vec![alpha; n_sectors],
            target,
        })
    }

    pub fn from_counts(counts: Vec<f64>, target: usize) -> Result<Self> {
        if counts.len() < 2 {
            return Err(ClassicalError::TooFewSectors(counts.len()));
        }
        if target >= counts.len() {
            return Err(ClassicalError::TargetOutOfRange {
                target,
                n_sectors: counts.len(),
            });
        }
        if let Some((sector, &count)) = counts
            .iter()
            .enumerate()
            .find(|(_, c)| !(c.is_finite() && **c >= 0.0))
        {
            return Err(ClassicalError::InvalidCount { sector, count });
        }
        Ok(Self { counts, target })
    }

    pub fn n_sectors(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn total(&self) -> f64 {
        self.counts.iter().sum()
    }

    /// Empties the jackpot sector, returning the new wheel and what was taken.
    pub fn remove_jackpot(&self) -> (Wheel, f64) {
        let mut next = self.clone();
        let removed = std::mem::replace(&mut next.counts[self.target], 0.0);
        (next, removed)
    }

    /// Replaces every count `c` with `2A - c` where `A` is the mean count.
    ///
    /// All sectors are updated against the same `A`. Fails if any sector
    /// would end up with a negative count.
    pub fn invert_about_average(&self) -> Result<Wheel> {
        let total = self.total();
        let mean = total / self.n_sectors() as f64;
        let floor = -NEGATIVE_COUNT_SLACK * total;
        let mut counts = Vec::with_capacity(self.n_sectors());
        for (sector, &c) in self.counts.iter().enumerate() {
            let inverted = 2.0 * mean - c;
            if inverted < floor {
                return Err(ClassicalError::NegativeCount {
                    sector,
                    count: inverted,
                });
            }
            counts.push(inverted.max(0.0));
        }
        Ok(Wheel {
            counts,
            target: self.target,
        })
    }

    pub fn restore_balls(&self, removed: f64) -> Result<Wheel> {
        if !(removed >= 0.0 && removed.is_finite()) {
            return Err(ClassicalError::NegativeRestore(removed));
        }
        let mut next = self.clone();
        next.counts[self.target] += removed;
        Ok(next)
    }

    /// One full pass of the ant routine: remove, invert, restore.
    pub fn ant_iteration(&self) -> Result<Wheel> {
        let (emptied, removed) = self.remove_jackpot();
        emptied.invert_about_average()?.restore_balls(removed)
    }

    /// Rescales all counts so they sum to `target_total`.
    pub fn normalize_total(&self, target_total: f64) -> Result<Wheel> {
        if !(target_total > 0.0 && target_total.is_finite()) {
            return Err(ClassicalError::InvalidTotal(target_total));
        }
        let total = self.total();
        if total <= 0.0 {
            return Err(ClassicalError::EmptyWheel);
        }
        let scale = target_total / total;
        Ok(Wheel {
            counts: self.counts.iter().map(|c| c * scale).collect(),
            target: self.target,
        })
    }

    pub fn jackpot_probability(&self) -> Result<f64> {
        let total = self.total();
        if total <= 0.0 {
            return Err(ClassicalError::EmptyWheel);
        }
        Ok(self.counts[self.target] / total)
    }

    /// Collapses the wheel to `(beta, gamma)` when all non-jackpot sectors
    /// hold the same count.
    pub fn reduce(&self) -> Option<ReducedState> {
        let mut others = self
            .counts
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != self.target)
            .map(|(_, c)| *c);
        let beta = others.next()?;
        if others.any(|c| c != beta) {
            return None;
        }
        Some(ReducedState {
            beta,
            gamma: self.counts[self.target],
            n_sectors: self.n_sectors(),
        })
    }

    /// Spins the wheel once and reports the sector under the window.
    pub fn throw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        Ok(ThrowSampler::new(self)?.throw(rng))
    }

    /// Throws until the jackpot shows or `max_throws` is spent.
    pub fn brute_force_search<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        max_throws: u64,
    ) -> Result<BruteForceOutcome> {
        let sampler = ThrowSampler::new(self)?;
        brute_force_search(&sampler, &JackpotOracle::for_wheel(self), rng, max_throws)
    }
}

/// Reusable sampler for many throws of the same wheel.
///
/// A wheel with equal counts everywhere is sampled as a uniform sector
/// index in O(1); anything else goes through a cumulative-weight search.
#[derive(Debug, Clone)]
pub enum ThrowSampler {
    Uniform(Uniform<usize>),
    Weighted(WeightedIndex<f64>),
}

impl ThrowSampler {
    pub fn new(wheel: &Wheel) -> Result<Self> {
        if wheel.total() <= 0.0 {
            return Err(ClassicalError::EmptyWheel);
        }
        let first = wheel.counts[0];
        if wheel.counts.iter().all(|&c| c == first) {
            return Ok(ThrowSampler::Uniform(Uniform::new(0, wheel.n_sectors())));
        }
        let index = WeightedIndex::new(wheel.counts()).map_err(|_| ClassicalError::EmptyWheel)?;
        Ok(ThrowSampler::Weighted(index))
    }

    pub fn throw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match self {
            ThrowSampler::Uniform(d) => d.sample(rng),
            ThrowSampler::Weighted(d) => d.sample(rng),
        }
    }
}

/// Answers "jackpot or not" for a sector without revealing which one it is.
#[derive(Clone, Copy)]
pub struct JackpotOracle {
    target: usize,
}

impl JackpotOracle {
    pub fn for_wheel(wheel: &Wheel) -> Self {
        Self {
            target: wheel.target,
        }
    }

    pub fn is_jackpot(&self, sector: usize) -> bool {
        sector == self.target
    }
}

impl fmt::Debug for JackpotOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("JackpotOracle(..)")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceOutcome {
    pub found: Option<usize>,
    pub throws_used: u64,
}

/// The gambler's strategy: keep throwing, ask the oracle each time.
pub fn brute_force_search<R: Rng + ?Sized>(
    sampler: &ThrowSampler,
    oracle: &JackpotOracle,
    rng: &mut R,
    max_throws: u64,
) -> Result<BruteForceOutcome> {
    if max_throws == 0 {
        return Err(ClassicalError::ZeroThrowBudget);
    }
    for throw in 1..=max_throws {
        let sector = sampler.throw(rng);
        if oracle.is_jackpot(sector) {
            return Ok(BruteForceOutcome {
                found: Some(sector),
                throws_used: throw,
            });
        }
    }
    Ok(BruteForceOutcome {
        found: None,
        throws_used: max_throws,
    })
}

/// Symmetric wheel state: `beta` balls in every non-jackpot sector and
/// `gamma` in the jackpot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState {
    pub beta: f64,
    pub gamma: f64,
    pub n_sectors: usize,
}

impl ReducedState {
    pub fn uniform(n_sectors: usize, alpha: f64) -> Result<Self> {
        if n_sectors < 2 {
            return Err(ClassicalError::TooFewSectors(n_sectors));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(ClassicalError::InvalidAlpha(alpha));
        }
        Ok(Self {
            beta: alpha,
            gamma: alpha,
            n_sectors,
        })
    }

    pub fn total(&self) -> f64 {
        (self.n_sectors - 1) as f64 * self.beta + self.gamma
    }

    pub fn probability(&self) -> f64 {
        self.gamma / self.total()
    }

    /// Exact ant pass in closed form.
    pub fn reduced_step(&self) -> Self {
        let n = self.n_sectors as f64;
        Self {
            beta: self.beta * (n - 2.0) / n,
            gamma: self.gamma + 2.0 * self.beta * (n - 1.0) / n,
            n_sectors: self.n_sectors,
        }
    }

    /// Large-N pass: the mean is taken to stay at `beta`, so the jackpot
    /// gains `2 beta` and nothing else moves.
    pub fn idealized_step(&self) -> Self {
        Self {
            gamma: self.gamma + 2.0 * self.beta,
            ..*self
        }
    }

    pub fn step(&self, mode: Mode) -> Self {
        match mode {
            Mode::Exact => self.reduced_step(),
            Mode::Idealized => self.idealized_step(),
        }
    }
}

/// Jackpot probability after `k` idealized passes from a uniform wheel.
pub fn idealized_probability(n_sectors: usize, k: u64) -> f64 {
    (2 * k + 1) as f64 / (n_sectors as u64 + 2 * k) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Idealized,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Idealized => "idealized",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "idealized" => Ok(Mode::Idealized),
            other => Err(format!("unknown mode `{other}` (expected exact|idealized)")),
        }
    }
}

/// First iteration count whose jackpot probability meets the threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdHit {
    pub k: u64,
    pub probability: f64,
}

/// Iteration cap for [`iterations_to_threshold`]: `16 N`.
pub fn iteration_cap(n_sectors: usize) -> u64 {
    16 * n_sectors as u64
}

/// Smallest `k >= 0` whose jackpot probability reaches `threshold`.
///
/// Exact mode runs the reduced recurrence; idealized mode solves
/// `(2k+1)/(N+2k) >= threshold` directly. The answer does not depend on
/// `alpha`.
pub fn iterations_to_threshold(
    n_sectors: usize,
    alpha: f64,
    threshold: f64,
    mode: Mode,
) -> Result<ThresholdHit> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(ClassicalError::InvalidThreshold(threshold));
    }
    let mut state = ReducedState::uniform(n_sectors, alpha)?;
    let cap = iteration_cap(n_sectors);
    let reached = |p: f64| p >= threshold - THRESHOLD_SLACK;
    match mode {
        Mode::Exact => {
            for k in 0..=cap {
                let p = state.probability();
                if reached(p) {
                    return Ok(ThresholdHit { k, probability: p });
                }
                state = state.reduced_step();
            }
        }
        Mode::Idealized => {
            let n = n_sectors as f64;
            let estimate = ((threshold * n - 1.0) / (2.0 - 2.0 * threshold))
                .ceil()
                .max(0.0);
            let mut k = (estimate as u64).min(cap);
            while k > 0 && reached(idealized_probability(n_sectors, k - 1)) {
                k -= 1;
            }
            while k <= cap {
                let p = idealized_probability(n_sectors, k);
                if reached(p) {
                    return Ok(ThresholdHit { k, probability: p });
                }
                k += 1;
            }
        }
    }
    Err(ClassicalError::ThresholdNotReached { threshold, cap })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntRecord {
    pub k: u64,
    pub gamma: f64,
    pub total: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AntTrace {
    pub records: Vec<AntRecord>,
}

/// Records iterations `0..=steps` of the reduced dynamics from a uniform wheel.
pub fn ant_trace(n_sectors: usize, alpha: f64, mode: Mode, steps: u64) -> Result<AntTrace> {
    let mut state = ReducedState::uniform(n_sectors, alpha)?;
    let mut records = Vec::with_capacity(steps as usize + 1);
    for k in 0..=steps {
        records.push(AntRecord {
            k,
            gamma: state.gamma,
            total: state.total(),
            probability: state.probability(),
        });
        state = state.step(mode);
    }
    Ok(AntTrace { records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn wheel(counts: &[f64], target: usize) -> Wheel {
        Wheel::from_counts(counts.to_vec(), target).unwrap()
    }

    #[test]
    fn uniform_wheel_examples() {
        let w = Wheel::new_uniform(4, 1.0, 0).unwrap();
        assert_eq!(w.counts(), &[1.0; 4]);
        assert_eq!(w.target(), 0);
        assert_eq!(Wheel::new_uniform(2, 0.5, 1).unwrap().counts(), &[0.5, 0.5]);
        let w = Wheel::new_uniform(3, 2.0, 2).unwrap();
        assert_eq!(w.counts(), &[2.0; 3]);
        assert!((w.jackpot_probability().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn uniform_wheel_rejects_bad_input() {
        assert_eq!(
            Wheel::new_uniform(1, 1.0, 0),
            Err(ClassicalError::TooFewSectors(1))
        );
        assert!(matches!(
            Wheel::new_uniform(4, 0.0, 0),
            Err(ClassicalError::InvalidAlpha(_))
        ));
        assert!(matches!(
            Wheel::new_uniform(4, -1.0, 0),
            Err(ClassicalError::InvalidAlpha(_))
        ));
        assert!(matches!(
            Wheel::new_uniform(4, 1.0, 4),
            Err(ClassicalError::TargetOutOfRange { .. })
        ));
        assert!(matches!(
            Wheel::from_counts(vec![1.0, -0.5], 0),
            Err(ClassicalError::InvalidCount { sector: 1, .. })
        ));
    }

    #[test]
    fn remove_jackpot_examples() {
        let (w, r) = wheel(&[1.0, 1.0, 1.0, 1.0], 0).remove_jackpot();
        assert_eq!((w.counts(), r), (&[0.0, 1.0, 1.0, 1.0][..], 1.0));
        let (w, r) = wheel(&[2.5, 0.5, 0.5, 0.5], 0).remove_jackpot();
        assert_eq!((w.counts(), r), (&[0.0, 0.5, 0.5, 0.5][..], 2.5));
        let (w, r) = wheel(&[0.0, 1.0, 1.0, 1.0], 0).remove_jackpot();
        assert_eq!((w.counts(), r), (&[0.0, 1.0, 1.0, 1.0][..], 0.0));
    }

    #[test]
    fn invert_about_average_examples() {
        let w = wheel(&[1.0; 4], 0).invert_about_average().unwrap();
        assert_eq!(w.counts(), &[1.0; 4]);
        let w = wheel(&[0.0, 1.0, 1.0, 1.0], 0)
            .invert_about_average()
            .unwrap();
        assert_eq!(w.counts(), &[1.5, 0.5, 0.5, 0.5]);
        assert!(matches!(
            wheel(&[3.0, 1.0, 0.0, 0.0], 0).invert_about_average(),
            Err(ClassicalError::NegativeCount { sector: 0, .. })
        ));
    }

    #[test]
    fn restore_balls_examples() {
        let w = wheel(&[1.5, 0.5, 0.5, 0.5], 0).restore_balls(1.0).unwrap();
        assert_eq!(w.counts(), &[2.5, 0.5, 0.5, 0.5]);
        let w = wheel(&[0.0, 1.0, 1.0, 1.0], 0).restore_balls(0.0).unwrap();
        assert_eq!(w.counts(), &[0.0, 1.0, 1.0, 1.0]);
        let w = wheel(&[0.75, 0.25, 0.25, 0.25], 0)
            .restore_balls(2.5)
            .unwrap();
        assert_eq!(w.counts(), &[3.25, 0.25, 0.25, 0.25]);
        assert!(matches!(
            wheel(&[1.0, 1.0], 0).restore_balls(-1.0),
            Err(ClassicalError::NegativeRestore(_))
        ));
    }

    #[test]
    fn ant_iteration_examples() {
        let w = wheel(&[1.0; 4], 0).ant_iteration().unwrap();
        assert_eq!(w.counts(), &[2.5, 0.5, 0.5, 0.5]);
        let w = w.ant_iteration().unwrap();
        assert_eq!(w.counts(), &[3.25, 0.25, 0.25, 0.25]);
        let w = wheel(&[1.0, 1.0], 0).ant_iteration().unwrap();
        assert_eq!(w.counts(), &[2.0, 0.0]);
        assert_eq!(w.jackpot_probability().unwrap(), 1.0);
    }

    #[test]
    fn reduced_step_examples() {
        let s = ReducedState {
            beta: 1.0,
            gamma: 1.0,
            n_sectors: 4,
        }
        .reduced_step();
        assert_eq!((s.beta, s.gamma), (0.5, 2.5));
        let s = s.reduced_step();
        assert_eq!((s.beta, s.gamma), (0.25, 3.25));
        for n in [2, 3, 17] {
            let s = ReducedState {
                beta: 0.0,
                gamma: 4.2,
                n_sectors: n,
            }
            .reduced_step();
            assert_eq!((s.beta, s.gamma), (0.0, 4.2));
        }
    }

    #[test]
    fn idealized_step_examples() {
        let s = ReducedState::uniform(4, 1.0).unwrap().idealized_step();
        assert_eq!(s.gamma, 3.0);
        assert_eq!(s.probability(), 0.5);
        assert_eq!(
            ReducedState::uniform(9, 1.0).unwrap().probability(),
            1.0 / 9.0
        );
        assert_eq!(idealized_probability(1024, 511), 0.5);
        assert!(idealized_probability(1024, 510) < 0.5);
        assert_eq!(idealized_probability(1024, 510), 1021.0 / 2044.0);
    }

    #[test]
    fn normalize_total_examples() {
        let w = wheel(&[2.0, 2.0], 0).normalize_total(2.0).unwrap();
        assert_eq!(w.counts(), &[1.0, 1.0]);
        let before = wheel(&[3.0, 1.0], 0);
        let after = before.normalize_total(8.0).unwrap();
        assert_eq!(after.counts(), &[6.0, 2.0]);
        assert_eq!(before.jackpot_probability().unwrap(), 0.75);
        assert_eq!(after.jackpot_probability().unwrap(), 0.75);

        let start = Wheel::new_uniform(10, 1.3, 4).unwrap();
        let stepped = start.ant_iteration().unwrap().ant_iteration().unwrap();
        let renorm = stepped.normalize_total(start.total()).unwrap();
        for (a, b) in renorm.counts().iter().zip(stepped.counts()) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }

        assert!(matches!(
            wheel(&[1.0, 1.0], 0).normalize_total(0.0),
            Err(ClassicalError::InvalidTotal(_))
        ));
        assert_eq!(
            wheel(&[0.0, 0.0], 0).normalize_total(1.0),
            Err(ClassicalError::EmptyWheel)
        );
    }

    #[test]
    fn jackpot_probability_examples() {
        assert_eq!(wheel(&[1.0; 4], 0).jackpot_probability().unwrap(), 0.25);
        assert_eq!(
            wheel(&[2.5, 0.5, 0.5, 0.5], 0)
                .jackpot_probability()
                .unwrap(),
            0.625
        );
        assert_eq!(
            wheel(&[3.25, 0.25, 0.25, 0.25], 0)
                .jackpot_probability()
                .unwrap(),
            0.8125
        );
        assert_eq!(
            wheel(&[0.0, 0.0, 0.0], 1).jackpot_probability(),
            Err(ClassicalError::EmptyWheel)
        );
    }

    #[test]
    fn throw_degenerate_and_empty() {
        let w = wheel(&[0.0, 1.0, 0.0], 1);
        let mut rng = seeded(11);
        for _ in 0..1000 {
            assert_eq!(w.throw(&mut rng).unwrap(), 1);
        }
        assert_eq!(
            wheel(&[0.0, 0.0], 0).throw(&mut rng),
            Err(ClassicalError::EmptyWheel)
        );
    }

    #[test]
    fn throw_frequency_within_four_sigma() {
        let w = wheel(&[3.0, 1.0, 0.0, 0.0], 0);
        let sampler = ThrowSampler::new(&w).unwrap();
        let mut rng = seeded(2024);
        let samples = 100_000;
        let hits = (0..samples)
            .filter(|_| sampler.throw(&mut rng) == 0)
            .count();
        let freq = hits as f64 / samples as f64;
        let sigma = (0.75f64 * 0.25 / samples as f64).sqrt();
        assert!((freq - 0.75).abs() <= 4.0 * sigma, "freq {freq}");
    }

    #[test]
    fn throw_sequence_is_reproducible() {
        let w = Wheel::new_uniform(37, 1.0, 0).unwrap();
        let run = |seed| {
            let mut rng = seeded(seed);
            (0..50)
                .map(|_| w.throw(&mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(run(5), run(5));
        assert_ne!(run(5), run(6));
    }

    #[test]
    fn brute_force_examples() {
        let mut rng = seeded(1);
        // every ball sits in the jackpot, so the first throw wins
        let out = wheel(&[1.0, 0.0], 0)
            .brute_force_search(&mut rng, 10)
            .unwrap();
        assert_eq!(
            out,
            BruteForceOutcome {
                found: Some(0),
                throws_used: 1
            }
        );
        let out = wheel(&[0.0, 1.0], 0)
            .brute_force_search(&mut rng, 100)
            .unwrap();
        assert_eq!(
            out,
            BruteForceOutcome {
                found: None,
                throws_used: 100
            }
        );
        assert_eq!(
            wheel(&[1.0, 1.0], 0).brute_force_search(&mut rng, 0),
            Err(ClassicalError::ZeroThrowBudget)
        );
    }

    #[test]
    fn brute_force_mean_tracks_n() {
        let w = Wheel::new_uniform(64, 1.0, 17).unwrap();
        let sampler = ThrowSampler::new(&w).unwrap();
        let oracle = JackpotOracle::for_wheel(&w);
        let mut rng = seeded(99);
        let trials = 10_000;
        let total: u64 = (0..trials)
            .map(|_| {
                brute_force_search(&sampler, &oracle, &mut rng, 1 << 20)
                    .unwrap()
                    .throws_used
            })
            .sum();
        let mean = total as f64 / trials as f64;
        assert!((mean - 64.0).abs() <= 6.4, "mean {mean}");
    }

    #[test]
    fn oracle_debug_hides_target() {
        let w = Wheel::new_uniform(8, 1.0, 5).unwrap();
        assert_eq!(
            format!("{:?}", JackpotOracle::for_wheel(&w)),
            "JackpotOracle(..)"
        );
    }

    #[test]
    fn threshold_examples() {
        let hit = iterations_to_threshold(4, 1.0, 0.5, Mode::Exact).unwrap();
        assert_eq!(
            hit,
            ThresholdHit {
                k: 1,
                probability: 0.625
            }
        );
        let hit = iterations_to_threshold(1024, 1.0, 0.5, Mode::Idealized).unwrap();
        assert_eq!(hit.k, 511);
        assert_eq!(hit.probability, 0.5);
        let hit = iterations_to_threshold(1024, 1.0, 0.5, Mode::Exact).unwrap();
        assert_eq!(hit.k, 355);
    }

    #[test]
    fn threshold_exact_matches_geometric_closed_form() {
        // gamma_k / total = 1 - (N-1)/N ((N-2)/N)^k, solved for 1/2
        for n in [16usize, 64, 256, 1024, 4096] {
            let nf = n as f64;
            let closed = ((nf / (2.0 * (nf - 1.0))).ln() / ((nf - 2.0) / nf).ln()).ceil() as u64;
            let hit = iterations_to_threshold(n, 1.0, 0.5, Mode::Exact).unwrap();
            assert_eq!(hit.k, closed, "N = {n}");
        }
    }

    #[test]
    fn threshold_idealized_matches_brute_scan() {
        for n in [2usize, 3, 5, 10, 64, 100, 1000] {
            for t in [0.1, 0.25, 0.5, 0.75, 0.9] {
                let scan = (0..)
                    .find(|&k| idealized_probability(n, k) >= t - THRESHOLD_SLACK)
                    .unwrap();
                let hit = iterations_to_threshold(n, 1.0, t, Mode::Idealized).unwrap();
                assert_eq!(hit.k, scan, "N = {n}, t = {t}");
            }
        }
    }

    #[test]
    fn threshold_rejects_out_of_range() {
        for t in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
            assert!(matches!(
                iterations_to_threshold(8, 1.0, t, Mode::Exact),
                Err(ClassicalError::InvalidThreshold(_))
            ));
        }
    }

    #[test]
    fn threshold_cap_reports_failure() {
        // idealized probability approaches 1 only as k grows without bound
        let err = iterations_to_threshold(64, 1.0, 0.99999, Mode::Idealized).unwrap_err();
        assert_eq!(
            err,
            ClassicalError::ThresholdNotReached {
                threshold: 0.99999,
                cap: 1024
            }
        );
    }

    #[test]
    fn threshold_is_alpha_independent() {
        for mode in [Mode::Exact, Mode::Idealized] {
            let ks: Vec<u64> = [0.5, 1.0, 7.3]
                .iter()
                .map(|&a| iterations_to_threshold(256, a, 0.5, mode).unwrap().k)
                .collect();
            assert!(ks.windows(2).all(|w| w[0] == w[1]), "{mode}: {ks:?}");
        }
    }

    #[test]
    fn idealized_total_grows_exact_total_conserved() {
        let ideal = ant_trace(32, 1.0, Mode::Idealized, 5).unwrap();
        let exact = ant_trace(32, 1.0, Mode::Exact, 5).unwrap();
        for (k, r) in ideal.records.iter().enumerate() {
            assert_eq!(r.total, 32.0 + 2.0 * k as f64);
            assert_eq!(r.gamma, 2.0 * k as f64 + 1.0);
        }
        for r in &exact.records {
            assert!((r.total - 32.0).abs() <= 1e-12 * 32.0);
        }
        assert_eq!(exact.records.len(), 6);
        assert!(exact.records.windows(2).all(|w| w[1].k == w[0].k + 1));
    }

    #[test]
    fn reduce_detects_asymmetry() {
        assert!(wheel(&[1.0, 2.0, 3.0], 0).reduce().is_none());
        let s = wheel(&[5.0, 2.0, 2.0], 0).reduce().unwrap();
        assert_eq!((s.beta, s.gamma, s.n_sectors), (2.0, 5.0, 3));
    }

    #[test]
    fn mode_parses() {
        assert_eq!("exact".parse::<Mode>(), Ok(Mode::Exact));
        assert_eq!("idealized".parse::<Mode>(), Ok(Mode::Idealized));
        assert!("fast".parse::<Mode>().is_err());
    }
}
