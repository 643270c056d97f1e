//! Grover search on a real state vector.
//!
//! Every operator involved (the single-qubit Hadamard `M`, the 180° oracle
//! phase flip, and the diffusion transform) has real entries, so amplitudes
//! are stored as `f64`.
//!
//! The diffusion transform is the reflection `D = -I + (2/N)·J`, with `J` the
//! all-ones matrix: it maps each amplitude `a` to `2·mean - a`. `(1/N)·J` is
//! the projection onto the average; a `J` coefficient of `1/(2N)`, or `1/2`
//! for the projection, would not give a reflection (`D² ≠ I`) and is not what
//! is implemented here. `D` is applied in O(N) and never built as a matrix.

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use std::f64::consts::FRAC_1_SQRT_2;
use thiserror::Error;

use crate::classical::THRESHOLD_SLACK;

/// Largest register the simulator will allocate (2^24 amplitudes).
pub const MAX_QUBITS: u32 = 24;

/// Allowed drift of the L2 norm from 1 for a stored state.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Allowed drift of the L2 norm from 1 before measurement refuses to sample.
pub const MEASURE_NORM_TOLERANCE: f64 = 1e-6;

/// Slack on the per-step amplitude gain checked by [`min_increase_audit`].
pub const AUDIT_SLACK: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantumError {
    #[error("qubit count must be in 1..={MAX_QUBITS}, got {0}")]
    QubitCount(u32),
    #[error("amplitude vector length {0} is not a power of two >= 2")]
    BadLength(usize),
    #[error("state norm {0} deviates from 1")]
    NotNormalized(f64),
    #[error("target {target} out of range for {dim} basis states")]
    TargetOutOfRange { target: usize, dim: usize },
    #[error("threshold must lie in (0, 1], got {0}")]
    InvalidThreshold(f64),
    #[error("threshold {threshold} not reached within {cap} Grover iterations")]
    ThresholdNotReached { threshold: f64, cap: u64 },
    #[error("reached 1/2 only after {k} iterations, above ceil(sqrt N) = {bound}")]
    SqrtBoundExceeded { k: u64, bound: u64 },
    #[error("minimum-increase audit needs N >= 8, got {0}")]
    AuditTooSmall(usize),
}

pub type Result<T> = std::result::Result<T, QuantumError>;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: u32,
    amplitudes: Vec<f64>,
}

impl StateVector {
    /// `|0...0>`: amplitude 1 at index 0.
    pub fn basis_state(n_qubits: u32) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n_qubits) {
            return Err(QuantumError::QubitCount(n_qubits));
        }
        let mut amplitudes = vec![0.0; 1usize << n_qubits];
        amplitudes[0] = 1.0;
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Equal positive superposition, prepared as `M^{⊗n} |0...0>`.
    pub fn uniform_state(n_qubits: u32) -> Result<Self> {
        Ok(Self::basis_state(n_qubits)?.walsh_hadamard())
    }

    pub fn from_amplitudes(amplitudes: Vec<f64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(QuantumError::BadLength(len));
        }
        let n_qubits = len.trailing_zeros();
        if n_qubits > MAX_QUBITS {
            return Err(QuantumError::QubitCount(n_qubits));
        }
        let state = Self {
            n_qubits,
            amplitudes,
        };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE || norm.is_nan() {
            return Err(QuantumError::NotNormalized(norm));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    fn check_target(&self, target: usize) -> Result<()> {
        if target >= self.dim() {
            return Err(QuantumError::TargetOutOfRange {
                target,
                dim: self.dim(),
            });
        }
        Ok(())
    }

    /// Applies `M` to every qubit with the in-place butterfly, O(N log N).
    pub fn walsh_hadamard(mut self) -> Self {
        let amps = &mut self.amplitudes;
        let n = amps.len();
        let mut half = 1;
        while half < n {
            for block in amps.chunks_exact_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * FRAC_1_SQRT_2;
                    *b = (x - y) * FRAC_1_SQRT_2;
                }
            }
            half *= 2;
        }
        self
    }

    /// Reverses the sign of the target amplitude.
    pub fn oracle_phase_flip(mut self, target: usize) -> Result<Self> {
        self.check_target(target)?;
        self.amplitudes[target] = -self.amplitudes[target];
        Ok(self)
    }

    /// Inversion about the average amplitude: `a -> 2·mean - a`.
    pub fn diffusion(mut self) -> Self {
        let mean = self.amplitudes.iter().sum::<f64>() / self.dim() as f64;
        let twice = 2.0 * mean;
        for a in &mut self.amplitudes {
            *a = twice - *a;
        }
        self
    }

    pub fn grover_iteration(self, target: usize) -> Result<Self> {
        Ok(self.oracle_phase_flip(target)?.diffusion())
    }

    pub fn success_probability(&self, target: usize) -> Result<f64> {
        self.check_target(target)?;
        let a = self.amplitudes[target];
        Ok(a * a)
    }

    pub fn measure<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        Ok(MeasurementSampler::new(self)?.measure(rng))
    }
}

/// Reusable sampler over `|a_j|²` for repeated measurements of one state.
#[derive(Debug, Clone)]
pub struct MeasurementSampler {
    index: WeightedIndex<f64>,
}

impl MeasurementSampler {
    pub fn new(state: &StateVector) -> Result<Self> {
        let norm = state.norm();
        if (norm - 1.0).abs() > MEASURE_NORM_TOLERANCE || norm.is_nan() {
            return Err(QuantumError::NotNormalized(norm));
        }
        let index = WeightedIndex::new(state.amplitudes.iter().map(|a| a * a))
            .map_err(|_| QuantumError::NotNormalized(norm))?;
        Ok(Self { index })
    }

    pub fn measure<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.index.sample(rng)
    }
}

/// `sin²((2k+1)·asin(1/√N))`, the textbook success probability after `k`
/// iterations from the uniform state.
pub fn closed_form_probability(n: usize, k: u64) -> f64 {
    let theta = (1.0 / (n as f64).sqrt()).asin();
    let s = ((2 * k + 1) as f64 * theta).sin();
    s * s
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverRecord {
    pub k: u64,
    pub target_amplitude: f64,
    pub success_probability: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GroverTrace {
    pub records: Vec<GroverRecord>,
}

impl GroverTrace {
    fn push(&mut self, k: u64, state: &StateVector, target: usize) {
        let a = state.amplitudes[target];
        self.records.push(GroverRecord {
            k,
            target_amplitude: a,
            success_probability: a * a,
            norm: state.norm(),
        });
    }
}

/// Iterates Grover from the uniform state, recording iterations `0..=steps`.
pub fn grover_trace(n_qubits: u32, target: usize, steps: u64) -> Result<GroverTrace> {
    let mut state = StateVector::uniform_state(n_qubits)?;
    state.check_target(target)?;
    let mut trace = GroverTrace::default();
    trace.push(0, &state, target);
    for k in 1..=steps {
        state = state.grover_iteration(target)?;
        trace.push(k, &state, target);
    }
    Ok(trace)
}

pub fn ceil_sqrt(n: usize) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r < n as u64 {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n as u64 {
        r -= 1;
    }
    r
}

/// Outcome of a Grover threshold search.
#[derive(Debug, Clone, PartialEq)]
pub struct GroverHit {
    pub k: u64,
    pub probability: f64,
    /// Iterations `0..=k`.
    pub trace: GroverTrace,
    /// Final state after `k` iterations.
    pub state: StateVector,
}

/// Smallest `k >= 1` whose success probability reaches `threshold`.
///
/// The search iterates the full state vector from the uniform start (target
/// index 0; the count is the same for every target by symmetry) and gives
/// up after `4·ceil(√N)` iterations. At least one oracle query is always
/// made. For `threshold == 0.5` the result is also checked against
/// `k <= ceil(√N)`.
pub fn iterations_to_threshold(n_qubits: u32, threshold: f64) -> Result<GroverHit> {
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(QuantumError::InvalidThreshold(threshold));
    }
    let target = 0;
    let mut state = StateVector::uniform_state(n_qubits)?;
    let n = state.dim();
    let cap = 4 * ceil_sqrt(n);
    let mut trace = GroverTrace::default();
    trace.push(0, &state, target);
    for k in 1..=cap {
        state = state.grover_iteration(target)?;
        trace.push(k, &state, target);
        let p = state.success_probability(target)?;
        if p >= threshold - THRESHOLD_SLACK {
            if threshold == 0.5 && k > ceil_sqrt(n) {
                return Err(QuantumError::SqrtBoundExceeded {
                    k,
                    bound: ceil_sqrt(n),
                });
            }
            return Ok(GroverHit {
                k,
                probability: p,
                trace,
                state,
            });
        }
    }
    Err(QuantumError::ThresholdNotReached { threshold, cap })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditVerdict {
    Pass,
    /// The step from `k` to `k + 1` gained less than `1/√(2N)`.
    Fail {
        step: u64,
    },
}

/// Checks that every Grover step taken while the non-target mass
/// `X² = 1 - p` exceeds 1/2 raised the target amplitude by at least
/// `1/√(2N)`.
pub fn min_increase_audit(trace: &GroverTrace, n: usize) -> Result<AuditVerdict> {
    if n < 8 {
        return Err(QuantumError::AuditTooSmall(n));
    }
    let bound = 1.0 / (2.0 * n as f64).sqrt() - AUDIT_SLACK;
    for pair in trace.records.windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        let x_sq = 1.0 - cur.success_probability;
        if x_sq > 0.5 && next.target_amplitude - cur.target_amplitude < bound {
            return Ok(AuditVerdict::Fail { step: cur.k });
        }
    }
    Ok(AuditVerdict::Pass)
}
