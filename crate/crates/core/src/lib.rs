//! A classical ball-roulette analog of Grover search, a real state-vector
//! Grover simulator, and a harness that measures how the number of
//! iterations needed to reach a success threshold scales with `N`.
//!
//! - [`classical`]: the wheel, the ant routine, throws and brute force.
//! - [`quantum`]: Walsh–Hadamard preparation, oracle, diffusion, measurement.
//! - [`harness`]: scaling runs, log-log fits, Monte Carlo checks, reports.

pub mod classical;
pub mod harness;
pub mod quantum;
pub mod rng;
