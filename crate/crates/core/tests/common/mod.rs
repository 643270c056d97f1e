//! Seeded property checks shared by the property and acceptance suites.
//! Each returns `Err(description)` on the first violation.

#![allow(dead_code)]

use rand::Rng;
use roulette_grover::classical::{ReducedState, Wheel};
use roulette_grover::quantum::StateVector;
use roulette_grover::rng::seeded;

pub const EXACT_TOL: f64 = 1e-12;
pub const ORACLE_TOL: f64 = 1e-9;
pub const STATES_PER_SIZE: usize = 1000;

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= tol * scale || a == b
}

pub fn random_unit_state<R: Rng>(rng: &mut R, n_qubits: u32) -> StateVector {
    let n = 1usize << n_qubits;
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    StateVector::from_amplitudes(raw.iter().map(|x| x / norm).collect()).unwrap()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Sum of counts is unchanged by an ant pass, on random wheels where the
/// pass is defined and on uniform starts followed for several passes.
pub fn check_conservation(seed: u64) -> Result<usize, String> {
    let mut rng = seeded(seed);
    let mut checked = 0;
    for _ in 0..2000 {
        let n = rng.gen_range(2..=64);
        let counts: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
        let target = rng.gen_range(0..n);
        let w = Wheel::from_counts(counts, target).unwrap();
        let Ok(next) = w.ant_iteration() else {
            continue;
        };
        if !rel_close(next.total(), w.total(), EXACT_TOL) {
            return Err(format!("N={n}: total {} -> {}", w.total(), next.total()));
        }
        checked += 1;
    }
    for n in 2..=64 {
        let mut w = Wheel::new_uniform(n, 1.7, n / 2).unwrap();
        let start = w.total();
        for k in 0..n {
            w = w.ant_iteration().map_err(|e| format!("N={n} k={k}: {e}"))?;
            if !rel_close(w.total(), start, EXACT_TOL) {
                return Err(format!("N={n} k={k}: total drifted to {}", w.total()));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Inversion about average, applied twice, returns the input.
pub fn check_inversion_involution(seed: u64) -> Result<(), String> {
    let mut rng = seeded(seed);
    for _ in 0..2000 {
        let n = rng.gen_range(2..=64);
        let counts: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
        let w = Wheel::from_counts(counts, 0).unwrap();
        let twice = w
            .invert_about_average()
            .and_then(|x| x.invert_about_average())
            .map_err(|e| format!("N={n}: {e}"))?;
        for (a, b) in twice.counts().iter().zip(w.counts()) {
            if !rel_close(*a, *b, EXACT_TOL) {
                return Err(format!("N={n}: {b} -> {a}"));
            }
        }
    }
    Ok(())
}

/// Each quantum operator is an involution within 1e-12.
pub fn check_quantum_involutions(seed: u64) -> Result<(), String> {
    let mut rng = seeded(seed);
    for n_qubits in 1..=12u32 {
        for _ in 0..100 {
            let s = random_unit_state(&mut rng, n_qubits);
            let target = rng.gen_range(0..s.dim());
            let cases = [
                (
                    "walsh_hadamard",
                    s.clone().walsh_hadamard().walsh_hadamard(),
                ),
                (
                    "oracle",
                    s.clone()
                        .oracle_phase_flip(target)
                        .and_then(|x| x.oracle_phase_flip(target))
                        .unwrap(),
                ),
                ("diffusion", s.clone().diffusion().diffusion()),
            ];
            for (name, twice) in cases {
                let d = max_abs_diff(twice.amplitudes(), s.amplitudes());
                if d > EXACT_TOL {
                    return Err(format!("{name} at n={n_qubits}: deviation {d:e}"));
                }
            }
        }
    }
    Ok(())
}

/// Per-sector ant passes and the reduced recurrence agree on `(beta, gamma)`.
pub fn check_reduction(max_n: usize) -> Result<usize, String> {
    let mut compared = 0;
    for n in 2..=max_n {
        let target = n - 1;
        let mut wheel = Wheel::new_uniform(n, 1.0, target).unwrap();
        let mut reduced = ReducedState::uniform(n, 1.0).unwrap();
        for k in 0..=4 * n {
            let beta = wheel.counts()[0];
            let gamma = wheel.counts()[target];
            if wheel.counts()[..target].iter().any(|c| *c != beta) {
                return Err(format!("N={n} k={k}: non-target sectors diverged"));
            }
            if !rel_close(beta, reduced.beta, ORACLE_TOL)
                || !rel_close(gamma, reduced.gamma, ORACLE_TOL)
            {
                return Err(format!(
                    "N={n} k={k}: wheel ({beta}, {gamma}) vs reduced ({}, {})",
                    reduced.beta, reduced.gamma
                ));
            }
            compared += 1;
            wheel = wheel
                .ant_iteration()
                .map_err(|e| format!("N={n} k={k}: {e}"))?;
            reduced = reduced.reduced_step();
        }
    }
    Ok(compared)
}

/// On a vector that is both a valid wheel and a unit state, diffusion and
/// inversion about average give the same map.
pub fn check_cross_module_identity(seed: u64) -> Result<(), String> {
    let mut rng = seeded(seed);
    for n_qubits in 1..=10u32 {
        for _ in 0..50 {
            let n = 1usize << n_qubits;
            // mild perturbations of uniform keep 2·mean - a positive
            let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.8..1.2)).collect();
            let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
            let v: Vec<f64> = raw.iter().map(|x| x / norm).collect();
            let quantum = StateVector::from_amplitudes(v.clone()).unwrap().diffusion();
            let classical = Wheel::from_counts(v, 0)
                .unwrap()
                .invert_about_average()
                .map_err(|e| format!("n={n_qubits}: {e}"))?;
            let d = max_abs_diff(quantum.amplitudes(), classical.counts());
            if d > EXACT_TOL {
                return Err(format!("n={n_qubits}: maps differ by {d:e}"));
            }
        }
    }
    Ok(())
}

/// Every operator keeps the L2 norm at 1 within 1e-12, over
/// [`STATES_PER_SIZE`] random unit states for each N in 2..=4096.
pub fn check_norm_preservation(seed: u64) -> Result<usize, String> {
    let mut rng = seeded(seed);
    let mut checked = 0;
    for n_qubits in 1..=12u32 {
        for _ in 0..STATES_PER_SIZE {
            let s = random_unit_state(&mut rng, n_qubits);
            let base = s.norm();
            let target = rng.gen_range(0..s.dim());
            let outputs = [
                ("walsh_hadamard", s.clone().walsh_hadamard()),
                ("oracle", s.clone().oracle_phase_flip(target).unwrap()),
                ("diffusion", s.clone().diffusion()),
                ("grover_iteration", s.grover_iteration(target).unwrap()),
            ];
            for (name, out) in outputs {
                if (out.norm() - base).abs() > EXACT_TOL || (out.norm() - 1.0).abs() > EXACT_TOL {
                    return Err(format!("{name} at n={n_qubits}: norm {}", out.norm()));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}
