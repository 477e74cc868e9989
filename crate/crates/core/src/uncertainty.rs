//! Bounds on `sup G_XP` and an estimator for it.
//!
//! With `c = (d-1)/(d+1)` the supremum `S(d)` of `G_XP` over all density
//! matrices satisfies
//!
//! ```text
//! c (1 + 1/(1 + sqrt d))  <=  S(d)  <  2c
//! ```
//!
//! and the uncertainty coefficient `eta(d) = 2c - S(d)` lies in
//! `(0, c sqrt(d)/(1 + sqrt(d))]`. The lower end is attained by the state
//! `|s> ~ |X;0> + |P;0>` from [`example_state`].
//!
//! `G_XP` is convex (each Gini index is subadditive under mixing), so the
//! supremum is approached on pure states. [`estimate_sup_gini`] searches
//! the unit sphere of `C^d` with a coordinate pattern search started from
//! `|s>` and from random points. The result is a lower bound on `S(d)`,
//! which makes the reported `eta` an upper estimate of the true coefficient.

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::gini::{gini_cap, gini_report, GiniReport};
use crate::qsystem::{check_dimension, pure_density, QuantumSystem, StateVector};
use crate::sampling::{restart_seed, Sampler};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundSet {
    pub dim: usize,
    /// `(d-1)/(d+1)`
    pub gini_cap: f64,
    /// `G_XP` of the example state; a lower bound on the supremum.
    pub g_lower: f64,
    /// `2(d-1)/(d+1)`, never reached.
    pub g_strict_upper: f64,
    /// `g_strict_upper - g_lower`
    pub eta_upper: f64,
}

pub fn bounds(d: usize) -> Result<BoundSet> {
    check_dimension(d)?;
    let cap = gini_cap(d);
    let root = (d as f64).sqrt();
    Ok(BoundSet {
        dim: d,
        gini_cap: cap,
        g_lower: cap * (1.0 + 1.0 / (1.0 + root)),
        g_strict_upper: 2.0 * cap,
        eta_upper: cap * root / (1.0 + root),
    })
}

/// `(d-1)/(d+1) * (1 + 1/(1 + sqrt d))`, the value of `G_XP` at
/// [`example_state`].
pub fn example_gini_closed_form(d: usize) -> Result<f64> {
    bounds(d).map(|b| b.g_lower)
}

/// `|s> = d^{1/4} / sqrt(2 sqrt(d) + 2) * (|X;0> + |P;0>)`.
pub fn example_state(sys: &QuantumSystem) -> StateVector {
    let d = sys.dim() as f64;
    let c = d.powf(0.25) / (2.0 * d.sqrt() + 2.0).sqrt();
    let sum = sys.position_state(0).amplitudes() + sys.momentum_state(0).amplitudes();
    StateVector::new(sum.scale(c).iter().copied().collect()).expect("normalized by construction")
}

/// `D(a,b)(|X;0> + |P;0>)`, normalized.
pub fn displaced_example_state(sys: &QuantumSystem, alpha: i64, beta: i64) -> Result<StateVector> {
    sys.displacement(alpha, beta).apply(&example_state(sys))
}

/// `G_XP` of a pure state, computed from amplitudes without forming `|psi><psi|`.
pub fn pure_gini_xp(sys: &QuantumSystem, state: &StateVector) -> Result<f64> {
    let position = sys.pure_position_probs(state)?;
    let momentum = sys.pure_momentum_probs(state)?;
    Ok(GiniReport::from_distributions(&position, &momentum).g_xp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    /// Pattern-search sweeps per restart.
    pub iterations: usize,
    pub seed: u64,
    pub initial_step: f64,
    /// A restart stops once its step has been halved below this.
    pub min_step: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            iterations: 2000,
            seed: 42,
            initial_step: 0.3,
            min_step: 1e-7,
        }
    }
}

impl SearchOptions {
    pub fn new(restarts: usize, iterations: usize, seed: u64) -> Self {
        Self {
            restarts,
            iterations,
            seed,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct RestartOutcome {
    pub index: usize,
    pub best_value: f64,
    pub best_state: StateVector,
    /// Best value after each sweep.
    pub history: Vec<f64>,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct EtaEstimate {
    pub dim: usize,
    pub g_sup_estimate: f64,
    pub eta_estimate: f64,
    pub bounds: BoundSet,
    pub best_state: StateVector,
    pub best_restart: usize,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    pub converged: bool,
}

fn to_params(state: &StateVector) -> Vec<f64> {
    state
        .amplitudes()
        .iter()
        .flat_map(|z| [z.re, z.im])
        .collect()
}

fn from_params(x: &[f64]) -> Result<StateVector> {
    let amps = DVector::from_iterator(
        x.len() / 2,
        x.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])),
    );
    Ok(StateVector::normalize(amps)?.with_fixed_gauge())
}

/// Coordinate pattern search maximizing `G_XP` over pure states.
///
/// Each sweep tries `x +/- step * e_j` for every real coordinate `j` of the
/// (gauge-fixed) amplitude vector, projecting back to the unit sphere, and
/// keeps the first strict improvement per coordinate. A sweep without any
/// improvement halves the step.
pub fn pattern_search(
    sys: &QuantumSystem,
    start: &StateVector,
    iterations: usize,
    initial_step: f64,
    min_step: f64,
) -> Result<RestartOutcome> {
    let mut best_state = start.with_fixed_gauge();
    let mut best_value = pure_gini_xp(sys, &best_state)?;
    let mut x = to_params(&best_state);
    let mut step = initial_step;
    let mut history = Vec::with_capacity(iterations.min(4096));
    let mut converged = false;

    for _ in 0..iterations {
        let mut improved = false;
        for j in 0..x.len() {
            for sign in [1.0, -1.0] {
                let mut trial = x.clone();
                trial[j] += sign * step;
                let Ok(state) = from_params(&trial) else {
                    continue;
                };
                let value = pure_gini_xp(sys, &state)?;
                if value > best_value {
                    best_value = value;
                    x = to_params(&state);
                    best_state = state;
                    improved = true;
                    break;
                }
            }
        }
        history.push(best_value);
        if !improved {
            step *= 0.5;
            if step < min_step {
                converged = true;
                break;
            }
        }
    }

    Ok(RestartOutcome {
        index: 0,
        best_value,
        best_state,
        history,
        converged,
    })
}

/// Runs `restarts` independent pattern searches and keeps the best.
///
/// Restart 0 starts at [`example_state`]; restart `i > 0` starts at a random
/// pure state drawn with seed `restart_seed(seed, i)`. Restarts run in
/// parallel; the winner is the largest value, ties going to the lowest index.
pub fn estimate_sup_gini(
    sys: &QuantumSystem,
    restarts: usize,
    iterations: usize,
    seed: u64,
) -> Result<EtaEstimate> {
    estimate_sup_gini_with(sys, &SearchOptions::new(restarts, iterations, seed))
}

pub fn estimate_sup_gini_with(sys: &QuantumSystem, opts: &SearchOptions) -> Result<EtaEstimate> {
    if opts.restarts < 1 || opts.iterations < 1 {
        return Err(Error::BudgetTooSmall);
    }
    let d = sys.dim();
    let outcomes: Vec<RestartOutcome> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| {
            let start = if i == 0 {
                example_state(sys)
            } else {
                Sampler::new(restart_seed(opts.seed, i as u64)).pure_state(d)
            };
            pattern_search(
                sys,
                &start,
                opts.iterations,
                opts.initial_step,
                opts.min_step,
            )
            .map(|o| RestartOutcome { index: i, ..o })
        })
        .collect::<Result<_>>()?;

    let best = outcomes
        .iter()
        .reduce(|a, b| if b.best_value > a.best_value { b } else { a })
        .expect("at least one restart");

    let bounds = bounds(d)?;
    let g_sup_estimate = gini_report(sys, &pure_density(&best.best_state)?)?.g_xp;
    Ok(EtaEstimate {
        dim: d,
        g_sup_estimate,
        eta_estimate: bounds.g_strict_upper - g_sup_estimate,
        bounds,
        best_state: best.best_state.clone(),
        best_restart: best.index,
        restarts: opts.restarts,
        iterations: opts.iterations,
        seed: opts.seed,
        converged: best.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_state_amplitudes_d3() {
        let sys = QuantumSystem::new(3).unwrap();
        let s = example_state(&sys);
        let a = s.amplitudes();
        let c = 3f64.powf(0.25) / (2.0 * 3f64.sqrt() + 2.0).sqrt();
        assert!((a[0].re - c * (1.0 + 1.0 / 3f64.sqrt())).abs() < 1e-15);
        assert!((a[0].norm_sqr() - 0.788_675_1).abs() < 1e-7);
        assert!((a[1].norm_sqr() - 0.105_662_4).abs() < 1e-7);
        assert!((a[2].norm_sqr() - 0.105_662_4).abs() < 1e-7);
        for d in [3, 5, 7, 9, 11, 15, 21, 51] {
            let s = example_state(&QuantumSystem::new(d).unwrap());
            assert!((s.amplitudes().norm_squared() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_values() {
        for (d, v) in [(3, 0.683_012_7), (5, 0.872_678_0), (7, 0.955_718_9)] {
            assert!((example_gini_closed_form(d).unwrap() - v).abs() < 1e-7);
        }
        assert_eq!(
            example_gini_closed_form(4).unwrap_err(),
            Error::EvenDimension(4)
        );
    }

    #[test]
    fn bound_values() {
        let b = bounds(3).unwrap();
        assert!((b.eta_upper - 0.316_987_3).abs() < 1e-7);
        assert!((b.g_strict_upper - 1.0).abs() < 1e-15);
        assert!((b.g_lower + b.eta_upper - b.g_strict_upper).abs() < 1e-12);
        let b = bounds(5).unwrap();
        assert!((b.eta_upper - 0.460_655_3).abs() < 1e-7);
        assert!((b.g_lower - 0.872_678_0).abs() < 1e-7);
        for d in (3..200).step_by(2) {
            let b = bounds(d).unwrap();
            assert!((b.g_lower + b.eta_upper - b.g_strict_upper).abs() < 1e-12);
            assert!(0.0 < b.eta_upper && b.eta_upper < b.gini_cap);
        }
        assert!(bounds(8).is_err());
    }

    #[test]
    fn budget_checked() {
        let sys = QuantumSystem::new(3).unwrap();
        assert_eq!(
            estimate_sup_gini(&sys, 0, 10, 1).unwrap_err(),
            Error::BudgetTooSmall
        );
        assert_eq!(
            estimate_sup_gini(&sys, 3, 0, 1).unwrap_err(),
            Error::BudgetTooSmall
        );
    }

    #[test]
    fn pattern_search_history_is_monotone() {
        let sys = QuantumSystem::new(5).unwrap();
        let start = Sampler::new(9).pure_state(5);
        let out = pattern_search(&sys, &start, 300, 0.3, 1e-7).unwrap();
        assert!(out.history.windows(2).all(|w| w[1] >= w[0]));
        assert!(out.best_value >= pure_gini_xp(&sys, &start).unwrap());
    }

    #[test]
    fn small_budget_estimate_is_bracketed() {
        let sys = QuantumSystem::new(3).unwrap();
        let est = estimate_sup_gini(&sys, 4, 50, 7).unwrap();
        let b = est.bounds;
        assert!(est.g_sup_estimate >= b.g_lower - 1e-12);
        assert!(est.g_sup_estimate < b.g_strict_upper);
        assert!(est.eta_estimate > 0.0 && est.eta_estimate <= b.eta_upper + 1e-9);
        assert!((est.eta_estimate - (b.g_strict_upper - est.g_sup_estimate)).abs() < 1e-12);
    }
}
