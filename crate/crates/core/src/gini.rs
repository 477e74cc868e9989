//! Gini indices with respect to the position and momentum bases.
//!
//! `G = 1 - 2/(d+1) * sum_l L(l)`: zero for the uniform distribution and
//! `(d-1)/(d+1)` when one outcome is certain.

use serde::Serialize;

use crate::lorenz::lorenz_curve;
use crate::qsystem::{DensityMatrix, ProbabilityDistribution, QuantumSystem};
use crate::Result;

/// `(d-1)/(d+1)`, the largest possible Gini index in dimension `d`.
pub fn gini_cap(d: usize) -> f64 {
    (d as f64 - 1.0) / (d as f64 + 1.0)
}

/// The normalization `sum_l (l+1)/d = (d+1)/2`.
pub fn normalization(d: usize) -> f64 {
    (d as f64 + 1.0) / 2.0
}

pub fn gini_index(p: &ProbabilityDistribution) -> f64 {
    let lorenz_sum: f64 = lorenz_curve(p).values().iter().sum();
    1.0 - lorenz_sum / normalization(p.dim())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GiniReport {
    pub dim: usize,
    pub g_x: f64,
    pub g_p: f64,
    pub g_xp: f64,
    pub normalization: f64,
}

impl GiniReport {
    pub fn from_distributions(
        position: &ProbabilityDistribution,
        momentum: &ProbabilityDistribution,
    ) -> Self {
        let g_x = gini_index(position);
        let g_p = gini_index(momentum);
        Self {
            dim: position.dim(),
            g_x,
            g_p,
            g_xp: g_x + g_p,
            normalization: normalization(position.dim()),
        }
    }
}

pub fn gini_report(sys: &QuantumSystem, rho: &DensityMatrix) -> Result<GiniReport> {
    let position = sys.position_probs(rho)?;
    let momentum = sys.momentum_probs(rho)?;
    Ok(GiniReport::from_distributions(&position, &momentum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsystem::pure_density;
    use crate::uncertainty::example_state;

    #[test]
    fn index_examples() {
        assert!(gini_index(&ProbabilityDistribution::uniform(3)).abs() < 1e-15);
        let certain = ProbabilityDistribution::new(vec![1.0, 0.0, 0.0]).unwrap();
        assert!((gini_index(&certain) - 0.5).abs() < 1e-15);
        // 1 - (2/4)(3*0.2 + 2*0.3 + 1*0.5) = 0.15
        let p = ProbabilityDistribution::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert!((gini_index(&p) - 0.15).abs() < 1e-15);
        let q = ProbabilityDistribution::new(vec![0.5, 0.2, 0.3]).unwrap();
        assert!((gini_index(&q) - 0.15).abs() < 1e-15);
    }

    #[test]
    fn report_examples() {
        let sys = QuantumSystem::new(3).unwrap();
        let r = gini_report(&sys, &sys.maximally_mixed()).unwrap();
        assert!(r.g_x.abs() < 1e-15 && r.g_p.abs() < 1e-15 && r.g_xp.abs() < 1e-15);
        assert_eq!(r.normalization, 2.0);

        let r = gini_report(&sys, &pure_density(&sys.position_state(0)).unwrap()).unwrap();
        assert!((r.g_x - 0.5).abs() < 1e-12 && r.g_p.abs() < 1e-12 && (r.g_xp - 0.5).abs() < 1e-12);

        let r = gini_report(&sys, &pure_density(&example_state(&sys)).unwrap()).unwrap();
        assert!((r.g_x - 0.341_506_4).abs() < 1e-7);
        assert!((r.g_p - 0.341_506_4).abs() < 1e-7);
        assert!((r.g_xp - 0.683_012_7).abs() < 1e-7);
        assert_eq!(r.g_xp, r.g_x + r.g_p);
    }

    #[test]
    fn report_rejects_dimension_mismatch() {
        let sys = QuantumSystem::new(3).unwrap();
        assert!(gini_report(&sys, &DensityMatrix::maximally_mixed(5)).is_err());
    }
}
