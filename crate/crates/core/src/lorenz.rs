//! Ordering permutations and Lorenz values.
//!
//! The Lorenz value `L(l)` is the sum of the `l + 1` smallest probabilities
//! of a distribution. Ties in the ascending sort are broken by the original
//! index, so the permutation is deterministic; the Lorenz values themselves
//! do not depend on the tie order.

use serde::Serialize;

use crate::qsystem::ProbabilityDistribution;
use crate::{Error, Result};

/// Slack for the upper bound `L(l) <= (l+1)/d`.
pub const BOUND_SLACK: f64 = 1e-12;

/// Indices of a distribution listed in ascending order of probability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct OrderingPermutation {
    order: Vec<usize>,
}

impl OrderingPermutation {
    pub fn dim(&self) -> usize {
        self.order.len()
    }

    /// `order[k]` is the index of the `k`-th smallest probability.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The distribution rearranged into ascending order.
    pub fn apply(&self, p: &ProbabilityDistribution) -> Vec<f64> {
        self.order.iter().map(|&i| p.probs()[i]).collect()
    }
}

pub fn ordering_permutation(p: &ProbabilityDistribution) -> OrderingPermutation {
    let probs = p.probs();
    let mut order: Vec<usize> = (0..probs.len()).collect();
    // sort_by is stable, so equal probabilities keep ascending index order
    order.sort_by(|&a, &b| probs[a].total_cmp(&probs[b]));
    OrderingPermutation { order }
}

/// Lorenz values together with the permutation that produced them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LorenzCurve {
    permutation: OrderingPermutation,
    values: Vec<f64>,
}

impl LorenzCurve {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn permutation(&self) -> &OrderingPermutation {
        &self.permutation
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest amount by which any value exceeds `(l+1)/d`, or the most
    /// negative value, whichever is worse. Nonpositive when the bound holds.
    pub fn bound_violation(&self) -> f64 {
        let d = self.dim() as f64;
        self.values
            .iter()
            .enumerate()
            .map(|(l, &v)| (v - (l + 1) as f64 / d).max(-v))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn lorenz_curve(p: &ProbabilityDistribution) -> LorenzCurve {
    let permutation = ordering_permutation(p);
    let values = permutation
        .apply(p)
        .into_iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    LorenzCurve {
        permutation,
        values,
    }
}

/// Whether two distributions admit a common ascending ordering, i.e.
/// `(pa[r] - pa[s]) * (pb[r] - pb[s]) >= 0` for every pair of indices.
pub fn comonotonic(pa: &ProbabilityDistribution, pb: &ProbabilityDistribution) -> Result<bool> {
    if pa.dim() != pb.dim() {
        return Err(Error::DimensionMismatch {
            expected: pa.dim(),
            found: pb.dim(),
        });
    }
    let (a, b) = (pa.probs(), pb.probs());
    let n = a.len();
    Ok((0..n).all(|r| (r + 1..n).all(|s| (a[r] - a[s]) * (b[r] - b[s]) >= 0.0)))
}
