//! Seeded random states and distributions.
//!
//! Pure states have independent standard-normal real and imaginary parts,
//! normalized. Mixed states are convex combinations of such pure states with
//! weights drawn uniformly from the simplex. Everything is reproducible from
//! a 64-bit seed.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::qsystem::{pure_density, CMatrix, DensityMatrix, ProbabilityDistribution, StateVector};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 output function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of restart `index`: the `index + 1`-th output of a SplitMix64
/// stream started at `master`.
pub fn restart_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA)))
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform in `[0, 1]`.
    pub fn weight(&mut self) -> f64 {
        self.rng.random_range(0.0..=1.0)
    }

    /// Uniform in `0..n`.
    pub fn index(&mut self, n: i64) -> i64 {
        self.rng.random_range(0..n)
    }

    /// Flat Dirichlet sample of length `k`.
    pub fn simplex(&mut self, k: usize) -> Vec<f64> {
        let raw: Vec<f64> = (0..k).map(|_| self.rng.sample(Exp1)).collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|x| x / total).collect()
    }

    pub fn distribution(&mut self, d: usize) -> ProbabilityDistribution {
        ProbabilityDistribution::new(self.simplex(d)).expect("simplex sample is a distribution")
    }

    pub fn gaussian_vector(&mut self, d: usize) -> DVector<Complex64> {
        DVector::from_fn(d, |_, _| {
            Complex64::new(
                self.rng.sample(StandardNormal),
                self.rng.sample(StandardNormal),
            )
        })
    }

    pub fn pure_state(&mut self, d: usize) -> StateVector {
        loop {
            if let Ok(s) = StateVector::normalize(self.gaussian_vector(d)) {
                return s;
            }
        }
    }

    /// Mixture of `k` random pure states.
    pub fn mixed_state(&mut self, d: usize, k: usize) -> DensityMatrix {
        let weights = self.simplex(k);
        let mut m = CMatrix::zeros(d, d);
        for w in weights {
            let rho = pure_density(&self.pure_state(d)).expect("normalized");
            m += rho.entries().scale(w);
        }
        DensityMatrix::validate(m).expect("convex combination of projectors")
    }

    /// Mixture of a random number (1 to `d`) of random pure states.
    pub fn density_matrix(&mut self, d: usize) -> DensityMatrix {
        let k = self.rng.random_range(1..=d);
        self.mixed_state(d, k)
    }

    /// Two random distributions sharing one ascending ordering.
    pub fn comonotonic_pair(&mut self, d: usize) -> (Vec<f64>, Vec<f64>) {
        let mut a = self.simplex(d);
        let mut b = self.simplex(d);
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        let mut slots: Vec<usize> = (0..d).collect();
        slots.shuffle(&mut self.rng);
        let mut pa = vec![0.0; d];
        let mut pb = vec![0.0; d];
        for (k, &slot) in slots.iter().enumerate() {
            pa[slot] = a[k];
            pb[slot] = b[k];
        }
        (pa, pb)
    }

    /// Random convex combination of position projectors.
    pub fn position_mixture(&mut self, d: usize) -> DensityMatrix {
        DensityMatrix::from_diagonal(&self.simplex(d)).expect("diagonal distribution")
    }
}
