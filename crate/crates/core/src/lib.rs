//! Lorenz values, Gini indices and a Gini-based uncertainty coefficient for
//! quantum systems with an odd-dimensional Hilbert space.
//!
//! The crate is organised bottom-up:
//!
//! - [`qsystem`]: the system `Z(d)`: position/momentum bases, the finite
//!   Fourier matrix, displacement operators, coherent states, density
//!   matrices and their measurement distributions.
//! - [`lorenz`]: ordering permutations, Lorenz values and comonotonicity.
//! - [`gini`]: the position and momentum Gini indices and their sum `G_XP`.
//! - [`uncertainty`]: the closed-form bounds on `sup G_XP`, the extremal
//!   example state, and a random-restart pattern search that estimates the
//!   supremum (and hence the uncertainty coefficient `eta(d)`).
//! - [`sampling`]: seeded random states and distributions for property checks.
//! - [`statefile`]: the JSON state-file format.
//! - [`audit`]: the property suites, runnable on any seed.
//!
//! ```
//! use qgini::{gini, qsystem::QuantumSystem, uncertainty};
//!
//! let sys = QuantumSystem::new(3).unwrap();
//! let s = uncertainty::example_state(&sys);
//! let rho = qgini::qsystem::pure_density(&s).unwrap();
//! let report = gini::gini_report(&sys, &rho).unwrap();
//! assert!((report.g_xp - 0.6830127).abs() < 1e-7);
//! ```

#![forbid(unsafe_code)]

pub mod audit;
mod error;
pub mod gini;
pub mod lorenz;
pub mod qsystem;
pub mod sampling;
pub mod statefile;
pub mod uncertainty;

pub use error::{Error, Result};
pub use num_complex::Complex64;
