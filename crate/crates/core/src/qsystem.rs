//! The finite quantum system: a `d`-dimensional Hilbert space with `d` odd,
//! its position basis `|X;r>`, the momentum basis `|P;r> = F|X;r>`, the
//! displacement operators `D(a,b)` on the phase space `Z(d) x Z(d)`, and the
//! state types (pure states, density matrices, measurement distributions).
//!
//! Powers of `omega` are always taken by reducing the exponent mod `d` and
//! indexing a precomputed table, never by repeated multiplication.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Max entrywise deviation of `UU^†` from the identity.
pub const UNITARY_TOL: f64 = 1e-12;
/// Allowed deviation of a state's squared norm from 1.
pub const NORM_TOL: f64 = 1e-10;
/// Hermiticity, trace and eigenvalue slack for density matrices.
pub const DENSITY_TOL: f64 = 1e-10;
/// Negative probabilities down to this magnitude are clamped to zero.
pub const CLAMP_TOL: f64 = 1e-12;
/// A fiducial whose overlap with a basis state reaches `1 - FIDUCIAL_TOL`
/// counts as that basis state.
pub const FIDUCIAL_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Checks that `d` is a valid dimension: odd and at least 3.
pub fn check_dimension(d: usize) -> Result<()> {
    if d.is_multiple_of(2) {
        return Err(Error::EvenDimension(d));
    }
    if d < 3 {
        return Err(Error::DimensionTooSmall(d));
    }
    Ok(())
}

fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// A normalized vector in the Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: CVector,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized (within [`NORM_TOL`]).
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let amplitudes = CVector::from_vec(amplitudes);
        let norm2 = amplitudes.norm_squared();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes arbitrary (nonzero) amplitudes.
    pub fn normalize(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            amplitudes: amplitudes.unscale(norm),
        })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// The same ray with the first nonzero amplitude made real and nonnegative.
    pub fn with_fixed_gauge(&self) -> StateVector {
        let lead = self
            .amplitudes
            .iter()
            .find(|z| z.norm_sqr() > 0.0)
            .copied()
            .unwrap_or(ONE);
        let phase = lead.conj() / lead.norm();
        StateVector {
            amplitudes: self.amplitudes.map(|z| z * phase),
        }
    }
}

/// A unitary `d x d` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    entries: CMatrix,
}

impl UnitaryMatrix {
    /// Validates unitarity to [`UNITARY_TOL`].
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        let u = Self { entries };
        let defect = u.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary(defect));
        }
        Ok(u)
    }

    pub fn identity(d: usize) -> Self {
        Self {
            entries: CMatrix::identity(d, d),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        UnitaryMatrix {
            entries: self.entries.adjoint(),
        }
    }

    pub fn compose(&self, other: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        ensure_dim(self.dim(), other.dim())?;
        Ok(UnitaryMatrix {
            entries: &self.entries * &other.entries,
        })
    }

    /// `max |UU^† - I|` over all entries.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        max_abs(&(&self.entries * self.entries.adjoint() - CMatrix::identity(d, d)))
    }

    /// Applies the operator to a state, renormalizing away round-off.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        ensure_dim(self.dim(), state.dim())?;
        StateVector::normalize(&self.entries * state.amplitudes())
    }

    /// Max entrywise distance to another matrix.
    pub fn distance(&self, other: &UnitaryMatrix) -> f64 {
        max_abs(&(&self.entries - &other.entries))
    }
}

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    /// Checks Hermiticity, trace and positivity, in that order, each to
    /// [`DENSITY_TOL`].
    pub fn validate(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        let asym = max_abs(&(&entries - entries.adjoint()));
        if asym > DENSITY_TOL {
            return Err(Error::NotHermitian(asym));
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > DENSITY_TOL || trace.im.abs() > DENSITY_TOL {
            return Err(Error::TraceNotOne(trace.re));
        }
        let rho = Self { entries };
        let min_eig = rho
            .eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -DENSITY_TOL {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(rho)
    }

    /// Diagonal density matrix with the given probabilities.
    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        let diag =
            CVector::from_iterator(probs.len(), probs.iter().map(|&p| Complex64::new(p, 0.0)));
        Self::validate(CMatrix::from_diagonal(&diag))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self {
            entries: CMatrix::identity(d, d).unscale(d as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut eig: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        eig.sort_by(f64::total_cmp);
        eig
    }

    /// `l1 * rho + (1 - l1) * sigma`.
    pub fn mix(rho: &DensityMatrix, sigma: &DensityMatrix, l1: f64) -> Result<DensityMatrix> {
        if !(0.0..=1.0).contains(&l1) {
            return Err(Error::WeightOutOfRange(l1));
        }
        ensure_dim(rho.dim(), sigma.dim())?;
        let l2 = 1.0 - l1;
        Self::validate(rho.entries.scale(l1) + sigma.entries.scale(l2))
    }

    /// `U^† rho U`.
    pub fn conjugate(&self, u: &UnitaryMatrix) -> Result<DensityMatrix> {
        ensure_dim(self.dim(), u.dim())?;
        let m = u.entries().adjoint() * &self.entries * u.entries();
        Self::validate(m)
    }

    /// Max entrywise distance to another density matrix.
    pub fn distance(&self, other: &DensityMatrix) -> f64 {
        max_abs(&(&self.entries - &other.entries))
    }
}

/// The rank-one projector `|psi><psi|`.
pub fn pure_density(state: &StateVector) -> Result<DensityMatrix> {
    let norm2 = state.amplitudes().norm_squared();
    if (norm2 - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(norm2));
    }
    let a = state.amplitudes();
    Ok(DensityMatrix {
        entries: a * a.adjoint(),
    })
}

/// Nonnegative reals summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    probs: Vec<f64>,
}

impl ProbabilityDistribution {
    /// Entries in `[-CLAMP_TOL, 0)` are clamped to zero; the sum must be 1
    /// within [`DENSITY_TOL`].
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        for (index, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() || *p < -CLAMP_TOL {
                return Err(Error::NegativeProbability { index, value: *p });
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > DENSITY_TOL {
            return Err(Error::ProbabilitySum(sum));
        }
        Ok(Self { probs })
    }

    pub fn uniform(d: usize) -> Self {
        Self {
            probs: vec![1.0 / d as f64; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// The arena: dimension, roots of unity and the cached Fourier matrix.
#[derive(Debug, Clone)]
pub struct QuantumSystem {
    dim: usize,
    roots: Vec<Complex64>,
    fourier: UnitaryMatrix,
}

impl QuantumSystem {
    pub fn new(d: usize) -> Result<Self> {
        check_dimension(d)?;
        let roots: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64))
            .collect();
        let scale = (d as f64).sqrt();
        let fourier = CMatrix::from_fn(d, d, |r, s| roots[(r * s) % d] / scale);
        Ok(Self {
            dim: d,
            roots,
            fourier: UnitaryMatrix { entries: fourier },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `omega = exp(i 2 pi / d)`.
    pub fn omega(&self) -> Complex64 {
        self.roots[1]
    }

    /// `omega^k` for any integer `k`.
    pub fn root(&self, k: i64) -> Complex64 {
        self.roots[self.reduce(k)]
    }

    /// The inverse of 2 in `Z(d)`, i.e. `(d+1)/2`.
    pub fn half_inverse(&self) -> usize {
        self.dim.div_ceil(2)
    }

    /// `k mod d` in `0..d`.
    pub fn reduce(&self, k: i64) -> usize {
        k.rem_euclid(self.dim as i64) as usize
    }

    pub fn fourier(&self) -> &UnitaryMatrix {
        &self.fourier
    }

    pub fn identity(&self) -> UnitaryMatrix {
        UnitaryMatrix::identity(self.dim)
    }

    /// `|X;r>`.
    pub fn position_state(&self, r: i64) -> StateVector {
        let mut a = CVector::from_element(self.dim, ZERO);
        a[self.reduce(r)] = ONE;
        StateVector { amplitudes: a }
    }

    /// `|P;r> = F|X;r>`, the `r`-th column of `F`.
    pub fn momentum_state(&self, r: i64) -> StateVector {
        StateVector {
            amplitudes: self.fourier.entries.column(self.reduce(r)).into_owned(),
        }
    }

    /// Amplitudes proportional to `(1, 2, ..., d)`.
    pub fn default_fiducial(&self) -> StateVector {
        let a = CVector::from_fn(self.dim, |r, _| Complex64::new((r + 1) as f64, 0.0));
        StateVector::normalize(a).expect("nonzero by construction")
    }

    pub fn maximally_mixed(&self) -> DensityMatrix {
        DensityMatrix::maximally_mixed(self.dim)
    }

    /// `Z^a`: diagonal with entries `omega^(a m)`.
    pub fn clock(&self, alpha: i64) -> UnitaryMatrix {
        let a = self.reduce(alpha);
        let diag = CVector::from_fn(self.dim, |m, _| self.roots[(a * m) % self.dim]);
        UnitaryMatrix {
            entries: CMatrix::from_diagonal(&diag),
        }
    }

    /// `X^b`: `|X;m> -> |X;m+b>`.
    pub fn shift(&self, beta: i64) -> UnitaryMatrix {
        let b = self.reduce(beta);
        let d = self.dim;
        UnitaryMatrix {
            entries: CMatrix::from_fn(
                d,
                d,
                |row, col| if row == (col + b) % d { ONE } else { ZERO },
            ),
        }
    }

    /// `D(a,b) = Z^a X^b omega^(-2^{-1} a b)`.
    pub fn displacement(&self, alpha: i64, beta: i64) -> UnitaryMatrix {
        let d = self.dim;
        let a = self.reduce(alpha);
        let b = self.reduce(beta);
        let global = (self.half_inverse() * ((a * b) % d)) % d;
        let mut m = CMatrix::from_element(d, d, ZERO);
        for col in 0..d {
            let row = (col + b) % d;
            let exponent = ((a * row) % d + d - global) % d;
            m[(row, col)] = self.roots[exponent];
        }
        UnitaryMatrix { entries: m }
    }

    /// Largest overlap modulus of `state` with any position or momentum
    /// basis state.
    pub fn max_basis_overlap(&self, state: &StateVector) -> Result<f64> {
        ensure_dim(self.dim, state.dim())?;
        let position = state.amplitudes().iter().map(|z| z.norm());
        let momentum = self.momentum_amplitudes(state.amplitudes());
        Ok(position
            .chain(momentum.iter().map(|z| z.norm()))
            .fold(0.0, f64::max))
    }

    /// The coherent state `D(a,b)|f>`.
    pub fn coherent_state(
        &self,
        fiducial: &StateVector,
        alpha: i64,
        beta: i64,
    ) -> Result<StateVector> {
        let overlap = self.max_basis_overlap(fiducial)?;
        if overlap >= 1.0 - FIDUCIAL_TOL {
            return Err(Error::DegenerateFiducial(overlap));
        }
        self.displacement(alpha, beta).apply(fiducial)
    }

    /// Components `<P;r|psi>`, i.e. `F^† psi`.
    pub fn momentum_amplitudes(&self, amplitudes: &CVector) -> CVector {
        self.fourier.entries.ad_mul(amplitudes)
    }

    /// `P_X(r|rho) = <X;r|rho|X;r>`.
    pub fn position_probs(&self, rho: &DensityMatrix) -> Result<ProbabilityDistribution> {
        ensure_dim(self.dim, rho.dim())?;
        ProbabilityDistribution::new(rho.entries.diagonal().iter().map(|z| z.re).collect())
    }

    /// `P_P(r|rho) = <P;r|rho|P;r>`.
    pub fn momentum_probs(&self, rho: &DensityMatrix) -> Result<ProbabilityDistribution> {
        ensure_dim(self.dim, rho.dim())?;
        let probs = (0..self.dim)
            .map(|r| {
                let p = self.fourier.entries.column(r);
                p.dotc(&(&rho.entries * p)).re
            })
            .collect();
        ProbabilityDistribution::new(probs)
    }

    /// Position distribution `|psi_r|^2` of a pure state.
    pub fn pure_position_probs(&self, state: &StateVector) -> Result<ProbabilityDistribution> {
        ensure_dim(self.dim, state.dim())?;
        ProbabilityDistribution::new(state.amplitudes().iter().map(|z| z.norm_sqr()).collect())
    }

    /// Momentum distribution `|<P;r|psi>|^2` of a pure state.
    pub fn pure_momentum_probs(&self, state: &StateVector) -> Result<ProbabilityDistribution> {
        ensure_dim(self.dim, state.dim())?;
        ProbabilityDistribution::new(
            self.momentum_amplitudes(state.amplitudes())
                .iter()
                .map(|z| z.norm_sqr())
                .collect(),
        )
    }
}
