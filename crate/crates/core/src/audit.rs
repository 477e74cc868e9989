//! Property suites for the Lorenz and Gini modules, run on seeded samples.
//!
//! Each check records, per case, how far the tested relation is from being
//! violated; a case fails when that excess is above the check's tolerance.
//! Every suite draws from its own stream derived from the master seed, so
//! verdicts are reproducible and independent of which other suites ran.

use serde::Serialize;

use crate::gini::{gini_cap, gini_index, gini_report};
use crate::lorenz::{comonotonic, lorenz_curve, ordering_permutation, LorenzCurve, BOUND_SLACK};
use crate::qsystem::{pure_density, DensityMatrix, ProbabilityDistribution, QuantumSystem};
use crate::sampling::{restart_seed, Sampler};
use crate::Result;

pub const INEQUALITY_SLACK: f64 = 1e-12;
pub const INVARIANCE_TOL: f64 = 1e-10;
/// Sampled `G_XP` must stay this far below `2(d-1)/(d+1)`.
pub const JOINT_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Largest excess seen; the relation held in a case iff excess <= tolerance.
    pub worst_excess: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            worst_excess: f64::NEG_INFINITY,
            tolerance,
        }
    }

    fn record(&mut self, excess: f64) {
        self.cases += 1;
        self.worst_excess = self.worst_excess.max(excess);
        if excess.is_nan() || excess > self.tolerance {
            self.failures += 1;
        }
    }

    fn record_eq(&mut self, a: f64, b: f64) {
        self.record((a - b).abs());
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Worst excess of `lhs >= rhs` over all entries (positive means violated).
fn shortfall(lhs: &[f64], rhs: &[f64]) -> f64 {
    lhs.iter()
        .zip(rhs)
        .map(|(l, r)| r - l)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn combine(a: &LorenzCurve, b: &LorenzCurve, l1: f64) -> Vec<f64> {
    let l2 = 1.0 - l1;
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| l1 * x + l2 * y)
        .collect()
}

struct Ctx<'a> {
    sys: &'a QuantumSystem,
    samples: usize,
    seed: u64,
}

impl Ctx<'_> {
    fn sampler(&self, suite: u64) -> Sampler {
        Sampler::new(restart_seed(self.seed, suite))
    }

    fn d(&self) -> usize {
        self.sys.dim()
    }

    fn lorenz_pair(&self, rho: &DensityMatrix) -> Result<(LorenzCurve, LorenzCurve)> {
        Ok((
            lorenz_curve(&self.sys.position_probs(rho)?),
            lorenz_curve(&self.sys.momentum_probs(rho)?),
        ))
    }

    fn basis_projectors(&self) -> Result<Vec<DensityMatrix>> {
        let d = self.d() as i64;
        (0..d)
            .map(|r| pure_density(&self.sys.position_state(r)))
            .chain((0..d).map(|r| pure_density(&self.sys.momentum_state(r))))
            .collect()
    }
}

pub fn run_audit(sys: &QuantumSystem, samples: usize, seed: u64) -> Result<AuditReport> {
    let ctx = Ctx { sys, samples, seed };
    let checks = vec![
        lorenz_bound(&ctx)?,
        permutation_order(&ctx)?,
        lorenz_invariance(&ctx)?,
        lorenz_superadditivity(&ctx)?,
        comonotonic_additivity(&ctx)?,
        lorenz_characterization(&ctx)?,
        gini_range(&ctx)?,
        gini_extremizers(&ctx)?,
        joint_extremality(&ctx)?,
        gini_invariance(&ctx)?,
        coherent_equality(&ctx)?,
        gini_subadditivity(&ctx)?,
        position_mixture_bound(&ctx)?,
    ];
    Ok(AuditReport {
        dim: sys.dim(),
        samples,
        seed,
        checks,
    })
}

fn lorenz_bound(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("lorenz_bound", BOUND_SLACK);
    let mut s = ctx.sampler(1);
    for _ in 0..ctx.samples {
        let (lx, lp) = ctx.lorenz_pair(&s.density_matrix(ctx.d()))?;
        out.record(lx.bound_violation());
        out.record(lp.bound_violation());
        out.record((lx.values()[ctx.d() - 1] - 1.0).abs() - 1e-10);
    }
    Ok(out)
}

fn permutation_order(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("permutation_order", 0.0);
    let mut s = ctx.sampler(2);
    for _ in 0..ctx.samples {
        let p = s.distribution(ctx.d());
        let perm = ordering_permutation(&p);
        let sorted = perm.apply(&p);
        let descents = sorted.windows(2).filter(|w| w[1] < w[0]).count();
        out.record(descents as f64);
        let again = ordering_permutation(&ProbabilityDistribution::new(sorted)?);
        let identity = again.order().iter().enumerate().all(|(i, &k)| i == k);
        out.record(if identity { 0.0 } else { 1.0 });
    }
    Ok(out)
}

fn lorenz_invariance(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("lorenz_invariance", INVARIANCE_TOL);
    let mut s = ctx.sampler(3);
    let d = ctx.d() as i64;
    for _ in 0..ctx.samples {
        let rho = s.density_matrix(ctx.d());
        let (lx, lp) = ctx.lorenz_pair(&rho)?;
        let (a, b) = (s.index(d), s.index(d));
        let (dx, dp) = ctx.lorenz_pair(&rho.conjugate(&ctx.sys.displacement(a, b))?)?;
        out.record(max_abs_diff(lx.values(), dx.values()));
        out.record(max_abs_diff(lp.values(), dp.values()));
        let (fx, _) = ctx.lorenz_pair(&rho.conjugate(ctx.sys.fourier())?)?;
        out.record(max_abs_diff(fx.values(), lp.values()));
    }
    Ok(out)
}

fn lorenz_superadditivity(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("lorenz_superadditivity", INEQUALITY_SLACK);
    let mut s = ctx.sampler(4);
    for _ in 0..ctx.samples {
        let rho = s.density_matrix(ctx.d());
        let sigma = s.density_matrix(ctx.d());
        let l1 = s.weight();
        let mixed = DensityMatrix::mix(&rho, &sigma, l1)?;
        let (rx, rp) = ctx.lorenz_pair(&rho)?;
        let (sx, sp) = ctx.lorenz_pair(&sigma)?;
        let (mx, mp) = ctx.lorenz_pair(&mixed)?;
        out.record(shortfall(mx.values(), &combine(&rx, &sx, l1)));
        out.record(shortfall(mp.values(), &combine(&rp, &sp, l1)));
    }
    Ok(out)
}

fn comonotonic_additivity(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("comonotonic_additivity", INEQUALITY_SLACK);
    let mut s = ctx.sampler(5);
    for _ in 0..ctx.samples {
        let (pa, pb) = s.comonotonic_pair(ctx.d());
        let rho = DensityMatrix::from_diagonal(&pa)?;
        let sigma = DensityMatrix::from_diagonal(&pb)?;
        let (qa, qb) = (
            ctx.sys.position_probs(&rho)?,
            ctx.sys.position_probs(&sigma)?,
        );
        out.record(if comonotonic(&qa, &qb)? { 0.0 } else { 1.0 });
        let l1 = s.weight();
        let mixed = ctx
            .sys
            .position_probs(&DensityMatrix::mix(&rho, &sigma, l1)?)?;
        let expected = combine(&lorenz_curve(&qa), &lorenz_curve(&qb), l1);
        out.record(max_abs_diff(lorenz_curve(&mixed).values(), &expected));
        out.record_eq(
            gini_index(&mixed),
            l1 * gini_index(&qa) + (1.0 - l1) * gini_index(&qb),
        );
    }
    Ok(out)
}

fn lorenz_characterization(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("lorenz_characterization", 0.0);
    let d = ctx.d();
    for r in 0..d as i64 {
        let (lx, _) = ctx.lorenz_pair(&pure_density(&ctx.sys.position_state(r))?)?;
        let head = lx.values()[..d - 1].iter().copied().fold(0.0, f64::max);
        out.record(head.max((lx.values()[d - 1] - 1.0).abs()));
    }
    let mut s = ctx.sampler(6);
    for _ in 0..ctx.samples {
        let (lx, _) = ctx.lorenz_pair(&pure_density(&s.pure_state(d))?)?;
        let head = lx.values()[..d - 1].iter().copied().fold(0.0, f64::max);
        out.record(1e-9 - head);
    }
    Ok(out)
}

fn gini_range(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("gini_range", INEQUALITY_SLACK);
    let cap = gini_cap(ctx.d());
    let mut s = ctx.sampler(7);
    for _ in 0..ctx.samples {
        let g = gini_report(ctx.sys, &s.density_matrix(ctx.d()))?;
        for v in [g.g_x, g.g_p] {
            out.record((v - cap).max(-v));
        }
        out.record((g.g_xp - g.g_x - g.g_p).abs());
    }
    Ok(out)
}

fn gini_extremizers(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("gini_extremizers", INEQUALITY_SLACK);
    let d = ctx.d();
    let cap = gini_cap(d);
    for (i, rho) in ctx.basis_projectors()?.iter().enumerate() {
        let g = gini_report(ctx.sys, rho)?;
        let (certain, spread) = if i < d {
            (g.g_x, g.g_p)
        } else {
            (g.g_p, g.g_x)
        };
        out.record_eq(certain, cap);
        out.record_eq(spread, 0.0);
    }
    let g = gini_report(ctx.sys, &ctx.sys.maximally_mixed())?;
    out.record_eq(g.g_x, 0.0);
    out.record_eq(g.g_p, 0.0);
    Ok(out)
}

fn joint_extremality(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("joint_extremality", 0.0);
    let limit = 2.0 * gini_cap(ctx.d()) - JOINT_MARGIN;
    for rho in ctx.basis_projectors()? {
        out.record(gini_report(ctx.sys, &rho)?.g_xp - limit);
    }
    let mut s = ctx.sampler(8);
    for _ in 0..ctx.samples {
        out.record(gini_report(ctx.sys, &pure_density(&s.pure_state(ctx.d()))?)?.g_xp - limit);
    }
    Ok(out)
}

fn gini_invariance(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("gini_invariance", INVARIANCE_TOL);
    let mut s = ctx.sampler(9);
    let d = ctx.d() as i64;
    for _ in 0..ctx.samples {
        let rho = s.density_matrix(ctx.d());
        let g = gini_report(ctx.sys, &rho)?;
        let (a, b) = (s.index(d), s.index(d));
        let gd = gini_report(ctx.sys, &rho.conjugate(&ctx.sys.displacement(a, b))?)?;
        out.record_eq(gd.g_xp, g.g_xp);
        let gf = gini_report(ctx.sys, &rho.conjugate(ctx.sys.fourier())?)?;
        out.record_eq(gf.g_xp, g.g_xp);
        out.record_eq(gf.g_x, g.g_p);
        out.record_eq(gf.g_p, g.g_x);
    }
    Ok(out)
}

fn coherent_equality(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("coherent_equality", INVARIANCE_TOL);
    let fiducial = ctx.sys.default_fiducial();
    let reference = gini_report(ctx.sys, &pure_density(&fiducial)?)?.g_xp;
    let d = ctx.d() as i64;
    for a in 0..d {
        for b in 0..d {
            let coh = ctx.sys.coherent_state(&fiducial, a, b)?;
            out.record_eq(gini_report(ctx.sys, &pure_density(&coh)?)?.g_xp, reference);
        }
    }
    Ok(out)
}

fn gini_subadditivity(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("gini_subadditivity", INEQUALITY_SLACK);
    let mut s = ctx.sampler(10);
    for _ in 0..ctx.samples {
        let rho = s.density_matrix(ctx.d());
        let sigma = s.density_matrix(ctx.d());
        let l1 = s.weight();
        let l2 = 1.0 - l1;
        let g = gini_report(ctx.sys, &DensityMatrix::mix(&rho, &sigma, l1)?)?;
        let gr = gini_report(ctx.sys, &rho)?;
        let gs = gini_report(ctx.sys, &sigma)?;
        out.record(g.g_x - (l1 * gr.g_x + l2 * gs.g_x));
        out.record(g.g_p - (l1 * gr.g_p + l2 * gs.g_p));
        out.record(g.g_xp - (l1 * gr.g_xp + l2 * gs.g_xp));
    }
    Ok(out)
}

fn position_mixture_bound(ctx: &Ctx) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("position_mixture_bound", INEQUALITY_SLACK);
    let cap = gini_cap(ctx.d());
    let mut s = ctx.sampler(11);
    for _ in 0..ctx.samples {
        let g = gini_report(ctx.sys, &s.position_mixture(ctx.d()))?;
        out.record(g.g_xp - cap);
    }
    Ok(out)
}
