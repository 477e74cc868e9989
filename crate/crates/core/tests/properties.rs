use proptest::prelude::*;

use qgini::gini::{gini_cap, gini_index, gini_report};
use qgini::lorenz::{comonotonic, lorenz_curve, ordering_permutation};
use qgini::qsystem::{
    pure_density, CMatrix, DensityMatrix, ProbabilityDistribution, QuantumSystem,
};
use qgini::sampling::Sampler;

/// Smallest sum of `k` entries, by enumerating all subsets.
fn min_subset_sum(p: &[f64], k: usize) -> f64 {
    let n = p.len();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| {
            (0..n)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| p[i])
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

/// `1 - 2/(d+1) * (d p_(0) + (d-1) p_(1) + ... + p_(d-1))` over the ascending sort.
fn weighted_gini(p: &[f64]) -> f64 {
    let d = p.len();
    let mut sorted = p.to_vec();
    sorted.sort_by(f64::total_cmp);
    let s: f64 = sorted
        .iter()
        .enumerate()
        .map(|(k, x)| (d - k) as f64 * x)
        .sum();
    1.0 - 2.0 / (d as f64 + 1.0) * s
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn dims() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![3usize, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lorenz_values_are_minimal_subset_sums(seed in any::<u64>(), d in dims()) {
        let p = Sampler::new(seed).distribution(d);
        let curve = lorenz_curve(&p);
        for l in 0..d {
            prop_assert!((curve.values()[l] - min_subset_sum(p.probs(), l + 1)).abs() < 1e-14);
        }
    }

    #[test]
    fn lorenz_and_weighted_gini_agree(seed in any::<u64>(), d in dims()) {
        let p = Sampler::new(seed).distribution(d);
        prop_assert!((gini_index(&p) - weighted_gini(p.probs())).abs() <= 1e-12);
    }

    #[test]
    fn ordering_sorts_and_is_idempotent(seed in any::<u64>(), d in dims()) {
        let p = Sampler::new(seed).distribution(d);
        let perm = ordering_permutation(&p);
        let mut seen = perm.order().to_vec();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..d).collect::<Vec<_>>());
        let sorted = perm.apply(&p);
        prop_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        let again = ordering_permutation(&ProbabilityDistribution::new(sorted).unwrap());
        prop_assert_eq!(again.order().to_vec(), (0..d).collect::<Vec<_>>());
    }

    #[test]
    fn comonotonic_matches_pairwise_oracle(seed in any::<u64>(), d in dims()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.distribution(d), s.distribution(d));
        let (x, y) = (a.probs(), b.probs());
        let oracle = (0..d).all(|r| (0..d).all(|t| (x[r] - x[t]) * (y[r] - y[t]) >= 0.0));
        prop_assert_eq!(comonotonic(&a, &b).unwrap(), oracle);
        prop_assert!(comonotonic(&a, &a).unwrap());
    }

    #[test]
    fn fourier_conjugation_maps_momentum_to_position(seed in any::<u64>(), d in dims()) {
        let sys = QuantumSystem::new(d).unwrap();
        let rho = Sampler::new(seed).density_matrix(d);
        let swapped = sys.position_probs(&rho.conjugate(sys.fourier()).unwrap()).unwrap();
        let momentum = sys.momentum_probs(&rho).unwrap();
        for (a, b) in swapped.probs().iter().zip(momentum.probs()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
        let sx: f64 = sys.position_probs(&rho).unwrap().probs().iter().sum();
        let sp: f64 = momentum.probs().iter().sum();
        prop_assert!((sx - 1.0).abs() <= 1e-10 && (sp - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn gini_report_ranges(seed in any::<u64>(), d in dims()) {
        let sys = QuantumSystem::new(d).unwrap();
        let g = gini_report(&sys, &Sampler::new(seed).density_matrix(d)).unwrap();
        let cap = gini_cap(d);
        prop_assert!(g.g_x >= -1e-12 && g.g_x <= cap + 1e-12);
        prop_assert!(g.g_p >= -1e-12 && g.g_p <= cap + 1e-12);
        prop_assert!(g.g_xp < 2.0 * cap);
        prop_assert_eq!(g.normalization, (d as f64 + 1.0) / 2.0);
    }
}

#[test]
fn displacement_adjoint_is_negated_displacement() {
    for d in [3usize, 5, 7] {
        let sys = QuantumSystem::new(d).unwrap();
        for a in 0..d as i64 {
            for b in 0..d as i64 {
                let lhs = sys.displacement(a, b).adjoint();
                assert!(lhs.distance(&sys.displacement(-a, -b)) <= 1e-12);
            }
        }
    }
    let sys = QuantumSystem::new(21).unwrap();
    let mut s = Sampler::new(2024);
    for _ in 0..100 {
        let (a, b) = (s.index(21), s.index(21));
        let u = sys.displacement(a, b);
        assert!(u.unitarity_defect() <= 1e-12);
        assert!(u.adjoint().distance(&sys.displacement(-a, -b)) <= 1e-12);
    }
}

#[test]
fn conjugating_position_state_by_fourier_spreads_it() {
    // independent product: (F^† |0><0| F)[r][s] = conj(F[0][r]) F[0][s]
    let sys = QuantumSystem::new(3).unwrap();
    let f = sys.fourier().entries();
    let oracle = CMatrix::from_fn(3, 3, |r, s| f[(0, r)].conj() * f[(0, s)]);
    let rho = pure_density(&sys.position_state(0))
        .unwrap()
        .conjugate(sys.fourier())
        .unwrap();
    assert!(max_abs(&(rho.entries() - &oracle)) < 1e-15);
    for r in 0..3 {
        assert!((oracle[(r, r)].re - 1.0 / 3.0).abs() < 1e-15);
    }
}

#[test]
fn resolution_of_identity_for_several_fiducials() {
    for d in [3usize, 5, 7] {
        let sys = QuantumSystem::new(d).unwrap();
        let mut s = Sampler::new(d as u64);
        let fiducials = [sys.default_fiducial(), s.pure_state(d), s.pure_state(d)];
        for f in &fiducials {
            let mut sum = CMatrix::zeros(d, d);
            for a in 0..d as i64 {
                for b in 0..d as i64 {
                    sum += pure_density(&sys.coherent_state(f, a, b).unwrap())
                        .unwrap()
                        .entries();
                }
            }
            let residual = max_abs(&(sum.unscale(d as f64) - CMatrix::identity(d, d)));
            assert!(residual <= 1e-10, "d={d} residual {residual:e}");
        }
    }
}

#[test]
fn basis_projectors_are_the_extremizers() {
    for d in [3usize, 5, 7] {
        let sys = QuantumSystem::new(d).unwrap();
        let cap = gini_cap(d);
        for r in 0..d as i64 {
            let gx = gini_report(&sys, &pure_density(&sys.position_state(r)).unwrap()).unwrap();
            assert!((gx.g_x - cap).abs() <= 1e-12 && gx.g_p.abs() <= 1e-12);
            let gp = gini_report(&sys, &pure_density(&sys.momentum_state(r)).unwrap()).unwrap();
            assert!((gp.g_p - cap).abs() <= 1e-12 && gp.g_x.abs() <= 1e-12);

            let l = lorenz_curve(
                &sys.position_probs(&pure_density(&sys.position_state(r)).unwrap())
                    .unwrap(),
            );
            assert!(l.values()[..d - 1].iter().all(|&v| v == 0.0));
            assert_eq!(l.values()[d - 1], 1.0);
        }
        let g = gini_report(&sys, &sys.maximally_mixed()).unwrap();
        assert!(g.g_x.abs() <= 1e-12 && g.g_p.abs() <= 1e-12);
    }
}

#[test]
fn comonotonic_mixtures_are_additive() {
    let sys = QuantumSystem::new(5).unwrap();
    let mut s = Sampler::new(77);
    for _ in 0..100 {
        let (pa, pb) = s.comonotonic_pair(5);
        let rho = DensityMatrix::from_diagonal(&pa).unwrap();
        let sigma = DensityMatrix::from_diagonal(&pb).unwrap();
        let l1 = s.weight();
        let mixed = DensityMatrix::mix(&rho, &sigma, l1).unwrap();
        let (qa, qb) = (
            sys.position_probs(&rho).unwrap(),
            sys.position_probs(&sigma).unwrap(),
        );
        assert!(comonotonic(&qa, &qb).unwrap());
        let q = sys.position_probs(&mixed).unwrap();
        let (la, lb, lm) = (lorenz_curve(&qa), lorenz_curve(&qb), lorenz_curve(&q));
        for l in 0..5 {
            let expected = l1 * la.values()[l] + (1.0 - l1) * lb.values()[l];
            assert!((lm.values()[l] - expected).abs() <= 1e-12);
        }
        let expected = l1 * gini_index(&qa) + (1.0 - l1) * gini_index(&qb);
        assert!((gini_index(&q) - expected).abs() <= 1e-12);
    }
}

#[test]
fn audit_suites_pass_on_several_dimensions() {
    for d in [3usize, 5, 7] {
        let sys = QuantumSystem::new(d).unwrap();
        let report = qgini::audit::run_audit(&sys, 100, 11).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "d={d} {c:?}");
            assert!(c.cases > 0);
        }
    }
}
