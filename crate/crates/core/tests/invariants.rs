//! Property tests for the structural invariants the bound machinery
//! promises.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unionbound::bounds::{alpha_bound, chung_erdos_bound, local_overlap, phi_bound, phi_optimize};
use unionbound::montecarlo::{estimate_union, McConfig, McModel};
use unionbound::{Band, Blocks, CoefficientFamily, JointTable, Marginals, Markov2, Profile};

fn probs(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..=1.0, 1..=max_len)
}

proptest! {
    // envelopes are monotone in the lag and live in [0,1]
    #[test]
    fn profile_envelopes_monotone(
        c in 1.0f64..4.0,
        rho in 0.05f64..0.95,
        gamma in 0.1f64..3.0,
        m in 0usize..6,
    ) {
        let profiles = vec![
            Profile::geometric(c, rho, CoefficientFamily::Phi).unwrap(),
            Profile::polynomial(c, gamma, CoefficientFamily::Alpha).unwrap(),
            Profile::m_dependent(m, CoefficientFamily::Phi).unwrap(),
        ];
        for p in &profiles {
            let mut last = 1.0f64;
            for lag in 1..=50 {
                let v = p.value_at(lag).unwrap();
                prop_assert!((0.0..=1.0).contains(&v));
                prop_assert!(v <= last + 1e-15);
                last = v;
            }
        }
    }

    // the mass-threshold map is non-decreasing in the threshold
    #[test]
    fn mass_threshold_monotone(ps in probs(64)) {
        let m = Marginals::new(ps).unwrap();
        let total = m.total_mass();
        let mut last = 0usize;
        let mut n = 1usize;
        while (n as f64) <= total {
            let phi = m.mass_threshold(n).unwrap();
            prop_assert!(phi >= last);
            last = phi;
            n += 1;
        }
    }

    // a larger residual never enlarges the exponent
    #[test]
    fn phi_exponent_monotone_in_residual(
        ps in probs(32),
        lo in 0.0f64..0.5,
        delta in 0.0f64..0.5,
        spacing in 0usize..8,
    ) {
        let m = Marginals::new(ps).unwrap();
        let small = Profile::tabulated(vec![lo], CoefficientFamily::Phi).unwrap();
        let large = Profile::tabulated(vec![lo + delta], CoefficientFamily::Phi).unwrap();
        let a = phi_bound(&m, &small, spacing).unwrap();
        let b = phi_bound(&m, &large, spacing).unwrap();
        prop_assert!(a.exponent.unwrap() >= b.exponent.unwrap() - 1e-15);
    }

    // the optimiser dominates every fixed spacing
    #[test]
    fn optimizer_dominates(ps in probs(24), rho in 0.1f64..0.9) {
        let m = Marginals::new(ps).unwrap();
        let profile = Profile::geometric(1.0, rho, CoefficientFamily::Phi).unwrap();
        let best = phi_optimize(&m, &profile).unwrap();
        for spacing in 0..m.len() {
            let r = phi_bound(&m, &profile, spacing).unwrap();
            prop_assert!(best.exponent.unwrap() >= r.exponent.unwrap() - 1e-15);
        }
    }

    // every report is a probability; the alpha clip flag fires exactly
    // when the raw value was negative
    #[test]
    fn reports_are_probabilities(
        ps in probs(32),
        alpha in 0.0f64..1.0,
        spacing in 0usize..8,
    ) {
        let m = Marginals::new(ps).unwrap();
        let profile = Profile::tabulated(vec![alpha], CoefficientFamily::Alpha).unwrap();
        let r = alpha_bound(&m, &profile, spacing).unwrap();
        prop_assert!((0.0..=1.0).contains(&r.bound));
        let raw = 1.0 - (-r.exponent.unwrap()).exp() - r.residuals["additive_correction"];
        prop_assert_eq!(r.clipped, raw < 0.0);
        if !r.clipped {
            prop_assert!((r.bound - raw).abs() <= 1e-12);
        }
    }

    // weighted local overlap never exceeds the plain one
    #[test]
    fn weighted_overlap_dominated(
        entries in prop::collection::vec((1usize..=12, 1usize..=11, 0.0f64..=1.0), 0..40),
        spacing in 2usize..10,
    ) {
        let pairs: Vec<(usize, usize, f64)> = entries
            .into_iter()
            .filter_map(|(i, gap, v)| {
                let j = i + gap;
                (j <= 12).then_some((i, j, v))
            })
            .collect();
        let mut dedup = std::collections::BTreeMap::new();
        for (i, j, v) in pairs {
            dedup.insert((i, j), v);
        }
        let band = Band::new(12, 11, dedup.into_iter().map(|((i, j), v)| (i, j, v)).collect())
            .unwrap();
        let w = local_overlap(&band, spacing, true).unwrap();
        let u = local_overlap(&band, spacing, false).unwrap();
        prop_assert!(w <= u + 1e-15);
    }

    // restricted endpoint: at L >= N-1 the bound chain
    // 1 - e^{-S/(L+1)} <= S/(L+1) <= max_k p_k holds
    #[test]
    fn restricted_endpoint_chain(ps in probs(32), extra in 0usize..4) {
        let m = Marginals::new(ps).unwrap();
        let n = m.len();
        let profile = Profile::geometric(1.0, 0.9, CoefficientFamily::Phi)
            .unwrap()
            .restricted(n)
            .unwrap();
        let spacing = n - 1 + extra;
        let r = phi_bound(&m, &profile, spacing).unwrap();
        let linear = m.total_mass() / (spacing as f64 + 1.0);
        prop_assert!(r.bound <= linear + 1e-12);
        prop_assert!(linear <= m.max_prob() + 1e-12);
    }
}

// ---------------------------------------------------------------------
// seeded (non-proptest) invariants over the exact oracles

#[test]
fn markov_joint_tables_match_closed_form_union() {
    let grid = [0.15, 0.4, 0.6, 0.85];
    for &a in &grid {
        for &b in &grid {
            for n in [1usize, 2, 5, 12] {
                let chain = Markov2::new(a, b, n).unwrap();
                let table = chain.to_joint_table().unwrap();
                let full: Vec<usize> = (1..=n).collect();
                let enumerated = table.union_probability(&full).unwrap();
                assert!(
                    (enumerated - chain.exact_union()).abs() < 1e-12,
                    "(a,b,N) = ({a},{b},{n})"
                );
            }
        }
    }
}

#[test]
fn chung_erdos_stays_in_unit_interval_on_real_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let n = rng.random_range(1..=7);
        let table = JointTable::random_dirichlet(n, &mut rng).unwrap();
        let r = chung_erdos_bound(&table.marginals(), &table.pairwise_intersections().unwrap())
            .unwrap();
        assert!((0.0..=1.0).contains(&r.bound));
        assert!(!r.clipped, "realizable input must not clamp");
    }
}

#[test]
fn block_family_pairs_and_union_agree_with_table() {
    for (m, p, q) in [(0usize, 0.3f64, 4usize), (1, 0.5, 3), (2, 0.2, 2)] {
        let family = Blocks::new(m, p, q).unwrap();
        let table = family.to_joint_table().unwrap();
        let n = family.n();
        let full: Vec<usize> = (1..=n).collect();
        assert!((table.union_probability(&full).unwrap() - family.exact_union()).abs() < 1e-12);
        let band = table.pairwise_intersections().unwrap();
        for (i, j, v) in band.iter() {
            assert!((v - family.pair_intersection(i, j).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn montecarlo_confidence_interval_coverage() {
    // 95% intervals on a model with a known union probability should
    // cover the truth in at least 90 of 100 seeded runs
    let family = Blocks::new(1, 0.5, 2).unwrap();
    let truth = family.exact_union();
    let model = McModel::Block(family);
    let mut covered = 0usize;
    for seed in 0..100u64 {
        let est = estimate_union(&model, &McConfig::new(4000, 1000 + seed, 1).unwrap()).unwrap();
        if est.ci95.0 <= truth && truth <= est.ci95.1 {
            covered += 1;
        }
    }
    assert!(covered >= 90, "coverage {covered}/100");
}
