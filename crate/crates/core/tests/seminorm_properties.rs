use proptest::prelude::*;
use sqnorm::seminorm::{self, SeminormSpec};
use sqnorm::{corpus, FiniteDimRealAlgebra};

fn pairs() -> Vec<(FiniteDimRealAlgebra, SeminormSpec)> {
    corpus::manifest()
        .into_iter()
        .map(|e| (e.algebra, e.seminorm))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homogeneity_holds_for_seminorm_variants(idx in 0usize..12, seed in any::<u64>(), k in -5.0f64..5.0) {
        let (alg, p) = &pairs()[idx];
        let a = sqnorm::rng::gaussian_vec(&mut sqnorm::rng::stream(seed, 0), alg.dim());
        let ka: Vec<f64> = a.iter().map(|x| k * x).collect();
        let lhs = p.eval_coords(alg, &ka);
        let rhs = k.abs() * p.eval_coords(alg, &a);
        prop_assert!(lhs >= 0.0);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs) * 100.0, "{lhs} {rhs}");
    }

    #[test]
    fn kernel_vectors_are_killed(idx in 0usize..12) {
        let (alg, p) = &pairs()[idx];
        for k in p.kernel(alg).unwrap() {
            prop_assert!(p.eval_coords(alg, &k) <= 1e-8);
        }
    }

    #[test]
    fn square_property_pairs_have_ideal_kernels(idx in 0usize..12, seed in any::<u64>()) {
        let (alg, p) = &pairs()[idx];
        let sq = seminorm::check_square_property(p, alg, 200, seed).unwrap();
        let ax = seminorm::check_seminorm_axioms(p, alg, 100, seed).unwrap();
        if sq.max_residual <= 1e-9 && ax.holds(1e-9) {
            let k = p.kernel(alg).unwrap();
            prop_assert!(alg.subspace_is_two_sided_ideal(&k));
            let wd = seminorm::quotient_well_defined_residual(p, alg, &k, 1000, seed).unwrap();
            prop_assert!(wd <= 1e-10, "{wd}");
        }
    }
}

#[test]
fn spectral_radius_has_square_property_on_commutative_corpus() {
    let commutative = [
        corpus::reals(),
        corpus::complexes(),
        corpus::null_line(),
        corpus::direct_sum(&[corpus::reals(), corpus::reals()]),
        corpus::direct_sum(&[corpus::reals(), corpus::reals(), corpus::complexes()]),
        corpus::extended_null(),
    ];
    for alg in commutative {
        let sq = seminorm::check_square_property(&SeminormSpec::SpectralRadius, &alg, 1000, 5).unwrap();
        assert!(sq.max_residual <= 1e-10, "{} {}", alg.name(), sq.max_residual);
    }
}

#[test]
fn square_property_pairs_have_m_hat_at_most_one() {
    for e in corpus::manifest() {
        let sq = seminorm::check_square_property(&e.seminorm, &e.algebra, 500, 8).unwrap();
        let ax = seminorm::check_seminorm_axioms(&e.seminorm, &e.algebra, 200, 8).unwrap();
        if sq.max_residual <= 1e-9 && ax.holds(1e-9) {
            let m = seminorm::estimate_m(&e.seminorm, &e.algebra, 1000, 8).unwrap();
            assert!(m.m_hat <= 1.0 + 1e-9, "{} {}", e.id, m.m_hat);
        }
    }
}
