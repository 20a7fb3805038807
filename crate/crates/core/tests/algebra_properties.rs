use proptest::prelude::*;
use sqnorm::algebra::basis_vector;
use sqnorm::{corpus, spectral, FiniteDimRealAlgebra};

fn algebras() -> Vec<FiniteDimRealAlgebra> {
    corpus::all_algebras()
}

fn coords(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, n)
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

// oracle: (ab)c and a(bc) computed coordinate by coordinate from the table
fn naive_mul(alg: &FiniteDimRealAlgebra, a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = alg.dim();
    let mut out = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[k] += a[i] * b[j] * alg.constant(i, j, k);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn left_regular_is_a_homomorphism(idx in 0usize..10, seed in any::<u64>()) {
        let alg = &algebras()[idx];
        let n = alg.dim();
        let mut r = sqnorm::rng::stream(seed, 0);
        let a = sqnorm::rng::gaussian_vec(&mut r, n);
        let b = sqnorm::rng::gaussian_vec(&mut r, n);
        let lab = alg.left_regular_coords(&alg.mul_coords(&a, &b));
        let la_lb = alg.left_regular_coords(&a) * alg.left_regular_coords(&b);
        prop_assert!((lab - la_lb).abs().max() <= 1e-12 * (1.0 + alg.max_abs_constant()) * 50.0);
    }

    #[test]
    fn multiplication_matches_table(idx in 0usize..10, a in coords(8), b in coords(8)) {
        let alg = &algebras()[idx];
        let n = alg.dim();
        let (a, b) = (&a[..n.min(8)], &b[..n.min(8)]);
        if n <= 8 {
            prop_assert!(max_diff(&alg.mul_coords(a, b), &naive_mul(alg, a, b)) <= 1e-12);
        }
    }

    #[test]
    fn multiplication_is_associative(idx in 0usize..10, seed in any::<u64>()) {
        let alg = &algebras()[idx];
        let mut r = sqnorm::rng::stream(seed, 1);
        let a = sqnorm::rng::gaussian_vec(&mut r, alg.dim());
        let b = sqnorm::rng::gaussian_vec(&mut r, alg.dim());
        let c = sqnorm::rng::gaussian_vec(&mut r, alg.dim());
        let left = alg.mul_coords(&alg.mul_coords(&a, &b), &c);
        let right = alg.mul_coords(&a, &alg.mul_coords(&b, &c));
        prop_assert!(max_diff(&left, &right) <= 1e-11);
    }

    #[test]
    fn unitization_has_the_new_unit(idx in 0usize..10) {
        let alg = &algebras()[idx];
        let hull = alg.unitize();
        prop_assert_eq!(hull.dim(), alg.dim() + 1);
        let e = basis_vector(hull.dim(), 0);
        prop_assert!(hull.unit_residual(&e) <= 1e-12);
        let found = hull.find_unit().unwrap();
        prop_assert!(max_diff(&found, &e) <= 1e-12);
    }

    #[test]
    fn spectra_are_conjugate_closed(idx in 0usize..10, seed in any::<u64>()) {
        let alg = &algebras()[idx];
        let a = sqnorm::rng::gaussian_vec(&mut sqnorm::rng::stream(seed, 2), alg.dim());
        prop_assert!(spectral::spectrum_coords(alg, &a).is_conjugate_closed(1e-8));
    }

    #[test]
    fn quotient_projection_is_multiplicative(seed in any::<u64>()) {
        // R + R + N modulo N, and R + R modulo the second summand
        let cases = [
            (corpus::extended_null(), vec![vec![0.0, 0.0, 1.0]]),
            (corpus::direct_sum(&[corpus::reals(), corpus::reals()]), vec![vec![0.0, 1.0]]),
            (corpus::direct_sum(&[corpus::quaternions(), corpus::complexes()]),
             (4..6).map(|i| basis_vector(6, i)).collect()),
        ];
        for (alg, ideal) in cases {
            let q = alg.quotient(&ideal).unwrap();
            let mut r = sqnorm::rng::stream(seed, 3);
            let a = sqnorm::rng::gaussian_vec(&mut r, alg.dim());
            let b = sqnorm::rng::gaussian_vec(&mut r, alg.dim());
            let lhs = q.project(&alg.mul_coords(&a, &b));
            let rhs = q.algebra.mul_coords(&q.project(&a), &q.project(&b));
            prop_assert!(max_diff(&lhs, &rhs) <= 1e-12);
        }
    }
}

#[test]
fn quotients_of_the_corpus_are_unital_where_expected() {
    let q = corpus::extended_null()
        .quotient(&[vec![0.0, 0.0, 1.0]])
        .unwrap();
    assert_eq!(q.algebra.dim(), 2);
    assert!(q.algebra.is_unital());
}
