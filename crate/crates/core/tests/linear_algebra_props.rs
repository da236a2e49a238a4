use num_complex::Complex64;
use proptest::prelude::*;
use spectral_ellipse::ensembles::{scrambler, CounterStream};
use spectral_ellipse::spectrum::DEFAULT_MOMENT_TOL;
use spectral_ellipse::{eigenvalues, ComplexMatrix};

fn matrix(max_n: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), n * n).prop_map(move |v| {
            ComplexMatrix::new(
                n,
                v.into_iter()
                    .map(|(re, im)| Complex64::new(re, im))
                    .collect(),
            )
            .unwrap()
        })
    })
}

/// Greedy nearest-point matching; returns the worst matched distance.
fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut left = b.to_vec();
    let mut worst: f64 = 0.0;
    for z in a {
        let (i, d) = left
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (w - z).norm()))
            .fold(
                (0, f64::INFINITY),
                |best, c| if c.1 < best.1 { c } else { best },
            );
        left.remove(i);
        worst = worst.max(d);
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn decomposition_splits_q(a in matrix(8)) {
        let d = a.decompose();
        let norm = a.frobenius_norm();
        prop_assert!(d.traceless_part.trace().norm() <= 1e-12 * (1.0 + norm));
        prop_assert!(d.q_residual() <= 1e-10 * (1.0 + d.q_total.norm()));
        // tr(A₀·γI) = γ·tr(A₀)
        let cross = d.traceless_part.matmul(&ComplexMatrix::identity(d.n).scale(d.gamma)).trace();
        prop_assert!(cross.norm() <= 1e-12 * (1.0 + norm) * (1.0 + d.gamma.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn q_form_is_trace_of_square(a in matrix(12)) {
        let direct = a.matmul(&a).trace();
        let scale = a.frobenius_norm().powi(2);
        prop_assert!((a.q_form() - direct).norm() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn q_form_is_similarity_invariant(a in matrix(16), seed in any::<u64>()) {
        let t = scrambler(a.dim(), &mut CounterStream::new(seed)).unwrap();
        let b = a.similarity(&t).unwrap();
        let (qa, qb) = (a.q_form(), b.q_form());
        // Relative to ‖A‖_F², the natural scale of Q when cancellation makes |Q| small.
        let scale = 1.0 + a.frobenius_norm().powi(2);
        prop_assert!((qa - qb).norm() <= 1e-9 * scale, "{} vs {}", qa, qb);
    }

    #[test]
    fn char_poly_tracks_trace(a in matrix(10)) {
        let p = a.char_poly();
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), a.dim());
        let sub = p.coeffs()[a.dim() - 1];
        prop_assert!((sub + a.trace()).norm() <= 1e-13 * (1.0 + a.trace().norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Distinct random spectra conjugated by well-conditioned transforms are
    /// recovered, and moments match the matrix.
    #[test]
    fn eigenvalues_survive_similarity(n in 2usize..=8, seed in any::<u64>()) {
        let mut rng = CounterStream::new(seed);
        let a = ComplexMatrix::new(n, (0..n * n).map(|_| rng.next_complex_gaussian()).collect()).unwrap();
        let t = scrambler(n, &mut rng).unwrap();
        let b = a.similarity(&t).unwrap();
        let sa = eigenvalues(&a, DEFAULT_MOMENT_TOL).unwrap();
        let sb = eigenvalues(&b, DEFAULT_MOMENT_TOL).unwrap();
        let rho = sa.spectral_radius();
        prop_assert!(multiset_distance(&sa.values, &sb.values) <= 1e-6 * (1.0 + rho));
    }
}
