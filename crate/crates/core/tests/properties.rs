use num_complex::Complex64;
use proptest::prelude::*;
use subentropy::entropy::{
    all_r, interpolant, interpolant_from_r, pad_recursion, subentropy, von_neumann_entropy,
};
use subentropy::sampling::{haar_unitary, stream_rng};
use subentropy::{DensityMatrix, EntropyReport, Spectrum};

fn weights(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.001f64..1.0, n)
}

fn normalized(w: &[f64]) -> Spectrum {
    let total: f64 = w.iter().sum();
    Spectrum::new(w.iter().map(|x| x / total).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn permutation_symmetric(w in weights(2..=6), rot in 0usize..6) {
        let mut shuffled = w.clone();
        let k = rot % w.len();
        shuffled.rotate_left(k);
        let a = all_r(&normalized(&w)).unwrap();
        let b = all_r(&normalized(&shuffled)).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn chain_and_range(w in weights(2..=7)) {
        let s = normalized(&w);
        let r = all_r(&s).unwrap();
        let ln_n = (s.dim() as f64).ln();
        prop_assert!((r[0] - von_neumann_entropy(&s)).abs() < 1e-12);
        prop_assert!((r[s.dim() - 1] - subentropy(&s)).abs() < 1e-12);
        for pair in r.windows(2) {
            prop_assert!(pair[1] <= pair[0] + 1e-10);
        }
        for &v in &r {
            prop_assert!(v >= -1e-12 && v <= ln_n + 1e-12);
        }
    }

    #[test]
    fn padding_recursion_matches_direct(w in weights(2..=5), m in 1usize..=3) {
        let s = normalized(&w);
        let via = pad_recursion(&all_r(&s).unwrap(), m);
        let direct = all_r(&s.pad_with_zeros(m)).unwrap();
        for (a, b) in via.iter().zip(&direct) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn interpolant_invariant_and_monotone(w in weights(2..=5), m in 1usize..=3, alpha in 0.0f64..=1.0) {
        let s = normalized(&w);
        let a = interpolant(&s, alpha).unwrap();
        let b = interpolant(&s.pad_with_zeros(m), alpha).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
        let r = all_r(&s).unwrap();
        let later = interpolant_from_r(&r, (alpha + 0.05).min(1.0)).unwrap();
        prop_assert!(later <= a + 1e-10);
    }

    #[test]
    fn unitary_conjugation_keeps_spectrum(w in weights(2..=5), seed in any::<u64>()) {
        let s = normalized(&w);
        let n = s.dim();
        let u = haar_unitary(&mut stream_rng(seed, 0), n);
        // rho = U diag(lambda) U^dagger, with U column-major
        let rows: Vec<Vec<Complex64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| u[k * n + i] * s.values()[k] * u[k * n + j].conj()).sum())
                    .collect()
            })
            .collect();
        let rho = DensityMatrix::validate(&rows).unwrap();
        let ev = rho.eigenvalues();
        for (a, b) in ev.values().iter().zip(s.values()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        let (ra, rb) = (all_r(&ev).unwrap(), all_r(&s).unwrap());
        for (a, b) in ra.iter().zip(&rb) {
            prop_assert!((a - b).abs() < 1e-11);
        }
    }

    #[test]
    fn entropy_adds_over_tensor_products(w1 in weights(1..=4), w2 in weights(1..=4)) {
        let (a, b) = (normalized(&w1), normalized(&w2));
        let joint = von_neumann_entropy(&a.tensor(&b));
        prop_assert!((joint - von_neumann_entropy(&a) - von_neumann_entropy(&b)).abs() < 1e-10);
    }

    #[test]
    fn merging_threshold_is_continuous(w in weights(3..=5), eps in 0.0f64..1e-6) {
        // nudging one eigenvalue across the clustering tolerance moves R smoothly
        let mut v = normalized(&w).values().to_vec();
        v[1] = v[0] * (1.0 - eps);
        let total: f64 = v.iter().sum();
        let s = Spectrum::new(v.iter().map(|x| x / total).collect()).unwrap();
        let mut tied = s.values().to_vec();
        tied[1] = tied[0];
        let t: f64 = tied.iter().sum();
        let tied = Spectrum::new(tied.iter().map(|x| x / t).collect()).unwrap();
        for (a, b) in all_r(&s).unwrap().iter().zip(&all_r(&tied).unwrap()) {
            prop_assert!((a - b).abs() < 1e-5);
        }
    }

    #[test]
    fn report_round_trips_through_json(w in weights(1..=5)) {
        let s = normalized(&w);
        let grid = [0.0, 0.3, 1.0];
        let report = subentropy::entropy::full_report(&s, Some(&grid)).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: EntropyReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, report);
    }
}
