use dfc_core::curve::{normalize, DegeneratePolicy};
use dfc_core::masks::{linspace, max_radius};
use dfc_core::scenes::natural_scene;
use dfc_core::synth::add_gaussian_noise;
use dfc_core::tokenizer::{
    equal_area_partition, initial_params, sample_and_aggregate, tokenize, TokenizerConfig,
    UniformWeights, WeightScheme,
};
use dfc_core::{DegradationFrequencyCurve, DfcAnalyzer};
use proptest::prelude::*;

fn curve_from(raw: Vec<f64>) -> DegradationFrequencyCurve {
    let centers = linspace(0.0, max_radius(128, 128), raw.len());
    normalize(raw, centers, DegeneratePolicy::Error).unwrap()
}

fn raw_curve() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-6f64..1.0, 2..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn token_masses_sum_to_one(raw in raw_curve(), n in 1usize..8, seed in any::<u64>()) {
        let config = TokenizerConfig { tokens: n, seed, ..Default::default() };
        let tokens = tokenize(&curve_from(raw), &config).unwrap();
        prop_assert_eq!(tokens.len(), n);
        let total: f64 = tokens.iter().map(|t| t.mass).sum();
        prop_assert!((total - 1.0).abs() < 1e-6);
        for t in &tokens {
            prop_assert!((t.mass - 1.0 / n as f64).abs() < 1e-6);
        }
    }

    #[test]
    fn reversed_curve_mirrors(raw in raw_curve()) {
        let dfc = curve_from(raw.clone());
        let rev = curve_from(raw.into_iter().rev().collect());
        let r = dfc.max_radius();
        let a = equal_area_partition(&dfc, 4).unwrap();
        let b = equal_area_partition(&rev, 4).unwrap();
        for k in 0..=4 {
            prop_assert!((a.boundaries()[k] - (r - b.boundaries()[4 - k])).abs() < 1e-6);
        }
    }

    #[test]
    fn refinement_stays_local(raw in raw_curve(), seed in any::<u64>(), jitter in 0.0f64..0.5) {
        let dfc = curve_from(raw);
        let config = TokenizerConfig {
            jitter_frac: jitter,
            weights: WeightScheme::MassCapture,
            seed,
            ..Default::default()
        };
        let partition = equal_area_partition(&dfc, 4).unwrap();
        let initial = initial_params(&partition).unwrap();
        for (t, (init, (lo, hi))) in tokenize(&dfc, &config).unwrap().iter().zip(initial.iter().zip(partition.regions())) {
            prop_assert!((t.mu_star - init.mu).abs() <= 4.0 * jitter * (hi - lo) + 1e-12);
            prop_assert!(t.sigma_star > 0.0);
        }
    }
}

#[test]
fn uniform_refinement_is_unbiased() {
    let dfc = DegradationFrequencyCurve::uniform(linspace(0.0, 181.02, 25));
    let init = initial_params(&equal_area_partition(&dfc, 4).unwrap()).unwrap()[1];
    let shifts: Vec<f64> = (0..1000)
        .map(|s| {
            sample_and_aggregate(init, 5, 0.1, &UniformWeights, s)
                .unwrap()
                .mu
                - init.mu
        })
        .collect();
    let n = shifts.len() as f64;
    let mean = shifts.iter().sum::<f64>() / n;
    let var = shifts.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0);
    assert!(mean.abs() <= 3.0 * (var / n).sqrt());
}

#[test]
fn noise_mass_concentrates_in_last_region() {
    let analyzer = DfcAnalyzer::new(128, 128, 25).unwrap();
    for seed in 0..5 {
        let clean = natural_scene(128, seed).unwrap();
        let noisy = add_gaussian_noise(&clean, 25.0, seed).unwrap();
        let dfc = analyzer.compute(&noisy, &clean).unwrap();
        let partition = equal_area_partition(&dfc, 4).unwrap();
        let density: Vec<f64> = partition
            .regions()
            .map(|(lo, hi)| 0.25 / (hi - lo))
            .collect();
        let densest = density
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(densest, 3, "seed {seed}: {:?}", partition.boundaries());
    }
}
