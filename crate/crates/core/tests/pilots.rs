//! Checks tied to synthetic pilot runs on natural-statistics scenes.

use dfc_core::band_filter::wiener_gains;
use dfc_core::bench::{noise_severity_probe, BenchConfig};
use dfc_core::fingerprint::build_profile;
use dfc_core::scenes::natural_scene;
use dfc_core::synth::{add_gaussian_noise, haze};
use dfc_core::DfcAnalyzer;

#[test]
fn noise_profile_is_tight_relative_to_haze() {
    let analyzer = DfcAnalyzer::new(128, 128, 25).unwrap();
    let (mut noise, mut hazy) = (Vec::new(), Vec::new());
    for seed in 0..100 {
        let clean = natural_scene(128, seed).unwrap();
        noise.push(
            analyzer
                .compute(&add_gaussian_noise(&clean, 25.0, seed).unwrap(), &clean)
                .unwrap(),
        );
        hazy.push(
            analyzer
                .compute(&haze(&clean, 0.8, 1.0).unwrap(), &clean)
                .unwrap(),
        );
    }
    let noise = build_profile(&noise, "noise").unwrap();
    let hazy = build_profile(&hazy, "haze").unwrap();
    assert!((noise.mean_curve.iter().sum::<f64>() - 1.0).abs() < 1e-6);
    for b in 0..25 {
        let gap = (noise.mean_curve[b] - hazy.mean_curve[b]).powi(2);
        assert!(
            noise.var_curve[b] < gap,
            "band {b}: var {} gap {gap}",
            noise.var_curve[b]
        );
    }
}

#[test]
fn noise_severity_estimate_near_truth() {
    let (mean, estimates) = noise_severity_probe(&BenchConfig::default(), 35.0).unwrap();
    assert!((mean - 35.0).abs() <= 10.0, "mean estimate {mean}");
    assert!(estimates.iter().all(|e| (10.0..=50.0).contains(e)));
}

#[test]
fn noise_gains_attenuate_high_bands() {
    let analyzer = DfcAnalyzer::new(128, 128, 25).unwrap();
    let clean = natural_scene(128, 3).unwrap();
    let dfc = analyzer
        .compute(&add_gaussian_noise(&clean, 25.0, 3).unwrap(), &clean)
        .unwrap();
    let gains = wiener_gains(&dfc, 1.0).unwrap().gains;
    assert!(gains[..3].iter().all(|&g| g > 0.9));
    assert!(gains[20..].iter().all(|&g| g < 0.5));
}
