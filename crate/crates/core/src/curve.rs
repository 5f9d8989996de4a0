//! Degradation frequency curves.
//!
//! A curve is built from a degraded/clean pair in three steps: the signed
//! residual and the degraded image are taken to centered energy maps, each
//! band mask pools both maps into a residual-to-degraded energy ratio, and
//! the ratios are normalized to unit sum and attached to the band centers.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, DfcError, Result};
use crate::luma::{residual, LumaImage, RgbImage};
use crate::masks::{default_mask_set, BandMaskSet};
use crate::spectral::{energy_map, EnergyMap};

/// Floor applied to every band's degraded-energy denominator.
pub const RATIO_EPSILON: f64 = 1e-12;

/// Number of bands used unless configured otherwise.
pub const DEFAULT_BAND_COUNT: usize = 25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegradationFrequencyCurve {
    pub band_count: usize,
    pub centers: Vec<f64>,
    pub raw_ratios: Vec<f64>,
    pub normalized: Vec<f64>,
}

impl DegradationFrequencyCurve {
    /// The uniform `1 / B` curve.
    pub fn uniform(centers: Vec<f64>) -> Self {
        let b = centers.len();
        Self {
            band_count: b,
            raw_ratios: vec![0.0; b],
            normalized: vec![1.0 / b as f64; b],
            centers,
        }
    }

    /// Checks lengths, finiteness, sign and unit sum.
    pub fn validate(&self) -> Result<()> {
        let b = self.band_count;
        for (name, v) in [
            ("centers", &self.centers),
            ("raw_ratios", &self.raw_ratios),
            ("normalized", &self.normalized),
        ] {
            if v.len() != b {
                return Err(invalid(format!(
                    "{name} has {} entries, expected {b}",
                    v.len()
                )));
            }
        }
        if b < 2 {
            return Err(invalid("a curve needs at least 2 bands"));
        }
        if self
            .raw_ratios
            .iter()
            .chain(&self.normalized)
            .any(|v| !v.is_finite() || *v < 0.0)
        {
            return Err(invalid("curve entries must be finite and non-negative"));
        }
        if self.centers.windows(2).any(|p| p[1] <= p[0]) {
            return Err(invalid("curve centers must be strictly increasing"));
        }
        let total: f64 = self.normalized.iter().sum();
        if (total - 1.0).abs() > 1e-6 {
            return Err(invalid(format!("normalized curve sums to {total}")));
        }
        Ok(())
    }

    /// Index of the largest normalized response (first on ties).
    pub fn peak_index(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.normalized.iter().enumerate() {
            if v > self.normalized[best] {
                best = i;
            }
        }
        best
    }

    pub fn peak_amplitude(&self) -> f64 {
        self.normalized[self.peak_index()]
    }

    pub fn max_radius(&self) -> f64 {
        *self.centers.last().expect("curve has bands")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let curve: Self = serde_json::from_str(text)?;
        curve.validate()?;
        Ok(curve)
    }

    /// CSV with header `band,center,raw_ratio,normalized`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("band,center,raw_ratio,normalized\n");
        for b in 0..self.band_count {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                b, self.centers[b], self.raw_ratios[b], self.normalized[b]
            );
        }
        out
    }
}

/// Mask-pooled energy ratio per band:
/// `sum(M_b * E_r) / max(sum(M_b * E_y), eps)`.
pub fn band_ratios(
    residual_energy: &EnergyMap,
    degraded_energy: &EnergyMap,
    masks: &BandMaskSet,
) -> Result<Vec<f64>> {
    for dims in [residual_energy.dims(), degraded_energy.dims()] {
        if dims != masks.dims() {
            let (mh, mw) = masks.dims();
            return Err(DfcError::DimensionMismatch {
                left_height: dims.0,
                left_width: dims.1,
                right_height: mh,
                right_width: mw,
            });
        }
    }
    let er = residual_energy.values();
    let ey = degraded_energy.values();
    Ok(masks
        .masks()
        .iter()
        .map(|mask| {
            let (mut num, mut den) = (0.0, 0.0);
            for ((m, r), y) in mask.iter().zip(er).zip(ey) {
                num += m * r;
                den += m * y;
            }
            num / den.max(RATIO_EPSILON)
        })
        .collect())
}

/// What to do when the ratio mass is too small to normalize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegeneratePolicy {
    #[default]
    Error,
    UniformFallback,
}

/// Unit-sum normalization of raw band ratios.
///
/// Fails with [`DfcError::NoDegradationSignal`] when `sum < B * eps`, unless
/// `policy` asks for the uniform curve.
pub fn normalize(
    raw_ratios: Vec<f64>,
    centers: Vec<f64>,
    policy: DegeneratePolicy,
) -> Result<DegradationFrequencyCurve> {
    let b = raw_ratios.len();
    if centers.len() != b {
        return Err(DfcError::BandCountMismatch {
            expected: b,
            actual: centers.len(),
        });
    }
    if b < 2 {
        return Err(invalid("a curve needs at least 2 bands"));
    }
    if raw_ratios.iter().any(|r| !r.is_finite() || *r < 0.0) {
        return Err(invalid("raw ratios must be finite and non-negative"));
    }
    let total: f64 = raw_ratios.iter().sum();
    let threshold = b as f64 * RATIO_EPSILON;
    if total < threshold {
        return match policy {
            DegeneratePolicy::Error => Err(DfcError::NoDegradationSignal { total, threshold }),
            DegeneratePolicy::UniformFallback => Ok(DegradationFrequencyCurve {
                raw_ratios,
                ..DegradationFrequencyCurve::uniform(centers)
            }),
        };
    }
    let normalized = raw_ratios.iter().map(|r| r / total).collect();
    Ok(DegradationFrequencyCurve {
        band_count: b,
        centers,
        raw_ratios,
        normalized,
    })
}

/// How colour inputs are reduced before analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChannelMode {
    #[default]
    Luma,
    /// One curve per channel, averaged entry-wise.
    PerChannel,
}

/// Reusable analyzer holding a precomputed mask bank for one image size.
#[derive(Debug, Clone)]
pub struct DfcAnalyzer {
    masks: BandMaskSet,
    policy: DegeneratePolicy,
}

impl DfcAnalyzer {
    pub fn new(height: usize, width: usize, band_count: usize) -> Result<Self> {
        Ok(Self::with_masks(default_mask_set(
            height, width, band_count,
        )?))
    }

    pub fn with_masks(masks: BandMaskSet) -> Self {
        Self {
            masks,
            policy: DegeneratePolicy::Error,
        }
    }

    pub fn with_policy(mut self, policy: DegeneratePolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn masks(&self) -> &BandMaskSet {
        &self.masks
    }

    pub fn raw_ratios(&self, degraded: &LumaImage, clean: &LumaImage) -> Result<Vec<f64>> {
        let r = residual(degraded, clean)?;
        band_ratios(&energy_map(&r)?, &energy_map(degraded)?, &self.masks)
    }

    pub fn compute(
        &self,
        degraded: &LumaImage,
        clean: &LumaImage,
    ) -> Result<DegradationFrequencyCurve> {
        let raw = self.raw_ratios(degraded, clean)?;
        normalize(raw, self.masks.centers(), self.policy)
    }

    pub fn compute_rgb(
        &self,
        degraded: &RgbImage,
        clean: &RgbImage,
        mode: ChannelMode,
    ) -> Result<DegradationFrequencyCurve> {
        match mode {
            ChannelMode::Luma => {
                let y = crate::luma::to_luma(&degraded.red, &degraded.green, &degraded.blue)?;
                let x = crate::luma::to_luma(&clean.red, &clean.green, &clean.blue)?;
                self.compute(&y, &x)
            }
            ChannelMode::PerChannel => {
                let b = self.masks.band_count();
                let mut raw = vec![0.0; b];
                let mut norm = vec![0.0; b];
                for (y, x) in degraded.planes().into_iter().zip(clean.planes()) {
                    let curve = self.compute(y, x)?;
                    for i in 0..b {
                        raw[i] += curve.raw_ratios[i] / 3.0;
                        norm[i] += curve.normalized[i] / 3.0;
                    }
                }
                Ok(DegradationFrequencyCurve {
                    band_count: b,
                    centers: self.masks.centers(),
                    raw_ratios: raw,
                    normalized: norm,
                })
            }
        }
    }
}

/// One-shot curve computation with the default mask bank.
pub fn compute_dfc(
    degraded: &LumaImage,
    clean: &LumaImage,
    band_count: usize,
) -> Result<DegradationFrequencyCurve> {
    degraded.check_same_dims(clean)?;
    DfcAnalyzer::new(degraded.height(), degraded.width(), band_count)?.compute(degraded, clean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;

    fn seeded(h: usize, w: usize, seed: u64) -> LumaImage {
        let mut rng = CounterRng::new(seed);
        LumaImage::from_fn(h, w, |_, _| rng.next_f64()).unwrap()
    }

    #[test]
    fn identical_maps_give_unit_ratios() {
        let e = energy_map(&seeded(16, 16, 1)).unwrap();
        let masks = default_mask_set(16, 16, 5).unwrap();
        for r in band_ratios(&e, &e, &masks).unwrap() {
            assert!((r - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_residual_gives_zero_ratios() {
        let zero = energy_map(&LumaImage::constant(16, 16, 0.0).unwrap()).unwrap();
        let e = energy_map(&seeded(16, 16, 2)).unwrap();
        let masks = default_mask_set(16, 16, 5).unwrap();
        assert!(band_ratios(&zero, &e, &masks)
            .unwrap()
            .iter()
            .all(|&r| r == 0.0));
    }

    #[test]
    fn ratios_match_scalar_accumulation() {
        let clean = seeded(32, 32, 3);
        let degraded = seeded(32, 32, 4);
        let r = residual(&degraded, &clean).unwrap();
        let er = energy_map(&r).unwrap();
        let ey = energy_map(&degraded).unwrap();
        let masks = default_mask_set(32, 32, 25).unwrap();
        let got = band_ratios(&er, &ey, &masks).unwrap();

        let r_max = (2.0f64 * 32.0 * 32.0).sqrt() / 2.0;
        for (b, &g) in got.iter().enumerate() {
            let mu = r_max * b as f64 / 24.0;
            let sigma = r_max * (0.05 + 0.25 * b as f64 / 24.0);
            let (mut num, mut den) = (0.0, 0.0);
            for h in 0..32 {
                for w in 0..32 {
                    let d = (((h as f64) - 16.0).powi(2) + ((w as f64) - 16.0).powi(2)).sqrt();
                    let m = (-(d - mu).powi(2) / (2.0 * sigma * sigma)).exp();
                    num += m * er.get(h, w);
                    den += m * ey.get(h, w);
                }
            }
            let expected = num / den;
            assert!(
                (g - expected).abs() <= 1e-10 * expected.max(1.0),
                "band {b}"
            );
        }
    }

    #[test]
    fn band_ratios_reject_mismatched_grids() {
        let a = energy_map(&seeded(16, 16, 1)).unwrap();
        let b = energy_map(&seeded(16, 12, 1)).unwrap();
        let masks = default_mask_set(16, 16, 4).unwrap();
        assert!(band_ratios(&a, &b, &masks).is_err());
    }

    #[test]
    fn normalize_examples() {
        let c = vec![0.0, 1.0, 2.0, 3.0];
        let curve = normalize(vec![2.0; 4], c.clone(), DegeneratePolicy::Error).unwrap();
        assert_eq!(curve.normalized, vec![0.25; 4]);

        let curve = normalize(vec![1.0, 3.0], vec![0.0, 1.0], DegeneratePolicy::Error).unwrap();
        assert_eq!(curve.normalized, vec![0.25, 0.75]);

        assert!(matches!(
            normalize(vec![0.0; 4], c.clone(), DegeneratePolicy::Error),
            Err(DfcError::NoDegradationSignal { .. })
        ));
        let uniform = normalize(vec![0.0; 4], c, DegeneratePolicy::UniformFallback).unwrap();
        assert_eq!(uniform.normalized, vec![0.25; 4]);

        assert!(normalize(vec![1.0, f64::NAN], vec![0.0, 1.0], DegeneratePolicy::Error).is_err());
        assert!(normalize(vec![1.0, -1.0], vec![0.0, 1.0], DegeneratePolicy::Error).is_err());
    }

    #[test]
    fn identical_pair_has_no_signal() {
        let y = seeded(16, 16, 5);
        assert!(matches!(
            compute_dfc(&y, &y, 25),
            Err(DfcError::NoDegradationSignal { .. })
        ));
    }

    #[test]
    fn scaling_cancels_in_raw_ratios() {
        let clean = seeded(24, 24, 6);
        let degraded = seeded(24, 24, 7);
        let analyzer = DfcAnalyzer::new(24, 24, 10).unwrap();
        let base = analyzer.raw_ratios(&degraded, &clean).unwrap();
        for c in [0.01, 3.0, 250.0] {
            let scaled = analyzer
                .raw_ratios(
                    &degraded.map(|p| p * c).unwrap(),
                    &clean.map(|p| p * c).unwrap(),
                )
                .unwrap();
            for (a, b) in base.iter().zip(&scaled) {
                assert!((a - b).abs() <= 1e-9 * a.abs());
            }
        }
    }

    #[test]
    fn per_channel_mode_averages_curves() {
        let clean =
            RgbImage::from_planes(seeded(16, 16, 1), seeded(16, 16, 2), seeded(16, 16, 3)).unwrap();
        let degraded =
            RgbImage::from_planes(seeded(16, 16, 4), seeded(16, 16, 5), seeded(16, 16, 6)).unwrap();
        let analyzer = DfcAnalyzer::new(16, 16, 6).unwrap();
        let avg = analyzer
            .compute_rgb(&degraded, &clean, ChannelMode::PerChannel)
            .unwrap();
        let parts: Vec<_> = degraded
            .planes()
            .into_iter()
            .zip(clean.planes())
            .map(|(y, x)| analyzer.compute(y, x).unwrap())
            .collect();
        for b in 0..6 {
            let expected = parts.iter().map(|c| c.normalized[b]).sum::<f64>() / 3.0;
            assert!((avg.normalized[b] - expected).abs() < 1e-15);
        }
        avg.validate().unwrap();
        analyzer
            .compute_rgb(&degraded, &clean, ChannelMode::Luma)
            .unwrap()
            .validate()
            .unwrap();
    }

    #[test]
    fn json_and_csv_shape() {
        let curve = normalize(vec![1.0, 3.0], vec![0.0, 2.5], DegeneratePolicy::Error).unwrap();
        let json = curve.to_json().unwrap();
        assert_eq!(
            json,
            r#"{"band_count":2,"centers":[0.0,2.5],"raw_ratios":[1.0,3.0],"normalized":[0.25,0.75]}"#
        );
        assert_eq!(DegradationFrequencyCurve::from_json(&json).unwrap(), curve);
        assert_eq!(
            curve.to_csv(),
            "band,center,raw_ratio,normalized\n0,0,1,0.25\n1,2.5,3,0.75\n"
        );
    }
}
