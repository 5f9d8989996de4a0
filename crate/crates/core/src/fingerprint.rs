//! Degradation fingerprints: per-family curve statistics, nearest-profile
//! classification and severity estimation from peak response.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::curve::DegradationFrequencyCurve;
use crate::error::{invalid, DfcError, Result};

/// Variance floor in the profile distance.
pub const VARIANCE_FLOOR: f64 = 1e-6;

/// Order-independent compensated sum: values are sorted first so any
/// permutation of the input yields bit-identical results.
fn stable_sum(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &v in values.iter() {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegradationProfile {
    pub label: String,
    pub band_count: usize,
    #[serde(rename = "mean")]
    pub mean_curve: Vec<f64>,
    #[serde(rename = "variance")]
    pub var_curve: Vec<f64>,
    #[serde(rename = "n")]
    pub sample_count: usize,
}

impl DegradationProfile {
    pub fn validate(&self) -> Result<()> {
        let b = self.band_count;
        if self.mean_curve.len() != b || self.var_curve.len() != b {
            return Err(invalid(format!(
                "profile '{}' has inconsistent band counts",
                self.label
            )));
        }
        if self.sample_count < 2 {
            return Err(invalid(format!("profile '{}' needs n >= 2", self.label)));
        }
        if self
            .mean_curve
            .iter()
            .chain(&self.var_curve)
            .any(|v| !v.is_finite() || *v < 0.0)
        {
            return Err(invalid(format!(
                "profile '{}' has invalid entries",
                self.label
            )));
        }
        Ok(())
    }

    pub fn std_curve(&self) -> Vec<f64> {
        self.var_curve.iter().map(|v| v.sqrt()).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let profile: Self = serde_json::from_str(text)?;
        profile.validate()?;
        Ok(profile)
    }
}

/// Loads every `*.json` file in `dir` as a profile, in file-name order.
pub fn load_profile_library(dir: impl AsRef<Path>) -> Result<Vec<DegradationProfile>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir.as_ref())?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
    paths.sort();
    paths
        .iter()
        .map(|p| DegradationProfile::from_json(&std::fs::read_to_string(p)?))
        .collect()
}

/// Per-band sample mean and unbiased sample variance.
pub fn build_profile(
    curves: &[DegradationFrequencyCurve],
    label: &str,
) -> Result<DegradationProfile> {
    if curves.len() < 2 {
        return Err(invalid(format!(
            "a profile needs at least 2 curves, got {}",
            curves.len()
        )));
    }
    let b = curves[0].band_count;
    if let Some(c) = curves
        .iter()
        .find(|c| c.band_count != b || c.normalized.len() != b)
    {
        return Err(DfcError::BandCountMismatch {
            expected: b,
            actual: c.normalized.len(),
        });
    }
    let n = curves.len() as f64;
    let mut column = vec![0.0; curves.len()];
    let mut mean_curve = Vec::with_capacity(b);
    let mut var_curve = Vec::with_capacity(b);
    for band in 0..b {
        for (slot, c) in column.iter_mut().zip(curves) {
            *slot = c.normalized[band];
        }
        let mean = stable_sum(&mut column) / n;
        for (slot, c) in column.iter_mut().zip(curves) {
            *slot = (c.normalized[band] - mean).powi(2);
        }
        mean_curve.push(mean);
        var_curve.push(stable_sum(&mut column) / (n - 1.0));
    }
    Ok(DegradationProfile {
        label: label.to_string(),
        band_count: b,
        mean_curve,
        var_curve,
        sample_count: curves.len(),
    })
}

/// `sum_b (R_b - mean_b)^2 / (var_b + VARIANCE_FLOOR)`.
pub fn profile_distance(
    dfc: &DegradationFrequencyCurve,
    profile: &DegradationProfile,
) -> Result<f64> {
    if dfc.normalized.len() != profile.band_count {
        return Err(DfcError::BandCountMismatch {
            expected: profile.band_count,
            actual: dfc.normalized.len(),
        });
    }
    Ok(dfc
        .normalized
        .iter()
        .zip(&profile.mean_curve)
        .zip(&profile.var_curve)
        .map(|((r, m), v)| (r - m).powi(2) / (v + VARIANCE_FLOOR))
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub label: String,
    /// `(label, distance)` pairs, nearest first; equal distances in label order.
    pub distances: Vec<(String, f64)>,
}

pub fn classify(
    dfc: &DegradationFrequencyCurve,
    profiles: &[DegradationProfile],
) -> Result<Classification> {
    if profiles.is_empty() {
        return Err(DfcError::EmptyInput("profile set"));
    }
    let mut distances = profiles
        .iter()
        .map(|p| Ok((p.label.clone(), profile_distance(dfc, p)?)))
        .collect::<Result<Vec<_>>>()?;
    distances.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(Classification {
        label: distances[0].0.clone(),
        distances,
    })
}

/// Scalar read off a curve for severity estimation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeverityFeature {
    /// Largest raw band ratio. Grows with severity for additive noise and
    /// gamma darkening alike.
    #[default]
    RawPeak,
    /// Largest entry of the unit-sum curve.
    NormalizedPeak,
}

impl SeverityFeature {
    pub fn measure(self, dfc: &DegradationFrequencyCurve) -> f64 {
        match self {
            Self::RawPeak => dfc
                .raw_ratios
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max),
            Self::NormalizedPeak => dfc.peak_amplitude(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeverityCalibration {
    pub label: String,
    pub feature: SeverityFeature,
    pub levels: Vec<f64>,
    pub peak_amplitudes: Vec<f64>,
    pub direction: Direction,
}

impl SeverityCalibration {
    /// Validates ordering and records the amplitude direction.
    pub fn new(
        label: &str,
        feature: SeverityFeature,
        levels: Vec<f64>,
        peak_amplitudes: Vec<f64>,
    ) -> Result<Self> {
        if levels.len() < 2 || levels.len() != peak_amplitudes.len() {
            return Err(invalid(
                "calibration needs >= 2 levels with one amplitude each",
            ));
        }
        if levels
            .iter()
            .chain(&peak_amplitudes)
            .any(|v| !v.is_finite())
        {
            return Err(DfcError::NonFinite("calibration"));
        }
        if levels.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("calibration levels must be strictly ascending"));
        }
        let direction = if peak_amplitudes.windows(2).all(|w| w[1] > w[0]) {
            Direction::Increasing
        } else if peak_amplitudes.windows(2).all(|w| w[1] < w[0]) {
            Direction::Decreasing
        } else {
            return Err(DfcError::NonMonotoneCalibration);
        };
        Ok(Self {
            label: label.to_string(),
            feature,
            levels,
            peak_amplitudes,
            direction,
        })
    }

    /// Calibrates from curves grouped by level, using the mean feature per level.
    pub fn from_samples(
        label: &str,
        feature: SeverityFeature,
        samples: &[(f64, Vec<DegradationFrequencyCurve>)],
    ) -> Result<Self> {
        let mut levels = Vec::with_capacity(samples.len());
        let mut amps = Vec::with_capacity(samples.len());
        for (level, curves) in samples {
            if curves.is_empty() {
                return Err(DfcError::EmptyInput("calibration level"));
            }
            let mut values: Vec<f64> = curves.iter().map(|c| feature.measure(c)).collect();
            levels.push(*level);
            amps.push(stable_sum(&mut values) / curves.len() as f64);
        }
        Self::new(label, feature, levels, amps)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Self = serde_json::from_str(text)?;
        let checked = Self::new(&raw.label, raw.feature, raw.levels, raw.peak_amplitudes)?;
        if checked.direction != raw.direction {
            return Err(invalid("recorded direction disagrees with amplitudes"));
        }
        Ok(checked)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeverityEstimate {
    pub level: f64,
    pub feature_value: f64,
    /// True when the feature fell outside the calibrated amplitude range.
    pub clamped: bool,
}

/// Inverse piecewise-linear interpolation of the calibration, clamped to
/// the calibrated level range.
pub fn estimate_severity(
    dfc: &DegradationFrequencyCurve,
    calibration: &SeverityCalibration,
) -> Result<SeverityEstimate> {
    let x = calibration.feature.measure(dfc);
    if !x.is_finite() {
        return Err(DfcError::NonFinite("severity feature"));
    }
    let levels = &calibration.levels;
    // Work on an ascending amplitude axis.
    let (amps, lv): (Vec<f64>, Vec<f64>) = match calibration.direction {
        Direction::Increasing => (calibration.peak_amplitudes.clone(), levels.clone()),
        Direction::Decreasing => (
            calibration.peak_amplitudes.iter().rev().copied().collect(),
            levels.iter().rev().copied().collect(),
        ),
    };
    let last = amps.len() - 1;
    let (level, clamped) = if x < amps[0] {
        (lv[0], true)
    } else if x > amps[last] {
        (lv[last], true)
    } else if let Some(i) = amps.iter().position(|&a| a == x) {
        (lv[i], false)
    } else {
        let i = amps.partition_point(|&a| a < x) - 1;
        let t = (x - amps[i]) / (amps[i + 1] - amps[i]);
        (lv[i] + t * (lv[i + 1] - lv[i]), false)
    };
    Ok(SeverityEstimate {
        level,
        feature_value: x,
        clamped,
    })
}
