//! Ring-shaped Gaussian band masks over the centered frequency plane.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, DfcError, Result};
use crate::luma::MIN_SIDE;

/// Bandwidth schedule endpoints, as fractions of the maximum radius.
pub const SIGMA_START_FRAC: f64 = 0.05;
pub const SIGMA_END_FRAC: f64 = 0.3;

/// Center and width of one radial band, both in frequency bins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandMaskSpec {
    pub mu: f64,
    pub sigma: f64,
}

impl BandMaskSpec {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !(mu.is_finite() && mu >= 0.0) {
            return Err(invalid(format!("band center must be >= 0, got {mu}")));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(invalid(format!("band width must be > 0, got {sigma}")));
        }
        Ok(Self { mu, sigma })
    }

    #[inline]
    pub fn weight(&self, distance: f64) -> f64 {
        let z = distance - self.mu;
        (-(z * z) / (2.0 * self.sigma * self.sigma)).exp()
    }
}

/// `sqrt(H^2 + W^2) / 2`, the distance from DC to a corner.
pub fn max_radius(height: usize, width: usize) -> f64 {
    ((height * height + width * width) as f64).sqrt() / 2.0
}

/// Euclidean distance of every centered grid bin to the DC bin.
pub fn radial_distances(height: usize, width: usize) -> Vec<f64> {
    let (ch, cw) = ((height / 2) as f64, (width / 2) as f64);
    let mut d = Vec::with_capacity(height * width);
    for h in 0..height {
        let dh = h as f64 - ch;
        for w in 0..width {
            let dw = w as f64 - cw;
            d.push((dh * dh + dw * dw).sqrt());
        }
    }
    d
}

/// `count` evenly spaced points from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    let step = (end - start) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                end
            } else {
                start + step * i as f64
            }
        })
        .collect()
}

/// A bank of `B` band masks evaluated on an `H x W` centered grid.
#[derive(Debug, Clone)]
pub struct BandMaskSet {
    specs: Vec<BandMaskSpec>,
    height: usize,
    width: usize,
    masks: Vec<Vec<f64>>,
}

impl BandMaskSet {
    pub fn from_specs(height: usize, width: usize, specs: Vec<BandMaskSpec>) -> Result<Self> {
        if specs.len() < 2 {
            return Err(invalid(format!(
                "need at least 2 bands, got {}",
                specs.len()
            )));
        }
        if height < MIN_SIDE || width < MIN_SIDE {
            return Err(DfcError::TooSmall {
                height,
                width,
                min: MIN_SIDE,
            });
        }
        if specs.windows(2).any(|p| p[1].mu <= p[0].mu) {
            return Err(invalid("band centers must be strictly increasing"));
        }
        let distances = radial_distances(height, width);
        let masks = specs
            .iter()
            .map(|s| distances.iter().map(|&d| s.weight(d)).collect())
            .collect();
        Ok(Self {
            specs,
            height,
            width,
            masks,
        })
    }

    pub fn specs(&self) -> &[BandMaskSpec] {
        &self.specs
    }

    pub fn centers(&self) -> Vec<f64> {
        self.specs.iter().map(|s| s.mu).collect()
    }

    pub fn band_count(&self) -> usize {
        self.specs.len()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn mask(&self, band: usize) -> &[f64] {
        &self.masks[band]
    }

    pub fn masks(&self) -> &[Vec<f64>] {
        &self.masks
    }
}

/// The default bank: centers spaced linearly over `[0, R_max]`, widths over
/// `[0.05, 0.3] * R_max`.
pub fn default_mask_set(height: usize, width: usize, band_count: usize) -> Result<BandMaskSet> {
    if band_count < 2 {
        return Err(invalid(format!("need at least 2 bands, got {band_count}")));
    }
    let r_max = max_radius(height, width);
    let mus = linspace(0.0, r_max, band_count);
    let sigmas = linspace(SIGMA_START_FRAC * r_max, SIGMA_END_FRAC * r_max, band_count);
    let specs = mus
        .into_iter()
        .zip(sigmas)
        .map(|(mu, sigma)| BandMaskSpec { mu, sigma })
        .collect();
    BandMaskSet::from_specs(height, width, specs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_schedule_on_256() {
        let set = default_mask_set(256, 256, 25).unwrap();
        let r_max = (2.0f64 * 256.0 * 256.0).sqrt() / 2.0;
        let specs = set.specs();
        assert_eq!(specs[0].mu, 0.0);
        assert!((specs[24].mu - r_max).abs() < 1e-9);
        assert!((r_max - 181.019).abs() < 1e-3);
        assert!((specs[1].mu - specs[0].mu - 7.5425).abs() < 1e-3);
        assert!((specs[0].sigma - 0.05 * r_max).abs() < 1e-9);
        assert!((specs[24].sigma - 0.3 * r_max).abs() < 1e-9);
    }

    #[test]
    fn two_band_schedule() {
        let set = default_mask_set(16, 12, 2).unwrap();
        let r = max_radius(16, 12);
        assert_eq!(
            set.specs()[0],
            BandMaskSpec {
                mu: 0.0,
                sigma: 0.05 * r
            }
        );
        assert_eq!(
            set.specs()[1],
            BandMaskSpec {
                mu: r,
                sigma: 0.3 * r
            }
        );
    }

    #[test]
    fn masks_follow_gaussian_ring_formula() {
        let set = default_mask_set(17, 20, 6).unwrap();
        let d = radial_distances(17, 20);
        for (b, spec) in set.specs().iter().enumerate() {
            for (i, &m) in set.mask(b).iter().enumerate() {
                let expected = (-(d[i] - spec.mu).powi(2) / (2.0 * spec.sigma.powi(2))).exp();
                assert_eq!(m, expected);
                assert!(m > 0.0 && m <= 1.0);
            }
        }
    }

    #[test]
    fn mask_peak_is_one_at_center_distance() {
        for spec in default_mask_set(64, 64, 25).unwrap().specs() {
            assert_eq!(spec.weight(spec.mu), 1.0);
        }
    }

    #[test]
    fn mask_maximum_sits_at_closest_distance() {
        let set = default_mask_set(24, 30, 9).unwrap();
        let d = radial_distances(24, 30);
        for (b, spec) in set.specs().iter().enumerate() {
            let mask = set.mask(b);
            let best = mask.iter().cloned().fold(f64::MIN, f64::max);
            let closest = d
                .iter()
                .map(|x| (x - spec.mu).abs())
                .fold(f64::MAX, f64::min);
            for (i, &m) in mask.iter().enumerate() {
                if m == best {
                    assert!(((d[i] - spec.mu).abs() - closest).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(default_mask_set(16, 16, 1).is_err());
        assert!(default_mask_set(4, 16, 4).is_err());
        let specs = vec![
            BandMaskSpec {
                mu: 2.0,
                sigma: 1.0,
            },
            BandMaskSpec {
                mu: 1.0,
                sigma: 1.0,
            },
        ];
        assert!(BandMaskSet::from_specs(16, 16, specs).is_err());
        assert!(BandMaskSpec::new(-1.0, 1.0).is_err());
        assert!(BandMaskSpec::new(1.0, 0.0).is_err());
    }
}
