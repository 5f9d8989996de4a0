//! Band-gain restoration baseline.
//!
//! A curve's raw ratio `R_b` estimates the fraction of band `b` energy that
//! is degradation, so `1 - lambda * R_b` is a Wiener-style attenuation. Gains
//! are interpolated linearly in radius between band centers and applied to
//! every frequency bin of the degraded image.

use std::fmt::Write as _;

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curve::DegradationFrequencyCurve;
use crate::error::{invalid, DfcError, Result};
use crate::luma::LumaImage;
use crate::spectral::{fft2, ifft2};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainCurve {
    pub band_count: usize,
    pub centers: Vec<f64>,
    pub raw_ratios: Vec<f64>,
    #[serde(rename = "gain")]
    pub gains: Vec<f64>,
}

impl GainCurve {
    /// Gains with no ratio information attached.
    pub fn from_gains(centers: Vec<f64>, gains: Vec<f64>) -> Result<Self> {
        if centers.len() != gains.len() || centers.len() < 2 {
            return Err(invalid("gain curve needs >= 2 centers with one gain each"));
        }
        if centers.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("gain centers must be strictly increasing"));
        }
        if gains.iter().any(|g| !g.is_finite()) {
            return Err(DfcError::NonFinite("gains"));
        }
        Ok(Self {
            band_count: centers.len(),
            raw_ratios: vec![0.0; centers.len()],
            gains: gains.into_iter().map(|g| g.clamp(0.0, 1.0)).collect(),
            centers,
        })
    }

    /// Gain at radial distance `r`, flat beyond the end centers.
    pub fn gain_at(&self, r: f64) -> f64 {
        let (c, g) = (&self.centers, &self.gains);
        let last = c.len() - 1;
        if r <= c[0] {
            return g[0];
        }
        if r >= c[last] {
            return g[last];
        }
        let i = c.partition_point(|&x| x <= r) - 1;
        let t = (r - c[i]) / (c[i + 1] - c[i]);
        g[i] + t * (g[i + 1] - g[i])
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// CSV with header `band,center,raw_ratio,gain`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("band,center,raw_ratio,gain\n");
        for b in 0..self.band_count {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                b, self.centers[b], self.raw_ratios[b], self.gains[b]
            );
        }
        out
    }
}

/// `g_b = clamp(1 - strength * R_b, 0, 1)` from the raw ratios.
pub fn wiener_gains(dfc: &DegradationFrequencyCurve, strength: f64) -> Result<GainCurve> {
    if !(strength.is_finite() && strength >= 0.0) {
        return Err(invalid(format!("strength must be >= 0, got {strength}")));
    }
    dfc.validate()?;
    Ok(GainCurve {
        band_count: dfc.band_count,
        centers: dfc.centers.clone(),
        raw_ratios: dfc.raw_ratios.clone(),
        gains: dfc
            .raw_ratios
            .iter()
            .map(|r| (1.0 - strength * r).clamp(0.0, 1.0))
            .collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterOptions {
    /// Keep the zero-frequency bin (mean intensity) untouched.
    pub pin_dc: bool,
    /// Clamp the output to `[0, 1]`.
    pub clamp: bool,
}

impl Default for FilterOptions {
    fn default() -> Self {
        Self {
            pin_dc: false,
            clamp: true,
        }
    }
}

/// Filters with default options: DC follows the curve, output clamped.
pub fn apply_gains(degraded: &LumaImage, gains: &GainCurve) -> Result<LumaImage> {
    apply_gains_with(degraded, gains, FilterOptions::default())
}

pub fn apply_gains_with(
    degraded: &LumaImage,
    gains: &GainCurve,
    options: FilterOptions,
) -> Result<LumaImage> {
    if degraded.pixels().iter().any(|p| !p.is_finite()) {
        return Err(DfcError::NonFinite("degraded image"));
    }
    let (h, w) = degraded.dims();
    let mut spectrum = fft2(degraded);
    let (ch, cw) = (h / 2, w / 2);
    for row in 0..h {
        let dh = ((row + ch) % h) as f64 - ch as f64;
        for col in 0..w {
            if options.pin_dc && row == 0 && col == 0 {
                continue;
            }
            let dw = ((col + cw) % w) as f64 - cw as f64;
            spectrum[row * w + col] *= gains.gain_at((dh * dh + dw * dw).sqrt());
        }
    }
    ifft2(h, w, &mut spectrum);
    let scale = 1.0 / (h * w) as f64;
    let pixels = spectrum
        .iter()
        .map(|c: &Complex64| {
            let v = c.re * scale;
            if options.clamp {
                v.clamp(0.0, 1.0)
            } else {
                v
            }
        })
        .collect();
    LumaImage::new(h, w, pixels)
}
