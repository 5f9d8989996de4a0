//! Synthetic degradations for paired (clean, degraded) data.
//!
//! Every generator is a pure function of its input, parameters and seed;
//! outputs are clamped to `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::luma::LumaImage;
use crate::rng::CounterRng;

/// Gaussian cross-section (standard deviation, pixels) of a rain streak.
pub const STREAK_WIDTH: f64 = 1.0;

pub fn add_gaussian_noise(img: &LumaImage, sigma: f64, seed: u64) -> Result<LumaImage> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(invalid(format!("noise sigma must be > 0, got {sigma}")));
    }
    let std = sigma / 255.0;
    let mut rng = CounterRng::new(seed);
    let pixels = img
        .pixels()
        .iter()
        .map(|&p| (p + std * rng.next_gaussian()).clamp(0.0, 1.0))
        .collect();
    LumaImage::new(img.height(), img.width(), pixels)
}

pub fn gamma_darken(img: &LumaImage, gamma: f64) -> Result<LumaImage> {
    if !(gamma.is_finite() && gamma >= 1.0) {
        return Err(invalid(format!("gamma must be >= 1, got {gamma}")));
    }
    img.map(|p| p.clamp(0.0, 1.0).powf(gamma))
}

/// Normalized 1D Gaussian kernel with standard deviation `radius`,
/// truncated at `ceil(3 * radius)`.
pub fn gaussian_kernel(radius: f64) -> Vec<f64> {
    let half = (3.0 * radius).ceil() as isize;
    let raw: Vec<f64> = (-half..=half)
        .map(|i| (-((i * i) as f64) / (2.0 * radius * radius)).exp())
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|k| k / total).collect()
}

/// Half-sample symmetric reflection into `0..n`.
fn reflect(mut i: isize, n: usize) -> usize {
    let n = n as isize;
    let period = 2 * n;
    i = i.rem_euclid(period);
    if i >= n {
        i = period - 1 - i;
    }
    i as usize
}

/// Separable Gaussian blur with reflective boundaries.
pub fn gaussian_blur(img: &LumaImage, radius: f64) -> Result<LumaImage> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(invalid(format!("blur radius must be > 0, got {radius}")));
    }
    let kernel = gaussian_kernel(radius);
    let half = (kernel.len() / 2) as isize;
    let (height, width) = img.dims();

    let mut rows = vec![0.0; height * width];
    for h in 0..height {
        for w in 0..width {
            rows[h * width + w] = kernel
                .iter()
                .enumerate()
                .map(|(k, kv)| kv * img.get(h, reflect(w as isize + k as isize - half, width)))
                .sum();
        }
    }
    let mut out = vec![0.0; height * width];
    for h in 0..height {
        for w in 0..width {
            out[h * width + w] = kernel
                .iter()
                .enumerate()
                .map(|(k, kv)| {
                    kv * rows[reflect(h as isize + k as isize - half, height) * width + w]
                })
                .sum::<f64>()
                .clamp(0.0, 1.0);
        }
    }
    LumaImage::new(height, width, out)
}

/// Additive bright streaks at seeded positions.
///
/// `density` is the expected fraction of pixels covered by streak cores,
/// giving `round(density * H * W / length)` streaks. Each streak is a
/// segment of `length` pixels at `angle_deg` from vertical with a Gaussian
/// cross-section of [`STREAK_WIDTH`] and a peak intensity drawn from
/// `[0.2, 0.5]`.
pub fn rain_streaks(
    img: &LumaImage,
    density: f64,
    angle_deg: f64,
    length: f64,
    seed: u64,
) -> Result<LumaImage> {
    if !(density > 0.0 && density <= 1.0) {
        return Err(invalid(format!(
            "rain density must be in (0, 1], got {density}"
        )));
    }
    if !(length.is_finite() && length >= 2.0) {
        return Err(invalid(format!("streak length must be >= 2, got {length}")));
    }
    if !angle_deg.is_finite() {
        return Err(invalid("streak angle must be finite"));
    }
    let (height, width) = img.dims();
    let count = (density * (height * width) as f64 / length).round() as usize;
    let (dx, dy) = {
        let a = angle_deg.to_radians();
        (a.sin(), a.cos())
    };
    let reach = 3.0 * STREAK_WIDTH;
    let half_len = length / 2.0;
    let mut layer = vec![0.0; height * width];
    let mut rng = CounterRng::new(seed);
    for _ in 0..count {
        let cy = rng.uniform(0.0, height as f64);
        let cx = rng.uniform(0.0, width as f64);
        let intensity = rng.uniform(0.2, 0.5);

        let ext_x = half_len * dx.abs() + reach;
        let ext_y = half_len * dy.abs() + reach;
        let h0 = (cy - ext_y).floor().max(0.0) as usize;
        let h1 = ((cy + ext_y).ceil() as usize).min(height - 1);
        let w0 = (cx - ext_x).floor().max(0.0) as usize;
        let w1 = ((cx + ext_x).ceil() as usize).min(width - 1);
        for h in h0..=h1 {
            for w in w0..=w1 {
                let (px, py) = (w as f64 - cx, h as f64 - cy);
                let along = (px * dx + py * dy).clamp(-half_len, half_len);
                let (qx, qy) = (px - along * dx, py - along * dy);
                let dist2 = qx * qx + qy * qy;
                if dist2 <= reach * reach {
                    layer[h * width + w] +=
                        intensity * (-dist2 / (2.0 * STREAK_WIDTH * STREAK_WIDTH)).exp();
                }
            }
        }
    }
    let pixels = img
        .pixels()
        .iter()
        .zip(&layer)
        .map(|(p, s)| (p + s).clamp(0.0, 1.0))
        .collect();
    LumaImage::new(height, width, pixels)
}

/// Uniform airlight veil: `x + A * (1 - t)`, clamped.
///
/// Only the additive airlight term of the scattering model is applied. The
/// multiplicative `x * t` attenuation makes the residual a scaled copy of the
/// content, whose band ratios are flat across frequency.
pub fn haze(img: &LumaImage, transmission: f64, airlight: f64) -> Result<LumaImage> {
    if !(transmission > 0.0 && transmission <= 1.0) {
        return Err(invalid(format!(
            "transmission must be in (0, 1], got {transmission}"
        )));
    }
    if !(0.0..=1.0).contains(&airlight) {
        return Err(invalid(format!(
            "airlight must be in [0, 1], got {airlight}"
        )));
    }
    let veil = airlight * (1.0 - transmission);
    img.map(|p| (p + veil).clamp(0.0, 1.0))
}

fn default_rain_angle() -> f64 {
    10.0
}

fn default_rain_length() -> f64 {
    15.0
}

fn default_airlight() -> f64 {
    1.0
}

/// Serializable degradation description, e.g.
/// `{"kind":"gaussian_noise","sigma":25,"seed":7}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DegradationSpec {
    GaussianNoise {
        sigma: f64,
        #[serde(default)]
        seed: u64,
    },
    LowLight {
        gamma: f64,
    },
    Blur {
        radius: f64,
    },
    Rain {
        density: f64,
        #[serde(default = "default_rain_angle")]
        angle: f64,
        #[serde(default = "default_rain_length")]
        length: f64,
        #[serde(default)]
        seed: u64,
    },
    Haze {
        transmission: f64,
        #[serde(default = "default_airlight")]
        airlight: f64,
    },
}

impl DegradationSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::GaussianNoise { .. } => "gaussian_noise",
            Self::LowLight { .. } => "low_light",
            Self::Blur { .. } => "blur",
            Self::Rain { .. } => "rain",
            Self::Haze { .. } => "haze",
        }
    }

    /// Same spec with its seed replaced; deterministic kinds are unchanged.
    pub fn with_seed(&self, new_seed: u64) -> Self {
        let mut out = self.clone();
        match &mut out {
            Self::GaussianNoise { seed, .. } | Self::Rain { seed, .. } => *seed = new_seed,
            _ => {}
        }
        out
    }

    /// Checks parameter ranges without touching an image.
    pub fn validate(&self) -> Result<()> {
        let probe = LumaImage::constant(8, 8, 0.5)?;
        self.apply(&probe).map(|_| ())
    }

    pub fn apply(&self, img: &LumaImage) -> Result<LumaImage> {
        match *self {
            Self::GaussianNoise { sigma, seed } => add_gaussian_noise(img, sigma, seed),
            Self::LowLight { gamma } => {
                if gamma <= 1.0 {
                    return Err(invalid(format!("low_light gamma must be > 1, got {gamma}")));
                }
                gamma_darken(img, gamma)
            }
            Self::Blur { radius } => gaussian_blur(img, radius),
            Self::Rain {
                density,
                angle,
                length,
                seed,
            } => rain_streaks(img, density, angle, length, seed),
            Self::Haze {
                transmission,
                airlight,
            } => {
                if transmission >= 1.0 {
                    return Err(invalid(format!(
                        "haze transmission must be < 1, got {transmission}"
                    )));
                }
                haze(img, transmission, airlight)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seeded(h: usize, w: usize, seed: u64) -> LumaImage {
        let mut rng = CounterRng::new(seed);
        LumaImage::from_fn(h, w, |_, _| rng.uniform(0.1, 0.9)).unwrap()
    }

    #[test]
    fn tiny_noise_is_near_identity() {
        let img = seeded(16, 16, 1);
        let out = add_gaussian_noise(&img, 1e-9, 3).unwrap();
        for (a, b) in out.pixels().iter().zip(img.pixels()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn noise_sample_std_matches_sigma() {
        let img = LumaImage::constant(64, 64, 0.5).unwrap();
        let out = add_gaussian_noise(&img, 25.0, 7).unwrap();
        let r: Vec<f64> = out.pixels().iter().map(|p| p - 0.5).collect();
        let mean = r.iter().sum::<f64>() / r.len() as f64;
        let std = (r.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (r.len() - 1) as f64).sqrt();
        let target = 25.0 / 255.0;
        assert!((std - target).abs() < 0.1 * target, "std {std}");
    }

    #[test]
    fn noise_is_seed_deterministic() {
        let img = seeded(16, 16, 1);
        assert_eq!(
            add_gaussian_noise(&img, 15.0, 9).unwrap(),
            add_gaussian_noise(&img, 15.0, 9).unwrap()
        );
        assert_ne!(
            add_gaussian_noise(&img, 15.0, 9).unwrap(),
            add_gaussian_noise(&img, 15.0, 10).unwrap()
        );
        assert!(add_gaussian_noise(&img, 0.0, 1).is_err());
    }

    #[test]
    fn gamma_examples() {
        let img = seeded(16, 16, 2);
        assert_eq!(gamma_darken(&img, 1.0).unwrap(), img);
        let half = LumaImage::constant(8, 8, 0.5).unwrap();
        assert!(gamma_darken(&half, 2.0)
            .unwrap()
            .pixels()
            .iter()
            .all(|&p| p == 0.25));
        let means: Vec<f64> = [1.5, 2.0, 3.0]
            .iter()
            .map(|&g| gamma_darken(&img, g).unwrap().mean())
            .collect();
        assert!(means.windows(2).all(|p| p[1] < p[0]));
        assert!(gamma_darken(&img, 0.9).is_err());
    }

    #[test]
    fn blur_preserves_constant() {
        let img = LumaImage::constant(20, 20, 0.3).unwrap();
        let out = gaussian_blur(&img, 2.0).unwrap();
        assert!(out.pixels().iter().all(|&p| (p - 0.3).abs() < 1e-12));
    }

    #[test]
    fn blurred_impulse_is_kernel() {
        let img =
            LumaImage::from_fn(31, 31, |h, w| if (h, w) == (15, 15) { 1.0 } else { 0.0 }).unwrap();
        let radius = 1.5;
        let out = gaussian_blur(&img, radius).unwrap();
        let k = gaussian_kernel(radius);
        let half = k.len() / 2;
        for h in 0..31 {
            for w in 0..31 {
                let (dh, dw) = (h as isize - 15, w as isize - 15);
                let expected = if dh.unsigned_abs() <= half && dw.unsigned_abs() <= half {
                    k[(dh + half as isize) as usize] * k[(dw + half as isize) as usize]
                } else {
                    0.0
                };
                assert!((out.get(h, w) - expected).abs() < 1e-15);
            }
        }
        assert!(gaussian_blur(&img, 0.0).is_err());
    }

    #[test]
    fn reflect_indexing() {
        assert_eq!(reflect(-1, 5), 0);
        assert_eq!(reflect(-2, 5), 1);
        assert_eq!(reflect(5, 5), 4);
        assert_eq!(reflect(6, 5), 3);
        assert_eq!(reflect(2, 5), 2);
    }

    #[test]
    fn rain_limits_and_determinism() {
        let img = seeded(32, 32, 4);
        assert_eq!(rain_streaks(&img, 1e-6, 10.0, 15.0, 1).unwrap(), img);
        let a = rain_streaks(&img, 0.05, 10.0, 15.0, 1).unwrap();
        let b = rain_streaks(&img, 0.05, 10.0, 15.0, 1).unwrap();
        assert_eq!(a.pixels(), b.pixels());
        assert_ne!(a, img);
        assert!(a.pixels().iter().zip(img.pixels()).all(|(y, x)| y >= x));
        assert!(rain_streaks(&img, 0.0, 10.0, 15.0, 1).is_err());
        assert!(rain_streaks(&img, 1.5, 10.0, 15.0, 1).is_err());
        assert!(rain_streaks(&img, 0.1, 10.0, 1.0, 1).is_err());
    }

    #[test]
    fn haze_examples() {
        let img = seeded(16, 16, 5);
        let zero = LumaImage::constant(8, 8, 0.0).unwrap();
        assert!(haze(&zero, 0.5, 1.0)
            .unwrap()
            .pixels()
            .iter()
            .all(|&p| p == 0.5));
        assert_eq!(haze(&img, 1.0, 0.7).unwrap(), img);
        let lifted = haze(&zero, 0.8, 0.5).unwrap();
        assert!(lifted.pixels().iter().all(|&p| (p - 0.1).abs() < 1e-15));
        assert!(haze(&img, 0.0, 0.5).is_err());
        assert!(haze(&img, 0.5, 1.5).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let spec =
            DegradationSpec::from_json(r#"{"kind":"gaussian_noise","sigma":25,"seed":7}"#).unwrap();
        assert_eq!(
            spec,
            DegradationSpec::GaussianNoise {
                sigma: 25.0,
                seed: 7
            }
        );
        assert_eq!(
            serde_json::to_string(&spec).unwrap(),
            r#"{"kind":"gaussian_noise","sigma":25.0,"seed":7}"#
        );
        let rain = DegradationSpec::from_json(r#"{"kind":"rain","density":0.05}"#).unwrap();
        assert_eq!(rain.kind(), "rain");
        assert!(DegradationSpec::from_json(r#"{"kind":"haze","transmission":1.2}"#).is_err());
        assert!(DegradationSpec::from_json(r#"{"kind":"low_light","gamma":1.0}"#).is_err());
        assert!(DegradationSpec::from_json(r#"{"kind":"sparkle"}"#).is_err());
    }

    #[test]
    fn outputs_stay_in_unit_range() {
        let img = seeded(24, 24, 6);
        let specs = [
            DegradationSpec::GaussianNoise {
                sigma: 50.0,
                seed: 1,
            },
            DegradationSpec::LowLight { gamma: 2.5 },
            DegradationSpec::Blur { radius: 1.2 },
            DegradationSpec::Rain {
                density: 0.5,
                angle: 20.0,
                length: 8.0,
                seed: 2,
            },
            DegradationSpec::Haze {
                transmission: 0.4,
                airlight: 0.9,
            },
        ];
        for spec in specs {
            let out = spec.apply(&img).unwrap();
            assert!(
                out.pixels().iter().all(|p| (0.0..=1.0).contains(p)),
                "{}",
                spec.kind()
            );
            assert_eq!(out, spec.apply(&img).unwrap());
        }
    }
}
