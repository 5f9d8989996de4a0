//! Procedural test imagery.
//!
//! Natural photographs have roughly `1/f^2` power spectra; the generators
//! here reproduce that statistic so that degradation signatures can be
//! measured without external datasets. The four bundled textures in
//! `assets/` were produced by [`bundled_texture`] and quantized to 8 bits.

use rustfft::num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::io::decode_image;
use crate::luma::LumaImage;
use crate::rng::CounterRng;
use crate::spectral::ifft2;

/// Side length of the bundled textures.
pub const BUNDLED_SIDE: usize = 128;

pub const BUNDLED_NAMES: [&str; 4] = ["clouds", "leaves", "bricks", "rings"];

const BUNDLED_PNGS: [&[u8]; 4] = [
    include_bytes!("../assets/clouds.png"),
    include_bytes!("../assets/leaves.png"),
    include_bytes!("../assets/bricks.png"),
    include_bytes!("../assets/rings.png"),
];

/// The four bundled 128x128 textures, decoded from the embedded PNGs.
pub fn bundled_images() -> Result<Vec<LumaImage>> {
    BUNDLED_PNGS
        .iter()
        .map(|b| decode_image(b)?.luma())
        .collect()
}

fn rescale(values: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = (max - min).max(1e-12);
    values
        .iter()
        .map(|v| lo + (hi - lo) * (v - min) / span)
        .collect()
}

/// Gaussian random field with power spectrum `~ 1/f^(2*beta)`, scaled to `[0, 1]`.
pub fn fractal_noise(size: usize, beta: f64, seed: u64) -> Result<LumaImage> {
    let mut rng = CounterRng::new(seed);
    let mut spectrum = vec![Complex64::default(); size * size];
    for h in 0..size {
        let fh = if h <= size / 2 {
            h as f64
        } else {
            h as f64 - size as f64
        };
        for w in 0..size {
            let fw = if w <= size / 2 {
                w as f64
            } else {
                w as f64 - size as f64
            };
            let f = (fh * fh + fw * fw).sqrt();
            if f == 0.0 {
                continue;
            }
            let amp = f.powf(-beta);
            spectrum[h * size + w] =
                Complex64::new(amp * rng.next_gaussian(), amp * rng.next_gaussian());
        }
    }
    ifft2(size, size, &mut spectrum);
    let re: Vec<f64> = spectrum.iter().map(|c| c.re).collect();
    LumaImage::new(size, size, rescale(&re, 0.0, 1.0))
}

/// Occluding discs with power-law radii ("dead leaves"), values in `[0, 1]`.
pub fn dead_leaves(size: usize, seed: u64) -> Result<LumaImage> {
    let mut rng = CounterRng::new(seed);
    let mut canvas = vec![f64::NAN; size * size];
    let mut uncovered = size * size;
    let (r_min, r_max) = (1.5f64, size as f64 / 4.0);
    let mut guard = 0;
    while uncovered > 0 && guard < 20_000 {
        guard += 1;
        // inverse-CDF sample of p(r) ~ r^-3 on [r_min, r_max]
        let u = rng.next_f64();
        let inv = r_min.powi(-2) - u * (r_min.powi(-2) - r_max.powi(-2));
        let r = inv.powf(-0.5);
        let cy = rng.uniform(-r, size as f64 + r);
        let cx = rng.uniform(-r, size as f64 + r);
        let value = rng.next_f64();
        let h0 = (cy - r).floor().max(0.0) as usize;
        let h1 = ((cy + r).ceil().max(0.0) as usize).min(size - 1);
        let w0 = (cx - r).floor().max(0.0) as usize;
        let w1 = ((cx + r).ceil().max(0.0) as usize).min(size - 1);
        for h in h0..=h1 {
            for w in w0..=w1 {
                let idx = h * size + w;
                if canvas[idx].is_nan()
                    && (h as f64 - cy).powi(2) + (w as f64 - cx).powi(2) <= r * r
                {
                    canvas[idx] = value;
                    uncovered -= 1;
                }
            }
        }
    }
    let fill = rng.next_f64();
    let pixels = canvas
        .into_iter()
        .map(|v| if v.is_nan() { fill } else { v })
        .collect();
    LumaImage::new(size, size, pixels)
}

/// A random natural-statistics scene: dead leaves blended with fractal
/// texture, with seeded contrast and mean brightness.
pub fn natural_scene(size: usize, seed: u64) -> Result<LumaImage> {
    if size < crate::luma::MIN_SIDE {
        return Err(invalid(format!("scene size {size} too small")));
    }
    let mut rng = CounterRng::stream(seed, 0x5CE7E);
    let leaves = dead_leaves(size, rng.next_u64())?;
    let texture = fractal_noise(size, rng.uniform(0.9, 1.4), rng.next_u64())?;
    let mix = rng.uniform(0.3, 0.8);
    let blended: Vec<f64> = leaves
        .pixels()
        .iter()
        .zip(texture.pixels())
        .map(|(a, b)| mix * a + (1.0 - mix) * b)
        .collect();
    let center = rng.uniform(0.35, 0.65);
    let half_span = rng.uniform(0.25, 0.35);
    let lo = (center - half_span).max(0.02);
    let hi = (center + half_span).min(0.98);
    LumaImage::new(size, size, rescale(&blended, lo, hi))
}

/// Regenerates bundled texture `index` (0..4) before quantization.
pub fn bundled_texture(index: usize) -> Result<LumaImage> {
    let n = BUNDLED_SIDE;
    match index {
        // clouds: smooth fractal field
        0 => {
            let f = fractal_noise(n, 1.3, 101)?;
            LumaImage::new(n, n, rescale(f.pixels(), 0.1, 0.9))
        }
        // leaves: occluding discs with a fine grain
        1 => {
            let leaves = dead_leaves(n, 202)?;
            let grain = fractal_noise(n, 0.8, 203)?;
            let mixed: Vec<f64> = leaves
                .pixels()
                .iter()
                .zip(grain.pixels())
                .map(|(a, b)| 0.85 * a + 0.15 * b)
                .collect();
            LumaImage::new(n, n, rescale(&mixed, 0.05, 0.95))
        }
        // bricks: running-bond courses with mortar and per-brick tone
        2 => {
            let grain = fractal_noise(n, 1.0, 303)?;
            let mut rng = CounterRng::new(304);
            let tones: Vec<f64> = (0..64).map(|_| rng.uniform(0.45, 0.75)).collect();
            let (course, brick) = (12usize, 24usize);
            LumaImage::from_fn(n, n, |h, w| {
                let row = h / course;
                let shifted = w + (row % 2) * brick / 2;
                let col = shifted / brick;
                let mortar = h % course == 0 || shifted % brick == 0;
                let base = if mortar {
                    0.2
                } else {
                    tones[(row * 7 + col) % 64]
                };
                (base + 0.25 * (grain.get(h, w) - 0.5)).clamp(0.0, 1.0)
            })
        }
        // rings: wood grain, distorted concentric rings
        3 => {
            let warp = fractal_noise(n, 1.5, 404)?;
            let c = n as f64 * 0.3;
            let pixels: Vec<f64> = (0..n * n)
                .map(|i| {
                    let (h, w) = ((i / n) as f64, (i % n) as f64);
                    let d = ((h - c).powi(2) + (w + 10.0 - c).powi(2)).sqrt();
                    (0.5 + 0.5 * (d / 3.5 + 6.0 * warp.pixels()[i]).sin()).powf(1.5)
                })
                .collect();
            LumaImage::new(n, n, rescale(&pixels, 0.15, 0.85))
        }
        _ => Err(invalid(format!("no bundled texture {index}"))),
    }
}
