//! Spectral energy maps.
//!
//! Forward transforms are unnormalized, so Parseval reads
//! `sum(|F|^2) = H * W * sum(|x|^2)`. Energy maps are stored centered: the
//! DC bin sits at `(H / 2, W / 2)` (integer division), as after `fftshift`.

use rustfft::num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{DfcError, Result};
use crate::luma::LumaImage;

/// Largest side accepted by [`naive_dft_energy`].
pub const ORACLE_MAX_SIDE: usize = 64;

/// Squared DFT magnitudes on a centered grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyMap {
    height: usize,
    width: usize,
    values: Vec<f64>,
}

impl EnergyMap {
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, h: usize, w: usize) -> f64 {
        self.values[h * self.width + w]
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn center(&self) -> (usize, usize) {
        (self.height / 2, self.width / 2)
    }

    /// Largest relative deviation from 180-degree rotational symmetry about the center.
    pub fn symmetry_error(&self) -> f64 {
        let (ch, cw) = self.center();
        let scale = self
            .values
            .iter()
            .cloned()
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for h in 0..self.height {
            let mh = (2 * ch + self.height - h) % self.height;
            for w in 0..self.width {
                let mw = (2 * cw + self.width - w) % self.width;
                worst = worst.max((self.get(h, w) - self.get(mh, mw)).abs() / scale);
            }
        }
        worst
    }
}

/// Unnormalized 2D DFT of a real plane, row-major, DC at index 0.
pub fn fft2(img: &LumaImage) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = img
        .pixels()
        .iter()
        .map(|&p| Complex64::new(p, 0.0))
        .collect();
    transform_2d(img.height(), img.width(), &mut buf, FftDirection::Forward);
    buf
}

/// Unnormalized inverse 2D DFT; callers divide by `H * W`.
pub fn ifft2(height: usize, width: usize, spectrum: &mut [Complex64]) {
    transform_2d(height, width, spectrum, FftDirection::Inverse);
}

fn transform_2d(height: usize, width: usize, buf: &mut [Complex64], direction: FftDirection) {
    let mut planner = FftPlanner::new();
    let row_fft = planner.plan_fft(width, direction);
    let col_fft = planner.plan_fft(height, direction);
    let scratch_len = row_fft
        .get_inplace_scratch_len()
        .max(col_fft.get_inplace_scratch_len());
    let mut scratch = vec![Complex64::default(); scratch_len];

    for row in buf.chunks_exact_mut(width) {
        row_fft.process_with_scratch(row, &mut scratch);
    }

    let mut column = vec![Complex64::default(); height];
    for w in 0..width {
        for h in 0..height {
            column[h] = buf[h * width + w];
        }
        col_fft.process_with_scratch(&mut column, &mut scratch);
        for h in 0..height {
            buf[h * width + w] = column[h];
        }
    }
}

/// Moves the DC bin from index 0 to `(H / 2, W / 2)`.
pub fn fftshift<T: Copy>(height: usize, width: usize, values: &[T]) -> Vec<T> {
    let (ch, cw) = (height / 2, width / 2);
    let mut out = values.to_vec();
    for h in 0..height {
        let sh = (h + ch) % height;
        for w in 0..width {
            let sw = (w + cw) % width;
            out[sh * width + sw] = values[h * width + w];
        }
    }
    out
}

fn check_finite(img: &LumaImage) -> Result<()> {
    if img.pixels().iter().all(|p| p.is_finite()) {
        Ok(())
    } else {
        Err(DfcError::NonFinite("energy map input"))
    }
}

/// Centered `|F(img)|^2` via FFT.
pub fn energy_map(img: &LumaImage) -> Result<EnergyMap> {
    check_finite(img)?;
    let spectrum = fft2(img);
    let power: Vec<f64> = spectrum.iter().map(|c| c.norm_sqr()).collect();
    Ok(EnergyMap {
        height: img.height(),
        width: img.width(),
        values: fftshift(img.height(), img.width(), &power),
    })
}

/// Centered `|F(img)|^2` by the direct double sum. Verification oracle;
/// quartic in the side length, so limited to 64x64.
pub fn naive_dft_energy(img: &LumaImage) -> Result<EnergyMap> {
    let (height, width) = img.dims();
    if height > ORACLE_MAX_SIDE || width > ORACLE_MAX_SIDE {
        return Err(DfcError::OracleSizeExceeded {
            height,
            width,
            max: ORACLE_MAX_SIDE,
        });
    }
    check_finite(img)?;
    let (ch, cw) = (height / 2, width / 2);
    let mut values = vec![0.0; height * width];
    for (idx, value) in values.iter_mut().enumerate() {
        // Centered index -> signed frequency pair.
        let u = (idx / width) as f64 - ch as f64;
        let v = (idx % width) as f64 - cw as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for h in 0..height {
            for w in 0..width {
                let phase = -std::f64::consts::TAU
                    * (u * h as f64 / height as f64 + v * w as f64 / width as f64);
                let p = img.get(h, w);
                re += p * phase.cos();
                im += p * phase.sin();
            }
        }
        *value = re * re + im * im;
    }
    Ok(EnergyMap {
        height,
        width,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;

    fn seeded(h: usize, w: usize, seed: u64) -> LumaImage {
        let mut rng = CounterRng::new(seed);
        LumaImage::from_fn(h, w, |_, _| rng.next_f64()).unwrap()
    }

    fn max_rel_err(a: &EnergyMap, b: &EnergyMap) -> f64 {
        let scale = b.values().iter().cloned().fold(0.0, f64::max);
        a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| (x - y).abs() / scale)
            .fold(0.0, f64::max)
    }

    #[test]
    fn constant_image_is_dc_only() {
        let c = 0.4;
        let img = LumaImage::constant(12, 16, c).unwrap();
        for map in [energy_map(&img).unwrap(), naive_dft_energy(&img).unwrap()] {
            let (ch, cw) = map.center();
            let dc = (c * 12.0 * 16.0f64).powi(2);
            for h in 0..12 {
                for w in 0..16 {
                    let v = map.get(h, w);
                    if (h, w) == (ch, cw) {
                        assert!((v - dc).abs() / dc < 1e-12);
                    } else {
                        assert!(v < 1e-18 * dc, "leak {v} at {h},{w}");
                    }
                }
            }
        }
    }

    #[test]
    fn cosine_gives_two_vertical_bins() {
        let (hh, ww, u) = (16usize, 16usize, 3usize);
        let img = LumaImage::from_fn(hh, ww, |h, _| {
            (std::f64::consts::TAU * u as f64 * h as f64 / hh as f64).cos()
        })
        .unwrap();
        let map = energy_map(&img).unwrap();
        let (ch, cw) = map.center();
        let peak = map.values().iter().cloned().fold(0.0, f64::max);
        let bins: Vec<(usize, usize)> = (0..hh)
            .flat_map(|h| (0..ww).map(move |w| (h, w)))
            .filter(|&(h, w)| map.get(h, w) > 1e-9 * peak)
            .collect();
        assert_eq!(bins, vec![(ch - u, cw), (ch + u, cw)]);
        // each bin holds (H*W/2)^2
        let expected = (hh as f64 * ww as f64 / 2.0).powi(2);
        assert!((peak - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn impulse_has_flat_spectrum() {
        let img =
            LumaImage::from_fn(8, 8, |h, w| if (h, w) == (3, 5) { 1.0 } else { 0.0 }).unwrap();
        let map = naive_dft_energy(&img).unwrap();
        assert!(map.values().iter().all(|&v| (v - 1.0).abs() < 1e-12));
        let fast = energy_map(&img).unwrap();
        assert!(fast.values().iter().all(|&v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn fft_matches_oracle_on_seeded_images() {
        for (seed, (h, w)) in [(8, 8), (16, 16), (9, 13), (32, 24), (15, 8)]
            .into_iter()
            .enumerate()
        {
            let img = seeded(h, w, seed as u64);
            let err = max_rel_err(&energy_map(&img).unwrap(), &naive_dft_energy(&img).unwrap());
            assert!(err < 1e-6, "{h}x{w}: {err}");
        }
    }

    #[test]
    fn parseval_and_symmetry() {
        let img = seeded(20, 14, 11).map(|p| p - 0.5).unwrap();
        let map = energy_map(&img).unwrap();
        let spatial: f64 = img.pixels().iter().map(|p| p * p).sum();
        let expected = 20.0 * 14.0 * spatial;
        assert!((map.total() - expected).abs() / expected < 1e-12);
        assert!(map.symmetry_error() < 1e-9);

        let odd = seeded(9, 11, 12);
        assert!(energy_map(&odd).unwrap().symmetry_error() < 1e-9);
    }

    #[test]
    fn oracle_size_guard() {
        let img = LumaImage::constant(65, 8, 0.0).unwrap();
        assert!(matches!(
            naive_dft_energy(&img),
            Err(DfcError::OracleSizeExceeded { .. })
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let img = seeded(12, 20, 4);
        let mut spec = fft2(&img);
        ifft2(12, 20, &mut spec);
        let n = (12 * 20) as f64;
        for (c, p) in spec.iter().zip(img.pixels()) {
            assert!((c.re / n - p).abs() < 1e-12);
            assert!((c.im / n).abs() < 1e-12);
        }
    }
}
