//! Full-reference quality metrics on `[0, 1]` images.

use crate::error::Result;
use crate::luma::LumaImage;

const SSIM_RADIUS: usize = 5;
const SSIM_SIGMA: f64 = 1.5;
const SSIM_C1: f64 = 0.01 * 0.01;
const SSIM_C2: f64 = 0.03 * 0.03;

pub fn mse(a: &LumaImage, b: &LumaImage) -> Result<f64> {
    a.check_same_dims(b)?;
    let sum: f64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(x, y)| (x - y).powi(2))
        .sum();
    Ok(sum / a.len() as f64)
}

/// Peak signal-to-noise ratio in dB for peak value 1; infinite for equal images.
pub fn psnr(a: &LumaImage, b: &LumaImage) -> Result<f64> {
    let m = mse(a, b)?;
    Ok(if m == 0.0 {
        f64::INFINITY
    } else {
        -10.0 * m.log10()
    })
}

fn window(radius: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..=2 * radius)
        .map(|i| {
            let d = i as f64 - radius as f64;
            (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp()
        })
        .collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|v| v / total).collect()
}

/// Separable weighted mean over every fully contained window.
fn filter_valid(values: &[f64], h: usize, w: usize, kernel: &[f64]) -> (Vec<f64>, usize, usize) {
    let k = kernel.len();
    let (oh, ow) = (h - k + 1, w - k + 1);
    let mut rows = vec![0.0; h * ow];
    for r in 0..h {
        for c in 0..ow {
            rows[r * ow + c] = (0..k).map(|j| kernel[j] * values[r * w + c + j]).sum();
        }
    }
    let mut out = vec![0.0; oh * ow];
    for r in 0..oh {
        for c in 0..ow {
            out[r * ow + c] = (0..k).map(|i| kernel[i] * rows[(r + i) * ow + c]).sum();
        }
    }
    (out, oh, ow)
}

/// Mean structural similarity with an 11x11 Gaussian window (sigma 1.5) over
/// fully contained windows; the window shrinks for images smaller than 11.
pub fn ssim(a: &LumaImage, b: &LumaImage) -> Result<f64> {
    a.check_same_dims(b)?;
    let (h, w) = a.dims();
    let radius = SSIM_RADIUS.min((h.min(w) - 1) / 2);
    let kernel = window(radius);
    let (x, y) = (a.pixels(), b.pixels());
    let products = |f: &dyn Fn(f64, f64) -> f64| -> Vec<f64> {
        x.iter().zip(y).map(|(&p, &q)| f(p, q)).collect()
    };
    let (mx, oh, ow) = filter_valid(x, h, w, &kernel);
    let (my, _, _) = filter_valid(y, h, w, &kernel);
    let (mxx, _, _) = filter_valid(&products(&|p, _| p * p), h, w, &kernel);
    let (myy, _, _) = filter_valid(&products(&|_, q| q * q), h, w, &kernel);
    let (mxy, _, _) = filter_valid(&products(&|p, q| p * q), h, w, &kernel);
    let total: f64 = (0..oh * ow)
        .map(|i| {
            let (ux, uy) = (mx[i], my[i]);
            let vx = mxx[i] - ux * ux;
            let vy = myy[i] - uy * uy;
            let cxy = mxy[i] - ux * uy;
            ((2.0 * ux * uy + SSIM_C1) * (2.0 * cxy + SSIM_C2))
                / ((ux * ux + uy * uy + SSIM_C1) * (vx + vy + SSIM_C2))
        })
        .sum();
    Ok(total / (oh * ow) as f64)
}
