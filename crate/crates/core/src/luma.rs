//! Single-channel real image planes.
//!
//! A [`LumaImage`] is nominally in `[0, 1]`, but residual planes produced by
//! [`residual`] are signed; only finiteness is enforced.

use serde::{Deserialize, Serialize};

use crate::error::{DfcError, Result};

/// Smallest accepted side length.
pub const MIN_SIDE: usize = 8;

/// ITU-R BT.601 luma weights for R, G, B.
pub const LUMA_WEIGHTS: [f64; 3] = [0.299, 0.587, 0.114];

/// Row-major real-valued grayscale plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LumaImage {
    height: usize,
    width: usize,
    pixels: Vec<f64>,
}

impl LumaImage {
    pub fn new(height: usize, width: usize, pixels: Vec<f64>) -> Result<Self> {
        if height < MIN_SIDE || width < MIN_SIDE {
            return Err(DfcError::TooSmall {
                height,
                width,
                min: MIN_SIDE,
            });
        }
        if pixels.len() != height * width {
            return Err(DfcError::BufferLength {
                expected: height * width,
                actual: pixels.len(),
            });
        }
        if pixels.iter().any(|p| !p.is_finite()) {
            return Err(DfcError::NonFinite("image pixels"));
        }
        Ok(Self {
            height,
            width,
            pixels,
        })
    }

    pub fn from_fn(
        height: usize,
        width: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(height * width);
        for h in 0..height {
            for w in 0..width {
                pixels.push(f(h, w));
            }
        }
        Self::new(height, width, pixels)
    }

    pub fn constant(height: usize, width: usize, value: f64) -> Result<Self> {
        Self::new(height, width, vec![value; height * width])
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.height, self.width)
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<f64> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, h: usize, w: usize) -> f64 {
        self.pixels[h * self.width + w]
    }

    pub fn mean(&self) -> f64 {
        self.pixels.iter().sum::<f64>() / self.pixels.len() as f64
    }

    /// Applies `f` pixel-wise. Fails if `f` produces a non-finite value.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.height,
            self.width,
            self.pixels.iter().map(|&p| f(p)).collect(),
        )
    }

    pub fn clamped(&self) -> Self {
        Self {
            height: self.height,
            width: self.width,
            pixels: self.pixels.iter().map(|p| p.clamp(0.0, 1.0)).collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(height: usize, width: usize, pixels: Vec<f64>) -> Self {
        debug_assert_eq!(pixels.len(), height * width);
        Self {
            height,
            width,
            pixels,
        }
    }

    pub(crate) fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(DfcError::DimensionMismatch {
                left_height: self.height,
                left_width: self.width,
                right_height: other.height,
                right_width: other.width,
            });
        }
        Ok(())
    }
}

/// Three colour planes of equal size.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    pub red: LumaImage,
    pub green: LumaImage,
    pub blue: LumaImage,
}

impl RgbImage {
    pub fn from_planes(red: LumaImage, green: LumaImage, blue: LumaImage) -> Result<Self> {
        red.check_same_dims(&green)?;
        red.check_same_dims(&blue)?;
        Ok(Self { red, green, blue })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.red.dims()
    }

    pub fn planes(&self) -> [&LumaImage; 3] {
        [&self.red, &self.green, &self.blue]
    }
}

/// Reduces three colour planes to BT.601 luminance.
pub fn to_luma(red: &LumaImage, green: &LumaImage, blue: &LumaImage) -> Result<LumaImage> {
    red.check_same_dims(green)?;
    red.check_same_dims(blue)?;
    let [wr, wg, wb] = LUMA_WEIGHTS;
    let pixels = red
        .pixels
        .iter()
        .zip(&green.pixels)
        .zip(&blue.pixels)
        .map(|((r, g), b)| wr * r + wg * g + wb * b)
        .collect();
    Ok(LumaImage::from_parts_unchecked(
        red.height, red.width, pixels,
    ))
}

/// Signed pixel-wise difference `degraded - clean`.
pub fn residual(degraded: &LumaImage, clean: &LumaImage) -> Result<LumaImage> {
    degraded.check_same_dims(clean)?;
    let pixels = degraded
        .pixels
        .iter()
        .zip(&clean.pixels)
        .map(|(y, x)| y - x)
        .collect();
    Ok(LumaImage::from_parts_unchecked(
        degraded.height,
        degraded.width,
        pixels,
    ))
}
