//! Image file I/O: 8/16-bit PNG and binary PPM/PGM in, 8-bit PNG out.

use std::path::Path;

use image::{DynamicImage, ImageBuffer, Luma};

use crate::error::{DfcError, Result};
use crate::luma::{to_luma, LumaImage, RgbImage};

/// A decoded image: grayscale inputs stay single-plane.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedImage {
    Gray(LumaImage),
    Rgb(RgbImage),
}

impl LoadedImage {
    pub fn dims(&self) -> (usize, usize) {
        match self {
            Self::Gray(g) => g.dims(),
            Self::Rgb(c) => c.dims(),
        }
    }

    /// Luminance plane (BT.601 for colour inputs).
    pub fn luma(&self) -> Result<LumaImage> {
        match self {
            Self::Gray(g) => Ok(g.clone()),
            Self::Rgb(c) => to_luma(&c.red, &c.green, &c.blue),
        }
    }

    /// Colour planes; grayscale inputs are replicated.
    pub fn rgb(&self) -> Result<RgbImage> {
        match self {
            Self::Gray(g) => RgbImage::from_planes(g.clone(), g.clone(), g.clone()),
            Self::Rgb(c) => Ok(c.clone()),
        }
    }
}

fn planes_from_samples(
    height: usize,
    width: usize,
    samples: &[f64],
    channels: usize,
) -> Result<Vec<LumaImage>> {
    (0..channels)
        .map(|c| {
            LumaImage::new(
                height,
                width,
                samples.iter().skip(c).step_by(channels).copied().collect(),
            )
        })
        .collect()
}

/// Converts a decoded image, scaling samples by their bit depth into `[0, 1]`.
pub fn from_dynamic(img: DynamicImage) -> Result<LoadedImage> {
    let (width, height) = (img.width() as usize, img.height() as usize);
    let gray_like = matches!(
        img,
        DynamicImage::ImageLuma8(_)
            | DynamicImage::ImageLumaA8(_)
            | DynamicImage::ImageLuma16(_)
            | DynamicImage::ImageLumaA16(_)
    );
    let sixteen = matches!(
        img,
        DynamicImage::ImageLuma16(_)
            | DynamicImage::ImageLumaA16(_)
            | DynamicImage::ImageRgb16(_)
            | DynamicImage::ImageRgba16(_)
    );
    let (samples, channels): (Vec<f64>, usize) = match (gray_like, sixteen) {
        (true, false) => (
            img.to_luma8().iter().map(|&v| v as f64 / 255.0).collect(),
            1,
        ),
        (true, true) => (
            img.to_luma16()
                .iter()
                .map(|&v| v as f64 / 65535.0)
                .collect(),
            1,
        ),
        (false, false) => (img.to_rgb8().iter().map(|&v| v as f64 / 255.0).collect(), 3),
        (false, true) => (
            img.to_rgb16().iter().map(|&v| v as f64 / 65535.0).collect(),
            3,
        ),
    };
    let mut planes = planes_from_samples(height, width, &samples, channels)?;
    if channels == 1 {
        Ok(LoadedImage::Gray(planes.remove(0)))
    } else {
        let blue = planes.pop().expect("3 planes");
        let green = planes.pop().expect("3 planes");
        let red = planes.pop().expect("3 planes");
        Ok(LoadedImage::Rgb(RgbImage::from_planes(red, green, blue)?))
    }
}

pub fn read_image(path: impl AsRef<Path>) -> Result<LoadedImage> {
    let img = image::ImageReader::open(path.as_ref())?
        .with_guessed_format()?
        .decode()?;
    from_dynamic(img)
}

pub fn decode_image(bytes: &[u8]) -> Result<LoadedImage> {
    from_dynamic(image::load_from_memory(bytes)?)
}

fn to_gray8(img: &LumaImage) -> Result<ImageBuffer<Luma<u8>, Vec<u8>>> {
    let data = img
        .pixels()
        .iter()
        .map(|p| (p.clamp(0.0, 1.0) * 255.0).round() as u8)
        .collect();
    ImageBuffer::from_raw(img.width() as u32, img.height() as u32, data)
        .ok_or_else(|| DfcError::UnsupportedImage("buffer size mismatch".into()))
}

/// Writes an 8-bit grayscale PNG, clamping to `[0, 1]`.
pub fn write_png(path: impl AsRef<Path>, img: &LumaImage) -> Result<()> {
    to_gray8(img)?.save_with_format(path, image::ImageFormat::Png)?;
    Ok(())
}

/// Rounds to the 8-bit grid, as a PNG round trip would.
pub fn quantize8(img: &LumaImage) -> LumaImage {
    LumaImage::from_parts_unchecked(
        img.height(),
        img.width(),
        img.pixels()
            .iter()
            .map(|p| (p.clamp(0.0, 1.0) * 255.0).round() / 255.0)
            .collect(),
    )
}
