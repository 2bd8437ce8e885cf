//! Grayscale image and video containers plus the sampling primitives the
//! descriptor operators build on.
//!
//! Pixels are real-valued. Files load into `[0, 255]`, but nothing stops a
//! processing step from producing values outside that range; only
//! [`save_pgm`] insists on the displayable gamut.

mod pnm;

pub use pnm::{load_image, save_pgm};

use crate::error::{Error, Result};

/// A single-channel raster stored row-major, `(0, 0)` top-left, y growing
/// downward. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage {
                reason: format!("dimensions {width}x{height} must be positive"),
            });
        }
        if pixels.len() != width * height {
            return Err(Error::InvalidImage {
                reason: format!(
                    "pixel buffer holds {} values, expected {}x{} = {}",
                    pixels.len(),
                    width,
                    height,
                    width * height
                ),
            });
        }
        if let Some(i) = pixels.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidImage {
                reason: format!("non-finite intensity at index {i}"),
            });
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        GrayImage::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.pixels[y * self.width + x]
    }

    /// Bilinear interpolation of the four pixels surrounding `(x, y)`.
    /// Integer coordinates return the exact pixel value.
    pub fn bilinear_sample(&self, x: f64, y: f64) -> Result<f64> {
        let max_x = (self.width - 1) as f64;
        let max_y = (self.height - 1) as f64;
        if !(x >= 0.0 && x <= max_x && y >= 0.0 && y <= max_y) {
            return Err(Error::CoordinateOutOfBounds {
                x,
                y,
                width: self.width,
                height: self.height,
            });
        }
        let (x0, tx) = split_coord(x, self.width);
        let (y0, ty) = split_coord(y, self.height);
        let x1 = if self.width == 1 { x0 } else { x0 + 1 };
        let y1 = if self.height == 1 { y0 } else { y0 + 1 };
        let p00 = self.get(x0, y0);
        let p10 = self.get(x1, y0);
        let p01 = self.get(x0, y1);
        let p11 = self.get(x1, y1);
        Ok((1.0 - tx) * (1.0 - ty) * p00
            + tx * (1.0 - ty) * p10
            + (1.0 - tx) * ty * p01
            + tx * ty * p11)
    }
}

/// Splits an in-bounds coordinate into a base index whose `+1` neighbor is
/// still valid and the fractional weight toward that neighbor.
pub(crate) fn split_coord(v: f64, n: usize) -> (usize, f64) {
    if n == 1 {
        return (0, 0.0);
    }
    let mut i = v.floor() as usize;
    if i >= n - 1 {
        i = n - 2;
    }
    (i, v - i as f64)
}

/// An ordered stack of equally sized frames. The x/y axes are the image
/// axes; the frame index is the time axis.
#[derive(Debug, Clone, PartialEq)]
pub struct VideoVolume {
    width: usize,
    height: usize,
    frames: Vec<GrayImage>,
}

impl VideoVolume {
    pub fn new(frames: Vec<GrayImage>) -> Result<Self> {
        let first = frames.first().ok_or(Error::EmptyInput)?;
        let (width, height) = (first.width(), first.height());
        for (t, frame) in frames.iter().enumerate() {
            if frame.width() != width || frame.height() != height {
                return Err(Error::InvalidImage {
                    reason: format!(
                        "frame {t} is {}x{}, expected {width}x{height}",
                        frame.width(),
                        frame.height()
                    ),
                });
            }
        }
        Ok(VideoVolume {
            width,
            height,
            frames,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn frame_count(&self) -> usize {
        self.frames.len()
    }

    pub fn frames(&self) -> &[GrayImage] {
        &self.frames
    }

    pub fn frame(&self, t: usize) -> &GrayImage {
        &self.frames[t]
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, t: usize) -> f64 {
        self.frames[t].get(x, y)
    }

    /// Bilinear interpolation in the horizontal/time plane at a fixed row.
    pub fn sample_xt(&self, x: f64, t: f64, y: usize) -> Result<f64> {
        let max_x = (self.width - 1) as f64;
        let max_t = (self.frames.len() - 1) as f64;
        if !(x >= 0.0 && x <= max_x && t >= 0.0 && t <= max_t) || y >= self.height {
            return Err(Error::CoordinateOutOfBounds {
                x,
                y: t,
                width: self.width,
                height: self.frames.len(),
            });
        }
        let (x0, wx) = split_coord(x, self.width);
        let (t0, wt) = split_coord(t, self.frames.len());
        let x1 = if self.width == 1 { x0 } else { x0 + 1 };
        let t1 = if self.frames.len() == 1 { t0 } else { t0 + 1 };
        Ok((1.0 - wt) * ((1.0 - wx) * self.get(x0, y, t0) + wx * self.get(x1, y, t0))
            + wt * ((1.0 - wx) * self.get(x0, y, t1) + wx * self.get(x1, y, t1)))
    }

    /// Bilinear interpolation in the vertical/time plane at a fixed column.
    pub fn sample_yt(&self, y: f64, t: f64, x: usize) -> Result<f64> {
        let max_y = (self.height - 1) as f64;
        let max_t = (self.frames.len() - 1) as f64;
        if !(y >= 0.0 && y <= max_y && t >= 0.0 && t <= max_t) || x >= self.width {
            return Err(Error::CoordinateOutOfBounds {
                x: y,
                y: t,
                width: self.height,
                height: self.frames.len(),
            });
        }
        let (y0, wy) = split_coord(y, self.height);
        let (t0, wt) = split_coord(t, self.frames.len());
        let y1 = if self.height == 1 { y0 } else { y0 + 1 };
        let t1 = if self.frames.len() == 1 { t0 } else { t0 + 1 };
        Ok((1.0 - wt) * ((1.0 - wy) * self.get(x, y0, t0) + wy * self.get(x, y1, t0))
            + wt * ((1.0 - wy) * self.get(x, y0, t1) + wy * self.get(x, y1, t1)))
    }
}

/// Middle value of the sorted sequence; for even counts, the arithmetic
/// mean of the two middle values.
pub fn median_of(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        Ok(sorted[n / 2])
    } else {
        Ok((sorted[n / 2 - 1] + sorted[n / 2]) / 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn two_by_two() -> GrayImage {
        // rows: [0, 10], [20, 30]
        GrayImage::new(2, 2, vec![0.0, 10.0, 20.0, 30.0]).unwrap()
    }

    #[test]
    fn construction_validates_shape() {
        assert!(matches!(
            GrayImage::new(0, 3, vec![]),
            Err(Error::InvalidImage { .. })
        ));
        assert!(matches!(
            GrayImage::new(2, 2, vec![1.0; 3]),
            Err(Error::InvalidImage { .. })
        ));
        assert!(matches!(
            GrayImage::new(1, 1, vec![f64::NAN]),
            Err(Error::InvalidImage { .. })
        ));
    }

    #[test]
    fn bilinear_is_exact_at_integer_coordinates() {
        let img = two_by_two();
        assert_eq!(img.bilinear_sample(0.0, 0.0).unwrap(), 0.0);
        assert_eq!(img.bilinear_sample(1.0, 0.0).unwrap(), 10.0);
        assert_eq!(img.bilinear_sample(0.0, 1.0).unwrap(), 20.0);
        assert_eq!(img.bilinear_sample(1.0, 1.0).unwrap(), 30.0);
    }

    #[test]
    fn bilinear_center_is_mean_of_corners() {
        let img = two_by_two();
        assert_relative_eq!(img.bilinear_sample(0.5, 0.5).unwrap(), 15.0);
    }

    #[test]
    fn bilinear_hand_expanded_weights() {
        // (1-x)(1-y)*0 + x(1-y)*10 + (1-x)y*20 + xy*30 at (0.25, 0.75)
        let img = two_by_two();
        assert_relative_eq!(img.bilinear_sample(0.25, 0.75).unwrap(), 17.5);
    }

    #[test]
    fn bilinear_rejects_out_of_bounds() {
        let img = two_by_two();
        assert!(matches!(
            img.bilinear_sample(-0.1, 0.0),
            Err(Error::CoordinateOutOfBounds { .. })
        ));
        assert!(matches!(
            img.bilinear_sample(0.0, 1.1),
            Err(Error::CoordinateOutOfBounds { .. })
        ));
        assert!(img.bilinear_sample(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn bilinear_single_row_and_column() {
        let row = GrayImage::new(3, 1, vec![1.0, 2.0, 3.0]).unwrap();
        assert_relative_eq!(row.bilinear_sample(1.5, 0.0).unwrap(), 2.5);
        let col = GrayImage::new(1, 3, vec![1.0, 2.0, 3.0]).unwrap();
        assert_relative_eq!(col.bilinear_sample(0.0, 0.5).unwrap(), 1.5);
    }

    #[test]
    fn median_matches_worked_neighborhood() {
        let values = [9.0, 8.0, 7.0, 7.0, 6.0, 6.0, 5.0, 2.0, 1.0];
        assert_eq!(median_of(&values).unwrap(), 6.0);
    }

    #[test]
    fn median_single_and_even() {
        assert_eq!(median_of(&[42.5]).unwrap(), 42.5);
        assert_eq!(median_of(&[1.0, 2.0, 3.0, 4.0]).unwrap(), 2.5);
        assert!(matches!(median_of(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn volume_requires_uniform_frames() {
        let a = GrayImage::new(2, 2, vec![0.0; 4]).unwrap();
        let b = GrayImage::new(3, 2, vec![0.0; 6]).unwrap();
        assert!(VideoVolume::new(vec![]).is_err());
        assert!(VideoVolume::new(vec![a.clone(), b]).is_err());
        let vol = VideoVolume::new(vec![a.clone(), a]).unwrap();
        assert_eq!(vol.frame_count(), 2);
    }

    #[test]
    fn plane_samplers_interpolate_across_time() {
        let f0 = GrayImage::new(2, 2, vec![0.0, 0.0, 0.0, 0.0]).unwrap();
        let f1 = GrayImage::new(2, 2, vec![10.0, 10.0, 10.0, 10.0]).unwrap();
        let vol = VideoVolume::new(vec![f0, f1]).unwrap();
        assert_relative_eq!(vol.sample_xt(0.0, 0.5, 0).unwrap(), 5.0);
        assert_relative_eq!(vol.sample_yt(1.0, 0.25, 1).unwrap(), 2.5);
    }
}
