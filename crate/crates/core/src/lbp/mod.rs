//! The local binary pattern operator family.
//!
//! A code is formed per pixel by thresholding a ring of neighbors against
//! the center gray level and packing the resulting bits, least significant
//! first. Two geometries exist:
//!
//! * [`basic_lbp`] — the fixed 3x3 neighborhood, enumerated clockwise from
//!   the top-left corner with weights 1, 2, 4 / 128, _, 8 / 64, 32, 16.
//! * [`generalized_lbp`] — `P` samples on a circle of radius `R`, sample 0
//!   at offset `(+R, 0)` and subsequent samples advancing counterclockwise
//!   on screen (upward in image coordinates). Non-integer positions are
//!   read with bilinear interpolation.
//!
//! Thresholding is `neighbor >= center`; the interpolated path subtracts a
//! tiny epsilon from the center first so that exact ties survive float
//! interpolation deterministically.

pub mod histogram;
pub mod mapping;

mod median;
mod top;

pub use histogram::{descriptor_csv_row, grid_descriptor, grid_histogram, lbp_histogram, Descriptor};
pub use mapping::{
    build_code_mapping, circular_transitions, min_rotation, rotate_bits, CodeMapping, MappingKind,
};
pub use median::median_robust_lbp;
pub use top::lbp_top;

use crate::error::{Error, Result};
use crate::image::GrayImage;
use serde::{Deserialize, Serialize};

/// Tie tolerance for interpolated thresholding: a sample counts as "not
/// below" the center when `sample >= center - TIE_EPSILON`.
pub const TIE_EPSILON: f64 = 1e-9;

/// Circular sampling geometry: `points` samples on a circle of radius
/// `radius` pixels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingSpec {
    points: u32,
    radius: f64,
}

impl SamplingSpec {
    /// `points` must be in `4..=24` and `radius` positive.
    pub fn new(points: u32, radius: f64) -> Result<Self> {
        if !(4..=24).contains(&points) {
            return Err(Error::UnsupportedP {
                points,
                reason: "sample count must be between 4 and 24",
            });
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "radius {radius} must be a positive finite number"
            )));
        }
        Ok(SamplingSpec { points, radius })
    }

    pub fn points(&self) -> u32 {
        self.points
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Number of border pixels the circle can reach into.
    pub fn margin(&self) -> usize {
        self.radius.ceil() as usize
    }
}

/// Per-pixel texture statistics computed next to the code.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TexturePixelStats {
    /// Mean gray level of above-threshold neighbors minus mean gray level
    /// of below-threshold neighbors; 0 when either side is empty.
    pub contrast: f64,
    /// Population variance of the neighbor-minus-center differences.
    pub variance: f64,
}

/// Codes for the interior region of a source image. Border pixels whose
/// neighborhood would leave the image carry no code; `margin` tells how
/// many rows/columns were skipped on each side.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeImage {
    width: usize,
    height: usize,
    margin: usize,
    spec: SamplingSpec,
    codes: Vec<u32>,
}

impl CodeImage {
    fn new(width: usize, height: usize, margin: usize, spec: SamplingSpec, codes: Vec<u32>) -> Self {
        debug_assert_eq!(
            codes.len(),
            (width - 2 * margin) * (height - 2 * margin)
        );
        CodeImage {
            width,
            height,
            margin,
            spec,
            codes,
        }
    }

    /// Width of the source image.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Height of the source image.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn spec(&self) -> SamplingSpec {
        self.spec
    }

    pub fn interior_width(&self) -> usize {
        self.width - 2 * self.margin
    }

    pub fn interior_height(&self) -> usize {
        self.height - 2 * self.margin
    }

    /// Row-major codes of the interior region.
    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    /// Code at interior coordinates (relative to the margin).
    pub fn code_at(&self, ix: usize, iy: usize) -> u32 {
        self.codes[iy * self.interior_width() + ix]
    }
}

// 3x3 neighbors clockwise from the top-left corner; bit p carries weight
// 2^p, reproducing the weight grid 1,2,4 / 128,_,8 / 64,32,16.
const BASIC_NEIGHBORS: [(isize, isize); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
];

/// The original 3x3 operator. Returns the code image and, aligned with
/// it, per-pixel contrast and variance statistics.
pub fn basic_lbp(image: &GrayImage) -> Result<(CodeImage, Vec<TexturePixelStats>)> {
    let (w, h) = (image.width(), image.height());
    if w < 3 || h < 3 {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            margin: 1,
        });
    }
    let px = image.pixels();
    let offsets: Vec<isize> = BASIC_NEIGHBORS
        .iter()
        .map(|&(dx, dy)| dy * w as isize + dx)
        .collect();

    let mut codes = Vec::with_capacity((w - 2) * (h - 2));
    let mut stats = Vec::with_capacity((w - 2) * (h - 2));
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let base = (y * w + x) as isize;
            let center = px[base as usize];
            let mut code = 0u32;
            let mut sum = [0.0f64; 2];
            let mut count = [0usize; 2];
            let mut diff_sum = 0.0;
            let mut diff_sq = 0.0;
            for (bit, &off) in offsets.iter().enumerate() {
                let v = px[(base + off) as usize];
                let side = usize::from(v >= center);
                code |= (side as u32) << bit;
                sum[side] += v;
                count[side] += 1;
                let d = v - center;
                diff_sum += d;
                diff_sq += d * d;
            }
            let contrast = if count[0] == 0 || count[1] == 0 {
                0.0
            } else {
                sum[1] / count[1] as f64 - sum[0] / count[0] as f64
            };
            let mean = diff_sum / 8.0;
            let variance = diff_sq / 8.0 - mean * mean;
            codes.push(code);
            stats.push(TexturePixelStats {
                contrast,
                variance: variance.max(0.0),
            });
        }
    }
    let spec = SamplingSpec {
        points: 8,
        radius: 1.0,
    };
    Ok((CodeImage::new(w, h, 1, spec, codes), stats))
}

// Offsets whose distance to an integer is below this are snapped, so that
// geometrically exact positions (multiples of 90 degrees and the like)
// skip interpolation despite trig rounding.
const SNAP_EPSILON: f64 = 1e-9;

fn snap(v: f64) -> f64 {
    let r = v.round();
    if (v - r).abs() < SNAP_EPSILON {
        r
    } else {
        v
    }
}

/// Ring offsets for a sampling spec, `(dx, dy)` in image coordinates
/// (y grows downward): sample p sits at angle `2 pi p / P` starting from
/// `(+R, 0)` and turning upward on screen.
pub(crate) fn ring_offsets(spec: SamplingSpec) -> Vec<(f64, f64)> {
    let p = spec.points as usize;
    (0..p)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / p as f64;
            (
                snap(spec.radius * angle.cos()),
                snap(-spec.radius * angle.sin()),
            )
        })
        .collect()
}

/// Intensities on the sampling ring around `(cx, cy)`, bilinearly
/// interpolated where the ring leaves the pixel grid.
pub fn ring_samples(
    image: &GrayImage,
    cx: usize,
    cy: usize,
    spec: SamplingSpec,
) -> Result<Vec<f64>> {
    let r = spec.radius;
    let fits = cx as f64 - r >= 0.0
        && cx as f64 + r <= (image.width() - 1) as f64
        && cy as f64 - r >= 0.0
        && cy as f64 + r <= (image.height() - 1) as f64;
    if !fits {
        return Err(Error::OutOfBoundsRing {
            cx,
            cy,
            radius: r,
        });
    }
    ring_offsets(spec)
        .iter()
        .map(|&(dx, dy)| image.bilinear_sample(cx as f64 + dx, cy as f64 + dy))
        .collect()
}

// Per-sample access plan, precomputed once per image: either a single
// pixel at an integer offset, or four pixels with fixed blend weights.
enum SamplePlan {
    Exact(isize),
    Blend { offsets: [isize; 4], weights: [f64; 4] },
}

impl SamplePlan {
    fn build(dx: f64, dy: f64, width: usize) -> SamplePlan {
        let (x0, fx) = (dx.floor(), dx - dx.floor());
        let (y0, fy) = (dy.floor(), dy - dy.floor());
        if fx == 0.0 && fy == 0.0 {
            return SamplePlan::Exact(y0 as isize * width as isize + x0 as isize);
        }
        // When one axis is integral, collapse the pair so no offset
        // reaches outside the guaranteed margin.
        let x1 = if fx == 0.0 { x0 } else { x0 + 1.0 };
        let y1 = if fy == 0.0 { y0 } else { y0 + 1.0 };
        let at = |x: f64, y: f64| y as isize * width as isize + x as isize;
        SamplePlan::Blend {
            offsets: [at(x0, y0), at(x1, y0), at(x0, y1), at(x1, y1)],
            weights: [
                (1.0 - fx) * (1.0 - fy),
                fx * (1.0 - fy),
                (1.0 - fx) * fy,
                fx * fy,
            ],
        }
    }

    #[inline]
    fn eval(&self, px: &[f64], base: isize) -> f64 {
        match self {
            SamplePlan::Exact(off) => px[(base + off) as usize],
            SamplePlan::Blend { offsets, weights } => {
                weights[0] * px[(base + offsets[0]) as usize]
                    + weights[1] * px[(base + offsets[1]) as usize]
                    + weights[2] * px[(base + offsets[2]) as usize]
                    + weights[3] * px[(base + offsets[3]) as usize]
            }
        }
    }
}

/// The circular `(P, R)` operator over the whole interior region.
pub fn generalized_lbp(image: &GrayImage, spec: SamplingSpec) -> Result<CodeImage> {
    let (w, h) = (image.width(), image.height());
    let margin = spec.margin();
    if w < 2 * margin + 1 || h < 2 * margin + 1 {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            margin,
        });
    }
    let plans: Vec<SamplePlan> = ring_offsets(spec)
        .iter()
        .map(|&(dx, dy)| SamplePlan::build(dx, dy, w))
        .collect();
    let px = image.pixels();
    let mut codes = Vec::with_capacity((w - 2 * margin) * (h - 2 * margin));
    for y in margin..h - margin {
        for x in margin..w - margin {
            let base = (y * w + x) as isize;
            let threshold = px[base as usize] - TIE_EPSILON;
            let mut code = 0u32;
            for (bit, plan) in plans.iter().enumerate() {
                code |= (u32::from(plan.eval(px, base) >= threshold)) << bit;
            }
            codes.push(code);
        }
    }
    Ok(CodeImage::new(w, h, margin, spec, codes))
}

/// Population variance of the sample-minus-center differences. Subtracting
/// the center is a constant shift, so this equals the population variance
/// of the samples themselves.
pub fn var_measure(samples: &[f64], center: f64) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: samples.len(),
        });
    }
    let n = samples.len() as f64;
    let mean = samples.iter().map(|s| s - center).sum::<f64>() / n;
    let var = samples
        .iter()
        .map(|s| {
            let d = (s - center) - mean;
            d * d
        })
        .sum::<f64>()
        / n;
    Ok(var)
}
