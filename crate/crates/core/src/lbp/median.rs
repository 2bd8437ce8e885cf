//! Median-filtered sampling: a noise-robust twist on the circular
//! operator where the center and every ring sample are replaced by the
//! median of a small integer-pixel window before thresholding. A single
//! corrupted pixel then no longer flips bits.

use crate::error::{Error, Result};
use crate::image::{median_of, GrayImage};
use crate::lbp::{generalized_lbp, ring_offsets, CodeImage, SamplingSpec, TIE_EPSILON};

/// Like [`generalized_lbp`], but thresholds medians of `window x window`
/// neighborhoods taken at the rounded sample positions instead of
/// interpolated point samples. `window` must be odd; `window == 1` keeps
/// the interpolated path unchanged.
pub fn median_robust_lbp(
    image: &GrayImage,
    spec: SamplingSpec,
    window: usize,
) -> Result<CodeImage> {
    if window == 0 || window % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "median window {window} must be odd and positive"
        )));
    }
    if window == 1 {
        return generalized_lbp(image, spec);
    }

    let (w, h) = (image.width(), image.height());
    let half = window / 2;
    let margin = spec.margin() + half;
    if w < 2 * margin + 1 || h < 2 * margin + 1 {
        return Err(Error::ImageTooSmall {
            width: w,
            height: h,
            margin,
        });
    }

    // Rounded integer sample offsets; |offset| <= ceil(R), so every
    // median window stays inside the image for interior centers.
    let offsets: Vec<(isize, isize)> = ring_offsets(spec)
        .iter()
        .map(|&(dx, dy)| (dx.round() as isize, dy.round() as isize))
        .collect();

    let mut patch = Vec::with_capacity(window * window);
    let mut window_median = |cx: isize, cy: isize| -> f64 {
        patch.clear();
        for wy in -(half as isize)..=half as isize {
            for wx in -(half as isize)..=half as isize {
                patch.push(image.get((cx + wx) as usize, (cy + wy) as usize));
            }
        }
        median_of(&patch).expect("window is nonempty")
    };

    let mut codes = Vec::with_capacity((w - 2 * margin) * (h - 2 * margin));
    for y in margin..h - margin {
        for x in margin..w - margin {
            let threshold = window_median(x as isize, y as isize) - TIE_EPSILON;
            let mut code = 0u32;
            for (bit, &(dx, dy)) in offsets.iter().enumerate() {
                let sample = window_median(x as isize + dx, y as isize + dy);
                code |= u32::from(sample >= threshold) << bit;
            }
            codes.push(code);
        }
    }
    Ok(CodeImage::new(w, h, margin, spec, codes))
}
