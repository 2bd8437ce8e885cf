//! Code histograms and grid descriptors.
//!
//! A histogram counts how many times each mapped code occurs over the
//! interior region — a tiny bag-of-words over texture micro-patterns. For
//! spatial layout, the interior can be partitioned into a grid of windows
//! whose per-window histograms are concatenated window-row-major.

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::lbp::mapping::{CodeMapping, MappingKind};
use crate::lbp::{generalized_lbp, CodeImage, SamplingSpec};
use serde::{Deserialize, Serialize};

/// A histogram feature vector with its provenance.
///
/// `values` holds `grid.0 * grid.1 * bins_per_window` numbers (times
/// `planes` for spatiotemporal descriptors): unnormalized they are exact
/// occurrence counts, normalized each window sums to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Descriptor {
    pub values: Vec<f64>,
    pub bins_per_window: usize,
    /// Window counts along x and y.
    pub grid: (usize, usize),
    pub normalized: bool,
    /// 1 for spatial descriptors, 3 for the XY/XT/YT stack.
    pub planes: usize,
    pub spec: SamplingSpec,
    pub mapping_kind: MappingKind,
}

impl Descriptor {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The sub-vector of one window (or plane, for spatiotemporal
    /// descriptors), indexed row-major.
    pub fn window(&self, index: usize) -> &[f64] {
        let start = index * self.bins_per_window;
        &self.values[start..start + self.bins_per_window]
    }

    pub fn window_count(&self) -> usize {
        self.grid.0 * self.grid.1 * self.planes
    }
}

/// Histogram of a whole code image (a 1x1 grid).
pub fn lbp_histogram(codes: &CodeImage, mapping: &CodeMapping, normalize: bool) -> Result<Descriptor> {
    grid_histogram(codes, mapping, (1, 1), normalize)
}

/// Per-window histograms over a `gx` x `gy` partition of the code
/// interior, concatenated window-row-major.
///
/// Windows are cut by floor division; remainder columns and rows join the
/// last window along each axis, so every interior code lands in exactly
/// one window and counts are conserved.
pub fn grid_histogram(
    codes: &CodeImage,
    mapping: &CodeMapping,
    grid: (usize, usize),
    normalize: bool,
) -> Result<Descriptor> {
    let (gx, gy) = grid;
    if mapping.points() != codes.spec().points() {
        return Err(Error::MappingMismatch {
            expected: mapping.points(),
            got: codes.spec().points(),
        });
    }
    if gx == 0 || gy == 0 {
        return Err(Error::InvalidParameter(format!(
            "grid {gx}x{gy} must have positive window counts"
        )));
    }
    let (iw, ih) = (codes.interior_width(), codes.interior_height());
    if iw < gx || ih < gy {
        return Err(Error::EmptyWindow {
            gx,
            gy,
            interior_width: iw,
            interior_height: ih,
        });
    }

    let bins = mapping.bin_count();
    let (base_w, base_h) = (iw / gx, ih / gy);
    let mut values = vec![0.0f64; gx * gy * bins];
    for iy in 0..ih {
        let wy = (iy / base_h).min(gy - 1);
        for ix in 0..iw {
            let wx = (ix / base_w).min(gx - 1);
            let bin = mapping.bin_of(codes.code_at(ix, iy));
            values[(wy * gx + wx) * bins + bin] += 1.0;
        }
    }

    if normalize {
        for wy in 0..gy {
            let rows = if wy == gy - 1 { ih - base_h * (gy - 1) } else { base_h };
            for wx in 0..gx {
                let cols = if wx == gx - 1 { iw - base_w * (gx - 1) } else { base_w };
                let count = (rows * cols) as f64;
                let start = (wy * gx + wx) * bins;
                for v in &mut values[start..start + bins] {
                    *v /= count;
                }
            }
        }
    }

    Ok(Descriptor {
        values,
        bins_per_window: bins,
        grid,
        normalized: normalize,
        planes: 1,
        spec: codes.spec(),
        mapping_kind: mapping.kind(),
    })
}

/// Runs the circular operator and histograms the result in one step.
pub fn grid_descriptor(
    image: &GrayImage,
    spec: SamplingSpec,
    mapping: &CodeMapping,
    grid: (usize, usize),
    normalize: bool,
) -> Result<Descriptor> {
    let codes = generalized_lbp(image, spec)?;
    grid_histogram(&codes, mapping, grid, normalize)
}

/// One CSV row: `id, gx, gy, P, R, mapping, values...`. Counts print as
/// integers; normalized values with 17 significant digits.
pub fn descriptor_csv_row(id: &str, descriptor: &Descriptor) -> String {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    let mut record = vec![
        id.to_string(),
        descriptor.grid.0.to_string(),
        descriptor.grid.1.to_string(),
        descriptor.spec.points().to_string(),
        crate::fmt_sig17(descriptor.spec.radius()),
        descriptor.mapping_kind.to_string(),
    ];
    for &v in &descriptor.values {
        if descriptor.normalized {
            record.push(crate::fmt_sig17(v));
        } else {
            record.push(format!("{}", v as u64));
        }
    }
    writer.write_record(&record).expect("in-memory write");
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf8 csv")
}
