//! Spatiotemporal codes on three orthogonal planes of a video volume.
//!
//! For every interior voxel the 2-D circular operator runs in the XY
//! plane (the ordinary image plane), the XT plane (a row over time) and
//! the YT plane (a column over time). The three histograms are
//! concatenated XY, XT, YT.
//!
//! Each plane gets its own sampling geometry. In the time planes, sample
//! 0 points along the spatial axis and the angle advances toward earlier
//! frames, mirroring the y-up convention of the image plane.

use crate::error::{Error, Result};
use crate::image::VideoVolume;
use crate::lbp::mapping::CodeMapping;
use crate::lbp::{ring_offsets, Descriptor, SamplingSpec, TIE_EPSILON};

/// LBP histograms over the XY, XT, and YT planes of a volume,
/// concatenated into one `3 * bin_count` descriptor.
pub fn lbp_top(
    volume: &VideoVolume,
    spec_xy: SamplingSpec,
    spec_xt: SamplingSpec,
    spec_yt: SamplingSpec,
    mapping: &CodeMapping,
    normalize: bool,
) -> Result<Descriptor> {
    for spec in [spec_xy, spec_xt, spec_yt] {
        if mapping.points() != spec.points() {
            return Err(Error::MappingMismatch {
                expected: mapping.points(),
                got: spec.points(),
            });
        }
    }
    let (w, h, frames) = (volume.width(), volume.height(), volume.frame_count());
    let mx = spec_xy.margin().max(spec_xt.margin());
    let my = spec_xy.margin().max(spec_yt.margin());
    let mt = spec_xt.margin().max(spec_yt.margin());
    if w < 2 * mx + 1 || h < 2 * my + 1 || frames < 2 * mt + 1 {
        return Err(Error::VolumeTooSmall {
            width: w,
            height: h,
            frames,
            mx,
            my,
            mt,
        });
    }

    let xy_offsets = ring_offsets(spec_xy);
    let xt_offsets = ring_offsets(spec_xt);
    let yt_offsets = ring_offsets(spec_yt);

    let bins = mapping.bin_count();
    let mut hists = [vec![0.0f64; bins], vec![0.0f64; bins], vec![0.0f64; bins]];

    for t in mt..frames - mt {
        let frame = volume.frame(t);
        for y in my..h - my {
            for x in mx..w - mx {
                let center = frame.get(x, y);
                let threshold = center - TIE_EPSILON;

                let mut code_xy = 0u32;
                for (bit, &(dx, dy)) in xy_offsets.iter().enumerate() {
                    let v = frame.bilinear_sample(x as f64 + dx, y as f64 + dy)?;
                    code_xy |= u32::from(v >= threshold) << bit;
                }

                let mut code_xt = 0u32;
                for (bit, &(du, dv)) in xt_offsets.iter().enumerate() {
                    let v = volume.sample_xt(x as f64 + du, t as f64 + dv, y)?;
                    code_xt |= u32::from(v >= threshold) << bit;
                }

                let mut code_yt = 0u32;
                for (bit, &(du, dv)) in yt_offsets.iter().enumerate() {
                    let v = volume.sample_yt(y as f64 + du, t as f64 + dv, x)?;
                    code_yt |= u32::from(v >= threshold) << bit;
                }

                hists[0][mapping.bin_of(code_xy)] += 1.0;
                hists[1][mapping.bin_of(code_xt)] += 1.0;
                hists[2][mapping.bin_of(code_yt)] += 1.0;
            }
        }
    }

    if normalize {
        let voxels = ((w - 2 * mx) * (h - 2 * my) * (frames - 2 * mt)) as f64;
        for hist in &mut hists {
            for v in hist.iter_mut() {
                *v /= voxels;
            }
        }
    }

    let mut values = Vec::with_capacity(3 * bins);
    for hist in &hists {
        values.extend_from_slice(hist);
    }
    Ok(Descriptor {
        values,
        bins_per_window: bins,
        grid: (1, 1),
        normalized: normalize,
        planes: 3,
        spec: spec_xy,
        mapping_kind: mapping.kind(),
    })
}
