//! Texture description with the local binary pattern family, plus the
//! classical learning and evaluation layer that is typically wrapped
//! around it: histogram-distance kNN, k-means clustering, fit-on-train
//! normalization, PCA / classical MDS coordinates, and ROC/PR metrics.
//!
//! The crate is organized by stage of the pipeline:
//!
//! * [`image`] — grayscale image / video containers, PGM/PPM I/O, and the
//!   sampling primitives (bilinear interpolation, median).
//! * [`lbp`] — per-pixel codes, code→bin mappings, histograms, grid
//!   descriptors, and the three-plane spatiotemporal variant.
//! * [`learning`] — dataset splitting, normalization, kNN, k-means,
//!   PCA, and classical MDS.
//! * [`eval`] — confusion counts, ROC curves with AUC, precision-recall.
//!
//! Everything is deterministic: all seeded draws go through the small
//! linear congruential generator in [`rng`], so identical inputs and
//! seeds produce identical outputs on every platform.

pub mod error;
pub mod eval;
pub mod image;
pub mod lbp;
pub mod learning;
pub mod rng;

pub use error::{Error, Result};
pub use image::{load_image, median_of, save_pgm, GrayImage, VideoVolume};
pub use lbp::{
    basic_lbp, build_code_mapping, generalized_lbp, grid_descriptor, lbp_histogram, lbp_top,
    median_robust_lbp, ring_samples, var_measure, CodeImage, CodeMapping, Descriptor, MappingKind,
    SamplingSpec, TexturePixelStats,
};
pub use learning::{
    apply_normalizer, fit_normalizer, histogram_distance, kmeans_fit, kmeans_fit_with_init,
    knn_classify, mds_embed, pca_fit, pca_project, split_dataset, DistanceKind, KMeansModel,
    KnnConfig, LabeledDataset, Normalizer, PcaModel, SplitResult,
};

/// Formats a real value with 17 significant digits, enough for a lossless
/// `f64` text roundtrip. All CSV writers in this crate use it.
pub fn fmt_sig17(value: f64) -> String {
    format!("{value:.16e}")
}
