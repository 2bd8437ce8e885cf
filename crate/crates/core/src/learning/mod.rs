//! Dataset handling, splitting, and fit-on-train normalization, plus the
//! classifiers, clustering, and embeddings built on top.
//!
//! Normalization statistics always come from the training partition
//! alone; fitting before splitting is the classic leakage mistake this
//! API shape makes hard to commit.

mod distance;
mod eigen;
mod kmeans;
mod knn;
mod mds;
mod pca;

pub use distance::{histogram_distance, DistanceKind};
pub use kmeans::{kmeans_fit, kmeans_fit_with_init, KMeansModel};
pub use knn::{knn_classify, KnnConfig};
pub use mds::{euclidean_distance_matrix, mds_embed};
pub use pca::{pca_fit, pca_project, PcaModel};

use crate::error::{Error, Result};
use crate::rng::Lcg;
use serde::{Deserialize, Serialize};

/// Feature vectors with opaque string labels. May be empty (splits can
/// produce empty partitions); fit operations reject emptiness themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    dim: usize,
    features: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl LabeledDataset {
    pub fn new(dim: usize, features: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        if features.len() != labels.len() {
            return Err(Error::LengthMismatch {
                a: features.len(),
                b: labels.len(),
            });
        }
        for row in &features {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
        }
        Ok(LabeledDataset {
            dim,
            features,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn feature(&self, i: usize) -> &[f64] {
        &self.features[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }
}

/// Train / validation / test partition of one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitResult {
    pub train: LabeledDataset,
    pub validation: LabeledDataset,
    pub test: LabeledDataset,
    pub seed: u64,
}

/// Splits a dataset by a seeded shuffle followed by contiguous slicing.
///
/// Ratios must be nonnegative and sum to 1 (a zero ratio gives an empty
/// partition, which covers plain two-way splits). Sizes come from
/// largest-remainder rounding so they always add up to the input size.
pub fn split_dataset(
    data: &LabeledDataset,
    ratios: [f64; 3],
    seed: u64,
) -> Result<SplitResult> {
    if data.is_empty() {
        return Err(Error::EmptyInput);
    }
    if ratios.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
        return Err(Error::BadRatios {
            ratios,
            reason: "ratios must be finite and nonnegative",
        });
    }
    let sum: f64 = ratios.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::BadRatios {
            ratios,
            reason: "ratios must sum to 1",
        });
    }

    let n = data.len();
    let sizes = largest_remainder_sizes(n, &ratios);

    let mut order: Vec<usize> = (0..n).collect();
    Lcg::new(seed).shuffle(&mut order);

    let take = |range: std::ops::Range<usize>| -> LabeledDataset {
        let features = order[range.clone()]
            .iter()
            .map(|&i| data.features[i].clone())
            .collect();
        let labels = order[range].iter().map(|&i| data.labels[i].clone()).collect();
        LabeledDataset::new(data.dim, features, labels).expect("slices of a valid dataset")
    };

    Ok(SplitResult {
        train: take(0..sizes[0]),
        validation: take(sizes[0]..sizes[0] + sizes[1]),
        test: take(sizes[0] + sizes[1]..n),
        seed,
    })
}

/// Floor the exact shares, then hand the leftover samples to the largest
/// fractional remainders (ties to the earlier partition).
fn largest_remainder_sizes(n: usize, ratios: &[f64; 3]) -> [usize; 3] {
    let exact: Vec<f64> = ratios.iter().map(|r| r * n as f64).collect();
    let mut sizes = [0usize; 3];
    for (s, e) in sizes.iter_mut().zip(&exact) {
        *s = e.floor() as usize;
    }
    let assigned: usize = sizes.iter().sum();
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&a, &b| {
        let fa = exact[a] - exact[a].floor();
        let fb = exact[b] - exact[b].floor();
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    for i in 0..n - assigned {
        sizes[order[i]] += 1;
    }
    sizes
}

/// Per-feature standardization fitted on a training partition: subtract
/// the mean, divide by the population standard deviation. Constant
/// features keep scale 1 so they map to exactly zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Normalizer {
    pub means: Vec<f64>,
    pub scales: Vec<f64>,
}

pub fn fit_normalizer(train: &LabeledDataset) -> Result<Normalizer> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let n = train.len() as f64;
    let dim = train.dim();
    let mut means = vec![0.0; dim];
    for row in train.features() {
        for (m, v) in means.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut means {
        *m /= n;
    }
    let mut scales = vec![0.0; dim];
    for row in train.features() {
        for ((s, v), m) in scales.iter_mut().zip(row).zip(&means) {
            let d = v - m;
            *s += d * d;
        }
    }
    for s in &mut scales {
        *s = (*s / n).sqrt();
        if *s == 0.0 {
            *s = 1.0;
        }
    }
    Ok(Normalizer { means, scales })
}

pub fn apply_normalizer(norm: &Normalizer, data: &LabeledDataset) -> Result<LabeledDataset> {
    if norm.means.len() != data.dim() {
        return Err(Error::DimensionMismatch {
            expected: norm.means.len(),
            got: data.dim(),
        });
    }
    let features = data
        .features()
        .iter()
        .map(|row| {
            row.iter()
                .zip(&norm.means)
                .zip(&norm.scales)
                .map(|((v, m), s)| (v - m) / s)
                .collect()
        })
        .collect();
    LabeledDataset::new(data.dim(), features, data.labels().to_vec())
}

/// Reads the dataset CSV format: a header row, then one sample per row as
/// a label followed by the feature columns.
pub fn dataset_from_csv(text: &str) -> Result<LabeledDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let header_len = reader
        .headers()
        .map_err(|e| Error::CsvData {
            context: "dataset CSV",
            line: 1,
            reason: e.to_string(),
        })?
        .len();
    if header_len < 2 {
        return Err(Error::CsvData {
            context: "dataset CSV",
            line: 1,
            reason: format!("header has {header_len} columns, need a label and at least one feature"),
        });
    }
    let dim = header_len - 1;

    let mut features = Vec::new();
    let mut labels = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::CsvData {
            context: "dataset CSV",
            line: e
                .position()
                .map(|p| p.line())
                .unwrap_or(features.len() as u64 + 2),
            reason: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != header_len {
            return Err(Error::CsvData {
                context: "dataset CSV",
                line,
                reason: format!("row has {} columns, expected {header_len}", record.len()),
            });
        }
        let mut row = Vec::with_capacity(dim);
        for field in record.iter().skip(1) {
            let v: f64 = field.trim().parse().map_err(|_| Error::CsvData {
                context: "dataset CSV",
                line,
                reason: format!("{field:?} is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::CsvData {
                    context: "dataset CSV",
                    line,
                    reason: format!("feature {v} is not finite"),
                });
            }
            row.push(v);
        }
        labels.push(record[0].to_string());
        features.push(row);
    }
    LabeledDataset::new(dim, features, labels)
}

/// Writes the dataset CSV format with a generated `label,f0,...` header.
pub fn dataset_to_csv(data: &LabeledDataset) -> String {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    let mut header = vec!["label".to_string()];
    header.extend((0..data.dim()).map(|i| format!("f{i}")));
    writer.write_record(&header).expect("in-memory write");
    for i in 0..data.len() {
        let mut record = vec![data.label(i).to_string()];
        record.extend(data.feature(i).iter().map(|&v| crate::fmt_sig17(v)));
        writer.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf8 csv")
}
