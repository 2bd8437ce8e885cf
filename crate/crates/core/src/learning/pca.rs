//! Principal component analysis over the population covariance matrix.

use crate::error::{Error, Result};
use crate::learning::eigen::symmetric_eigen;
use serde::{Deserialize, Serialize};

/// Orthonormal directions of decreasing variance, with the data mean they
/// were centered on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    /// One unit-length row per direction, sorted by explained variance
    /// descending; the largest-magnitude entry of each row is positive.
    pub components: Vec<Vec<f64>>,
    /// Population variances along the components, descending.
    pub variances: Vec<f64>,
}

/// Fits a full set of components to `data` (at least two samples).
pub fn pca_fit(data: &[Vec<f64>]) -> Result<PcaModel> {
    if data.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: data.len(),
        });
    }
    let dim = data[0].len();
    for row in data {
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: row.len(),
            });
        }
    }

    let n = data.len() as f64;
    let mut mean = vec![0.0f64; dim];
    for row in data {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n;
    }

    let mut covariance = vec![vec![0.0f64; dim]; dim];
    for row in data {
        let centered: Vec<f64> = row.iter().zip(&mean).map(|(v, m)| v - m).collect();
        for i in 0..dim {
            for j in i..dim {
                covariance[i][j] += centered[i] * centered[j];
            }
        }
    }
    for i in 0..dim {
        for j in i..dim {
            covariance[i][j] /= n;
            covariance[j][i] = covariance[i][j];
        }
    }

    let eig = symmetric_eigen(covariance);
    Ok(PcaModel {
        mean,
        components: eig.vectors,
        // Covariance eigenvalues are nonnegative up to rounding.
        variances: eig.values.iter().map(|&v| v.max(0.0)).collect(),
    })
}

/// Projects `data` onto the first `n_components` directions.
pub fn pca_project(
    model: &PcaModel,
    data: &[Vec<f64>],
    n_components: usize,
) -> Result<Vec<Vec<f64>>> {
    if n_components > model.components.len() {
        return Err(Error::TooManyComponents {
            requested: n_components,
            available: model.components.len(),
        });
    }
    data.iter()
        .map(|row| {
            if row.len() != model.mean.len() {
                return Err(Error::DimensionMismatch {
                    expected: model.mean.len(),
                    got: row.len(),
                });
            }
            let centered: Vec<f64> = row.iter().zip(&model.mean).map(|(v, m)| v - m).collect();
            Ok(model.components[..n_components]
                .iter()
                .map(|component| component.iter().zip(&centered).map(|(c, x)| c * x).sum())
                .collect())
        })
        .collect()
}
