//! Classical (Torgerson) multidimensional scaling: recover coordinates
//! whose Euclidean distances approximate a given distance matrix.
//!
//! The squared distances are double-centered into a Gram matrix, which is
//! eigendecomposed; coordinates are the leading eigenvectors scaled by
//! the square roots of their eigenvalues. Negative eigenvalues (distances
//! that are not Euclidean) contribute zero coordinates.

use crate::error::{Error, Result};
use crate::learning::eigen::symmetric_eigen;

const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Embeds an `n x n` symmetric zero-diagonal distance matrix into
/// `out_dim` coordinates per point.
pub fn mds_embed(distances: &[Vec<f64>], out_dim: usize) -> Result<Vec<Vec<f64>>> {
    let n = distances.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if out_dim == 0 {
        return Err(Error::InvalidParameter(
            "output dimension must be at least 1".into(),
        ));
    }
    if out_dim > n {
        return Err(Error::TooManyComponents {
            requested: out_dim,
            available: n,
        });
    }
    for (row, values) in distances.iter().enumerate() {
        if values.len() != n {
            return Err(Error::NonSquareDistances {
                row,
                len: values.len(),
                expected: n,
            });
        }
    }
    for i in 0..n {
        if distances[i][i].abs() > SYMMETRY_TOLERANCE {
            return Err(Error::NonzeroDiagonal {
                i,
                value: distances[i][i],
            });
        }
        for j in i + 1..n {
            if (distances[i][j] - distances[j][i]).abs() > SYMMETRY_TOLERANCE {
                return Err(Error::AsymmetricDistances {
                    i,
                    j,
                    a: distances[i][j],
                    b: distances[j][i],
                });
            }
        }
    }

    // B = -1/2 J D^2 J via the row/column/grand means of D^2.
    let squared: Vec<Vec<f64>> = distances
        .iter()
        .map(|row| row.iter().map(|d| d * d).collect())
        .collect();
    let row_means: Vec<f64> = squared
        .iter()
        .map(|row| row.iter().sum::<f64>() / n as f64)
        .collect();
    let grand_mean = row_means.iter().sum::<f64>() / n as f64;
    let mut gram = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = -0.5 * (squared[i][j] - row_means[i] - row_means[j] + grand_mean);
        }
    }

    let eig = symmetric_eigen(gram);
    let mut coords = vec![vec![0.0f64; out_dim]; n];
    for k in 0..out_dim {
        let scale = eig.values[k].max(0.0).sqrt();
        for (point, coord) in coords.iter_mut().zip(&eig.vectors[k]) {
            point[k] = coord * scale;
        }
    }
    Ok(coords)
}

/// Pairwise Euclidean distances; exactly symmetric with a zero diagonal.
pub fn euclidean_distance_matrix(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut d = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let dist = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            d[i][j] = dist;
            d[j][i] = dist;
        }
    }
    d
}
