//! Distances between histogram feature vectors.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Tolerance on the sum check for histogram intersection.
const SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistanceKind {
    /// `sum (a-b)^2 / (a+b)` over bins with mass, the usual choice for
    /// comparing code histograms.
    #[serde(rename = "chi-square")]
    ChiSquare,
    #[serde(rename = "l1")]
    L1,
    #[serde(rename = "l2")]
    L2,
    /// `1 - sum min(a, b)`, defined for vectors normalized to sum 1.
    #[serde(rename = "intersection")]
    HistogramIntersection,
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DistanceKind::ChiSquare => "chi-square",
            DistanceKind::L1 => "l1",
            DistanceKind::L2 => "l2",
            DistanceKind::HistogramIntersection => "intersection",
        };
        f.write_str(s)
    }
}

impl FromStr for DistanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chi-square" | "chi2" => Ok(DistanceKind::ChiSquare),
            "l1" => Ok(DistanceKind::L1),
            "l2" => Ok(DistanceKind::L2),
            "intersection" | "histogram-intersection" => Ok(DistanceKind::HistogramIntersection),
            other => Err(Error::InvalidParameter(format!(
                "unknown distance kind {other:?} (expected chi-square, l1, l2, or intersection)"
            ))),
        }
    }
}

/// Dissimilarity between two equal-length nonnegative vectors. All kinds
/// are symmetric and vanish on identical inputs.
pub fn histogram_distance(kind: DistanceKind, a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    match kind {
        DistanceKind::ChiSquare => {
            let mut d = 0.0;
            for (x, y) in a.iter().zip(b) {
                let s = x + y;
                if s > 0.0 {
                    let diff = x - y;
                    d += diff * diff / s;
                }
            }
            Ok(d)
        }
        DistanceKind::L1 => Ok(a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()),
        DistanceKind::L2 => Ok(a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()),
        DistanceKind::HistogramIntersection => {
            let sum_a: f64 = a.iter().sum();
            let sum_b: f64 = b.iter().sum();
            if (sum_a - 1.0).abs() > SUM_TOLERANCE || (sum_b - 1.0).abs() > SUM_TOLERANCE {
                return Err(Error::UnnormalizedIntersection { sum_a, sum_b });
            }
            Ok(1.0 - a.iter().zip(b).map(|(x, y)| x.min(*y)).sum::<f64>())
        }
    }
}
