//! Lloyd-style k-means with deterministic seeding.
//!
//! Initialization draws k distinct data points through the crate's seeded
//! generator. The loop alternates nearest-centroid assignment (ties to
//! the lower centroid index) and mean updates until no centroid moves
//! more than 1e-12 or the iteration budget runs out. A cluster that loses
//! all members is reseeded to the worst-fit point, so exactly k clusters
//! always come out.

use crate::error::{Error, Result};
use crate::rng::Lcg;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

const CONVERGENCE_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMeansModel {
    pub k: usize,
    pub centroids: Vec<Vec<f64>>,
    /// Cluster index per input point.
    pub assignments: Vec<usize>,
    /// Assignment/update rounds performed.
    pub iterations: usize,
    /// Sum of squared distances to the assigned centroids.
    pub sse: f64,
}

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn validate_points(points: &[Vec<f64>]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let dim = first.len();
    for row in points {
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: row.len(),
            });
        }
    }
    Ok(dim)
}

fn value_key(point: &[f64]) -> Vec<u64> {
    point.iter().map(|v| v.to_bits()).collect()
}

/// Clusters `points` into `k` groups, initializing from a seeded draw of
/// `k` distinct points. `k` must not exceed the number of distinct point
/// values.
pub fn kmeans_fit(
    points: &[Vec<f64>],
    k: usize,
    seed: u64,
    max_iter: usize,
) -> Result<KMeansModel> {
    validate_points(points)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let distinct: HashSet<Vec<u64>> = points.iter().map(|p| value_key(p)).collect();
    if k > distinct.len() {
        return Err(Error::KTooLarge {
            k,
            distinct: distinct.len(),
        });
    }

    let mut order: Vec<usize> = (0..points.len()).collect();
    Lcg::new(seed).shuffle(&mut order);
    let mut init = Vec::with_capacity(k);
    let mut taken = HashSet::new();
    for &i in &order {
        if taken.insert(value_key(&points[i])) {
            init.push(points[i].clone());
            if init.len() == k {
                break;
            }
        }
    }
    kmeans_fit_with_init(points, init, max_iter)
}

/// The same loop starting from explicit centroids (`k = init.len()`).
pub fn kmeans_fit_with_init(
    points: &[Vec<f64>],
    init: Vec<Vec<f64>>,
    max_iter: usize,
) -> Result<KMeansModel> {
    let dim = validate_points(points)?;
    let k = init.len();
    if k == 0 || max_iter == 0 {
        return Err(Error::InvalidParameter(
            "k and max_iter must be at least 1".into(),
        ));
    }
    if k > points.len() {
        return Err(Error::KTooLarge {
            k,
            distinct: points.len(),
        });
    }
    for c in &init {
        if c.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.len(),
            });
        }
    }

    let n = points.len();
    let mut centroids = init;
    let mut assignments = vec![0usize; n];
    let mut best_d2 = vec![0.0f64; n];
    let mut iterations = 0;

    loop {
        iterations += 1;

        // Assignment: nearest centroid, ties to the lower index.
        let mut counts = vec![0usize; k];
        for (i, point) in points.iter().enumerate() {
            let mut best = 0usize;
            let mut best_dist = squared_distance(point, &centroids[0]);
            for (c, centroid) in centroids.iter().enumerate().skip(1) {
                let d = squared_distance(point, centroid);
                if d < best_dist {
                    best_dist = d;
                    best = c;
                }
            }
            assignments[i] = best;
            best_d2[i] = best_dist;
            counts[best] += 1;
        }

        // Reseed empty clusters to the globally worst-fit point, never
        // draining a singleton donor.
        for c in 0..k {
            if counts[c] > 0 {
                continue;
            }
            let mut worst: Option<usize> = None;
            for i in 0..n {
                if counts[assignments[i]] < 2 {
                    continue;
                }
                if worst.is_none_or(|w| best_d2[i] > best_d2[w]) {
                    worst = Some(i);
                }
            }
            let i = worst.expect("k <= n guarantees a donor cluster");
            counts[assignments[i]] -= 1;
            assignments[i] = c;
            counts[c] = 1;
            best_d2[i] = 0.0;
        }

        // Update: centroids become the means of their members.
        let mut sums = vec![vec![0.0f64; dim]; k];
        for (point, &a) in points.iter().zip(&assignments) {
            for (s, v) in sums[a].iter_mut().zip(point) {
                *s += v;
            }
        }
        let mut max_move = 0.0f64;
        for c in 0..k {
            for s in &mut sums[c] {
                *s /= counts[c] as f64;
            }
            max_move = max_move.max(squared_distance(&sums[c], &centroids[c]).sqrt());
            centroids[c] = std::mem::take(&mut sums[c]);
        }

        if max_move <= CONVERGENCE_EPSILON || iterations >= max_iter {
            break;
        }
    }

    let sse = points
        .iter()
        .zip(&assignments)
        .map(|(p, &a)| squared_distance(p, &centroids[a]))
        .sum();
    Ok(KMeansModel {
        k,
        centroids,
        assignments,
        iterations,
        sse,
    })
}
