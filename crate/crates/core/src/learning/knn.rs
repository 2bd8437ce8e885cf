//! k-nearest-neighbor classification over any histogram distance.

use crate::error::{Error, Result};
use crate::learning::distance::{histogram_distance, DistanceKind};
use crate::learning::LabeledDataset;
use std::cmp::Ordering;
use std::collections::{BinaryHeap, BTreeMap};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnnConfig {
    pub k: usize,
    pub distance: DistanceKind,
}

#[derive(Debug, Clone, Copy)]
struct Neighbor {
    dist: f64,
    index: usize,
}

// Order by (distance, index); the index part makes ties deterministic and
// admits the lower-index sample at the k-th position.
impl PartialEq for Neighbor {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Neighbor {}
impl PartialOrd for Neighbor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Neighbor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then(self.index.cmp(&other.index))
    }
}

/// Majority label among the `k` nearest training samples.
///
/// Vote ties break toward the smaller summed distance, then the
/// lexicographically smaller label. Returns the label and the winning
/// neighbor indices ordered by (distance, index).
pub fn knn_classify(
    train: &LabeledDataset,
    config: &KnnConfig,
    query: &[f64],
) -> Result<(String, Vec<usize>)> {
    if config.k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if train.len() < config.k {
        return Err(Error::InsufficientTrainingData {
            needed: config.k,
            got: train.len(),
        });
    }
    if query.len() != train.dim() {
        return Err(Error::DimensionMismatch {
            expected: train.dim(),
            got: query.len(),
        });
    }

    // Bounded max-heap: the worst of the current k candidates sits on
    // top and is evicted by anything strictly better.
    let mut heap: BinaryHeap<Neighbor> = BinaryHeap::with_capacity(config.k + 1);
    for (index, row) in train.features().iter().enumerate() {
        let dist = histogram_distance(config.distance, query, row)?;
        heap.push(Neighbor { dist, index });
        if heap.len() > config.k {
            heap.pop();
        }
    }
    let mut neighbors: Vec<Neighbor> = heap.into_vec();
    neighbors.sort_unstable();

    let mut votes: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
    for n in &neighbors {
        let entry = votes.entry(train.label(n.index)).or_insert((0, 0.0));
        entry.0 += 1;
        entry.1 += n.dist;
    }
    let (label, _) = votes
        .iter()
        .max_by(|(la, (ca, sa)), (lb, (cb, sb))| {
            ca.cmp(cb)
                .then(sb.total_cmp(sa)) // smaller summed distance wins
                .then(lb.cmp(la)) // then the lexicographically smaller label
        })
        .expect("k >= 1 neighbors");

    Ok((
        label.to_string(),
        neighbors.iter().map(|n| n.index).collect(),
    ))
}
