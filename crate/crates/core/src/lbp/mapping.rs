//! Code-to-bin mappings: the full 2^P table, the uniform-pattern table
//! (u2), the rotation-orbit table (ri), and their composition (riu2).
//!
//! Bin layouts are fixed so histograms are comparable across runs:
//!
//! * `u2` — a pattern is uniform when its circular bit string has at most
//!   two 0/1 transitions. Uniform codes occupy bins in ascending code
//!   order; every non-uniform code shares the final bin. For P samples
//!   that is `P(P-1) + 2` uniform codes and `P(P-1) + 3` bins.
//! * `ri` — each code maps to the index of its rotation orbit, orbits
//!   ordered by their smallest member (the minimum value over all cyclic
//!   rotations).
//! * `riu2` — uniform codes map to their popcount (orbits of uniform
//!   codes are exactly the popcount classes), non-uniform codes to bin
//!   `P + 1`; `P + 2` bins in total.
//!
//! Tables are materialized for `P <= 16`. Larger `P` uses rank lookups
//! with identical semantics, except `full`, whose histogram would no
//! longer fit in memory and is rejected.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which code-to-bin reduction to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MappingKind {
    /// Identity: one bin per code.
    #[serde(rename = "full")]
    Full,
    /// Uniform patterns get their own bins, the rest share one.
    #[serde(rename = "u2")]
    Uniform,
    /// One bin per rotation orbit.
    #[serde(rename = "ri")]
    RotationInvariant,
    /// Uniform orbits (popcount classes) plus a shared non-uniform bin.
    #[serde(rename = "riu2")]
    UniformRotationInvariant,
}

impl fmt::Display for MappingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MappingKind::Full => "full",
            MappingKind::Uniform => "u2",
            MappingKind::RotationInvariant => "ri",
            MappingKind::UniformRotationInvariant => "riu2",
        };
        f.write_str(s)
    }
}

impl FromStr for MappingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(MappingKind::Full),
            "u2" => Ok(MappingKind::Uniform),
            "ri" => Ok(MappingKind::RotationInvariant),
            "riu2" => Ok(MappingKind::UniformRotationInvariant),
            other => Err(Error::InvalidParameter(format!(
                "unknown mapping kind {other:?} (expected full, u2, ri, or riu2)"
            ))),
        }
    }
}

/// Cyclic left rotation of `code` by `k` positions within `points` bits.
pub fn rotate_bits(code: u32, k: u32, points: u32) -> u32 {
    let mask = (1u64 << points) - 1;
    let k = k % points;
    if k == 0 {
        return code & mask as u32;
    }
    let c = code as u64 & mask;
    (((c << k) | (c >> (points - k))) & mask) as u32
}

/// Number of 0/1 changes when reading the code circularly.
pub fn circular_transitions(code: u32, points: u32) -> u32 {
    (code ^ rotate_bits(code, 1, points)).count_ones()
}

/// Smallest value among all cyclic rotations of `code`.
pub fn min_rotation(code: u32, points: u32) -> u32 {
    let mut min = code & (((1u64 << points) - 1) as u32);
    for k in 1..points {
        min = min.min(rotate_bits(code, k, points));
    }
    min
}

fn is_uniform(code: u32, points: u32) -> bool {
    circular_transitions(code, points) <= 2
}

/// All uniform codes for `points` bits, ascending: 0, every cyclic
/// placement of a block of 1..points-1 ones, and the all-ones code.
fn uniform_codes(points: u32) -> Vec<u32> {
    let mask = ((1u64 << points) - 1) as u32;
    let mut codes = vec![0, mask];
    for ones in 1..points {
        let block = ((1u64 << ones) - 1) as u32;
        for shift in 0..points {
            codes.push(rotate_bits(block, shift, points));
        }
    }
    codes.sort_unstable();
    codes.dedup();
    debug_assert_eq!(codes.len() as u32, points * (points - 1) + 2);
    codes
}

fn uniform_bin(code: u32, points: u32, sorted_uniform: &[u32]) -> u32 {
    if is_uniform(code, points) {
        sorted_uniform.binary_search(&code).expect("uniform code in table") as u32
    } else {
        sorted_uniform.len() as u32
    }
}

fn orbit_bin(code: u32, points: u32, sorted_reps: &[u32]) -> u32 {
    sorted_reps
        .binary_search(&min_rotation(code, points))
        .expect("orbit representative in table") as u32
}

fn popcount_bin(code: u32, points: u32) -> u32 {
    if is_uniform(code, points) {
        code.count_ones()
    } else {
        points + 1
    }
}

/// Orbit representatives (codes equal to their own minimum rotation),
/// ascending by construction.
fn orbit_representatives(points: u32) -> Vec<u32> {
    let count = 1u64 << points;
    let mut reps = Vec::new();
    for code in 0..count {
        let code = code as u32;
        if min_rotation(code, points) == code {
            reps.push(code);
        }
    }
    reps
}

enum Repr {
    /// Dense code -> bin table (P <= 16).
    Table(Vec<u32>),
    /// Sorted uniform codes; bin by rank, non-uniform last.
    UniformRank(Vec<u32>),
    /// Sorted orbit representatives; bin by rank of the minimum rotation.
    OrbitRank(Vec<u32>),
    /// Popcount for uniform codes, P + 1 otherwise.
    Popcount,
}

/// A code-to-bin reduction for one sample count.
pub struct CodeMapping {
    kind: MappingKind,
    points: u32,
    bin_count: usize,
    repr: Repr,
}

impl CodeMapping {
    pub fn kind(&self) -> MappingKind {
        self.kind
    }

    pub fn points(&self) -> u32 {
        self.points
    }

    pub fn bin_count(&self) -> usize {
        self.bin_count
    }

    /// The materialized table, available for `P <= 16`.
    pub fn table(&self) -> Option<&[u32]> {
        match &self.repr {
            Repr::Table(t) => Some(t),
            _ => None,
        }
    }

    /// Histogram bin for a code.
    #[inline]
    pub fn bin_of(&self, code: u32) -> usize {
        let bin = match &self.repr {
            Repr::Table(t) => t[code as usize],
            Repr::UniformRank(u) => uniform_bin(code, self.points, u),
            Repr::OrbitRank(reps) => orbit_bin(code, self.points, reps),
            Repr::Popcount => popcount_bin(code, self.points),
        };
        bin as usize
    }
}

/// Builds the mapping for `4 <= points <= 24` (`points <= 16` for `full`).
pub fn build_code_mapping(kind: MappingKind, points: u32) -> Result<CodeMapping> {
    if !(4..=24).contains(&points) {
        return Err(Error::UnsupportedP {
            points,
            reason: "sample count must be between 4 and 24",
        });
    }
    let dense = points <= 16;
    if kind == MappingKind::Full && !dense {
        return Err(Error::UnsupportedP {
            points,
            reason: "full histograms support at most 16 samples (2^16 bins)",
        });
    }

    let (bin_count, repr) = match kind {
        MappingKind::Full => {
            let size = 1usize << points;
            (size, Repr::Table((0..size as u32).collect()))
        }
        MappingKind::Uniform => {
            let uniform = uniform_codes(points);
            let bins = uniform.len() + 1;
            if dense {
                let table = (0..1u32 << points)
                    .map(|c| uniform_bin(c, points, &uniform))
                    .collect();
                (bins, Repr::Table(table))
            } else {
                (bins, Repr::UniformRank(uniform))
            }
        }
        MappingKind::RotationInvariant => {
            let reps = orbit_representatives(points);
            let bins = reps.len();
            if dense {
                let table = (0..1u32 << points)
                    .map(|c| orbit_bin(c, points, &reps))
                    .collect();
                (bins, Repr::Table(table))
            } else {
                (bins, Repr::OrbitRank(reps))
            }
        }
        MappingKind::UniformRotationInvariant => {
            let bins = points as usize + 2;
            if dense {
                let table = (0..1u32 << points).map(|c| popcount_bin(c, points)).collect();
                (bins, Repr::Table(table))
            } else {
                (bins, Repr::Popcount)
            }
        }
    };

    Ok(CodeMapping {
        kind,
        points,
        bin_count,
        repr,
    })
}
