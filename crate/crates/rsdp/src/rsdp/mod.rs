//! The restricted syndrome decoding problem layer.
//!
//! Decoding with error vectors confined to `{0, ±1}` (restriction level
//! a = 1). Sums of two such vectors land in `{0, ±1, ±2}`, which is why the
//! wide alphabet shows up throughout the distance theory. This module holds
//! the vector types, problem instances and their file format, restricted
//! weight/ball combinatorics, the restricted Gilbert–Varshamov theory, and
//! the SDP → R-SDP reduction.

mod combinatorics;
mod instance;
mod reduction;

pub use combinatorics::{
    expected_solutions, gv_infinite_probability_bound, hamming_gv_distance,
    restricted_ball_volume, restricted_gv_distance, restricted_min_distance,
};
pub use instance::{plant_instance, RsdpInstance, SdpInstance};
pub use reduction::{lift_rsdp_solution, push_sdp_solution, sdp_to_rsdp, ReductionMap};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldVector, PrimeField};

/// Errors from the problem layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RsdpError {
    #[error("entry {0} outside the restricted alphabet")]
    OutsideAlphabet(i32),
    #[error("radius {t} out of range for length {n}")]
    RadiusOutOfRange { t: u64, n: usize },
    #[error("enumeration over {0} codewords exceeds the test-scale bound")]
    EnumerationTooLarge(u128),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrix is not full rank")]
    NotFullRank,
    #[error("vector does not solve the instance")]
    NotASolution,
    #[error("malformed instance file: {0}")]
    MalformedFile(String),
}

/// A weight that may be infinite.
///
/// `Infinite` is a meaningful outcome of the restricted distance theory
/// (codes whose intersection with the wide alphabet is trivial), never a
/// stand-in for a large number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Weight {
    Finite(u64),
    Infinite,
}

impl Weight {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Weight::Infinite)
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Weight::Finite(w) => Some(*w),
            Weight::Infinite => None,
        }
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (Weight::Infinite, Weight::Infinite) => Ordering::Equal,
            (Weight::Infinite, Weight::Finite(_)) => Ordering::Greater,
            (Weight::Finite(_), Weight::Infinite) => Ordering::Less,
            (Weight::Finite(a), Weight::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Infinite => write!(f, "inf"),
        }
    }
}

/// The restricted weight of a field vector: the number of `±1` entries plus
/// twice the number of `±2` entries, infinite outside `{0, ±1, ±2}^n`.
///
/// For entries in the wide alphabet over a prime field with p ≥ 5 this
/// coincides with the Lee weight.
pub fn restricted_weight(x: &FieldVector) -> Weight {
    let mut total = 0u64;
    for v in x.values() {
        match v.abs() {
            0 => {}
            1 => total += 1,
            2 => total += 2,
            _ => return Weight::Infinite,
        }
    }
    Weight::Finite(total)
}

/// Whether a target weight `t` rules out syndrome collisions for a code of
/// restricted minimum distance `d̃`: true iff `t < d̃ / 2`.
pub fn unique_solution_guaranteed(d_restricted: Weight, t: u64) -> bool {
    match d_restricted {
        Weight::Infinite => true,
        Weight::Finite(d) => 2 * t < d,
    }
}

/// A vector over `{0, +1, -1}`, the solution space of level-1 instances.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RestrictedVector {
    field: PrimeField,
    entries: Vec<i8>,
}

impl RestrictedVector {
    /// Builds from entries, rejecting anything outside `{0, ±1}`.
    pub fn new(field: PrimeField, entries: Vec<i8>) -> Result<Self, RsdpError> {
        if let Some(&bad) = entries.iter().find(|&&e| e.abs() > 1) {
            return Err(RsdpError::OutsideAlphabet(bad as i32));
        }
        Ok(RestrictedVector { field, entries })
    }

    /// Builds from a `{±1}` sign vector.
    pub fn from_signs(field: PrimeField, signs: &[i8]) -> Result<Self, RsdpError> {
        Self::new(field, signs.to_vec())
    }

    /// Reads back a field vector whose entries all lie in `{0, ±1}`.
    pub fn try_from_field_vector(v: &FieldVector) -> Result<Self, RsdpError> {
        let entries: Result<Vec<i8>, _> = v
            .values()
            .map(|x| {
                if x.abs() <= 1 {
                    Ok(x as i8)
                } else {
                    Err(RsdpError::OutsideAlphabet(x))
                }
            })
            .collect();
        Ok(RestrictedVector {
            field: v.field(),
            entries: entries?,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Number of nonzero entries; equals the restricted weight on `{0, ±1}`.
    pub fn hamming_weight(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    /// Whether every entry is ±1 (full weight).
    pub fn is_full_weight(&self) -> bool {
        self.entries.iter().all(|&e| e != 0)
    }

    pub fn to_field_vector(&self) -> FieldVector {
        FieldVector::from_raw(
            self.field,
            &self.entries.iter().map(|&e| e as i64).collect::<Vec<_>>(),
        )
    }

    /// Entrywise sum as a wide vector; entries land in `{0, ±1, ±2}`.
    pub fn add_wide(&self, rhs: &RestrictedVector) -> WideRestrictedVector {
        assert_eq!(self.len(), rhs.len());
        WideRestrictedVector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// Entrywise difference as a wide vector.
    pub fn sub_wide(&self, rhs: &RestrictedVector) -> WideRestrictedVector {
        assert_eq!(self.len(), rhs.len());
        WideRestrictedVector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

/// A vector over `{0, ±1, ±2}`, where differences of restricted vectors live.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WideRestrictedVector {
    field: PrimeField,
    entries: Vec<i8>,
}

impl WideRestrictedVector {
    pub fn new(field: PrimeField, entries: Vec<i8>) -> Result<Self, RsdpError> {
        if let Some(&bad) = entries.iter().find(|&&e| e.abs() > 2) {
            return Err(RsdpError::OutsideAlphabet(bad as i32));
        }
        Ok(WideRestrictedVector { field, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// `#±1 + 2·#±2`.
    pub fn restricted_weight(&self) -> u64 {
        self.entries.iter().map(|&e| e.unsigned_abs() as u64).sum()
    }

    pub fn to_field_vector(&self) -> FieldVector {
        FieldVector::from_raw(
            self.field,
            &self.entries.iter().map(|&e| e as i64).collect::<Vec<_>>(),
        )
    }
}
