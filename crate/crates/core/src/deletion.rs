//! Harmonic matrices with values removed from the last row.
//!
//! Expanding the spectrum along the last row gives
//! `μ(j) = Σ_{ℓ ∈ {0..j} \ S} μ_{N-1}(j - ℓ)`, where `ℓ` runs over the
//! surviving last-row values, and `kmin(j) = 1 + Σ_{n<j} μ(n)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::harmonic::HarmonicModel;
use crate::matrix::SpectralMatrix;

/// The values deleted from the last row of the `N`-row harmonic matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeletionSpec {
    n: usize,
    deleted: BTreeSet<u64>,
}

impl DeletionSpec {
    pub fn new(n: usize, deleted: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(
                "deletions need at least two rows".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for v in deleted {
            if v == 0 {
                return Err(Error::InvalidArgument(
                    "the value 0 cannot be deleted from the last row".into(),
                ));
            }
            if !set.insert(v) {
                return Err(Error::InvalidArgument(format!("value {v} listed twice")));
            }
        }
        Ok(DeletionSpec { n, deleted: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn deleted(&self) -> &BTreeSet<u64> {
        &self.deleted
    }

    /// The last row: `ℕ \ S` in increasing order.
    pub fn last_row(&self) -> impl Iterator<Item = u64> + '_ {
        (0u64..).filter(|v| !self.deleted.contains(v))
    }

    /// First `N-1` rows are `0..prefix_len`, the last row is `ℕ \ S`, all cut
    /// to `prefix_len` entries.
    pub fn matrix(&self, prefix_len: usize) -> SpectralMatrix {
        assert!(prefix_len >= 1);
        let mut rows = vec![(0..prefix_len as i64).collect::<Vec<_>>(); self.n - 1];
        rows.push(self.last_row().take(prefix_len).map(|v| v as i64).collect());
        SpectralMatrix::new(rows).expect("deletion rows are strictly increasing")
    }

    /// Multiplicity of the eigenvalue `j`.
    pub fn multiplicity(&self, j: u64) -> Result<u64> {
        let reduced = HarmonicModel::new(self.n - 1)?;
        let mut total = 0u64;
        for l in (0..=j).filter(|l| !self.deleted.contains(l)) {
            total = total
                .checked_add(reduced.multiplicity(j - l)?)
                .ok_or(Error::Overflow("deleted multiplicity"))?;
        }
        Ok(total)
    }

    /// Minimal labelling of the eigenvalue `j`.
    pub fn kmin(&self, j: u64) -> Result<u64> {
        let mut k = 1u64;
        for level in 0..j {
            k = k
                .checked_add(self.multiplicity(level)?)
                .ok_or(Error::Overflow("deleted k_min"))?;
        }
        Ok(k)
    }
}

pub fn deleted_matrix(spec: &DeletionSpec, prefix_len: usize) -> SpectralMatrix {
    spec.matrix(prefix_len)
}

pub fn deleted_multiplicity(spec: &DeletionSpec, j: u64) -> Result<u64> {
    spec.multiplicity(j)
}

pub fn deleted_kmin(spec: &DeletionSpec, j: u64) -> Result<u64> {
    spec.kmin(j)
}
