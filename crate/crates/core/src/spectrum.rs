//! Enumeration of the spectrum of a [`SpectralMatrix`] with multiplicities.
//!
//! Eigenvalues are labelled `1, 2, 3, ...` in nondecreasing order, counted
//! with multiplicity. Entries beyond index `k` of a row never contribute to
//! the first `k` labellings (each entry is itself an eigenvalue when the
//! other rows sit at their first entry), so rows of length `k` are exact
//! for everything up to `λ_k`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SpectralMatrix;

/// A 1-based labelling `k` into the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankQuery(u64);

impl RankQuery {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 {
            Err(Error::ZeroRank)
        } else {
            Ok(RankQuery(k))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// How rows shorter than the requested rank are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Refuse: the missing tail could hold smaller sums.
    #[default]
    Strict,
    /// Treat short rows as exhausted (no further entries).
    Acknowledged,
}

/// One distinct eigenvalue and its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Level {
    pub value: i64,
    pub multiplicity: u64,
}

/// The eigenvalue at a labelling together with its full multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Eigenvalue {
    pub value: i64,
    pub multiplicity: u64,
    /// Smallest labelling carrying this value.
    pub first_label: u64,
}

/// The bottom of a spectrum as complete multiplicity groups in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SpectrumPrefix {
    entries: Vec<Level>,
    covered_rank: u64,
}

impl SpectrumPrefix {
    /// Groups a sorted list of eigenvalues.
    pub fn from_sorted(values: impl IntoIterator<Item = i64>) -> Self {
        let mut prefix = SpectrumPrefix::default();
        for v in values {
            prefix.push(v, 1);
        }
        prefix
    }

    fn push(&mut self, value: i64, count: u64) {
        match self.entries.last_mut() {
            Some(last) if last.value == value => last.multiplicity += count,
            Some(last) => {
                debug_assert!(last.value < value, "values must arrive sorted");
                self.entries.push(Level {
                    value,
                    multiplicity: count,
                });
            }
            None => self.entries.push(Level {
                value,
                multiplicity: count,
            }),
        }
        self.covered_rank += count;
    }

    pub fn entries(&self) -> &[Level] {
        &self.entries
    }

    /// Total number of labellings covered, `Σ multiplicities`.
    pub fn covered_rank(&self) -> u64 {
        self.covered_rank
    }

    /// The eigenvalue at labelling `k`, if covered.
    pub fn at(&self, k: u64) -> Option<Eigenvalue> {
        let mut first = 1u64;
        for level in &self.entries {
            if k < first + level.multiplicity {
                return (k >= first).then_some(Eigenvalue {
                    value: level.value,
                    multiplicity: level.multiplicity,
                    first_label: first,
                });
            }
            first += level.multiplicity;
        }
        None
    }

    /// `m(k)` for `k = 1..=covered_rank`.
    pub fn multiplicity_sequence(&self) -> Vec<u64> {
        self.entries
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.multiplicity, l.multiplicity as usize))
            .collect()
    }

    /// The prefix cut after the group containing labelling `k`.
    pub fn through_rank(&self, k: u64) -> SpectrumPrefix {
        let mut out = SpectrumPrefix::default();
        for level in &self.entries {
            if out.covered_rank >= k {
                break;
            }
            out.push(level.value, level.multiplicity);
        }
        out
    }
}

fn check_lengths(a: &SpectralMatrix, k: u64, truncation: Truncation) -> Result<()> {
    if truncation == Truncation::Strict {
        if let Some((row, r)) = a
            .rows()
            .iter()
            .enumerate()
            .find(|(_, r)| (r.len() as u64) < k)
        {
            return Err(Error::TruncatedRows {
                row,
                len: r.len(),
                needed: k,
            });
        }
    }
    Ok(())
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Node {
    sum: i64,
    indices: Box<[u32]>,
}

/// The first `k` eigenvalues, grouped, with the last group complete.
///
/// Best-first over index tuples. Every tuple has a unique parent (decrement
/// its last nonzero index), so a tuple spawns children only at positions at
/// or after its own last nonzero index; the frontier never holds duplicates
/// and sums pop in nondecreasing order because rows are strictly increasing.
///
/// With [`Truncation::Acknowledged`] short rows count as exhausted and the
/// result may cover fewer than `k` labellings when the finite spectrum is
/// smaller than `k`.
pub fn enumerate_spectrum(
    a: &SpectralMatrix,
    k: u64,
    truncation: Truncation,
) -> Result<SpectrumPrefix> {
    if k == 0 {
        return Err(Error::ZeroRank);
    }
    check_lengths(a, k, truncation)?;
    let rows = a.rows();
    let n = rows.len();

    let mut prefix = SpectrumPrefix::default();
    let mut heap = BinaryHeap::new();
    heap.push(Reverse(Node {
        sum: a.ground_value(),
        indices: vec![0u32; n].into_boxed_slice(),
    }));

    while let Some(Reverse(node)) = heap.pop() {
        if prefix.covered_rank() >= k {
            let last = prefix.entries.last().map(|l| l.value);
            if last != Some(node.sum) {
                break;
            }
        }
        prefix.push(node.sum, 1);

        let start = node.indices.iter().rposition(|&i| i > 0).unwrap_or(0);
        for pos in start..n {
            let next = node.indices[pos] as usize + 1;
            if next < rows[pos].len() {
                let mut indices = node.indices.clone();
                indices[pos] += 1;
                let sum = node.sum - rows[pos][next - 1] + rows[pos][next];
                heap.push(Reverse(Node { sum, indices }));
            }
        }
    }
    Ok(prefix)
}

/// Number of index tuples whose entries sum to `lam`. Saturates at `u64::MAX`.
pub fn count_representations(a: &SpectralMatrix, lam: i64) -> u64 {
    let rows = a.rows();
    // smallest achievable contribution of rows i.. (rows are sorted)
    let mut tail_min = vec![0i64; rows.len() + 1];
    for i in (0..rows.len()).rev() {
        tail_min[i] = tail_min[i + 1] + rows[i][0];
    }
    let mut partial: HashMap<i64, u64> = HashMap::from([(0, 1)]);
    for (i, row) in rows.iter().enumerate() {
        let mut next: HashMap<i64, u64> = HashMap::new();
        for (&s, &c) in &partial {
            for &x in row {
                let t = s + x;
                if t + tail_min[i + 1] > lam {
                    break;
                }
                let slot = next.entry(t).or_insert(0);
                *slot = slot.saturating_add(c);
            }
        }
        partial = next;
    }
    partial.get(&lam).copied().unwrap_or(0)
}

/// `λ_k` and its full multiplicity `m(λ_k)`.
pub fn multiplicity_at(
    a: &SpectralMatrix,
    k: RankQuery,
    truncation: Truncation,
) -> Result<Eigenvalue> {
    let prefix = enumerate_spectrum(a, k.get(), truncation)?;
    prefix.at(k.get()).ok_or(Error::RankBeyondSpectrum {
        k: k.get(),
        available: prefix.covered_rank(),
    })
}

/// Whether `m(k, A) <= k^(N-1)`.
pub fn check_rank_bound(a: &SpectralMatrix, k: RankQuery, truncation: Truncation) -> Result<bool> {
    let m = multiplicity_at(a, k, truncation)?.multiplicity;
    Ok(within_rank_bound(m, k.get(), a.n_rows()))
}

/// `m <= k^(N-1)`, evaluated without overflow.
pub fn within_rank_bound(m: u64, k: u64, n: usize) -> bool {
    let mut cap: u128 = 1;
    for _ in 1..n {
        cap = cap.saturating_mul(k as u128);
        if cap >= m as u128 {
            return true;
        }
    }
    m as u128 <= cap
}

/// The whole finite spectrum via the full Cartesian product. Exponential;
/// used as an independent oracle on small inputs.
pub fn brute_force_spectrum(a: &SpectralMatrix) -> SpectrumPrefix {
    let mut sums = vec![0i64];
    for row in a.rows() {
        sums = sums
            .iter()
            .flat_map(|&s| row.iter().map(move |&x| s + x))
            .collect();
    }
    sums.sort_unstable();
    SpectrumPrefix::from_sorted(sums)
}
