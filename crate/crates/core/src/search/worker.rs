//! Depth-first enumeration of row multisets for one partition of the space.
//!
//! The partial spectrum is kept as a histogram of sums. Two facts drive the
//! pruning:
//!
//! * Every later row starts at 0, so the `k`-th smallest sum of the rows
//!   placed so far bounds `λ_k` of any completion from above. Entries above
//!   that limit never matter, and sibling rows that agree below it lead to
//!   equivalent subtrees; only the first of them is explored.
//! * With `r` rows still free, each sum `v` of the placed rows extends to a
//!   value `λ` in at most `C(λ-v+r-1, r-1)` ways, which caps the final
//!   multiplicity. Subtrees whose cap is below the best multiplicity seen in
//!   this partition are skipped; ties are kept so no maximizer is lost.

use std::collections::{BTreeMap, HashSet};

use super::rows::RowFamily;
use crate::matrix::SpectralMatrix;

pub(crate) const WITNESS_CAP: usize = 16;

/// Inputs shared by every partition.
pub(crate) struct Shared<'a> {
    pub(crate) family: &'a RowFamily,
    pub(crate) n: usize,
    pub(crate) k: u64,
    /// Largest possible sum, `N * B`.
    pub(crate) cap: usize,
    /// A multiplicity some member of the family is known to reach.
    pub(crate) seed: u64,
    /// `compositions[r][w]`: ways to write `w` as an ordered sum of `r`
    /// nonnegative parts, saturating.
    compositions: Vec<Vec<u64>>,
}

impl<'a> Shared<'a> {
    pub(crate) fn new(
        family: &'a RowFamily,
        n: usize,
        k: u64,
        max_entry: usize,
        seed: u64,
    ) -> Self {
        let cap = n * max_entry;
        let mut compositions = vec![vec![0u64; cap + 1]; n + 1];
        compositions[0][0] = 1;
        for r in 1..=n {
            for w in 0..=cap {
                // C(w+r-1, r-1) = Σ_{t<=w} C(t+r-2, r-2)
                let prev = if w > 0 { compositions[r][w - 1] } else { 0 };
                compositions[r][w] = prev.saturating_add(compositions[r - 1][w]);
            }
        }
        Shared {
            family,
            n,
            k,
            cap,
            seed,
            compositions,
        }
    }

    pub(crate) fn low_mask(limit: usize) -> u64 {
        if limit >= 63 {
            u64::MAX
        } else {
            (1u64 << (limit + 1)) - 1
        }
    }

    /// Histogram of the empty matrix and its limit.
    pub(crate) fn root(&self) -> (Vec<u64>, usize) {
        let mut h = vec![0u64; self.cap + 1];
        h[0] = 1;
        let limit = if self.k <= 1 { 0 } else { self.cap };
        (h, limit)
    }
}

/// What one partition found.
#[derive(Debug, Default)]
pub(crate) struct PartitionResult {
    pub(crate) best: u64,
    /// Canonical witnesses keyed by their flattened rows.
    pub(crate) witnesses: BTreeMap<Vec<i64>, SpectralMatrix>,
    pub(crate) examined: u64,
    pub(crate) pruned: u64,
    #[cfg(test)]
    pub(crate) leaves: Vec<Vec<usize>>,
}

pub(crate) struct Worker<'s, 'a> {
    shared: &'s Shared<'a>,
    hists: Vec<Vec<u64>>,
    limits: Vec<usize>,
    seen: Vec<HashSet<u64>>,
    path: Vec<usize>,
    result: PartitionResult,
}

impl<'s, 'a> Worker<'s, 'a> {
    pub(crate) fn new(shared: &'s Shared<'a>) -> Self {
        let n = shared.n;
        let (root, root_limit) = shared.root();
        let mut hists = vec![vec![0u64; shared.cap + 1]; n + 1];
        hists[0] = root;
        let mut limits = vec![0; n + 1];
        limits[0] = root_limit;
        Worker {
            shared,
            hists,
            limits,
            seen: vec![HashSet::new(); n + 1],
            path: Vec::with_capacity(n),
            result: PartitionResult {
                best: shared.seed,
                ..PartitionResult::default()
            },
        }
    }

    /// Explores every multiset whose first (smallest) row is `first`.
    pub(crate) fn run(mut self, first: usize) -> PartitionResult {
        self.place(0, first);
        self.result
    }

    fn place(&mut self, depth: usize, row: usize) {
        self.push_row(depth, row);
        self.path.push(row);
        let remaining = self.shared.n - depth - 1;
        if remaining == 0 {
            self.evaluate_leaf();
        } else if self.upper_bound(depth + 1, remaining) < self.result.best {
            self.result.pruned += 1;
        } else {
            self.descend(depth + 1, row);
        }
        self.path.pop();
    }

    fn descend(&mut self, depth: usize, start: usize) {
        let family = self.shared.family;
        let key_mask = Shared::low_mask(self.limits[depth]);
        let mut seen = std::mem::take(&mut self.seen[depth]);
        seen.clear();
        for row in start..family.len() {
            if !seen.insert(family.mask(row) & key_mask) {
                self.result.pruned += 1;
                continue;
            }
            self.place(depth, row);
        }
        self.seen[depth] = seen;
    }

    /// Convolves row `row` into the histogram at `depth + 1`.
    fn push_row(&mut self, depth: usize, row: usize) {
        let limit = self.limits[depth];
        let entries = self.shared.family.row(row);
        let (parents, children) = self.hists.split_at_mut(depth + 1);
        let parent = &parents[depth];
        let child = &mut children[0];
        child[..=limit].fill(0);
        for &x in entries {
            let x = x as usize;
            if x > limit {
                break;
            }
            for v in x..=limit {
                child[v] = child[v].saturating_add(parent[v - x]);
            }
        }
        let mut cum = 0u64;
        let mut new_limit = limit;
        for (v, &c) in child[..=limit].iter().enumerate() {
            cum = cum.saturating_add(c);
            if cum >= self.shared.k {
                new_limit = v;
                break;
            }
        }
        self.limits[depth + 1] = new_limit;
    }

    fn upper_bound(&self, depth: usize, remaining: usize) -> u64 {
        let h = &self.hists[depth];
        let comp = &self.shared.compositions[remaining];
        let limit = self.limits[depth];
        (0..=limit)
            .map(|lam| {
                (0..=lam).fold(0u64, |acc, v| {
                    acc.saturating_add(h[v].saturating_mul(comp[lam - v]))
                })
            })
            .max()
            .unwrap_or(0)
    }

    fn evaluate_leaf(&mut self) {
        let n = self.shared.n;
        self.result.examined += 1;
        #[cfg(test)]
        self.result.leaves.push(self.path.clone());
        let h = &self.hists[n];
        let lambda = self.limits[n];
        let below: u64 = h[..lambda].iter().sum();
        if below + h[lambda] < self.shared.k {
            // fewer than k sums exist
            return;
        }
        let m = h[lambda];
        if m < self.result.best {
            return;
        }
        if m > self.result.best {
            self.result.best = m;
            self.result.witnesses.clear();
        }
        let witness = self.witness(lambda as i64);
        let key: Vec<i64> = witness.rows().iter().flatten().copied().collect();
        self.result.witnesses.insert(key, witness);
        if self.result.witnesses.len() > WITNESS_CAP {
            self.result.witnesses.pop_last();
        }
    }

    /// The current leaf with entries above `λ_k` dropped, in canonical form.
    fn witness(&self, lambda: i64) -> SpectralMatrix {
        let family = self.shared.family;
        let rows = self
            .path
            .iter()
            .map(|&i| {
                family
                    .row(i)
                    .iter()
                    .copied()
                    .take_while(|&x| x <= lambda)
                    .collect()
            })
            .collect();
        SpectralMatrix::new(rows)
            .expect("trimmed rows stay valid")
            .normalize()
    }
}
