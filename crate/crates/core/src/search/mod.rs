//! Exhaustive search for the largest multiplicity `m(k, A)` over a bounded
//! family of canonical integer matrices.
//!
//! The family holds every matrix whose rows are `0` followed by a strictly
//! increasing selection from `1..=B`, with at most `L` entries per row, rows
//! taken as a multiset (lexicographically nondecreasing). Rows shorter than
//! `k` are exhausted: any real continuation of them by values above `λ_k`
//! leaves the first `k` labellings and the multiplicity of `λ_k` untouched,
//! so every reported value is a certified lower bound for the maximal
//! multiplicity at `k`.
//!
//! The space is partitioned by the first row. Each partition is searched
//! sequentially with its own best-so-far bound, so the report (including the
//! examined and pruned counters) does not depend on the worker count.

mod rows;
mod worker;

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SpectralMatrix;
use crate::spectrum::{enumerate_spectrum, multiplicity_at, RankQuery, Truncation};

use rows::{multiset_count, row_count, RowFamily};
use worker::{PartitionResult, Shared, Worker, WITNESS_CAP};

/// Largest entry bound the row bitmasks can represent.
pub const MAX_ENTRY_LIMIT: i64 = 62;

/// Default refusal threshold for [`estimate_space`].
pub const DEFAULT_BUDGET: u128 = 2_000_000_000;

/// The searched family: `N` rows, labelling `k`, entries in `[0, B]`,
/// at most `L` entries per row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    #[serde(rename = "N")]
    n: usize,
    k: u64,
    #[serde(rename = "B")]
    max_entry: i64,
    #[serde(rename = "L")]
    max_row_len: usize,
}

impl SearchBounds {
    pub fn new(n: usize, k: u64, max_entry: i64, max_row_len: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidBounds("N must be at least 1".into()));
        }
        if k == 0 {
            return Err(Error::InvalidBounds("k must be at least 1".into()));
        }
        if !(1..=MAX_ENTRY_LIMIT).contains(&max_entry) {
            return Err(Error::InvalidBounds(format!(
                "B must lie in 1..={MAX_ENTRY_LIMIT}, got {max_entry}"
            )));
        }
        if max_row_len == 0 || max_row_len as u64 > k {
            return Err(Error::InvalidBounds(format!(
                "L must lie in 1..=k ({k}), got {max_row_len}"
            )));
        }
        Ok(SearchBounds {
            n,
            k,
            max_entry,
            max_row_len,
        })
    }

    /// `B = max(k-1, 1)`, `L = k`.
    pub fn with_defaults(n: usize, k: u64) -> Result<Self> {
        let b = (k.saturating_sub(1)).clamp(1, MAX_ENTRY_LIMIT as u64) as i64;
        let l = usize::try_from(k).map_err(|_| Error::InvalidBounds("k too large".into()))?;
        SearchBounds::new(n, k, b, l)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn max_entry(&self) -> i64 {
        self.max_entry
    }

    pub fn max_row_len(&self) -> usize {
        self.max_row_len
    }

    fn with_max_entry(&self, max_entry: i64) -> Result<Self> {
        SearchBounds::new(self.n, self.k, max_entry, self.max_row_len)
    }
}

/// Knobs that do not change the searched family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
    pub budget: u128,
    /// Re-run with `B + 1` and label an unchanged maximum `saturated`.
    pub check_saturation: bool,
    /// Report `examined/estimate` on standard error.
    pub progress: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: 0,
            budget: DEFAULT_BUDGET,
            check_saturation: true,
            progress: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    /// Certified lower bound only.
    LowerBound,
    /// Unchanged when the entry bound grows by one.
    Saturated,
}

impl SearchStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SearchStatus::LowerBound => "lower_bound",
            SearchStatus::Saturated => "saturated",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub bounds: SearchBounds,
    pub best_multiplicity: u64,
    /// Canonical maximizers with entries above `λ_k` dropped, in
    /// lexicographic order of their flattened rows; at most 16.
    pub witnesses: Vec<SpectralMatrix>,
    pub matrices_examined: u64,
    pub pruned: u64,
    pub wall_time: Duration,
    pub status: SearchStatus,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    #[serde(rename = "N")]
    n: usize,
    k: u64,
    bounds: BoundsJson,
    best: u64,
    status: SearchStatus,
    witnesses: Vec<&'a [Vec<i64>]>,
    examined: u64,
    pruned: u64,
    wall_ms: u128,
}

#[derive(Serialize)]
struct BoundsJson {
    #[serde(rename = "B")]
    b: i64,
    #[serde(rename = "L")]
    l: usize,
}

impl SearchReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        let json = ReportJson {
            n: self.bounds.n,
            k: self.bounds.k,
            bounds: BoundsJson {
                b: self.bounds.max_entry,
                l: self.bounds.max_row_len,
            },
            best: self.best_multiplicity,
            status: self.status,
            witnesses: self.witnesses.iter().map(|w| w.rows()).collect(),
            examined: self.matrices_examined,
            pruned: self.pruned,
            wall_ms: self.wall_time.as_millis(),
        };
        serde_json::to_value(json).expect("report serialization cannot fail")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

/// Upper bound on the number of matrices in the family: multisets of `N`
/// rows drawn from `Σ_{i<L} C(B, i)` candidate rows. Saturates.
pub fn estimate_space(bounds: &SearchBounds) -> u128 {
    let rows = row_count(bounds.max_entry as u64, bounds.max_row_len as u64);
    multiset_count(rows, bounds.n as u64)
}

/// Maximum of `m(k, A)` over the family described by `bounds`.
pub fn search_max(bounds: &SearchBounds, options: &SearchOptions) -> Result<SearchReport> {
    let started = Instant::now();
    let raw = run_search(bounds, options)?;
    let mut status = SearchStatus::LowerBound;
    if options.check_saturation && bounds.max_entry < MAX_ENTRY_LIMIT {
        let wider = bounds.with_max_entry(bounds.max_entry + 1)?;
        if estimate_space(&wider) <= options.budget {
            let quiet = SearchOptions {
                progress: false,
                ..*options
            };
            if run_search(&wider, &quiet)?.best == raw.best {
                status = SearchStatus::Saturated;
            }
        }
    }
    Ok(SearchReport {
        bounds: *bounds,
        best_multiplicity: raw.best,
        witnesses: raw.witnesses.into_values().collect(),
        matrices_examined: raw.examined,
        pruned: raw.pruned,
        wall_time: started.elapsed(),
        status,
    })
}

/// How `search_table` picks bounds for each `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BoundsPolicy {
    /// Fixed `B`; `None` means `max(k-1, 1)`.
    pub max_entry: Option<i64>,
    /// Fixed `L`, clamped to `k`; `None` means `L = k`.
    pub max_row_len: Option<usize>,
}

impl BoundsPolicy {
    pub fn fixed_entry(max_entry: i64) -> Self {
        BoundsPolicy {
            max_entry: Some(max_entry),
            max_row_len: None,
        }
    }

    pub fn bounds_for(&self, n: usize, k: u64) -> Result<SearchBounds> {
        let defaults = SearchBounds::with_defaults(n, k)?;
        let b = self.max_entry.unwrap_or(defaults.max_entry);
        let l = self
            .max_row_len
            .map_or(defaults.max_row_len, |l| l.min(defaults.max_row_len));
        SearchBounds::new(n, k, b, l)
    }
}

/// [`search_max`] for `k = 1..=k_max`.
pub fn search_table(
    n: usize,
    k_max: u64,
    policy: &BoundsPolicy,
    options: &SearchOptions,
) -> Result<Vec<SearchReport>> {
    (1..=k_max)
        .map(|k| search_max(&policy.bounds_for(n, k)?, options))
        .collect()
}

/// Recomputes `m(k, A)` and compares it with `claimed`.
pub fn verify_witness(
    a: &SpectralMatrix,
    k: u64,
    claimed: u64,
    truncation: Truncation,
) -> Result<bool> {
    let at = multiplicity_at(a, RankQuery::new(k)?, truncation)?;
    Ok(at.multiplicity == claimed)
}

fn run_search(bounds: &SearchBounds, options: &SearchOptions) -> Result<PartitionResult> {
    let estimate = estimate_space(bounds);
    if estimate > options.budget {
        return Err(Error::EstimateTooLarge {
            estimate,
            budget: options.budget,
        });
    }
    let family = RowFamily::new(bounds.max_entry, bounds.max_row_len);
    let seed = seed_multiplicity(bounds)?;
    let shared = Shared::new(&family, bounds.n, bounds.k, bounds.max_entry as usize, seed);

    // first rows that agree below the root limit give equivalent partitions
    let (_, root_limit) = shared.root();
    let key_mask = Shared::low_mask(root_limit);
    let mut seen = HashSet::new();
    let firsts: Vec<usize> = (0..family.len())
        .filter(|&i| seen.insert(family.mask(i) & key_mask))
        .collect();
    let skipped = (family.len() - firsts.len()) as u64;

    let examined_so_far = AtomicU64::new(0);
    let done = AtomicUsize::new(0);
    let search_partition = |&first: &usize| {
        let result = Worker::new(&shared).run(first);
        if options.progress {
            let examined =
                examined_so_far.fetch_add(result.examined, Ordering::Relaxed) + result.examined;
            let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
            eprintln!(
                "progress: {examined}/{estimate} matrices ({:.2}%), partition {finished}/{}",
                100.0 * examined as f64 / estimate.max(1) as f64,
                firsts.len()
            );
        }
        result
    };

    let partials: Vec<PartitionResult> = if options.threads == 1 {
        firsts.iter().map(search_partition).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        pool.install(|| firsts.par_iter().map(search_partition).collect())
    };

    Ok(merge(partials, skipped))
}

/// Largest `m(k)` among family members built from the harmonic matrix and
/// its single last-row deletions, cut to the entry and length bounds.
fn seed_multiplicity(bounds: &SearchBounds) -> Result<u64> {
    let (b, l) = (bounds.max_entry, bounds.max_row_len);
    let harmonic: Vec<i64> = (0..=b).take(l).collect();
    let mut best = 0;
    for deleted in std::iter::once(None).chain((1..=b).map(Some)) {
        let mut rows = vec![harmonic.clone(); bounds.n];
        if let Some(d) = deleted {
            rows[bounds.n - 1] = (0..=b).filter(|&v| v != d).take(l).collect();
        }
        let a = SpectralMatrix::new(rows)?;
        let prefix = enumerate_spectrum(&a, bounds.k, Truncation::Acknowledged)?;
        if let Some(at) = prefix.at(bounds.k) {
            best = best.max(at.multiplicity);
        }
    }
    Ok(best)
}

fn merge(partials: Vec<PartitionResult>, skipped: u64) -> PartitionResult {
    let best = partials.iter().map(|p| p.best).max().unwrap_or(0);
    let mut witnesses = BTreeMap::new();
    let mut examined = 0;
    let mut pruned = skipped;
    for p in partials {
        examined += p.examined;
        pruned += p.pruned;
        if p.best == best {
            witnesses.extend(p.witnesses);
        }
    }
    while witnesses.len() > WITNESS_CAP {
        witnesses.pop_last();
    }
    PartitionResult {
        best,
        witnesses,
        examined,
        pruned,
        #[cfg(test)]
        leaves: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SearchOptions {
        SearchOptions {
            threads: 1,
            check_saturation: false,
            ..SearchOptions::default()
        }
    }

    fn best(n: usize, k: u64, b: i64, l: usize) -> SearchReport {
        search_max(&SearchBounds::new(n, k, b, l).unwrap(), &quick()).unwrap()
    }

    /// Every canonical-order multiset, evaluated without any pruning.
    fn exhaustive(bounds: &SearchBounds) -> (u64, usize) {
        let family = RowFamily::new(bounds.max_entry, bounds.max_row_len);
        let mut best = 0;
        let mut count = 0;
        let mut idx = vec![0usize; bounds.n];
        loop {
            count += 1;
            let rows = idx.iter().map(|&i| family.row(i).to_vec()).collect();
            let a = SpectralMatrix::new(rows).unwrap();
            let p = enumerate_spectrum(&a, bounds.k, Truncation::Acknowledged).unwrap();
            if let Some(at) = p.at(bounds.k) {
                best = best.max(at.multiplicity);
            }
            // next nondecreasing index tuple
            let mut pos = bounds.n;
            loop {
                if pos == 0 {
                    return (best, count);
                }
                pos -= 1;
                if idx[pos] + 1 < family.len() {
                    let v = idx[pos] + 1;
                    for slot in &mut idx[pos..] {
                        *slot = v;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn bounds_validation() {
        assert!(SearchBounds::new(0, 3, 2, 2).is_err());
        assert!(SearchBounds::new(2, 0, 2, 1).is_err());
        assert!(SearchBounds::new(2, 3, 0, 2).is_err());
        assert!(SearchBounds::new(2, 3, 63, 2).is_err());
        assert!(SearchBounds::new(2, 3, 2, 4).is_err());
        assert!(SearchBounds::new(2, 3, 2, 0).is_err());
        let d = SearchBounds::with_defaults(3, 5).unwrap();
        assert_eq!((d.max_entry(), d.max_row_len()), (4, 5));
        let d = SearchBounds::with_defaults(3, 1).unwrap();
        assert_eq!((d.max_entry(), d.max_row_len()), (1, 1));
    }

    #[test]
    fn estimate_examples() {
        let one = SearchBounds::new(1, 3, 2, 3).unwrap();
        assert_eq!(estimate_space(&one), 4);
        let two = SearchBounds::new(2, 3, 2, 3).unwrap();
        let (_, count) = exhaustive(&two);
        assert_eq!(estimate_space(&two), count as u128);
        assert_eq!(count, 10);
        let three = SearchBounds::new(3, 5, 3, 5).unwrap();
        let (_, count) = exhaustive(&three);
        assert_eq!(estimate_space(&three), count as u128);
        assert_eq!(count, 120);
    }

    #[test]
    fn small_maxima() {
        assert_eq!(best(2, 7, 6, 7).best_multiplicity, 4);
        assert_eq!(best(3, 4, 3, 4).best_multiplicity, 4);
        assert_eq!(best(4, 5, 3, 5).best_multiplicity, 7);
        assert_eq!(best(1, 6, 5, 6).best_multiplicity, 1);
    }

    #[test]
    fn m2_formula_agrees_with_search() {
        for k in 1..=10 {
            let b = best(2, k, 5, k as usize);
            assert_eq!(b.best_multiplicity, crate::harmonic::m2_max(k), "k = {k}");
        }
    }

    #[test]
    fn pruned_search_matches_unpruned() {
        for (n, k, b) in [
            (2, 6, 4),
            (3, 5, 3),
            (3, 7, 3),
            (3, 6, 4),
            (4, 4, 2),
            (4, 6, 3),
        ] {
            let bounds = SearchBounds::new(n, k, b, k as usize).unwrap();
            let (expected, _) = exhaustive(&bounds);
            let got = search_max(&bounds, &quick()).unwrap();
            assert_eq!(got.best_multiplicity, expected, "N={n} k={k} B={b}");
        }
    }

    #[test]
    fn witnesses_are_canonical_and_reach_best() {
        let report = best(3, 4, 3, 4);
        assert!(!report.witnesses.is_empty());
        assert!(report.witnesses.len() <= WITNESS_CAP);
        let keys: Vec<Vec<i64>> = report
            .witnesses
            .iter()
            .map(|w| w.rows().iter().flatten().copied().collect())
            .collect();
        assert!(keys.windows(2).all(|p| p[0] < p[1]));
        for w in &report.witnesses {
            assert!(w.is_canonical());
            assert!(
                verify_witness(w, 4, report.best_multiplicity, Truncation::Acknowledged).unwrap()
            );
        }
        let expected = SpectralMatrix::new(vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 2]]).unwrap();
        assert!(report.witnesses.contains(&expected));
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let bounds = SearchBounds::new(4, 7, 4, 7).unwrap();
        let base = search_max(&bounds, &quick()).unwrap();
        for threads in [2, 3, 8] {
            let opts = SearchOptions { threads, ..quick() };
            let r = search_max(&bounds, &opts).unwrap();
            assert_eq!(r.best_multiplicity, base.best_multiplicity);
            assert_eq!(r.witnesses, base.witnesses);
            assert_eq!(r.matrices_examined, base.matrices_examined);
            assert_eq!(r.pruned, base.pruned);
        }
    }

    #[test]
    fn examined_leaves_are_not_permutations_or_shifts() {
        let bounds = SearchBounds::new(3, 6, 4, 6).unwrap();
        let family = RowFamily::new(4, 6);
        let shared = Shared::new(&family, 3, 6, 4, 0);
        let mut leaves = Vec::new();
        for first in 0..family.len() {
            leaves.extend(Worker::new(&shared).run(first).leaves);
        }
        let mut seen = HashSet::new();
        for leaf in &leaves {
            assert!(leaf.windows(2).all(|w| w[0] <= w[1]));
            let mut rows: Vec<Vec<i64>> = leaf.iter().map(|&i| family.row(i).to_vec()).collect();
            assert!(rows.iter().all(|r| r[0] == 0));
            rows.sort();
            assert!(seen.insert(rows), "duplicate multiset");
        }
        assert!(leaves.len() as u128 <= estimate_space(&bounds));
    }

    #[test]
    fn budget_gate() {
        let bounds = SearchBounds::new(4, 20, 19, 20).unwrap();
        let opts = SearchOptions {
            budget: 1000,
            ..quick()
        };
        assert!(matches!(
            search_max(&bounds, &opts),
            Err(Error::EstimateTooLarge { .. })
        ));
    }

    #[test]
    fn saturation_status() {
        let bounds = SearchBounds::new(3, 5, 3, 5).unwrap();
        let opts = SearchOptions {
            check_saturation: true,
            ..quick()
        };
        let r = search_max(&bounds, &opts).unwrap();
        assert_eq!(r.best_multiplicity, 6);
        assert_eq!(r.status, SearchStatus::Saturated);
        let r = search_max(&SearchBounds::new(3, 5, 1, 5).unwrap(), &opts).unwrap();
        assert_eq!(r.status, SearchStatus::LowerBound);
    }

    #[test]
    fn report_json_shape() {
        let r = best(3, 4, 3, 4);
        let v = r.to_json_value();
        assert_eq!(v["N"], 3);
        assert_eq!(v["k"], 4);
        assert_eq!(v["bounds"]["B"], 3);
        assert_eq!(v["bounds"]["L"], 4);
        assert_eq!(v["best"], 4);
        assert_eq!(v["status"], "lower_bound");
        assert!(v["witnesses"][0].is_array());
        assert!(v["examined"].is_u64());
        assert!(v["pruned"].is_u64());
        assert!(v["wall_ms"].is_u64());
    }

    #[test]
    fn table_policy() {
        let reports = search_table(3, 5, &BoundsPolicy::fixed_entry(3), &quick()).unwrap();
        let got: Vec<u64> = reports.iter().map(|r| r.best_multiplicity).collect();
        assert_eq!(got, [1, 3, 3, 4, 6]);
        assert_eq!(reports[0].bounds.max_row_len(), 1);
    }
}
