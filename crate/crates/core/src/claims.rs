//! Every stored numeric fact, recomputed.
//!
//! Each claim is an integer expectation paired with a recomputation through
//! the library. Search-backed claims are the slow part and can be left out.

use serde::Serialize;

use crate::deletion::DeletionSpec;
use crate::error::Result;
use crate::harmonic::{
    harmonic_kmin, harmonic_level_of, harmonic_multiplicity, m2_max, mbar3, mbar3_skipped_values,
    mbar3_witness, HarmonicModel,
};
use crate::search::{search_table, BoundsPolicy, SearchOptions};
use crate::spectrum::{
    count_representations, enumerate_spectrum, multiplicity_at, RankQuery, Truncation,
};
use crate::table::single_deletion_table;
use crate::witnesses::{known_witnesses, two_row_deletion_bounds};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub claim_id: String,
    pub expected: u64,
    pub computed: u64,
    pub pass: bool,
}

impl VerifyOutcome {
    pub fn new(claim_id: impl Into<String>, expected: u64, computed: u64) -> Self {
        VerifyOutcome {
            claim_id: claim_id.into(),
            expected,
            computed,
            pass: expected == computed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimOptions {
    /// Include claims recomputed by exhaustive search.
    pub include_search: bool,
    pub threads: usize,
}

impl Default for ClaimOptions {
    fn default() -> Self {
        ClaimOptions {
            include_search: true,
            threads: 0,
        }
    }
}

/// The three-row lower bound `m̄` for `j = 0..=6`, block by block.
pub const MBAR3_BLOCKS: [&[u64]; 7] = [
    &[1],
    &[3, 3, 4],
    &[6, 6, 6, 7, 7, 8],
    &[10, 10, 10, 10, 11, 11, 11, 12, 12, 13],
    &[15, 15, 15, 15, 15, 16, 16, 16, 16, 17, 17, 17, 18, 18, 19],
    &[
        21, 21, 21, 21, 21, 21, 22, 22, 22, 22, 22, 23, 23, 23, 23, 24, 24, 24, 25, 25, 26,
    ],
    &[
        28, 28, 28, 28, 28, 28, 28, 29, 29, 29, 29, 29, 29, 30, 30, 30, 30, 30, 31, 31, 31, 31, 32,
        32, 32, 33, 33, 34,
    ],
];

/// Four-row lower bounds for `k = 1..=59` from explicit matrices.
pub const NUMERICS4: [u64; 59] = [
    1, //
    4, 4, 5, 7, //
    10, 10, 10, 10, 10, 12, 14, 14, 14, 17, //
    20, 20, 20, 20, 20, 20, 20, 21, 21, 23, 25, 25, 25, 25, 25, 26, 29, 29, 29, 32, //
    35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 37, 37, 39, 41, 41, 41, 41, 41, 41, 41, 41, 41,
];

/// Four-row single-deletion lower bound for `j = 0..=4`.
pub const SINGLE_DELETION4: [&[u64]; 5] = [
    &[1],
    &[4, 4, 4, 7],
    &[10, 10, 10, 10, 10, 10, 14, 14, 14, 17],
    &[
        20, 20, 20, 20, 20, 20, 20, 20, 20, 20, 25, 25, 25, 25, 25, 25, 29, 29, 29, 32,
    ],
    &[
        35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 41, 41, 41, 41, 41, 41, 41, 41,
        41,
    ],
];

/// Recomputes every claim, in a fixed order.
pub fn run_claims(options: &ClaimOptions) -> Result<Vec<VerifyOutcome>> {
    let mut out = Vec::new();
    closed_forms(&mut out)?;
    mbar3_claims(&mut out)?;
    jump_claims(&mut out)?;
    deletion4_claims(&mut out)?;
    witness_claims(&mut out)?;
    numerics4_claims(&mut out)?;
    if options.include_search {
        search_claims(&mut out, options.threads)?;
    }
    Ok(out)
}

fn closed_forms(out: &mut Vec<VerifyOutcome>) -> Result<()> {
    out.push(VerifyOutcome::new(
        "harmonic.mu3.j4",
        15,
        harmonic_multiplicity(3, 4)?,
    ));
    out.push(VerifyOutcome::new(
        "harmonic.mu4.j2",
        10,
        harmonic_multiplicity(4, 2)?,
    ));
    out.push(VerifyOutcome::new(
        "harmonic.kmin3.j3",
        11,
        harmonic_kmin(3, 3)?,
    ));
    out.push(VerifyOutcome::new(
        "harmonic.kmin4.j3",
        16,
        harmonic_kmin(4, 3)?,
    ));
    out.push(VerifyOutcome::new(
        "harmonic.level3.k11",
        3,
        harmonic_level_of(3, 11)?,
    ));
    out.push(VerifyOutcome::new(
        "harmonic.level3.k10",
        2,
        harmonic_level_of(3, 10)?,
    ));
    let a4 = HarmonicModel::new(4)?.matrix(6);
    let m = multiplicity_at(&a4, RankQuery::new(6)?, Truncation::Strict)?.multiplicity;
    out.push(VerifyOutcome::new("harmonic4.m6", 10, m));
    let a3 = HarmonicModel::new(3)?.matrix(5);
    let m = multiplicity_at(&a3, RankQuery::new(5)?, Truncation::Strict)?.multiplicity;
    out.push(VerifyOutcome::new("harmonic3.m5", 6, m));
    for (k, expected) in [(1, 1), (3, 2), (4, 3), (7, 4), (11, 5)] {
        out.push(VerifyOutcome::new(
            format!("n2.formula.k{k}"),
            expected,
            m2_max(k),
        ));
    }
    Ok(())
}

fn mbar3_claims(out: &mut Vec<VerifyOutcome>) -> Result<()> {
    let mut k = 1u64;
    for (j, block) in MBAR3_BLOCKS.iter().enumerate() {
        out.push(VerifyOutcome::new(
            format!("mbar3.kmin.j{j}"),
            k,
            harmonic_kmin(3, j as u64)?,
        ));
        for &expected in *block {
            out.push(VerifyOutcome::new(
                format!("mbar3.k{k}"),
                expected,
                mbar3(k),
            ));
            k += 1;
        }
    }
    // the skipped values never occur
    let last = harmonic_kmin(3, 8)?;
    for v in mbar3_skipped_values(6) {
        let hits = (1..=last).filter(|&k| mbar3(k) == v).count() as u64;
        out.push(VerifyOutcome::new(format!("mbar3.skips.{v}"), 0, hits));
    }
    // deletion witnesses reach m̄ up to k_min(6)
    let a_len = harmonic_kmin(3, 6)?;
    for k in 1..=a_len {
        let spec = mbar3_witness(k);
        let a = spec.matrix(k as usize);
        let m = multiplicity_at(&a, RankQuery::new(k)?, Truncation::Strict)?.multiplicity;
        out.push(VerifyOutcome::new(
            format!("mbar3.witness.k{k}"),
            mbar3(k),
            m,
        ));
    }
    Ok(())
}

fn jump_claims(out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for j in 1..=6u64 {
        let k = harmonic_kmin(3, j + 1)? - 1;
        out.push(VerifyOutcome::new(
            format!("jump3.first.j{}", j + 1),
            harmonic_multiplicity(3, j + 1)? - 2,
            mbar3(k),
        ));
    }
    for j in 2..=7u64 {
        let s = DeletionSpec::new(3, [j - 1])?;
        out.push(VerifyOutcome::new(
            format!("jump3.del1.kmin.j{j}"),
            harmonic_kmin(3, j)? - 1,
            s.kmin(j)?,
        ));
        out.push(VerifyOutcome::new(
            format!("jump3.del1.mu.j{j}"),
            harmonic_multiplicity(3, j)? - 2,
            s.multiplicity(j)?,
        ));
    }
    for j in 3..=7u64 {
        let s = DeletionSpec::new(3, [j - 2])?;
        out.push(VerifyOutcome::new(
            format!("jump3.del2.kmin.j{j}"),
            harmonic_kmin(3, j)? - 3,
            s.kmin(j)?,
        ));
        out.push(VerifyOutcome::new(
            format!("jump3.del2.mu.j{j}"),
            harmonic_multiplicity(3, j)? - 3,
            s.multiplicity(j)?,
        ));
    }
    // four rows: deleting j-1 removes μ_3(1) = 3 tuples and one labelling
    for j in 2..=6u64 {
        let s = DeletionSpec::new(4, [j - 1])?;
        out.push(VerifyOutcome::new(
            format!("jump4.del1.mu.j{j}"),
            harmonic_multiplicity(4, j)? - harmonic_multiplicity(3, 1)?,
            s.multiplicity(j)?,
        ));
        out.push(VerifyOutcome::new(
            format!("jump4.del1.kmin.j{j}"),
            harmonic_kmin(4, j)? - 1,
            s.kmin(j)?,
        ));
    }
    Ok(())
}

fn deletion4_claims(out: &mut Vec<VerifyOutcome>) -> Result<()> {
    let s = DeletionSpec::new(4, [2, 3])?;
    let a = s.matrix(32);
    let prefix = enumerate_spectrum(&a, 31, Truncation::Strict)?;
    for (j, expected) in [1u64, 4, 9, 16, 26].into_iter().enumerate() {
        let j = j as u64;
        out.push(VerifyOutcome::new(
            format!("deletion4.mu.j{j}"),
            expected,
            s.multiplicity(j)?,
        ));
        out.push(VerifyOutcome::new(
            format!("deletion4.count.j{j}"),
            expected,
            count_representations(&a, j as i64),
        ));
    }
    for (j, expected) in [1u64, 2, 6, 15, 31].into_iter().enumerate() {
        out.push(VerifyOutcome::new(
            format!("deletion4.kmin{expected}"),
            expected,
            s.kmin(j as u64)?,
        ));
    }
    let at31 = prefix.at(31).map_or(0, |e| e.multiplicity);
    out.push(VerifyOutcome::new("deletion4.m31", 26, at31));
    let first_of_four = prefix.at(31).map_or(0, |e| e.first_label);
    out.push(VerifyOutcome::new("deletion4.label31", 31, first_of_four));
    Ok(())
}

fn witness_claims(out: &mut Vec<VerifyOutcome>) -> Result<()> {
    for w in known_witnesses() {
        let a = w.matrix.matrix(w.k as usize);
        let m = multiplicity_at(&a, RankQuery::new(w.k)?, Truncation::Strict)?.multiplicity;
        out.push(VerifyOutcome::new(
            format!("witness.{}.k{}", w.id, w.k),
            w.multiplicity,
            m,
        ));
    }
    Ok(())
}

fn numerics4_claims(out: &mut Vec<VerifyOutcome>) -> Result<()> {
    let bounds = two_row_deletion_bounds(4, NUMERICS4.len() as u64, 5, 2)?;
    for (b, &expected) in bounds.iter().zip(NUMERICS4.iter()) {
        out.push(VerifyOutcome::new(
            format!("numerics4.k{}", b.k),
            expected,
            b.bound,
        ));
    }
    let table = single_deletion_table(4, 4)?;
    for (row, expected) in table.iter().zip(SINGLE_DELETION4.iter()) {
        for (i, (&got, &want)) in row.values.iter().zip(expected.iter()).enumerate() {
            let k = row.k_min + i as u64;
            out.push(VerifyOutcome::new(format!("single4.k{k}"), want, got));
        }
        if row.k_min + (expected.len() as u64) <= NUMERICS4.len() as u64 {
            out.push(VerifyOutcome::new(
                format!("single4.len.j{}", row.j),
                expected.len() as u64,
                row.values.len() as u64,
            ));
        }
    }
    Ok(())
}

fn search_claims(out: &mut Vec<VerifyOutcome>, threads: usize) -> Result<()> {
    let options = SearchOptions {
        threads,
        check_saturation: false,
        ..SearchOptions::default()
    };
    let n2 = search_table(2, 15, &BoundsPolicy::fixed_entry(6), &options)?;
    for r in &n2 {
        let k = r.bounds.k();
        out.push(VerifyOutcome::new(
            format!("n2.search.k{k}"),
            m2_max(k),
            r.best_multiplicity,
        ));
    }
    for (n, expected) in [(3usize, [1u64, 3, 3, 4, 6]), (4, [1, 4, 4, 5, 7])] {
        let reports = search_table(n, 5, &BoundsPolicy::fixed_entry(3), &options)?;
        for (r, want) in reports.iter().zip(expected) {
            out.push(VerifyOutcome::new(
                format!("n{n}.small.m{}", r.bounds.k()),
                want,
                r.best_multiplicity,
            ));
        }
    }
    Ok(())
}
