//! Named matrices and multi-row deletion witnesses.
//!
//! Every witness here is a harmonic matrix with a (possibly empty) set of
//! values removed from each row, so it can be realized at any prefix length.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::deletion::DeletionSpec;
use crate::error::{Error, Result};
use crate::matrix::SpectralMatrix;
use crate::spectrum::{enumerate_spectrum, Truncation};

/// Row `i` is `ℕ \ deleted[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowDeletions {
    deleted: Vec<BTreeSet<u64>>,
}

impl RowDeletions {
    pub fn new(deleted: Vec<BTreeSet<u64>>) -> Result<Self> {
        if deleted.is_empty() {
            return Err(Error::NoRows);
        }
        if deleted.iter().any(|s| s.contains(&0)) {
            return Err(Error::InvalidArgument(
                "the value 0 cannot be deleted".into(),
            ));
        }
        Ok(RowDeletions { deleted })
    }

    pub fn harmonic(n: usize) -> Self {
        RowDeletions {
            deleted: vec![BTreeSet::new(); n],
        }
    }

    fn from_lists(lists: &[&[u64]]) -> Self {
        RowDeletions::new(lists.iter().map(|l| l.iter().copied().collect()).collect())
            .expect("static witness lists are valid")
    }

    pub fn n_rows(&self) -> usize {
        self.deleted.len()
    }

    pub fn deleted(&self) -> &[BTreeSet<u64>] {
        &self.deleted
    }

    pub fn matrix(&self, len: usize) -> SpectralMatrix {
        assert!(len >= 1);
        let rows = self
            .deleted
            .iter()
            .map(|s| {
                (0u64..)
                    .filter(|v| !s.contains(v))
                    .take(len)
                    .map(|v| v as i64)
                    .collect()
            })
            .collect();
        SpectralMatrix::new(rows).expect("deletion rows are strictly increasing")
    }
}

impl From<&DeletionSpec> for RowDeletions {
    fn from(spec: &DeletionSpec) -> Self {
        let mut deleted = vec![BTreeSet::new(); spec.n()];
        deleted[spec.n() - 1] = spec.deleted().clone();
        RowDeletions { deleted }
    }
}

/// Matrices addressable by name on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedMatrix {
    /// `harmonic:N`
    Harmonic(usize),
    /// `harmonic:N/del:a,b,c`
    Deleted(DeletionSpec),
    /// Four rows, the last two without 1: `m(4) = 5`.
    CaseA4,
    /// Four rows `ℕ\{2}, ℕ\{1}, ℕ\{1,2}, ℕ\{1,2}`: `m(4) = 5`, every row perturbed.
    CaseB2_4,
    /// Four rows, the last two without 1 and 2 respectively: `m(11) = 12`.
    Blue11,
    /// Four rows, the last without 2 and 3: `m(31) = 26`.
    Green31,
    /// Four rows, the last two without 2 and 3 respectively: `m(31) = 26`.
    Green31TwoRow,
}

impl NamedMatrix {
    pub fn deletions(&self) -> RowDeletions {
        match self {
            NamedMatrix::Harmonic(n) => RowDeletions::harmonic(*n),
            NamedMatrix::Deleted(spec) => RowDeletions::from(spec),
            NamedMatrix::CaseA4 => RowDeletions::from_lists(&[&[], &[], &[1], &[1]]),
            NamedMatrix::CaseB2_4 => RowDeletions::from_lists(&[&[2], &[1], &[1, 2], &[1, 2]]),
            NamedMatrix::Blue11 => RowDeletions::from_lists(&[&[], &[], &[1], &[2]]),
            NamedMatrix::Green31 => RowDeletions::from_lists(&[&[], &[], &[], &[2, 3]]),
            NamedMatrix::Green31TwoRow => RowDeletions::from_lists(&[&[], &[], &[2], &[3]]),
        }
    }

    pub fn matrix(&self, len: usize) -> SpectralMatrix {
        self.deletions().matrix(len)
    }
}

impl FromStr for NamedMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidArgument(format!("matrix name `{s}`: {msg}"));
        match s {
            "caseA4" => return Ok(NamedMatrix::CaseA4),
            "caseB2-4" => return Ok(NamedMatrix::CaseB2_4),
            "blue11" => return Ok(NamedMatrix::Blue11),
            "green31" => return Ok(NamedMatrix::Green31),
            "green31-2row" => return Ok(NamedMatrix::Green31TwoRow),
            _ => {}
        }
        let rest = s
            .strip_prefix("harmonic:")
            .ok_or_else(|| bad("unknown name"))?;
        let (n_part, del_part) = match rest.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (rest, None),
        };
        let n: usize = n_part
            .parse()
            .map_err(|_| bad("N must be a positive integer"))?;
        if n == 0 {
            return Err(bad("N must be a positive integer"));
        }
        match del_part {
            None => Ok(NamedMatrix::Harmonic(n)),
            Some(d) => {
                let list = d
                    .strip_prefix("del:")
                    .ok_or_else(|| bad("expected `del:`"))?;
                let values = parse_value_list(list)?;
                Ok(NamedMatrix::Deleted(DeletionSpec::new(n, values)?))
            }
        }
    }
}

impl fmt::Display for NamedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedMatrix::Harmonic(n) => write!(f, "harmonic:{n}"),
            NamedMatrix::Deleted(spec) => {
                let vals: Vec<String> = spec.deleted().iter().map(u64::to_string).collect();
                write!(f, "harmonic:{}/del:{}", spec.n(), vals.join(","))
            }
            NamedMatrix::CaseA4 => f.write_str("caseA4"),
            NamedMatrix::CaseB2_4 => f.write_str("caseB2-4"),
            NamedMatrix::Blue11 => f.write_str("blue11"),
            NamedMatrix::Green31 => f.write_str("green31"),
            NamedMatrix::Green31TwoRow => f.write_str("green31-2row"),
        }
    }
}

/// Parses `a,b,c` into nonnegative integers; the empty string is the empty list.
pub fn parse_value_list(list: &str) -> Result<Vec<u64>> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidArgument(format!("`{t}` is not a nonnegative integer")))
        })
        .collect()
}

/// A stored matrix with the multiplicity it is claimed to reach.
#[derive(Debug, Clone)]
pub struct KnownWitness {
    pub id: &'static str,
    pub matrix: NamedMatrix,
    pub k: u64,
    pub multiplicity: u64,
}

/// The explicit four-row witnesses.
pub fn known_witnesses() -> Vec<KnownWitness> {
    let spec_a5 = DeletionSpec::new(4, [1]).expect("valid");
    vec![
        KnownWitness {
            id: "caseA4",
            matrix: NamedMatrix::CaseA4,
            k: 4,
            multiplicity: 5,
        },
        KnownWitness {
            id: "caseB2-4",
            matrix: NamedMatrix::CaseB2_4,
            k: 4,
            multiplicity: 5,
        },
        KnownWitness {
            id: "A5",
            matrix: NamedMatrix::Deleted(spec_a5),
            k: 5,
            multiplicity: 7,
        },
        KnownWitness {
            id: "blue11",
            matrix: NamedMatrix::Blue11,
            k: 11,
            multiplicity: 12,
        },
        KnownWitness {
            id: "green31",
            matrix: NamedMatrix::Green31,
            k: 31,
            multiplicity: 26,
        },
        KnownWitness {
            id: "green31-2row",
            matrix: NamedMatrix::Green31TwoRow,
            k: 31,
            multiplicity: 26,
        },
    ]
}

/// Best witness found for one labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyBound {
    pub k: u64,
    /// Running maximum over labellings `<= k`.
    pub bound: u64,
    /// A family member reaching `bound` at some labelling `<= k`.
    pub witness: RowDeletions,
}

/// Lower bounds for `k = 1..=k_max` from harmonic matrices whose last two
/// rows each lose at most `max_deleted` values from `1..=max_value`,
/// combined through monotonicity in `k`.
pub fn two_row_deletion_bounds(
    n: usize,
    k_max: u64,
    max_value: u64,
    max_deleted: usize,
) -> Result<Vec<FamilyBound>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "two-row deletions need N >= 2".into(),
        ));
    }
    if k_max == 0 {
        return Ok(Vec::new());
    }
    let subsets = subsets_up_to((1..=max_value).collect::<Vec<_>>().as_slice(), max_deleted);
    let mut direct: Vec<Option<(u64, RowDeletions)>> = vec![None; k_max as usize + 1];
    for (a, s_a) in subsets.iter().enumerate() {
        for s_b in &subsets[a..] {
            let mut deleted = vec![BTreeSet::new(); n];
            deleted[n - 2] = s_a.clone();
            deleted[n - 1] = s_b.clone();
            let fam = RowDeletions { deleted };
            let prefix =
                enumerate_spectrum(&fam.matrix(k_max as usize), k_max, Truncation::Strict)?;
            let mut first = 1u64;
            for level in prefix.entries() {
                for k in first..(first + level.multiplicity).min(k_max + 1) {
                    let slot = &mut direct[k as usize];
                    if slot.as_ref().is_none_or(|(m, _)| level.multiplicity > *m) {
                        *slot = Some((level.multiplicity, fam.clone()));
                    }
                }
                first += level.multiplicity;
            }
        }
    }
    let mut out = Vec::with_capacity(k_max as usize);
    let mut best: Option<(u64, RowDeletions)> = None;
    for (k, entry) in direct.into_iter().enumerate().skip(1) {
        if let Some((m, w)) = entry {
            if best.as_ref().is_none_or(|(b, _)| m > *b) {
                best = Some((m, w));
            }
        }
        let (bound, witness) = best.clone().expect("labelling 1 always has a witness");
        out.push(FamilyBound {
            k: k as u64,
            bound,
            witness,
        });
    }
    Ok(out)
}

fn subsets_up_to(values: &[u64], max_size: usize) -> Vec<BTreeSet<u64>> {
    let mut out = vec![BTreeSet::new()];
    let mut frontier = vec![(BTreeSet::new(), 0usize)];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for (set, from) in &frontier {
            for (i, &v) in values.iter().enumerate().skip(*from) {
                let mut s: BTreeSet<u64> = set.clone();
                s.insert(v);
                out.push(s.clone());
                next.push((s, i + 1));
            }
        }
        frontier = next;
    }
    out
}
