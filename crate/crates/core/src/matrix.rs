//! Spectral matrices: `N` rows of strictly increasing integers.
//!
//! The spectrum of a matrix is the multiset of all sums taking exactly one
//! entry from every row. Rows are finite prefixes of (conceptually infinite)
//! sequences; see [`crate::spectrum`] for how short rows are handled.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated spectral matrix.
///
/// Invariants: at least one row, every row nonempty and strictly increasing,
/// and `max |entry| * N` fits an `i64`, so every cross-row sum is exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpectralMatrix {
    rows: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawMatrix {
    rows: Vec<Vec<i64>>,
}

/// Checks the row invariants and builds a [`SpectralMatrix`].
pub fn validate(rows: Vec<Vec<i64>>) -> Result<SpectralMatrix> {
    SpectralMatrix::new(rows)
}

impl SpectralMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::NoRows);
        }
        let mut max_abs: u64 = 0;
        for (r, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return Err(Error::EmptyRow { row: r });
            }
            for (i, pair) in row.windows(2).enumerate() {
                if pair[0] >= pair[1] {
                    return Err(Error::NonIncreasingRow {
                        row: r,
                        index: i + 1,
                        prev: pair[0],
                        next: pair[1],
                    });
                }
            }
            for &x in row {
                max_abs = max_abs.max(x.unsigned_abs());
            }
        }
        let fits = max_abs
            .checked_mul(rows.len() as u64)
            .is_some_and(|total| total <= i64::MAX as u64);
        if !fits {
            return Err(Error::OverflowRisk {
                max_abs,
                rows: rows.len(),
            });
        }
        Ok(SpectralMatrix { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<i64>> {
        self.rows
    }

    /// Number of rows, `N`.
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn min_row_len(&self) -> usize {
        self.rows.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Sum of the first entry of every row: the bottom of the spectrum.
    pub fn ground_value(&self) -> i64 {
        self.rows.iter().map(|r| r[0]).sum()
    }

    /// Number of index tuples, i.e. the size of the finite spectrum.
    /// Saturates at `u64::MAX`.
    pub fn tuple_count(&self) -> u64 {
        self.rows
            .iter()
            .fold(1u64, |acc, r| acc.saturating_mul(r.len() as u64))
    }

    /// Canonical representative of the shift/permutation/scaling orbit:
    /// every row starts at 0, rows are sorted lexicographically, and the
    /// nonzero entries have gcd 1.
    pub fn normalize(&self) -> SpectralMatrix {
        let mut rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&x| x - row[0]).collect())
            .collect();
        let g = rows
            .iter()
            .flatten()
            .filter(|&&x| x != 0)
            .fold(0u64, |g, &x| gcd(g, x.unsigned_abs()));
        if g > 1 {
            let g = g as i64;
            for x in rows.iter_mut().flatten() {
                *x /= g;
            }
        }
        rows.sort();
        SpectralMatrix { rows }
    }

    pub fn is_canonical(&self) -> bool {
        self.normalize() == *self
    }

    /// Multiplies every entry by a positive constant.
    pub fn scaled(&self, c: i64) -> Result<SpectralMatrix> {
        if c <= 0 {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be positive, got {c}"
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| x.checked_mul(c).ok_or(Error::Overflow("scaled matrix")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SpectralMatrix::new(rows)
    }

    /// Rows reordered so that row `i` of the result is row `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> SpectralMatrix {
        assert_eq!(order.len(), self.rows.len(), "permutation length mismatch");
        SpectralMatrix {
            rows: order.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Every row cut to at most `len` entries.
    pub fn truncated(&self, len: usize) -> SpectralMatrix {
        assert!(len >= 1, "rows cannot be truncated to zero entries");
        SpectralMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r[..r.len().min(len)].to_vec())
                .collect(),
        }
    }

    /// Parses the text format (one comma-separated row per line, `#` comments)
    /// or, when the input starts with `{`, the JSON form `{"rows": [...]}`.
    pub fn parse(input: &str) -> Result<SpectralMatrix> {
        if input.trim_start().starts_with('{') {
            Self::from_json(input)
        } else {
            Self::from_text(input)
        }
    }

    pub fn from_text(input: &str) -> Result<SpectralMatrix> {
        let mut rows = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let content = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            let content = content.trim();
            if content.is_empty() {
                continue;
            }
            let row = content
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    tok.parse::<i64>().map_err(|_| Error::Parse {
                        line: lineno + 1,
                        message: format!("`{tok}` is not an integer"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        SpectralMatrix::new(rows)
    }

    pub fn from_json(input: &str) -> Result<SpectralMatrix> {
        let raw: RawMatrix = serde_json::from_str(input).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        SpectralMatrix::new(raw.rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(i64::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for SpectralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
