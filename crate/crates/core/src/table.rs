//! Per-labelling values grouped into harmonic level blocks, and their
//! text, CSV and JSON renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harmonic::{mbar3, single_deletion_bound, HarmonicModel};
use crate::search::SearchReport;

/// The values at labellings `k_min(j) .. k_min(j+1)` of the `N`-row
/// harmonic matrix. The final block of a table may be cut short.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MbarTableRow {
    pub j: u64,
    pub k_min: u64,
    pub values: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(TableFormat::Text),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown format `{other}` (expected text, json or csv)"
            ))),
        }
    }
}

/// Splits `values` (the entry for `k` at index `k-1`) along the level blocks
/// of the `N`-row harmonic matrix.
pub fn group_by_levels(n: usize, values: &[u64]) -> Result<Vec<MbarTableRow>> {
    let model = HarmonicModel::new(n)?;
    let mut rows = Vec::new();
    let mut j = 0;
    let mut start = 0usize;
    while start < values.len() {
        let k_min = model.kmin(j)?;
        let next = usize::try_from(model.kmin(j + 1)?).unwrap_or(usize::MAX);
        let end = (next - 1).min(values.len());
        rows.push(MbarTableRow {
            j,
            k_min,
            values: values[start..end].to_vec(),
        });
        start = end;
        j += 1;
    }
    Ok(rows)
}

/// Blocks `j = 0..=j_max` of the three-row lower bound `m̄`.
pub fn mbar3_table(j_max: u64) -> Result<Vec<MbarTableRow>> {
    single_deletion_table(3, j_max)
}

/// Blocks `j = 0..=j_max` of [`single_deletion_bound`] for `N` rows.
pub fn single_deletion_table(n: usize, j_max: u64) -> Result<Vec<MbarTableRow>> {
    let model = HarmonicModel::new(n)?;
    let last = model.kmin(j_max + 1)? - 1;
    let values = (1..=last)
        .map(|k| {
            if n == 3 {
                Ok(mbar3(k))
            } else {
                single_deletion_bound(n, k)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    group_by_levels(n, &values)
}

/// Search maxima for consecutive labellings `1..`, grouped by level.
pub fn search_table_rows(n: usize, reports: &[SearchReport]) -> Result<Vec<MbarTableRow>> {
    let values: Vec<u64> = reports.iter().map(|r| r.best_multiplicity).collect();
    group_by_levels(n, &values)
}

#[derive(Serialize)]
struct FlatEntry {
    j: u64,
    k: u64,
    value: u64,
}

fn flat(rows: &[MbarTableRow]) -> impl Iterator<Item = FlatEntry> + '_ {
    rows.iter().flat_map(|row| {
        row.values
            .iter()
            .enumerate()
            .map(move |(i, &value)| FlatEntry {
                j: row.j,
                k: row.k_min + i as u64,
                value,
            })
    })
}

/// Text: one `j | k_min | v v v` line per block. CSV and JSON are flat
/// with one `(j, k, value)` record per labelling.
pub fn emit_table(rows: &[MbarTableRow], format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Text => {
            for row in rows {
                let values: Vec<String> = row.values.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "{} | {} | {}", row.j, row.k_min, values.join(" "));
            }
        }
        TableFormat::Csv => {
            out.push_str("j,k,value\n");
            for e in flat(rows) {
                let _ = writeln!(out, "{},{},{}", e.j, e.k, e.value);
            }
        }
        TableFormat::Json => {
            let entries: Vec<FlatEntry> = flat(rows).collect();
            out = serde_json::to_string(&entries).expect("table serialization cannot fail");
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_row_blocks() {
        let rows = mbar3_table(6).unwrap();
        assert_eq!(rows.len(), 7);
        for row in &rows {
            assert_eq!(row.values.len() as u64, (row.j + 1) * (row.j + 2) / 2);
        }
        let text = emit_table(&rows, TableFormat::Text);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "0 | 1 | 1");
        assert_eq!(lines[1], "1 | 2 | 3 3 4");
        assert_eq!(
            lines[4],
            "4 | 21 | 15 15 15 15 15 16 16 16 16 17 17 17 18 18 19"
        );
        assert!(lines[6].starts_with("6 | 57 | 28 28 "));
    }

    #[test]
    fn four_row_single_deletions() {
        let rows = single_deletion_table(4, 2).unwrap();
        let text = emit_table(&rows, TableFormat::Text);
        assert_eq!(
            text,
            "0 | 1 | 1\n1 | 2 | 4 4 4 7\n2 | 6 | 10 10 10 10 10 10 14 14 14 17\n"
        );
    }

    #[test]
    fn partial_last_block() {
        let rows = group_by_levels(4, &[1, 4, 4, 5, 7, 10]).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(
            rows[2],
            MbarTableRow {
                j: 2,
                k_min: 6,
                values: vec![10]
            }
        );
    }

    #[test]
    fn flat_formats() {
        let rows = mbar3_table(1).unwrap();
        assert_eq!(
            emit_table(&rows, TableFormat::Csv),
            "j,k,value\n0,1,1\n1,2,3\n1,3,3\n1,4,4\n"
        );
        let json: serde_json::Value =
            serde_json::from_str(&emit_table(&rows, TableFormat::Json)).unwrap();
        assert_eq!(json[3], serde_json::json!({"j": 1, "k": 4, "value": 4}));
    }

    #[test]
    fn empty_table() {
        assert_eq!(emit_table(&[], TableFormat::Text), "");
        assert_eq!(emit_table(&[], TableFormat::Csv), "j,k,value\n");
        assert_eq!(emit_table(&[], TableFormat::Json), "[]\n");
        assert!(group_by_levels(3, &[]).unwrap().is_empty());
    }

    #[test]
    fn formats_parse() {
        assert_eq!("csv".parse::<TableFormat>().unwrap(), TableFormat::Csv);
        assert!("xml".parse::<TableFormat>().is_err());
    }
}
