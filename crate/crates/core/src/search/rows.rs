use crate::harmonic::binomial;

/// Every candidate row: `0` followed by a strictly increasing selection from
/// `1..=max_entry`, at most `max_len` entries in total, in lexicographic order.
#[derive(Debug, Clone)]
pub(crate) struct RowFamily {
    rows: Vec<Vec<i64>>,
    /// Bit `v` set when `v` is an entry.
    masks: Vec<u64>,
}

impl RowFamily {
    pub(crate) fn new(max_entry: i64, max_len: usize) -> Self {
        assert!((0..=62).contains(&max_entry) && max_len >= 1);
        let mut rows = Vec::new();
        let mut current = vec![0i64];
        extend(&mut current, max_entry, max_len, &mut rows);
        let masks = rows
            .iter()
            .map(|r| r.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect();
        RowFamily { rows, masks }
    }

    pub(crate) fn len(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub(crate) fn mask(&self, i: usize) -> u64 {
        self.masks[i]
    }
}

// Pre-order DFS emits rows in lexicographic order: a prefix precedes its
// extensions, and extensions are tried in increasing next entry.
fn extend(current: &mut Vec<i64>, max_entry: i64, max_len: usize, out: &mut Vec<Vec<i64>>) {
    out.push(current.clone());
    if current.len() == max_len {
        return;
    }
    let last = *current.last().expect("rows start at 0");
    for next in last + 1..=max_entry {
        current.push(next);
        extend(current, max_entry, max_len, out);
        current.pop();
    }
}

/// `Σ_{i < L} C(B, i)` rows, saturating.
pub(crate) fn row_count(max_entry: u64, max_len: u64) -> u128 {
    let mut total: u128 = 0;
    for i in 0..max_len.min(max_entry + 1) {
        let c = binomial(max_entry, i).map_or(u128::MAX, u128::from);
        total = total.saturating_add(c);
    }
    total
}

/// Number of multisets of size `n` drawn from `r` kinds, saturating.
pub(crate) fn multiset_count(r: u128, n: u64) -> u128 {
    if r == 0 {
        return 0;
    }
    // C(r + n - 1, n) built incrementally; each partial product is an exact binomial
    let mut acc: u128 = 1;
    for i in 0..n as u128 {
        let Some(num) = acc.checked_mul(r + i) else {
            return u128::MAX;
        };
        acc = num / (i + 1);
    }
    acc
}
