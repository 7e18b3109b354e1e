//! Fixtures shared by the criterion benches.

use sepmult::{HarmonicModel, NamedMatrix, SearchBounds, SpectralMatrix};

/// Harmonic matrix with `n` rows of `len` entries.
pub fn harmonic(n: usize, len: usize) -> SpectralMatrix {
    HarmonicModel::new(n).expect("n >= 1").matrix(len)
}

/// A named witness matrix cut to `len` entries per row.
pub fn named(name: &str, len: usize) -> SpectralMatrix {
    name.parse::<NamedMatrix>()
        .expect("fixture names are valid")
        .matrix(len)
}

/// Rows with irregular gaps, deterministic in `seed`.
pub fn irregular(n: usize, len: usize, seed: u64) -> SpectralMatrix {
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    let rows = (0..n)
        .map(|_| {
            let mut v = 0i64;
            (0..len)
                .map(|i| {
                    if i > 0 {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        v += 1 + (state % 4) as i64;
                    }
                    v
                })
                .collect()
        })
        .collect();
    SpectralMatrix::new(rows).expect("rows are strictly increasing")
}

/// Search families small enough to time repeatedly.
pub fn search_cases() -> Vec<(&'static str, SearchBounds)> {
    [
        ("N2_k7_B6", 2, 7, 6),
        ("N3_k6_B4", 3, 6, 4),
        ("N4_k5_B3", 4, 5, 3),
        ("N4_k8_B4", 4, 8, 4),
    ]
    .into_iter()
    .map(|(id, n, k, b)| {
        (
            id,
            SearchBounds::new(n, k, b, k as usize).expect("valid bounds"),
        )
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(harmonic(3, 4).n_rows(), 3);
        assert_eq!(named("green31", 6).n_rows(), 4);
        let a = irregular(4, 10, 7);
        assert_eq!(a, irregular(4, 10, 7));
        assert_eq!(a.min_row_len(), 10);
        assert_eq!(search_cases().len(), 4);
    }
}
