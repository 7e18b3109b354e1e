//! Closed forms for the isotropic harmonic matrix (every row `0, 1, 2, ...`)
//! and the lower-bound sequences built from it.
//!
//! The spectrum of the `N`-row harmonic matrix is `ℕ`; the eigenvalue `j`
//! has multiplicity `C(N+j-1, N-1)` and first appears at labelling
//! `1 + C(N+j-1, N)`. All integer quantities are exact.

use crate::deletion::DeletionSpec;
use crate::error::{Error, Result};
use crate::matrix::SpectralMatrix;

/// Exact binomial coefficient, `Err(Overflow)` when it exceeds `u64`.
pub fn binomial(n: u64, r: u64) -> Result<u64> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    // C(n, i) grows with i up to n/2, so an overflowing intermediate means
    // the result overflows too.
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

/// `c(ℓ) = ℓ(ℓ+1)/2`.
pub fn triangular(l: u64) -> u64 {
    l * (l + 1) / 2
}

/// The harmonic matrix family for a fixed number of rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarmonicModel {
    n: usize,
}

impl HarmonicModel {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        Ok(HarmonicModel { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `μ_N(j) = C(N+j-1, N-1)`.
    pub fn multiplicity(&self, j: u64) -> Result<u64> {
        let n = self.n as u64;
        let top = (n - 1)
            .checked_add(j)
            .ok_or(Error::Overflow("harmonic multiplicity"))?;
        binomial(top, n - 1)
    }

    /// Minimal labelling of the eigenvalue `j`: `1 + C(N+j-1, N)`.
    pub fn kmin(&self, j: u64) -> Result<u64> {
        let n = self.n as u64;
        let top = (n - 1)
            .checked_add(j)
            .ok_or(Error::Overflow("harmonic k_min"))?;
        binomial(top, n)?
            .checked_add(1)
            .ok_or(Error::Overflow("harmonic k_min"))
    }

    /// The eigenvalue at labelling `k`: the largest `j` with `kmin(j) <= k`.
    pub fn level_of(&self, k: u64) -> u64 {
        assert!(k >= 1, "labellings start at 1");
        let fits = |j: u64| self.kmin(j).is_ok_and(|km| km <= k);
        let mut lo = 0u64; // fits
        let mut hi = 1u64; // probe until it does not fit
        while fits(hi) {
            lo = hi;
            hi = hi.saturating_mul(2);
            if hi == u64::MAX {
                break;
            }
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if fits(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// `m(k)` for the harmonic matrix.
    pub fn multiplicity_at_rank(&self, k: u64) -> u64 {
        self.multiplicity(self.level_of(k))
            .expect("the multiplicity at an addressable labelling fits u64")
    }

    /// `μ_N(j)` divided by its leading-order prediction
    /// `(N!)^(1-1/N) / (N-1)! * (kmin(j)-1)^(1-1/N)`; tends to 1 like `1 + O(1/j)`.
    pub fn asymptotic_ratio(&self, j: u64) -> f64 {
        assert!(j >= 1, "the asymptotic ratio needs j >= 1");
        let n = self.n as i32;
        let exponent = 1.0 - 1.0 / n as f64;
        let ln_fact = |m: i32| (1..=m).map(|i| (i as f64).ln()).sum::<f64>();
        let mu = self.multiplicity(j).expect("μ_N(j) fits u64") as f64;
        let below = (self.kmin(j).expect("k_min fits u64") - 1) as f64;
        let ln_pred = exponent * ln_fact(n) - ln_fact(n - 1) + exponent * below.ln();
        (mu.ln() - ln_pred).exp()
    }

    /// Rows `0..len`, `N` times.
    pub fn matrix(&self, len: usize) -> SpectralMatrix {
        assert!(len >= 1);
        SpectralMatrix::new(vec![(0..len as i64).collect(); self.n])
            .expect("harmonic rows are valid")
    }
}

fn model(n: usize) -> Result<HarmonicModel> {
    HarmonicModel::new(n)
}

pub fn harmonic_multiplicity(n: usize, j: u64) -> Result<u64> {
    model(n)?.multiplicity(j)
}

pub fn harmonic_kmin(n: usize, j: u64) -> Result<u64> {
    model(n)?.kmin(j)
}

pub fn harmonic_level_of(n: usize, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(model(n)?.level_of(k))
}

pub fn asymptotic_ratio(n: usize, j: u64) -> Result<f64> {
    if j == 0 {
        return Err(Error::InvalidArgument("j must be at least 1".into()));
    }
    Ok(model(n)?.asymptotic_ratio(j))
}

/// Exact maximal multiplicity at labelling `k` for two rows:
/// `⌊(1 + √(8k-7)) / 2⌋`, via the integer square root.
pub fn m2_max(k: u64) -> u64 {
    assert!(k >= 1, "labellings start at 1");
    let root = (8 * k as u128 - 7).isqrt();
    root.div_ceil(2) as u64
}

/// Position of `k` in the three-row lower-bound construction: `k` lies in
/// `I_{j,ℓ} = [kmin(j) + c(j+1) - c(j+1-ℓ), kmin(j) + c(j+1) - c(j-ℓ))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mbar3Interval {
    pub j: u64,
    pub l: u64,
    /// First labelling of the interval.
    pub start: u64,
    /// One past the last labelling of the interval.
    pub end: u64,
}

pub fn mbar3_interval(k: u64) -> Mbar3Interval {
    let h = HarmonicModel { n: 3 };
    let j = h.level_of(k);
    let kmin = h.kmin(j).expect("k_min(j) <= k fits");
    let top = triangular(j + 1);
    for l in 0..=j {
        let start = kmin + top - triangular(j + 1 - l);
        let end = kmin + top - if l == j { 0 } else { triangular(j - l) };
        if (start..end).contains(&k) {
            return Mbar3Interval { j, l, start, end };
        }
    }
    unreachable!("the intervals I_(j,l) partition [kmin(j), kmin(j+1))")
}

/// `m̄(k) = μ_3(j) + ℓ` for `k ∈ I_{j,ℓ}`.
pub fn mbar3(k: u64) -> u64 {
    let iv = mbar3_interval(k);
    HarmonicModel { n: 3 }
        .multiplicity(iv.j)
        .expect("μ_3(j) fits")
        + iv.l
}

/// Values `(j+1)(j+4)/2` for `j = 1..=j_max`; with the value 2 they are
/// exactly the positive integers `m̄` never takes.
pub fn mbar3_skipped_values(j_max: u64) -> Vec<u64> {
    (1..=j_max).map(|j| (j + 1) * (j + 4) / 2).collect()
}

/// A last-row deletion of the three-row harmonic matrix whose `k`-th
/// eigenvalue has multiplicity exactly `m̄(k)`.
///
/// For `k ∈ I_{j,ℓ}` with `ℓ >= 1`, deleting the value `ℓ` from the last row
/// moves the first labelling of the eigenvalue `j+1` down to the start of the
/// interval and lowers its multiplicity to `μ_3(j) + ℓ`. For `ℓ = 0` the
/// harmonic matrix itself works.
pub fn mbar3_witness(k: u64) -> DeletionSpec {
    let iv = mbar3_interval(k);
    if iv.l == 0 {
        DeletionSpec::new(3, []).expect("valid")
    } else {
        DeletionSpec::new(3, [iv.l]).expect("valid")
    }
}

/// Lower bound on the maximal multiplicity at labelling `k` obtained from
/// the harmonic matrix and every single-value deletion on its last row,
/// combined through monotonicity in `k`.
///
/// Deleting value `J - d` (`1 <= d < J`) lowers the first labelling of the
/// eigenvalue `J` by `kmin_{N-1}(d) - 1` and its multiplicity by `μ_{N-1}(d)`.
/// For `N = 3` this reproduces [`mbar3`].
pub fn single_deletion_bound(n: usize, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::ZeroRank);
    }
    let full = model(n)?;
    let j = full.level_of(k);
    let mut best = full.multiplicity(j)?;
    if n < 2 {
        return Ok(best);
    }
    let reduced = model(n - 1)?;
    for level in 2..=j + 1 {
        let kmin = full.kmin(level)?;
        let mu = full.multiplicity(level)?;
        for d in 1..level {
            let first = kmin - (reduced.kmin(d)? - 1);
            if first <= k {
                best = best.max(mu - reduced.multiplicity(d)?);
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(5, 0).unwrap(), 1);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(67, 33).unwrap(), 14_226_520_737_620_288_370);
        assert!(binomial(68, 34).is_err());
        assert_eq!(binomial(u64::MAX, 1).unwrap(), u64::MAX);
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_multiplicity(3, 4).unwrap(), 15);
        assert_eq!(harmonic_multiplicity(4, 2).unwrap(), 10);
        for n in 1..8 {
            assert_eq!(harmonic_multiplicity(n, 0).unwrap(), 1);
            assert_eq!(harmonic_kmin(n, 0).unwrap(), 1);
            assert_eq!(harmonic_level_of(n, 1).unwrap(), 0);
        }
        assert_eq!(harmonic_kmin(3, 3).unwrap(), 11);
        assert_eq!(harmonic_kmin(4, 3).unwrap(), 16);
        assert_eq!(harmonic_level_of(3, 11).unwrap(), 3);
        assert_eq!(harmonic_level_of(3, 10).unwrap(), 2);
        assert!(harmonic_multiplicity(0, 1).is_err());
        assert!(harmonic_multiplicity(40, 1_000_000).is_err());
    }

    #[test]
    fn three_row_values_listed_for_levels_zero_to_four() {
        let h = HarmonicModel::new(3).unwrap();
        let mu: Vec<u64> = (0..5).map(|j| h.multiplicity(j).unwrap()).collect();
        let kmin: Vec<u64> = (0..5).map(|j| h.kmin(j).unwrap()).collect();
        assert_eq!(mu, [1, 3, 6, 10, 15]);
        assert_eq!(kmin, [1, 2, 5, 11, 21]);
    }

    #[test]
    fn level_of_single_row_and_huge_ranks() {
        assert_eq!(harmonic_level_of(1, 1_000).unwrap(), 999);
        assert_eq!(harmonic_level_of(1, u64::MAX).unwrap(), u64::MAX - 1);
        let j = harmonic_level_of(2, u64::MAX).unwrap();
        assert!(harmonic_kmin(2, j).is_ok());
        assert!(harmonic_kmin(2, j + 1).is_err());
    }

    #[test]
    fn m2_examples() {
        assert_eq!(m2_max(1), 1);
        assert_eq!(m2_max(4), 3);
        // ⌊(1+√17)/2⌋ = ⌊2.56⌋
        assert_eq!(m2_max(3), 2);
        assert_eq!(m2_max(7), 4);
        // huge k stays exact
        let k = u64::MAX;
        let m = m2_max(k) as u128;
        assert!(m * (m - 1) / 2 < k as u128);
        assert!((m + 1) * m / 2 >= k as u128);
    }

    #[test]
    fn m2_matches_triangular_inversion() {
        // m2_max(k) is the largest m with m(m-1)/2 + 1 <= k
        for k in 1..5000u64 {
            let mut m = 1;
            while (m + 1) * m / 2 < k {
                m += 1;
            }
            assert_eq!(m2_max(k), m, "k = {k}");
        }
    }

    #[test]
    fn mbar3_examples() {
        assert_eq!(mbar3(1), 1);
        assert_eq!(mbar3(5), 6);
        assert_eq!(mbar3(20), 13);
        let iv = mbar3_interval(4);
        assert_eq!((iv.j, iv.l, iv.start, iv.end), (1, 1, 4, 5));
    }

    #[test]
    fn skipped_values() {
        assert_eq!(mbar3_skipped_values(0), Vec::<u64>::new());
        assert_eq!(mbar3_skipped_values(1), [5]);
        assert_eq!(mbar3_skipped_values(3), [5, 9, 14]);
    }

    #[test]
    fn single_deletion_bound_three_rows_is_mbar3() {
        for k in 1..400 {
            assert_eq!(single_deletion_bound(3, k).unwrap(), mbar3(k), "k = {k}");
        }
    }

    #[test]
    fn single_deletion_bound_four_rows_first_blocks() {
        let got: Vec<u64> = (1..=15)
            .map(|k| single_deletion_bound(4, k).unwrap())
            .collect();
        assert_eq!(got, [1, 4, 4, 4, 7, 10, 10, 10, 10, 10, 10, 14, 14, 14, 17]);
        assert_eq!(single_deletion_bound(1, 9).unwrap(), 1);
    }

    #[test]
    fn asymptotics() {
        for j in [1, 5, 100] {
            assert_eq!(asymptotic_ratio(1, j).unwrap(), 1.0);
        }
        let r = asymptotic_ratio(3, 100).unwrap();
        assert!((0.97..=1.03).contains(&r), "{r}");
        assert!(asymptotic_ratio(3, 0).is_err());
    }
}
