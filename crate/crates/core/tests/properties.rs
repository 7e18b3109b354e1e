use proptest::prelude::*;

use sepmult::{
    brute_force_spectrum, count_representations, enumerate_spectrum, harmonic_kmin,
    harmonic_level_of, harmonic_multiplicity, m2_max, mbar3, mbar3_skipped_values, multiplicity_at,
    within_rank_bound, DeletionSpec, HarmonicModel, RankQuery, SpectralMatrix, Truncation,
};

fn row(max_len: usize, max_entry: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::btree_set(0..=max_entry, 1..=max_len)
        .prop_map(|s| s.into_iter().collect())
}

fn matrix() -> impl Strategy<Value = SpectralMatrix> {
    proptest::collection::vec(row(5, 12), 1..=4)
        .prop_map(|rows| SpectralMatrix::new(rows).expect("sets are strictly increasing"))
}

fn sequence(a: &SpectralMatrix) -> Vec<(u64, u64)> {
    let total = a.tuple_count();
    let prefix = enumerate_spectrum(a, total, Truncation::Acknowledged).unwrap();
    (1..=total)
        .map(|k| {
            let e = prefix.at(k).unwrap();
            (k, e.multiplicity)
        })
        .collect()
}

proptest! {
    #[test]
    fn enumeration_matches_cartesian_product(a in matrix(), k in 1u64..200) {
        let full = brute_force_spectrum(&a);
        let k = k.min(a.tuple_count());
        let p = enumerate_spectrum(&a, k, Truncation::Acknowledged).unwrap();
        prop_assert_eq!(p, full.through_rank(k));
    }

    #[test]
    fn normalization_keeps_multiplicities(a in matrix()) {
        prop_assert_eq!(sequence(&a), sequence(&a.normalize()));
        prop_assert!(a.normalize().is_canonical());
        prop_assert_eq!(a.normalize(), a.normalize().normalize());
    }

    #[test]
    fn permutation_and_scaling_keep_multiplicities(a in matrix(), c in 1i64..5, seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..a.n_rows()).collect();
        order.rotate_left((seed % a.n_rows() as u64) as usize);
        prop_assert_eq!(sequence(&a), sequence(&a.permuted(&order)));
        prop_assert_eq!(sequence(&a), sequence(&a.scaled(c).unwrap()));
    }

    #[test]
    fn rank_bound_holds(a in matrix()) {
        for (k, m) in sequence(&a) {
            prop_assert!(within_rank_bound(m, k, a.n_rows()), "k={} m={}", k, m);
        }
    }

    #[test]
    fn truncating_to_k_is_safe(rows in proptest::collection::vec(row(9, 20), 1..=3), k in 1u64..9) {
        let a = SpectralMatrix::new(rows).unwrap();
        prop_assume!(a.min_row_len() as u64 >= k);
        let long = enumerate_spectrum(&a, k, Truncation::Strict).unwrap();
        let short = enumerate_spectrum(&a.truncated(k as usize), k, Truncation::Strict).unwrap();
        prop_assert_eq!(long.through_rank(k).entries().to_vec(), short.through_rank(k).entries().to_vec());
        prop_assert_eq!(long.at(k), short.at(k));
    }

    #[test]
    fn representation_count_matches_oracle(a in matrix(), lam in 0i64..50) {
        let full = brute_force_spectrum(&a);
        let expected = full.entries().iter().find(|l| l.value == lam).map_or(0, |l| l.multiplicity);
        prop_assert_eq!(count_representations(&a, lam), expected);
    }

    #[test]
    fn json_and_text_round_trip(a in matrix()) {
        prop_assert_eq!(SpectralMatrix::parse(&a.to_json()).unwrap(), a.clone());
        prop_assert_eq!(SpectralMatrix::parse(&a.to_text()).unwrap(), a.clone());
        let canon = a.normalize();
        prop_assert_eq!(SpectralMatrix::from_json(&canon.to_json()).unwrap(), canon);
    }

    #[test]
    fn deletion_calculus_matches_enumeration(
        n in 2usize..=4,
        deleted in proptest::collection::btree_set(1u64..=6, 0..=3),
        j in 0u64..=8,
    ) {
        let spec = DeletionSpec::new(n, deleted.iter().copied()).unwrap();
        let len = (j + 1) as usize + deleted.len();
        let a = spec.matrix(len);
        let mu = spec.multiplicity(j).unwrap();
        prop_assert_eq!(mu, count_representations(&a, j as i64));
        let kmin = spec.kmin(j).unwrap();
        let at = multiplicity_at(&a, RankQuery::new(kmin).unwrap(), Truncation::Acknowledged).unwrap();
        prop_assert_eq!(at.value, j as i64);
        prop_assert_eq!(at.first_label, kmin);
    }
}

#[test]
fn harmonic_prefix_consistency() {
    for n in 1..=4 {
        let model = HarmonicModel::new(n).unwrap();
        for k in 1..=60u64 {
            let a = model.matrix(k as usize);
            let e = multiplicity_at(&a, RankQuery::new(k).unwrap(), Truncation::Strict).unwrap();
            let j = harmonic_level_of(n, k).unwrap();
            assert_eq!(e.value, j as i64);
            assert_eq!(e.multiplicity, harmonic_multiplicity(n, j).unwrap());
        }
    }
}

#[test]
fn telescoping_and_empty_deletion() {
    for n in 1..=6 {
        for j in 0..30 {
            let gap = harmonic_kmin(n, j + 1).unwrap() - harmonic_kmin(n, j).unwrap();
            assert_eq!(gap, harmonic_multiplicity(n, j).unwrap());
            if n >= 2 {
                let s = DeletionSpec::new(n, []).unwrap();
                assert_eq!(
                    s.multiplicity(j).unwrap(),
                    harmonic_multiplicity(n, j).unwrap()
                );
            }
        }
    }
}

#[test]
fn mbar3_structure() {
    let last = harmonic_kmin(3, 8).unwrap();
    let values: Vec<u64> = (1..=last).map(mbar3).collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
    for j in 0..8 {
        let k = harmonic_kmin(3, j).unwrap();
        assert_eq!(mbar3(k), harmonic_multiplicity(3, j).unwrap());
    }
    let image: std::collections::BTreeSet<u64> = values.iter().copied().collect();
    let top = harmonic_multiplicity(3, 8).unwrap();
    let mut missing: Vec<u64> = (1..=top).filter(|v| !image.contains(v)).collect();
    missing.sort();
    let mut expected = vec![2];
    expected.extend(mbar3_skipped_values(7));
    assert_eq!(missing, expected);
}

#[test]
fn jump_identities() {
    for j in 1..10u64 {
        let k = harmonic_kmin(3, j + 1).unwrap() - 1;
        assert_eq!(mbar3(k), harmonic_multiplicity(3, j + 1).unwrap() - 2);
    }
    for j in 3..10u64 {
        let s = DeletionSpec::new(3, [j - 2]).unwrap();
        assert_eq!(s.kmin(j).unwrap(), harmonic_kmin(3, j).unwrap() - 3);
        assert_eq!(
            s.multiplicity(j).unwrap(),
            harmonic_multiplicity(3, j).unwrap() - 3
        );
    }
}

#[test]
fn m2_is_nondecreasing() {
    let values: Vec<u64> = (1..=5000).map(m2_max).collect();
    assert!(values.windows(2).all(|w| w[0] <= w[1]));
    assert!(values.windows(2).all(|w| w[1] - w[0] <= 1));
}
