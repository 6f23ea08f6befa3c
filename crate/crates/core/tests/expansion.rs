mod common;

use common::{as_coords, naive_expand, random_set};
use idealcheck::exponent::monomial_count_bound;
use idealcheck::suites::rng;
use idealcheck::{
    expand_product, expand_product_with, is_subset_with_witness, linear_form, shifted_down_set, Error,
    ExpandOptions, ExponentVector, IndexSubset, MonomialSet,
};
use proptest::prelude::*;
use rand::Rng;

fn small_factors() -> impl Strategy<Value = (usize, Vec<Vec<Vec<u32>>>)> {
    (1usize..=3).prop_flat_map(|n| {
        let term = proptest::collection::vec(0u32..=3, n);
        let factor = proptest::collection::vec(term, 1..=3);
        (Just(n), proptest::collection::vec(factor, 0..=4))
    })
}

/// Rescales every term of each factor to the factor's first degree, so the
/// generated factors are homogeneous.
fn homogenize(n: usize, raw: &[Vec<Vec<u32>>]) -> Vec<MonomialSet> {
    raw.iter()
        .map(|terms| {
            let d: u32 = terms[0].iter().sum();
            let vectors = terms.iter().map(|t| {
                let mut c = t.clone();
                let s: u32 = c.iter().sum();
                if s < d {
                    c[0] += d - s;
                } else {
                    let mut extra = s - d;
                    for x in c.iter_mut() {
                        let cut = extra.min(*x);
                        *x -= cut;
                        extra -= cut;
                    }
                }
                ExponentVector::new(c)
            });
            MonomialSet::new(n, d, vectors).unwrap()
        })
        .collect()
}

proptest! {
    #[test]
    fn product_is_order_independent((n, raw) in small_factors(), seed in any::<u64>()) {
        let factors = homogenize(n, &raw);
        let mut shuffled = factors.clone();
        let mut r = rng(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, r.gen_range(0..=i));
        }
        prop_assert_eq!(expand_product(n, &factors).unwrap(), expand_product(n, &shuffled).unwrap());
    }

    #[test]
    fn product_is_homogeneous_and_bounded((n, raw) in small_factors()) {
        let factors = homogenize(n, &raw);
        let out = expand_product(n, &factors).unwrap();
        let degree: u32 = factors.iter().map(|f| f.degree()).sum();
        prop_assert_eq!(out.degree(), degree);
        prop_assert!(out.is_homogeneous());
        prop_assert!(out.to_vectors().iter().all(|v| v.degree() == degree as u64));
        prop_assert!(out.len() as u128 <= monomial_count_bound(n, degree));
    }

    #[test]
    fn product_matches_nested_loops((n, raw) in small_factors()) {
        let factors = homogenize(n, &raw);
        let terms: Vec<_> = factors.iter().map(|f| f.to_vectors()).collect();
        prop_assert_eq!(as_coords(&expand_product(n, &factors).unwrap()), naive_expand(n, &terms));
    }

    #[test]
    fn shifted_down_matches_definition((n, raw) in small_factors()) {
        let set = expand_product(n, &homogenize(n, &raw)).unwrap();
        let expected: std::collections::BTreeSet<Vec<u32>> = set
            .to_vectors()
            .iter()
            .flat_map(|v| {
                (0..n).filter(|&i| v.coords()[i] > 0).map(move |i| {
                    let mut c = v.coords().to_vec();
                    c[i] -= 1;
                    c
                })
            })
            .collect();
        prop_assert_eq!(as_coords(&shifted_down_set(&set).unwrap()), expected);
    }
}

#[test]
fn seeded_instances_match_nested_loops() {
    let mut r = rng(2024);
    for _ in 0..200 {
        let n = r.gen_range(1..=3);
        let count = r.gen_range(0..=4);
        let factors: Vec<_> = (0..count).map(|_| random_set(&mut r, n, 3, 3)).collect();
        let terms: Vec<_> = factors.iter().map(|f| f.to_vectors()).collect();
        assert_eq!(as_coords(&expand_product(n, &factors).unwrap()), naive_expand(n, &terms));
    }
}

#[test]
fn linear_form_products_match_nested_loops() {
    let mut r = rng(99);
    for _ in 0..50 {
        let n = r.gen_range(2..=4);
        let factors: Vec<_> = (0..r.gen_range(1..=5))
            .map(|_| {
                let members: Vec<usize> = (1..=n).filter(|_| r.gen_bool(0.5)).collect();
                let members = if members.is_empty() { vec![1] } else { members };
                linear_form(&IndexSubset::new(members, n).unwrap(), n).unwrap()
            })
            .collect();
        let terms: Vec<_> = factors.iter().map(|f| f.to_vectors()).collect();
        assert_eq!(as_coords(&expand_product(n, &factors).unwrap()), naive_expand(n, &terms));
    }
}

#[test]
fn worker_count_does_not_change_the_product() {
    let n = 5;
    let factors: Vec<_> = (1..=n)
        .flat_map(|k| idealcheck::k_subsets(n, k).unwrap())
        .map(|s| linear_form(&s, n).unwrap())
        .take(20)
        .collect();
    let one = expand_product_with(n, &factors, &ExpandOptions { workers: 1, ..Default::default() }).unwrap();
    for workers in [2, 3, 8] {
        let many = expand_product_with(n, &factors, &ExpandOptions { workers, ..Default::default() }).unwrap();
        assert_eq!(one, many);
    }
}

#[test]
fn expansion_over_the_cap_is_a_structured_error() {
    let n = 5;
    let factors: Vec<_> = idealcheck::k_subsets(n, 2)
        .unwrap()
        .iter()
        .map(|s| linear_form(s, n).unwrap())
        .collect();
    let options = ExpandOptions { workers: 1, memory_cap_bytes: 1024 };
    match expand_product_with(n, &factors, &options) {
        Err(Error::MemoryCap { cap_bytes, requested_bytes, .. }) => {
            assert_eq!(cap_bytes, 1024);
            assert!(requested_bytes > 0);
        }
        other => panic!("expected a memory cap error, got {other:?}"),
    }
}

#[test]
fn subset_witnesses_are_exactly_the_missing_elements() {
    let mut r = rng(5);
    for _ in 0..100 {
        let n = r.gen_range(1..=3);
        let d = r.gen_range(0..=3);
        let p = MonomialSet::new(n, d, (0..6).map(|_| common::random_vector(&mut r, n, d))).unwrap();
        let q = MonomialSet::new(n, d, (0..6).map(|_| common::random_vector(&mut r, n, d))).unwrap();
        let check = is_subset_with_witness(&p, &q, usize::MAX).unwrap();
        let missing: Vec<_> = p.to_vectors().into_iter().filter(|v| !q.contains(v)).collect();
        assert_eq!(check.holds, missing.is_empty());
        assert_eq!(check.counterexamples, missing);
    }
}
