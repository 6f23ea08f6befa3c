#![allow(dead_code)]

use std::collections::BTreeSet;

use idealcheck::{ExponentVector, MonomialIdeal, MonomialSet};
use rand::Rng;

pub fn random_vector(rng: &mut impl Rng, n_vars: usize, degree: u32) -> ExponentVector {
    let mut coords = vec![0u32; n_vars];
    for _ in 0..degree {
        coords[rng.gen_range(0..n_vars)] += 1;
    }
    ExponentVector::new(coords)
}

pub fn random_set(rng: &mut impl Rng, n_vars: usize, max_degree: u32, max_terms: usize) -> MonomialSet {
    let degree = rng.gen_range(0..=max_degree);
    let terms = rng.gen_range(1..=max_terms);
    let vectors: Vec<_> = (0..terms).map(|_| random_vector(rng, n_vars, degree)).collect();
    MonomialSet::new(n_vars, degree, vectors).unwrap()
}

pub fn random_ideal(rng: &mut impl Rng, n_vars: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    let gens = rng.gen_range(1..=max_gens);
    let generators: Vec<_> = (0..gens)
        .map(|_| ExponentVector::new((0..n_vars).map(|_| rng.gen_range(0..=max_exp)).collect()))
        .collect();
    MonomialIdeal::new(n_vars, generators).unwrap()
}

/// Support of a product by multiplying out every choice of terms.
pub fn naive_expand(n_vars: usize, factors: &[Vec<ExponentVector>]) -> BTreeSet<Vec<u32>> {
    let mut acc: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0; n_vars]]);
    for factor in factors {
        let mut next = BTreeSet::new();
        for a in &acc {
            for t in factor {
                next.insert(a.iter().zip(t.coords()).map(|(x, y)| x + y).collect());
            }
        }
        acc = next;
    }
    acc
}

pub fn as_coords(set: &MonomialSet) -> BTreeSet<Vec<u32>> {
    set.to_vectors().into_iter().map(|v| v.coords().to_vec()).collect()
}

/// Membership straight from the definition: some generator divides `m`.
pub fn brute_member(ideal: &MonomialIdeal, m: &ExponentVector) -> bool {
    ideal
        .generators()
        .iter()
        .any(|g| g.coords().iter().zip(m.coords()).all(|(a, b)| a <= b))
}

/// Every exponent vector of total degree at most `max_degree`.
pub fn monomials_up_to(n_vars: usize, max_degree: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n_vars];
    fill(&mut cur, 0, max_degree, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<ExponentVector>) {
    if i == cur.len() {
        out.push(ExponentVector::new(cur.clone()));
        return;
    }
    for e in 0..=left {
        cur[i] = e;
        fill(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}

pub fn no_generator_divides_another(ideal: &MonomialIdeal) -> bool {
    let g = ideal.generators();
    g.iter()
        .enumerate()
        .all(|(i, a)| g.iter().enumerate().all(|(j, b)| i == j || !a.divides(b)))
}
