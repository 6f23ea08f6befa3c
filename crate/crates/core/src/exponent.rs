//! Exponent vectors and homogeneous monomial sets.
//!
//! A [`MonomialSet`] is the support of a homogeneous polynomial with
//! non-negative coefficients, so multiplying two of them is the Minkowski sum
//! of their exponent sets. That is all the containment criterion for ideal
//! products needs: coefficients never cancel.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::IndexSubset;
use crate::error::{domain, Error, Result};
use crate::merge::{build_pool, Ctx, Lane, Merge, MemoryBudget};
use crate::packed::{with_keys, Key, Keys, Packing};

/// A point of `ℕ^n`: a monomial, a valuation profile, or an expansion term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Self {
        Self(coords)
    }

    pub fn zero(n_vars: usize) -> Self {
        Self(vec![0; n_vars])
    }

    /// The unit vector for the zero-based variable `var`.
    pub fn unit(n_vars: usize, var: usize) -> Self {
        let mut v = vec![0; n_vars];
        v[var] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    /// Componentwise sum (monomial product).
    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise max (monomial lcm).
    pub fn join(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// `self` divides `other`, i.e. `self <= other` componentwise.
    pub fn divides(&self, other: &Self) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A deduplicated set of exponent vectors sharing one total degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSet {
    n_vars: usize,
    degree: u32,
    packing: Packing,
    keys: Keys,
}

impl MonomialSet {
    pub fn new(
        n_vars: usize,
        degree: u32,
        vectors: impl IntoIterator<Item = ExponentVector>,
    ) -> Result<Self> {
        if n_vars == 0 {
            return domain("monomial sets need at least one variable");
        }
        let packing = Packing::for_degree(n_vars, degree)?;
        let vectors: Vec<ExponentVector> = vectors.into_iter().collect();
        for v in &vectors {
            if v.len() != n_vars {
                return domain(format!("{v} has {} coordinates, expected {n_vars}", v.len()));
            }
            if v.degree() != degree as u64 {
                return domain(format!("{v} has degree {}, expected {degree}", v.degree()));
            }
        }
        let keys = Keys::from_coords(packing, vectors.iter().map(|v| v.coords()));
        Ok(Self {
            n_vars,
            degree,
            packing,
            keys,
        })
    }

    /// The set `{0}`: support of the constant polynomial 1.
    pub fn one(n_vars: usize) -> Result<Self> {
        Self::new(n_vars, 0, [ExponentVector::zero(n_vars)])
    }

    /// Wraps keys computed in `packing`, re-encoding into the canonical
    /// layout for `degree` when they differ.
    pub(crate) fn from_keys(n_vars: usize, degree: u32, packing: Packing, keys: Keys) -> Result<Self> {
        let canonical = Packing::for_degree(n_vars, degree)?;
        let keys = if canonical == packing {
            keys
        } else {
            keys.repack(packing, canonical)
        };
        Ok(Self {
            n_vars,
            degree,
            packing: canonical,
            keys,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Bytes held by the key array.
    pub fn byte_size(&self) -> u64 {
        self.len() as u64 * self.keys.key_bytes()
    }

    pub fn contains(&self, v: &ExponentVector) -> bool {
        if v.len() != self.n_vars || v.degree() != self.degree as u64 {
            return false;
        }
        let packing = self.packing;
        with_keys!(&self.keys, keys => keys.binary_search(&packing.pack(v.coords())).is_ok())
    }

    /// Elements in ascending lexicographic order.
    pub fn to_vectors(&self) -> Vec<ExponentVector> {
        let packing = self.packing;
        with_keys!(&self.keys, keys => keys
            .iter()
            .map(|&k| ExponentVector(packing.unpack(k)))
            .collect())
    }

    /// Image under a permutation of coordinates: new coordinate `j` is old `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.n_vars).collect::<Vec<_>>() {
            return domain(format!("{perm:?} is not a permutation of 0..{}", self.n_vars));
        }
        Self::new(
            self.n_vars,
            self.degree,
            self.to_vectors().iter().map(|v| v.permuted(perm)),
        )
    }

    /// Every element has the stated degree.
    pub fn is_homogeneous(&self) -> bool {
        let packing = self.packing;
        let d = self.degree as u64;
        with_keys!(&self.keys, keys => keys.iter().all(|&k| packing.degree(k) == d))
    }
}

/// One factor `x_{i_1} + ... + x_{i_k}` of a product of subset sums.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinearFormFactor {
    pub support: IndexSubset,
}

impl LinearFormFactor {
    pub fn new(support: IndexSubset) -> Self {
        Self { support }
    }

    pub fn to_set(&self, n_vars: usize) -> Result<MonomialSet> {
        linear_form(&self.support, n_vars)
    }
}

/// Degree-one support `{e_i : i ∈ support}`.
pub fn linear_form(support: &IndexSubset, n_vars: usize) -> Result<MonomialSet> {
    if support.is_empty() {
        return domain("linear form has empty support");
    }
    if support.max_member() > n_vars {
        return domain(format!(
            "support {:?} exceeds {n_vars} variables",
            support.members()
        ));
    }
    MonomialSet::new(
        n_vars,
        1,
        support.positions().map(|p| ExponentVector::unit(n_vars, p)),
    )
}

/// Upper bound `C(D + n - 1, n - 1)` on degree-`D` monomials in `n` variables.
pub fn monomial_count_bound(n_vars: usize, degree: u32) -> u128 {
    let n = n_vars as u128;
    let d = degree as u128;
    let k = (n - 1).min(d);
    let top = d + n - 1;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(top - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Tuning for [`expand_product_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandOptions {
    /// Worker threads; `0` uses every available core.
    pub workers: usize,
    /// Cap on bytes of live key arrays.
    pub memory_cap_bytes: u64,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            memory_cap_bytes: u64::MAX,
        }
    }
}

/// Support of the product of `factors` in `n_vars` variables.
///
/// The empty product is `{0}`.
pub fn expand_product(n_vars: usize, factors: &[MonomialSet]) -> Result<MonomialSet> {
    expand_product_with(n_vars, factors, &ExpandOptions::default())
}

pub fn expand_product_with(
    n_vars: usize,
    factors: &[MonomialSet],
    options: &ExpandOptions,
) -> Result<MonomialSet> {
    let pool = build_pool(options.workers)?;
    let budget = MemoryBudget::new(options.memory_cap_bytes);
    let ctx = Ctx {
        pool: &pool,
        budget: &budget,
    };
    let degree = product_degree(n_vars, factors)?;
    let packing = Packing::for_degree(n_vars, degree)?;
    let keys = expand_keys(&ctx, packing, factors)?;
    MonomialSet::from_keys(n_vars, degree, packing, keys)
}

pub(crate) fn product_degree(n_vars: usize, factors: &[MonomialSet]) -> Result<u32> {
    if n_vars == 0 {
        return domain("monomial sets need at least one variable");
    }
    let mut degree: u64 = 0;
    for f in factors {
        if f.n_vars != n_vars {
            return domain(format!(
                "factor over {} variables in a product over {n_vars}",
                f.n_vars
            ));
        }
        degree += f.degree as u64;
    }
    u32::try_from(degree).map_err(|_| Error::Overflow {
        n_vars,
        degree: u32::MAX,
    })
}

/// Left fold over factors (smallest first) in a packing wide enough for
/// the whole product. Charges the result to `ctx.budget`; the caller owns
/// that charge.
pub(crate) fn expand_keys(ctx: &Ctx<'_>, packing: Packing, factors: &[MonomialSet]) -> Result<Keys> {
    let mut order: Vec<&MonomialSet> = factors.iter().collect();
    order.sort_by_key(|f| f.len());
    let degree: u64 = factors.iter().map(|f| f.degree as u64).sum();
    let keys = if packing.is_narrow() {
        Keys::Narrow(fold::<u64>(ctx, packing, &order)?)
    } else {
        Keys::Wide(fold::<u128>(ctx, packing, &order)?)
    };
    let bound = monomial_count_bound(packing.n_vars, degree as u32);
    if keys.len() as u128 > bound {
        return Err(Error::Invariant(format!(
            "{} monomials exceed the count bound {bound}",
            keys.len()
        )));
    }
    let homogeneous = with_keys!(&keys, v => v.iter().all(|&k| packing.degree(k) == degree));
    if !homogeneous {
        return Err(Error::Invariant(format!(
            "expansion produced a monomial of degree other than {degree}"
        )));
    }
    Ok(keys)
}

fn factor_offsets<K: Key>(factor: &MonomialSet, packing: Packing) -> Vec<K> {
    let from = factor.packing;
    let mut offsets: Vec<K> = with_keys!(&factor.keys, v => v
        .iter()
        .map(|&k| packing.pack::<K>(&from.unpack(k)))
        .collect());
    offsets.sort_unstable();
    offsets
}

fn fold<K: Key>(ctx: &Ctx<'_>, packing: Packing, factors: &[&MonomialSet]) -> Result<Vec<K>> {
    ctx.budget.acquire(K::BYTES)?;
    let mut current: Vec<K> = vec![K::ZERO];
    for factor in factors {
        let offsets: Vec<K> = factor_offsets(factor, packing);
        let lanes: Vec<Lane<K>> = offsets.iter().map(|&o| Lane::plus(o)).collect();
        let next = if lanes.is_empty() {
            Vec::new()
        } else {
            Merge {
                packing,
                base: &current,
                lanes: &lanes,
            }
            .collect(ctx)
            .inspect_err(|_| ctx.budget.release(current.len() as u64 * K::BYTES))?
        };
        ctx.budget.release(current.len() as u64 * K::BYTES);
        current = next;
        if current.is_empty() {
            break;
        }
    }
    Ok(current)
}

/// `{ q - e_i : q ∈ q0, q_i >= 1 }`: the monomials `m` with `x_i·m ∈ q0` for some `i`.
pub fn shifted_down_set(q0: &MonomialSet) -> Result<MonomialSet> {
    let pool = build_pool(1)?;
    let budget = MemoryBudget::unlimited();
    let ctx = Ctx {
        pool: &pool,
        budget: &budget,
    };
    shifted_down_with(&ctx, q0)
}

fn down_lanes<K: Key>(packing: Packing) -> Vec<Lane<K>> {
    (0..packing.n_vars)
        .map(|v| Lane::minus_unit(&packing, v))
        .collect()
}

pub(crate) fn shifted_down_keys<K: Key>(ctx: &Ctx<'_>, packing: Packing, base: &[K]) -> Result<Vec<K>> {
    Merge {
        packing,
        base,
        lanes: &down_lanes(packing),
    }
    .collect(ctx)
}

pub(crate) fn shifted_down_count<K: Key>(ctx: &Ctx<'_>, packing: Packing, base: &[K]) -> u64 {
    Merge {
        packing,
        base,
        lanes: &down_lanes(packing),
    }
    .count(ctx)
}

fn shifted_down_with(ctx: &Ctx<'_>, q0: &MonomialSet) -> Result<MonomialSet> {
    let keys = match &q0.keys {
        Keys::Narrow(v) => Keys::Narrow(shifted_down_keys(ctx, q0.packing, v)?),
        Keys::Wide(v) => Keys::Wide(shifted_down_keys(ctx, q0.packing, v)?),
    };
    MonomialSet::from_keys(q0.n_vars, q0.degree.saturating_sub(1), q0.packing, keys)
}

/// Outcome of a containment test `p ⊆ q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetCheck {
    pub holds: bool,
    /// Elements of `p` missing from `q`, smallest first, capped.
    pub counterexamples: Vec<ExponentVector>,
}

pub const DEFAULT_COUNTEREXAMPLE_CAP: usize = 100;

/// Tests `p ⊆ q`, listing up to `limit` missing elements.
pub fn is_subset_with_witness(p: &MonomialSet, q: &MonomialSet, limit: usize) -> Result<SubsetCheck> {
    if p.n_vars != q.n_vars {
        return domain(format!(
            "comparing sets over {} and {} variables",
            p.n_vars, q.n_vars
        ));
    }
    if p.degree != q.degree {
        return Ok(SubsetCheck {
            holds: p.is_empty(),
            counterexamples: p.to_vectors().into_iter().take(limit).collect(),
        });
    }
    // equal degree means equal canonical packing, hence equal key width
    let packing = p.packing;
    let (any, missing) = match (&p.keys, &q.keys) {
        (Keys::Narrow(a), Keys::Narrow(b)) => {
            let (any, keys) = missing_keys(a, b, limit);
            (any, keys.into_iter().map(|k| ExponentVector(packing.unpack(k))).collect())
        }
        (Keys::Wide(a), Keys::Wide(b)) => {
            let (any, keys) = missing_keys(a, b, limit);
            (any, keys.into_iter().map(|k| ExponentVector(packing.unpack(k))).collect())
        }
        _ => unreachable!("same degree implies same key width"),
    };
    Ok(SubsetCheck {
        holds: !any,
        counterexamples: missing,
    })
}

/// Keys of sorted `a` absent from sorted `b`, at most `limit` of them, and
/// whether any key is absent at all.
fn missing_keys<K: Key>(a: &[K], b: &[K], limit: usize) -> (bool, Vec<K>) {
    let mut out = Vec::new();
    let mut j = 0;
    for &k in a {
        j = crate::merge::gallop(b, j, k);
        if j >= b.len() || b[j] != k {
            if out.len() == limit {
                return (true, out);
            }
            out.push(k);
        }
    }
    (!out.is_empty(), out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(c: &[u32]) -> ExponentVector {
        ExponentVector::new(c.to_vec())
    }

    fn set(n: usize, d: u32, vs: &[&[u32]]) -> MonomialSet {
        MonomialSet::new(n, d, vs.iter().map(|c| ev(c))).unwrap()
    }

    #[test]
    fn linear_forms() {
        let s = IndexSubset::new(vec![1, 2], 2).unwrap();
        assert_eq!(linear_form(&s, 2).unwrap(), set(2, 1, &[&[1, 0], &[0, 1]]));
        let s = IndexSubset::new(vec![3], 3).unwrap();
        assert_eq!(linear_form(&s, 3).unwrap(), set(3, 1, &[&[0, 0, 1]]));
        let full = linear_form(&IndexSubset::full(6).unwrap(), 6).unwrap();
        assert_eq!(full.len(), 6);
        assert!((0..6).all(|i| full.contains(&ExponentVector::unit(6, i))));
        assert!(linear_form(&IndexSubset::full(4).unwrap(), 3).is_err());
    }

    #[test]
    fn empty_product_is_one() {
        let p = expand_product(3, &[]).unwrap();
        assert_eq!(p, MonomialSet::one(3).unwrap());
        assert_eq!(p.to_vectors(), vec![ev(&[0, 0, 0])]);
    }

    #[test]
    fn square_of_binomial() {
        let f = set(2, 1, &[&[1, 0], &[0, 1]]);
        let p = expand_product(2, &[f.clone(), f]).unwrap();
        assert_eq!(p, set(2, 2, &[&[2, 0], &[1, 1], &[0, 2]]));
    }

    #[test]
    fn mismatched_variables() {
        let a = set(2, 1, &[&[1, 0]]);
        let b = set(3, 1, &[&[1, 0, 0]]);
        assert!(matches!(expand_product(2, &[a, b]), Err(Error::Domain(_))));
        assert!(MonomialSet::new(2, 1, [ev(&[1, 1])]).is_err());
        assert!(MonomialSet::new(2, 1, [ev(&[1])]).is_err());
    }

    #[test]
    fn empty_factor_annihilates() {
        let a = set(2, 1, &[&[1, 0]]);
        let z = MonomialSet::new(2, 3, []).unwrap();
        let p = expand_product(2, &[a, z]).unwrap();
        assert!(p.is_empty());
        assert_eq!(p.degree(), 4);
    }

    #[test]
    fn shifted_down_examples() {
        assert_eq!(
            shifted_down_set(&set(2, 2, &[&[1, 1]])).unwrap(),
            set(2, 1, &[&[0, 1], &[1, 0]])
        );
        assert_eq!(
            shifted_down_set(&set(2, 2, &[&[2, 0]])).unwrap(),
            set(2, 1, &[&[1, 0]])
        );
        let zero = shifted_down_set(&MonomialSet::one(6).unwrap()).unwrap();
        assert!(zero.is_empty());
    }

    #[test]
    fn shifted_down_repacks_across_bit_boundary() {
        // degree 8 needs 4 bits, degree 7 needs 3
        let q = set(2, 8, &[&[8, 0], &[4, 4]]);
        let down = shifted_down_set(&q).unwrap();
        assert_eq!(down, set(2, 7, &[&[7, 0], &[3, 4], &[4, 3]]));
    }

    #[test]
    fn subset_witnesses() {
        let p = set(2, 1, &[&[1, 0], &[0, 1]]);
        let r = is_subset_with_witness(&p, &p, 100).unwrap();
        assert!(r.holds && r.counterexamples.is_empty());

        let p = set(2, 2, &[&[1, 1]]);
        let q = set(2, 1, &[&[1, 0]]);
        let r = is_subset_with_witness(&p, &q, 100).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexamples, vec![ev(&[1, 1])]);
    }

    #[test]
    fn subset_cap() {
        let p = set(1, 3, &[&[3]]);
        let q = MonomialSet::new(1, 3, []).unwrap();
        let r = is_subset_with_witness(&p, &q, 0).unwrap();
        assert!(!r.holds);
        assert!(r.counterexamples.is_empty());

        let p = set(2, 4, &[&[4, 0], &[3, 1], &[2, 2], &[1, 3]]);
        let q = set(2, 4, &[&[2, 2]]);
        let r = is_subset_with_witness(&p, &q, 2).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexamples, vec![ev(&[1, 3]), ev(&[3, 1])]);
        let r = is_subset_with_witness(&p, &q, 0).unwrap();
        assert!(!r.holds && r.counterexamples.is_empty());
    }

    #[test]
    fn count_bound() {
        assert_eq!(monomial_count_bound(6, 31), 376_992);
        assert_eq!(monomial_count_bound(6, 32), 435_897);
        assert_eq!(monomial_count_bound(1, 9), 1);
        assert_eq!(monomial_count_bound(3, 0), 1);
    }

    #[test]
    fn degree_31_expansion_for_six() {
        let mut factors = Vec::new();
        for k in [2, 4, 6] {
            for s in crate::combinatorics::k_subsets(6, k).unwrap() {
                factors.push(linear_form(&s, 6).unwrap());
            }
        }
        let p = expand_product(6, &factors).unwrap();
        assert_eq!(p.degree(), 31);
        assert!(p.is_homogeneous());
        assert!(p.len() as u128 <= monomial_count_bound(6, 31));
    }
}
