//! Subset enumeration and multiset algebra over totally ordered values.
//!
//! The two max-min identities checked here say that, for any multiset of
//! values from a chain, the suprema of the `n`-subset together with the
//! infima of all even-sized subsets coincide (as a multiset) with the infima
//! of all odd-sized subsets, and dually with sup and inf exchanged.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// A non-empty subset of `{1, ..., n}`, members strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndexSubset {
    members: Vec<usize>,
}

impl IndexSubset {
    /// Builds a subset of `{1, ..., n}` from arbitrary members (sorted and checked here).
    pub fn new(mut members: Vec<usize>, n: usize) -> Result<Self> {
        members.sort_unstable();
        if members.is_empty() {
            return domain("index subset must be non-empty");
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return domain(format!("index subset {members:?} has repeated members"));
        }
        if members[0] == 0 || members[members.len() - 1] > n {
            return domain(format!("index subset {members:?} is not inside 1..={n}"));
        }
        Ok(Self { members })
    }

    /// The full subset `{1, ..., n}`.
    pub fn full(n: usize) -> Result<Self> {
        Self::new((1..=n).collect(), n)
    }

    /// One-based members.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Zero-based positions, convenient for slice indexing.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|m| m - 1)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_member(&self) -> usize {
        self.members[self.members.len() - 1]
    }
}

/// All `k`-element subsets of `{1, ..., n}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Result<Vec<IndexSubset>> {
    if k < 1 || k > n {
        return domain(format!("subset size {k} out of range 1..={n}"));
    }
    let mut out = Vec::with_capacity(binomial(n as u64, k as u64) as usize);
    let mut current: Vec<usize> = (1..=k).collect();
    loop {
        out.push(IndexSubset {
            members: current.clone(),
        });
        // rightmost member that can still move up
        let Some(pos) = (0..k).rev().find(|&i| current[i] < n - (k - 1 - i)) else {
            break;
        };
        current[pos] += 1;
        for i in pos + 1..k {
            current[i] = current[i - 1] + 1;
        }
    }
    Ok(out)
}

/// A multiset of integers kept in ascending order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderedMultiset {
    values: Vec<i64>,
}

impl OrderedMultiset {
    pub fn new(mut values: Vec<i64>) -> Self {
        values.sort_unstable();
        Self { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Multiset sum (multiplicities add).
    pub fn join(&self, other: &Self) -> Self {
        let mut values = Vec::with_capacity(self.len() + other.len());
        values.extend_from_slice(&self.values);
        values.extend_from_slice(&other.values);
        Self::new(values)
    }

    /// Elementwise negation; reverses the order.
    pub fn negated(&self) -> Self {
        Self::new(self.values.iter().map(|v| -v).collect())
    }

    fn extremes_of_subsets(&self, k: usize, pick: fn(i64, i64) -> i64) -> Result<Self> {
        let n = self.values.len();
        if k < 1 || k > n {
            return domain(format!("subset size {k} out of range 1..={n}"));
        }
        let values = k_subsets(n, k)?
            .iter()
            .map(|s| {
                s.positions()
                    .map(|p| self.values[p])
                    .reduce(pick)
                    .expect("subsets are non-empty")
            })
            .collect();
        Ok(Self::new(values))
    }
}

impl FromIterator<i64> for OrderedMultiset {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// Suprema of all `k`-subsets of positions.
pub fn upper_multiset(values: &OrderedMultiset, k: usize) -> Result<OrderedMultiset> {
    values.extremes_of_subsets(k, i64::max)
}

/// Infima of all `k`-subsets of positions.
pub fn lower_multiset(values: &OrderedMultiset, k: usize) -> Result<OrderedMultiset> {
    values.extremes_of_subsets(k, i64::min)
}

/// Outcome of checking both max-min identities on one multiset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxMinCheck {
    pub first_holds: bool,
    pub second_holds: bool,
}

impl MaxMinCheck {
    pub fn both(&self) -> bool {
        self.first_holds && self.second_holds
    }
}

/// `top(n) ∪ side(2) ∪ side(4) ∪ ...` against `side(1) ∪ side(3) ∪ ...`.
fn alternating_sides(
    values: &OrderedMultiset,
    top: fn(&OrderedMultiset, usize) -> Result<OrderedMultiset>,
    side: fn(&OrderedMultiset, usize) -> Result<OrderedMultiset>,
) -> Result<(OrderedMultiset, OrderedMultiset)> {
    let n = values.len();
    let mut left = top(values, n)?;
    let mut right = OrderedMultiset::default();
    for k in 1..=n {
        let part = side(values, k)?;
        if k % 2 == 0 {
            left = left.join(&part);
        } else {
            right = right.join(&part);
        }
    }
    Ok((left, right))
}

/// Checks `S̄_n ∪ S̲_2 ∪ S̲_4 ∪ ... = S̲_1 ∪ S̲_3 ∪ ...` and its dual.
pub fn check_maxmin_identities(values: &OrderedMultiset) -> Result<MaxMinCheck> {
    if values.is_empty() {
        return domain("max-min identities need at least one value");
    }
    let (l1, r1) = alternating_sides(values, upper_multiset, lower_multiset)?;
    let (l2, r2) = alternating_sides(values, lower_multiset, upper_multiset)?;
    Ok(MaxMinCheck {
        first_holds: l1 == r1,
        second_holds: l2 == r2,
    })
}
