//! Finitely generated monomial ideals of `k[x_1, ..., x_m]`.
//!
//! Every operation returns a minimal generating set, so two ideals are equal
//! exactly when their stored generators are.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::k_subsets;
use crate::error::{domain, Result};
use crate::exponent::ExponentVector;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n_vars: usize,
    /// Minimal; graded order with `x_1 > x_2 > ...` within a degree.
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    pub fn new(n_vars: usize, generators: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        let generators: Vec<ExponentVector> = generators.into_iter().collect();
        if let Some(g) = generators.iter().find(|g| g.len() != n_vars) {
            return domain(format!("generator {g} is not over {n_vars} variables"));
        }
        Ok(Self::minimal(n_vars, generators))
    }

    /// Generated by a single monomial.
    pub fn principal(m: ExponentVector) -> Self {
        Self {
            n_vars: m.len(),
            generators: vec![m],
        }
    }

    pub fn zero(n_vars: usize) -> Self {
        Self {
            n_vars,
            generators: Vec::new(),
        }
    }

    pub fn unit(n_vars: usize) -> Self {
        Self::principal(ExponentVector::zero(n_vars))
    }

    fn minimal(n_vars: usize, mut gens: Vec<ExponentVector>) -> Self {
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        gens.dedup();
        let mut kept: Vec<ExponentVector> = Vec::with_capacity(gens.len());
        for g in gens {
            // divisors have degree <= g, so they are already kept if present
            if !kept.iter().any(|h| h.divides(&g)) {
                kept.push(g);
            }
        }
        Self {
            n_vars,
            generators: kept,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// No generator divides another.
    pub fn is_minimal(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            self.generators
                .iter()
                .enumerate()
                .all(|(j, h)| i == j || !g.divides(h))
        })
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.n_vars != other.n_vars {
            return domain(format!(
                "ideals over {} and {} variables",
                self.n_vars, other.n_vars
            ));
        }
        Ok(())
    }

    /// `a + b`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Ok(Self::minimal(self.n_vars, gens))
    }

    /// `a · b`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let gens = self
            .generators
            .iter()
            .flat_map(|g| other.generators.iter().map(move |h| g.add(h)))
            .collect();
        Ok(Self::minimal(self.n_vars, gens))
    }

    /// `a ∩ b`, generated by pairwise lcms.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let gens = self
            .generators
            .iter()
            .flat_map(|g| other.generators.iter().map(move |h| g.join(h)))
            .collect();
        Ok(Self::minimal(self.n_vars, gens))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::unit(self.n_vars), |acc, _| {
            acc.product(self).expect("same ring")
        })
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.same_ring(other)?;
        Ok(other.generators.iter().all(|g| self.has_monomial(g)))
    }

    /// Membership of a single monomial.
    pub fn contains_monomial(&self, m: &ExponentVector) -> Result<bool> {
        if m.len() != self.n_vars {
            return domain(format!("{m} is not over {} variables", self.n_vars));
        }
        Ok(self.has_monomial(m))
    }

    fn has_monomial(&self, m: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Largest generator degree (0 for the zero ideal).
    pub fn max_generator_degree(&self) -> u64 {
        self.generators.iter().map(|g| g.degree()).max().unwrap_or(0)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::format_ideal(self))
    }
}

/// Product of a list of ideals over `n_vars` variables; the unit ideal if empty.
pub fn product_all<'a>(n_vars: usize, ideals: impl IntoIterator<Item = &'a MonomialIdeal>) -> Result<MonomialIdeal> {
    ideals
        .into_iter()
        .try_fold(MonomialIdeal::unit(n_vars), |acc, i| acc.product(i))
}

fn subset_product(
    k: usize,
    ideals: &[MonomialIdeal],
    combine: fn(&MonomialIdeal, &MonomialIdeal) -> Result<MonomialIdeal>,
) -> Result<MonomialIdeal> {
    let Some(first) = ideals.first() else {
        return domain("no ideals given");
    };
    let n_vars = first.n_vars;
    let mut acc = MonomialIdeal::unit(n_vars);
    for subset in k_subsets(ideals.len(), k)? {
        let mut members = subset.positions().map(|p| &ideals[p]);
        let head = members.next().expect("subsets are non-empty").clone();
        let term = members.try_fold(head, |a, b| combine(&a, b))?;
        acc = acc.product(&term)?;
    }
    Ok(acc)
}

/// `G(k)`: product over all `k`-subsets of the subset sum.
pub fn big_g(k: usize, ideals: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    subset_product(k, ideals, MonomialIdeal::sum)
}

/// `L(k)`: product over all `k`-subsets of the subset intersection.
pub fn big_l(k: usize, ideals: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    subset_product(k, ideals, MonomialIdeal::intersect)
}

/// Both sides of `G(n)·L(2)L(4)··· = L(1)L(3)···`.
pub fn star_sides(ideals: &[MonomialIdeal]) -> Result<(MonomialIdeal, MonomialIdeal)> {
    alternating(ideals, big_g, big_l)
}

/// Both sides of `L(n)·G(2)G(4)··· = G(1)G(3)···`; the left is always
/// contained in the right for `n <= 6`.
pub fn doublestar_sides(ideals: &[MonomialIdeal]) -> Result<(MonomialIdeal, MonomialIdeal)> {
    alternating(ideals, big_l, big_g)
}

fn alternating(
    ideals: &[MonomialIdeal],
    top: fn(usize, &[MonomialIdeal]) -> Result<MonomialIdeal>,
    side: fn(usize, &[MonomialIdeal]) -> Result<MonomialIdeal>,
) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let n = ideals.len();
    if n == 0 {
        return domain("no ideals given");
    }
    let mut left = top(n, ideals)?;
    let mut right = MonomialIdeal::unit(ideals[0].n_vars);
    for k in 1..=n {
        let part = side(k, ideals)?;
        if k % 2 == 0 {
            left = left.product(&part)?;
        } else {
            right = right.product(&part)?;
        }
    }
    Ok((left, right))
}
