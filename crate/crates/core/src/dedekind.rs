//! Ideals of a Dedekind domain as prime-exponent vectors.
//!
//! With unique factorization into primes, an ideal is its row of prime
//! exponents: products add exponents, sums take the minimum, intersections
//! the maximum. Each product identity then splits into one integer identity
//! per prime.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{k_subsets, IndexSubset};
use crate::error::{domain, Result};

/// Row `i` holds the exponent of each prime in ideal `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValuationMatrix {
    n_primes: usize,
    rows: Vec<Vec<u32>>,
}

impl ValuationMatrix {
    pub fn new(rows: Vec<Vec<u32>>, n_primes: usize) -> Result<Self> {
        if rows.is_empty() {
            return domain("valuation matrix needs at least one ideal");
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n_primes) {
            return domain(format!("row {r:?} does not have {n_primes} entries"));
        }
        Ok(Self { n_primes, rows })
    }

    /// Rows must all have the same length.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n_primes = rows.first().map_or(0, |r| r.len());
        Self::new(rows, n_primes)
    }

    pub fn n_ideals(&self) -> usize {
        self.rows.len()
    }

    pub fn n_primes(&self) -> usize {
        self.n_primes
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Parses whitespace-separated integers, one ideal per non-empty line.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<u32>().map_err(|_| {
                            crate::error::Error::Parse(format!("`{t}` is not a valuation"))
                        })
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    fn fold_rows(&self, s: &IndexSubset, pick: fn(u32, u32) -> u32) -> Result<Vec<u32>> {
        if s.max_member() > self.n_ideals() {
            return domain(format!(
                "subset {:?} exceeds {} ideals",
                s.members(),
                self.n_ideals()
            ));
        }
        Ok((0..self.n_primes)
            .map(|j| {
                s.positions()
                    .map(|i| self.rows[i][j])
                    .reduce(pick)
                    .expect("subsets are non-empty")
            })
            .collect())
    }
}

/// Exponents of the sum of the ideals in `s`.
pub fn gcd_valuation(m: &ValuationMatrix, s: &IndexSubset) -> Result<Vec<u32>> {
    m.fold_rows(s, u32::min)
}

/// Exponents of the intersection of the ideals in `s`.
pub fn lcm_valuation(m: &ValuationMatrix, s: &IndexSubset) -> Result<Vec<u32>> {
    m.fold_rows(s, u32::max)
}

/// Exponent vector of `G(k)` (`gcd == true`) or `L(k)`.
fn subset_product(m: &ValuationMatrix, k: usize, gcd: bool) -> Vec<u64> {
    let mut acc = vec![0u64; m.n_primes];
    for s in k_subsets(m.n_ideals(), k).expect("k in range") {
        let row = if gcd {
            gcd_valuation(m, &s)
        } else {
            lcm_valuation(m, &s)
        }
        .expect("subset in range");
        for (a, v) in acc.iter_mut().zip(row) {
            *a += v as u64;
        }
    }
    acc
}

/// `top(n)·side(2)side(4)··· = side(1)side(3)···` exponentwise.
fn alternating(m: &ValuationMatrix, top_is_gcd: bool) -> bool {
    let n = m.n_ideals();
    let mut left = subset_product(m, n, top_is_gcd);
    let mut right = vec![0u64; m.n_primes];
    for k in 1..=n {
        let part = subset_product(m, k, !top_is_gcd);
        let side = if k % 2 == 0 { &mut left } else { &mut right };
        for (a, v) in side.iter_mut().zip(part) {
            *a += v;
        }
    }
    left == right
}

/// `G(n)·L(2)L(4)··· = L(1)L(3)···`.
pub fn check_star(m: &ValuationMatrix) -> bool {
    alternating(m, true)
}

/// `L(n)·G(2)G(4)··· = G(1)G(3)···`.
pub fn check_doublestar(m: &ValuationMatrix) -> bool {
    alternating(m, false)
}

/// Prime factorization by trial division, primes ascending with multiplicity.
pub fn factorize(mut value: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, v: &mut u64| {
        let mut e = 0;
        while v.is_multiple_of(p) {
            *v /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut value);
    let mut d = 3u64;
    while d.saturating_mul(d) <= value {
        push(d, &mut value);
        d += 2;
    }
    if value > 1 {
        out.push((value, 1));
    }
    out
}

/// Factors positive integers into a shared prime basis.
pub fn integers_to_valuations(values: &[u64]) -> Result<(Vec<u64>, ValuationMatrix)> {
    if values.contains(&0) {
        return domain("zero has no factorization; the zero ideal is excluded");
    }
    if values.iter().any(|&v| v >= 1 << 63) {
        return domain("inputs must be below 2^63");
    }
    let factored: Vec<Vec<(u64, u32)>> = values.iter().map(|&v| factorize(v)).collect();
    let mut primes: Vec<u64> = factored.iter().flatten().map(|&(p, _)| p).collect();
    primes.sort_unstable();
    primes.dedup();
    let rows = factored
        .iter()
        .map(|f| {
            primes
                .iter()
                .map(|p| f.iter().find(|(q, _)| q == p).map_or(0, |&(_, e)| e))
                .collect()
        })
        .collect();
    Ok((primes.clone(), ValuationMatrix::new(rows, primes.len())?))
}

/// `Π p_j^{row_j}`; `None` on overflow.
pub fn reconstruct(primes: &[u64], row: &[u32]) -> Option<u128> {
    primes.iter().zip(row).try_fold(1u128, |acc, (&p, &e)| {
        (p as u128).checked_pow(e).and_then(|f| acc.checked_mul(f))
    })
}
