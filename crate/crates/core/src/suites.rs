//! Seeded exhaustive and random batteries for the identities that must
//! always hold. Any failure is a bug in this crate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{check_maxmin_identities, OrderedMultiset};
use crate::dedekind::{
    check_doublestar, check_star, gcd_valuation, integers_to_valuations, lcm_valuation,
    reconstruct, ValuationMatrix,
};
use crate::combinatorics::IndexSubset;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: Option<u64>,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &str, seed: Option<u64>) -> Self {
        Self {
            name: name.to_string(),
            seed,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every multiset of length `1..=max_len` over `0..values`.
pub fn lemma_exhaustive(max_len: usize, values: i64) -> SuiteReport {
    let mut report = SuiteReport::new("lemma_exhaustive", None);
    for len in 1..=max_len as u32 {
        for code in 0..(values as u64).pow(len) {
            let v: Vec<i64> = (0..len)
                .map(|i| ((code / (values as u64).pow(i)) % values as u64) as i64)
                .collect();
            let ok = check_maxmin_identities(&OrderedMultiset::new(v.clone()))
                .map(|c| c.both())
                .unwrap_or(false);
            report.record(ok, || format!("{v:?}"));
        }
    }
    report
}

/// `trials` random multisets of length `1..=max_len` over `0..=max_value`.
pub fn lemma_random(trials: u64, max_len: usize, max_value: i64, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("lemma_random", Some(seed));
    let mut r = rng(seed);
    for _ in 0..trials {
        let len = r.gen_range(1..=max_len.max(1));
        let v: Vec<i64> = (0..len).map(|_| r.gen_range(0..=max_value)).collect();
        let ok = check_maxmin_identities(&OrderedMultiset::new(v.clone()))
            .map(|c| c.both())
            .unwrap_or(false);
        report.record(ok, || format!("{v:?}"));
    }
    report
}

fn star_case(report: &mut SuiteReport, m: &ValuationMatrix) {
    let ok = check_star(m) && check_doublestar(m);
    report.record(ok, || format!("{:?}", m.rows()));
}

/// Every matrix with `1..=max_n` rows, `1..=max_p` columns and entries in `0..=max_entry`.
pub fn star_exhaustive(max_n: usize, max_p: usize, max_entry: u32) -> SuiteReport {
    let mut report = SuiteReport::new("star_exhaustive", None);
    let base = max_entry as u64 + 1;
    for n in 1..=max_n {
        for p in 1..=max_p {
            let cells = (n * p) as u32;
            for code in 0..base.pow(cells) {
                let rows = (0..n)
                    .map(|i| {
                        (0..p)
                            .map(|j| ((code / base.pow((i * p + j) as u32)) % base) as u32)
                            .collect()
                    })
                    .collect();
                star_case(&mut report, &ValuationMatrix::new(rows, p).expect("shape"));
            }
        }
    }
    report
}

/// Random matrices up to `max_n × max_p` with entries in `0..=max_entry`.
pub fn star_random(trials: u64, max_n: usize, max_p: usize, max_entry: u32, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("star_random", Some(seed));
    let mut r = rng(seed);
    for _ in 0..trials {
        let n = r.gen_range(1..=max_n);
        let p = r.gen_range(1..=max_p);
        let rows = (0..n)
            .map(|_| (0..p).map(|_| r.gen_range(0..=max_entry)).collect())
            .collect();
        star_case(&mut report, &ValuationMatrix::new(rows, p).expect("shape"));
    }
    report
}

fn euclid(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        euclid(b, a % b)
    }
}

/// `gcd(a, b)·lcm(a, b) = a·b` through the valuation route, with the gcd
/// cross-checked against Euclid.
pub fn gcd_lcm_pairs(trials: u64, bound: u64, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("gcd_lcm_pairs", Some(seed));
    let mut r = rng(seed);
    let both = IndexSubset::full(2).expect("pair");
    for _ in 0..trials {
        let a = r.gen_range(1..bound);
        let b = r.gen_range(1..bound);
        let ok = (|| {
            let (primes, m) = integers_to_valuations(&[a, b]).ok()?;
            let g = reconstruct(&primes, &gcd_valuation(&m, &both).ok()?)?;
            let l = reconstruct(&primes, &lcm_valuation(&m, &both).ok()?)?;
            let round_trip = m
                .rows()
                .iter()
                .zip([a, b])
                .all(|(row, v)| reconstruct(&primes, row) == Some(v as u128));
            Some(
                round_trip
                    && check_star(&m)
                    && g == euclid(a, b) as u128
                    && g * l == a as u128 * b as u128,
            )
        })()
        .unwrap_or(false);
        report.record(ok, || format!("({a}, {b})"));
    }
    report
}
