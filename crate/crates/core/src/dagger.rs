//! Symbolic check of `L(n)·G(2)G(4)··· ⊆ G(1)G(3)···`.
//!
//! Treating every ideal as a variable, let `P` be the monomial support of the
//! even-sized subset-sum product and `Q0` that of the odd-sized one. Since
//! `L(n)` lies in every ideal, the inclusion follows once every `m ∈ P` has
//! some `i` with `x_i·m ∈ Q0`. A failure of this criterion says nothing
//! about the ideal inclusion itself.
//!
//! `P` is never materialized. The largest even factors are peeled off and
//! expanded separately into a small shift set `S`; with `P'` the product of
//! the remaining factors, `P = ⋃_{s ∈ S} (P' + s)` and each translate is a
//! sorted stream that can be checked against `Q0` in one galloping pass.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::combinatorics::k_subsets;
use crate::error::{domain, Error, Result};
use crate::exponent::{
    expand_keys, shifted_down_count, shifted_down_keys, ExponentVector, LinearFormFactor,
    MonomialSet, DEFAULT_COUNTEREXAMPLE_CAP,
};
use crate::merge::{build_pool, gallop, Ctx, Lane, MemoryBudget, Merge};
use crate::packed::{Key, Keys, Packing};

pub const DEFAULT_MEMORY_CAP: u64 = 8 << 30;

/// The two sides of the inclusion for `n` ideals, as lists of subset sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DaggerInstance {
    pub n: usize,
    /// All `k`-subsets for even `k >= 2`.
    pub even_factors: Vec<LinearFormFactor>,
    /// All `k`-subsets for odd `k`.
    pub odd_factors: Vec<LinearFormFactor>,
}

impl DaggerInstance {
    fn factor_sets(&self, factors: &[LinearFormFactor]) -> Result<Vec<MonomialSet>> {
        factors.iter().map(|f| f.to_set(self.n)).collect()
    }
}

pub fn build_instance(n: usize) -> Result<DaggerInstance> {
    if n == 0 {
        return domain("the inclusion needs at least one ideal");
    }
    let mut even_factors = Vec::new();
    let mut odd_factors = Vec::new();
    for k in 1..=n {
        let side = if k % 2 == 0 {
            &mut even_factors
        } else {
            &mut odd_factors
        };
        side.extend(k_subsets(n, k)?.into_iter().map(LinearFormFactor::new));
    }
    Ok(DaggerInstance {
        n,
        even_factors,
        odd_factors,
    })
}

/// Total degrees `(deg P, deg Q0)`: each subset sum contributes degree one.
pub fn degree_audit(instance: &DaggerInstance) -> (u32, u32) {
    (
        instance.even_factors.len() as u32,
        instance.odd_factors.len() as u32,
    )
}

/// How `P ⊆ Q` is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipMode {
    /// Probe `m + e_i ∈ Q0` for each `i`, never building `Q`.
    #[default]
    ShiftUp,
    /// Build `Q = {q - e_i}` and test `m ∈ Q`.
    MaterializeQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DaggerConfig {
    /// Listed uncovered monomials; at least one is always kept on failure.
    pub max_counterexamples: usize,
    pub memory_cap_bytes: u64,
    /// Worker threads; `0` uses every available core.
    pub workers: usize,
    pub mode: MembershipMode,
    /// How many of the largest even factors are expanded separately.
    pub peel: usize,
}

impl Default for DaggerConfig {
    fn default() -> Self {
        Self {
            max_counterexamples: DEFAULT_COUNTEREXAMPLE_CAP,
            memory_cap_bytes: DEFAULT_MEMORY_CAP,
            workers: 0,
            mode: MembershipMode::ShiftUp,
            peel: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every monomial of `P` is covered: the inclusion is proved.
    Holds,
    /// Some monomial is uncovered; the inclusion is neither proved nor refuted.
    Inconclusive,
    /// Memory cap reached before a verdict.
    Aborted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseTiming {
    pub phase: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DaggerReport {
    pub n: usize,
    /// `None` when the run aborted.
    pub holds: Option<bool>,
    pub verdict: Verdict,
    pub mode: MembershipMode,
    pub p_degree: u32,
    pub q0_degree: u32,
    pub p_size: Option<u64>,
    pub q0_size: Option<u64>,
    pub q_size: Option<u64>,
    /// Smallest uncovered monomials of `P` in lexicographic order.
    pub counterexamples: Vec<ExponentVector>,
    /// Last phase entered.
    pub phase: String,
    pub abort_reason: Option<String>,
    pub memory_cap_bytes: u64,
    pub peak_bytes: u64,
    pub peak_elements: u64,
    pub timing: Vec<PhaseTiming>,
}

impl DaggerReport {
    /// The report with timing stripped, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Self {
            timing: Vec::new(),
            ..self.clone()
        }
    }
}

struct Run<'a> {
    report: DaggerReport,
    clock: Instant,
    budget: &'a MemoryBudget,
    key_bytes: u64,
}

impl Run<'_> {
    fn enter(&mut self, phase: &str) {
        self.close();
        self.report.phase = phase.to_string();
        self.clock = Instant::now();
    }

    fn close(&mut self) {
        if !self.report.phase.is_empty() {
            self.report.timing.push(PhaseTiming {
                phase: self.report.phase.clone(),
                seconds: self.clock.elapsed().as_secs_f64(),
            });
        }
    }

    fn finish(mut self) -> DaggerReport {
        self.close();
        self.report.peak_bytes = self.budget.peak();
        self.report.peak_elements = self.budget.peak() / self.key_bytes;
        self.report
    }

    fn abort(mut self, err: Error) -> Error {
        match err {
            Error::MemoryCap { .. } => {
                self.report.abort_reason = Some(err.to_string());
                self.report.verdict = Verdict::Aborted;
                self.report.holds = None;
                let phase = self.report.phase.clone();
                let mut report = self.finish();
                report.phase = phase;
                Error::ResourceExhausted(Box::new(report))
            }
            other => other,
        }
    }
}

/// Runs the symbolic criterion for `n` ideals.
///
/// Returns [`Error::ResourceExhausted`] carrying partial telemetry if the
/// memory cap is hit.
pub fn verify_dagger(n: usize, config: &DaggerConfig) -> Result<DaggerReport> {
    let instance = build_instance(n)?;
    let (p_degree, q0_degree) = degree_audit(&instance);
    if q0_degree != p_degree + 1 {
        return Err(Error::Invariant(format!(
            "degrees {p_degree} and {q0_degree} are not consecutive"
        )));
    }
    let packing = Packing::for_degree(n, q0_degree)?;
    let pool = build_pool(config.workers)?;
    let budget = MemoryBudget::new(config.memory_cap_bytes);
    let ctx = Ctx {
        pool: &pool,
        budget: &budget,
    };
    let key_bytes = Keys::empty_for(packing).key_bytes();
    let mut run = Run {
        report: DaggerReport {
            n,
            holds: None,
            verdict: Verdict::Aborted,
            mode: config.mode,
            p_degree,
            q0_degree,
            p_size: None,
            q0_size: None,
            q_size: None,
            counterexamples: Vec::new(),
            phase: String::new(),
            abort_reason: None,
            memory_cap_bytes: config.memory_cap_bytes,
            peak_bytes: 0,
            peak_elements: 0,
            timing: Vec::new(),
        },
        clock: Instant::now(),
        budget: &budget,
        key_bytes,
    };
    let result = if packing.is_narrow() {
        drive::<u64>(&ctx, packing, &instance, config, &mut run)
    } else {
        drive::<u128>(&ctx, packing, &instance, config, &mut run)
    };
    match result {
        Ok(()) => Ok(run.finish()),
        Err(e) => Err(run.abort(e)),
    }
}

fn take<K: Key>(keys: Keys) -> Vec<K> {
    // drive::<K> always expands in the packing that selected K
    K::unwrap(keys).expect("key width fixed by packing")
}

fn drive<K: Key>(
    ctx: &Ctx<'_>,
    packing: Packing,
    instance: &DaggerInstance,
    config: &DaggerConfig,
    run: &mut Run<'_>,
) -> Result<()> {
    let n = instance.n;
    run.enter("build");
    let odd = instance.factor_sets(&instance.odd_factors)?;
    let mut even = instance.factor_sets(&instance.even_factors)?;
    even.sort_by_key(|f| f.len());
    let peel = config.peel.min(even.len());
    let peeled = even.split_off(even.len() - peel);

    run.enter("expand_q0");
    let q0: Vec<K> = take(expand_keys(ctx, packing, &odd)?);
    run.report.q0_size = Some(q0.len() as u64);
    if q0.iter().any(|&k| (0..n).any(|i| packing.coord(k, i) == 0)) {
        return Err(Error::Invariant(
            "an element of Q0 misses a variable".into(),
        ));
    }

    run.enter("expand_shifts");
    let shifts: Vec<K> = take(expand_keys(ctx, packing, &peeled)?);

    run.enter("expand_p_base");
    let base: Vec<K> = take(expand_keys(ctx, packing, &even)?);

    run.enter("count_p");
    let lanes: Vec<Lane<K>> = shifts.iter().map(|&s| Lane::plus(s)).collect();
    let p_size = Merge {
        packing,
        base: &base,
        lanes: &lanes,
    }
    .count(ctx);
    run.report.p_size = Some(p_size);

    let missing = match config.mode {
        MembershipMode::ShiftUp => {
            run.enter("count_q");
            run.report.q_size = Some(shifted_down_count(ctx, packing, &q0));
            run.enter("membership");
            let units: Vec<K> = (0..n).map(|i| packing.unit(i)).collect();
            probe(ctx, &base, &shifts, &q0, &units, config.max_counterexamples)
        }
        MembershipMode::MaterializeQ => {
            run.enter("expand_q");
            let q: Vec<K> = shifted_down_keys(ctx, packing, &q0)?;
            run.report.q_size = Some(q.len() as u64);
            ctx.budget.release(q0.len() as u64 * K::BYTES);
            drop(q0);
            run.enter("membership");
            probe(ctx, &base, &shifts, &q, &[K::ZERO], config.max_counterexamples)
        }
    };
    let holds = missing.is_empty();
    run.report.holds = Some(holds);
    run.report.verdict = if holds {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    };
    run.report.counterexamples = missing
        .into_iter()
        .map(|k| ExponentVector::new(packing.unpack(k)))
        .collect();
    Ok(())
}

/// Smallest keys `m ∈ ⋃ (base + s)` (at most `cap`, but at least one when
/// any exists) with no `u ∈ units` such that `m + u ∈ target`.
fn probe<K: Key>(
    ctx: &Ctx<'_>,
    base: &[K],
    shifts: &[K],
    target: &[K],
    units: &[K],
    cap: usize,
) -> Vec<K> {
    use rayon::prelude::*;

    let keep = cap.max(1);
    let chunk = (base.len() / (ctx.pool.current_num_threads() * 4)).max(1 << 14);
    let jobs: Vec<(usize, K)> = shifts
        .iter()
        .flat_map(|&s| (0..base.len()).step_by(chunk).map(move |lo| (lo, s)))
        .collect();
    let mut missing: Vec<K> = ctx.pool.install(|| {
        jobs.par_iter()
            .flat_map_iter(|&(lo, s)| {
                let part = &base[lo..(lo + chunk).min(base.len())];
                let mut ptr: Vec<usize> = units
                    .iter()
                    .map(|&u| target.partition_point(|&t| t < part[0] + s + u))
                    .collect();
                let mut out = Vec::new();
                for &x in part {
                    let m = x + s;
                    let covered = units.iter().zip(ptr.iter_mut()).any(|(&u, p)| {
                        let t = m + u;
                        *p = gallop(target, *p, t);
                        *p < target.len() && target[*p] == t
                    });
                    if !covered {
                        out.push(m);
                        if out.len() == keep {
                            break;
                        }
                    }
                }
                out
            })
            .collect()
    });
    missing.sort_unstable();
    missing.dedup();
    missing.truncate(keep);
    missing
}
