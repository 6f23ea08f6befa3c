//! Range-partitioned k-way merging of translated sorted key arrays.
//!
//! Every set operation in the expander reduces to "merge the translates
//! `base + offset_j` (optionally `base - unit_i` restricted to keys with
//! coordinate `i >= 1`) and deduplicate". Because translation preserves key
//! order, each lane is itself sorted and the merge is a single linear pass.
//! The output key range is split into disjoint slices that workers fill
//! independently, so the result is identical for any worker count.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::packed::{Key, Packing};

/// Parts below this many input keys are not split further.
const MIN_PART: usize = 1 << 14;

/// Tracks bytes held by large key arrays against a hard cap.
#[derive(Debug)]
pub struct MemoryBudget {
    cap: u64,
    live: AtomicU64,
    peak: AtomicU64,
}

impl MemoryBudget {
    pub fn new(cap_bytes: u64) -> Self {
        Self {
            cap: cap_bytes,
            live: AtomicU64::new(0),
            peak: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn live(&self) -> u64 {
        self.live.load(Ordering::Relaxed)
    }

    pub fn peak(&self) -> u64 {
        self.peak.load(Ordering::Relaxed)
    }

    /// Claims `bytes` or fails without side effects.
    pub fn acquire(&self, bytes: u64) -> Result<()> {
        let mut live = self.live.load(Ordering::Relaxed);
        loop {
            let next = live.saturating_add(bytes);
            if next > self.cap {
                return Err(Error::MemoryCap {
                    cap_bytes: self.cap,
                    live_bytes: live,
                    requested_bytes: bytes,
                });
            }
            match self
                .live
                .compare_exchange_weak(live, next, Ordering::Relaxed, Ordering::Relaxed)
            {
                Ok(_) => {
                    self.peak.fetch_max(next, Ordering::Relaxed);
                    return Ok(());
                }
                Err(actual) => live = actual,
            }
        }
    }

    pub fn release(&self, bytes: u64) {
        self.live.fetch_sub(bytes, Ordering::Relaxed);
    }
}

/// Worker pool plus memory accounting shared by one computation.
pub(crate) struct Ctx<'a> {
    pub pool: &'a rayon::ThreadPool,
    pub budget: &'a MemoryBudget,
}

pub(crate) fn build_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))
}

/// One sorted input stream: `base[pos] + add - sub`, skipping keys whose
/// coordinate `need` is zero when a filter is set.
#[derive(Clone, Copy)]
pub(crate) struct Lane<K: Key> {
    pub add: K,
    pub sub: K,
    pub need: Option<usize>,
}

impl<K: Key> Lane<K> {
    pub fn plus(add: K) -> Self {
        Self {
            add,
            sub: K::ZERO,
            need: None,
        }
    }

    pub fn minus_unit(packing: &Packing, var: usize) -> Self {
        Self {
            add: K::ZERO,
            sub: packing.unit(var),
            need: Some(var),
        }
    }

    #[inline]
    fn admits(&self, packing: &Packing, key: K) -> bool {
        match self.need {
            Some(var) => packing.coord(key, var) >= 1,
            None => true,
        }
    }

    #[inline]
    fn map(&self, key: K) -> K {
        key + self.add - self.sub
    }

    /// First index whose (unfiltered) image is `>= bound`.
    fn lower_bound(&self, base: &[K], bound: K) -> usize {
        // top key bit is always free, so `bound + sub` cannot wrap
        let target = bound + self.sub;
        base.partition_point(|&k| k + self.add < target)
    }
}

pub(crate) struct Merge<'a, K: Key> {
    pub packing: Packing,
    pub base: &'a [K],
    pub lanes: &'a [Lane<K>],
}

impl<'a, K: Key> Merge<'a, K> {
    /// Splits the output key range into at most `parts` slices; returns the
    /// per-lane index window of each slice.
    fn windows(&self, parts: usize) -> Vec<Vec<(usize, usize)>> {
        let n = self.base.len();
        let parts = parts.clamp(1, (n / MIN_PART).max(1));
        let pivot = self.lanes[self.lanes.len() / 2];
        let mut bounds: Vec<K> = (1..parts)
            .map(|j| self.base[j * n / parts] + pivot.add)
            .collect();
        bounds.dedup();
        let cuts: Vec<Vec<usize>> = self
            .lanes
            .iter()
            .map(|lane| {
                let mut c = Vec::with_capacity(bounds.len() + 2);
                c.push(0);
                c.extend(bounds.iter().map(|&b| lane.lower_bound(self.base, b)));
                c.push(n);
                c
            })
            .collect();
        (0..=bounds.len())
            .map(|p| cuts.iter().map(|c| (c[p], c[p + 1])).collect())
            .collect()
    }

    /// Runs the deduplicating merge over one window, feeding `emit`.
    fn run(&self, window: &[(usize, usize)], emit: impl FnMut(K)) {
        if self.lanes.iter().all(|l| l.need.is_none()) {
            self.run_unfiltered(window, emit);
        } else {
            self.run_filtered(window, emit);
        }
    }

    /// Exhausted lanes park at `K::MAX`, which no key reaches (top bit free).
    fn run_unfiltered(&self, window: &[(usize, usize)], mut emit: impl FnMut(K)) {
        let k = self.lanes.len();
        let mut pos: Vec<usize> = window.iter().map(|w| w.0).collect();
        let ends: Vec<usize> = window.iter().map(|w| w.1).collect();
        let adds: Vec<K> = self.lanes.iter().map(|l| l.add - l.sub).collect();
        let head = |lane: usize, p: usize| {
            if p < ends[lane] {
                self.base[p] + adds[lane]
            } else {
                K::MAX
            }
        };
        let mut heads: Vec<K> = (0..k).map(|l| head(l, pos[l])).collect();
        loop {
            let best = heads.iter().copied().fold(K::MAX, K::min);
            if best == K::MAX {
                break;
            }
            emit(best);
            for lane in 0..k {
                if heads[lane] == best {
                    pos[lane] += 1;
                    heads[lane] = head(lane, pos[lane]);
                }
            }
        }
    }

    fn run_filtered(&self, window: &[(usize, usize)], mut emit: impl FnMut(K)) {
        let mut pos: Vec<usize> = window.iter().map(|w| w.0).collect();
        let ends: Vec<usize> = window.iter().map(|w| w.1).collect();
        let mut heads: Vec<K> = vec![K::MAX; self.lanes.len()];
        let advance = |lane: usize, pos: &mut Vec<usize>, heads: &mut Vec<K>| {
            let l = &self.lanes[lane];
            while pos[lane] < ends[lane] {
                let key = self.base[pos[lane]];
                if l.admits(&self.packing, key) {
                    heads[lane] = l.map(key);
                    return;
                }
                pos[lane] += 1;
            }
            heads[lane] = K::MAX;
        };
        for lane in 0..self.lanes.len() {
            advance(lane, &mut pos, &mut heads);
        }
        loop {
            let best = heads.iter().copied().fold(K::MAX, K::min);
            if best == K::MAX {
                break;
            }
            emit(best);
            for lane in 0..self.lanes.len() {
                if heads[lane] == best {
                    pos[lane] += 1;
                    advance(lane, &mut pos, &mut heads);
                }
            }
        }
    }

    /// Number of distinct keys in the union of all lanes.
    pub fn count(&self, ctx: &Ctx<'_>) -> u64 {
        if self.base.is_empty() {
            return 0;
        }
        let windows = self.windows(ctx.pool.current_num_threads() * 4);
        ctx.pool.install(|| {
            windows
                .par_iter()
                .map(|w| {
                    let mut c = 0u64;
                    self.run(w, |_| c += 1);
                    c
                })
                .sum()
        })
    }

    /// Materializes the union of all lanes, charging its bytes to the budget.
    pub fn collect(&self, ctx: &Ctx<'_>) -> Result<Vec<K>> {
        if self.base.is_empty() {
            return Ok(Vec::new());
        }
        let windows = self.windows(ctx.pool.current_num_threads() * 4);
        let counts: Vec<usize> = ctx.pool.install(|| {
            windows
                .par_iter()
                .map(|w| {
                    let mut c = 0usize;
                    self.run(w, |_| c += 1);
                    c
                })
                .collect()
        });
        let total: usize = counts.iter().sum();
        ctx.budget.acquire(total as u64 * K::BYTES)?;
        let mut out = vec![K::ZERO; total];
        let mut slots = Vec::with_capacity(counts.len());
        let mut rest = out.as_mut_slice();
        for &c in &counts {
            let (head, tail) = rest.split_at_mut(c);
            slots.push(head);
            rest = tail;
        }
        ctx.pool.install(|| {
            slots
                .into_par_iter()
                .zip(windows.par_iter())
                .for_each(|(slot, w)| {
                    let mut i = 0;
                    self.run(w, |k| {
                        slot[i] = k;
                        i += 1;
                    });
                    debug_assert_eq!(i, slot.len());
                });
        });
        Ok(out)
    }
}

/// Finds the first index `>= from` whose key is `>= target` by galloping.
#[inline]
pub(crate) fn gallop<K: Key>(keys: &[K], from: usize, target: K) -> usize {
    if from >= keys.len() || keys[from] >= target {
        return from;
    }
    let mut step = 1;
    let mut lo = from;
    let mut hi = from + 1;
    while hi < keys.len() && keys[hi] < target {
        lo = hi;
        step *= 2;
        hi = (hi + step).min(keys.len());
    }
    lo + 1 + keys[lo + 1..hi.min(keys.len())].partition_point(|&k| k < target)
}
