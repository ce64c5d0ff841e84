//! Exact `rn_k(C_n)` for small `n` by branch and bound over vertex orderings.
//!
//! For `k ≥ ⌊n/2⌋` the cheapest labels for a fixed ordering are determined
//! greedily from the two preceding vertices, so the search ranges over
//! orderings only. Rotations and reflections of `C_n` preserve `rn_k`, so
//! `x_0 = 0` and `x_1 ≤ ⌊n/2⌋`.
//!
//! The subtrees for each choice of `x_1` may run on separate threads. They
//! share the best span found so far, but each subtree prunes against the
//! shared value only strictly, so the reported optimum and its witness (the
//! lexicographically smallest optimal ordering) do not depend on scheduling.

use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::cyclic::{distance_unchecked, CycleInstance, ParityClass};
use crate::error::{Error, Result};
use crate::verify::{Labeling, Provenance};

type Best = (u64, Vec<u64>);

/// Largest `n` the oracle accepts (orderings are tracked in a 64-bit mask).
pub const ORACLE_MAX_N: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
    pub threads: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 100_000_000,
            max_time: Duration::from_secs(60),
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            ..Budget::default()
        }
    }

    pub fn with_threads(self, threads: usize) -> Self {
        Budget {
            threads: threads.max(1),
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Solved {
        value: u64,
        witness: Labeling,
        nodes: u64,
    },
    BudgetExceeded {
        /// Smallest span seen before the budget ran out.
        best_upper: Option<u64>,
        /// `LB(n, k)`.
        lower: u64,
        nodes: u64,
    },
}

impl OracleOutcome {
    pub fn value(&self) -> Option<u64> {
        match self {
            OracleOutcome::Solved { value, .. } => Some(*value),
            OracleOutcome::BudgetExceeded { .. } => None,
        }
    }
}

/// Lower bound on the span of any completion: each further pair of label
/// gaps adds at least `Φ(n, k)` and an unpaired gap at least `k + 1 − ⌊n/2⌋`.
pub fn admissible_remaining_bound(remaining: u64, partial_span: u64, n: u64, k: u64) -> Result<u64> {
    let inst = CycleInstance::new(n, k)?;
    Ok(remaining_bound(remaining, partial_span, inst.phi(), inst.min_gap()))
}

#[inline]
fn remaining_bound(remaining: u64, partial_span: u64, phi: u64, min_gap: u64) -> u64 {
    partial_span + remaining / 2 * phi + remaining % 2 * min_gap
}

struct Shared {
    best: AtomicU64,
    nodes: AtomicU64,
    aborted: AtomicBool,
    start: Instant,
    budget: Budget,
}

impl Shared {
    fn charge(&self, nodes: u64) -> bool {
        let total = self.nodes.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if total > self.budget.max_nodes || self.start.elapsed() > self.budget.max_time {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

const FLUSH_EVERY: u64 = 1024;

struct Search<'a> {
    n: usize,
    k: u64,
    phi: u64,
    min_gap: u64,
    order: Vec<u64>,
    labels: Vec<u64>,
    used: u64,
    local_best: u64,
    best_order: Option<Vec<u64>>,
    pending: u64,
    shared: &'a Shared,
}

impl Search<'_> {
    fn dfs(&mut self) -> bool {
        let placed = self.order.len();
        if placed == self.n {
            let span = self.labels[placed - 1];
            // Only spans strictly below `local_best` reach a leaf.
            self.local_best = span;
            self.best_order = Some(self.order.clone());
            self.shared.best.fetch_min(span, Ordering::Relaxed);
            return true;
        }
        let n = self.n as u64;
        let last = self.order[placed - 1];
        let prev = placed.checked_sub(2).map(|i| (self.order[i], self.labels[i]));
        let last_label = self.labels[placed - 1];
        let remaining = (self.n - placed - 1) as u64;
        for v in 0..n {
            if self.used & (1 << v) != 0 {
                continue;
            }
            self.pending += 1;
            if self.pending >= FLUSH_EVERY {
                let ok = self.shared.charge(self.pending);
                self.pending = 0;
                if !ok {
                    return false;
                }
            }
            let step = self.k + 1 - distance_unchecked(last, v, n);
            let mut label = last_label + step;
            if let Some((u, f)) = prev {
                label = label.max(f + self.k + 1 - distance_unchecked(u, v, n));
            }
            let mut bound = remaining_bound(remaining, label, self.phi, self.min_gap);
            if remaining > 0 {
                // The next gap pairs with the one just taken.
                let gap = label - last_label;
                let next = self.min_gap.max(self.phi.saturating_sub(gap));
                bound = bound.max(remaining_bound(remaining - 1, label + next, self.phi, self.min_gap));
            }
            if bound >= self.local_best || bound > self.shared.best.load(Ordering::Relaxed) {
                continue;
            }
            self.order.push(v);
            self.labels.push(label);
            self.used |= 1 << v;
            let ok = self.dfs();
            self.used &= !(1 << v);
            self.labels.pop();
            self.order.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Computes `rn_k(C_n)` exactly, or reports that the budget ran out.
pub fn exact_rn(n: u64, k: u64, budget: &Budget) -> Result<OracleOutcome> {
    let inst = CycleInstance::new(n, k)?;
    if n > ORACLE_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "the oracle supports n <= {ORACLE_MAX_N}, got {n}"
        )));
    }
    let d = inst.diameter();
    let shared = Shared {
        best: AtomicU64::new(u64::MAX),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        start: Instant::now(),
        budget: *budget,
    };
    let firsts: Vec<u64> = (1..=d).collect();
    // Per subtree: best span and its ordering.
    let results: Mutex<Vec<Option<Best>>> = Mutex::new(vec![None; firsts.len()]);
    let next = AtomicUsize::new(0);

    let worker = || loop {
        let idx = next.fetch_add(1, Ordering::Relaxed);
        let Some(&x1) = firsts.get(idx) else { break };
        let mut search = Search {
            n: n as usize,
            k,
            phi: inst.phi(),
            min_gap: inst.min_gap(),
            order: vec![0, x1],
            labels: vec![0, k + 1 - distance_unchecked(0, x1, n)],
            used: 1 | (1 << x1),
            local_best: u64::MAX,
            best_order: None,
            pending: 0,
            shared: &shared,
        };
        let finished = search.dfs();
        shared.charge(search.pending);
        if !finished {
            break;
        }
        let found = search.best_order.map(|o| (search.local_best, o));
        results.lock().expect("no worker panics while holding the lock")[idx] = found;
    };

    let threads = budget.threads.clamp(1, firsts.len().max(1));
    if threads == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(worker);
            }
        });
    }

    let nodes = shared.nodes.load(Ordering::Relaxed);
    if shared.aborted.load(Ordering::Relaxed) {
        let best = shared.best.load(Ordering::Relaxed);
        return Ok(OracleOutcome::BudgetExceeded {
            best_upper: (best != u64::MAX).then_some(best),
            lower: inst.lb(),
            nodes,
        });
    }
    let results = results.into_inner().expect("workers finished");
    let (value, order) = results
        .into_iter()
        .flatten()
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("some ordering is always feasible");
    let witness = crate::verify::minimal_labels_for_order(&order, n, k, Provenance::Oracle)?;
    debug_assert_eq!(witness.span(), value);
    Ok(OracleOutcome::Solved {
        value,
        witness,
        nodes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanVerdict {
    Match,
    Mismatch,
    Inconclusive,
}

/// One instance of the even `n`, odd `k`, `n/2 ∈ ⟨h⟩` regime, with the
/// conjectured value `LB + p − 1` set against the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u64,
    pub k: u64,
    pub h: u64,
    pub p: u64,
    pub lb: u64,
    pub conjectured: u64,
    pub oracle_value: Option<u64>,
    pub verdict: ScanVerdict,
}

/// The `(n, k)` pairs in `n_range` where the conjectured upper-bound tightness applies.
pub fn conjecture_instances(n_range: RangeInclusive<u64>) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for n in n_range.filter(|n| n % 2 == 0 && *n >= 4) {
        for k in (n / 2..n.saturating_sub(3)).filter(|k| k % 2 == 1) {
            let Ok(inst) = CycleInstance::new(n, k) else { continue };
            debug_assert_eq!(inst.parity(), ParityClass::EvenOdd);
            if inst.mismatch_gap().is_some_and(|g| g.d_in_h) {
                out.push((n, k));
            }
        }
    }
    out
}

pub fn scan_conjecture(n_range: RangeInclusive<u64>, budget: &Budget) -> Result<Vec<ScanRow>> {
    conjecture_instances(n_range)
        .into_iter()
        .map(|(n, k)| {
            let inst = CycleInstance::new(n, k)?;
            let gap = inst.mismatch_gap().expect("filtered to the mismatch regime");
            let conjectured = inst.lb() + gap.p - 1;
            let oracle_value = exact_rn(n, k, budget)?.value();
            let verdict = match oracle_value {
                Some(v) if v == conjectured => ScanVerdict::Match,
                Some(_) => ScanVerdict::Mismatch,
                None => ScanVerdict::Inconclusive,
            };
            Ok(ScanRow {
                n,
                k,
                h: gap.h,
                p: gap.p,
                lb: inst.lb(),
                conjectured,
                oracle_value,
                verdict,
            })
        })
        .collect()
}
