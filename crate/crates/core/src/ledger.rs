//! Best-known bounds on `f(n)`, propagated to a fixpoint.
//!
//! The rule set:
//!
//! * **Grid**: `f(m²) ≥ m`.
//! * **Monotone**: `f(n) ≥ f(n−1)` (bound-only; no certificate is built).
//! * **Halász**: `f(k²+2c+1) ≥ k + c/k` for `1 ≤ c ≤ k`.
//! * **Combine**: the subgrid-substitution inequality, read as
//!   `LB(b²−a1²−a2²+n1+n2) ≥ (a1·LB(n1) + a2·LB(n2) + b²−a1²−a2²)/b`
//!   over all `a1, a2 ≥ 1`, `a1+a2 ≤ b ≤ b_cap`, `n1, n2 ≤ max_n`.
//! * **Witness**: an imported certificate's exact total.
//!
//! Every rule derives an entry at a strictly larger index than any entry it
//! reads (the combine target exceeds both inputs because `b² ≥ a1²+a2²` and
//! counts are positive), so a single ascending pass over `n` computes the
//! least fixpoint directly, and re-running propagation is a no-op.
//!
//! Equal-value candidates are resolved by shortest trace (total number of
//! rule applications in the derivation tree), then by rule order
//! ([`Derivation`]'s `Ord`). The result is deterministic and independent of
//! the execution strategy.

use std::collections::BTreeMap;

use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::bounds::{Derivation, EpsilonInterval, LowerBound, UpperBound};
use crate::error::Error;
use crate::exec::{map_indexed, Parallelism};
use crate::geometry::Packing;
use crate::rational::{rat_u, Rational};
use crate::Result;

/// Certificate-backed base fact: `f(n) ≥ value`, content-addressed.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessEntry {
    pub n: u64,
    pub value: Rational,
    pub digest: String,
}

impl WitnessEntry {
    /// Verifies the packing exactly before admitting it as a fact.
    pub fn from_packing(p: &Packing) -> Result<Self> {
        let report = p.verify();
        if !report.is_clean() {
            return Err(Error::InvalidPacking(report.to_string()));
        }
        if p.count() == 0 {
            return Err(Error::InvalidPacking("empty packing".into()));
        }
        Ok(WitnessEntry {
            n: p.count() as u64,
            value: p.total_side().clone(),
            digest: p.digest(),
        })
    }
}

/// Which inequality rules participate in propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleSet {
    pub grid: bool,
    pub halasz: bool,
    pub monotone: bool,
    pub combine: bool,
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet {
            grid: true,
            halasz: true,
            monotone: true,
            combine: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagateParams {
    pub max_n: u64,
    /// Cap on the grid size `b` searched by the combine rule.
    pub b_cap: u64,
    pub rules: RuleSet,
    pub witnesses: Vec<WitnessEntry>,
}

impl PropagateParams {
    pub fn new(max_n: u64) -> Self {
        PropagateParams {
            max_n,
            b_cap: 32,
            rules: RuleSet::default(),
            witnesses: Vec::new(),
        }
    }

    pub fn with_b_cap(mut self, b_cap: u64) -> Self {
        self.b_cap = b_cap;
        self
    }

    pub fn with_rules(mut self, rules: RuleSet) -> Self {
        self.rules = rules;
        self
    }

    pub fn with_witness(mut self, witness: WitnessEntry) -> Self {
        self.witnesses.push(witness);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
struct LedgerEntry {
    lower: LowerBound,
    trace_len: u64,
}

/// Per-`n` record of the best lower bound (with derivation) and the `√n`
/// upper bound, for `1 ≤ n ≤ max_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ledger {
    max_n: u64,
    b_cap: u64,
    rules: RuleSet,
    entries: Vec<Option<LedgerEntry>>,
}

impl Ledger {
    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    pub fn b_cap(&self) -> u64 {
        self.b_cap
    }

    pub fn rules(&self) -> RuleSet {
        self.rules
    }

    pub fn lower(&self, n: u64) -> Option<&LowerBound> {
        self.entries
            .get(n as usize)
            .and_then(|e| e.as_ref())
            .map(|e| &e.lower)
    }

    pub fn upper(&self, n: u64) -> UpperBound {
        UpperBound::new(n)
    }

    /// Total number of rule applications in the derivation tree at `n`.
    pub fn trace_len(&self, n: u64) -> Option<u64> {
        self.entries
            .get(n as usize)
            .and_then(|e| e.as_ref())
            .map(|e| e.trace_len)
    }

    pub fn lower_bounds(&self) -> impl Iterator<Item = &LowerBound> {
        self.entries.iter().flatten().map(|e| &e.lower)
    }

    /// `ε(k) ∈ [max(0, LB(k²+1) − k), √(k²+1) − k]`.
    pub fn epsilon_interval(&self, k: u64) -> Result<EpsilonInterval> {
        let idx = k
            .checked_mul(k)
            .and_then(|kk| kk.checked_add(1))
            .filter(|idx| k >= 1 && *idx <= self.max_n)
            .ok_or(Error::EpsilonOutOfRange {
                k,
                max_n: self.max_n,
            })?;
        let lower = self.lower(idx).ok_or(Error::MissingEntry(idx))?;
        let raw = lower.value() - rat_u(k);
        let lb = if raw.is_negative() { Rational::zero() } else { raw };
        Ok(EpsilonInterval::new(k, lb))
    }
}

/// The monotone step `LB(n) ≥ LB(n−1)` as a bound-only rule.
pub fn lb_monotone(ledger: &Ledger, n: u64) -> Result<LowerBound> {
    if n < 2 {
        return Err(Error::MissingEntry(0));
    }
    let prev = ledger.lower(n - 1).ok_or(Error::MissingEntry(n - 1))?;
    LowerBound::new(n, prev.value().clone(), Derivation::Monotone)
}

/// One combine-rule application against ledger entries:
/// target `n = b² − a1² − a2² + n1 + n2`, value
/// `(a1·LB(n1) + a2·LB(n2) + b² − a1² − a2²)/b`.
pub fn lb_combine(
    ledger: &Ledger,
    a1: u64,
    a2: u64,
    b: u64,
    n1: u64,
    n2: u64,
) -> Result<LowerBound> {
    if a1 == 0 || a2 == 0 || a1 + a2 > b {
        return Err(Error::SubgridHypothesis { a1, a2, b });
    }
    let v1 = ledger.lower(n1).ok_or(Error::MissingEntry(n1))?;
    let v2 = ledger.lower(n2).ok_or(Error::MissingEntry(n2))?;
    let filler = b * b - a1 * a1 - a2 * a2;
    let target = filler + n1 + n2;
    let value = (rat_u(a1) * v1.value() + rat_u(a2) * v2.value() + rat_u(filler)) / rat_u(b);
    LowerBound::new(target, value, Derivation::Combine { a1, a2, b, n1, n2 })
}

/// Propagate with the sequential engine.
///
/// The combine sweep runs once per run-start, and at desk scale each sweep
/// is a few hundred microseconds — too fine-grained to amortize parallel
/// dispatch, so sequential is the right default here (unlike the
/// optimizer's restarts). Pass [`Parallelism::Rayon`] to [`propagate_with`]
/// for very large ledgers; both engines produce identical results.
pub fn propagate(params: &PropagateParams) -> Ledger {
    propagate_with(params, Parallelism::Sequential)
}

/// Propagate to the fixpoint.
///
/// The fast engine's combine sweep relies on the monotone rule for its
/// dominance arguments, so the rare `combine && !monotone` configuration
/// falls back to the exhaustive reference engine.
pub fn propagate_with(params: &PropagateParams, par: Parallelism) -> Ledger {
    if params.rules.combine && !params.rules.monotone {
        return propagate_reference(params);
    }
    propagate_fast(params, par)
}

/// Float comparisons in the sweep keep this margin and defer anything
/// closer to exact rational arithmetic. Values are bounded by √max_n, so
/// f64 round-off is orders of magnitude below it.
const VALUE_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone)]
struct Cand {
    value: Rational,
    trace_len: u64,
    derivation: Derivation,
}

impl Cand {
    fn better_than(&self, other: &Cand) -> bool {
        match self.value.cmp(&other.value) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => {
                (self.trace_len, &self.derivation) < (other.trace_len, &other.derivation)
            }
        }
    }
}

struct Triple {
    a1: u64,
    a2: u64,
    b: u64,
    filler: u64,
    a1_f: f64,
    a2_f: f64,
    inv_b: f64,
}

/// Unordered coefficient pairs `a1 ≤ a2` with `a1 + a2 ≤ b ≤ b_cap`. For an
/// input pair with values `v_small ≤ v_large`, pairing `a2` with `v_large`
/// dominates the swapped orientation at the same target, so only that
/// orientation is ever evaluated.
///
/// Sorted by filler so a sweep can stop at the first triple whose smallest
/// reachable target exceeds `max_n`.
fn build_triples(b_cap: u64, max_n: u64) -> Vec<Triple> {
    let mut triples = Vec::new();
    for b in 2..=b_cap {
        for a1 in 1..b {
            for a2 in a1..=(b - a1) {
                let filler = b * b - a1 * a1 - a2 * a2;
                // smallest reachable target is filler + 2
                if filler + 2 > max_n {
                    continue;
                }
                triples.push(Triple {
                    a1,
                    a2,
                    b,
                    filler,
                    a1_f: a1 as f64,
                    a2_f: a2 as f64,
                    inv_b: 1.0 / b as f64,
                });
            }
        }
    }
    triples.sort_by_key(|t| (t.filler, t.b, t.a1));
    triples
}

/// Nondecreasing f64 floor for the final LB under the non-combine rules
/// (including witnesses). Sound pruning baseline: the true fixpoint can
/// only be larger.
fn non_combine_floor(params: &PropagateParams, witness_by_n: &BTreeMap<u64, Vec<usize>>) -> Vec<f64> {
    let max_n = params.max_n as usize;
    let mut floor = vec![f64::NEG_INFINITY; max_n + 1];
    let mut prev = f64::NEG_INFINITY;
    for (n, slot) in floor.iter_mut().enumerate().skip(1) {
        let mut v = if params.rules.monotone {
            prev
        } else {
            f64::NEG_INFINITY
        };
        let nu = n as u64;
        if params.rules.grid {
            let m = nu.sqrt();
            if m * m == nu {
                v = v.max(m as f64);
            }
        }
        if params.rules.halasz {
            for (k, c) in halasz_instances(nu) {
                v = v.max(k as f64 + c as f64 / k as f64);
            }
        }
        if let Some(ws) = witness_by_n.get(&nu) {
            for &wi in ws {
                v = v.max(params.witnesses[wi].value.to_f64().unwrap_or(f64::NEG_INFINITY));
            }
        }
        *slot = v;
        prev = prev.max(v);
    }
    floor
}

/// Witness entries inside the ledger range that satisfy the lower-bound
/// invariants (`value > 0`, `value² ≤ n`); anything else is ignored rather
/// than poisoning the fixpoint.
fn admissible_witnesses(params: &PropagateParams) -> BTreeMap<u64, Vec<usize>> {
    let mut by_n: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, w) in params.witnesses.iter().enumerate() {
        let sound = w.n >= 1
            && w.n <= params.max_n
            && w.value.is_positive()
            && &w.value * &w.value <= rat_u(w.n);
        debug_assert!(sound || w.n > params.max_n, "unsound witness at n={}", w.n);
        if sound {
            by_n.entry(w.n).or_default().push(i);
        }
    }
    by_n
}

/// All `(k, c)` with `k² + 2c + 1 = n` and `1 ≤ c ≤ k` (at most one exists;
/// returned as a list for uniform handling).
fn halasz_instances(n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k + 3 <= n {
        let rem = n - k * k - 1;
        if rem.is_multiple_of(2) {
            let c = rem / 2;
            if (1..=k).contains(&c) {
                out.push((k, c));
            }
        }
        k += 1;
    }
    out
}

/// Scan run-start indices `[lo, hi)` of one triple's window, reporting
/// survivors of the float filter. Candidate values are nondecreasing in the
/// index (run-start values ascend) and `floor_env` is nondecreasing in the
/// target, so a range whose largest value cannot beat its smallest floor is
/// dominated wholesale; bisection skips such ranges without touching them.
#[allow(clippy::too_many_arguments)]
fn sweep_window(
    triple: &Triple,
    add: f64,
    base: u64,
    rs_n: &[u64],
    rs_f: &[f64],
    filter: &[f64],
    floor_env: &[f64],
    lo: usize,
    hi: usize,
    triple_idx: u32,
    out: &mut Vec<(u32, u32)>,
) {
    const LINEAR_BELOW: usize = 16;
    let mut stack = [(lo, hi); 64];
    let mut depth = 1;
    while depth > 0 {
        depth -= 1;
        let (lo, hi) = stack[depth];
        let best = (triple.a1_f * rs_f[hi - 1] + add) * triple.inv_b;
        if best <= floor_env[(base + rs_n[lo]) as usize] - VALUE_MARGIN {
            continue;
        }
        if hi - lo <= LINEAR_BELOW {
            for i in lo..hi {
                let t = (base + rs_n[i]) as usize;
                let val = (triple.a1_f * rs_f[i] + add) * triple.inv_b;
                if val > filter[t] - VALUE_MARGIN {
                    out.push((triple_idx, i as u32));
                }
            }
            continue;
        }
        let mid = lo + (hi - lo) / 2;
        // near half first (stack pops the far half later)
        stack[depth] = (mid, hi);
        stack[depth + 1] = (lo, mid);
        depth += 2;
    }
}

fn propagate_fast(params: &PropagateParams, par: Parallelism) -> Ledger {
    let max_n = params.max_n;
    let size = max_n as usize + 1;

    let witness_by_n = admissible_witnesses(params);

    let rules = params.rules;
    let triples = if rules.combine {
        build_triples(params.b_cap, max_n)
    } else {
        Vec::new()
    };
    let static_floor = if rules.combine {
        non_combine_floor(params, &witness_by_n)
    } else {
        Vec::new()
    };
    // dynamic filter: static floor raised by accepted combine candidates;
    // read-only during the parallel sweep, updated between events
    let mut filter = static_floor.clone();
    // nondecreasing envelope of the static floor for whole-triple skips
    let mut floor_env = static_floor;
    for n in 2..floor_env.len() {
        if floor_env[n] < floor_env[n - 1] {
            floor_env[n] = floor_env[n - 1];
        }
    }

    let mut entries: Vec<Option<LedgerEntry>> = vec![None; size];
    let mut bucket: Vec<Option<Cand>> = vec![None; size];
    // run-starts: indices where LB strictly increases, ascending (values too)
    let mut rs_n: Vec<u64> = Vec::new();
    let mut rs_f: Vec<f64> = Vec::new();

    // one task per worker: the sweep runs once per run-start, so dispatch
    // overhead has to stay far below the sweep itself
    let sweep_chunks = match par {
        Parallelism::Sequential => 1,
        #[cfg(feature = "parallel")]
        Parallelism::Rayon => rayon::current_num_threads().max(1),
    };

    for n in 1..=max_n {
        let mut best: Option<Cand> = bucket[n as usize].take();

        let mut consider = |cand: Cand| match &best {
            Some(b) if !cand.better_than(b) => {}
            _ => best = Some(cand),
        };

        if rules.grid {
            let m = n.sqrt();
            if m * m == n {
                consider(Cand {
                    value: rat_u(m),
                    trace_len: 1,
                    derivation: Derivation::Grid,
                });
            }
        }
        if rules.halasz {
            for (k, c) in halasz_instances(n) {
                consider(Cand {
                    value: rat_u(k) + Rational::new(c.into(), k.into()),
                    trace_len: 1,
                    derivation: Derivation::Halasz { k, c },
                });
            }
        }
        if let Some(ws) = witness_by_n.get(&n) {
            for &wi in ws {
                let w = &params.witnesses[wi];
                consider(Cand {
                    value: w.value.clone(),
                    trace_len: 1,
                    derivation: Derivation::Witness {
                        digest: w.digest.clone(),
                    },
                });
            }
        }
        if rules.monotone && n >= 2 {
            if let Some(prev) = &entries[n as usize - 1] {
                consider(Cand {
                    value: prev.lower.value().clone(),
                    trace_len: prev.trace_len + 1,
                    derivation: Derivation::Monotone,
                });
            }
        }

        let Some(cand) = best else { continue };

        let strict_increase = match &entries[n as usize - 1] {
            Some(prev) => cand.value > *prev.lower.value(),
            None => true,
        };
        let value_f = cand.value.to_f64().unwrap_or(f64::NEG_INFINITY);
        let lower = LowerBound::new(n, cand.value, cand.derivation)
            .expect("propagation produced an unsound bound");
        entries[n as usize] = Some(LedgerEntry {
            lower,
            trace_len: cand.trace_len,
        });

        if !rules.combine || !strict_increase {
            continue;
        }

        // New run-start: push combine candidates for every (run-start,
        // triple) pair. Restricting inputs to run-starts is lossless: any
        // other input is dominated by its run-start at an equal or smaller
        // target, and the monotone rule carries the bound forward.
        rs_n.push(n);
        rs_f.push(value_f);

        // triples are filler-sorted, so everything past this point only
        // reaches targets beyond max_n
        let live = triples.partition_point(|t| t.filler + n + rs_n[0] <= max_n);
        if live == 0 {
            continue;
        }
        // striped split for load balance (cost varies smoothly with filler);
        // merge order does not matter: candidate keys are all distinct and
        // the bucket keeps the unique best under a strict total order
        let survivors: Vec<Vec<(u32, u32)>> = {
            let rs_n = &rs_n;
            let rs_f = &rs_f;
            let triples = &triples[..live];
            let filter = &filter;
            let floor_env = &floor_env;
            map_indexed(par, sweep_chunks, move |stripe| {
                let mut out = Vec::new();
                for (ti, triple) in triples
                    .iter()
                    .enumerate()
                    .skip(stripe)
                    .step_by(sweep_chunks)
                {
                    let base = triple.filler + n;
                    let r_max = max_n - base;
                    let len = rs_n.partition_point(|&r| r <= r_max);
                    if len == 0 {
                        continue;
                    }
                    let add = triple.a2_f * value_f + triple.filler as f64;
                    sweep_window(
                        triple,
                        add,
                        base,
                        rs_n,
                        rs_f,
                        filter,
                        floor_env,
                        0,
                        len,
                        ti as u32,
                        &mut out,
                    );
                }
                out
            })
        };

        for (ti, i) in survivors.into_iter().flatten() {
            let triple = &triples[ti as usize];
            let r = rs_n[i as usize];
            let t = (triple.filler + n + r) as usize;
            // cheap recheck against the filter raised by earlier merges of
            // this event, before paying for exact arithmetic
            let val_f =
                (triple.a1_f * rs_f[i as usize] + triple.a2_f * value_f + triple.filler as f64)
                    * triple.inv_b;
            if val_f <= filter[t] - VALUE_MARGIN {
                continue;
            }
            let (e_r, e_n) = (
                entries[r as usize].as_ref().expect("run-start has entry"),
                entries[n as usize].as_ref().expect("current entry set"),
            );
            let value = (rat_u(triple.a1) * e_r.lower.value()
                + rat_u(triple.a2) * e_n.lower.value()
                + rat_u(triple.filler))
                / rat_u(triple.b);
            let cand = Cand {
                trace_len: e_r.trace_len + e_n.trace_len + 1,
                derivation: Derivation::Combine {
                    a1: triple.a1,
                    a2: triple.a2,
                    b: triple.b,
                    n1: r,
                    n2: n,
                },
                value,
            };
            let replace = match &bucket[t] {
                Some(existing) => cand.better_than(existing),
                None => true,
            };
            if replace {
                let f = cand.value.to_f64().unwrap_or(f64::NEG_INFINITY);
                if f > filter[t] {
                    filter[t] = f;
                }
                bucket[t] = Some(cand);
            }
        }
    }

    Ledger {
        max_n,
        b_cap: params.b_cap,
        rules,
        entries,
    }
}

/// Exhaustive reference engine: iterates every rule application over every
/// entry pair until nothing changes. Exact but quadratic in `max_n` per
/// round — used for small instances, rule subsets without the monotone
/// rule, and as a cross-check of the fast engine in tests.
pub fn propagate_reference(params: &PropagateParams) -> Ledger {
    let max_n = params.max_n;
    let size = max_n as usize + 1;
    let mut entries: Vec<Option<LedgerEntry>> = vec![None; size];
    let rules = params.rules;

    let offer = |entries: &mut Vec<Option<LedgerEntry>>, n: u64, cand: Cand| -> bool {
        if n < 1 || n > max_n {
            return false;
        }
        let slot = &mut entries[n as usize];
        let replace = match slot {
            Some(e) => {
                cand.better_than(&Cand {
                    value: e.lower.value().clone(),
                    trace_len: e.trace_len,
                    derivation: e.lower.derivation().clone(),
                })
            }
            None => true,
        };
        if replace {
            *slot = Some(LedgerEntry {
                lower: LowerBound::new(n, cand.value, cand.derivation)
                    .expect("propagation produced an unsound bound"),
                trace_len: cand.trace_len,
            });
        }
        replace
    };

    // base facts
    for n in 1..=max_n {
        if rules.grid {
            let m = n.sqrt();
            if m * m == n {
                offer(
                    &mut entries,
                    n,
                    Cand {
                        value: rat_u(m),
                        trace_len: 1,
                        derivation: Derivation::Grid,
                    },
                );
            }
        }
        if rules.halasz {
            for (k, c) in halasz_instances(n) {
                offer(
                    &mut entries,
                    n,
                    Cand {
                        value: rat_u(k) + Rational::new(c.into(), k.into()),
                        trace_len: 1,
                        derivation: Derivation::Halasz { k, c },
                    },
                );
            }
        }
    }
    for ws in admissible_witnesses(params).values() {
        for &wi in ws {
            let w = &params.witnesses[wi];
            offer(
                &mut entries,
                w.n,
                Cand {
                    value: w.value.clone(),
                    trace_len: 1,
                    derivation: Derivation::Witness {
                        digest: w.digest.clone(),
                    },
                },
            );
        }
    }

    let triples: Vec<(u64, u64, u64)> = (2..=params.b_cap)
        .flat_map(|b| {
            (1..b).flat_map(move |a1| (1..=(b - a1)).map(move |a2| (a1, a2, b)))
        })
        .collect();

    loop {
        let mut changed = false;
        if rules.monotone {
            for n in 2..=max_n {
                if let Some(prev) = entries[n as usize - 1].clone() {
                    changed |= offer(
                        &mut entries,
                        n,
                        Cand {
                            value: prev.lower.value().clone(),
                            trace_len: prev.trace_len + 1,
                            derivation: Derivation::Monotone,
                        },
                    );
                }
            }
        }
        if rules.combine {
            for &(a1, a2, b) in &triples {
                let filler = b * b - a1 * a1 - a2 * a2;
                for n1 in 1..=max_n {
                    if filler + n1 + 1 > max_n {
                        break;
                    }
                    let Some(e1) = entries[n1 as usize].clone() else {
                        continue;
                    };
                    for n2 in 1..=(max_n - filler - n1) {
                        let Some(e2) = entries[n2 as usize].clone() else {
                            continue;
                        };
                        let value = (rat_u(a1) * e1.lower.value()
                            + rat_u(a2) * e2.lower.value()
                            + rat_u(filler))
                            / rat_u(b);
                        changed |= offer(
                            &mut entries,
                            filler + n1 + n2,
                            Cand {
                                value,
                                trace_len: e1.trace_len + e2.trace_len + 1,
                                derivation: Derivation::Combine { a1, a2, b, n1, n2 },
                            },
                        );
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    Ledger {
        max_n,
        b_cap: params.b_cap,
        rules,
        entries,
    }
}
