//! Heuristic search for `n`-square packings maximizing total side length.
//!
//! The nonconvexity of the packing problem is isolated in a discrete space:
//! an outer multi-start hill climb over [`SeparationAssignment`]s, with an
//! exactly convex inner step ([`solve_assignment`], a small LP) and a final
//! exact bridge ([`rationalize`]) that turns the best float candidate into
//! a verified certificate.
//!
//! Determinism: restart `r` runs on its own `ChaCha8` stream seeded with
//! `seed + r`, restarts merge by highest objective with the lowest restart
//! index winning ties, and early termination happens only at fixed chunk
//! boundaries — so results are identical for the sequential and parallel
//! engines and across platforms. A wall-clock budget, when set, is the one
//! knob that trades this cross-machine reproducibility for bounded runtime.

mod assignment;
mod rationalize;
mod simplex;

pub use assignment::{pair_count, Separation, SeparationAssignment};
pub use rationalize::{best_rational_in_unit, rationalize};
pub use simplex::{Constraint, LpResult};

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exec::{map_indexed, Parallelism};
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub n: u64,
    pub restarts: u32,
    pub seed: u64,
    /// Primal feasibility / optimality tolerance of the inner LP.
    pub lp_tolerance: f64,
    /// Denominator cap for the rationalization bridge.
    pub denom_bound: u64,
    /// Optional wall-clock cap, checked at restart-chunk boundaries.
    pub time_budget: Option<Duration>,
}

impl SearchConfig {
    pub fn new(n: u64) -> Self {
        SearchConfig {
            n,
            restarts: 100,
            seed: 42,
            lp_tolerance: 1e-9,
            denom_bound: 1024,
            time_budget: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::BadSearchConfig("n must be at least 1".into()));
        }
        if self.restarts < 1 {
            return Err(Error::BadSearchConfig("restarts must be at least 1".into()));
        }
        if self.denom_bound < 2 {
            return Err(Error::BadSearchConfig(
                "denom_bound must be at least 2".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatSquare {
    pub x: f64,
    pub y: f64,
    pub side: f64,
}

/// Float solution of one assignment's LP.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub squares: Vec<FloatSquare>,
    pub objective: f64,
    pub assignment: SeparationAssignment,
}

/// Maximize `Σ sᵢ` subject to containment and the assignment's separations.
/// Variables are `x_i, y_i, s_i ≥ 0`; zero sides are allowed here and
/// resolved at rationalization. Returns `None` on an infeasible system
/// (which no well-formed assignment produces — the all-zeros layout always
/// satisfies the constraints).
pub fn solve_assignment(
    n: usize,
    assignment: &SeparationAssignment,
    lp_tolerance: f64,
) -> Option<Candidate> {
    debug_assert_eq!(assignment.n(), n);
    let (xv, yv, sv) = (0, n, 2 * n);
    let mut constraints = Vec::with_capacity(2 * n + assignment.len());
    for i in 0..n {
        constraints.push(Constraint {
            coeffs: vec![(xv + i, 1.0), (sv + i, 1.0)],
            rhs: 1.0,
        });
        constraints.push(Constraint {
            coeffs: vec![(yv + i, 1.0), (sv + i, 1.0)],
            rhs: 1.0,
        });
    }
    for ((i, j), sep) in assignment.pairs() {
        let coeffs = match sep {
            Separation::ILeftJ => vec![(xv + i, 1.0), (sv + i, 1.0), (xv + j, -1.0)],
            Separation::JLeftI => vec![(xv + j, 1.0), (sv + j, 1.0), (xv + i, -1.0)],
            Separation::IBelowJ => vec![(yv + i, 1.0), (sv + i, 1.0), (yv + j, -1.0)],
            Separation::JBelowI => vec![(yv + j, 1.0), (sv + j, 1.0), (yv + i, -1.0)],
        };
        constraints.push(Constraint { coeffs, rhs: 0.0 });
    }
    let mut objective = vec![0.0f64; 3 * n];
    objective[sv..].fill(1.0);

    match simplex::maximize(3 * n, &objective, &constraints, lp_tolerance) {
        LpResult::Optimal { objective, x } => {
            let squares = (0..n)
                .map(|i| FloatSquare {
                    x: x[xv + i],
                    y: x[yv + i],
                    side: x[sv + i],
                })
                .collect();
            Some(Candidate {
                squares,
                objective,
                assignment: assignment.clone(),
            })
        }
        LpResult::Infeasible | LpResult::Unbounded => None,
    }
}

/// Restarts are merged in fixed-size chunks so that the early exit (an
/// objective at the `√n` ceiling cannot be improved) cuts off the same
/// restarts regardless of thread count.
const RESTART_CHUNK: u32 = 8;

pub fn search(config: &SearchConfig) -> Result<Candidate> {
    search_with(config, Parallelism::default())
}

pub fn search_with(config: &SearchConfig, par: Parallelism) -> Result<Candidate> {
    config.validate()?;
    let n = config.n as usize;
    let started = Instant::now();
    let ceiling = (config.n as f64).sqrt() - 1e-9;

    let mut best: Option<(f64, u32, Candidate)> = None;
    let mut chunk_start = 0u32;
    while chunk_start < config.restarts {
        let chunk_len = RESTART_CHUNK.min(config.restarts - chunk_start);
        let results = map_indexed(par, chunk_len as usize, |i| {
            run_restart(config, n, chunk_start + i as u32)
        });
        for (i, cand) in results.into_iter().enumerate() {
            let restart = chunk_start + i as u32;
            let replace = match &best {
                Some((obj, _, _)) => cand.objective > *obj,
                None => true,
            };
            if replace {
                best = Some((cand.objective, restart, cand));
            }
        }
        let (obj, _, _) = best.as_ref().expect("chunk produced candidates");
        if *obj >= ceiling {
            break;
        }
        if let Some(budget) = config.time_budget {
            if started.elapsed() >= budget {
                break;
            }
        }
        chunk_start += chunk_len;
    }
    Ok(best.expect("restarts >= 1").2)
}

/// One restart: a fresh seeded stream, a random center layout for the
/// initial assignment, then strict hill climbing on single-pair flips until
/// `50 · n(n−1)/2` consecutive non-improving moves.
fn run_restart(config: &SearchConfig, n: usize, restart: u32) -> Candidate {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(restart as u64));
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen::<f64>(), rng.gen::<f64>())).collect();
    let assignment = SeparationAssignment::from_points(&points);
    let mut current = solve_assignment(n, &assignment, config.lp_tolerance)
        .expect("separation systems with zero sides are always feasible");

    let pairs = pair_count(n);
    if pairs == 0 {
        return current;
    }
    let stagnation_limit = 50 * pairs;
    let ceiling = (config.n as f64).sqrt() - 1e-9;
    let mut assignment = current.assignment.clone();
    let mut stagnant = 0usize;

    while stagnant < stagnation_limit && current.objective < ceiling {
        let pair = rng.gen_range(0..pairs);
        let old = assignment.get_by_index(pair);
        // one of the three other disjuncts, uniformly
        let mut alternatives = Separation::ALL
            .into_iter()
            .filter(|s| *s != old);
        let pick = rng.gen_range(0..3);
        let new = alternatives.nth(pick).expect("three alternatives");
        assignment.set_by_index(pair, new);
        match solve_assignment(n, &assignment, config.lp_tolerance) {
            Some(cand) if cand.objective > current.objective + 1e-12 => {
                current = cand;
                stagnant = 0;
            }
            _ => {
                assignment.set_by_index(pair, old);
                stagnant += 1;
            }
        }
    }
    current
}
