//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its elapsed time (run with `--nocapture` to see them). Every tolerance
//! and wall-clock limit is pinned in code.

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};

use sqpack_core::constructions::{combine, grid, lemma_rhs};
use sqpack_core::ledger::{propagate, PropagateParams};
use sqpack_core::optimizer::{rationalize, search, SearchConfig};
use sqpack_core::rational::{rat, rat_u, Rational};
use sqpack_core::theorems::{divergence_partial_sum, theorem1_implication, theorem2_epsilon_rule};
use sqpack_core::{Derivation, Packing, Square};

fn report(criterion: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= limit,
        "{criterion}: runtime {elapsed:?} exceeds limit {limit:?}"
    );
    println!("acceptance {criterion}: PASS ({elapsed:.2?} <= {limit:?})");
}

/// Criterion 1: propagate(max_n = 2500) reproduces f(m²) = m for m ≤ 50,
/// with LB(m²) equal to the √-upper bound by exact squaring. Under 5 s.
#[test]
fn criterion_1_grid_identity() {
    let started = Instant::now();
    let ledger = propagate(&PropagateParams::new(2500));
    for m in 1..=50u64 {
        let n = m * m;
        let lb = ledger.lower(n).unwrap_or_else(|| panic!("no LB({n})"));
        assert_eq!(lb.value(), &rat_u(m), "LB({n})");
        let ub = ledger.upper(n).as_rational().expect("perfect square");
        assert_eq!(lb.value(), &ub, "LB({n}) == UB({n})");
        assert_eq!(lb.derivation(), &Derivation::Grid);
    }
    report("criterion 1 (grid identity)", started, Duration::from_secs(5));
}

/// Criterion 2: for every admissible (a1, a2, b ≤ 10) with grid inputs the
/// combine output passes the exact verifier and matches lemma_rhs exactly;
/// substituting grids reproduces total b. Under 10 s.
#[test]
fn criterion_2_lemma_construction() {
    let started = Instant::now();
    let mut checked = 0u32;
    for b in 2..=10u64 {
        for a1 in 1..b {
            for a2 in 1..=(b - a1) {
                let p1 = grid(a1).unwrap();
                let p2 = grid(a2).unwrap();
                let out = combine(&p1, &p2, a1, a2, b).unwrap();
                let report = out.verify();
                assert!(report.is_clean(), "verify failed at ({a1},{a2},{b}): {report}");
                let (count, total) = lemma_rhs(
                    p1.count() as u64,
                    p1.total_side(),
                    p2.count() as u64,
                    p2.total_side(),
                    a1,
                    a2,
                    b,
                )
                .unwrap();
                assert_eq!(out.count() as u64, count, "count at ({a1},{a2},{b})");
                assert_eq!(out.total_side(), &total, "total at ({a1},{a2},{b})");
                assert_eq!(out.total_side(), &rat_u(b), "grid identity at ({a1},{a2},{b})");
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 165); // sum over b of b(b-1)/2 admissible pairs
    report("criterion 2 (lemma construction)", started, Duration::from_secs(10));
}

/// Criterion 3: the Halász rule puts LB(7) = 5/2 and LB(14) ≥ 11/3 in the
/// ledger, each satisfying LB² ≤ n exactly.
#[test]
fn criterion_3_halasz_rule() {
    let started = Instant::now();
    let ledger = propagate(&PropagateParams::new(20));
    let lb7 = ledger.lower(7).unwrap();
    assert_eq!(lb7.value(), &rat(5, 2));
    assert_eq!(lb7.derivation(), &Derivation::Halasz { k: 2, c: 1 });
    assert!(lb7.value() * lb7.value() <= rat_u(7));

    let lb14 = ledger.lower(14).unwrap();
    assert!(lb14.value() >= &rat(11, 3), "LB(14) = {}", lb14.value());
    assert!(lb14.value() * lb14.value() <= rat_u(14));
    report("criterion 3 (halasz rule)", started, Duration::from_secs(5));
}

/// Criterion 4: for every k ≤ 50 with n = 2k, the conditional bound is
/// exactly k — the 2k² cancellation is exact. Under 1 s.
#[test]
fn criterion_4_theorem1_checker() {
    let started = Instant::now();
    for k in 1..=50u64 {
        let cb = theorem1_implication(k, 2 * k).unwrap();
        assert_eq!(cb.bound, rat_u(k), "conditional bound at k={k}");
        assert_eq!(cb.constant_side, rat_u(2 * k * k), "cancellation at k={k}");
        assert_eq!(cb.target_index, 4 * k * k + 1);
    }
    report("criterion 4 (theorem-1 checker)", started, Duration::from_secs(1));
}

/// Criterion 5: with hypothetical N = 2, alpha = 1/10, a = 1 the rule gives
/// ε(k) ≥ (1/5)/(k−1) for k ≥ 4; the partial sum of those bounds over
/// k = 4..100000 lands in [2.10, 2.13], demonstrating divergence. Under 1 s.
///
/// The bound sum Σ_{k=4}^{100000} (1/5)/(k−1) is the shifted harmonic call
/// divergence_partial_sum(1/5, 3, 99999). The literal call (1/5, 4, 100000)
/// evaluates the terms 1/k instead of 1/(k−1); it equals 2.0513626 (frozen
/// from a 40-digit harmonic-number evaluation) and also clears the
/// divergence threshold 2.
#[test]
fn criterion_5_theorem2_and_divergence() {
    let started = Instant::now();
    let alpha = rat(1, 10);
    for k in 4..=60u64 {
        let out = theorem2_epsilon_rule(2, &alpha, 1, k).unwrap();
        let expected = rat(1, 5) / rat_u(k - 1);
        assert_eq!(out.epsilon_lower, expected, "epsilon bound at k={k}");
    }
    assert!(theorem2_epsilon_rule(2, &alpha, 1, 3).is_err());

    let bound_sum = divergence_partial_sum(&rat(1, 5), 3, 99_999);
    assert!(
        (2.10..=2.13).contains(&bound_sum),
        "epsilon-bound partial sum {bound_sum} outside [2.10, 2.13]"
    );
    let literal = divergence_partial_sum(&rat(1, 5), 4, 100_000);
    assert!((literal - 2.051362559306019).abs() < 1e-8, "literal call {literal}");
    assert!(literal > 2.0, "divergence threshold");
    report("criterion 5 (theorem-2 + divergence)", started, Duration::from_secs(1));
}

/// Criterion 6: for k ≤ 50 the rules-only ledger gives ε-interval lb = 0
/// and ub = √(k²+1) − k with ub < 1/(2k) by exact squaring. Under 1 s
/// (given a propagated ledger; propagation itself is budgeted in
/// criterion 1).
#[test]
fn criterion_6_epsilon_intervals() {
    let ledger = propagate(&PropagateParams::new(2501));
    let started = Instant::now();
    for k in 1..=50u64 {
        let eps = ledger.epsilon_interval(k).unwrap();
        assert!(eps.lb().is_zero(), "rules-only lb at k={k}");
        let ub = eps.ub();
        assert_eq!(ub.radicand(), k * k + 1);
        assert!(
            ub.gt_rational(&Rational::zero()),
            "ub must be positive at k={k}"
        );
        assert!(eps.ub_below_half_inverse(), "ub < 1/(2k) fails at k={k}");
    }
    report("criterion 6 (epsilon intervals)", started, Duration::from_secs(1));
}

/// Criterion 7: optimizer regression at seed 42 with ≤ 1000 restarts —
/// exact rationalized totals reach 1, 1, 3/2, 2, 3 within 1e−6 for
/// n = 1, 2, 3, 4, 9; every packing passes the exact verifier; no total
/// exceeds √n. Under 60 s total.
#[test]
fn criterion_7_optimizer_regression() {
    let started = Instant::now();
    let targets: [(u64, Rational); 5] = [
        (1, rat_u(1)),
        (2, rat_u(1)),
        (3, rat(3, 2)),
        (4, rat_u(2)),
        (9, rat_u(3)),
    ];
    for (n, target) in targets {
        let config = SearchConfig {
            restarts: 200,
            seed: 42,
            ..SearchConfig::new(n)
        };
        assert!(config.restarts <= 1000);
        let cand = search(&config).unwrap();
        let packing = rationalize(&cand, config.denom_bound);
        let report = packing.verify();
        assert!(report.is_clean(), "n={n}: {report}");

        let total = packing.total_side();
        assert!(total * total <= rat_u(n), "n={n}: total exceeds sqrt(n)");

        let gap = (total - &target).abs();
        assert!(
            gap <= rat(1, 1_000_000),
            "n={n}: exact total {total} not within 1e-6 of {target}"
        );
        // and the float objective agrees with the exact total to 1e-6
        let exact_f = sqpack_core::rational::decimal_hint(total, 12)
            .parse::<f64>()
            .unwrap();
        assert!(
            (exact_f - cand.objective).abs() < 1e-6,
            "n={n}: exact {exact_f} vs float {}",
            cand.objective
        );
    }
    report("criterion 7 (optimizer regression)", started, Duration::from_secs(60));
}

/// Criterion 8: 10,000 overlap-inducing perturbations are each rejected
/// with exactly the offending pair; 10,000 validity-preserving
/// perturbations are accepted. Under 30 s.
#[test]
fn criterion_8_verifier_fuzz() {
    let started = Instant::now();
    let cases = 10_000usize;

    // deterministic splitmix-style stream; the fuzz plan only needs
    // uniform-ish integers
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };

    for case in 0..cases {
        let b = 2 + next() % 5; // grid size 2..=6
        let base = grid(b).unwrap();
        let idx = (next() % (b * b)) as usize;
        let (col, row) = (idx as u64 % b, idx as u64 / b);
        // move toward an edge-adjacent neighbor by delta in (0, 1/(2b))
        let dirs: &[(i64, i64)] = &[(1, 0), (-1, 0), (0, 1), (0, -1)];
        let mut dir = dirs[(next() % 4) as usize];
        if (col == 0 && dir.0 < 0)
            || (col == b - 1 && dir.0 > 0)
            || (row == 0 && dir.1 < 0)
            || (row == b - 1 && dir.1 > 0)
        {
            dir = (-dir.0, -dir.1);
        }
        let denom = 2 * b * (2 + next() % 7);
        let delta = Rational::new(1.into(), denom.into());
        let squares: Vec<Square> = base
            .squares()
            .iter()
            .enumerate()
            .map(|(i, sq)| {
                if i == idx {
                    Square::new(
                        sq.x() + rat_u(dir.0.unsigned_abs()) * rat(dir.0.signum(), 1) * &delta,
                        sq.y() + rat_u(dir.1.unsigned_abs()) * rat(dir.1.signum(), 1) * &delta,
                        sq.side().clone(),
                    )
                    .unwrap()
                } else {
                    sq.clone()
                }
            })
            .collect();
        let perturbed = Packing::new(squares);
        let report = perturbed.verify();
        let neighbor_col = (col as i64 + dir.0) as u64;
        let neighbor_row = (row as i64 + dir.1) as u64;
        let neighbor = (neighbor_row * b + neighbor_col) as usize;
        let expected_pair = (idx.min(neighbor), idx.max(neighbor));
        assert_eq!(
            report.overlaps,
            vec![expected_pair],
            "case {case}: wrong overlap report for b={b}, idx={idx}, dir={dir:?}"
        );
        assert!(report.containment_violations.is_empty(), "case {case}");
    }

    // validity-preserving: shrink a square and jitter it within the freed
    // slack; verify must accept
    for case in 0..cases {
        let b = 2 + next() % 5;
        let base = grid(b).unwrap();
        let idx = (next() % (b * b)) as usize;
        let shrink_den = 2 + next() % 9;
        let shrink = Rational::new((shrink_den - 1).into(), shrink_den.into());
        let squares: Vec<Square> = base
            .squares()
            .iter()
            .enumerate()
            .map(|(i, sq)| {
                if i == idx {
                    let new_side = sq.side() * &shrink;
                    let slack = sq.side() - &new_side;
                    let jitter_den = 1 + next() % 5;
                    let jitter = slack * rat(1, jitter_den as i64);
                    Square::new(sq.x() + &jitter, sq.y() + jitter.clone(), new_side).unwrap()
                } else {
                    sq.clone()
                }
            })
            .collect();
        let perturbed = Packing::new(squares);
        let report = perturbed.verify();
        assert!(report.is_clean(), "case {case}: {report}");
    }

    report("criterion 8 (verifier fuzz)", started, Duration::from_secs(30));
}
