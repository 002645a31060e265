//! Bridge from float candidates to exact certificates.
//!
//! Coordinates are rounded to the best rational approximation with bounded
//! denominator (continued fractions with the final semiconvergent, decided
//! by exact comparison), then sides are shrunk by the minimal exact amount
//! that re-establishes the assignment's separations and containment. The
//! output always passes the exact verifier; it may have fewer squares or a
//! slightly smaller total than the float objective, never more.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::geometry::{Packing, Provenance, Square};
use crate::rational::{rat_u, Rational};

use super::assignment::Separation;
use super::Candidate;

/// Best rational approximation of `x` (clamped to `[0, 1]`) among all
/// fractions with denominator ≤ `max_denom`. Ties prefer the smaller
/// denominator (and the earlier convergent at equal denominators).
pub fn best_rational_in_unit(x: f64, max_denom: u64) -> Rational {
    debug_assert!(max_denom >= 1);
    let clamped = x.clamp(0.0, 1.0);
    let target = Rational::from_float(clamped).expect("clamped float is finite");
    let bound = BigInt::from(max_denom);

    // convergents h/k of the continued fraction of `target`
    let (mut num, mut den) = (target.numer().clone(), target.denom().clone());
    let (mut h_prev, mut k_prev) = (BigInt::one(), BigInt::zero());
    let (mut h, mut k) = (&num / &den, BigInt::one());

    loop {
        let rem = &num % &den;
        if rem.is_zero() {
            // exact: target itself has denominator ≤ bound
            return Rational::new(h, k);
        }
        num = std::mem::replace(&mut den, rem);
        let a = &num / &den;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if k_next > bound {
            // largest admissible semiconvergent against the last convergent
            let t = (&bound - &k_prev) / &k;
            let semi = Rational::new(&t * &h + &h_prev, &t * &k + &k_prev);
            let conv = Rational::new(h.clone(), k.clone());
            let err_semi = (&target - &semi).abs();
            let err_conv = (&target - &conv).abs();
            return if err_semi < err_conv { semi } else { conv };
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Exact packing from a float candidate. Infallible: degenerate squares are
/// dropped and over-long sides are shrunk until the exact verifier accepts.
pub fn rationalize(candidate: &Candidate, denom_bound: u64) -> Packing {
    let n = candidate.assignment.n();
    debug_assert_eq!(candidate.squares.len(), n);

    struct Cell {
        x: Rational,
        y: Rational,
        side: Rational,
    }

    let mut cells: Vec<Option<Cell>> = candidate
        .squares
        .iter()
        .map(|sq| {
            let side = best_rational_in_unit(sq.side, denom_bound);
            if side.is_positive() {
                Some(Cell {
                    x: best_rational_in_unit(sq.x, denom_bound),
                    y: best_rational_in_unit(sq.y, denom_bound),
                    side,
                })
            } else {
                None
            }
        })
        .collect();
    let mut dropped = cells.iter().filter(|c| c.is_none()).count() as u32;
    let mut shrunk = 0u32;

    // Shrink each side to the largest exact value the separations and the
    // unit square admit at the rounded positions. A cap can go nonpositive
    // when rounding reordered two coordinates; such squares are dropped and
    // the pass repeats, since a drop can only relax the remaining caps.
    loop {
        let mut dropped_this_round = false;
        for i in 0..n {
            let Some(cell) = &cells[i] else { continue };
            let mut cap = (rat_u(1) - &cell.x).min(rat_u(1) - &cell.y);
            for ((a, b), sep) in candidate.assignment.pairs() {
                let (constrained, other) = match sep {
                    Separation::ILeftJ | Separation::IBelowJ => (a, b),
                    Separation::JLeftI | Separation::JBelowI => (b, a),
                };
                if constrained != i {
                    continue;
                }
                let Some(other_cell) = &cells[other] else {
                    continue;
                };
                let room = match sep {
                    Separation::ILeftJ | Separation::JLeftI => &other_cell.x - &cell.x,
                    Separation::IBelowJ | Separation::JBelowI => &other_cell.y - &cell.y,
                };
                if room < cap {
                    cap = room;
                }
            }
            if cap.is_positive() {
                let cell = cells[i].as_mut().unwrap();
                if cell.side > cap {
                    cell.side = cap;
                    shrunk += 1;
                }
            } else {
                cells[i] = None;
                dropped += 1;
                dropped_this_round = true;
            }
        }
        if !dropped_this_round {
            break;
        }
    }

    let squares: Vec<Square> = cells
        .into_iter()
        .flatten()
        .map(|c| Square::new(c.x, c.y, c.side).expect("shrink pass keeps sides positive"))
        .collect();
    let mut packing = Packing::new(squares);
    packing.push_provenance(Provenance::Rationalize {
        denom_bound,
        dropped,
        shrunk,
    });
    debug_assert!(packing.verify().is_clean());
    packing
}
