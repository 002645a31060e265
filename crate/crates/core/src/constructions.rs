//! Executable packing constructions.
//!
//! [`grid`] tiles the unit square with `b²` squares of side `1/b` (total
//! exactly `b`). [`combine`] substitutes two packings into corner subgrids
//! of a `b × b` grid: the first, scaled by `a1/b`, replaces the `a1 × a1`
//! cell block in the top-left corner; the second, scaled by `a2/b`, the
//! `a2 × a2` block in the bottom-right corner; every remaining cell keeps
//! its `1/b` square. Under `a1 + a2 ≤ b` the two blocks cannot meet, and
//! the output's count and total are exactly the values given by
//! [`lemma_rhs`].

use num_traits::Zero;

use crate::error::Error;
use crate::geometry::{Packing, Provenance, Square};
use crate::rational::{rat_u, Rational};
use crate::Result;

/// The `b × b` grid packing: cell `(i, j)` at `(i/b, j/b)` with side `1/b`,
/// emitted in row-major order (rows bottom to top). Total is exactly `b`.
pub fn grid(b: u64) -> Result<Packing> {
    if b == 0 {
        return Err(Error::EmptyGrid);
    }
    let side = Rational::new(1.into(), b.into());
    let mut squares = Vec::with_capacity((b * b) as usize);
    for j in 0..b {
        for i in 0..b {
            squares.push(Square::new(&side * rat_u(i), &side * rat_u(j), side.clone())?);
        }
    }
    Ok(Packing::new(squares).with_provenance(vec![Provenance::Grid { b }]))
}

fn check_subgrid_hypothesis(a1: u64, a2: u64, b: u64) -> Result<()> {
    if a1 == 0 || a2 == 0 || a1 + a2 > b {
        return Err(Error::SubgridHypothesis { a1, a2, b });
    }
    Ok(())
}

/// Count and total of the substitution output, computed symbolically from
/// the input counts and totals:
///
/// ```text
/// count = b² − a1² − a2² + n1 + n2
/// total = (a1·t1 + a2·t2 + b² − a1² − a2²) / b
/// ```
///
/// Requires `a1, a2 ≥ 1` and `a1 + a2 ≤ b` (which also makes
/// `b² − a1² − a2²` nonnegative).
pub fn lemma_rhs(
    n1: u64,
    t1: &Rational,
    n2: u64,
    t2: &Rational,
    a1: u64,
    a2: u64,
    b: u64,
) -> Result<(u64, Rational)> {
    check_subgrid_hypothesis(a1, a2, b)?;
    let filler = b * b - a1 * a1 - a2 * a2;
    let count = filler + n1 + n2;
    let total = (rat_u(a1) * t1 + rat_u(a2) * t2 + rat_u(filler)) / rat_u(b);
    Ok((count, total))
}

/// Substitute `p1` and `p2` into the corner subgrids of the `b × b` grid.
///
/// Both inputs must pass the exact verifier. The output square order is:
/// `p1`'s squares (scaled into the top-left block), then `p2`'s (scaled
/// into the bottom-right block), then the remaining grid cells row-major —
/// deterministic, so certificates and digests are reproducible.
pub fn combine(p1: &Packing, p2: &Packing, a1: u64, a2: u64, b: u64) -> Result<Packing> {
    check_subgrid_hypothesis(a1, a2, b)?;
    for (name, p) in [("first", p1), ("second", p2)] {
        let report = p.verify();
        if !report.is_valid() {
            return Err(Error::InvalidPacking(format!("{name} input: {report}")));
        }
    }

    let cell = Rational::new(1.into(), b.into());
    // top-left block: columns [0, a1), rows [b - a1, b)
    let scaled1 = p1.scale_translate(
        &(rat_u(a1) / rat_u(b)),
        &Rational::zero(),
        &(rat_u(b - a1) / rat_u(b)),
    )?;
    // bottom-right block: columns [b - a2, b), rows [0, a2)
    let scaled2 = p2.scale_translate(
        &(rat_u(a2) / rat_u(b)),
        &(rat_u(b - a2) / rat_u(b)),
        &Rational::zero(),
    )?;

    let mut squares = Vec::new();
    squares.extend_from_slice(scaled1.squares());
    squares.extend_from_slice(scaled2.squares());
    for j in 0..b {
        for i in 0..b {
            let in_block1 = i < a1 && j >= b - a1;
            let in_block2 = i >= b - a2 && j < a2;
            if in_block1 || in_block2 {
                continue;
            }
            squares.push(Square::new(
                &cell * rat_u(i),
                &cell * rat_u(j),
                cell.clone(),
            )?);
        }
    }

    let packing = Packing::new(squares).with_provenance(vec![Provenance::Combine {
        a1,
        a2,
        b,
        left: p1.digest(),
        right: p2.digest(),
    }]);

    debug_assert_eq!(
        {
            let (count, total) = lemma_rhs(
                p1.count() as u64,
                p1.total_side(),
                p2.count() as u64,
                p2.total_side(),
                a1,
                a2,
                b,
            )?;
            (count as usize, total)
        },
        (packing.count(), packing.total_side().clone())
    );

    Ok(packing)
}
