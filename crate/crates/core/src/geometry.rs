//! Exact representation and verification of square packings inside the
//! unit square.
//!
//! Conventions: coordinates are unit-square coordinates with `y` growing
//! upward; a square is its bottom-left corner plus a strictly positive side
//! length; non-overlap means disjoint *interiors*, so shared boundaries are
//! permitted (the `b × b` grid is a valid packing). All checks are exact —
//! there is no floating point anywhere in this module.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::rational::{rat_u, Rational};
use crate::Result;

/// Axis-aligned square: left edge `x`, bottom edge `y`, side `s > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    x: Rational,
    y: Rational,
    side: Rational,
}

impl Square {
    /// Degenerate squares (side ≤ 0) are rejected at construction so that
    /// every `Square` in the system counts toward `n`.
    pub fn new(x: Rational, y: Rational, side: Rational) -> Result<Self> {
        if side <= Rational::zero() {
            return Err(Error::NonPositiveSide(side));
        }
        Ok(Square { x, y, side })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn side(&self) -> &Rational {
        &self.side
    }

    pub fn right(&self) -> Rational {
        &self.x + &self.side
    }

    pub fn top(&self) -> Rational {
        &self.y + &self.side
    }

    /// `0 ≤ x, y` and `x + s ≤ 1, y + s ≤ 1`, exactly.
    pub fn contained_in_unit(&self) -> bool {
        let one = rat_u(1);
        !self.x.is_negative()
            && !self.y.is_negative()
            && self.right() <= one
            && self.top() <= one
    }

    fn scaled_translated(&self, factor: &Rational, dx: &Rational, dy: &Rational) -> Square {
        Square {
            x: factor * &self.x + dx,
            y: factor * &self.y + dy,
            side: factor * &self.side,
        }
    }
}

/// Exact separating-axis test on interiors: true iff the interiors are
/// disjoint. Boundary contact (shared edges or corners) counts as disjoint.
pub fn squares_disjoint(a: &Square, b: &Square) -> bool {
    a.right() <= b.x || b.right() <= a.x || a.top() <= b.y || b.top() <= a.y
}

/// Derivation trace entry attached to a packing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Provenance {
    /// The `b × b` grid construction.
    Grid { b: u64 },
    /// Subgrid substitution: inputs identified by certificate digest.
    Combine {
        a1: u64,
        a2: u64,
        b: u64,
        left: String,
        right: String,
    },
    /// Produced by the heuristic search.
    Search { n: u64, seed: u64, restarts: u32 },
    /// Continued-fraction rationalization of a float candidate.
    Rationalize {
        denom_bound: u64,
        dropped: u32,
        shrunk: u32,
    },
    /// Free-form note (e.g. hand-constructed witnesses).
    Note { text: String },
}

/// An ordered list of squares in the unit square, with its exact total and
/// a derivation trace. The stored total is recomputed and cross-checked by
/// [`Packing::verify`]; constructors in this crate always store the exact
/// sum, so a mismatch can only arise from externally supplied data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    squares: Vec<Square>,
    total: Rational,
    provenance: Vec<Provenance>,
}

impl Packing {
    pub fn new(squares: Vec<Square>) -> Self {
        let total = squares
            .iter()
            .fold(Rational::zero(), |acc, sq| acc + &sq.side);
        Packing {
            squares,
            total,
            provenance: Vec::new(),
        }
    }

    pub fn empty() -> Self {
        Packing::new(Vec::new())
    }

    /// Construct from externally claimed parts without recomputing the
    /// total; `verify` will flag a mismatch. Used by certificate parsers.
    pub fn from_claimed_parts(
        squares: Vec<Square>,
        claimed_total: Rational,
        provenance: Vec<Provenance>,
    ) -> Self {
        Packing {
            squares,
            total: claimed_total,
            provenance,
        }
    }

    pub fn with_provenance(mut self, provenance: Vec<Provenance>) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn push_provenance(&mut self, entry: Provenance) {
        self.provenance.push(entry);
    }

    pub fn count(&self) -> usize {
        self.squares.len()
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    /// The stored total side length Σ sᵢ.
    pub fn total_side(&self) -> &Rational {
        &self.total
    }

    pub fn recompute_total(&self) -> Rational {
        self.squares
            .iter()
            .fold(Rational::zero(), |acc, sq| acc + &sq.side)
    }

    /// Exhaustive exact check: every containment violation and every
    /// overlapping pair is reported, not just the first.
    pub fn verify(&self) -> VerificationReport {
        let mut containment_violations = Vec::new();
        for (i, sq) in self.squares.iter().enumerate() {
            if !sq.contained_in_unit() {
                containment_violations.push(i);
            }
        }
        let mut overlaps = Vec::new();
        for i in 0..self.squares.len() {
            for j in (i + 1)..self.squares.len() {
                if !squares_disjoint(&self.squares[i], &self.squares[j]) {
                    overlaps.push((i, j));
                }
            }
        }
        let recomputed = self.recompute_total();
        let total_mismatch = if recomputed != self.total {
            Some(TotalMismatch {
                stored: self.total.clone(),
                recomputed,
            })
        } else {
            None
        };
        VerificationReport {
            containment_violations,
            overlaps,
            total_mismatch,
        }
    }

    /// Affine image `(x, y, s) ↦ (factor·x + dx, factor·y + dy, factor·s)`.
    /// Scales the total by exactly `factor`; disjointness and provenance are
    /// preserved.
    pub fn scale_translate(&self, factor: &Rational, dx: &Rational, dy: &Rational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::NonPositiveFactor(factor.clone()));
        }
        let squares: Vec<Square> = self
            .squares
            .iter()
            .map(|sq| sq.scaled_translated(factor, dx, dy))
            .collect();
        Ok(Packing::new(squares).with_provenance(self.provenance.clone()))
    }

    /// Canonical content digest (hex SHA-256 over the square list). Used to
    /// identify certificate inputs in provenance records.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.squares.len().to_string().as_bytes());
        for sq in &self.squares {
            hasher.update(b";");
            hasher.update(sq.x.to_string().as_bytes());
            hasher.update(b",");
            hasher.update(sq.y.to_string().as_bytes());
            hasher.update(b",");
            hasher.update(sq.side.to_string().as_bytes());
        }
        let out = hasher.finalize();
        let mut hex = String::with_capacity(64);
        for byte in out {
            use fmt::Write;
            let _ = write!(hex, "{byte:02x}");
        }
        hex
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalMismatch {
    pub stored: Rational,
    pub recomputed: Rational,
}

/// Outcome of [`Packing::verify`]. The packing is geometrically valid iff
/// both violation lists are empty; a total mismatch is flagged separately
/// (it indicates a corrupt certificate rather than bad geometry).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub containment_violations: Vec<usize>,
    pub overlaps: Vec<(usize, usize)>,
    pub total_mismatch: Option<TotalMismatch>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.containment_violations.is_empty() && self.overlaps.is_empty()
    }

    pub fn is_clean(&self) -> bool {
        self.is_valid() && self.total_mismatch.is_none()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return write!(f, "valid");
        }
        let mut parts = Vec::new();
        for i in &self.containment_violations {
            parts.push(format!("square {i} not contained in unit square"));
        }
        for (i, j) in &self.overlaps {
            parts.push(format!("squares {i} and {j} overlap"));
        }
        if let Some(m) = &self.total_mismatch {
            parts.push(format!(
                "stored total {} but squares sum to {}",
                m.stored, m.recomputed
            ));
        }
        write!(f, "{}", parts.join("; "))
    }
}
