//! Exact-arithmetic workbench for the unit-square packing function `f(n)`:
//! the maximum total side length of `n` non-overlapping axis-aligned squares
//! packed inside the unit square.
//!
//! Everything certified is computed in arbitrary-precision rationals; floats
//! appear only inside the heuristic optimizer and as display hints.
//!
//! Module map:
//!
//! * [`geometry`] — squares, packings, and the exact verifier.
//! * [`constructions`] — the `b × b` grid and the subgrid-substitution
//!   combinator that realizes the packing lemma constructively.
//! * [`bounds`] / [`ledger`] — lower/upper bounds on `f(n)` with derivation
//!   traces, propagated to a fixpoint over the inequality rules.
//! * [`theorems`] — conditional implication checkers and the harmonic
//!   partial-sum demonstrator.
//! * [`optimizer`] — disjunctive-LP search for good packings, bridged back
//!   to exact certificates by continued-fraction rationalization.
//!
//! The `parallel` feature (on by default) runs the data-parallel inner loops
//! on rayon; without it everything falls back to sequential execution with
//! identical results.

pub mod bounds;
pub mod constructions;
mod error;
pub mod exec;
pub mod geometry;
pub mod ledger;
pub mod optimizer;
pub mod rational;
pub mod surd;
pub mod theorems;

pub use bounds::{Derivation, EpsilonInterval, LowerBound, UpperBound};
pub use error::Error;
pub use exec::Parallelism;
pub use geometry::{squares_disjoint, Packing, Provenance, Square, VerificationReport};
pub use ledger::{Ledger, PropagateParams, RuleSet, WitnessEntry};
pub use rational::Rational;
pub use surd::Surd;

pub type Result<T> = std::result::Result<T, Error>;
