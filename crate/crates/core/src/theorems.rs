//! Conditional implication checkers and the divergence demonstrator.
//!
//! Everything here is a *what-if* engine over exact rationals: the outputs
//! are flagged conditional and never enter the ledger, which records only
//! unconditional facts.

use num_traits::{Signed, ToPrimitive};

use crate::error::Error;
use crate::rational::{rat_u, Rational};
use crate::Result;

/// The downward implication: if `ε(n) = 0` for some `n ≥ 2k`, then
/// `f(k²+1) ≤ k` and hence `ε(k) = 0`.
///
/// Materializes the substitution `n1 = k²+1, n2 = k², a1 = a2 = k, b = n`
/// whose target index is `n²+1` and whose constant side collapses to `2k²`
/// exactly, so the conditional upper bound is `(2k² − k²)/k = k` with
/// nothing left over.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalBound {
    pub k: u64,
    pub n: u64,
    /// `b² − a1² − a2² + n1 + n2 = n² + 1`.
    pub target_index: u64,
    /// `k² + k² − n² + n·n`, kept in unreduced form to exhibit the
    /// cancellation.
    pub constant_side: Rational,
    /// The conditional upper bound on `f(k²+1)`.
    pub bound: Rational,
}

pub fn theorem1_implication(k: u64, n: u64) -> Result<ConditionalBound> {
    if k < 1 || n < 2 * k {
        return Err(Error::ImplicationHypothesis { k, n });
    }
    let target_index = n * n + 1;
    // k·f(k²+1) + k·f(k²) ≤ k² + k² − n² + n·f(n²+1); under ε(n) = 0 the
    // last term is n·n and the right side collapses
    let constant_side = rat_u(k * k) + rat_u(k * k) - rat_u(n * n) + rat_u(n) * rat_u(n);
    // subtract k·f(k²) = k·k and divide by k
    let bound = (&constant_side - rat_u(k * k)) / rat_u(k);
    Ok(ConditionalBound {
        k,
        n,
        target_index,
        constant_side,
        bound,
    })
}

/// Conditional lower bound on `ε(k)` from a hypothetical excess
/// `f(N²+1) = N + α` with `α > 0`.
///
/// Instantiates the substitution with `n1 = a² + 2b + 1`, `n2 = N² + 1`,
/// coefficients `(a, N)` and `b = k − 1 ≥ a + N`, plus the Halász value
/// `f(a²+2b+1) ≥ a + b/a`. The chain reduces exactly to
/// `N·α ≤ b·ε(b+1)`, i.e. `ε(k) ≥ N·α/(k−1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalEpsilonBound {
    pub big_n: u64,
    pub alpha: Rational,
    pub a: u64,
    pub k: u64,
    /// `b = k − 1`.
    pub b: u64,
    /// First substituted index `a² + 2b + 1`.
    pub n1: u64,
    /// Second substituted index `N² + 1`.
    pub n2: u64,
    /// The Halász value `a + b/a` used for `f(n1)`.
    pub halasz_value: Rational,
    /// Target index `b² − a² − N² + n1 + n2 = (b+1)² + 1 = k² + 1`.
    pub target_index: u64,
    /// `N·α`, the exact left side of `N·α ≤ b·ε(b+1)`.
    pub product: Rational,
    /// The conditional bound `ε(k) ≥ N·α/(k−1)`.
    pub epsilon_lower: Rational,
}

pub fn theorem2_epsilon_rule(
    big_n: u64,
    alpha: &Rational,
    a: u64,
    k: u64,
) -> Result<ConditionalEpsilonBound> {
    if !alpha.is_positive() {
        return Err(Error::NonPositiveAlpha(alpha.clone()));
    }
    if big_n < 1 || a < 1 || k < a + big_n + 1 {
        return Err(Error::EpsilonRuleHypothesis { k, a, big_n });
    }
    let b = k - 1;
    let n1 = a * a + 2 * b + 1;
    let n2 = big_n * big_n + 1;
    let target_index = b * b - a * a - big_n * big_n + n1 + n2;
    debug_assert_eq!(target_index, k * k + 1);
    let halasz_value = rat_u(a) + Rational::new(b.into(), a.into());
    let product = rat_u(big_n) * alpha;
    let epsilon_lower = &product / rat_u(b);
    Ok(ConditionalEpsilonBound {
        big_n,
        alpha: alpha.clone(),
        a,
        k,
        b,
        n1,
        n2,
        halasz_value,
        target_index,
        product,
        epsilon_lower,
    })
}

/// Compensated partial sum `Σ_{k=k0}^{K} c/k` in floating point.
///
/// Kahan summation keeps the relative error well under 1e−9 for any
/// desk-scale `K` (each term contributes one rounding of at most one ulp
/// to the compensation). The exact-rational modules never consume this
/// value; it exists to demonstrate divergence numerically.
pub fn divergence_partial_sum(c: &Rational, k0: u64, k_end: u64) -> f64 {
    debug_assert!(k0 >= 1, "harmonic terms start at k >= 1");
    let cf = c.to_f64().unwrap_or(f64::NAN);
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    for k in k0..=k_end {
        let term = cf / k as f64;
        let y = term - compensation;
        let t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
    }
    sum
}
