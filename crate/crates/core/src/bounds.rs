//! Bound values with derivation traces.
//!
//! Lower bounds on `f(n)` are exact rationals tagged with the rule that
//! produced them. Upper bounds are the surds `√n` (stored as `n` itself and
//! compared by squaring) — the generic Cauchy–Schwarz bound, which is all
//! this workbench ever claims from above.

use num_integer::Roots;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::{rat_u, Rational};
use crate::surd::Surd;
use crate::Result;

/// Rule that produced a lower bound. The variant order is the tie-breaking
/// order between equal-value derivations (after trace length).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Derivation {
    Grid,
    Monotone,
    Halasz { k: u64, c: u64 },
    Combine { a1: u64, a2: u64, b: u64, n1: u64, n2: u64 },
    Witness { digest: String },
}

impl std::fmt::Display for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Derivation::Grid => write!(f, "Grid"),
            Derivation::Monotone => write!(f, "Monotone"),
            Derivation::Halasz { k, c } => write!(f, "Halasz({k},{c})"),
            Derivation::Combine { a1, a2, b, n1, n2 } => {
                write!(f, "Combine({a1},{a2},{b},{n1},{n2})")
            }
            Derivation::Witness { digest } => {
                write!(f, "Witness({})", &digest[..digest.len().min(12)])
            }
        }
    }
}

/// Exact lower bound on `f(n)`. Invariants enforced at construction:
/// `value > 0` and `value² ≤ n` (no lower bound may exceed Cauchy–Schwarz).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    n: u64,
    value: Rational,
    derivation: Derivation,
}

impl LowerBound {
    pub fn new(n: u64, value: Rational, derivation: Derivation) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::NonPositiveBound(value));
        }
        if &value * &value > rat_u(n) {
            return Err(Error::ExceedsUpperBound { n, value });
        }
        Ok(LowerBound {
            n,
            value,
            derivation,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn derivation(&self) -> &Derivation {
        &self.derivation
    }
}

/// The Cauchy–Schwarz upper bound `√n`, kept in surd form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpperBound {
    n: u64,
}

impl UpperBound {
    pub fn new(n: u64) -> Self {
        UpperBound { n }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn surd(&self) -> Surd {
        Surd::sqrt(self.n)
    }

    /// Exact rational value when `n` is a perfect square.
    pub fn as_rational(&self) -> Option<Rational> {
        let m = self.n.sqrt();
        (m * m == self.n).then(|| rat_u(m))
    }

    pub fn cmp_rational(&self, r: &Rational) -> std::cmp::Ordering {
        self.surd().cmp_rational(r)
    }
}

impl std::fmt::Display for UpperBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "sqrt({})", self.n)
    }
}

/// The generic `f(n) ≤ √n` bound, tight exactly at perfect squares.
pub fn ub_cauchy_schwarz(n: u64) -> UpperBound {
    UpperBound::new(n)
}

/// `f(m²) ≥ m` from the grid packing.
pub fn lb_grid(n: u64) -> Result<LowerBound> {
    let m = n.sqrt();
    if n == 0 || m * m != n {
        return Err(Error::NotPerfectSquare(n));
    }
    LowerBound::new(n, rat_u(m), Derivation::Grid)
}

/// The Halász inequality `f(k² + 2c + 1) ≥ k + c/k`.
///
/// Requires `1 ≤ c ≤ k`: above `c = k` the right-hand side would exceed
/// `√(k² + 2c + 1)`, so no such bound can hold.
pub fn lb_halasz(k: u64, c: u64) -> Result<LowerBound> {
    if k < 1 || c < 1 || c > k {
        return Err(Error::HalaszRange { k, c });
    }
    let n = k * k + 2 * c + 1;
    let value = rat_u(k) + Rational::new(c.into(), k.into());
    LowerBound::new(n, value, Derivation::Halasz { k, c })
}

/// Interval known to contain `ε(k) = f(k²+1) − k`: an exact rational lower
/// end and the surd upper end `√(k²+1) − k`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonInterval {
    k: u64,
    lb: Rational,
}

impl EpsilonInterval {
    pub(crate) fn new(k: u64, lb: Rational) -> Self {
        debug_assert!(!lb.is_negative());
        let interval = EpsilonInterval { k, lb };
        debug_assert!(
            interval.ub().cmp_rational(&interval.lb) != std::cmp::Ordering::Less,
            "epsilon interval inverted at k={k}"
        );
        interval
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn lb(&self) -> &Rational {
        &self.lb
    }

    /// `√(k²+1) − k`, exactly.
    pub fn ub(&self) -> Surd {
        Surd::new(
            -rat_u(self.k),
            rat_u(1),
            self.k * self.k + 1,
        )
    }

    /// `ε(k) < 1/(2k)`: the squared form of `√(k²+1) < k + 1/(2k)`.
    pub fn ub_below_half_inverse(&self) -> bool {
        let half_inv = Rational::new(1.into(), (2 * self.k).into());
        self.ub().lt_rational(&half_inv)
    }
}

impl std::fmt::Display for EpsilonInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lb, self.ub())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use num_traits::Zero;
    use std::cmp::Ordering;

    #[test]
    fn cauchy_schwarz_examples() {
        assert_eq!(ub_cauchy_schwarz(9).as_rational(), Some(rat_u(3)));
        assert_eq!(ub_cauchy_schwarz(1).as_rational(), Some(rat_u(1)));
        let ub2 = ub_cauchy_schwarz(2);
        assert!(ub2.as_rational().is_none());
        assert_eq!(ub2.cmp_rational(&rat_u(1)), Ordering::Greater);
        assert_eq!(ub2.cmp_rational(&rat(3, 2)), Ordering::Less);
    }

    #[test]
    fn grid_bounds() {
        assert_eq!(lb_grid(16).unwrap().value(), &rat_u(4));
        assert_eq!(lb_grid(1).unwrap().value(), &rat_u(1));
        assert_eq!(lb_grid(2500).unwrap().value(), &rat_u(50));
        assert!(matches!(lb_grid(2), Err(Error::NotPerfectSquare(2))));
        assert!(matches!(lb_grid(0), Err(Error::NotPerfectSquare(0))));
    }

    #[test]
    fn halasz_bounds() {
        let lb = lb_halasz(2, 1).unwrap();
        assert_eq!(lb.n(), 7);
        assert_eq!(lb.value(), &rat(5, 2));

        let lb = lb_halasz(1, 1).unwrap();
        assert_eq!(lb.n(), 4);
        assert_eq!(lb.value(), &rat_u(2));

        let lb = lb_halasz(3, 2).unwrap();
        assert_eq!(lb.n(), 14);
        assert_eq!(lb.value(), &rat(11, 3));
    }

    #[test]
    fn halasz_range_enforced() {
        assert!(matches!(lb_halasz(2, 0), Err(Error::HalaszRange { .. })));
        // c > k would claim more than sqrt(n) allows
        assert!(matches!(lb_halasz(1, 2), Err(Error::HalaszRange { .. })));
        assert!(matches!(lb_halasz(3, 4), Err(Error::HalaszRange { .. })));
    }

    #[test]
    fn lower_bound_invariants() {
        assert!(matches!(
            LowerBound::new(2, rat(3, 2), Derivation::Grid),
            Err(Error::ExceedsUpperBound { .. })
        ));
        assert!(matches!(
            LowerBound::new(4, Rational::zero(), Derivation::Grid),
            Err(Error::NonPositiveBound(_))
        ));
        // boundary: value² = n is allowed
        assert!(LowerBound::new(4, rat_u(2), Derivation::Grid).is_ok());
    }

    #[test]
    fn derivation_tie_order_matches_listing() {
        assert!(Derivation::Grid < Derivation::Monotone);
        assert!(Derivation::Monotone < Derivation::Halasz { k: 1, c: 1 });
        assert!(
            Derivation::Halasz { k: 1, c: 1 }
                < Derivation::Combine { a1: 1, a2: 1, b: 2, n1: 1, n2: 1 }
        );
        assert!(
            Derivation::Combine { a1: 9, a2: 9, b: 99, n1: 1, n2: 1 }
                < Derivation::Witness { digest: String::new() }
        );
        // lexicographic within a rule
        assert!(
            Derivation::Halasz { k: 2, c: 1 } < Derivation::Halasz { k: 2, c: 2 }
        );
    }

    #[test]
    fn epsilon_interval_upper_end() {
        let e = EpsilonInterval::new(3, Rational::zero());
        assert_eq!(e.ub().to_string(), "sqrt(10)-3");
        assert!(e.ub_below_half_inverse());
        assert_eq!(e.to_string(), "[0, sqrt(10)-3]");
    }
}
