use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("square side must be positive, got {0}")]
    NonPositiveSide(Rational),
    #[error("scale factor must be positive, got {0}")]
    NonPositiveFactor(Rational),
    #[error("grid size must be at least 1")]
    EmptyGrid,
    #[error("subgrid sizes must satisfy a1 >= 1, a2 >= 1, a1 + a2 <= b; got a1={a1}, a2={a2}, b={b}")]
    SubgridHypothesis { a1: u64, a2: u64, b: u64 },
    #[error("input packing is invalid: {0}")]
    InvalidPacking(String),
    #[error("{0} is not a perfect square")]
    NotPerfectSquare(u64),
    #[error("halasz rule requires 1 <= c <= k, got k={k}, c={c}")]
    HalaszRange { k: u64, c: u64 },
    #[error("lower bound {value} at n={n} would exceed sqrt(n)")]
    ExceedsUpperBound { n: u64, value: Rational },
    #[error("bound value must be positive, got {0}")]
    NonPositiveBound(Rational),
    #[error("ledger has no entry for n={0}")]
    MissingEntry(u64),
    #[error("epsilon interval needs k^2+1 <= max_n; got k={k} with max_n={max_n}")]
    EpsilonOutOfRange { k: u64, max_n: u64 },
    #[error("implication needs n >= 2k, got k={k}, n={n}")]
    ImplicationHypothesis { k: u64, n: u64 },
    #[error("epsilon rule needs k >= a + N + 1, got k={k}, a={a}, N={big_n}")]
    EpsilonRuleHypothesis { k: u64, a: u64, big_n: u64 },
    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(Rational),
    #[error("search config: {0}")]
    BadSearchConfig(String),
}
