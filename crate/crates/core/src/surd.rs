//! Quadratic surds `q + c·√d`, compared against rationals exactly by
//! squaring. Upper bounds on `f(n)` are the surds `√n`, and epsilon
//! intervals carry upper ends of the form `√(k²+1) − k`; neither is ever
//! rounded to floating point for a certified comparison.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Roots;
use num_traits::{Signed, Zero};

use crate::rational::{rat_u, Rational};

/// Exact value `rational + coeff · √radicand`.
#[derive(Debug, Clone, PartialEq)]
pub struct Surd {
    rational: Rational,
    coeff: Rational,
    radicand: u64,
}

impl Surd {
    pub fn new(rational: Rational, coeff: Rational, radicand: u64) -> Self {
        Surd {
            rational,
            coeff,
            radicand,
        }
    }

    /// Plain `√d`.
    pub fn sqrt(radicand: u64) -> Self {
        Surd::new(Rational::zero(), rat_u(1), radicand)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    /// The exact rational value, when there is one (perfect-square radicand
    /// or vanishing coefficient).
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeff.is_zero() || self.radicand == 0 {
            return Some(self.rational.clone());
        }
        let root = self.radicand.sqrt();
        if root * root == self.radicand {
            Some(&self.rational + &self.coeff * rat_u(root))
        } else {
            None
        }
    }

    /// Exact three-way comparison against a rational.
    ///
    /// Sign of `A + B√d` with `A = rational − r`, `B = coeff`: when the two
    /// terms agree in sign the answer is immediate; otherwise compare
    /// `A²` against `B²·d`, whose order flips with the sign of `A`.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        let a = &self.rational - r;
        let b = &self.coeff;
        if b.is_zero() || self.radicand == 0 {
            return a.cmp(&Rational::zero());
        }
        match (a.is_negative(), b.is_negative()) {
            // a >= 0, b > 0: strictly positive (d >= 1)
            (false, false) => Ordering::Greater,
            (true, true) => Ordering::Less,
            // a >= 0 vs |b|√d
            (false, true) => (&a * &a).cmp(&(b * b * rat_u(self.radicand))),
            // b√d vs |a|
            (true, false) => (b * b * rat_u(self.radicand)).cmp(&(&a * &a)),
        }
    }

    pub fn gt_rational(&self, r: &Rational) -> bool {
        self.cmp_rational(r) == Ordering::Greater
    }

    pub fn lt_rational(&self, r: &Rational) -> bool {
        self.cmp_rational(r) == Ordering::Less
    }

    /// Float approximation, for display hints only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.rational.to_f64().unwrap_or(f64::NAN)
            + self.coeff.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::One;
        if self.coeff.is_zero() {
            return write!(f, "{}", self.rational);
        }
        if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)?;
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)?;
        }
        if self.rational.is_positive() {
            write!(f, "+{}", self.rational)?;
        } else if self.rational.is_negative() {
            write!(f, "{}", self.rational)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    #[test]
    fn sqrt_two_brackets() {
        let s = Surd::sqrt(2);
        assert_eq!(s.cmp_rational(&rat_u(1)), Ordering::Greater);
        assert_eq!(s.cmp_rational(&rat(3, 2)), Ordering::Less);
        assert_eq!(s.cmp_rational(&rat(-1, 1)), Ordering::Greater);
    }

    #[test]
    fn perfect_square_is_rational() {
        let s = Surd::sqrt(9);
        assert_eq!(s.as_rational(), Some(rat_u(3)));
        assert_eq!(s.cmp_rational(&rat_u(3)), Ordering::Equal);
        assert!(Surd::sqrt(2).as_rational().is_none());
    }

    #[test]
    fn shifted_surd_comparisons() {
        // sqrt(10) - 3 is in (0, 1/6)
        let eps = Surd::new(rat_i(-3), rat_u(1), 10);
        assert!(eps.gt_rational(&Rational::zero()));
        assert!(eps.lt_rational(&rat(1, 6)));
        // sqrt(2) - 1 < 1/2
        let e1 = Surd::new(rat_i(-1), rat_u(1), 2);
        assert!(e1.lt_rational(&rat(1, 2)));
        assert!(e1.gt_rational(&rat(2, 5)));
    }

    #[test]
    fn negative_coeff_branch() {
        // 2 - sqrt(2) vs 1/2: compare A=3/2 > 0, B=-1: A² = 9/4 vs B²d = 2 -> Greater
        let s = Surd::new(rat_u(2), rat_i(-1), 2);
        assert_eq!(s.cmp_rational(&rat(1, 2)), Ordering::Greater);
        assert_eq!(s.cmp_rational(&rat(3, 5)), Ordering::Less);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Surd::sqrt(7).to_string(), "sqrt(7)");
        assert_eq!(Surd::new(rat_i(-3), rat_u(1), 10).to_string(), "sqrt(10)-3");
        assert_eq!(Surd::new(rat(1, 2), rat_u(2), 3).to_string(), "2*sqrt(3)+1/2");
    }
}
