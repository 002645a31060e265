//! Exact rational arithmetic: the numeric type of record.
//!
//! `Rational` is an arbitrary-precision signed rational, always in lowest
//! terms with a positive denominator. Its `Display`/`FromStr` forms are
//! `p/q` (or just `p` when integral), which is also the wire format used by
//! certificate files.

use num_bigint::BigInt;
use num_traits::Signed;

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_u(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_i(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Decimal expansion of `r` with `digits` fractional digits, truncated
/// toward zero and with trailing zeros removed. Computed by integer long
/// division so it is platform-independent; for display hints only.
pub fn decimal_hint(r: &Rational, digits: u32) -> String {
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    let int_part = &num / &den;
    let mut rem = &num % &den;
    let mut frac = String::new();
    let ten = BigInt::from(10);
    for _ in 0..digits {
        rem *= &ten;
        frac.push_str(&(&rem / &den).to_string());
        rem %= &den;
    }
    while frac.ends_with('0') {
        frac.pop();
    }
    let sign = if neg && (!int_part.is_zero() || !frac.is_empty()) {
        "-"
    } else {
        ""
    };
    if frac.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac}")
    }
}

use num_traits::Zero;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = rat(2, -4);
        assert_eq!(r.to_string(), "-1/2");
        assert_eq!(rat(6, 3).to_string(), "2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["5/2", "-7/3", "4", "0", "-11"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
    }

    #[test]
    fn decimal_hints() {
        assert_eq!(decimal_hint(&rat(1, 3), 6), "0.333333");
        assert_eq!(decimal_hint(&rat(5, 2), 6), "2.5");
        assert_eq!(decimal_hint(&rat(-1, 8), 4), "-0.125");
        assert_eq!(decimal_hint(&rat_u(3), 6), "3");
        assert_eq!(decimal_hint(&rat(0, 1), 6), "0");
    }
}
