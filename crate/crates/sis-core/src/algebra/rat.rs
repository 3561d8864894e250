//! Exact rational scalars.
//!
//! Every quantity in this crate is a rational number or a polynomial over
//! the rationals, so the scalar type is an arbitrary-precision rational,
//! always in lowest terms with positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, stored in lowest terms with denominator > 0.
pub type Rat = BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational n/d from machine integers.
pub fn ratio(n: i64, d: i64) -> Rat {
    assert!(d != 0, "ratio: zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Is the value an integer?
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Floor as a `BigInt`.
pub fn floor_int(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Exact conversion to `i64`; panics if the value is not a small integer.
pub fn to_i64(x: &Rat) -> i64 {
    assert!(is_integer(x), "to_i64: {} is not an integer", x);
    x.numer().to_i64().expect("to_i64: out of range")
}

/// Parse "a/b" or "a" into a rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Approximate value as f64 (test oracles only; the library itself never
/// rounds).
pub fn to_f64(x: &Rat) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Sign-aware ceiling of a/b for machine integers, b > 0.
pub fn ceil_div_u64(a: u64, b: u64) -> u64 {
    assert!(b > 0);
    a.div_ceil(b)
}

/// |x| as a rational.
pub fn abs(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rat("-5").unwrap(), rat(-5));
        assert_eq!(parse_rat("6/-4").unwrap(), ratio(-3, 2));
        assert!(parse_rat("1/0").is_none());
        assert_eq!(ratio(21, -14).to_string(), "-3/2");
    }

    #[test]
    fn floors() {
        assert_eq!(floor_int(&ratio(-5, 2)), BigInt::from(-3));
        assert_eq!(floor_int(&ratio(5, 2)), BigInt::from(2));
    }
}
