//! Exact rationals.
//!
//! Everything in this crate is computed over arbitrary-precision fractions in
//! lowest terms; [`Rational`] is `num_rational::BigRational`, which keeps that
//! normal form after every operation. This module adds the handful of helpers
//! the rest of the crate needs: parsing/printing the `p/q` text form and
//! dyadic bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal {0:?}")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `2^-p`.
pub fn pow2_neg(p: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << p)
}

/// `2^k`.
pub fn pow2(k: u32) -> Rational {
    Rational::from_integer(BigInt::one() << k)
}

/// Smallest `k` such that `|q| <= 2^k`.
pub fn log2_ceil_abs(q: &Rational) -> u32 {
    let a = q.abs();
    if a <= Rational::one() {
        return 0;
    }
    let c = a.ceil().to_integer();
    let bits = c.bits() as u32;
    // c <= 2^bits always; tighten when c is an exact power of two
    if (BigInt::one() << (bits - 1)) >= c {
        bits - 1
    } else {
        bits
    }
}

/// Smallest `k` such that `n <= 2^k`.
pub fn log2_ceil_u64(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Parses `p/q`, `-p/q` or a bare integer. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |part: &str| -> Result<BigInt, ParseRationalError> {
        let part = part.trim();
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRationalError::Invalid(text.to_string()));
        }
        part.parse::<BigInt>()
            .map_err(|_| ParseRationalError::Invalid(text.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(text.to_string()));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Exact text form: `p/q`, or `p` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Rounds `q` to the nearest multiple of `2^-p` (ties away from zero).
pub fn round_to_dyadic(q: &Rational, p: u32) -> Rational {
    let scale = BigInt::one() << p;
    let scaled = q * Rational::from_integer(scale.clone());
    let num = scaled.numer();
    let den = scaled.denom();
    let (quot, rem) = num.abs().div_rem(den);
    let twice = rem * 2;
    let mut mag = quot;
    if twice >= *den {
        mag += 1;
    }
    let signed = if num.is_negative() { -mag } else { mag };
    Rational::new(signed, scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(format_rational(&ratio(10, 4)), "5/2");
        assert_eq!(format_rational(&int(-3)), "-3");
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("a/2").is_err());
        assert!(parse_rational("1/-").is_err());
    }

    #[test]
    fn dyadic_helpers() {
        assert_eq!(log2_ceil_abs(&int(0)), 0);
        assert_eq!(log2_ceil_abs(&ratio(1, 3)), 0);
        assert_eq!(log2_ceil_abs(&int(2)), 1);
        assert_eq!(log2_ceil_abs(&ratio(5, 2)), 2);
        assert_eq!(log2_ceil_abs(&int(-4)), 2);
        assert_eq!(log2_ceil_abs(&int(5)), 3);
        assert_eq!(log2_ceil_u64(0), 0);
        assert_eq!(log2_ceil_u64(1), 0);
        assert_eq!(log2_ceil_u64(2), 1);
        assert_eq!(log2_ceil_u64(3), 2);
        assert_eq!(log2_ceil_u64(1024), 10);
        assert_eq!(pow2_neg(3), ratio(1, 8));
        assert_eq!(pow2(3), int(8));
    }

    #[test]
    fn dyadic_rounding() {
        assert_eq!(round_to_dyadic(&(int(1) - pow2_neg(20)), 4), int(1));
        assert_eq!(round_to_dyadic(&ratio(1, 3), 2), ratio(1, 4));
        assert_eq!(round_to_dyadic(&ratio(-1, 3), 2), ratio(-1, 4));
        assert_eq!(round_to_dyadic(&ratio(3, 8), 2), ratio(1, 2));
    }
}
