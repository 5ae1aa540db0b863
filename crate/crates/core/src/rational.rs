//! Exact rational numbers, their text forms, and decimal rendering.
//!
//! Every measure in the crate is an exact [`Rational`]. Decimals exist only at
//! the edges: [`parse_rational`] accepts `a/b`, integer, decimal and
//! scientific literals, and [`to_decimal`] rounds half-to-even at a fixed
//! number of places.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseRationalError;

/// Arbitrary-precision rational used for every probability, believability and
/// certainty value.
pub type Rational = BigRational;

/// Build `num / den` from machine integers.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `10^-k` as an exact rational.
pub fn pow10_inv(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u32).pow(k))
}

/// Parse `a/b`, `a`, `0.125`, `-3.5`, or `1e-12` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| err())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let all_digits = format!("{whole}{frac}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().map_err(|_| err())?);
    let shift = exponent - frac.len() as i32;
    let ten = BigInt::from(10u32);
    if shift >= 0 {
        value *= Rational::from_integer(ten.pow(shift as u32));
    } else {
        value /= Rational::from_integer(ten.pow(shift.unsigned_abs()));
    }
    Ok(if negative { -value } else { value })
}

/// Canonical text form: `a/b` in lowest terms, or a bare integer.
pub fn to_exact_string(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Round half-to-even at `places` decimal places and format with exactly that
/// many digits after the point.
pub fn to_decimal(value: &Rational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let (floor, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = &rem * 2u32;
    let rounded = match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1u32,
        std::cmp::Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1u32
            }
        }
    };
    let negative = value.is_negative() && !rounded.is_zero();
    let digits = rounded.to_str_radix(10);
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{:0>width$}", digits, width = places + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - places);
        format!("{int_part}.{frac_part}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Lossy projection for display and float-side comparisons.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Sum of a sequence of rationals.
pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("8/200").unwrap(), ratio(1, 25));
        assert_eq!(parse_rational(" 3 ").unwrap(), int(3));
        assert_eq!(parse_rational("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-2.50").unwrap(), ratio(-5, 2));
        assert_eq!(parse_rational("1e-12").unwrap(), pow10_inv(12));
        assert_eq!(parse_rational("2.5E2").unwrap(), int(250));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "a/b", "1.2.3", "0x10", "-", ".", "1e", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn exact_strings_are_lowest_terms() {
        assert_eq!(to_exact_string(&ratio(150, 200)), "3/4");
        assert_eq!(to_exact_string(&ratio(200, 200)), "1");
        assert_eq!(to_exact_string(&int(0)), "0");
    }

    #[test]
    fn rounds_half_to_even() {
        assert_eq!(to_decimal(&ratio(13, 15), 3), "0.867");
        assert_eq!(to_decimal(&ratio(13, 15), 1), "0.9");
        assert_eq!(to_decimal(&ratio(1, 8), 2), "0.12");
        assert_eq!(to_decimal(&ratio(3, 8), 2), "0.38");
        assert_eq!(to_decimal(&ratio(5, 2), 0), "2");
        assert_eq!(to_decimal(&ratio(7, 2), 0), "4");
        assert_eq!(to_decimal(&ratio(3, 5), 3), "0.600");
        assert_eq!(to_decimal(&int(1), 3), "1.000");
        assert_eq!(to_decimal(&ratio(-1, 3), 2), "-0.33");
        assert_eq!(to_decimal(&ratio(-1, 1000), 2), "0.00");
        assert_eq!(to_decimal(&ratio(1, 1000), 3), "0.001");
    }
}
