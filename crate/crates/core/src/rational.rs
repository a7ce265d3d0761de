//! Exact rational coordinates: parsing, serialization and norm bounds.
//!
//! Coordinates in input files are JSON integers, fraction strings `"a/b"`, or
//! decimal strings with finite expansion (`"0.25"`); all three parse to exact
//! rationals. Equality of projections is exact, never tolerance-based:
//! witnessing and alignment are measure-zero conditions that floating point
//! would render vacuously false or flaky.

use num::integer::Roots;
use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoordinateError {
    #[error("cannot parse `{input}` as an exact rational (use an integer, `a/b`, or a finite decimal)")]
    Unparseable { input: String },
    #[error("zero denominator in `{input}`")]
    ZeroDenominator { input: String },
    #[error("JSON number {value} is not an exact integer; encode non-integers as strings")]
    InexactNumber { value: String },
}

/// Parses an exact rational from its text form: an optional sign followed by
/// an integer, a fraction `a/b`, or a finite decimal expansion.
pub fn parse_rational(input: &str) -> Result<BigRational, CoordinateError> {
    let text = input.trim();
    let unparseable = || CoordinateError::Unparseable {
        input: input.to_string(),
    };
    if let Some((numer, denom)) = text.split_once('/') {
        let numer: BigInt = numer.trim().parse().map_err(|_| unparseable())?;
        let denom: BigInt = denom.trim().parse().map_err(|_| unparseable())?;
        if denom.is_zero() {
            return Err(CoordinateError::ZeroDenominator {
                input: input.to_string(),
            });
        }
        return Ok(BigRational::new(numer, denom));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let (sign, whole_digits) = match whole.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() {
            return Err(unparseable());
        }
        if !whole_digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(unparseable());
        }
        let whole_value: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| unparseable())?
        };
        let frac_value: BigInt = frac.parse().map_err(|_| unparseable())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let magnitude = whole_value * &scale + frac_value;
        return Ok(BigRational::new(BigInt::from(sign) * magnitude, scale));
    }
    let value: BigInt = text.parse().map_err(|_| unparseable())?;
    Ok(BigRational::from_integer(value))
}

/// Parses a coordinate from a JSON value: an integer number or a string in
/// any of the text forms.
pub fn coordinate_from_json(value: &Value) -> Result<BigRational, CoordinateError> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(BigInt::from(i)))
            } else if let Some(u) = n.as_u64() {
                Ok(BigRational::from_integer(BigInt::from(u)))
            } else {
                Err(CoordinateError::InexactNumber {
                    value: n.to_string(),
                })
            }
        }
        Value::String(s) => parse_rational(s),
        other => Err(CoordinateError::Unparseable {
            input: other.to_string(),
        }),
    }
}

/// Serializes a rational as a JSON value: an integer number when it fits
/// into `i64`, otherwise its exact text form.
pub fn coordinate_to_json(value: &BigRational) -> Value {
    if value.is_integer() {
        if let Ok(small) = i64::try_from(value.numer().clone()) {
            return Value::from(small);
        }
        return Value::from(value.numer().to_string());
    }
    Value::from(format!("{}/{}", value.numer(), value.denom()))
}

/// Squared Euclidean norm of a rational vector.
pub fn norm_squared(coords: &[BigRational]) -> BigRational {
    coords.iter().map(|c| c * c).sum()
}

/// Squared Euclidean distance between rational vectors of equal length.
pub fn distance_squared(a: &[BigRational], b: &[BigRational]) -> BigRational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y;
            &d * &d
        })
        .sum()
}

/// A positive rational lower bound for the square root of a non-negative
/// rational: `isqrt(numer·denom)/denom ≤ sqrt(numer/denom)`.
///
/// Exact whenever the input is the square of a rational (always the case for
/// one-dimensional distances), a strict underestimate otherwise.
pub fn sqrt_lower_bound(value: &BigRational) -> BigRational {
    assert!(!value.is_negative(), "square root of a negative rational");
    if value.is_zero() {
        return BigRational::zero();
    }
    let scaled = value.numer() * value.denom();
    let root = scaled.sqrt();
    BigRational::new(root, value.denom().clone())
}

/// Rational constructed from an integer pair.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Formats a rational compactly: integer form when possible, `a/b` otherwise.
pub fn format_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// True when the rational is at most one in absolute value.
pub fn within_unit_interval(value: &BigRational) -> bool {
    value.abs() <= BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::Sign;

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("42").unwrap(), int(42));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("0.125").unwrap(), ratio(1, 8));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.").is_err());
        assert_eq!(
            parse_rational("1/0"),
            Err(CoordinateError::ZeroDenominator {
                input: "1/0".to_string()
            })
        );
    }

    #[test]
    fn json_round_trip() {
        let v = coordinate_from_json(&Value::from(5i64)).unwrap();
        assert_eq!(v, int(5));
        let v = coordinate_from_json(&Value::from("7/2")).unwrap();
        assert_eq!(v, ratio(7, 2));
        assert!(coordinate_from_json(&Value::from(0.5f64)).is_err());
        assert_eq!(coordinate_to_json(&int(5)), Value::from(5i64));
        assert_eq!(coordinate_to_json(&ratio(7, 2)), Value::from("7/2"));
    }

    #[test]
    fn sqrt_bound_is_exact_on_squares() {
        assert_eq!(sqrt_lower_bound(&ratio(9, 4)), ratio(3, 2));
        assert_eq!(sqrt_lower_bound(&int(49)), int(7));
        assert_eq!(sqrt_lower_bound(&BigRational::zero()), BigRational::zero());
    }

    #[test]
    fn sqrt_bound_is_a_lower_bound() {
        for (n, d) in [(2i64, 1i64), (3, 1), (5, 7), (123, 17), (1, 3)] {
            let x = ratio(n, d);
            let bound = sqrt_lower_bound(&x);
            assert!(&bound * &bound <= x, "bound² must not exceed the input");
            assert!(bound > BigRational::zero());
        }
    }

    #[test]
    fn distances() {
        let a = vec![int(0), int(0)];
        let b = vec![int(3), int(4)];
        assert_eq!(distance_squared(&a, &b), int(25));
        assert_eq!(norm_squared(&b), int(25));
        assert!(within_unit_interval(&ratio(-1, 1)));
        assert!(!within_unit_interval(&ratio(5, 4)));
    }

    #[test]
    fn sign_is_normalised() {
        let v = parse_rational("3/-6").unwrap();
        assert_eq!(v, ratio(-1, 2));
        assert_eq!(v.numer().sign(), Sign::Minus);
    }
}
