//! Exact rational scalars and the small amount of glue the rest of the crate
//! needs around [`num_rational::BigRational`].

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics when `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Sign of `q` as -1, 0 or 1.
pub fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `-0.125`.
///
/// Decimals are converted exactly, so `0.1` becomes `1/10`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: input.to_string(),
    };
    let s = input.trim();
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
    if let Some((whole, fraction)) = s.split_once('.') {
        if fraction.is_empty() || !fraction.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{whole_digits}{fraction}");
        let mut num: BigInt = digits.parse().map_err(|_| err())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), fraction.len());
        return Ok(Rational::new(num, den));
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Formats `x` with `digits` significant digits, `%g`-style.
pub fn fmt_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let exponent = x.abs().log10().floor() as i32;
    // Rounding can bump the exponent (9.9999 -> 10.000), so format first and
    // read the exponent back.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().unwrap_or(exponent);
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        format!("{mantissa}e{exp}")
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-5/2").unwrap(), frac(-5, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-0.125").unwrap(), frac(-1, 8));
        assert_eq!(parse_rational("1.5").unwrap(), frac(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn display_is_p_over_q() {
        assert_eq!(frac(-5, 2).to_string(), "-5/2");
        assert_eq!(frac(4, 2).to_string(), "2");
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_significant(0.5, 12), "0.5");
        assert_eq!(fmt_significant(0.1, 12), "0.1");
        assert_eq!(fmt_significant(1e-6, 12), "1e-6");
        assert_eq!(fmt_significant(1.00000000000001e-5, 12), "1e-5");
        assert_eq!(fmt_significant(0.0001, 12), "0.0001");
        assert_eq!(fmt_significant(0.75000000000001, 12), "0.75");
        assert_eq!(fmt_significant(-1.0 / 3.0, 12), "-0.333333333333");
        assert_eq!(fmt_significant(123456.0, 3), "1.23e5");
    }
}
