//! Exact rational helpers shared by every crate in the workspace.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `"3/4"`, `"-2"`, `"0.9"` or `"1e-4"` into an exact rational.
pub fn parse_q(text: &str) -> Result<Q, ParseRationalError> {
    let s = text.trim();
    let err = || ParseRationalError(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| err())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all = format!("{int_part}{frac_part}");
    let num: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| err())? };
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(num);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Canonical `num/den` rendering; integers print without a denominator.
pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Rounded decimal rendering for display only.
pub fn fmt_decimal(v: &Q, digits: usize) -> String {
    let scale = BigRational::from_integer(num_traits::pow(BigInt::from(10), digits));
    let scaled = (v * &scale).round();
    let neg = scaled.is_negative();
    let mut s = scaled.abs().to_integer().to_string();
    if digits > 0 {
        while s.len() <= digits {
            s.insert(0, '0');
        }
        s.insert(s.len() - digits, '.');
    }
    if neg {
        s.insert(0, '-');
    }
    s
}

pub fn to_f64(v: &Q) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

/// Wrapper giving `Display` to a rational using [`fmt_q`].
pub struct Show<'a>(pub &'a Q);

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_q("9/10").unwrap(), q(9, 10));
        assert_eq!(parse_q("0.9").unwrap(), q(9, 10));
        assert_eq!(parse_q("0.89995").unwrap(), q(89995, 100000));
        assert_eq!(parse_q("-2").unwrap(), qi(-2));
        assert_eq!(parse_q("1e-4").unwrap(), q(1, 10000));
        assert_eq!(parse_q(".5").unwrap(), q(1, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
        assert!(parse_q("").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(fmt_q(&q(18, 100)), "9/50");
        assert_eq!(fmt_q(&qi(1)), "1");
        assert_eq!(fmt_q(&q(-1, 3)), "-1/3");
        assert_eq!(fmt_decimal(&q(1, 3), 4), "0.3333");
        assert_eq!(fmt_decimal(&q(-9823, 10000), 2), "-0.98");
    }
}
