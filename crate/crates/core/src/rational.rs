//! Exact rational scalars.
//!
//! All worths and payoffs are [`BigRational`](num::BigRational) values kept in
//! lowest terms. Text form is `p/q`, or a bare integer when `q = 1`.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};

pub type Rational = num::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `numer / denom`, reduced. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn format(value: &Rational) -> String {
    value.to_string()
}

/// Parses `p`, `-p`, or `p/q` (surrounding whitespace allowed).
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| Error::parse("rational", format!("invalid numerator in {text:?}")))?;
    let denom: BigInt = denom
        .parse()
        .map_err(|_| Error::parse("rational", format!("invalid denominator in {text:?}")))?;
    if denom.is_zero() {
        return Err(Error::parse("rational", format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse(" -3 ").unwrap(), int(-3));
        assert_eq!(parse("1/-2").unwrap(), ratio(-1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("0.5").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format(&ratio(6, 4)), "3/2");
        assert_eq!(format(&ratio(4, 2)), "2");
        assert_eq!(format(&ratio(-1, 3)), "-1/3");
        assert_eq!(format(&zero()), "0");
    }
}
