//! Exact rationals and their text forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `num/den` or a plain integer. The denominator must be nonzero.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Reduced `[numerator, denominator]` strings with a positive denominator.
pub fn to_pair(r: &Rational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

pub fn from_pair(num: &str, den: &str) -> Option<Rational> {
    parse_rational(&format!("{num}/{den}"))
}

/// `num` when integral, else `num/den`.
pub fn display(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rational("-6/4").unwrap(), Rational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("3/-6").map(|r| to_pair(&r)), Some(["-1".into(), "2".into()]));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
        assert_eq!(display(&parse_rational("10/4").unwrap()), "5/2");
    }
}
