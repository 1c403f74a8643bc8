use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::parse::parse_expression;
use super::{Domain, Scalar};
use crate::error::ParseError;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Self(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Self(q)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Add for Rational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_rational(&self.0))
    }
}

impl Scalar for Rational {
    const DOMAIN: Domain = Domain::Rational;

    fn zero() -> Self {
        Self(BigRational::zero())
    }

    fn one() -> Self {
        Self(BigRational::one())
    }

    fn from_bigint(n: BigInt) -> Self {
        Self::from_integer(n)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn parse(text: &str) -> Result<Self, ParseError> {
        let parsed = parse_expression(text)?;
        if let Some(at) = parsed.first_sqrt {
            return Err(ParseError::new(at, "sqrt is not available in the rational domain"));
        }
        let q = parsed
            .value
            .as_rational()
            .expect("sqrt-free expressions are rational");
        Ok(Self(q))
    }

    fn pow(&self, m: u32) -> Self {
        Self(num_traits::Pow::pow(&self.0, m))
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

/// Renders a rational as a terminating decimal when one exists
/// (`21/10` -> `2.1`), otherwise as `p/q`.
pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        return q.numer().to_string();
    }
    let denom = q.denom();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let mut rest = denom.clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    while rest.is_even() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", q.numer(), denom);
    }
    let places = twos.max(fives);
    let scale = num_traits::pow(BigInt::from(10u32), places) / denom;
    let scaled = q.numer() * scale;
    let digits = scaled.abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let sign = if scaled.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        Rational::parse(s).unwrap()
    }

    #[test]
    fn decimals_are_exact_fractions() {
        assert_eq!(r("2.1"), Rational::new(21, 10));
        assert_eq!(r("-2.3"), Rational::new(-23, 10));
        assert_eq!(r("0.25"), Rational::new(1, 4));
        assert_eq!(r(".5"), Rational::new(1, 2));
        assert_eq!(r("7/3"), Rational::new(7, 3));
        assert_eq!(r("-1/2 + 3"), Rational::new(5, 2));
    }

    #[test]
    fn rendering() {
        assert_eq!(Rational::new(21, 10).to_string(), "2.1");
        assert_eq!(Rational::new(-23, 10).to_string(), "-2.3");
        assert_eq!(Rational::new(-1, 20).to_string(), "-0.05");
        assert_eq!(Rational::new(111136, 1000).to_string(), "111.136");
        assert_eq!(Rational::new(7, 3).to_string(), "7/3");
        assert_eq!(Rational::new(-7, 6).to_string(), "-7/6");
        assert_eq!(Rational::from(-5).to_string(), "-5");
    }

    #[test]
    fn powers() {
        assert_eq!(Rational::new(21, 10).pow(2), Rational::new(441, 100));
        assert_eq!(Rational::new(-3, 7).pow(0), Rational::one());
        assert_eq!(Rational::new(-1, 2).pow(3), Rational::new(-1, 8));
    }

    #[test]
    fn rejects_surd_syntax() {
        let err = Rational::parse("1+sqrt(2)").unwrap_err();
        assert_eq!(err.position, 2);
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "1,5", "abc", "1+", "--", "1/0", "2..3", "1 2"] {
            assert!(Rational::parse(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn integer_detection() {
        assert_eq!(r("6").to_integer(), Some(BigInt::from(6)));
        assert_eq!(r("6.5").to_integer(), None);
    }
}
