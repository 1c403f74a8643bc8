use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, ToPrimitive};

use super::parse::parse_expression;
use super::{Domain, Scalar};
use crate::error::ParseError;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Double-precision value compared under a relative tolerance.
///
/// Two values are equal when `|u - v| <= tol * max(1, |u|, |v|)`, using the
/// larger of the two tolerances. Results of arithmetic carry the larger
/// tolerance of their operands.
#[derive(Clone, Copy, Debug)]
pub struct Approx {
    pub value: f64,
    pub tolerance: f64,
}

impl Approx {
    pub fn new(value: f64) -> Self {
        Self {
            value,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tol(value: f64, tolerance: f64) -> Self {
        Self { value, tolerance }
    }

    fn combine(self, rhs: Self, value: f64) -> Self {
        Self {
            value,
            tolerance: self.tolerance.max(rhs.tolerance),
        }
    }
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        let tol = self.tolerance.max(other.tolerance);
        let scale = 1f64.max(self.value.abs()).max(other.value.abs());
        (self.value - other.value).abs() <= tol * scale
    }
}

impl Add for Approx {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.combine(rhs, self.value + rhs.value)
    }
}

impl Sub for Approx {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.combine(rhs, self.value - rhs.value)
    }
}

impl Mul for Approx {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.combine(rhs, self.value * rhs.value)
    }
}

impl Neg for Approx {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: -self.value,
            tolerance: self.tolerance,
        }
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Scalar for Approx {
    const DOMAIN: Domain = Domain::Approx;

    fn zero() -> Self {
        Self::new(0.0)
    }

    fn one() -> Self {
        Self::new(1.0)
    }

    fn from_bigint(n: BigInt) -> Self {
        Self::new(n.to_f64().unwrap_or(f64::INFINITY))
    }

    fn is_zero(&self) -> bool {
        self.value.abs() <= self.tolerance
    }

    /// Accepts the full grammar, including `sqrt(m)`, and rounds the exact
    /// value to the nearest double.
    fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(Self::new(parse_expression(text)?.value.to_f64()))
    }

    fn pow(&self, m: u32) -> Self {
        Self {
            value: self.value.powi(m as i32),
            tolerance: self.tolerance,
        }
    }

    fn to_integer(&self) -> Option<BigInt> {
        let nearest = self.value.round();
        (*self == Self::with_tol(nearest, self.tolerance))
            .then(|| BigInt::from_f64(nearest))
            .flatten()
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.value.total_cmp(&other.value)
    }

    fn with_tolerance(self, tolerance: f64) -> Self {
        Self { tolerance, ..self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_equality() {
        assert_eq!(Approx::new(1.0), Approx::new(1.0 + 5e-10));
        assert_ne!(Approx::new(1.0), Approx::new(1.0 + 5e-9));
        // relative above magnitude one
        assert_eq!(Approx::new(1e6), Approx::new(1e6 + 1e-4));
        // the looser tolerance of the two wins
        assert_eq!(Approx::with_tol(1.0, 1e-12), Approx::new(1.0 + 5e-10));
        assert_ne!(Approx::with_tol(1.0, 1e-12), Approx::with_tol(1.0 + 5e-10, 1e-12));
    }

    #[test]
    fn parses_roots_as_floats() {
        let v = Approx::parse("1+sqrt(2)").unwrap();
        assert_eq!(v, Approx::new(1.0 + 2f64.sqrt()));
        assert_eq!(Approx::parse("2.1").unwrap().value, 2.1);
    }

    #[test]
    fn near_integers() {
        assert_eq!(Approx::new(6.0000000000001).to_integer(), Some(BigInt::from(6)));
        assert_eq!(Approx::new(6.4).to_integer(), None);
    }
}
