//! Multi-quadratic surds: finite sums `Σ q_m · √m` over square-free `m`
//! with rational coefficients.
//!
//! Keying every basis element by its square-free product keeps the
//! representation canonical: `√2·√3` and `√6` are the same key, and the
//! square-free roots are linearly independent over the rationals, so
//! coefficient-wise equality is exact equality of real numbers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::parse::parse_expression;
use super::rational::render_rational;
use super::{Domain, Scalar};
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    /// Square-free key -> nonzero coefficient. Key 1 is the rational part.
    terms: BTreeMap<u64, BigRational>,
}

impl Surd {
    pub fn from_rational(q: BigRational) -> Self {
        Self::sqrt_of(1, q)
    }

    /// `coeff · √radicand`; `radicand` must be square-free.
    pub fn sqrt_of(radicand: u64, coeff: BigRational) -> Self {
        debug_assert!(radicand >= 1 && is_square_free(radicand));
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(radicand, coeff);
        }
        Self { terms }
    }

    /// Coefficient of `√key` (key 1 for the rational part).
    pub fn coefficient(&self, key: u64) -> BigRational {
        self.terms.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero `(key, coefficient)` pairs in ascending key order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(k, q)| (*k, q))
    }

    /// `Some(q)` when the value has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub(crate) fn scale(mut self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::default();
        }
        for c in self.terms.values_mut() {
            *c = &*c * q;
        }
        self
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, q)| q.to_f64().unwrap_or(f64::NAN) * (*k as f64).sqrt())
            .sum()
    }

    fn insert_add(terms: &mut BTreeMap<u64, BigRational>, key: u64, coeff: BigRational) {
        match terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !coeff.is_zero() {
                    e.insert(coeff);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }
}

/// True when no square of a prime divides `m`.
pub(crate) fn is_square_free(m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let mut rest = m;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn prime_factors(mut m: u64, out: &mut BTreeSet<u64>) {
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            out.insert(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.insert(m);
    }
}

impl Add for Surd {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, q) in rhs.terms {
            Self::insert_add(&mut self.terms, k, q);
        }
        self
    }
}

impl Sub for Surd {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Surd {
    type Output = Self;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Mul for Surd {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut terms = BTreeMap::new();
        for (&s, p) in &self.terms {
            for (&t, q) in &rhs.terms {
                // √s·√t = g·√((s/g)(t/g)) with g = gcd(s, t)
                let g = s.gcd(&t);
                let key = (s / g)
                    .checked_mul(t / g)
                    .expect("surd radicand product overflows u64");
                let coeff = p * q * BigRational::from_integer(BigInt::from(g));
                Self::insert_add(&mut terms, key, coeff);
            }
        }
        Self { terms }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&key, coeff) in &self.terms {
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { "-" } else { "+" })?;
            }
            first = false;
            if key == 1 {
                f.write_str(&render_rational(&magnitude))?;
            } else if magnitude.is_one() {
                write!(f, "sqrt({key})")?;
            } else {
                write!(f, "{}*sqrt({key})", render_rational(&magnitude))?;
            }
        }
        Ok(())
    }
}

impl Scalar for Surd {
    const DOMAIN: Domain = Domain::Surd;

    fn zero() -> Self {
        Self::default()
    }

    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(parse_expression(text)?.value)
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().cmp(other.terms.iter())
    }

    fn radicands(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for &k in self.terms.keys() {
            prime_factors(k, &mut out);
        }
        out
    }
}
