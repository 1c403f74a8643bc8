//! Number domains every construction and check runs over.
//!
//! All three domains share one text grammar: signed decimals, fractions
//! `p/q`, and sums of products involving `sqrt(m)` for square-free `m > 1`.
//! The rational domain rejects `sqrt`; the approximate domain evaluates it.

mod approx;
mod parse;
mod rational;
mod surd;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;

pub use approx::{Approx, DEFAULT_TOLERANCE};
pub use rational::Rational;
pub use surd::Surd;

use crate::error::{Error, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Rational,
    Surd,
    Approx,
}

impl Domain {
    pub const ALL: [Domain; 3] = [Domain::Rational, Domain::Surd, Domain::Approx];

    pub fn name(self) -> &'static str {
        match self {
            Domain::Rational => "rational",
            Domain::Surd => "surd",
            Domain::Approx => "approx",
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Domain::Approx)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Domain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Domain::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown domain {s:?} (expected rational, surd or approx)")))
    }
}

/// An element of one of the number domains.
///
/// `PartialEq` is exact for the exact domains and tolerance-based for
/// [`Approx`]; every identity check in the crate goes through it.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const DOMAIN: Domain;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_bigint(n: BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn parse(text: &str) -> Result<Self, ParseError>;

    /// `self^m` by square-and-multiply; `m = 0` gives one.
    fn pow(&self, m: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        result
    }

    /// The integer value, when the scalar is one.
    fn to_integer(&self) -> Option<BigInt>;

    /// A total order used for sorting and multiset comparison. It is not
    /// the numeric order for surds.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    /// Prime radicands the value depends on; empty outside the surd domain.
    fn radicands(&self) -> BTreeSet<u64> {
        BTreeSet::new()
    }

    /// Overrides the comparison tolerance; a no-op for exact domains.
    fn with_tolerance(self, _tolerance: f64) -> Self {
        self
    }

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }
}

/// Parses a scalar, attaching the text and a label to any error.
pub fn parse_scalar<T: Scalar>(text: &str, what: &str) -> Result<T, Error> {
    T::parse(text.trim()).map_err(|source| Error::Parse {
        what: what.to_string(),
        text: text.to_string(),
        source,
    })
}

/// Parses a comma-separated list of scalars.
pub fn parse_list<T: Scalar>(text: &str, what: &str) -> Result<Vec<T>, Error> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(i, item)| parse_scalar(item, &format!("{what} #{}", i + 1)))
        .collect()
}

pub fn sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v)
}

/// Sorts a copy of `values` by [`Scalar::canonical_cmp`].
pub fn sorted<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut out = values.to_vec();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}
