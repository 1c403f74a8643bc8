//! Recursive doubling of a balanced base identity.
//!
//! Level 1 translates the base by `k_1`. Each further level `n` appends the
//! opposite side shifted by `k_n`:
//!
//! ```text
//! xs' = xs ++ (ys + k_n)
//! ys' = ys ++ (xs + k_n)
//! ```
//!
//! After `n` levels each side holds `2^(n-1) · N` values whose power sums
//! agree for every exponent `1..=n`. Element order is significant: the
//! prefix and block identities are positional.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::scalar::{sum, Domain, Scalar};

pub const DEFAULT_MAX_LEVEL: usize = 24;

/// Two equal-sum tuples `a_1 + … + a_N = c_1 + … + c_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseIdentity<T> {
    left: Vec<T>,
    right: Vec<T>,
}

impl<T: Scalar> BaseIdentity<T> {
    /// Checks the shape only (`N >= 2` on both sides); the sum is checked
    /// by [`BaseIdentity::validate`] and at seed time.
    pub fn new(left: Vec<T>, right: Vec<T>) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::BaseShape(format!(
                "sides have {} and {} terms",
                left.len(),
                right.len()
            )));
        }
        if left.len() < 2 {
            return Err(Error::BaseShape(format!(
                "need at least two terms per side, got {}",
                left.len()
            )));
        }
        Ok(Self { left, right })
    }

    /// `(a, b | c, d)`.
    pub fn pair(a: T, b: T, c: T, d: T) -> Result<Self> {
        Self::new(vec![a, b], vec![c, d])
    }

    pub fn left(&self) -> &[T] {
        &self.left
    }

    pub fn right(&self) -> &[T] {
        &self.right
    }

    pub fn terms(&self) -> usize {
        self.left.len()
    }

    pub fn validate(&self) -> Result<()> {
        let left_sum = sum(self.left.iter().cloned());
        let right_sum = sum(self.right.iter().cloned());
        if left_sum == right_sum {
            Ok(())
        } else {
            Err(Error::UnbalancedBase {
                left_sum: left_sum.to_string(),
                right_sum: right_sum.to_string(),
            })
        }
    }

    fn radicands(&self) -> BTreeSet<u64> {
        self.left
            .iter()
            .chain(&self.right)
            .flat_map(Scalar::radicands)
            .collect()
    }
}

/// Shift values `k_1, …, k_n`, `n >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftVector<T>(Vec<T>);

impl<T: Scalar> ShiftVector<T> {
    pub fn new(shifts: Vec<T>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::EmptyShifts);
        }
        Ok(Self(shifts))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The sequences `xs`, `ys` together with the parameters that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionPair<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    base: BaseIdentity<T>,
    shifts: Vec<T>,
    ring: BTreeSet<u64>,
}

impl<T: Scalar> SolutionPair<T> {
    /// Reassembles a pair from stored parts (for instance a JSON export),
    /// checking shape but not the identities themselves.
    pub fn from_parts(
        base: BaseIdentity<T>,
        shifts: ShiftVector<T>,
        xs: Vec<T>,
        ys: Vec<T>,
    ) -> Result<Self> {
        let level = shifts.len();
        let expected = expected_len(base.terms(), level)?;
        if xs.len() != expected || ys.len() != expected {
            return Err(Error::MalformedPair(format!(
                "level {level} with {} base terms needs {expected} values per side, got {} and {}",
                base.terms(),
                xs.len(),
                ys.len()
            )));
        }
        let mut ring = base.radicands();
        ring.extend(shifts.as_slice().iter().flat_map(Scalar::radicands));
        Ok(Self {
            xs,
            ys,
            base,
            shifts: shifts.0,
            ring,
        })
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn ys(&self) -> &[T] {
        &self.ys
    }

    pub fn base(&self) -> &BaseIdentity<T> {
        &self.base
    }

    pub fn shifts(&self) -> &[T] {
        &self.shifts
    }

    pub fn level(&self) -> usize {
        self.shifts.len()
    }

    /// `N`, the number of terms per side of the base identity.
    pub fn terms(&self) -> usize {
        self.base.terms()
    }

    /// Prime radicands fixed for this pair; empty outside the surd domain.
    pub fn ring(&self) -> &BTreeSet<u64> {
        &self.ring
    }

    pub fn domain(&self) -> Domain {
        T::DOMAIN
    }

    /// Length `2^(m-1) · N` of the prefix on which the power-`m` identity holds.
    pub fn prefix_len(&self, m: u32) -> usize {
        (1usize << (m - 1)) * self.terms()
    }
}

fn expected_len(terms: usize, level: usize) -> Result<usize> {
    if level == 0 {
        return Err(Error::EmptyShifts);
    }
    1usize
        .checked_shl((level - 1) as u32)
        .and_then(|p| p.checked_mul(terms))
        .ok_or(Error::LevelLimit {
            requested: level,
            limit: usize::BITS as usize,
        })
}

#[derive(Clone, Copy, Debug)]
pub struct Generator {
    pub max_level: usize,
}

impl Default for Generator {
    fn default() -> Self {
        Self {
            max_level: DEFAULT_MAX_LEVEL,
        }
    }
}

impl Generator {
    pub fn with_max_level(max_level: usize) -> Self {
        Self { max_level }
    }

    /// Level-1 pair `(a_j + k_1)`, `(c_j + k_1)`.
    pub fn seed<T: Scalar>(&self, base: &BaseIdentity<T>, k1: T) -> Result<SolutionPair<T>> {
        base.validate()?;
        let xs = base.left.iter().map(|a| a.clone() + k1.clone()).collect();
        let ys = base.right.iter().map(|c| c.clone() + k1.clone()).collect();
        let mut ring = base.radicands();
        ring.extend(k1.radicands());
        Ok(SolutionPair {
            xs,
            ys,
            base: base.clone(),
            shifts: vec![k1],
            ring,
        })
    }

    /// One doubling step with shift `k`.
    pub fn extend<T: Scalar>(&self, pair: &SolutionPair<T>, k: T) -> Result<SolutionPair<T>> {
        let level = pair.level() + 1;
        if level > self.max_level {
            return Err(Error::LevelLimit {
                requested: level,
                limit: self.max_level,
            });
        }
        if !k.radicands().is_subset(&pair.ring) {
            return Err(Error::RingMismatch {
                value: k.to_string(),
                ring: pair.ring.iter().copied().collect(),
            });
        }
        let shifted = |side: &[T]| side.iter().map(|v| v.clone() + k.clone()).collect::<Vec<_>>();
        let mut xs = Vec::with_capacity(pair.xs.len() * 2);
        xs.extend_from_slice(&pair.xs);
        xs.extend(shifted(&pair.ys));
        let mut ys = Vec::with_capacity(pair.ys.len() * 2);
        ys.extend_from_slice(&pair.ys);
        ys.extend(shifted(&pair.xs));
        let mut shifts = pair.shifts.clone();
        shifts.push(k);
        Ok(SolutionPair {
            xs,
            ys,
            base: pair.base.clone(),
            shifts,
            ring: pair.ring.clone(),
        })
    }

    /// `seed(base, k_1)` followed by `extend` with `k_2, …, k_n`.
    pub fn generate<T: Scalar>(
        &self,
        base: &BaseIdentity<T>,
        shifts: &ShiftVector<T>,
    ) -> Result<SolutionPair<T>> {
        if shifts.len() > self.max_level {
            return Err(Error::LevelLimit {
                requested: shifts.len(),
                limit: self.max_level,
            });
        }
        let (k1, rest) = shifts.0.split_first().ok_or(Error::EmptyShifts)?;
        let mut pair = self.seed(base, k1.clone())?;
        // The ring is the union over every input, fixed before doubling.
        pair.ring.extend(rest.iter().flat_map(Scalar::radicands));
        for k in rest {
            pair = self.extend(&pair, k.clone())?;
        }
        Ok(pair)
    }
}

/// [`Generator::generate`] with the default level limit.
pub fn generate<T: Scalar>(base: &BaseIdentity<T>, shifts: &ShiftVector<T>) -> Result<SolutionPair<T>> {
    Generator::default().generate(base, shifts)
}
