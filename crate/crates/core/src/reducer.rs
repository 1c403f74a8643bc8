//! Removing zeros and values common to both sides of a verified identity.
//!
//! Zeros contribute nothing to any power sum `m >= 1`, and a value present
//! on both sides contributes equally to each, so both removals preserve
//! every identity `1..=n`. Cardinality (power 0) is not preserved.
//!
//! Cross-pair cancellation is multiset intersection: for each distinct
//! value `v`, `min(mult_left(v), mult_right(v))` copies are removed from
//! each side. Survivors keep their original relative order.

use std::fmt;

use crate::error::{Error, Result};
use crate::generator::SolutionPair;
use crate::scalar::{Domain, Scalar};
use crate::verifier::{verify_sequences, verify_system};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RemovalReason {
    Zero,
    CrossPair,
}

impl fmt::Display for RemovalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RemovalReason::Zero => "zero",
            RemovalReason::CrossPair => "cross-pair",
        })
    }
}

/// One ledger entry. For zeros `count` is the number removed from both
/// sides together; for cross-pairs it is the number of pairs cancelled.
#[derive(Clone, Debug, PartialEq)]
pub struct Removal<T> {
    pub value: T,
    pub count: usize,
    pub reason: RemovalReason,
}

/// Parameters of the pair a reduced identity came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance<T> {
    pub base_left: Vec<T>,
    pub base_right: Vec<T>,
    pub shifts: Vec<T>,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedIdentity<T> {
    pub left: Vec<T>,
    pub right: Vec<T>,
    pub max_power: u32,
    pub removed: Vec<Removal<T>>,
    pub provenance: Option<Provenance<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceOptions {
    pub remove_zeros: bool,
    pub remove_cross_pairs: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        Self::FULL
    }
}

impl ReduceOptions {
    pub const FULL: Self = Self {
        remove_zeros: true,
        remove_cross_pairs: true,
    };
}

impl<T: Scalar> ReducedIdentity<T> {
    /// Wraps a pair unchanged, ready for further reduction.
    pub fn from_pair(pair: &SolutionPair<T>) -> Self {
        Self {
            left: pair.xs().to_vec(),
            right: pair.ys().to_vec(),
            max_power: pair.level() as u32,
            removed: Vec::new(),
            provenance: Some(Provenance {
                base_left: pair.base().left().to_vec(),
                base_right: pair.base().right().to_vec(),
                shifts: pair.shifts().to_vec(),
                level: pair.level(),
            }),
        }
    }

    pub fn domain(&self) -> Domain {
        T::DOMAIN
    }

    /// Applies zero and/or cross-pair removal to this identity.
    ///
    /// In the approximate domain, equality is tolerance-based, so cancelling
    /// near-equal values can leave an identity that only holds approximately.
    pub fn reduce(&self, options: ReduceOptions) -> Result<Self> {
        let mut out = self.clone();
        if options.remove_zeros {
            let before = out.left.len() + out.right.len();
            out.left.retain(|v| !v.is_zero());
            out.right.retain(|v| !v.is_zero());
            let count = before - out.left.len() - out.right.len();
            if count > 0 {
                out.removed.push(Removal {
                    value: T::zero(),
                    count,
                    reason: RemovalReason::Zero,
                });
            }
            out.reverify("zero removal")?;
        }
        if options.remove_cross_pairs {
            out.cancel_common();
            out.reverify("cross-pair cancellation")?;
        }
        Ok(out)
    }

    /// Removes one occurrence of each listed value from each side, in list
    /// order. Every value must be present on both sides.
    pub fn cancel_values(&self, values: &[T]) -> Result<Self> {
        let mut out = self.clone();
        for v in values {
            let li = out.left.iter().position(|x| x == v);
            let ri = out.right.iter().position(|y| y == v);
            let (Some(li), Some(ri)) = (li, ri) else {
                return Err(Error::Precondition(format!(
                    "value {v} does not occur on both sides"
                )));
            };
            out.left.remove(li);
            out.right.remove(ri);
            out.record_cross(v.clone(), 1);
        }
        out.reverify("step-limited cancellation")?;
        Ok(out)
    }

    fn record_cross(&mut self, value: T, count: usize) {
        if let Some(entry) = self
            .removed
            .iter_mut()
            .find(|r| r.reason == RemovalReason::CrossPair && r.value == value)
        {
            entry.count += count;
        } else {
            self.removed.push(Removal {
                value,
                count,
                reason: RemovalReason::CrossPair,
            });
        }
    }

    fn cancel_common(&mut self) {
        let order = |side: &[T]| {
            let mut idx: Vec<usize> = (0..side.len()).collect();
            idx.sort_by(|&a, &b| side[a].canonical_cmp(&side[b]).then(a.cmp(&b)));
            idx
        };
        let (lo, ro) = (order(&self.left), order(&self.right));
        let mut drop_left = vec![false; self.left.len()];
        let mut drop_right = vec![false; self.right.len()];
        let mut matched: Vec<T> = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < lo.len() && j < ro.len() {
            let (l, r) = (&self.left[lo[i]], &self.right[ro[j]]);
            if l == r {
                drop_left[lo[i]] = true;
                drop_right[ro[j]] = true;
                matched.push(l.clone());
                i += 1;
                j += 1;
            } else if l.canonical_cmp(r).is_lt() {
                i += 1;
            } else {
                j += 1;
            }
        }
        let keep = |side: &[T], drop: &[bool]| {
            side.iter()
                .zip(drop)
                .filter(|(_, &d)| !d)
                .map(|(v, _)| v.clone())
                .collect::<Vec<_>>()
        };
        self.left = keep(&self.left, &drop_left);
        self.right = keep(&self.right, &drop_right);
        // matched values arrive sorted; group runs of equal values
        let mut k = 0;
        while k < matched.len() {
            let mut run = 1;
            while k + run < matched.len() && matched[k + run] == matched[k] {
                run += 1;
            }
            self.record_cross(matched[k].clone(), run);
            k += run;
        }
    }

    fn reverify(&self, stage: &str) -> Result<()> {
        let report = verify_sequences(&self.left, &self.right, self.max_power);
        let result = match report.failures().next() {
            None => Ok(()),
            Some(r) => Err(Error::ReductionInvariant {
                power: r.power,
                detail: format!("after {stage}: {} != {}", r.left, r.right),
            }),
        };
        result
    }
}

/// Reduces a pair that satisfies its power-sum system.
pub fn reduce<T: Scalar>(pair: &SolutionPair<T>, options: ReduceOptions) -> Result<ReducedIdentity<T>> {
    require_verified(pair)?;
    ReducedIdentity::from_pair(pair).reduce(options)
}

/// Step-limited reduction: cancels only the listed values, one pair each.
pub fn reduce_values<T: Scalar>(pair: &SolutionPair<T>, values: &[T]) -> Result<ReducedIdentity<T>> {
    require_verified(pair)?;
    ReducedIdentity::from_pair(pair).cancel_values(values)
}

fn require_verified<T: Scalar>(pair: &SolutionPair<T>) -> Result<()> {
    if verify_system(pair).passed() {
        Ok(())
    } else {
        Err(Error::Precondition(
            "the pair does not satisfy its power-sum system".into(),
        ))
    }
}
