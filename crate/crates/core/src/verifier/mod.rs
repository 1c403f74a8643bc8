//! Checks for every identity family a [`SolutionPair`] satisfies.
//!
//! Failures are reported, never thrown: each check returns a
//! [`VerificationReport`] with one record per identity tested.

mod registry;
mod table;

pub use registry::{
    BlocksCheck, Check, CheckRegistry, ParityCheck, PyramidCheck, RecursiveCheck, SystemCheck,
};
pub use table::{build_power_sum_table, verify_recursive, PowerSumTable};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::generator::SolutionPair;
use crate::scalar::{sorted, sum, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    System,
    Pyramid,
    Blocks,
    Parity,
    RecursiveVsDirect,
    Magic,
    Equivalence,
    Prouhet,
    Reduction,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::System => "system",
            CheckKind::Pyramid => "pyramid",
            CheckKind::Blocks => "blocks",
            CheckKind::Parity => "parity",
            CheckKind::RecursiveVsDirect => "recursive-vs-direct",
            CheckKind::Magic => "magic",
            CheckKind::Equivalence => "equivalence",
            CheckKind::Prouhet => "prouhet",
            CheckKind::Reduction => "reduction",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One identity `left = right` at a given power over a described range.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord<T> {
    pub power: u32,
    pub range: String,
    pub left: T,
    pub right: T,
    /// `left - right`; the zero scalar in exact domains when the check passes.
    pub residual: T,
    pub passed: bool,
}

impl<T: Scalar> CheckRecord<T> {
    pub fn compare(power: u32, range: impl Into<String>, left: T, right: T) -> Self {
        let residual = left.clone() - right.clone();
        let passed = left == right;
        Self {
            power,
            range: range.into(),
            left,
            right,
            residual,
            passed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport<T> {
    pub kind: CheckKind,
    pub records: Vec<CheckRecord<T>>,
}

impl<T: Scalar> VerificationReport<T> {
    pub fn new(kind: CheckKind) -> Self {
        Self {
            kind,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord<T>) {
        self.records.push(record);
    }

    pub fn compare(&mut self, power: u32, range: impl Into<String>, left: T, right: T) {
        self.push(CheckRecord::compare(power, range, left, right));
    }

    /// True iff every record passed.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord<T>> {
        self.records.iter().filter(|r| !r.passed)
    }

    /// Left-hand sums in record order.
    pub fn left_sums(&self) -> Vec<T> {
        self.records.iter().map(|r| r.left.clone()).collect()
    }
}

/// `Σ values_i^m`.
pub fn power_sum<T: Scalar>(values: &[T], m: u32) -> T {
    sum(values.iter().map(|v| v.pow(m)))
}

/// `Σ xs^m = Σ ys^m` for every `m` in `1..=max_power` over the full lists.
///
/// This is the generic path for identities that did not come out of the
/// generator (two value lists plus a maximal power).
pub fn verify_sequences<T: Scalar>(xs: &[T], ys: &[T], max_power: u32) -> VerificationReport<T> {
    let mut report = VerificationReport::new(CheckKind::System);
    let range = format!("1..{} | 1..{}", xs.len(), ys.len());
    for m in 1..=max_power {
        report.compare(m, range.clone(), power_sum(xs, m), power_sum(ys, m));
    }
    report
}

pub fn verify_system<T: Scalar>(pair: &SolutionPair<T>) -> VerificationReport<T> {
    verify_sequences(pair.xs(), pair.ys(), pair.level() as u32)
}

/// Power `m` on the prefixes of length `2^(m-1)·N`.
pub fn verify_pyramid<T: Scalar>(pair: &SolutionPair<T>) -> VerificationReport<T> {
    let mut report = VerificationReport::new(CheckKind::Pyramid);
    for m in 1..=pair.level() as u32 {
        let len = pair.prefix_len(m);
        report.compare(
            m,
            format!("1..{len}"),
            power_sum(&pair.xs()[..len], m),
            power_sum(&pair.ys()[..len], m),
        );
    }
    report
}

/// Power `m` on every consecutive block of length `2^(m-1)·N`, at matching
/// positions. The blocks partition the sequences exactly
/// (`p = 0, …, 2^(n-m) - 1`).
pub fn verify_blocks<T: Scalar>(pair: &SolutionPair<T>, m: u32) -> Result<VerificationReport<T>> {
    if m == 0 || m as usize > pair.level() {
        return Err(Error::InvalidPower {
            power: m,
            level: pair.level(),
        });
    }
    let mut report = VerificationReport::new(CheckKind::Blocks);
    push_blocks(&mut report, pair, m);
    Ok(report)
}

/// [`verify_blocks`] for every power `1..=n` in one report.
pub fn verify_all_blocks<T: Scalar>(pair: &SolutionPair<T>) -> VerificationReport<T> {
    let mut report = VerificationReport::new(CheckKind::Blocks);
    for m in 1..=pair.level() as u32 {
        push_blocks(&mut report, pair, m);
    }
    report
}

fn push_blocks<T: Scalar>(report: &mut VerificationReport<T>, pair: &SolutionPair<T>, m: u32) {
    let len = pair.prefix_len(m);
    for (p, (xb, yb)) in pair.xs().chunks(len).zip(pair.ys().chunks(len)).enumerate() {
        let start = p * len + 1;
        report.compare(
            m,
            format!("{start}..{}", start + len - 1),
            power_sum(xb, m),
            power_sum(yb, m),
        );
    }
}

/// `M^1 = Σ xs` against `2^(n-1) · (a + b + 2k_1 + Σ_{i≥2} k_i)`, plus
/// `M^1 mod 2 = 0` when the bracket is an integer and `n >= 2`.
///
/// At `n = 1` the closed form is just the bracket itself, so evenness is not
/// implied and is not checked.
pub fn check_parity<T: Scalar>(pair: &SolutionPair<T>) -> Result<VerificationReport<T>> {
    if pair.terms() != 2 {
        return Err(Error::Unsupported(format!(
            "the parity closed form needs a two-term base, this pair has {} terms",
            pair.terms()
        )));
    }
    let base = pair.base();
    let shifts = pair.shifts();
    let n = pair.level();
    let bracket = base.left()[0].clone()
        + base.left()[1].clone()
        + T::from_i64(2) * shifts[0].clone()
        + sum(shifts[1..].iter().cloned());
    let scale = T::from_bigint(BigInt::from(1u8) << (n - 1));
    let m1 = power_sum(pair.xs(), 1);

    let mut report = VerificationReport::new(CheckKind::Parity);
    report.compare(1, "M^1 closed form", m1.clone(), scale * bracket.clone());
    if n >= 2 && bracket.to_integer().is_some() {
        match m1.to_integer() {
            Some(total) => {
                let rem = total.mod_floor(&BigInt::from(2));
                report.compare(1, "M^1 mod 2", T::from_bigint(rem), T::zero());
            }
            None => report.compare(1, "M^1 mod 2", m1, T::zero()),
        }
    }
    Ok(report)
}

/// True when some `k_i = 0` for `i >= 2`.
pub fn has_zero_shift<T: Scalar>(pair: &SolutionPair<T>) -> bool {
    pair.shifts().iter().skip(1).any(Scalar::is_zero)
}

/// Distinct values of `xs` equal distinct values of `ys`.
pub fn value_sets_match<T: Scalar>(xs: &[T], ys: &[T]) -> bool {
    let distinct = |v: &[T]| {
        let mut s = sorted(v);
        s.dedup_by(|a, b| a == b);
        s
    };
    distinct(xs) == distinct(ys)
}
