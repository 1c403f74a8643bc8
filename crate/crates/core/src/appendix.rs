//! Subset-parity description of the solution pair and the alternating sum
//! behind it.
//!
//! Given `a + b = c + d` and subset values `k_1, …, k_n`, the multiset `X`
//! holds `a + Σ_S` and `b + Σ_S` for every even-size subset `S` of the
//! values together with `c + Σ_S` and `d + Σ_S` for every odd-size one; `Y`
//! swaps the parities. Both have `2^(n+1)` elements and agree in power sums
//! for `1..=n+1`.
//!
//! Index mapping to the generator: this construction with `n` subset values
//! is generator level `n + 1`. The generator's `k_1` is a translation of the
//! letters (`a + k_1`, …) and its `k_2, …, k_{n+1}` are the subset values.

use num_bigint::BigInt;

use crate::binomial::factorial;
use crate::error::{Error, Result};
use crate::generator::{BaseIdentity, Generator, ShiftVector};
use crate::scalar::{sorted, sum, Scalar};
use crate::verifier::{CheckKind, VerificationReport};

#[derive(Clone, Debug, PartialEq)]
pub struct SubsetAssignment<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    /// Subset values `k_1, …, k_n`; `n` may be zero.
    pub values: Vec<T>,
}

impl<T: Scalar> SubsetAssignment<T> {
    pub fn new(a: T, b: T, c: T, d: T, values: Vec<T>) -> Result<Self> {
        BaseIdentity::pair(a.clone(), b.clone(), c.clone(), d.clone())?.validate()?;
        Ok(Self { a, b, c, d, values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsetPair<T> {
    pub x: Vec<T>,
    pub y: Vec<T>,
}

/// Subset sums in bitmask order, paired with subset parity.
fn subset_sums<T: Scalar>(values: &[T]) -> Vec<(T, bool)> {
    let n = values.len();
    (0u64..1 << n)
        .map(|mask| {
            let s = sum((0..n).filter(|i| mask >> i & 1 == 1).map(|i| values[i].clone()));
            (s, mask.count_ones() % 2 == 0)
        })
        .collect()
}

pub fn subset_pair<T: Scalar>(assignment: &SubsetAssignment<T>) -> Result<SubsetPair<T>> {
    if assignment.n() >= 32 {
        return Err(Error::LevelLimit {
            requested: assignment.n() + 1,
            limit: 32,
        });
    }
    let SubsetAssignment { a, b, c, d, values } = assignment;
    let mut x = Vec::with_capacity(2 << values.len());
    let mut y = Vec::with_capacity(2 << values.len());
    for (s, even) in subset_sums(values) {
        let (to_x, to_y) = if even { (&mut x, &mut y) } else { (&mut y, &mut x) };
        to_x.push(a.clone() + s.clone());
        to_x.push(b.clone() + s.clone());
        to_y.push(c.clone() + s.clone());
        to_y.push(d.clone() + s);
    }
    Ok(SubsetPair { x, y })
}

/// `Σ_{S ⊆ {1..n}} (-1)^|S| [(a + Σ_S k)^m + (b + Σ_S k)^m]` by direct
/// enumeration of all `2^n` subsets.
pub fn f_eval<T: Scalar>(a: &T, b: &T, m: u32, k: &[T]) -> T {
    subset_sums(k).into_iter().fold(T::zero(), |acc, (s, even)| {
        let term = (a.clone() + s.clone()).pow(m) + (b.clone() + s).pow(m);
        if even {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Closed form of [`f_eval`] for `m <= n + 1`; `None` above that.
///
/// * `m < n`: 0
/// * `m = n`: `2 · (-1)^n · n! · k_1⋯k_n` (each of the `a`- and `b`-terms
///   contributes `(-1)^n n! Πk`)
/// * `m = n + 1`: `(-1)^n · (n+1)! · k_1⋯k_n · (a + b + Σk)`
pub fn f_closed_form<T: Scalar>(a: &T, b: &T, m: u32, k: &[T]) -> Option<T> {
    let n = k.len() as u32;
    let product = k.iter().cloned().fold(T::one(), |acc, v| acc * v);
    let sign = |v: T| if n % 2 == 1 { -v } else { v };
    if m < n {
        Some(T::zero())
    } else if m == n {
        Some(sign(T::from_bigint(BigInt::from(2) * factorial(n)) * product))
    } else if m == n + 1 {
        let bracket = a.clone() + b.clone() + sum(k.iter().cloned());
        Some(sign(T::from_bigint(factorial(n + 1)) * product * bracket))
    } else {
        None
    }
}

/// Direct evaluation against the closed form for `m = 0..=n+1`.
pub fn verify_closed_form<T: Scalar>(a: &T, b: &T, k: &[T]) -> VerificationReport<T> {
    let mut report = VerificationReport::new(CheckKind::Equivalence);
    for m in 0..=k.len() as u32 + 1 {
        let closed = f_closed_form(a, b, m, k).expect("m <= n + 1");
        report.compare(m, "f(a,b) direct vs closed form", f_eval(a, b, m, k), closed);
    }
    report
}

/// Sorted generator output against the sorted subset construction with
/// letters `a + k_1, …, d + k_1` and subset values `k_2, …, k_n`.
///
/// Records compare the sorted sides element by element; a length mismatch
/// is reported as a failing count record.
pub fn equivalence_check<T: Scalar>(
    base: &BaseIdentity<T>,
    shifts: &ShiftVector<T>,
) -> Result<VerificationReport<T>> {
    let (assignment, generated) = equivalence_inputs(base, shifts)?;
    let subsets = subset_pair(&assignment)?;
    let mut report = VerificationReport::new(CheckKind::Equivalence);
    compare_sorted(&mut report, "xs vs X", generated.xs(), &subsets.x);
    compare_sorted(&mut report, "ys vs Y", generated.ys(), &subsets.y);
    Ok(report)
}

/// The subset assignment matching a generator run, plus that run.
pub fn equivalence_inputs<T: Scalar>(
    base: &BaseIdentity<T>,
    shifts: &ShiftVector<T>,
) -> Result<(SubsetAssignment<T>, crate::generator::SolutionPair<T>)> {
    if base.terms() != 2 {
        return Err(Error::Unsupported(format!(
            "the subset construction needs a two-term base, got {} terms",
            base.terms()
        )));
    }
    let generated = Generator::default().generate(base, shifts)?;
    let (k1, rest) = shifts.as_slice().split_first().ok_or(Error::EmptyShifts)?;
    let shift = |v: &T| v.clone() + k1.clone();
    let assignment = SubsetAssignment::new(
        shift(&base.left()[0]),
        shift(&base.left()[1]),
        shift(&base.right()[0]),
        shift(&base.right()[1]),
        rest.to_vec(),
    )?;
    Ok((assignment, generated))
}

fn compare_sorted<T: Scalar>(report: &mut VerificationReport<T>, label: &str, lhs: &[T], rhs: &[T]) {
    if lhs.len() != rhs.len() {
        report.compare(
            0,
            format!("{label} length"),
            T::from_i64(lhs.len() as i64),
            T::from_i64(rhs.len() as i64),
        );
        return;
    }
    for (i, (l, r)) in sorted(lhs).into_iter().zip(sorted(rhs)).enumerate() {
        report.compare(1, format!("{label} sorted #{}", i + 1), l, r);
    }
}
