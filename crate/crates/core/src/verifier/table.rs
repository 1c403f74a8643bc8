//! Power sums of every level from binomial recurrences alone.
//!
//! With `Sx[l][t] = Σ_{i ≤ 2^(l-1)N} x_i^t` (and `Sy` likewise), one
//! doubling step with shift `k` gives
//!
//! ```text
//! Sx[l][t] = Sx[l-1][t] + Σ_{u=0..t} C(t,u) · k^(t-u) · Sy[l-1][u]
//! Sy[l][t] = Sy[l-1][t] + Σ_{u=0..t} C(t,u) · k^(t-u) · Sx[l-1][u]
//! ```
//!
//! The x- and y-families are tracked separately, so nothing assumes the
//! lower-level sums already agree; [`verify_recursive`] then checks the
//! table against direct summation.

use crate::binomial::binomial_row;
use crate::generator::SolutionPair;
use crate::scalar::Scalar;

use super::{power_sum, CheckKind, VerificationReport};

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSumTable<T> {
    level: usize,
    /// `sx[l - 1][t]` for `t = 0..=level`.
    sx: Vec<Vec<T>>,
    sy: Vec<Vec<T>>,
}

impl<T: Scalar> PowerSumTable<T> {
    pub fn level(&self) -> usize {
        self.level
    }

    /// `Σ_{i ≤ 2^(l-1)N} x_i^t`; `l` is 1-based.
    pub fn sx(&self, l: usize, t: u32) -> &T {
        &self.sx[l - 1][t as usize]
    }

    pub fn sy(&self, l: usize, t: u32) -> &T {
        &self.sy[l - 1][t as usize]
    }
}

pub fn build_power_sum_table<T: Scalar>(pair: &SolutionPair<T>) -> PowerSumTable<T> {
    let n = pair.level();
    let max_t = n as u32;
    let k1 = &pair.shifts()[0];
    let level_one = |side: &[T]| -> Vec<T> {
        let shifted: Vec<T> = side.iter().map(|v| v.clone() + k1.clone()).collect();
        (0..=max_t).map(|t| power_sum(&shifted, t)).collect()
    };
    let mut sx = vec![level_one(pair.base().left())];
    let mut sy = vec![level_one(pair.base().right())];

    let rows: Vec<Vec<T>> = (0..=max_t)
        .map(|t| binomial_row(t).into_iter().map(T::from_bigint).collect())
        .collect();

    for k in &pair.shifts()[1..] {
        let k_pows: Vec<T> = (0..=max_t).map(|e| k.pow(e)).collect();
        let (px, py) = (sx.last().unwrap(), sy.last().unwrap());
        let shifted = |other: &[T], t: u32| -> T {
            (0..=t).fold(T::zero(), |acc, u| {
                acc + rows[t as usize][u as usize].clone()
                    * k_pows[(t - u) as usize].clone()
                    * other[u as usize].clone()
            })
        };
        let nx: Vec<T> = (0..=max_t).map(|t| px[t as usize].clone() + shifted(py, t)).collect();
        let ny: Vec<T> = (0..=max_t).map(|t| py[t as usize].clone() + shifted(px, t)).collect();
        sx.push(nx);
        sy.push(ny);
    }

    PowerSumTable { level: n, sx, sy }
}

/// Compares the recurrence table with direct prefix summation at every
/// level and power, and checks `Sx = Sy` for powers up to each level.
pub fn verify_recursive<T: Scalar>(pair: &SolutionPair<T>) -> VerificationReport<T> {
    let table = build_power_sum_table(pair);
    let mut report = VerificationReport::new(CheckKind::RecursiveVsDirect);
    let n = pair.level();
    for l in 1..=n {
        let len = (1usize << (l - 1)) * pair.terms();
        let (xs, ys) = (&pair.xs()[..len], &pair.ys()[..len]);
        for t in 1..=n as u32 {
            report.compare(t, format!("Sx level {l}"), table.sx(l, t).clone(), power_sum(xs, t));
            report.compare(t, format!("Sy level {l}"), table.sy(l, t).clone(), power_sum(ys, t));
            if t as usize <= l {
                report.compare(
                    t,
                    format!("Sx = Sy level {l}"),
                    table.sx(l, t).clone(),
                    table.sy(l, t).clone(),
                );
            }
        }
    }
    report
}
