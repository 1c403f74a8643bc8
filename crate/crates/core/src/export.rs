//! JSON and CSV documents. Every scalar is written in the scalar text
//! grammar, so exported files parse back exactly.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{BaseIdentity, ShiftVector, SolutionPair};
use crate::magic::MagicSquare;
use crate::reducer::ReducedIdentity;
use crate::scalar::{parse_scalar, Domain, Scalar};
use crate::verifier::VerificationReport;

fn render<T: Scalar>(values: &[T]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn parse_all<T: Scalar>(values: &[String], what: &str) -> Result<Vec<T>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| parse_scalar(v, &format!("{what}[{i}]")))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseDoc {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

/// A solution pair, or any two value lists with a maximal power.
///
/// Generator exports fill every field. For hand-written files only `xs`,
/// `ys` and one of `level` / `max_power` are needed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Domain>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_power: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifts: Option<Vec<String>>,
    pub xs: Vec<String>,
    pub ys: Vec<String>,
}

impl PairDocument {
    pub fn from_pair<T: Scalar>(pair: &SolutionPair<T>) -> Self {
        Self {
            domain: Some(T::DOMAIN),
            level: Some(pair.level()),
            max_power: None,
            base: Some(BaseDoc {
                left: render(pair.base().left()),
                right: render(pair.base().right()),
            }),
            shifts: Some(render(pair.shifts())),
            xs: render(pair.xs()),
            ys: render(pair.ys()),
        }
    }

    /// The power up to which the identity is claimed.
    pub fn claimed_power(&self) -> Result<u32> {
        self.max_power
            .or(self.level.map(|l| l as u32))
            .or(self.shifts.as_ref().map(|s| s.len() as u32))
            .ok_or_else(|| Error::Config("document needs `level` or `max_power`".into()))
    }

    pub fn has_parameters(&self) -> bool {
        self.base.is_some() && self.shifts.is_some()
    }

    pub fn sequences<T: Scalar>(&self) -> Result<(Vec<T>, Vec<T>)> {
        Ok((parse_all(&self.xs, "xs")?, parse_all(&self.ys, "ys")?))
    }

    /// Rebuilds the pair from the stored values (not by regenerating), so a
    /// tampered file is verified as written.
    pub fn to_pair<T: Scalar>(&self) -> Result<SolutionPair<T>> {
        let (Some(base), Some(shifts)) = (&self.base, &self.shifts) else {
            return Err(Error::Config("document has no base/shifts".into()));
        };
        let base = BaseIdentity::new(parse_all(&base.left, "base.left")?, parse_all(&base.right, "base.right")?)?;
        let shifts = ShiftVector::new(parse_all(shifts, "shifts")?)?;
        if let Some(level) = self.level {
            if level != shifts.len() {
                return Err(Error::MalformedPair(format!(
                    "level {level} does not match {} shifts",
                    shifts.len()
                )));
            }
        }
        let (xs, ys) = self.sequences()?;
        SolutionPair::from_parts(base, shifts, xs, ys)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub power: u32,
    pub range: String,
    pub left: String,
    pub right: String,
    pub residual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub kind: String,
    pub passed: bool,
    pub checks: Vec<CheckDoc>,
}

impl ReportDocument {
    pub fn from_report<T: Scalar>(report: &VerificationReport<T>) -> Self {
        Self {
            kind: report.kind.name().to_string(),
            passed: report.passed(),
            checks: report
                .records
                .iter()
                .map(|r| CheckDoc {
                    power: r.power,
                    range: r.range.clone(),
                    left: r.left.to_string(),
                    right: r.right.to_string(),
                    residual: r.residual.to_string(),
                    passed: r.passed,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemovalDoc {
    pub value: String,
    pub count: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceDoc {
    pub base: BaseDoc,
    pub shifts: Vec<String>,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedDocument {
    pub domain: Domain,
    pub max_power: u32,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub left_len: usize,
    pub right_len: usize,
    pub removed: Vec<RemovalDoc>,
    pub provenance: Option<ProvenanceDoc>,
}

impl ReducedDocument {
    pub fn from_reduced<T: Scalar>(reduced: &ReducedIdentity<T>) -> Self {
        Self {
            domain: T::DOMAIN,
            max_power: reduced.max_power,
            left: render(&reduced.left),
            right: render(&reduced.right),
            left_len: reduced.left.len(),
            right_len: reduced.right.len(),
            removed: reduced
                .removed
                .iter()
                .map(|r| RemovalDoc {
                    value: r.value.to_string(),
                    count: r.count,
                    reason: r.reason.to_string(),
                })
                .collect(),
            provenance: reduced.provenance.as_ref().map(|p| ProvenanceDoc {
                base: BaseDoc {
                    left: render(&p.base_left),
                    right: render(&p.base_right),
                },
                shifts: render(&p.shifts),
                level: p.level,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MagicDocument {
    pub domain: Domain,
    /// Row-major.
    pub entries: Vec<String>,
    pub magic_sum: String,
    pub passed: bool,
}

impl MagicDocument {
    pub fn from_square<T: Scalar>(square: &MagicSquare<T>, passed: bool) -> Self {
        Self {
            domain: T::DOMAIN,
            entries: render(&square.flatten()),
            magic_sum: square.magic_sum.to_string(),
            passed,
        }
    }
}

/// Two columns side by side with a 1-based index; the shorter column is
/// padded with empty cells.
pub fn write_columns_csv<T: Scalar>(
    out: impl Write,
    headers: [&str; 3],
    left: &[T],
    right: &[T],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(headers)?;
    for i in 0..left.len().max(right.len()) {
        let cell = |side: &[T]| side.get(i).map(ToString::to_string).unwrap_or_default();
        w.write_record([(i + 1).to_string(), cell(left), cell(right)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_report_csv<T: Scalar>(out: impl Write, reports: &[VerificationReport<T>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["kind", "power", "range", "left", "right", "residual", "passed"])?;
    for report in reports {
        for r in &report.records {
            w.write_record([
                report.kind.name().to_string(),
                r.power.to_string(),
                r.range.clone(),
                r.left.to_string(),
                r.right.to_string(),
                r.residual.to_string(),
                r.passed.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}
