//! The named commands behind the CLI. Each one resolves its number domain
//! at runtime and runs a generic implementation for it.

use std::fmt::Write as _;

use serde::Serialize;

use super::{render, JobConfig, Outcome, OutputFormat};
use crate::appendix::{equivalence_check, equivalence_inputs, f_closed_form, f_eval, subset_pair};
use crate::error::{Error, Result};
use crate::export::{
    write_columns_csv, write_report_csv, MagicDocument, PairDocument, ReducedDocument, ReportDocument,
};
use crate::generator::{BaseIdentity, Generator, ShiftVector, SolutionPair};
use crate::magic::{parametric_square, thue_morse_square, verify_magic};
use crate::prouhet::{prouhet_params, prouhet_split};
use crate::reducer::{ReduceOptions, ReducedIdentity};
use crate::scalar::{parse_list, sorted, Approx, Domain, Rational, Scalar, Surd};
use crate::verifier::{
    verify_sequences, verify_system, BlocksCheck, CheckRegistry, VerificationReport,
};

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, job: &JobConfig) -> Result<Outcome>;
}

pub struct CommandRegistry {
    commands: Vec<Box<dyn Command>>,
}

impl CommandRegistry {
    pub fn builtin() -> Self {
        Self {
            commands: vec![
                Box::new(Generate),
                Box::new(Verify),
                Box::new(Pyramid),
                Box::new(Blocks),
                Box::new(Reduce),
                Box::new(Prouhet),
                Box::new(Magic),
                Box::new(AppendixCheck),
            ],
        }
    }

    pub fn register(&mut self, command: Box<dyn Command>) {
        self.commands.retain(|c| c.name() != command.name());
        self.commands.push(command);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Command> {
        self.commands.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.commands.iter().map(|c| c.name()).collect()
    }
}

macro_rules! by_domain {
    ($domain:expr, $f:ident ( $($arg:expr),* )) => {
        match $domain {
            Domain::Rational => $f::<Rational>($($arg),*),
            Domain::Surd => $f::<Surd>($($arg),*),
            Domain::Approx => $f::<Approx>($($arg),*),
        }
    };
}

fn scalars<T: Scalar>(job: &JobConfig, text: &str, what: &str) -> Result<Vec<T>> {
    let values: Vec<T> = parse_list(text, what)?;
    Ok(match job.tolerance {
        Some(t) => values.into_iter().map(|v| v.with_tolerance(t)).collect(),
        None => values,
    })
}

fn required<'a>(value: &'a Option<String>, flag: &str, command: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| Error::Config(format!("`{command}` needs --{flag}")))
}

/// `left terms ; right terms`.
fn parse_base<T: Scalar>(job: &JobConfig) -> Result<BaseIdentity<T>> {
    let text = required(&job.base, "base", &job.command)?;
    let sides: Vec<&str> = text.split(';').collect();
    let [left, right] = sides.as_slice() else {
        return Err(Error::Config(format!(
            "base {text:?} must have exactly two sides separated by ';'"
        )));
    };
    BaseIdentity::new(scalars(job, left, "base left term")?, scalars(job, right, "base right term")?)
}

fn parse_shifts<T: Scalar>(job: &JobConfig) -> Result<ShiftVector<T>> {
    ShiftVector::new(scalars(job, required(&job.shifts, "shifts", &job.command)?, "shift")?)
}

fn generate_pair<T: Scalar>(job: &JobConfig) -> Result<SolutionPair<T>> {
    Generator::with_max_level(job.max_level).generate(&parse_base(job)?, &parse_shifts(job)?)
}

fn to_json<S: Serialize>(doc: &S) -> Result<String> {
    Ok(serde_json::to_string_pretty(doc)? + "\n")
}

fn csv_string(write: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<String> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Config(e.to_string()))
}

/// What a verify/reduce job operates on.
enum Source<T> {
    Pair(SolutionPair<T>),
    Lists { xs: Vec<T>, ys: Vec<T>, max_power: u32 },
}

fn read_document(job: &JobConfig) -> Result<Option<PairDocument>> {
    match &job.from_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            Ok(Some(serde_json::from_str(&text)?))
        }
        None => Ok(None),
    }
}

/// The domain stored in an input document wins over the job default.
fn source_domain(job: &JobConfig, doc: &Option<PairDocument>) -> Domain {
    doc.as_ref().and_then(|d| d.domain).unwrap_or(job.domain)
}

fn load_source<T: Scalar>(job: &JobConfig, doc: &Option<PairDocument>) -> Result<Source<T>> {
    let Some(doc) = doc else {
        return Ok(Source::Pair(generate_pair(job)?));
    };
    let tol = |v: Vec<T>| match job.tolerance {
        Some(t) => v.into_iter().map(|x| x.with_tolerance(t)).collect(),
        None => v,
    };
    if doc.has_parameters() {
        let pair = doc.to_pair::<T>()?;
        let (xs, ys) = (tol(pair.xs().to_vec()), tol(pair.ys().to_vec()));
        let shifts = ShiftVector::new(tol(pair.shifts().to_vec()))?;
        let base = BaseIdentity::new(tol(pair.base().left().to_vec()), tol(pair.base().right().to_vec()))?;
        Ok(Source::Pair(SolutionPair::from_parts(base, shifts, xs, ys)?))
    } else {
        let (xs, ys) = doc.sequences::<T>()?;
        Ok(Source::Lists {
            xs: tol(xs),
            ys: tol(ys),
            max_power: doc.claimed_power()?,
        })
    }
}

fn report_outcome<T: Scalar>(job: &JobConfig, reports: &[VerificationReport<T>]) -> Result<Outcome> {
    let passed = reports.iter().all(|r| r.passed());
    let output = match job.format {
        OutputFormat::Table => render::reports(reports),
        OutputFormat::Json => {
            let docs: Vec<ReportDocument> = reports.iter().map(ReportDocument::from_report).collect();
            to_json(&docs)?
        }
        OutputFormat::Csv => csv_string(|buf| write_report_csv(buf, reports))?,
    };
    Ok(Outcome { output, passed })
}

struct Generate;

impl Command for Generate {
    fn name(&self) -> &'static str {
        "generate"
    }
    fn about(&self) -> &'static str {
        "build the solution pair for a base identity and shift vector"
    }
    fn run(&self, job: &JobConfig) -> Result<Outcome> {
        by_domain!(job.domain, generate_cmd(job))
    }
}

fn generate_cmd<T: Scalar>(job: &JobConfig) -> Result<Outcome> {
    let pair = generate_pair::<T>(job)?;
    let output = match job.format {
        OutputFormat::Json => to_json(&PairDocument::from_pair(&pair))?,
        OutputFormat::Csv => csv_string(|buf| write_columns_csv(buf, ["i", "x", "y"], pair.xs(), pair.ys()))?,
        OutputFormat::Table => {
            let mut out = format!(
                "domain {}, level {}, {} values per side\n",
                T::DOMAIN,
                pair.level(),
                pair.xs().len()
            );
            out.push_str(&render::columns(["i", "x", "y"], pair.xs(), pair.ys()));
            out
        }
    };
    Ok(Outcome { output, passed: true })
}

struct Verify;

impl Command for Verify {
    fn name(&self) -> &'static str {
        "verify"
    }
    fn about(&self) -> &'static str {
        "run named checks on a generated pair or a file"
    }
    fn run(&self, job: &JobConfig) -> Result<Outcome> {
        let doc = read_document(job)?;
        let names: Vec<&str> = job.checks.iter().map(String::as_str).collect();
        by_domain!(source_domain(job, &doc), verify_cmd(job, &doc, &names, CheckRegistry::builtin()))
    }
}

fn verify_cmd<T: Scalar>(
    job: &JobConfig,
    doc: &Option<PairDocument>,
    names: &[&str],
    registry: CheckRegistry<T>,
) -> Result<Outcome> {
    let reports = match load_source::<T>(job, doc)? {
        Source::Pair(pair) => registry.run(names, &pair)?,
        Source::Lists { xs, ys, max_power } => {
            if let Some(other) = names.iter().find(|n| **n != "system") {
                return Err(Error::Unsupported(format!(
                    "check {other:?} needs the base identity and shifts; the file only has value lists"
                )));
            }
            vec![verify_sequences(&xs, &ys, max_power)]
        }
    };
    report_outcome(job, &reports)
}

struct Pyramid;

impl Command for Pyramid {
    fn name(&self) -> &'static str {
        "pyramid"
    }
    fn about(&self) -> &'static str {
        "verify the prefix (pyramid) identities"
    }
    fn run(&self, job: &JobConfig) -> Result<Outcome> {
        let doc = read_document(job)?;
        by_domain!(source_domain(job, &doc), verify_cmd(job, &doc, &["pyramid"], CheckRegistry::builtin()))
    }
}

struct Blocks;

impl Command for Blocks {
    fn name(&self) -> &'static str {
        "blocks"
    }
    fn about(&self) -> &'static str {
        "verify block sums for one power (--power) or all powers"
    }
    fn run(&self, job: &JobConfig) -> Result<Outcome> {
        let doc = read_document(job)?;
        by_domain!(source_domain(job, &doc), blocks_cmd(job, &doc))
    }
}

fn blocks_cmd<T: Scalar>(job: &JobConfig, doc: &Option<PairDocument>) -> Result<Outcome> {
    let mut registry = CheckRegistry::<T>::builtin();
    registry.register(Box::new(BlocksCheck { power: job.power }));
    verify_cmd(job, doc, &["blocks"], registry)
}

struct Reduce;

impl Command for Reduce {
    fn name(&self) -> &'static str {
        "reduce"
    }
    fn about(&self) -> &'static str {
        "remove zeros and values common to both sides"
    }
    fn run(&self, job: &JobConfig) -> Result<Outcome> {
        let doc = read_document(job)?;
        by_domain!(source_domain(job, &doc), reduce_cmd(job, &doc))
    }
}

fn reduce_cmd<T: Scalar>(job: &JobConfig, doc: &Option<PairDocument>) -> Result<Outcome> {
    let identity = match load_source::<T>(job, doc)? {
        Source::Pair(pair) => {
            if !verify_system(&pair).passed() {
                return Err(Error::Precondition("the pair does not satisfy its power-sum system".into()));
            }
            ReducedIdentity::from_pair(&pair)
        }
        Source::Lists { xs, ys, max_power } => {
            if !verify_sequences(&xs, &ys, max_power).passed() {
                return Err(Error::Precondition("the value lists do not satisfy their power-sum system".into()));
            }
            ReducedIdentity {
                left: xs,
                right: ys,
                max_power,
                removed: Vec::new(),
                provenance: None,
            }
        }
    };
    let reduced = match &job.cancel {
        Some(values) => identity.cancel_values(&scalars::<T>(job, values, "cancel value")?)?,
        None => identity.reduce(ReduceOptions {
            remove_zeros: job.remove_zeros,
            remove_cross_pairs: job.remove_cross_pairs,
        })?,
    };
    let report = verify_sequences(&reduced.left, &reduced.right, reduced.max_power);
    let output = match job.format {
        OutputFormat::Json => to_json(&ReducedDocument::from_reduced(&reduced))?,
        OutputFormat::Csv => {
            csv_string(|buf| write_columns_csv(buf, ["i", "left", "right"], &reduced.left, &reduced.right))?
        }
        OutputFormat::Table => {
            let mut out = format!(
                "reduced identity: {} values left, {} values right, powers 1..{}\n",
                reduced.left.len(),
                reduced.right.len(),
                reduced.max_power
            );
            let _ = writeln!(out, "left:  {}", render::joined(&reduced.left));
            let _ = writeln!(out, "right: {}", render::joined(&reduced.right));
            for r in &reduced.removed {
                let _ = writeln!(out, "removed {} x {} ({})", r.count, r.value, r.reason);
            }
            out.push_str(&render::reports(std::slice::from_ref(&report)));
            out
        }
    };
    Ok(Outcome {
        output,
        passed: report.passed(),
    })
}

struct Prouhet;

#[derive(Serialize)]
struct ProuhetDocument {
    n: u32,
    ones: Vec<u64>,
    zeros: Vec<u64>,
    verified_powers: Vec<u32>,
    generator_match: bool,
}

impl Command for Prouhet {
    fn name(&self) -> &'static str {
        "prouhet"
    }
    fn about(&self) -> &'static str {
        "split 1..2^(n+1) by Thue-Morse bits and compare with the generator"
    }
    fn run(&self, job: &JobConfig) -> Result<Outcome> {
        let n = job
            .n
            .ok_or_else(|| Error::Config("`prouhet` needs --n".into()))?;
        let split = prouhet_split(n)?;
        let (base, shifts) = prouhet_params::<Rational>(n)?;
        let pair = Generator::with_max_level(job.max_level).generate(&base, &shifts)?;
        let as_scalars = |v: &[u64]| v.iter().map(|&i| Rational::from(i as i64)).collect::<Vec<_>>();
        let generator_match =
            sorted(pair.xs()) == as_scalars(&split.ones) && sorted(pair.ys()) == as_scalars(&split.zeros);
        let doc = ProuhetDocument {
            n,
            verified_powers: (1..=n).collect(),
            generator_match,
            ones: split.ones,
            zeros: split.zeros,
        };
        let output = match job.format {
            OutputFormat::Json => to_json(&doc)?,
            OutputFormat::Csv => csv_string(|buf| {
                let mut w = csv::Writer::from_writer(buf);
                w.write_record(["i", "one", "zero"])?;
                for (i, (a, b)) in doc.ones.iter().zip(&doc.zeros).enumerate() {
                    w.write_record([(i + 1).to_string(), a.to_string(), b.to_string()])?;
                }
                w.flush()?;
                Ok(())
            })?,
            OutputFormat::Table => {
                let mut out = String::new();
                let _ = writeln!(out, "Prouhet split of 1..{}", 1u64 << (n + 1));
                let _ = writeln!(out, "ones:  {}", render::joined(&doc.ones));
                let _ = writeln!(out, "zeros: {}", render::joined(&doc.zeros));
                let _ = writeln!(out, "verified powers: 1..{n}");
                let _ = writeln!(
                    out,
                    "generator (base 1,4;2,3, shifts {}): {}",
                    render::joined(shifts.as_slice()),
                    if generator_match { "match" } else { "MISMATCH" }
                );
                out
            }
        };
        Ok(Outcome {
            output,
            passed: generator_match,
        })
    }
}

struct Magic;

impl Command for Magic {
    fn name(&self) -> &'static str {
        "magic"
    }
    fn about(&self) -> &'static str {
        "build and verify a 4x4 magic square (Thue-Morse, or --params a,b,c,d,k1,k2)"
    }
    fn run(&self, job: &JobConfig) -> Result<Outcome> {
        by_domain!(job.domain, magic_cmd(job))
    }
}

fn magic_cmd<T: Scalar>(job: &JobConfig) -> Result<Outcome> {
    let square = match &job.params {
        None => thue_morse_square::<T>(),
        Some(text) => {
            let values = scalars::<T>(job, text, "magic parameter")?;
            let Ok([a, b, c, d, k1, k2]) = <[T; 6]>::try_from(values) else {
                return Err(Error::Config("--params needs exactly six values a,b,c,d,k1,k2".into()));
            };
            parametric_square(a, b, c, d, k1, k2)?
        }
    };
    let report = verify_magic(&square);
    let output = match job.format {
        OutputFormat::Json => to_json(&MagicDocument::from_square(&square, report.passed()))?,
        OutputFormat::Csv => csv_string(|buf| {
            let mut w = csv::Writer::from_writer(buf);
            for row in square.rows() {
                w.write_record(row.iter().map(ToString::to_string))?;
            }
            w.flush()?;
            Ok(())
        })?,
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = square
                .rows()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect();
            let mut grid = render::table(&["", "", "", ""], &rows);
            // drop the empty header line
            grid = grid.split_once('\n').map(|x| x.1.to_string()).unwrap_or(grid);
            let mut out = grid;
            let _ = writeln!(out, "magic_sum {}", square.magic_sum);
            out.push_str(&render::reports(std::slice::from_ref(&report)));
            out
        }
    };
    Ok(Outcome {
        output,
        passed: report.passed(),
    })
}

struct AppendixCheck;

#[derive(Serialize)]
struct FRow {
    m: u32,
    direct: String,
    closed_form: String,
    passed: bool,
}

#[derive(Serialize)]
struct AppendixDocument {
    domain: Domain,
    x: Vec<String>,
    y: Vec<String>,
    verified_powers: Vec<u32>,
    f_table: Vec<FRow>,
    equivalence: ReportDocument,
}

impl Command for AppendixCheck {
    fn name(&self) -> &'static str {
        "appendix-check"
    }
    fn about(&self) -> &'static str {
        "compare the subset-parity construction with the generator"
    }
    fn run(&self, job: &JobConfig) -> Result<Outcome> {
        by_domain!(job.domain, appendix_cmd(job))
    }
}

fn appendix_cmd<T: Scalar>(job: &JobConfig) -> Result<Outcome> {
    let base = parse_base::<T>(job)?;
    let shifts = parse_shifts::<T>(job)?;
    let (assignment, pair) = equivalence_inputs(&base, &shifts)?;
    let subsets = subset_pair(&assignment)?;
    let max_power = assignment.n() as u32 + 1;
    let identity = verify_sequences(&subsets.x, &subsets.y, max_power);
    let equivalence = equivalence_check(&base, &shifts)?;
    let f_rows: Vec<FRow> = (0..=max_power)
        .map(|m| {
            let direct = f_eval(&assignment.a, &assignment.b, m, &assignment.values);
            let closed = f_closed_form(&assignment.a, &assignment.b, m, &assignment.values)
                .expect("m <= n + 1");
            FRow {
                m,
                passed: direct == closed,
                direct: direct.to_string(),
                closed_form: closed.to_string(),
            }
        })
        .collect();
    let passed = identity.passed() && equivalence.passed() && f_rows.iter().all(|r| r.passed);

    let output = match job.format {
        OutputFormat::Json => to_json(&AppendixDocument {
            domain: T::DOMAIN,
            x: subsets.x.iter().map(ToString::to_string).collect(),
            y: subsets.y.iter().map(ToString::to_string).collect(),
            verified_powers: if identity.passed() { (1..=max_power).collect() } else { Vec::new() },
            f_table: f_rows,
            equivalence: ReportDocument::from_report(&equivalence),
        })?,
        OutputFormat::Csv => {
            csv_string(|buf| write_columns_csv(buf, ["i", "X", "Y"], &subsets.x, &subsets.y))?
        }
        OutputFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "subset construction: letters {}, {}, {}, {}; subset values {} (generator level {})",
                assignment.a,
                assignment.b,
                assignment.c,
                assignment.d,
                if assignment.values.is_empty() { "none".to_string() } else { render::joined(&assignment.values) },
                pair.level()
            );
            let _ = writeln!(out, "X: {}", render::joined(&subsets.x));
            let _ = writeln!(out, "Y: {}", render::joined(&subsets.y));
            let _ = writeln!(
                out,
                "power sums equal for 1..{max_power}: {}",
                if identity.passed() { "yes" } else { "NO" }
            );
            let rows: Vec<Vec<String>> = f_rows
                .iter()
                .map(|r| {
                    vec![
                        r.m.to_string(),
                        r.direct.clone(),
                        r.closed_form.clone(),
                        if r.passed { "ok" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            out.push_str(&render::table(&["m", "f direct", "closed form", "status"], &rows));
            let _ = writeln!(
                out,
                "sorted generator output equals subset construction: {}",
                if equivalence.passed() { "yes" } else { "NO" }
            );
            out
        }
    };
    Ok(Outcome { output, passed })
}
