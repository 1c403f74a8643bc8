//! Command-line front end: argument and config-file handling, and dispatch
//! to named commands.
//!
//! Settings resolve in the order flag, config file, environment
//! (`EXPSUM_DOMAIN`, `EXPSUM_TOLERANCE`), default.

mod commands;
mod render;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::Parser;
use serde::Deserialize;

pub use commands::{Command, CommandRegistry};

use crate::error::{Error, Result};
use crate::generator::DEFAULT_MAX_LEVEL;
use crate::scalar::Domain;

pub const ENV_DOMAIN: &str = "EXPSUM_DOMAIN";
pub const ENV_TOLERANCE: &str = "EXPSUM_TOLERANCE";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "table" => Ok(Self::Table),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Config(format!("unknown format {other:?} (expected table, json or csv)"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Table => "table",
            Self::Json => "json",
            Self::Csv => "csv",
        })
    }
}

/// Raw settings as given on the command line or in a JSON config file.
/// Config-file keys use the flag names (`from-file`, `max-level`, …).
#[derive(Parser, Deserialize, Clone, Debug, Default, PartialEq)]
#[command(
    name = "expsum",
    version,
    about = "Construct and exactly verify symmetric power-sum identities",
    after_help = "Commands: generate, verify, pyramid, blocks, reduce, prouhet, magic, appendix-check\n\
                  Exit status: 0 pass, 1 verification failure, 2 input error."
)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct JobArgs {
    /// Command to run.
    pub command: Option<String>,

    /// JSON file with default values for any of the flags below.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Number domain: rational, surd or approx.
    #[arg(long)]
    pub domain: Option<String>,

    /// Base identity, e.g. "-1,2.1;3.4,-2.3".
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<String>,

    /// Shift values k_1,...,k_n.
    #[arg(long, allow_hyphen_values = true)]
    pub shifts: Option<String>,

    /// Magic-square parameters a,b,c,d,k1,k2.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,

    /// Order of the Prouhet split.
    #[arg(long)]
    pub n: Option<u32>,

    /// Power for the block check (all powers when omitted).
    #[arg(long)]
    pub power: Option<u32>,

    /// Checks to run for `verify`: system, pyramid, blocks, parity, recursive-vs-direct.
    #[arg(long, value_delimiter = ',')]
    pub checks: Option<Vec<String>>,

    /// What `reduce` removes: zeros, cross-pairs.
    #[arg(long, value_delimiter = ',')]
    pub remove: Option<Vec<String>>,

    /// Step-limited reduction: cancel exactly these values, one pair each.
    #[arg(long, allow_hyphen_values = true)]
    pub cancel: Option<String>,

    /// Read the pair to verify or reduce from a JSON export.
    #[arg(long = "from-file")]
    pub from_file: Option<PathBuf>,

    /// Output format: table, json or csv.
    #[arg(long)]
    pub format: Option<String>,

    /// Write output here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,

    /// Relative tolerance for the approx domain.
    #[arg(long)]
    pub tolerance: Option<f64>,

    /// Largest allowed level.
    #[arg(long = "max-level")]
    pub max_level: Option<usize>,
}

impl JobArgs {
    /// Fills every unset field from `fallback`.
    pub fn or(self, fallback: JobArgs) -> JobArgs {
        JobArgs {
            command: self.command.or(fallback.command),
            config: self.config.or(fallback.config),
            domain: self.domain.or(fallback.domain),
            base: self.base.or(fallback.base),
            shifts: self.shifts.or(fallback.shifts),
            params: self.params.or(fallback.params),
            n: self.n.or(fallback.n),
            power: self.power.or(fallback.power),
            checks: self.checks.or(fallback.checks),
            remove: self.remove.or(fallback.remove),
            cancel: self.cancel.or(fallback.cancel),
            from_file: self.from_file.or(fallback.from_file),
            format: self.format.or(fallback.format),
            output: self.output.or(fallback.output),
            tolerance: self.tolerance.or(fallback.tolerance),
            max_level: self.max_level.or(fallback.max_level),
        }
    }

    pub fn load_config(path: &Path) -> Result<JobArgs> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved job.
#[derive(Clone, Debug, PartialEq)]
pub struct JobConfig {
    pub command: String,
    pub domain: Domain,
    pub base: Option<String>,
    pub shifts: Option<String>,
    pub params: Option<String>,
    pub n: Option<u32>,
    pub power: Option<u32>,
    pub checks: Vec<String>,
    pub remove_zeros: bool,
    pub remove_cross_pairs: bool,
    pub cancel: Option<String>,
    pub from_file: Option<PathBuf>,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub tolerance: Option<f64>,
    pub max_level: usize,
}

impl JobConfig {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            domain: Domain::Rational,
            base: None,
            shifts: None,
            params: None,
            n: None,
            power: None,
            checks: vec!["system".into()],
            remove_zeros: true,
            remove_cross_pairs: true,
            cancel: None,
            from_file: None,
            format: OutputFormat::Table,
            output: None,
            tolerance: None,
            max_level: DEFAULT_MAX_LEVEL,
        }
    }

    /// Merges flags over the config file (if any) over the environment.
    pub fn resolve(args: JobArgs, env: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let args = match args.config.clone() {
            Some(path) => args.or(JobArgs::load_config(&path)?),
            None => args,
        };
        let command = args
            .command
            .clone()
            .ok_or_else(|| Error::Config("no command given".into()))?;
        let mut job = JobConfig::new(&command);

        job.domain = match args.domain.or_else(|| env(ENV_DOMAIN)) {
            Some(d) => d.parse()?,
            None => Domain::Rational,
        };
        job.tolerance = match args.tolerance {
            Some(t) => Some(t),
            None => env(ENV_TOLERANCE)
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Config(format!("{ENV_TOLERANCE}={t:?}: {e}")))
                })
                .transpose()?,
        };
        if let Some(t) = job.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::Config(format!("tolerance must be a non-negative number, got {t}")));
            }
        }
        job.base = args.base;
        job.shifts = args.shifts;
        job.params = args.params;
        job.n = args.n;
        job.power = args.power;
        if let Some(checks) = args.checks {
            job.checks = checks.into_iter().map(|c| c.trim().to_string()).collect();
        }
        if let Some(remove) = args.remove {
            job.remove_zeros = false;
            job.remove_cross_pairs = false;
            for item in remove {
                match item.trim() {
                    "zeros" | "zero" => job.remove_zeros = true,
                    "cross-pairs" | "cross-pair" => job.remove_cross_pairs = true,
                    "none" => {}
                    other => {
                        return Err(Error::Config(format!(
                            "unknown removal {other:?} (expected zeros, cross-pairs or none)"
                        )))
                    }
                }
            }
        }
        job.cancel = args.cancel;
        job.from_file = args.from_file;
        if let Some(f) = args.format {
            job.format = f.parse()?;
        }
        job.output = args.output;
        if let Some(m) = args.max_level {
            job.max_level = m;
        }
        Ok(job)
    }
}

/// Rendered output of a command plus its verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

/// Runs a job and returns its output without writing it anywhere.
pub fn run(job: &JobConfig) -> Result<Outcome> {
    let registry = CommandRegistry::builtin();
    let command = registry.get(&job.command).ok_or_else(|| {
        Error::Config(format!(
            "unknown command {:?} (available: {})",
            job.command,
            registry.names().join(", ")
        ))
    })?;
    command.run(job)
}

pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(o) if o.passed => EXIT_PASS,
        Ok(_) => EXIT_FAIL,
        Err(_) => EXIT_INPUT_ERROR,
    }
}

/// Runs a job, writes its output to the configured destination and returns
/// the process exit status.
pub fn execute(job: &JobConfig) -> i32 {
    let result = run(job).and_then(|outcome| {
        match &job.output {
            Some(path) => std::fs::write(path, &outcome.output)?,
            None => print!("{}", outcome.output),
        }
        Ok(outcome)
    });
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    exit_code(&result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_env(_: &str) -> Option<String> {
        None
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("job.json");
        std::fs::write(
            &path,
            r#"{"command": "generate", "base": "1,4;2,3", "shifts": "0,4,8", "format": "json", "max-level": 5}"#,
        )
        .unwrap();
        let args = JobArgs {
            config: Some(path),
            shifts: Some("0,4".into()),
            ..Default::default()
        };
        let job = JobConfig::resolve(args, no_env).unwrap();
        assert_eq!(job.command, "generate");
        assert_eq!(job.base.as_deref(), Some("1,4;2,3"));
        assert_eq!(job.shifts.as_deref(), Some("0,4"));
        assert_eq!(job.format, OutputFormat::Json);
        assert_eq!(job.max_level, 5);
    }

    #[test]
    fn environment_defaults() {
        let env = |k: &str| match k {
            ENV_DOMAIN => Some("approx".to_string()),
            ENV_TOLERANCE => Some("1e-6".to_string()),
            _ => None,
        };
        let args = JobArgs {
            command: Some("generate".into()),
            ..Default::default()
        };
        let job = JobConfig::resolve(args.clone(), env).unwrap();
        assert_eq!(job.domain, Domain::Approx);
        assert_eq!(job.tolerance, Some(1e-6));

        let job = JobConfig::resolve(JobArgs { domain: Some("surd".into()), ..args }, env).unwrap();
        assert_eq!(job.domain, Domain::Surd);
    }

    #[test]
    fn removal_flags() {
        let args = JobArgs {
            command: Some("reduce".into()),
            remove: Some(vec!["zeros".into()]),
            ..Default::default()
        };
        let job = JobConfig::resolve(args, no_env).unwrap();
        assert!(job.remove_zeros && !job.remove_cross_pairs);
    }

    #[test]
    fn bad_settings_are_input_errors() {
        let bad = [
            JobArgs { domain: Some("complex".into()), ..Default::default() },
            JobArgs { format: Some("xml".into()), ..Default::default() },
            JobArgs { remove: Some(vec!["ones".into()]), ..Default::default() },
            JobArgs { tolerance: Some(-1.0), ..Default::default() },
        ];
        for args in bad {
            let args = JobArgs { command: Some("generate".into()), ..args };
            assert!(JobConfig::resolve(args, no_env).is_err());
        }
        assert!(JobConfig::resolve(JobArgs::default(), no_env).is_err());
    }

    #[test]
    fn unknown_command() {
        let result = run(&JobConfig::new("factor"));
        assert_eq!(exit_code(&result), EXIT_INPUT_ERROR);
    }
}
