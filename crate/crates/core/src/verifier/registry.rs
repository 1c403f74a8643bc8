//! Named verification strategies over a [`SolutionPair`].

use crate::error::{Error, Result};
use crate::generator::SolutionPair;
use crate::scalar::Scalar;

use super::{
    check_parity, verify_all_blocks, verify_blocks, verify_pyramid, verify_recursive,
    verify_system, VerificationReport,
};

pub trait Check<T: Scalar>: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, pair: &SolutionPair<T>) -> Result<VerificationReport<T>>;
}

pub struct SystemCheck;

impl<T: Scalar> Check<T> for SystemCheck {
    fn name(&self) -> &'static str {
        "system"
    }
    fn description(&self) -> &'static str {
        "full-sequence power sums for every power 1..n"
    }
    fn run(&self, pair: &SolutionPair<T>) -> Result<VerificationReport<T>> {
        Ok(verify_system(pair))
    }
}

pub struct PyramidCheck;

impl<T: Scalar> Check<T> for PyramidCheck {
    fn name(&self) -> &'static str {
        "pyramid"
    }
    fn description(&self) -> &'static str {
        "power m on prefixes of length 2^(m-1)*N"
    }
    fn run(&self, pair: &SolutionPair<T>) -> Result<VerificationReport<T>> {
        Ok(verify_pyramid(pair))
    }
}

/// Block sums for one power, or for every power when `power` is `None`.
#[derive(Default)]
pub struct BlocksCheck {
    pub power: Option<u32>,
}

impl<T: Scalar> Check<T> for BlocksCheck {
    fn name(&self) -> &'static str {
        "blocks"
    }
    fn description(&self) -> &'static str {
        "power m on consecutive blocks of length 2^(m-1)*N"
    }
    fn run(&self, pair: &SolutionPair<T>) -> Result<VerificationReport<T>> {
        match self.power {
            Some(m) => verify_blocks(pair, m),
            None => Ok(verify_all_blocks(pair)),
        }
    }
}

pub struct ParityCheck;

impl<T: Scalar> Check<T> for ParityCheck {
    fn name(&self) -> &'static str {
        "parity"
    }
    fn description(&self) -> &'static str {
        "closed form and evenness of the first power sum (two-term base)"
    }
    fn run(&self, pair: &SolutionPair<T>) -> Result<VerificationReport<T>> {
        check_parity(pair)
    }
}

pub struct RecursiveCheck;

impl<T: Scalar> Check<T> for RecursiveCheck {
    fn name(&self) -> &'static str {
        "recursive-vs-direct"
    }
    fn description(&self) -> &'static str {
        "binomial power-sum recurrence against direct summation"
    }
    fn run(&self, pair: &SolutionPair<T>) -> Result<VerificationReport<T>> {
        Ok(verify_recursive(pair))
    }
}

/// Ordered set of checks, looked up by name.
pub struct CheckRegistry<T> {
    checks: Vec<Box<dyn Check<T>>>,
}

impl<T: Scalar> Default for CheckRegistry<T> {
    fn default() -> Self {
        Self::builtin()
    }
}

impl<T: Scalar> CheckRegistry<T> {
    pub fn empty() -> Self {
        Self { checks: Vec::new() }
    }

    pub fn builtin() -> Self {
        let mut registry = Self::empty();
        registry.register(Box::new(SystemCheck));
        registry.register(Box::new(PyramidCheck));
        registry.register(Box::new(BlocksCheck::default()));
        registry.register(Box::new(ParityCheck));
        registry.register(Box::new(RecursiveCheck));
        registry
    }

    /// Adds a check, replacing any existing one with the same name.
    pub fn register(&mut self, check: Box<dyn Check<T>>) {
        match self.checks.iter().position(|c| c.name() == check.name()) {
            Some(i) => self.checks[i] = check,
            None => self.checks.push(check),
        }
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check<T>> {
        self.checks
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Check<T>> {
        self.checks.iter().map(|c| c.as_ref())
    }

    /// Runs the named checks in the given order.
    pub fn run(&self, names: &[&str], pair: &SolutionPair<T>) -> Result<Vec<VerificationReport<T>>> {
        names
            .iter()
            .map(|name| {
                self.get(name)
                    .ok_or_else(|| {
                        Error::Config(format!(
                            "unknown check {name:?} (available: {})",
                            self.names().join(", ")
                        ))
                    })?
                    .run(pair)
            })
            .collect()
    }
}
