//! Construction, exact verification, reduction and export of symmetric
//! power-sum identities built by recursive doubling.
//!
//! Starting from a balanced base `a_1 + … + a_N = c_1 + … + c_N` and shifts
//! `k_1, …, k_n`, [`generator`] builds two sequences of `2^(n-1)·N` values
//! whose `m`-th power sums agree for every `m` in `1..=n`. [`verifier`]
//! checks that family of identities (full sums, prefixes, blocks, parity,
//! and a binomial recurrence for the sums), [`reducer`] strips zeros and
//! shared values, and [`prouhet`], [`magic`] and [`appendix`] cover the
//! Thue-Morse special case, 4×4 magic squares and the subset-parity
//! description of the same sequences.
//!
//! Arithmetic is generic over [`scalar::Scalar`]: big rationals, exact
//! multi-quadratic surds, or doubles under a relative tolerance.

pub mod appendix;
pub mod binomial;
pub mod cli;
pub mod error;
pub mod export;
pub mod generator;
pub mod magic;
pub mod prouhet;
pub mod reducer;
pub mod scalar;
pub mod verifier;

pub use error::{Error, Result};
pub use generator::{generate, BaseIdentity, Generator, ShiftVector, SolutionPair};
pub use scalar::{Approx, Domain, Rational, Scalar, Surd};
