// SPDX-License-Identifier: MIT OR Apache-2.0

use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Parse` maps to CLI exit code 2, every other variant to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("points or maps live on different curves")]
    CurveMismatch,
    #[error("kernel is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("input not divisible by [{0}]")]
    NotDivisible(u64),
    #[error("map is inseparable, choose different N")]
    Inseparable,
    #[error("endomorphism is not {0}-suitable")]
    NotSuitable(u64),
    #[error("no B-powersmooth translate within {budget} candidates, raise B or budget")]
    SearchBudget { budget: u64 },
    #[error("element not in the maximal order")]
    NotInOrder,
    #[error("FAILURE: {0}")]
    Failure(String),
    #[error("no collision found within budget (r-cap {0})")]
    Exhausted(u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
