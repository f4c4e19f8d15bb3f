use thiserror::Error;

use crate::ring::Theta;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings ({0} vs {1})")]
    ThetaMismatch(Theta, Theta),
    #[error("nu^2 = {0} is not one of 0, 1, v")]
    InvalidTheta(String),
    #[error("polynomial of degree {degree} does not fit length {n}")]
    InvalidDegree { degree: usize, n: usize },
    #[error("word of length {got}, expected {expected}")]
    InvalidLength { expected: usize, got: usize },
    #[error("division by the zero polynomial")]
    DivByZero,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("operation needs a {expected} unit, context has a {found} unit")]
    WrongUnitClass {
        expected: &'static str,
        found: &'static str,
    },
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("size limit exceeded: {what} ({size} > {limit})")]
    SizeLimitExceeded {
        what: &'static str,
        size: u64,
        limit: u64,
    },
    #[error("code sets come from different quotient rings")]
    CtxMismatch,
    #[error("exponents t1 = {t1}, t2 = {t2} do not satisfy t2 <= t1")]
    InvalidExponents { t1: usize, t2: usize },
    #[error("torsion code is not a (z^n - 1)-power chain ideal")]
    NotInChain,
    #[error("length must be positive")]
    ZeroLength,
}

pub type Result<T> = std::result::Result<T, Error>;
