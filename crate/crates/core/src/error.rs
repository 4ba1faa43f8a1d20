use thiserror::Error;

use crate::algebra::Var;

/// Errors raised by the library. Input errors and mathematical negatives
/// share one type; [`Error::is_mathematical`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unknown variable {0} for this ambient dimension")]
    UnknownVariable(Var),

    #[error("polynomial contains w where a w-free polynomial is required")]
    ContainsW,

    #[error("substituted polynomial has a constant term")]
    ConstantTerm,

    #[error("divisor has a non-constant leading coefficient in {0}")]
    NonConstantLeading(Var),

    #[error("divisor has degree 0 in {0}")]
    ZeroDegreeDivisor(Var),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("variable index {index} out of range 1..{n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("malformed number: {0}")]
    MalformedNumber(String),

    #[error("malformed manifold document: {0}")]
    MalformedDocument(String),

    #[error("matrix B is not symmetric")]
    AsymmetricB,

    #[error("matrix C is not symmetric")]
    AsymmetricC,

    #[error("E has a term of total degree {0} (< 3)")]
    EOrderTooLow(u32),

    #[error("label is not one of the four exceptional cases")]
    NotExceptional,

    #[error("operation requires n >= 2")]
    RequiresNGe2,

    #[error("invalid CR field indices ({k}, {l}) for n = {n}")]
    InvalidPair { k: usize, l: usize, n: usize },

    #[error("transformation matrix is singular")]
    SingularTransform,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("no holomorphic extension exists in degree {degree}")]
    NoExtension { degree: u32 },

    #[error("function is not CR in degree {degree}")]
    NotCR { degree: u32 },

    #[error("function is not CR on the manifold (obstruction found at stage {0})")]
    NotCRAtDegree(u32),

    #[error("quadric is degenerate: its antiholomorphic derivative vanishes")]
    DegenerateQuadric,

    #[error("rank condition fails: rank [A*; B] = {0} < 2")]
    RankTooLow(usize),

    #[error("operation requires rank [A*; B] = 1, got {0}")]
    RankNotOne(usize),

    #[error("invalid ODE parameters: {0}")]
    InvalidOdeParams(&'static str),

    #[error("not a first integral: {0}")]
    NotFirstIntegral(&'static str),

    #[error("internal certificate failure: {0}")]
    Certificate(String),
}

impl Error {
    /// True for outcomes that are answers to the mathematical question
    /// (no extension exists, not CR, ...) rather than bad input.
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::NoExtension { .. }
                | Error::NotCR { .. }
                | Error::NotCRAtDegree(_)
                | Error::DegenerateQuadric
                | Error::RankTooLow(_)
                | Error::RankNotOne(_)
                | Error::NotFirstIntegral(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
