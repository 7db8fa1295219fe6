use thiserror::Error;

/// Every failure surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank {0} exceeds the configured maximum {1}")]
    RankTooLarge(usize, usize),
    #[error("no inverse of zero")]
    NoInverseOfZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("hyperfield kind mismatch: {0}")]
    KindMismatch(String),
    #[error("empty hypersum")]
    EmptySum,
    #[error("not a multiplicative subgroup: {0}")]
    NotSubgroup(String),
    #[error("unsupported field order {0}")]
    BadFieldOrder(u64),
    #[error("zero has no leading term")]
    ZeroLeadingTerm,
    #[error("insufficient precision")]
    InsufficientPrecision,
    #[error("0^k undefined for negative k")]
    ZeroToNegativePower,
    #[error("base solve incomplete: residual {0}")]
    BaseSolveIncomplete(String),
    #[error("degree {0} exceeds bound {1}")]
    DegreeBound(usize, usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no isolated solution")]
    NoIsolatedSolution,
    #[error("lift not generic, reseed")]
    LiftNotGeneric,
    #[error("projective point with all coordinates zero")]
    AllZeroCoordinates,
    #[error("unknown hyperfield {0:?}")]
    UnknownHyperfield(String),
    #[error("invalid literal {literal:?} for {hyperfield}: {reason}")]
    InvalidLiteral {
        literal: String,
        hyperfield: String,
        reason: String,
    },
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RankMismatch(..) => "rank_mismatch",
            Error::RankTooLarge(..) => "rank_too_large",
            Error::NoInverseOfZero => "no_inverse_of_zero",
            Error::DivisionByZero => "division_by_zero",
            Error::KindMismatch(_) => "kind_mismatch",
            Error::EmptySum => "empty_sum",
            Error::NotSubgroup(_) => "not_subgroup",
            Error::BadFieldOrder(_) => "bad_field_order",
            Error::ZeroLeadingTerm => "zero_leading_term",
            Error::InsufficientPrecision => "insufficient_precision",
            Error::ZeroToNegativePower => "zero_to_negative_power",
            Error::BaseSolveIncomplete(_) => "base_solve_incomplete",
            Error::DegreeBound(..) => "degree_bound",
            Error::Unsupported(_) => "unsupported",
            Error::NoIsolatedSolution => "no_isolated_solution",
            Error::LiftNotGeneric => "lift_not_generic",
            Error::AllZeroCoordinates => "all_zero_coordinates",
            Error::UnknownHyperfield(_) => "unknown_hyperfield",
            Error::InvalidLiteral { .. } => "invalid_literal",
            Error::Syntax { .. } => "syntax",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
