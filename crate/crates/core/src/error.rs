//! Shared error type for the engine.

use thiserror::Error;

/// Errors produced by the symbolic engine.
///
/// Everything is exact, so these describe structural problems (mixing
/// incompatible declarations, dividing by an identically zero expression),
/// not numerical ones.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CoreError {
    /// Two values built over different parameter/root declarations were combined.
    #[error("mismatched parameter declarations")]
    DeclMismatch,

    /// Two elements of different coefficient rings were combined.
    #[error("mismatched base rings")]
    RingMismatch,

    /// An identifier was used that is not a declared parameter, root symbol,
    /// generator, or the ring variable.
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),

    /// A fraction was constructed with an identically zero denominator,
    /// or a substitution produced one.
    #[error("zero denominator")]
    ZeroDenominator,

    /// Division by an identically zero expression.
    #[error("division by zero")]
    DivisionByZero,

    /// A negative power was requested of something that has no inverse here.
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    /// Input text did not match the expression grammar.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A solver step needs an expression to be invertible, but the caller's
    /// nonzero assumptions do not cover it.
    #[error("assumption required: `{0}` must be asserted nonzero")]
    AssumptionRequired(String),

    /// A linear system has no solution; the residual names the obstruction.
    #[error("inconsistent system, residual {0}")]
    Inconsistent(String),

    /// A bracket coefficient left the span of {1, -2t, -t^2}.
    #[error("bracket `{bracket}` does not close: coefficient {coefficient}")]
    NotClosed {
        bracket: String,
        coefficient: String,
    },

    /// An operation required a specific ring kind.
    #[error("wrong ring kind: {0}")]
    RingKind(String),

    /// The rewrite step budget ran out before a normal form was reached.
    #[error("rewrite budget exhausted")]
    BudgetExhausted,

    /// A relation could not be oriented into a quadratic rewrite rule.
    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    /// No built-in specialization with this name exists.
    #[error("unknown specialization `{0}`")]
    UnknownSpecialization(String),

    /// An explicit precondition was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A generator is missing from an assignment or substitution map.
    #[error("missing assignment for generator `{0}`")]
    MissingAssignment(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
