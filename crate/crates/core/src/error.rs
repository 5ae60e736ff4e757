use thiserror::Error;

use crate::tables::ElementId;

/// What went wrong while reading a `.cay` body.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("input is empty")]
    Empty,
    #[error("expected a positive order, found {0:?}")]
    BadOrder(String),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {0} exceeds the supported maximum of {max}", max = crate::tables::MAX_ORDER)]
    OrderTooLarge(usize),
    #[error("non-numeric token {0:?}")]
    NonNumeric(String),
    #[error("entry {value} out of range 1..={order}")]
    OutOfRange { value: usize, order: usize },
    #[error("row has {found} entries, expected {expected}")]
    RowLength { found: usize, expected: usize },
    #[error("expected {expected} rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("unexpected trailing content")]
    TrailingContent,
}

/// A `.cay` parse failure, positioned at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("not a semigroup: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotASemigroup(ElementId, ElementId, ElementId),

    #[error("element {0} has no generalized inverse")]
    NoInverse(ElementId),

    #[error("element {element} has more than one generalized inverse ({first} and {second})")]
    NonUniqueInverse {
        element: ElementId,
        first: ElementId,
        second: ElementId,
    },

    #[error("element {0} is not idempotent")]
    NotIdempotent(ElementId),

    #[error("partial order axiom violated: {0}")]
    OrderAxiomViolation(String),

    #[error("invalid inductive groupoid: {0}")]
    InvalidGroupoid(String),

    #[error("invalid double inductive groupoid: {0}")]
    InvalidDig(String),

    #[error("not a double inverse semigroup: {0}")]
    NotDoubleInverse(String),

    #[error("tables have different orders ({0} and {1})")]
    OrderMismatch(usize, usize),

    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),

    #[error("component at object {object} is not closed: {reason}")]
    ComponentNotClosed { object: String, reason: String },

    #[error("component at object {object} is not an Abelian group: {reason}")]
    ComponentNotGroup { object: String, reason: String },

    #[error("theorem violated: {0}")]
    TheoremViolation(String),

    #[error("order {order} exceeds the search cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },

    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
