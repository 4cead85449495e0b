use thiserror::Error;

use crate::element::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cayley table is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NonAssociativeTable { x: usize, y: usize, z: usize },

    #[error("malformed semigroup spec: {0}")]
    MalformedSpec(String),

    #[error("element {element} does not belong to a {kind} semigroup")]
    KindMismatch { element: Element, kind: &'static str },

    #[error("budget {budget} is smaller than the {seeds} seed elements")]
    BudgetTooSmall { budget: usize, seeds: usize },

    #[error("empty seed set")]
    EmptySeeds,

    #[error("element set is not closed under the product: {x}*{y} = {product} is missing")]
    NotClosed {
        x: Element,
        y: Element,
        product: Element,
    },

    #[error("infinitely many generators carry zero weight within the radius")]
    ZeroWeightOnInfinite,

    #[error("weight function is undefined at generator index {0}")]
    WeightUndefined(usize),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("enumeration of {words} words exceeds the limit of {limit}")]
    EnumerationTooLarge { words: u128, limit: u128 },

    #[error("closure of the first {index} generators exhausted its budget")]
    NotLocallyFiniteEvidence { index: usize },

    #[error("phi is undefined at {0}")]
    PhiUndefined(Element),

    #[error("phi({element}) = {value} is not a real number >= 1")]
    InvalidPhi { element: Element, value: f64 },

    #[error("element {0} lies outside the enumerated ball")]
    SupportOutsideBall(Element),

    #[error("submultiplicativity ratio needs nonzero operands")]
    ZeroOperand,

    #[error("length tables cover different element sets ({left} vs {right} elements)")]
    DomainMismatch { left: usize, right: usize },

    #[error("length table is not complete")]
    NotComplete,

    #[error("exponential base must be a finite real > 1, got {0}")]
    InvalidBase(f64),

    #[error("weight function is not integer valued")]
    NotIntegerValued,

    #[error("the second weight is not the staircase of the first")]
    WeightMismatch,

    #[error("length tables were built over different generator lists")]
    GeneratorMismatch,

    #[error("defect of {element} is not an integer")]
    NonIntegerDefect { element: Element },

    #[error("defect of {element} is not positive")]
    NonPositiveDefect { element: Element },

    #[error("{0} is outside the supported range")]
    OutOfRange(u64),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid field `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Errors that signal a broken internal invariant rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::NonIntegerDefect { .. } | Error::NonPositiveDefect { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
