use thiserror::Error;

/// Errors raised by the algebraic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for an object of arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("forbidden set {set:?} must have at least two strictly increasing indices")]
    BadForbiddenSet { set: Vec<usize> },

    #[error("arity {0} is not supported (must be between 1 and {max})", max = crate::object::MAX_ARITY)]
    BadArity(usize),

    #[error("elements belong to different Weil algebras ({left} vs {right})")]
    MixedAlgebra { left: String, right: String },

    #[error("monomial {monomial} is not a basis monomial of {object}")]
    NotInBasis { monomial: String, object: String },

    #[error("map has {found} components but its target {target} has arity {expected}")]
    ArityMismatch {
        target: String,
        expected: usize,
        found: usize,
    },

    #[error("component {component} of the map has a nonzero constant term")]
    NonzeroConstantTerm { component: usize },

    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch { expected: String, found: String },

    #[error("target mismatch in direct sum of maps: {first} vs {other}")]
    TargetMismatch { first: String, other: String },

    #[error("map is not valid: {0}")]
    InvalidMap(String),

    #[error("empty list where at least one entry is required")]
    Empty,

    #[error("block index {index} out of range for {count} summands")]
    BlockOutOfRange { index: usize, count: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("cone does not match diagram: {0}")]
    ShapeMismatch(String),

    #[error("no mediating morphism: {0}")]
    NoMediator(String),

    #[error("mediating morphism is not unique: {0}")]
    NonUnique(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
