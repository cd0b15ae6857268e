use thiserror::Error;

use crate::ast::Span;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const VALIDATION: i32 = 3;
    /// I/O and other usage errors.
    pub const USAGE: i32 = 64;
}

/// A script that cannot be run. Every variant except the validation ones
/// is a parse-stage error.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },

    #[error("{span}: unknown {kind} `{name}`")]
    UnknownName { span: Span, kind: &'static str, name: String },

    #[error("{span}: `{name}` is already defined")]
    Redefinition { span: Span, name: String },

    #[error("{span}: arity mismatch: {message}")]
    ArityMismatch { span: Span, message: String },

    #[error("{span}: type mismatch: {message}")]
    TypeMismatch { span: Span, message: String },

    #[error("{span}: invalid object: {message}")]
    InvalidObject { span: Span, message: String },

    #[error("{span}: map `{name}` is not valid: {message}")]
    InvalidMap { span: Span, name: String, message: String },
}

impl ScriptError {
    pub fn span(&self) -> Span {
        match self {
            ScriptError::Syntax { span, .. }
            | ScriptError::UnknownName { span, .. }
            | ScriptError::Redefinition { span, .. }
            | ScriptError::ArityMismatch { span, .. }
            | ScriptError::TypeMismatch { span, .. }
            | ScriptError::InvalidObject { span, .. }
            | ScriptError::InvalidMap { span, .. } => *span,
        }
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            ScriptError::Syntax { .. } => "syntax",
            ScriptError::UnknownName { .. } => "unknown-name",
            ScriptError::Redefinition { .. } => "redefinition",
            ScriptError::ArityMismatch { .. } => "arity-mismatch",
            ScriptError::TypeMismatch { .. } => "type-mismatch",
            ScriptError::InvalidObject { .. } => "invalid-object",
            ScriptError::InvalidMap { .. } => "invalid-map",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            ScriptError::InvalidObject { .. } | ScriptError::InvalidMap { .. } => exit::VALIDATION,
            _ => exit::PARSE,
        }
    }
}
