use thiserror::Error;

use crate::algebra::Diagnostic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{}", format_diagnostics(.0))]
    Validation(Vec<Diagnostic>),

    #[error("unsupported group, supply partitioned form: {0}")]
    UnsupportedGroup(String),

    #[error("extend field: minimal polynomial {poly} does not split into distinct linear factors over {field}")]
    ExtendField { poly: String, field: String },

    #[error("modules are over different algebras")]
    AlgebraMismatch,

    #[error("dimension cap exceeded: {dim} > {cap} ({context})")]
    CapExceeded { dim: usize, cap: usize, context: String },

    #[error("no symmetrizing form verified for this algebra")]
    NotSymmetric,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    let mut out = String::from("algebra validation failed");
    for d in diags {
        out.push_str("\n  ");
        out.push_str(&d.to_string());
    }
    out
}
