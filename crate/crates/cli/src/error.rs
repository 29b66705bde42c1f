use mixjoin_core::Error as CoreError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid JSON in {source_name}: {message}")]
    Json { source_name: String, message: String },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("step {step} refers to missing result {index}")]
    DanglingReference { step: usize, index: usize },
    #[error("step {step} expected {expected}, result {index} is {found}")]
    TypeMismatch {
        step: usize,
        index: usize,
        expected: &'static str,
        found: &'static str,
    },
    #[error("step {step} has unknown operation {op:?}")]
    UnknownOperation { step: usize, op: String },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Core(e) => e.code(),
            Self::Io { .. } => "io.read",
            Self::Json { .. } => "input.json",
            Self::Input(_) => "input.invalid",
            Self::DanglingReference { .. } => "pipeline.dangling_reference",
            Self::TypeMismatch { .. } => "pipeline.type_mismatch",
            Self::UnknownOperation { .. } => "pipeline.unknown_operation",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"code": self.code(), "message": self.to_string()})
    }
}

/// Lifts any core module error into [`CliError`].
pub(crate) fn core<E: Into<CoreError>>(e: E) -> CliError {
    CliError::Core(e.into())
}
