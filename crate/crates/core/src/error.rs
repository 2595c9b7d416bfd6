use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: expected {}", expected.join(", "))]
    Syntax { offset: usize, expected: Vec<String> },

    #[error("invalid shape `{0}`")]
    InvalidShape(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("element does not fit the signature: {0}")]
    ShapeMismatch(String),

    #[error("coordinate ({row}, {col}) out of range for a {rows}x{cols} class")]
    IndexOutOfRange { row: u32, col: u32, rows: u32, cols: u32 },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` is already in the alphabet")]
    VariableCollision(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
