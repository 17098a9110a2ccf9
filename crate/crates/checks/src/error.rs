use thiserror::Error;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown check `{name}`; valid checks are: {}", valid.join(", "))]
    UnknownCheck { name: String, valid: Vec<String> },
    #[error(transparent)]
    Core(#[from] bargmann_core::Error),
    #[error(transparent)]
    Symbolic(#[from] bargmann_symbolic::SymbolicError),
    #[error("report serialisation failed: {0}")]
    Serialise(String),
    #[error("check panicked: {0}")]
    Panicked(String),
}
