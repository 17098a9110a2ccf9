use thiserror::Error;

use crate::parser::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("hadamard order {0} is below 3 and cannot witness termination")]
    HadamardOrder(usize),
}
