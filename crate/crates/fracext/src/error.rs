use fracext_core::classification::ClassificationError;
use fracext_core::extendability::ExtendabilityError;
use fracext_core::graph::{GraphError, IsoError};
use fracext_core::groups::GroupError;
use fracext_core::matching::MatchingError;
use fracext_core::parse::ParseError;
use serde::Serialize;

use crate::io::IoError;

/// Everything that ends a command with exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Classification(#[from] ClassificationError),
    #[error(transparent)]
    Extendability(#[from] ExtendabilityError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Iso(#[from] IsoError),
}

/// Machine-readable form printed on stdout.
#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Io(_) => "io",
            CliError::Graph(_) | CliError::Group(_) => "graph",
            CliError::Classification(ClassificationError::OrderCap { .. }) => "cap",
            CliError::Classification(ClassificationError::Parse(_) | ClassificationError::OutOfRange { .. }) => {
                "parse"
            }
            CliError::Classification(_) | CliError::Extendability(_) | CliError::Matching(_) | CliError::Iso(_) => {
                "engine"
            }
        }
    }

    pub fn report(&self) -> ErrorReport {
        ErrorReport {
            kind: self.kind(),
            message: self.to_string(),
        }
    }
}
