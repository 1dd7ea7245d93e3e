use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] proflat_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: proflat_core::Error,
    },
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("unknown tower {0:?}; bundled towers are {1}")]
    UnknownTower(String, String),
    #[error("unknown suite {0:?}; suites are {1}")]
    UnknownSuite(String, String),
    #[error("unknown predicate {0:?}; predicates are {1}")]
    UnknownPredicate(String, String),
    #[error("group name {0:?} is already in the catalogue")]
    DuplicateName(String),
}

pub type Result<T> = std::result::Result<T, HarnessError>;
