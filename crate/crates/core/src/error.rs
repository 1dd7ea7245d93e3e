use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction error: {0}")]
    Construction(String),
    /// A configured bound (group order, lattice size) would be exceeded.
    #[error("resource bound exceeded: {what} is {actual}, bound is {bound}")]
    Resource {
        what: &'static str,
        bound: usize,
        actual: usize,
    },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a lattice: {0}")]
    NotALattice(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
