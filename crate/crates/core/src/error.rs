use thiserror::Error;

use crate::exactnum::IdentityError;

/// Failure classes shared by every module; the CLI maps them to exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// Parameters outside the domain an operation is defined on.
    #[error("parameter error: {0}")]
    Domain(String),
    /// A mathematical property that should hold did not.
    #[error("property violated: {0}")]
    Property(String),
    /// Explicit construction refused because it would be too large.
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed record: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! property {
    ($($arg:tt)*) => { $crate::error::Error::Property(format!($($arg)*)) };
}

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}

pub(crate) use domain;
pub(crate) use property;
