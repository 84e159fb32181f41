//! Exact spectral and linear-programming bounds for Erdős–Ko–Rado sets of
//! generators in the Hermitian polar space `H(2d-1, q^2)`.
//!
//! * [`scheme`] synthesizes the eigenmatrix of the generator association scheme.
//! * [`hoffman`] evaluates the weighted ratio bound for `A_d - f A_{d-2}`.
//! * [`lp`] solves the Delsarte linear program with an exact simplex.
//! * [`equality`] runs the integrality test for the equality case.
//! * [`oracle`] builds small polar spaces explicitly and checks all of the above.
//! * [`report`] renders results as text, JSON lines or CSV.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod equality;
pub mod error;
pub mod exactnum;
pub mod exec;
pub mod hoffman;
pub mod lp;
pub mod oracle;
pub mod report;
pub mod scheme;

pub use error::{Error, Result};
pub use exec::Execution;
pub use scheme::SchemeParams;
