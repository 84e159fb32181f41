//! Explicit construction of small Hermitian polar spaces.
//!
//! The form is `h(u, v) = sum_i u_i conj(v_i)` on `GF(q^2)^(2d)`. Every
//! generator is listed, pairwise intersection ranks are tabulated, and the
//! resulting relation matrices are compared against the [`crate::scheme`]
//! data with exact integer arithmetic.

mod field;
mod space;
mod verify;

use num_traits::ToPrimitive;

pub use field::{build_field, Elem, Field};
pub use space::{
    codimension_table, distance_distribution, enumerate_generators, extend_to_generators, hermitian, isotropic_points,
    normalize, pencil_sizes, point_pencil, read_dump, rref, write_dump, Dump, Generator, OracleLimits, PolarSpace,
};
pub use verify::{verify_scheme_matrices, MatrixReport};

use crate::error::{property, Result};
use crate::exactnum::{rat_int, Rational};
use crate::exec::Execution;
use crate::hoffman;
use crate::scheme::{eigenmatrix, valencies, SchemeParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub params: SchemeParams,
    pub generators: usize,
    pub points: usize,
    pub distance_counts: Vec<u64>,
    pub matrices: MatrixReport,
    /// Generators on each isotropic point (all equal).
    pub pencil_size: usize,
    /// Weighted ratio bound, for odd `d >= 3`.
    pub ratio_bound: Option<Rational>,
}

/// Build `H(2d-1, q^2)` explicitly and check it against the scheme formulas.
pub fn run_oracle(params: SchemeParams, limits: OracleLimits, exec: Execution) -> Result<OracleReport> {
    let ps = enumerate_generators(params, limits, exec)?;
    let em = eigenmatrix(params)?;
    let distance_counts = distance_distribution(&ps)?;
    let expected: Vec<u64> = valencies(params).iter().map(|k| k.to_u64().unwrap_or(u64::MAX)).collect();
    if distance_counts != expected {
        return Err(property!("{params}: distance counts {distance_counts:?} differ from valencies {expected:?}"));
    }
    let matrices = verify_scheme_matrices(&ps, &em, exec)?;

    let sizes = pencil_sizes(&ps);
    let want = params.point_pencil_size().to_usize().unwrap_or(usize::MAX);
    if let Some(i) = sizes.iter().position(|&s| s != want) {
        return Err(property!("{params}: point {:?} lies on {} generators, expected {want}", ps.points[i], sizes[i]));
    }
    if let Some(p) = ps.points.first() {
        let pencil = point_pencil(&ps, p)?;
        if pencil.len() != want {
            return Err(property!("{params}: pencil of {p:?} has {} members, expected {want}", pencil.len()));
        }
    }

    let ratio_bound = if params.d >= 3 && params.d % 2 == 1 {
        let bound = hoffman::ratio_bound(params)?;
        if rat_int(&want.into()) > bound {
            return Err(property!("{params}: point pencil of size {want} exceeds the ratio bound {bound}"));
        }
        Some(bound)
    } else {
        None
    };

    Ok(OracleReport {
        params,
        generators: ps.len(),
        points: ps.points.len(),
        distance_counts,
        matrices,
        pencil_size: want,
        ratio_bound,
    })
}
