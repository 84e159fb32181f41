//! Integrality test for a hypothetical EKR set meeting the bound with equality.
//!
//! If `|S|` equals the ratio bound, the characteristic vector of `S` is
//! `(|S|/N) j + v_1 + v_d` with `v_1 in V_1`, `v_d in V_d`. At any member of
//! `S`, the entries `a_1`, `a_d` of `v_1`, `v_d` are then fixed by two linear
//! equations, and the number `n_i` of members meeting it in relation `i` is
//! determined. Counts must be non-negative integers.

use num_traits::{One, Signed, Zero};

use crate::error::{property, Result};
use crate::exactnum::{is_integral, rat_int, Integer, Rational};
use crate::hoffman::closed_form_bound;
use crate::scheme::{eigenmatrix, Eigenmatrix, SchemeParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ContradictionFound,
    NoContradiction,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::ContradictionFound => "contradiction-found",
            Verdict::NoContradiction => "no-contradiction",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityReport {
    pub params: SchemeParams,
    pub size: Integer,
    pub a1: Rational,
    pub ad: Rational,
    /// `n[i]`: members of `S` in relation `i` with a fixed member.
    pub n: Vec<Rational>,
    pub integral: Vec<bool>,
    /// Indices where `n[i]` is non-integral or negative.
    pub witnesses: Vec<usize>,
    pub verdict: Verdict,
}

/// Solve `(s/N) k_d + a1 P[1][d] + ad P[d][d] = 0` and `s/N + a1 + ad = 1`.
pub fn solve_coeffs(em: &Eigenmatrix, size: &Integer) -> Result<(Rational, Rational)> {
    let d = em.d();
    let share = Rational::new(size.clone(), em.n.clone());
    let p1 = rat_int(&em.p[1][d]);
    let pd = rat_int(&em.p[d][d]);
    let det = &pd - &p1;
    if det.is_zero() {
        return Err(property!("{}: coefficient system is singular", em.params));
    }
    // a1 + ad = 1 - share;  p1 a1 + pd ad = -share k_d
    let sum = Rational::one() - &share;
    let rhs = -&share * rat_int(&em.k[d]);
    let ad = (&rhs - &p1 * &sum) / &det;
    let a1 = &sum - &ad;
    Ok((a1, ad))
}

pub fn intersection_distribution(em: &Eigenmatrix, size: &Integer) -> Result<EqualityReport> {
    let params = em.params.require_odd_rank()?;
    let d = em.d();
    let (a1, ad) = solve_coeffs(em, size)?;
    let share = Rational::new(size.clone(), em.n.clone());
    let n: Vec<Rational> =
        (0..=d).map(|i| &share * rat_int(&em.k[i]) + &a1 * rat_int(&em.p[1][i]) + &ad * rat_int(&em.p[d][i])).collect();
    if !n[0].is_one() {
        return Err(property!("{params}: n_0 = {} (expected 1)", n[0]));
    }
    if !n[d].is_zero() {
        return Err(property!("{params}: n_d = {} (expected 0)", n[d]));
    }
    let total: Rational = n.iter().sum();
    if total != rat_int(size) {
        return Err(property!("{params}: sum of n_i is {total}, expected {size}"));
    }
    let integral: Vec<bool> = n.iter().map(is_integral).collect();
    let witnesses: Vec<usize> = (0..=d).filter(|&i| !integral[i] || n[i].is_negative()).collect();
    let verdict = if witnesses.is_empty() { Verdict::NoContradiction } else { Verdict::ContradictionFound };
    Ok(EqualityReport { params, size: size.clone(), a1, ad, n, integral, witnesses, verdict })
}

/// Run the test at the closed-form bound.
pub fn equality_report(params: SchemeParams) -> Result<EqualityReport> {
    let params = params.require_odd_rank()?;
    let em = eigenmatrix(params)?;
    intersection_distribution(&em, &closed_form_bound(params)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn coefficients_solve_both_equations() {
        for (d, q) in [(3, 2), (5, 2), (5, 3), (7, 2)] {
            let p = SchemeParams::new(d, q).unwrap();
            let em = eigenmatrix(p).unwrap();
            let dd = em.d();
            assert_ne!(em.p[dd][dd], em.p[1][dd]);
            let size = closed_form_bound(p).unwrap();
            let (a1, ad) = solve_coeffs(&em, &size).unwrap();
            let share = Rational::new(size.clone(), em.n.clone());
            assert!(
                (&share * rat_int(&em.k[dd]) + &a1 * rat_int(&em.p[1][dd]) + &ad * rat_int(&em.p[dd][dd])).is_zero()
            );
            assert_eq!(&share + &a1 + &ad, Rational::from_integer(int(1)));
        }
    }

    #[test]
    fn equality_at_bound_is_contradictory() {
        let rep = equality_report(SchemeParams::new(5, 2).unwrap()).unwrap();
        assert_eq!(rep.size, int(347139));
        assert_eq!(rep.verdict, Verdict::ContradictionFound);
        assert!(!rep.witnesses.is_empty());
        assert!(rep.n[0].is_one());
        assert!(rep.n[5].is_zero());
    }

    #[test]
    fn below_bound_still_reports_invariants() {
        let p = SchemeParams::new(5, 2).unwrap();
        let em = eigenmatrix(p).unwrap();
        let rep = intersection_distribution(&em, &int(1000)).unwrap();
        assert_eq!(rep.n.iter().sum::<Rational>(), Rational::from_integer(int(1000)));
    }
}
