//! Exact Delsarte linear-programming bound.
//!
//! The LP is over inner distributions `x_0..x_d` of a generator set `S`
//! (`x_j` = average number of members of `S` in relation `j` with a fixed
//! member). EKR sets have `x_d = 0`, and every inner distribution satisfies
//! `x Q >= 0`. Maximizing `sum_j x_j = |S|` gives an upper bound.
//!
//! The solver is a dense two-phase tableau simplex over exact rationals
//! with Bland's rule, so it always terminates and its certificates are exact.

use num_traits::{One, Signed, Zero};

use crate::error::{property, Result};
use crate::exactnum::{rat_int, Rational};
use crate::hoffman;
use crate::scheme::{dual_eigenmatrix, eigenmatrix, Eigenmatrix, SchemeParams};

/// `coeffs . x <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub bound: Rational,
}

/// maximize `constant + objective . x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constant: Rational,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>, constant: Rational) -> Self {
        Self { objective, constant, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn le(&mut self, coeffs: Vec<Rational>, bound: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint width");
        self.constraints.push(Constraint { coeffs, bound });
        self
    }

    /// `coeffs . x >= bound`, stored negated.
    pub fn ge(&mut self, coeffs: Vec<Rational>, bound: Rational) -> &mut Self {
        self.le(coeffs.into_iter().map(|c| -c).collect(), -bound)
    }

    pub fn value_at(&self, x: &[Rational]) -> Rational {
        &self.constant + dot(&self.objective, x)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

impl std::fmt::Display for LpStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Unbounded => "unbounded",
            LpStatus::Infeasible => "infeasible",
        })
    }
}

/// Solver output. `primal` and `dual` are only meaningful when optimal;
/// `dual[i]` is the multiplier of constraint `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpCertificate {
    pub status: LpStatus,
    pub optimum: Option<Rational>,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// reduced costs: objective = value + sum_j cost[j] x_j over nonbasic j
    cost: Vec<Rational>,
    value: Rational,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let factor = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        if !self.cost[c].is_zero() {
            let factor = self.cost[c].clone();
            for (v, pv) in self.cost.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.value += &factor * &pivot_rhs;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Bland's rule iterations. Returns false if unbounded.
    fn optimize(&mut self, allowed: &[bool]) -> bool {
        loop {
            let Some(c) = (0..self.cost.len()).find(|&j| allowed[j] && self.cost[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    /// Replace the cost row by `objective` expressed over the current nonbasic columns.
    fn set_objective(&mut self, objective: &[Rational]) {
        self.cost = objective.to_vec();
        self.value = Rational::zero();
        for i in 0..self.rows.len() {
            let cb = self.cost[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for (v, a) in self.cost.iter_mut().zip(&self.rows[i]) {
                *v -= &cb * a;
            }
            self.value += &cb * &self.rhs[i];
        }
    }
}

/// Solve exactly. Optimal results are verified by [`verify_certificate`] before return.
pub fn solve_exact(lp: &LinearProgram) -> Result<LpCertificate> {
    let n = lp.num_vars();
    let m = lp.constraints.len();
    let needs_artificial: Vec<usize> = (0..m).filter(|&i| lp.constraints[i].bound.is_negative()).collect();
    let width = n + m + needs_artificial.len();

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for (i, con) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        row[..n].clone_from_slice(&con.coeffs);
        row[n + i] = Rational::one();
        if let Some(a) = needs_artificial.iter().position(|&r| r == i) {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            row[n + m + a] = Rational::one();
            rhs.push(-&con.bound);
            basis.push(n + m + a);
        } else {
            rhs.push(con.bound.clone());
            basis.push(n + i);
        }
        rows.push(row);
    }
    let mut tab = Tableau { rows, rhs, basis, cost: vec![Rational::zero(); width], value: Rational::zero(), pivots: 0 };
    let is_artificial = |j: usize| j >= n + m;

    if !needs_artificial.is_empty() {
        let mut phase1 = vec![Rational::zero(); width];
        for a in 0..needs_artificial.len() {
            phase1[n + m + a] = -Rational::one();
        }
        tab.set_objective(&phase1);
        let allowed = vec![true; width];
        tab.optimize(&allowed);
        if tab.value.is_negative() {
            return Ok(LpCertificate {
                status: LpStatus::Infeasible,
                optimum: None,
                primal: vec![],
                dual: vec![],
                pivots: tab.pivots,
            });
        }
        // Drive zero-level artificials out of the basis where possible.
        for r in 0..m {
            if is_artificial(tab.basis[r]) {
                if let Some(c) = (0..n + m).find(|&j| !tab.rows[r][j].is_zero()) {
                    tab.pivot(r, c);
                }
            }
        }
    }

    let mut phase2 = vec![Rational::zero(); width];
    phase2[..n].clone_from_slice(&lp.objective);
    tab.set_objective(&phase2);
    let allowed: Vec<bool> = (0..width).map(|j| !is_artificial(j)).collect();
    if !tab.optimize(&allowed) {
        return Ok(LpCertificate {
            status: LpStatus::Unbounded,
            optimum: None,
            primal: vec![],
            dual: vec![],
            pivots: tab.pivots,
        });
    }

    let mut primal = vec![Rational::zero(); n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            primal[b] = tab.rhs[r].clone();
        }
    }
    let dual: Vec<Rational> = (0..m).map(|i| -&tab.cost[n + i]).collect();
    let cert = LpCertificate {
        status: LpStatus::Optimal,
        optimum: Some(&lp.constant + &tab.value),
        primal,
        dual,
        pivots: tab.pivots,
    };
    verify_certificate(lp, &cert)?;
    Ok(cert)
}

/// Check primal and dual feasibility, equal objective values and complementary slackness.
pub fn verify_certificate(lp: &LinearProgram, cert: &LpCertificate) -> Result<()> {
    if cert.status != LpStatus::Optimal {
        return Ok(());
    }
    let x = &cert.primal;
    let y = &cert.dual;
    let optimum = cert.optimum.as_ref().ok_or_else(|| property!("optimal certificate without a value"))?;
    if x.iter().any(Signed::is_negative) {
        return Err(property!("primal solution has a negative entry"));
    }
    if y.iter().any(Signed::is_negative) {
        return Err(property!("dual multipliers have a negative entry"));
    }
    for (i, con) in lp.constraints.iter().enumerate() {
        let slack = &con.bound - dot(&con.coeffs, x);
        if slack.is_negative() {
            return Err(property!("primal violates constraint {i}"));
        }
        if !(&slack * &y[i]).is_zero() {
            return Err(property!("complementary slackness fails on constraint {i}"));
        }
    }
    for j in 0..lp.num_vars() {
        let col: Rational = lp.constraints.iter().zip(y).map(|(c, yi)| &c.coeffs[j] * yi).sum();
        let reduced = col - &lp.objective[j];
        if reduced.is_negative() {
            return Err(property!("dual infeasible in column {j}"));
        }
        if !(&reduced * &x[j]).is_zero() {
            return Err(property!("complementary slackness fails on variable {j}"));
        }
    }
    if lp.value_at(x) != *optimum {
        return Err(property!("primal objective differs from reported optimum"));
    }
    let dual_value: Rational =
        &lp.constant + lp.constraints.iter().zip(y).map(|(c, yi)| &c.bound * yi).sum::<Rational>();
    if dual_value != *optimum {
        return Err(property!("dual objective {dual_value} differs from primal {optimum}"));
    }
    Ok(())
}

/// Delsarte LP for EKR sets of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelsarteInstance {
    pub params: SchemeParams,
    /// Variables are `x_1..x_{d-1}`; constraint `i - 1` encodes `(xQ)_i >= 0`.
    pub program: LinearProgram,
}

pub fn build_lp(params: SchemeParams) -> Result<DelsarteInstance> {
    Ok(build_lp_for(&eigenmatrix(params)?))
}

pub fn build_lp_for(em: &Eigenmatrix) -> DelsarteInstance {
    let d = em.d();
    let q = dual_eigenmatrix(em);
    let vars = d.saturating_sub(1);
    let mut program = LinearProgram::new(vec![Rational::one(); vars], Rational::one());
    for i in 1..=d {
        // Q[0][i] + sum_j x_j Q[j][i] >= 0
        let coeffs = (1..=vars).map(|j| q[j][i].clone()).collect();
        program.ge(coeffs, -&q[0][i]);
    }
    DelsarteInstance { params: em.params, program }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpComparison {
    pub params: SchemeParams,
    pub certificate: LpCertificate,
    pub lp_optimum: Rational,
    pub ratio_bound: Rational,
    pub equal: bool,
    /// Optimal inner distribution `x_0..x_d`.
    pub distribution: Vec<Rational>,
}

/// Solve the Delsarte LP and compare with the weighted ratio bound.
pub fn lp_vs_ratio(params: SchemeParams) -> Result<LpComparison> {
    let params = params.require_odd_rank()?;
    let em = eigenmatrix(params)?;
    let report = hoffman::bound_report_for(&em)?;
    let inst = build_lp_for(&em);
    let certificate = solve_exact(&inst.program)?;
    let Some(lp_optimum) = certificate.optimum.clone() else {
        return Err(property!("{params}: Delsarte LP reported {}", certificate.status));
    };
    if lp_optimum < rat_int(&params.point_pencil_size()) {
        return Err(property!("{params}: LP optimum {lp_optimum} is below the point-pencil size"));
    }
    let mut distribution = vec![Rational::one()];
    distribution.extend(certificate.primal.iter().cloned());
    distribution.push(Rational::zero());
    Ok(LpComparison {
        params,
        equal: lp_optimum == report.ratio_bound,
        ratio_bound: report.ratio_bound,
        lp_optimum,
        distribution,
        certificate,
    })
}
