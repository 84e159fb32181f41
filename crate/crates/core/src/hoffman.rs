//! Weighted ratio bound for `A = A_d - f A_{d-2}`.
//!
//! Independent sets of the oppositeness graph (relation `d`) are exactly
//! the EKR sets. Any regular weight matrix supported on the scheme's
//! relations, non-positive off relation `d`, gives
//! `|S| <= -lambda N / (K - lambda)`. The weight `f` on relation `d - 2`
//! is chosen so that eigenspaces `V_1` and `V_d` share the least eigenvalue.

use num_traits::{One, Signed, Zero};

use crate::error::{domain, property, Result};
use crate::exactnum::{floor, rat, rat_int, EvalError, Integer, Rational};
use crate::exec::Execution;
use crate::scheme::{check_eigenmatrix, eigenmatrix, Eigenmatrix, SchemeParams};

/// The closed forms, as functions of a rational `q` for fixed `d`.
///
/// Keeping `q` rational lets identities between these expressions be
/// certified at many points, not only at prime powers.
pub mod forms {
    use num_traits::One;

    use crate::exactnum::{div, gaussian_binomial_rational, rpow, EvalError, Rational};

    type R = std::result::Result<Rational, EvalError>;

    fn p(q: &Rational, e: i64) -> R {
        rpow(q, e)
    }

    fn one() -> Rational {
        Rational::one()
    }

    /// `[n choose k]` in base `q^2`.
    pub fn gauss(q: &Rational, n: u32, k: u32) -> R {
        gaussian_binomial_rational(n, k, &(q * q))
    }

    /// Numerator of `f`: `(q^(d-1) - 1) q^(4(d-2))`.
    pub fn f_numerator(d: u32, q: &Rational) -> R {
        let d = d as i64;
        Ok((p(q, d - 1)? - one()) * p(q, 4 * (d - 2))?)
    }

    /// Denominator of `f`: `[d-1,1] q^(2d-5) - [d-1,2] + [d,2] q^(d-3)`.
    pub fn f_denominator(d: u32, q: &Rational) -> R {
        let di = d as i64;
        Ok(gauss(q, d - 1, 1)? * p(q, 2 * di - 5)? - gauss(q, d - 1, 2)? + gauss(q, d, 2)? * p(q, di - 3)?)
    }

    pub fn f_definition(d: u32, q: &Rational) -> R {
        div(&f_numerator(d, q)?, &f_denominator(d, q)?, "f denominator")
    }

    /// Shared cubic-ish factor `q^(2d-1) - q^(d-2) - q^(d-3) + 1`.
    fn h(d: i64, q: &Rational) -> R {
        Ok(p(q, 2 * d - 1)? - p(q, d - 2)? - p(q, d - 3)? + one())
    }

    /// `(q^(2d)-1)(q^(d-1)-1) q^(4(d-2)) / ([d,2] (q^(d-2)+1) h)`.
    pub fn f_expanded(d: u32, q: &Rational) -> R {
        let di = d as i64;
        let num = (p(q, 2 * di)? - one()) * (p(q, di - 1)? - one()) * p(q, 4 * (di - 2))?;
        let den = gauss(q, d, 2)? * (p(q, di - 2)? + one()) * h(di, q)?;
        div(&num, &den, "expanded f denominator")
    }

    /// `(q^2-1)(q^4-1)(q^(d-1)-1) q^(4(d-2)) / ((q^(2d-2)-1)(q^(d-2)+1) h)`.
    pub fn f_factored(d: u32, q: &Rational) -> R {
        let di = d as i64;
        let num = (p(q, 2)? - one()) * (p(q, 4)? - one()) * (p(q, di - 1)? - one()) * p(q, 4 * (di - 2))?;
        let den = (p(q, 2 * di - 2)? - one()) * (p(q, di - 2)? + one()) * h(di, q)?;
        div(&num, &den, "factored f denominator")
    }

    /// `g = (q^4-1) q^(2d-5) - (q^(2d-4)-1) + (q^(2d)-1) q^(d-3)`.
    pub fn g(d: u32, q: &Rational) -> R {
        let d = d as i64;
        Ok((p(q, 4)? - one()) * p(q, 2 * d - 5)? - (p(q, 2 * d - 4)? - one()) + (p(q, 2 * d)? - one()) * p(q, d - 3)?)
    }

    /// `K = q^(d^2) - f [d,2] q^((d-2)^2)`.
    pub fn row_sum(d: u32, q: &Rational, f: &Rational) -> R {
        let di = d as i64;
        Ok(p(q, di * di)? - f * gauss(q, d, 2)? * p(q, (di - 2) * (di - 2))?)
    }

    /// `lambda = -q^(d(d-1)) + f [d,2] q^((d-2)(d-3))`.
    pub fn lambda_from_f(d: u32, q: &Rational, f: &Rational) -> R {
        let di = d as i64;
        Ok(-p(q, di * (di - 1))? + f * gauss(q, d, 2)? * p(q, (di - 2) * (di - 3))?)
    }

    /// `lambda = -(q+1)(q^(2d) - q^(2d-3) + q - 1) q^(d^2-d-2) / ((q^(d-2)+1) h)`.
    pub fn lambda_closed(d: u32, q: &Rational) -> R {
        let di = d as i64;
        let num = (q + one()) * (p(q, 2 * di)? - p(q, 2 * di - 3)? + q - one()) * p(q, di * di - di - 2)?;
        let den = (p(q, di - 2)? + one()) * h(di, q)?;
        Ok(-div(&num, &den, "lambda denominator")?)
    }

    /// `prod_{i=1..d} (q^(2i-1) + 1)`.
    pub fn generator_count(d: u32, q: &Rational) -> R {
        (1..=d as i64).try_fold(one(), |acc, i| Ok(acc * (p(q, 2 * i - 1)? + one())))
    }

    /// `((q^2+q+1) q^(2d-3) + 1) * prod_{1<=i<=d-1, 2i != d+-1} (q^(2i-1) + 1)`.
    pub fn closed_form_bound(d: u32, q: &Rational) -> R {
        let di = d as i64;
        let lead = (q * q + q + one()) * p(q, 2 * di - 3)? + one();
        (1..di)
            .filter(|i| 2 * i != di - 1 && 2 * i != di + 1)
            .try_fold(lead, |acc, i| Ok(acc * (p(q, 2 * i - 1)? + one())))
    }
}

/// Eigenvalues of `A = A_d - f A_{d-2}` on `V_0..V_d`: `P[i][d] - f P[i][d-2]`.
pub fn pseudo_spectrum(em: &Eigenmatrix, f: &Rational) -> Vec<Rational> {
    let d = em.d();
    em.p.iter().map(|row| rat_int(&row[d]) - f * rat_int(&row[d - 2])).collect()
}

/// Row sum `K = q^(d^2) - f [d,2] q^((d-2)^2)` of `A_d - f A_{d-2}`.
pub fn row_sum_k(params: SchemeParams, f: &Rational) -> Rational {
    forms::row_sum(params.d, &q_rat(params), f).expect("integer q >= 2 never hits a zero denominator")
}

fn q_rat(params: SchemeParams) -> Rational {
    rat(params.q as i64, 1)
}

fn eval(r: std::result::Result<Rational, EvalError>) -> Result<Rational> {
    r.map_err(|e| property!("{e}"))
}

/// The eigenvalue-balancing weight `f`, checked three ways.
///
/// The displayed definition, the expanded and fully factored forms, and the
/// solution of `P[d][d] - f P[d][d-2] = P[1][d] - f P[1][d-2]` must all
/// coincide, and `0 < f < q^2 - 1`.
pub fn optimal_f(params: SchemeParams) -> Result<Rational> {
    let params = params.require_odd_rank()?;
    optimal_f_for(&eigenmatrix(params)?)
}

pub fn optimal_f_for(em: &Eigenmatrix) -> Result<Rational> {
    let params = em.params.require_odd_rank()?;
    let (d, q) = (params.d, q_rat(params));
    let f = eval(forms::f_definition(d, &q))?;
    if eval(forms::f_expanded(d, &q))? != f {
        return Err(property!("{params}: expanded form of f disagrees with its definition"));
    }
    if eval(forms::f_factored(d, &q))? != f {
        return Err(property!("{params}: factored form of f disagrees with its definition"));
    }
    let dd = d as usize;
    let num = rat_int(&(&em.p[dd][dd] - &em.p[1][dd]));
    let den = rat_int(&(&em.p[dd][dd - 2] - &em.p[1][dd - 2]));
    if den.is_zero() || num / den != f {
        return Err(property!("{params}: f does not balance the eigenvalues on V_1 and V_d"));
    }
    let cap = rat_int(&(params.base() - 1u32));
    if !(f.is_positive() && f < cap) {
        return Err(property!("{params}: f = {f} outside (0, q^2 - 1)"));
    }
    Ok(f)
}

/// Least eigenvalue of `A` at the optimal `f`.
///
/// Checks both closed forms, that the minimum of the spectrum is attained
/// exactly at `V_1` and `V_d`, and for `d >= 5` that `lambda < -q^(d^2-2d+2)`.
pub fn lambda_min(params: SchemeParams) -> Result<Rational> {
    let em = eigenmatrix(params.require_odd_rank()?)?;
    let f = optimal_f_for(&em)?;
    lambda_min_for(&em, &f)
}

pub fn lambda_min_for(em: &Eigenmatrix, f: &Rational) -> Result<Rational> {
    let params = em.params;
    let (d, q) = (params.d, q_rat(params));
    let lambda = eval(forms::lambda_from_f(d, &q, f))?;
    if eval(forms::lambda_closed(d, &q))? != lambda {
        return Err(property!("{params}: the two expressions for lambda disagree"));
    }
    let spectrum = pseudo_spectrum(em, f);
    let min = spectrum.iter().min().cloned().unwrap_or_default();
    if min != lambda {
        return Err(property!("{params}: spectrum minimum {min} differs from lambda {lambda}"));
    }
    let attained: Vec<usize> = (0..spectrum.len()).filter(|&i| spectrum[i] == lambda).collect();
    if attained != [1, d as usize] {
        return Err(property!("{params}: lambda attained at {attained:?}, expected [1, {d}]"));
    }
    if d >= 5 {
        let cap = -rat_int(&params.qp(d * d - 2 * d + 2));
        if lambda >= cap {
            return Err(property!("{params}: lambda = {lambda} is not below -q^(d^2-2d+2)"));
        }
    }
    Ok(lambda)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignEntry {
    pub index: usize,
    pub p_d: Integer,
    pub p_d2: Integer,
    pub eigenvalue: Rational,
}

/// Per-eigenspace sign checks behind the choice of `lambda`.
///
/// * `i = 0`: eigenvalue is `K > 0`.
/// * even `i` in `[2, d-1]`: `P[i][d] > 0`, `P[i][d-2] < 0`, eigenvalue `> 0`.
/// * odd `i` in `[3, d-2]`: eigenvalue `> lambda`, and `>= -q^(d^2-2d+2)`.
pub fn sign_analysis(params: SchemeParams) -> Result<Vec<SignEntry>> {
    let em = eigenmatrix(params.require_odd_rank()?)?;
    let f = optimal_f_for(&em)?;
    sign_analysis_for(&em, &f)
}

pub fn sign_analysis_for(em: &Eigenmatrix, f: &Rational) -> Result<Vec<SignEntry>> {
    let params = em.params;
    let d = em.d();
    let lambda = lambda_min_for(em, f)?;
    let spectrum = pseudo_spectrum(em, f);
    let floor_odd = -rat_int(&params.qp(params.d * params.d - 2 * params.d + 2));
    let mut out = Vec::with_capacity(d + 1);
    for (i, eigenvalue) in spectrum.into_iter().enumerate() {
        let entry = SignEntry { index: i, p_d: em.p[i][d].clone(), p_d2: em.p[i][d - 2].clone(), eigenvalue };
        if i == 0 && !entry.eigenvalue.is_positive() {
            return Err(property!("{params}: K = {} is not positive", entry.eigenvalue));
        }
        if i >= 2 && i < d && i % 2 == 0 {
            if !entry.p_d.is_positive() {
                return Err(property!("{params}: i = {i}: P[i][d] = {} is not positive", entry.p_d));
            }
            if !entry.p_d2.is_negative() {
                return Err(property!("{params}: i = {i}: P[i][d-2] = {} is not negative", entry.p_d2));
            }
            if !entry.eigenvalue.is_positive() {
                return Err(property!("{params}: i = {i}: eigenvalue {} is not positive", entry.eigenvalue));
            }
        }
        if i >= 3 && i + 2 <= d && i % 2 == 1 {
            if entry.eigenvalue <= lambda {
                return Err(property!("{params}: i = {i}: eigenvalue {} does not exceed lambda", entry.eigenvalue));
            }
            if entry.eigenvalue < floor_odd {
                return Err(property!("{params}: i = {i}: eigenvalue {} below -q^(d^2-2d+2)", entry.eigenvalue));
            }
        }
        out.push(entry);
    }
    Ok(out)
}

/// Evaluate `((q^2+q+1) q^(2d-3) + 1) prod (q^(2i-1) + 1)` over `1 <= i <= d-1`, `2i != d +- 1`.
pub fn closed_form_bound(params: SchemeParams) -> Result<Integer> {
    let params = params.require_odd_rank()?;
    let d = params.d;
    let lead = (params.base() + params.q_int() + 1u32) * params.qp(2 * d - 3) + 1u32;
    Ok((1..d).filter(|&i| 2 * i != d - 1 && 2 * i != d + 1).fold(lead, |acc, i| acc * (params.qp(2 * i - 1) + 1u32)))
}

/// `-lambda N / (K - lambda)` at the optimal `f`; must equal [`closed_form_bound`].
pub fn ratio_bound(params: SchemeParams) -> Result<Rational> {
    let report = bound_report(params)?;
    if !report.bounds_match {
        return Err(property!(
            "{params}: ratio bound {} differs from closed form {}",
            report.ratio_bound,
            report.closed_form_bound
        ));
    }
    Ok(report.ratio_bound)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub params: SchemeParams,
    pub f: Rational,
    /// Unreduced numerator of `f` as defined.
    pub f_numerator: Integer,
    /// Unreduced denominator of `f` as defined.
    pub f_denominator: Integer,
    pub k: Rational,
    pub lambda: Rational,
    pub spectrum: Vec<Rational>,
    pub ratio_bound: Rational,
    pub closed_form_bound: Integer,
    pub bounds_match: bool,
    pub point_pencil: Integer,
    pub in_main_range: bool,
}

pub fn bound_report(params: SchemeParams) -> Result<BoundReport> {
    let params = params.require_odd_rank()?;
    let em = eigenmatrix(params)?;
    bound_report_for(&em)
}

pub fn bound_report_for(em: &Eigenmatrix) -> Result<BoundReport> {
    let params = em.params.require_odd_rank()?;
    let q = q_rat(params);
    let f = optimal_f_for(em)?;
    let lambda = lambda_min_for(em, &f)?;
    let spectrum = pseudo_spectrum(em, &f);
    let k = row_sum_k(params, &f);
    if spectrum[0] != k {
        return Err(property!("{params}: spectrum on V_0 is {} but K = {k}", spectrum[0]));
    }
    if !k.is_positive() {
        return Err(property!("{params}: K = {k} is not positive"));
    }
    let n = rat_int(&em.n);
    let ratio_bound = -&lambda * n / (&k - &lambda);
    let closed_form_bound = closed_form_bound(params)?;
    let f_numerator = eval(forms::f_numerator(params.d, &q))?.to_integer();
    let f_denominator = eval(forms::f_denominator(params.d, &q))?.to_integer();
    Ok(BoundReport {
        params,
        bounds_match: ratio_bound == rat_int(&closed_form_bound),
        f,
        f_numerator,
        f_denominator,
        k,
        lambda,
        spectrum,
        ratio_bound,
        closed_form_bound,
        point_pencil: params.point_pencil_size(),
        in_main_range: params.in_main_range(),
    })
}

/// Reports for many parameter sets; output order follows input order.
pub fn bound_reports(grid: &[SchemeParams], exec: Execution) -> Vec<Result<BoundReport>> {
    exec.map(grid, |&p| bound_report(p))
}

/// One named equality in the derivation of the closed-form bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLink {
    pub name: &'static str,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl ChainLink {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Every equality used to reduce `-lambda N / (K - lambda)` to the closed form,
/// evaluated exactly at `(d, q)`. `q` may be any rational where the
/// expressions are defined.
pub fn identity_chain(d: u32, q: &Rational) -> std::result::Result<Vec<ChainLink>, EvalError> {
    use crate::exactnum::{div, rpow};
    let one = Rational::one();
    let di = d as i64;
    let p = |e: i64| rpow(q, e);
    let gd2 = forms::gauss(q, d, 2)?;
    let f1 = forms::f_numerator(d, q)?;
    let f2 = forms::f_denominator(d, q)?;
    let f = div(&f1, &f2, "f denominator")?;
    let g = forms::g(d, q)?;
    let k = forms::row_sum(d, q, &f)?;
    let lambda = forms::lambda_from_f(d, q, &f)?;
    let n = forms::generator_count(d, q)?;

    let qd1 = p(di - 1)? - &one; // q^(d-1) - 1
    let q2d1 = p(2 * di)? - &one; // q^(2d) - 1
    let qd_m = p(di)? - &one; // q^d - 1
    let qd_p = p(di)? + &one; // q^d + 1
    let qd2_p = p(di - 2)? + &one; // q^(d-2) + 1
    let q2 = p(2)?;
    let odd_top = p(2 * di - 1)? + &one; // q^(2d-1) + 1

    let x = div(&-&lambda, &(&k - &lambda), "K - lambda")?;
    let x_scaled = &x * &qd_p;
    let mut links = Vec::new();
    let mut push = |name, lhs, rhs| links.push(ChainLink { name, lhs, rhs });

    push("f: definition = expanded form", f.clone(), forms::f_expanded(d, q)?);
    push("f: expanded form = factored form", forms::f_expanded(d, q)?, forms::f_factored(d, q)?);
    push("lambda: value from f = closed form", lambda.clone(), forms::lambda_closed(d, q)?);
    push("f_2 (q^(2d)-1) = [d,2] g", &f2 * &q2d1, &gd2 * &g);

    let lam_k = |a: Rational, b: Rational| div(&a, &b, "chain denominator");
    push(
        "-lambda/(K-lambda) in terms of f_1, f_2",
        x.clone(),
        lam_k(
            p(di * (di - 1))? * &f2 - &f1 * &gd2 * p((di - 2) * (di - 3))?,
            (p(di * di)? + p(di * (di - 1))?) * &f2 - &f1 * &gd2 * (p((di - 2) * (di - 2))? + p((di - 2) * (di - 3))?),
        )?,
    );
    push(
        "-lambda/(K-lambda) after cancelling q^(d^2-d-2)",
        x.clone(),
        lam_k(&q2 * &f2 - &qd1 * &gd2, &q2 * &qd_p * &f2 - &qd1 * &gd2 * &qd2_p)?,
    );
    push(
        "-lambda/(K-lambda) in terms of g",
        x.clone(),
        lam_k(&q2 * &g - &qd1 * &q2d1, &q2 * &qd_p * &g - &qd1 * &q2d1 * &qd2_p)?,
    );
    let reduced_den = &q2 * &g - &qd1 * &qd_m * &qd2_p;
    push(
        "-lambda(q^d+1)/(K-lambda) after dividing by q^d+1",
        x_scaled.clone(),
        lam_k(&q2 * &g - &qd1 * &q2d1, reduced_den.clone())?,
    );
    let gap = &qd1 * &qd_m * p(di - 2)? * (&one - &q2);
    push(
        "-lambda(q^d+1)/(K-lambda) = 1 + gap / denominator",
        x_scaled.clone(),
        &one + lam_k(gap.clone(), reduced_den.clone())?,
    );
    push("denominator = (q^2-1)(q^(2d-1)+1)(q^(d-2)+1)", reduced_den, (&q2 - &one) * &odd_top * &qd2_p);
    push(
        "-lambda(q^d+1)/(K-lambda) = 1 - ... / ((q^(2d-1)+1)(q^(d-2)+1))",
        x_scaled.clone(),
        &one - lam_k(&qd1 * &qd_m * p(di - 2)?, &odd_top * &qd2_p)?,
    );
    push(
        "-lambda(q^d+1)/(K-lambda) = ((q^2+q+1) q^(2d-3) + 1) / ((q^(2d-1)+1)(q^(d-2)+1))",
        x_scaled,
        lam_k((q * q + q + &one) * p(2 * di - 3)? + &one, &odd_top * &qd2_p)?,
    );
    push("-lambda N/(K-lambda) = closed-form bound", &x * &n, forms::closed_form_bound(d, q)?);
    Ok(links)
}

/// Evaluate [`identity_chain`] at integer `q` and fail on the first broken link.
pub fn verify_identity_chain(params: SchemeParams) -> Result<usize> {
    let params = params.require_odd_rank()?;
    let links = eval_links(identity_chain(params.d, &q_rat(params)))?;
    if let Some(bad) = links.iter().find(|l| !l.holds()) {
        return Err(property!("{params}: link \"{}\" fails: {} != {}", bad.name, bad.lhs, bad.rhs));
    }
    Ok(links.len())
}

fn eval_links(r: std::result::Result<Vec<ChainLink>, EvalError>) -> Result<Vec<ChainLink>> {
    r.map_err(|e| property!("{e}"))
}

/// Coefficients `c_1..c_d` of a weight matrix `sum_j c_j A_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    /// `coeffs[j-1]` is the weight of relation `j`. Every relation other
    /// than `d` (the oppositeness relation) must carry a non-positive weight.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        let d = coeffs.len();
        if d == 0 {
            return Err(domain!("weight vector is empty"));
        }
        for (j, c) in coeffs.iter().enumerate().take(d - 1) {
            if c.is_positive() {
                return Err(domain!(
                    "relation {} is not an edge of the oppositeness graph; its weight {c} must be <= 0",
                    j + 1
                ));
            }
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(domain!("weight vector is identically zero"));
        }
        Ok(Self(coeffs))
    }

    /// `A_d - f A_{d-2}`.
    pub fn balanced(d: usize, f: &Rational) -> Result<Self> {
        if d < 3 {
            return Err(domain!("balanced weights need d >= 3"));
        }
        let mut c = vec![Rational::zero(); d];
        c[d - 1] = Rational::one();
        c[d - 3] = -f;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBound {
    pub params: SchemeParams,
    pub weights: WeightVector,
    pub spectrum: Vec<Rational>,
    pub k: Rational,
    pub lambda: Rational,
    pub bound: Rational,
    pub floor: Integer,
}

/// Ratio bound for an arbitrary admissible weight vector.
pub fn generic_ratio_bound(em: &Eigenmatrix, w: &WeightVector) -> Result<WeightedBound> {
    let d = em.d();
    if w.coeffs().len() != d {
        return Err(domain!("expected {d} weights, got {}", w.coeffs().len()));
    }
    let mut full = Vec::with_capacity(d + 1);
    full.push(Rational::zero());
    full.extend_from_slice(w.coeffs());
    let spectrum = em.combine(&full);
    let k = spectrum[0].clone();
    let lambda = spectrum.iter().min().cloned().unwrap_or_default();
    if !lambda.is_negative() {
        return Err(domain!("least eigenvalue {lambda} is not negative; no bound follows"));
    }
    if k <= lambda {
        return Err(domain!("row sum {k} does not exceed the least eigenvalue {lambda}"));
    }
    let bound = -&lambda * rat_int(&em.n) / (&k - &lambda);
    Ok(WeightedBound { params: em.params, weights: w.clone(), floor: floor(&bound), spectrum, k, lambda, bound })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub params: SchemeParams,
    pub samples: Vec<(Rational, Rational)>,
    pub optimal_f: Rational,
    pub optimal_min: Rational,
    /// Best sampled `(f, least eigenvalue)`.
    pub best_sample: (Rational, Rational),
}

/// Least eigenvalue of `A_d - f A_{d-2}` on a uniform grid of `f` in `[0, q^2 - 1]`.
///
/// Fails if any grid point beats the optimal `f`.
pub fn f_sweep(params: SchemeParams, grid_size: usize, exec: Execution) -> Result<SweepReport> {
    let params = params.require_odd_rank()?;
    if grid_size < 2 {
        return Err(domain!("grid size must be at least 2 (got {grid_size})"));
    }
    let em = eigenmatrix(params)?;
    let f_opt = optimal_f_for(&em)?;
    let optimal_min = least(&pseudo_spectrum(&em, &f_opt));
    let top = rat_int(&(params.base() - 1u32));
    let steps = (grid_size - 1) as i64;
    let samples = exec.map_range(grid_size, |s| {
        let f = &top * rat(s as i64, steps);
        let m = least(&pseudo_spectrum(&em, &f));
        (f, m)
    });
    let best_sample = samples.iter().max_by(|a, b| a.1.cmp(&b.1)).cloned().expect("grid is non-empty");
    if best_sample.1 > optimal_min {
        return Err(property!(
            "{params}: f = {} gives least eigenvalue {} above the optimum {optimal_min}",
            best_sample.0,
            best_sample.1
        ));
    }
    Ok(SweepReport { params, samples, optimal_f: f_opt, optimal_min, best_sample })
}

/// Outcome of [`identity_suite`]: the names of the checks that passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub params: SchemeParams,
    pub chain_links: usize,
    pub checks: Vec<&'static str>,
}

/// Every exact check available at one parameter point, stopping at the first failure.
pub fn identity_suite(params: SchemeParams) -> Result<SuiteReport> {
    let params = params.require_odd_rank()?;
    let em = eigenmatrix(params)?;
    let mut checks = vec!["eigenmatrix-columns"];
    check_eigenmatrix(&em)?;
    checks.push("eigenmatrix-orthogonality");
    let f = optimal_f_for(&em)?;
    checks.push("f-forms");
    lambda_min_for(&em, &f)?;
    checks.push("lambda-forms");
    sign_analysis_for(&em, &f)?;
    checks.push("sign-pattern");
    let chain_links = verify_identity_chain(params)?;
    checks.push("identity-chain");
    let report = bound_report_for(&em)?;
    if !report.bounds_match {
        return Err(property!(
            "{params}: ratio bound {} differs from closed form {}",
            report.ratio_bound,
            report.closed_form_bound
        ));
    }
    checks.push("ratio-equals-closed-form");
    if report.point_pencil > report.closed_form_bound {
        return Err(property!("{params}: point pencil exceeds the bound"));
    }
    checks.push("pencil-below-bound");
    let plain = generic_ratio_bound(&em, &WeightVector::balanced(em.d(), &Rational::zero())?)?;
    if report.ratio_bound > plain.bound {
        return Err(property!(
            "{params}: weighted bound {} exceeds the unweighted {}",
            report.ratio_bound,
            plain.bound
        ));
    }
    checks.push("weighting-improves");
    Ok(SuiteReport { params, chain_links, checks })
}

fn least(v: &[Rational]) -> Rational {
    v.iter().min().cloned().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, integer_points, ipow, verify_polynomial_identity};

    fn params(d: u32, q: u32) -> SchemeParams {
        SchemeParams::new(d, q).unwrap()
    }

    #[test]
    fn optimal_f_examples() {
        assert_eq!(optimal_f(params(3, 2)).unwrap(), rat(8, 5));
        assert_eq!(optimal_f(params(5, 2)).unwrap(), rat(20480, 8517));
        assert!(matches!(optimal_f(params(4, 2)), Err(crate::Error::Domain(_))));
        assert!(matches!(optimal_f(params(1, 2)), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn printed_forms_of_f_agree_as_rational_functions() {
        for d in [3, 5, 7] {
            let pts = integer_points(2, 40);
            assert_eq!(
                verify_polynomial_identity(|q| forms::f_definition(d, q), |q| forms::f_expanded(d, q), &pts),
                Ok(true)
            );
            assert_eq!(
                verify_polynomial_identity(|q| forms::f_expanded(d, q), |q| forms::f_factored(d, q), &pts),
                Ok(true)
            );
            let frac: Vec<Rational> = (4..30).map(|k| rat(2 * k + 1, 7)).collect();
            assert_eq!(
                verify_polynomial_identity(|q| forms::f_definition(d, q), |q| forms::f_factored(d, q), &frac),
                Ok(true)
            );
        }
    }

    #[test]
    fn spectrum_examples() {
        let em = eigenmatrix(params(3, 2)).unwrap();
        let s = pseudo_spectrum(&em, &rat(8, 5));
        assert_eq!(s[2], rat(64, 5));
        assert_eq!(s[1], rat(-152, 5));
        assert_eq!(s[3], rat(-152, 5));
        let zero = pseudo_spectrum(&em, &rat(0, 1));
        assert_eq!(zero, em.column(3).iter().map(rat_int).collect::<Vec<_>>());
    }

    #[test]
    fn row_sum_examples() {
        assert_eq!(row_sum_k(params(3, 2), &rat(8, 5)), rat(2224, 5));
        assert_eq!(row_sum_k(params(5, 3), &rat(0, 1)), rat_int(&ipow(3, 25)));
        assert!(row_sum_k(params(5, 2), &rat(20480, 8517)).is_positive());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_min(params(3, 2)).unwrap(), rat(-152, 5));
        let l5 = lambda_min(params(5, 2)).unwrap();
        assert_eq!(l5, Rational::new(-int(3 * 897) * ipow(2, 18), int(9 * 501)));
        assert!(l5 < rat_int(&-ipow(2, 17)));
        // The d >= 5 inequality genuinely fails at d = 3.
        assert!(rat(-152, 5) > rat(-32, 1));
    }

    #[test]
    fn sign_examples() {
        let s3 = sign_analysis(params(3, 2)).unwrap();
        assert_eq!((s3[2].p_d.clone(), s3[2].p_d2.clone(), s3[2].eigenvalue.clone()), (int(8), int(-3), rat(64, 5)));
        let s5 = sign_analysis(params(5, 2)).unwrap();
        assert!(s5[3].eigenvalue >= rat_int(&-ipow(2, 17)));
        assert_eq!(s5[0].eigenvalue, row_sum_k(params(5, 2), &rat(20480, 8517)));
    }

    #[test]
    fn bound_examples() {
        assert_eq!(ratio_bound(params(3, 2)).unwrap(), rat(57, 1));
        assert_eq!(ratio_bound(params(5, 2)).unwrap(), rat(347139, 1));
        assert_eq!(closed_form_bound(params(5, 2)).unwrap(), int(897 * 387));
        assert_eq!(closed_form_bound(params(3, 2)).unwrap(), int(57));
        assert_eq!(closed_form_bound(params(5, 3)).unwrap(), int(28432 * 4 * 2188));
        assert!(closed_form_bound(params(6, 3)).is_err());
    }

    #[test]
    fn chain_examples() {
        for (d, q) in [(3, 2), (5, 2), (7, 3)] {
            assert!(verify_identity_chain(params(d, q)).unwrap() >= 10);
        }
    }

    #[test]
    fn chain_holds_at_non_integer_points() {
        for d in [3, 5, 9] {
            for q in [rat(5, 2), rat(7, 3), rat(11, 4)] {
                for link in identity_chain(d, &q).unwrap() {
                    assert!(link.holds(), "d={d} q={q}: {}", link.name);
                }
            }
        }
    }

    #[test]
    fn generic_bound_examples() {
        let em = eigenmatrix(params(3, 2)).unwrap();
        let pure = WeightVector::new(vec![rat(0, 1), rat(0, 1), rat(1, 1)]).unwrap();
        let b = generic_ratio_bound(&em, &pure).unwrap();
        assert_eq!(b.lambda, rat(-64, 1));
        assert_eq!(b.bound, rat(99, 1));
        let balanced = WeightVector::balanced(3, &rat(8, 5)).unwrap();
        assert_eq!(generic_ratio_bound(&em, &balanced).unwrap().bound, rat(57, 1));
        assert!(WeightVector::new(vec![rat(1, 1), rat(0, 1), rat(1, 1)]).is_err());
        assert!(WeightVector::new(vec![rat(0, 1); 3]).is_err());
        let only_negative = WeightVector::new(vec![rat(-1, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert!(generic_ratio_bound(&em, &only_negative).is_err());
    }

    #[test]
    fn weighted_never_worse_than_pure() {
        for (d, q) in [(3, 2), (5, 2), (5, 3), (7, 2)] {
            let em = eigenmatrix(params(d, q)).unwrap();
            let dd = d as usize;
            let mut pure = vec![rat(0, 1); dd];
            pure[dd - 1] = rat(1, 1);
            let pure = generic_ratio_bound(&em, &WeightVector::new(pure).unwrap()).unwrap();
            let f = optimal_f_for(&em).unwrap();
            let weighted = generic_ratio_bound(&em, &WeightVector::balanced(dd, &f).unwrap()).unwrap();
            assert!(weighted.bound <= pure.bound);
            assert_eq!(weighted.bound, ratio_bound(params(d, q)).unwrap());
            assert!(rat_int(&params(d, q).point_pencil_size()) <= weighted.bound);
        }
    }

    #[test]
    fn sweep_examples() {
        let r = f_sweep(params(3, 2), 50, Execution::Sequential).unwrap();
        assert_eq!(r.samples.len(), 50);
        assert!(r.best_sample.1 <= r.optimal_min);
        assert!(f_sweep(params(3, 2), 1, Execution::Sequential).is_err());
        // q^2 - 1 = 3 over 15 steps hits f = 8/5 exactly (k = 8).
        let hit = f_sweep(params(3, 2), 16, Execution::Parallel).unwrap();
        assert_eq!(hit.best_sample, (rat(8, 5), rat(-152, 5)));
    }

    #[test]
    fn identity_suite_runs_every_check() {
        for (d, q) in [(3, 2), (5, 4), (9, 3)] {
            let rep = identity_suite(params(d, q)).unwrap();
            assert_eq!(rep.checks.len(), 9);
            assert_eq!(rep.chain_links, identity_chain(d, &rat(q as i64, 1)).unwrap().len());
        }
        assert!(matches!(identity_suite(params(6, 2)), Err(crate::Error::Domain(_))));
    }
}
