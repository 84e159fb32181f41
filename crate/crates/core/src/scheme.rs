//! The association scheme on generators of `H(2d-1, q^2)`.
//!
//! Two generators are in relation `j` when they meet in a subspace of rank
//! `d - j`. Relation 1 is the dual polar graph, which is distance-regular;
//! its intersection array determines every eigenvalue of every relation
//! through the three-term recurrence, so the full eigenmatrix is built here
//! from the intersection array alone and compared against the closed-form
//! columns for relations `d` and `d - 2`.

use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, property, Result};
use crate::exactnum::{gaussian_binomial, int, ipow, is_integral, rat_int, Integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchemeParams {
    pub d: u32,
    pub q: u32,
}

impl SchemeParams {
    pub fn new(d: u32, q: u32) -> Result<Self> {
        if d < 1 {
            return Err(domain!("d must be at least 1 (got {d})"));
        }
        if q < 2 {
            return Err(domain!("q must be at least 2 (got {q})"));
        }
        Ok(Self { d, q })
    }

    /// Require odd `d >= 3`, the range where the weighted bound is defined.
    pub fn require_odd_rank(self) -> Result<Self> {
        if self.d.is_multiple_of(2) {
            return Err(domain!("d must be odd (got {})", self.d));
        }
        if self.d < 3 {
            return Err(domain!("d must be at least 3 (got {})", self.d));
        }
        Ok(self)
    }

    /// Odd `d >= 5`, the range where the weighted bound is the result of interest; `d = 3` is a cross-check.
    pub fn in_main_range(self) -> bool {
        self.d % 2 == 1 && self.d >= 5
    }

    pub fn q_int(self) -> Integer {
        int(self.q as i64)
    }

    /// `q^e`.
    pub fn qp(self, e: u32) -> Integer {
        ipow(self.q as u64, e)
    }

    /// The Gaussian binomial base, `q^2`.
    pub fn base(self) -> Integer {
        self.qp(2)
    }

    pub fn gauss(self, n: u32, k: u32) -> Integer {
        gaussian_binomial(n, k, &self.base())
    }

    /// `N = prod_{i=1..d} (q^(2i-1) + 1)`.
    pub fn generator_count(self) -> Integer {
        (1..=self.d).map(|i| self.qp(2 * i - 1) + 1u32).product()
    }

    /// Generators through a fixed point: `prod_{i=1..d-1} (q^(2i-1) + 1)`.
    pub fn point_pencil_size(self) -> Integer {
        (1..self.d).map(|i| self.qp(2 * i - 1) + 1u32).product()
    }

    /// Isotropic points: `(q^(2d) - 1)(q^(2d-1) + 1) / (q^2 - 1)`.
    pub fn point_count(self) -> Integer {
        (self.qp(2 * self.d) - 1u32) * (self.qp(2 * self.d - 1) + 1u32) / (self.base() - 1u32)
    }
}

impl std::fmt::Display for SchemeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "H({},{})", 2 * self.d - 1, self.q * self.q)
    }
}

/// Intersection numbers of the dual polar graph.
///
/// Vectors are indexed `0..=d`; `c[0]` and `b[d]` are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionArray {
    pub b: Vec<Integer>,
    pub c: Vec<Integer>,
    pub a: Vec<Integer>,
}

impl IntersectionArray {
    pub fn valency(&self) -> &Integer {
        &self.b[0]
    }

    /// `{b_0, ..., b_{d-1}}` as usually written.
    pub fn b_list(&self) -> &[Integer] {
        &self.b[..self.b.len() - 1]
    }

    /// `{c_1, ..., c_d}` as usually written.
    pub fn c_list(&self) -> &[Integer] {
        &self.c[1..]
    }

    pub fn diameter(&self) -> usize {
        self.b.len() - 1
    }
}

pub fn intersection_array(params: SchemeParams) -> IntersectionArray {
    let d = params.d;
    let qq1 = params.base() - 1u32;
    let mut b = Vec::with_capacity(d as usize + 1);
    let mut c = Vec::with_capacity(d as usize + 1);
    for i in 0..=d {
        c.push((params.qp(2 * i) - 1u32) / &qq1);
        b.push(params.qp(2 * i + 1) * (params.qp(2 * (d - i)) - 1u32) / &qq1);
    }
    let k = b[0].clone();
    let a = (0..=d as usize).map(|i| &k - &b[i] - &c[i]).collect();
    IntersectionArray { b, c, a }
}

/// `k_j = [d choose j]_{q^2} * q^(j^2)`.
pub fn valencies(params: SchemeParams) -> Vec<Integer> {
    (0..=params.d).map(|j| params.gauss(params.d, j) * params.qp(j * j)).collect()
}

/// Exact eigenvalue data of the scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigenmatrix {
    pub params: SchemeParams,
    /// `p[i][j]`: eigenvalue of relation `j` on eigenspace `i`.
    pub p: Vec<Vec<Integer>>,
    /// Eigenvalues of relation 1, strictly decreasing.
    pub theta: Vec<Integer>,
    pub k: Vec<Integer>,
    pub m: Vec<Rational>,
    pub n: Integer,
    /// Row permutation applied to match the closed-form column `d`;
    /// `None` when the decreasing-`theta` order already matched.
    pub reordered: Option<Vec<usize>>,
}

impl Eigenmatrix {
    pub fn d(&self) -> usize {
        self.params.d as usize
    }

    pub fn column(&self, j: usize) -> Vec<Integer> {
        self.p.iter().map(|row| row[j].clone()).collect()
    }

    /// Evaluate `sum_j w[j] * P[i][j]` for every eigenspace `i`.
    pub fn combine(&self, weights: &[Rational]) -> Vec<Rational> {
        self.p.iter().map(|row| row.iter().zip(weights).map(|(p, w)| w * rat_int(p)).sum()).collect()
    }
}

/// `det(xI - L)` leading minors of the tridiagonal intersection matrix at `x = X/2`,
/// scaled by `2^j` so the recurrence stays integral.
fn scaled_minors(ia: &IntersectionArray, x2: &Integer) -> Vec<Integer> {
    let n = ia.diameter() + 1;
    let mut out = Vec::with_capacity(n + 1);
    out.push(Integer::one());
    out.push(x2 - &ia.a[0] * 2u32);
    for j in 1..n {
        let next = (x2 - &ia.a[j] * 2u32) * &out[j] - &ia.b[j - 1] * &ia.c[j] * 4u32 * &out[j - 1];
        out.push(next);
    }
    out
}

/// Number of eigenvalues of the intersection matrix strictly greater than `m + 1/2`.
fn count_above_half(ia: &IntersectionArray, m: &Integer) -> usize {
    let x2 = m * 2u32 + 1u32;
    let minors = scaled_minors(ia, &x2);
    let mut changes = 0;
    let mut last = 0i8;
    for v in &minors {
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn char_poly_at(ia: &IntersectionArray, x: &Integer) -> Integer {
    let n = ia.diameter() + 1;
    let mut prev = Integer::one();
    let mut cur = x - &ia.a[0];
    for j in 1..n {
        let next = (x - &ia.a[j]) * &cur - &ia.b[j - 1] * &ia.c[j] * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Integer eigenvalues of the intersection matrix, strictly decreasing.
///
/// Sturm-sequence counting at half-integers isolates each eigenvalue in a
/// unit interval around an integer; that integer is then checked to be an
/// exact root. Fails if any eigenvalue is not an integer or is repeated.
pub fn integer_eigenvalues(ia: &IntersectionArray) -> Result<Vec<Integer>> {
    let n = ia.diameter() + 1;
    let bound = ia.valency().clone();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // smallest m with count_above_half(m) <= i
        let mut lo = -&bound - 1u32; // count = n > i
        let mut hi = bound.clone(); // count = 0 <= i
        while &hi - &lo > Integer::one() {
            let mid: Integer = (&lo + &hi) >> 1u32;
            if count_above_half(ia, &mid) <= i {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let m = hi;
        let simple = count_above_half(ia, &(&m - 1u32)) == count_above_half(ia, &m) + 1;
        if !simple || !char_poly_at(ia, &m).is_zero() {
            return Err(property!("eigenvalue #{i} of the intersection matrix is not a simple integer (near {m})"));
        }
        out.push(m);
    }
    Ok(out)
}

/// Values `v_0(x), ..., v_d(x)` of the distance polynomials.
pub fn distance_polynomials_at(ia: &IntersectionArray, x: &Rational) -> Vec<Rational> {
    let d = ia.diameter();
    let mut v = Vec::with_capacity(d + 1);
    v.push(Rational::one());
    if d == 0 {
        return v;
    }
    v.push(x.clone());
    for j in 1..d {
        let next = ((x - rat_int(&ia.a[j])) * &v[j] - rat_int(&ia.b[j - 1]) * &v[j - 1]) / rat_int(&ia.c[j + 1]);
        v.push(next);
    }
    v
}

pub fn eigenmatrix(params: SchemeParams) -> Result<Eigenmatrix> {
    let ia = intersection_array(params);
    let theta = integer_eigenvalues(&ia)?;
    let k = valencies(params);
    let n = params.generator_count();
    let d = params.d as usize;

    let mut p = Vec::with_capacity(d + 1);
    for (i, t) in theta.iter().enumerate() {
        let row = distance_polynomials_at(&ia, &rat_int(t));
        let mut ints = Vec::with_capacity(d + 1);
        for (j, v) in row.into_iter().enumerate() {
            if !is_integral(&v) {
                return Err(property!("P[{i}][{j}] = {v} is not an integer"));
            }
            ints.push(v.to_integer());
        }
        p.push(ints);
    }
    if p[0] != k {
        return Err(property!("row 0 of P does not equal the valencies"));
    }
    let total: Integer = k.iter().sum();
    if total != n {
        return Err(property!("valencies sum to {total}, expected N = {n}"));
    }

    let mut m = Vec::with_capacity(d + 1);
    for (i, row) in p.iter().enumerate() {
        let norm: Rational = row.iter().zip(&k).map(|(pij, kj)| Rational::new(pij * pij, kj.clone())).sum();
        if !norm.is_positive() {
            return Err(property!("row {i} of P has non-positive norm"));
        }
        let mi = rat_int(&n) / norm;
        if !mi.is_positive() {
            return Err(property!("multiplicity m[{i}] = {mi} is not positive"));
        }
        m.push(mi);
    }

    let mut em = Eigenmatrix { params, p, theta, k, m, n, reordered: None };
    align_to_closed_form(&mut em)?;
    Ok(em)
}

/// Permute rows so that column `d` matches the closed form, if needed.
fn align_to_closed_form(em: &mut Eigenmatrix) -> Result<()> {
    let d = em.d();
    let expected = closed_form_column(em.params, em.params.d)?;
    let actual = em.column(d);
    if actual == expected {
        return Ok(());
    }
    let mut perm = Vec::with_capacity(d + 1);
    for want in &expected {
        match actual.iter().position(|v| v == want) {
            Some(r) if !perm.contains(&r) => perm.push(r),
            _ => return Err(property!("column {d} of the synthesized P cannot be matched to the closed form")),
        }
    }
    em.p = perm.iter().map(|&r| em.p[r].clone()).collect();
    em.theta = perm.iter().map(|&r| em.theta[r].clone()).collect();
    em.m = perm.iter().map(|&r| em.m[r].clone()).collect();
    em.reordered = Some(perm);
    Ok(())
}

/// Closed-form eigenvalue columns for relations `d` and `d - 2`.
///
/// * `P[i][d] = (-1)^i q^((d-i)^2 + i(i-1))`
/// * `P[i][d-2] = sum_{u=0..2} (-1)^(i+u) [d-i, 2-u] [i, u] q^((d-2+u-i)^2 + (i-u)(i-u-1))`
pub fn closed_form_column(params: SchemeParams, j: u32) -> Result<Vec<Integer>> {
    let d = params.d as i64;
    let q = params.q_int();
    let pw = |e: i64| -> Integer { Pow::pow(&q, e as u64) };
    let signed = |neg: bool, v: Integer| if neg { -v } else { v };
    if j == params.d {
        return Ok((0..=d).map(|i| signed(i % 2 == 1, pw((d - i) * (d - i) + i * (i - 1)))).collect());
    }
    if params.d >= 2 && j == params.d - 2 {
        let col = (0..=d)
            .map(|i| {
                (0..=2i64)
                    .map(|u| {
                        let g1 = params.gauss((d - i) as u32, (2 - u) as u32);
                        let g2 = if u > i { Integer::zero() } else { params.gauss(i as u32, u as u32) };
                        let e = (d - 2 + u - i).pow(2) + (i - u) * (i - u - 1);
                        signed((i + u) % 2 == 1, g1 * g2 * pw(e))
                    })
                    .sum()
            })
            .collect();
        return Ok(col);
    }
    Err(domain!("closed form exists only for relations d and d-2 (got j = {j}, d = {})", params.d))
}

/// `Q[j][i] = m_i * P[i][j] / k_j`.
pub fn dual_eigenmatrix(em: &Eigenmatrix) -> Vec<Vec<Rational>> {
    let d = em.d();
    (0..=d).map(|j| (0..=d).map(|i| &em.m[i] * rat_int(&em.p[i][j]) / rat_int(&em.k[j])).collect()).collect()
}

/// Check every structural invariant of an eigenmatrix, reporting the first violation.
pub fn check_eigenmatrix(em: &Eigenmatrix) -> Result<()> {
    let d = em.d();
    let n = rat_int(&em.n);
    if em.p.iter().any(|row| !row[0].is_one()) {
        return Err(property!("column 0 of P is not all ones"));
    }
    if em.p[0] != em.k || em.k != valencies(em.params) {
        return Err(property!("row 0 of P is not the valency vector"));
    }
    if !em.m[0].is_one() {
        return Err(property!("m_0 = {} (expected 1)", em.m[0]));
    }
    if em.m.iter().sum::<Rational>() != n {
        return Err(property!("multiplicities do not sum to N"));
    }
    for (i, mi) in em.m.iter().enumerate() {
        if !is_integral(mi) {
            return Err(property!("multiplicity m[{i}] = {mi} is not an integer"));
        }
    }
    for i in 0..=d {
        for i2 in 0..=d {
            let s: Rational = (0..=d).map(|j| Rational::new(&em.p[i][j] * &em.p[i2][j], em.k[j].clone())).sum();
            let want = if i == i2 { &n / &em.m[i] } else { Rational::zero() };
            if s != want {
                return Err(property!("row orthogonality fails for rows {i}, {i2}"));
            }
        }
    }
    let theta_col = em.column(1.min(d));
    if d >= 1 && theta_col != em.theta {
        return Err(property!("column 1 of P differs from theta"));
    }
    if em.reordered.is_none() && em.theta.windows(2).any(|w| w[0] <= w[1]) {
        return Err(property!("theta is not strictly decreasing"));
    }
    Ok(())
}
