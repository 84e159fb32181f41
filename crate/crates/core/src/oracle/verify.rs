use num_traits::ToPrimitive;

use super::space::PolarSpace;
use crate::error::{domain, property, Result};
use crate::exactnum::{rat, Rational};
use crate::exec::Execution;
use crate::hoffman;
use crate::scheme::{intersection_array, Eigenmatrix};

/// Dense square integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Dense {
    n: usize,
    data: Vec<i64>,
}

impl Dense {
    fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    fn relation(ps: &PolarSpace, j: u8) -> Self {
        let data = ps.codim.iter().map(|&c| i64::from(c == j)).collect();
        Self { n: ps.len(), data }
    }

    /// `self * A + shift * self`, with `A` symmetric 0/1 given by adjacency lists.
    fn times_adjacency_plus(&self, adj: &[Vec<u32>], shift: i64, exec: Execution) -> Self {
        let n = self.n;
        let mut data = vec![0i64; n * n];
        exec.for_each_row(&mut data, n, |r, out| {
            let row = &self.data[r * n..(r + 1) * n];
            for (c, slot) in out.iter_mut().enumerate() {
                let s: i64 = adj[c].iter().map(|&k| row[k as usize]).sum();
                *slot = s + shift * row[c];
            }
        });
        Self { n, data }
    }

    fn first_mismatch(&self, other: &Self) -> Option<(usize, usize, i64, i64)> {
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.n, p % self.n, self.data[p], other.data[p]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixReport {
    /// `prod_i (A_1 - theta_i I) = 0`.
    pub annihilated: bool,
    /// Relations `j` for which `A_j = v_j(A_1)` was checked.
    pub polynomial_relations: usize,
    /// Common row sum of `A_d - f A_{d-2}`, when `d` is odd and at least 3.
    pub row_sum: Option<Rational>,
}

fn adjacency(ps: &PolarSpace) -> Vec<Vec<u32>> {
    let n = ps.len();
    (0..n).map(|r| (0..n).filter(|&s| ps.codim(r, s) == 1).map(|s| s as u32).collect()).collect()
}

/// Check the explicit relation matrices against the eigenmatrix.
///
/// Verifies that the minimal polynomial of `A_1` splits over the `theta_i`,
/// that each `A_j` is the distance polynomial `v_j(A_1)`, and that
/// `A_d - f A_{d-2}` has constant row sum `K` at the optimal `f`.
pub fn verify_scheme_matrices(ps: &PolarSpace, em: &Eigenmatrix, exec: Execution) -> Result<MatrixReport> {
    if ps.params != em.params {
        return Err(domain!("polar space {} and eigenmatrix {} differ", ps.params, em.params));
    }
    let n = ps.len();
    let d = ps.params.d as usize;
    let adj = adjacency(ps);
    let theta: Vec<i64> = em
        .theta
        .iter()
        .map(|t| t.to_i64().ok_or_else(|| domain!("eigenvalue {t} too large for the explicit check")))
        .collect::<Result<_>>()?;
    let k1 = theta[0];
    let fits = (2 * k1.unsigned_abs() as u128).checked_pow(d as u32 + 1).is_some_and(|b| b < 1 << 62);
    if !fits {
        return Err(domain!("entries of the annihilation product may overflow 64 bits"));
    }

    // (a) annihilation
    let mut prod = Dense::identity(n);
    for &t in &theta {
        prod = prod.times_adjacency_plus(&adj, -t, exec);
    }
    let zero = Dense { n, data: vec![0; n * n] };
    if let Some((r, c, v, _)) = prod.first_mismatch(&zero) {
        return Err(property!("prod (A_1 - theta_i I) is nonzero at ({r}, {c}): {v}"));
    }

    // (b) distance polynomials
    let ia = intersection_array(ps.params);
    let small = |x: &num_bigint::BigInt| x.to_i64().expect("intersection numbers fit in i64 at oracle scale");
    let mut prev = Dense::identity(n);
    let mut cur = Dense::relation(ps, 1);
    for j in 1..d {
        let (a, b, c) = (small(&ia.a[j]), small(&ia.b[j - 1]), small(&ia.c[j + 1]));
        let mut next = cur.times_adjacency_plus(&adj, -a, exec);
        for (x, p) in next.data.iter_mut().zip(&prev.data) {
            *x -= b * p;
            if *x % c != 0 {
                return Err(property!("v_{}(A_1) is not integral", j + 1));
            }
            *x /= c;
        }
        let explicit = Dense::relation(ps, (j + 1) as u8);
        if let Some((r, col, got, want)) = next.first_mismatch(&explicit) {
            return Err(property!("A_{} != v_{}(A_1) at ({r}, {col}): {got} vs {want}", j + 1, j + 1));
        }
        prev = std::mem::replace(&mut cur, next);
    }

    // (c) row sums of the weighted matrix
    let row_sum = if d >= 3 && d % 2 == 1 {
        let f = hoffman::optimal_f_for(em)?;
        let k = hoffman::row_sum_k(ps.params, &f);
        for r in 0..n {
            let (mut far, mut near) = (0i64, 0i64);
            for s in 0..n {
                match ps.codim(r, s) as usize {
                    x if x == d => far += 1,
                    x if x == d - 2 => near += 1,
                    _ => {}
                }
            }
            let sum = rat(far, 1) - &f * rat(near, 1);
            if sum != k {
                return Err(property!("row {r} of A_d - f A_(d-2) sums to {sum}, expected K = {k}"));
            }
        }
        Some(k)
    } else {
        None
    };
    Ok(MatrixReport { annihilated: true, polynomial_relations: d.saturating_sub(1), row_sum })
}
