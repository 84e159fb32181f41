use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use num_traits::ToPrimitive;

use super::field::{build_field, Elem, Field};
use crate::error::{domain, property, Error, Result};
use crate::exec::Execution;
use crate::scheme::SchemeParams;

/// Size limits for explicit construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_generators: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_generators: 1000 }
    }
}

/// A generator, as its reduced row-echelon basis (`d` rows of length `2d`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub rows: Vec<Vec<Elem>>,
}

impl Generator {
    pub fn key(&self) -> Vec<Elem> {
        self.rows.concat()
    }
}

pub struct PolarSpace {
    pub params: SchemeParams,
    pub field: Field,
    pub generators: Vec<Generator>,
    /// Isotropic points as normalized vectors (first nonzero coordinate 1).
    pub points: Vec<Vec<Elem>>,
    /// Row-major `N x N` table of `d - rank(G_r ∩ G_s)`.
    pub codim: Vec<u8>,
}

impl PolarSpace {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    #[inline]
    pub fn codim(&self, r: usize, s: usize) -> u8 {
        self.codim[r * self.len() + s]
    }
}

/// `h(u, v) = sum_i u_i conj(v_i)`.
pub fn hermitian(field: &Field, u: &[Elem], v: &[Elem]) -> Elem {
    u.iter().zip(v).fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, field.conj(b))))
}

/// Reduce `rows` in place to reduced row-echelon form, dropping zero rows; returns the rank.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Elem>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..width {
                    let t = field.mul(factor, rows[rank][c]);
                    rows[r][c] = field.sub(rows[r][c], t);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rank
}

fn rank_of(field: &Field, rows: &[&[Elem]]) -> usize {
    let mut m: Vec<Vec<Elem>> = rows.iter().map(|r| r.to_vec()).collect();
    rref(field, &mut m)
}

/// Scale so that the first nonzero coordinate is 1; `None` for the zero vector.
pub fn normalize(field: &Field, v: &[Elem]) -> Option<Vec<Elem>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = field.inv(lead);
    Some(v.iter().map(|&x| field.mul(x, inv)).collect())
}

fn all_vectors(order: usize, len: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = order.pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; len];
        for c in v.iter_mut().rev() {
            *c = (idx % order) as Elem;
            idx /= order;
        }
        v
    })
}

pub fn isotropic_points(field: &Field, dim: usize) -> Vec<Vec<Elem>> {
    all_vectors(field.order(), dim)
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .filter(|v| hermitian(field, v, v) == 0)
        .collect()
}

fn check_guard(params: SchemeParams, limits: OracleLimits) -> Result<()> {
    if params.q != 2 && params.q != 3 {
        return Err(domain!("explicit construction supports q in {{2, 3}} (got {})", params.q));
    }
    let n = params.generator_count();
    if n.to_u64().is_none_or(|n| n > limits.max_generators) {
        return Err(Error::ResourceGuard(format!(
            "{params} has {n} generators, above the limit of {}",
            limits.max_generators
        )));
    }
    Ok(())
}

/// Enumerate all generators by extending totally isotropic subspaces one point
/// at a time, deduplicated by canonical form; then fill the codimension table.
pub fn enumerate_generators(params: SchemeParams, limits: OracleLimits, exec: Execution) -> Result<PolarSpace> {
    check_guard(params, limits)?;
    let field = build_field(params.q)?;
    let points = isotropic_points(&field, 2 * params.d as usize);
    let generators = extend_to_generators(&field, params.d as usize, &points, exec);
    let expected = params.generator_count();
    if expected != generators.len().into() {
        return Err(property!("{params}: enumerated {} generators, expected N = {expected}", generators.len()));
    }
    let codim = codimension_table(&field, params.d as usize, &generators, exec);
    Ok(PolarSpace { params, field, generators, points, codim })
}

/// All maximal totally isotropic subspaces reachable from `points`, sorted.
pub fn extend_to_generators(field: &Field, d: usize, points: &[Vec<Elem>], exec: Execution) -> Vec<Generator> {
    let mut level: Vec<Generator> = vec![Generator { rows: vec![] }];
    for _ in 0..d {
        let batches = exec.map(&level, |w| {
            let mut found = Vec::new();
            for p in points {
                if w.rows.iter().any(|r| hermitian(field, r, p) != 0) {
                    continue;
                }
                let mut rows = w.rows.clone();
                rows.push(p.clone());
                if rref(field, &mut rows) > w.rows.len() {
                    found.push(Generator { rows });
                }
            }
            found
        });
        let set: HashSet<Generator> = batches.into_iter().flatten().collect();
        level = set.into_iter().collect();
        level.sort();
    }
    level
}

pub fn codimension_table(field: &Field, d: usize, generators: &[Generator], exec: Execution) -> Vec<u8> {
    let n = generators.len();
    let mut table = vec![0u8; n * n];
    exec.for_each_row(&mut table, n.max(1), |r, row| {
        let gr: Vec<&[Elem]> = generators[r].rows.iter().map(Vec::as_slice).collect();
        for (s, slot) in row.iter_mut().enumerate() {
            if s == r {
                continue;
            }
            let mut stacked = gr.clone();
            stacked.extend(generators[s].rows.iter().map(Vec::as_slice));
            *slot = (rank_of(field, &stacked) - d) as u8;
        }
    });
    table
}

/// Per-relation neighbour counts, checked to be the same for every generator.
pub fn distance_distribution(ps: &PolarSpace) -> Result<Vec<u64>> {
    let n = ps.len();
    let d = ps.params.d as usize;
    let mut first: Option<Vec<u64>> = None;
    for r in 0..n {
        let mut counts = vec![0u64; d + 1];
        for s in 0..n {
            counts[ps.codim(r, s) as usize] += 1;
        }
        match &first {
            None => first = Some(counts),
            Some(f) if *f != counts => {
                return Err(property!("generator {r} has distance counts {counts:?}, generator 0 has {f:?}"));
            }
            _ => {}
        }
    }
    for r in 0..n {
        for s in 0..r {
            if ps.codim(r, s) != ps.codim(s, r) {
                return Err(property!("codimension table is not symmetric at ({r}, {s})"));
            }
        }
    }
    first.ok_or_else(|| property!("polar space has no generators"))
}

/// Generators containing `point`; the set is checked to be pairwise intersecting.
pub fn point_pencil(ps: &PolarSpace, point: &[Elem]) -> Result<Vec<usize>> {
    let dim = 2 * ps.params.d as usize;
    let field = &ps.field;
    if point.len() != dim || point.iter().all(|&x| x == 0) || hermitian(field, point, point) != 0 {
        return Err(domain!("{point:?} is not an isotropic point of {}", ps.params));
    }
    let d = ps.params.d as usize;
    let members: Vec<usize> = (0..ps.len())
        .filter(|&g| {
            let mut rows: Vec<&[Elem]> = ps.generators[g].rows.iter().map(Vec::as_slice).collect();
            rows.push(point);
            rank_of(field, &rows) == d
        })
        .collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[..i] {
            if ps.codim(a, b) as usize >= d {
                return Err(property!("pencil members {a} and {b} are opposite"));
            }
        }
    }
    Ok(members)
}

/// Number of generators through each isotropic point, in `ps.points` order.
pub fn pencil_sizes(ps: &PolarSpace) -> Vec<usize> {
    let index: HashMap<&[Elem], usize> = ps.points.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let d = ps.params.d;
    let field = &ps.field;
    let mut counts = vec![0; ps.points.len()];
    for g in &ps.generators {
        let mut seen = HashSet::new();
        for coeffs in all_vectors(field.order(), d as usize) {
            let mut v = vec![0; 2 * d as usize];
            for (c, row) in coeffs.iter().zip(&g.rows) {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(*c, y));
                }
            }
            if let Some(p) = normalize(field, &v) {
                if seen.insert(p.clone()) {
                    counts[index[p.as_slice()]] += 1;
                }
            }
        }
    }
    counts
}

/// Flat text dump: a header, one generator per line (rows as hex digits
/// separated by `:`), then the codimension table, one row of digits per line.
pub fn write_dump<W: Write>(ps: &PolarSpace, mut out: W) -> Result<()> {
    let n = ps.len();
    writeln!(out, "# generators d={} q={} count={}", ps.params.d, ps.params.q, n)?;
    for g in &ps.generators {
        let line: Vec<String> = g.rows.iter().map(|r| r.iter().map(|x| format!("{x:x}")).collect()).collect();
        writeln!(out, "{}", line.join(":"))?;
    }
    writeln!(out, "# codim")?;
    for r in 0..n {
        let line: String = (0..n).map(|s| char::from(b'0' + ps.codim(r, s))).collect();
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Parsed form of [`write_dump`] output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dump {
    pub d: u32,
    pub q: u32,
    pub generators: Vec<Generator>,
    pub codim: Vec<u8>,
}

pub fn read_dump<R: BufRead>(input: R) -> Result<Dump> {
    let bad = |m: &str| Error::Parse(m.to_owned());
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| bad("empty dump"))??;
    let mut d = None;
    let mut q = None;
    let mut count = None;
    for tok in header.split_whitespace() {
        if let Some((k, v)) = tok.split_once('=') {
            let v: u64 = v.parse().map_err(|_| bad("bad header value"))?;
            match k {
                "d" => d = Some(v as u32),
                "q" => q = Some(v as u32),
                "count" => count = Some(v as usize),
                _ => {}
            }
        }
    }
    let (d, q, count) = match (d, q, count) {
        (Some(d), Some(q), Some(c)) => (d, q, c),
        _ => return Err(bad("header must carry d, q and count")),
    };
    let mut generators = Vec::with_capacity(count);
    for _ in 0..count {
        let line = lines.next().ok_or_else(|| bad("truncated generator list"))??;
        let rows = line
            .split(':')
            .map(|r| r.chars().map(|c| c.to_digit(16).map(|x| x as Elem).ok_or_else(|| bad("bad hex digit"))).collect())
            .collect::<Result<Vec<Vec<Elem>>>>()?;
        generators.push(Generator { rows });
    }
    if lines.next().transpose()?.as_deref() != Some("# codim") {
        return Err(bad("missing codim section"));
    }
    let mut codim = Vec::with_capacity(count * count);
    for _ in 0..count {
        let line = lines.next().ok_or_else(|| bad("truncated codim table"))??;
        if line.len() != count {
            return Err(bad("codim row has wrong length"));
        }
        codim.extend(line.bytes().map(|b| b.wrapping_sub(b'0')));
    }
    Ok(Dump { d, q, generators, codim })
}
