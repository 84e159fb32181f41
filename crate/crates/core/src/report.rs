//! Text, JSON-lines and CSV renderings of every report type.
//!
//! Exact values are always strings of the form `num` or `num/den`. Any
//! floating-point view lives in a field whose name ends in `_approx`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::equality::{EqualityReport, Verdict};
use crate::error::{Error, Result};
use crate::exactnum::{approx, parse_rational, Exact, Integer, Rational};
use crate::hoffman::{BoundReport, SuiteReport, SweepReport, WeightedBound};
use crate::lp::{DelsarteInstance, LpComparison};
use crate::oracle::OracleReport;
use crate::scheme::{dual_eigenmatrix, Eigenmatrix, SchemeParams};

fn ex(r: &Rational) -> String {
    Exact(r).to_string()
}

fn exs(v: &[Rational]) -> Vec<String> {
    v.iter().map(ex).collect()
}

fn ints(v: &[Integer]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn parse(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_int(s: &str) -> Result<Integer> {
    s.parse().map_err(|_| Error::Parse(format!("malformed integer {s:?}")))
}

/// One machine-readable line of output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Bound(BoundRecord),
    Spectrum(SpectrumRecord),
    Lp(LpRecord),
    Equality(EqualityRecord),
    Sweep(SweepRecord),
    Oracle(OracleRecord),
    Weighted(WeightedRecord),
    Verify(VerifyRecord),
}

impl Record {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_json(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))
    }

    /// CSV header for this record kind.
    pub fn csv_header(&self) -> String {
        match self {
            Record::Bound(_) => BOUND_CSV_HEADER.to_string(),
            _ => self.fields().into_iter().map(|(k, _)| k).collect::<Vec<_>>().join(","),
        }
    }

    /// One CSV row. Lists are joined with `;`, rows of a matrix with `|`, and
    /// absent values are empty.
    pub fn csv_row(&self) -> Result<String> {
        if let Record::Bound(b) = self {
            return Ok(bound_csv_row(&BoundReport::try_from(b)?));
        }
        Ok(self.fields().into_iter().map(|(_, v)| v).collect::<Vec<_>>().join(","))
    }

    fn fields(&self) -> Vec<(String, String)> {
        let serde_json::Value::Object(map) = serde_json::to_value(self).expect("records serialize") else {
            unreachable!("records are objects")
        };
        map.into_iter().filter(|(k, _)| k != "kind").map(|(k, v)| (k, csv_cell(&v))).collect()
    }
}

fn csv_cell(v: &serde_json::Value) -> String {
    use serde_json::Value;
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let sep = if items.iter().any(Value::is_array) { "|" } else { ";" };
            items.iter().map(csv_cell).collect::<Vec<_>>().join(sep)
        }
        Value::Object(_) => v.to_string().replace(',', ";"),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub d: u32,
    pub q: u32,
    pub f: String,
    pub f_numerator: String,
    pub f_denominator: String,
    pub k: String,
    pub lambda: String,
    pub spectrum: Vec<String>,
    pub ratio_bound: String,
    pub closed_form_bound: String,
    pub bounds_match: bool,
    pub point_pencil: String,
    pub in_main_range: bool,
    pub ratio_bound_approx: String,
}

impl From<&BoundReport> for BoundRecord {
    fn from(r: &BoundReport) -> Self {
        Self {
            d: r.params.d,
            q: r.params.q,
            f: ex(&r.f),
            f_numerator: r.f_numerator.to_string(),
            f_denominator: r.f_denominator.to_string(),
            k: ex(&r.k),
            lambda: ex(&r.lambda),
            spectrum: exs(&r.spectrum),
            ratio_bound: ex(&r.ratio_bound),
            closed_form_bound: r.closed_form_bound.to_string(),
            bounds_match: r.bounds_match,
            point_pencil: r.point_pencil.to_string(),
            in_main_range: r.in_main_range,
            ratio_bound_approx: approx(&r.ratio_bound),
        }
    }
}

impl TryFrom<&BoundRecord> for BoundReport {
    type Error = Error;

    fn try_from(r: &BoundRecord) -> Result<Self> {
        Ok(BoundReport {
            params: SchemeParams::new(r.d, r.q)?,
            f: parse(&r.f)?,
            f_numerator: parse_int(&r.f_numerator)?,
            f_denominator: parse_int(&r.f_denominator)?,
            k: parse(&r.k)?,
            lambda: parse(&r.lambda)?,
            spectrum: r.spectrum.iter().map(|s| parse(s)).collect::<Result<_>>()?,
            ratio_bound: parse(&r.ratio_bound)?,
            closed_form_bound: parse_int(&r.closed_form_bound)?,
            bounds_match: r.bounds_match,
            point_pencil: parse_int(&r.point_pencil)?,
            in_main_range: r.in_main_range,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub d: u32,
    pub q: u32,
    pub n: String,
    pub theta: Vec<String>,
    pub valencies: Vec<String>,
    pub multiplicities: Vec<String>,
    pub p: Vec<Vec<String>>,
    pub q_dual: Vec<Vec<String>>,
    pub reordered: Option<Vec<usize>>,
}

impl From<&Eigenmatrix> for SpectrumRecord {
    fn from(em: &Eigenmatrix) -> Self {
        Self {
            d: em.params.d,
            q: em.params.q,
            n: em.n.to_string(),
            theta: ints(&em.theta),
            valencies: ints(&em.k),
            multiplicities: exs(&em.m),
            p: em.p.iter().map(|row| ints(row)).collect(),
            q_dual: dual_eigenmatrix(em).iter().map(|row| exs(row)).collect(),
            reordered: em.reordered.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpConstraintRecord {
    pub coeffs: Vec<String>,
    pub bound: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpRecord {
    pub d: u32,
    pub q: u32,
    /// Constraints `coeffs . x <= bound` over `x_1..x_{d-1}`.
    pub constraints: Vec<LpConstraintRecord>,
    pub status: String,
    pub optimum: String,
    pub primal: Vec<String>,
    pub dual: Vec<String>,
    pub distribution: Vec<String>,
    pub ratio_bound: String,
    pub equal: bool,
    pub pivots: usize,
}

impl LpRecord {
    pub fn new(inst: &DelsarteInstance, cmp: &LpComparison) -> Self {
        Self {
            d: cmp.params.d,
            q: cmp.params.q,
            constraints: inst
                .program
                .constraints
                .iter()
                .map(|c| LpConstraintRecord { coeffs: exs(&c.coeffs), bound: ex(&c.bound) })
                .collect(),
            status: cmp.certificate.status.to_string(),
            optimum: ex(&cmp.lp_optimum),
            primal: exs(&cmp.certificate.primal),
            dual: exs(&cmp.certificate.dual),
            distribution: exs(&cmp.distribution),
            ratio_bound: ex(&cmp.ratio_bound),
            equal: cmp.equal,
            pivots: cmp.certificate.pivots,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityRecord {
    pub d: u32,
    pub q: u32,
    pub size: String,
    pub a1: String,
    pub ad: String,
    pub n: Vec<String>,
    pub integral: Vec<bool>,
    pub witnesses: Vec<usize>,
    pub verdict: String,
}

impl From<&EqualityReport> for EqualityRecord {
    fn from(r: &EqualityReport) -> Self {
        Self {
            d: r.params.d,
            q: r.params.q,
            size: r.size.to_string(),
            a1: ex(&r.a1),
            ad: ex(&r.ad),
            n: exs(&r.n),
            integral: r.integral.clone(),
            witnesses: r.witnesses.clone(),
            verdict: r.verdict.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub d: u32,
    pub q: u32,
    pub grid_size: usize,
    pub optimal_f: String,
    pub optimal_min: String,
    pub best_sample_f: String,
    pub best_sample_min: String,
}

impl From<&SweepReport> for SweepRecord {
    fn from(r: &SweepReport) -> Self {
        Self {
            d: r.params.d,
            q: r.params.q,
            grid_size: r.samples.len(),
            optimal_f: ex(&r.optimal_f),
            optimal_min: ex(&r.optimal_min),
            best_sample_f: ex(&r.best_sample.0),
            best_sample_min: ex(&r.best_sample.1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub d: u32,
    pub q: u32,
    pub generators: usize,
    pub points: usize,
    pub distance_counts: Vec<u64>,
    pub annihilated: bool,
    pub polynomial_relations: usize,
    pub row_sum: Option<String>,
    pub pencil_size: usize,
    pub ratio_bound: Option<String>,
}

impl From<&OracleReport> for OracleRecord {
    fn from(r: &OracleReport) -> Self {
        Self {
            d: r.params.d,
            q: r.params.q,
            generators: r.generators,
            points: r.points,
            distance_counts: r.distance_counts.clone(),
            annihilated: r.matrices.annihilated,
            polynomial_relations: r.matrices.polynomial_relations,
            row_sum: r.matrices.row_sum.as_ref().map(ex),
            pencil_size: r.pencil_size,
            ratio_bound: r.ratio_bound.as_ref().map(ex),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedRecord {
    pub d: u32,
    pub q: u32,
    pub weights: Vec<String>,
    pub spectrum: Vec<String>,
    pub k: String,
    pub lambda: String,
    pub bound: String,
    pub floor: String,
}

impl From<&WeightedBound> for WeightedRecord {
    fn from(r: &WeightedBound) -> Self {
        Self {
            d: r.params.d,
            q: r.params.q,
            weights: exs(r.weights.coeffs()),
            spectrum: exs(&r.spectrum),
            k: ex(&r.k),
            lambda: ex(&r.lambda),
            bound: ex(&r.bound),
            floor: r.floor.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub d: u32,
    pub q: u32,
    pub chain_links: usize,
    pub checks: Vec<String>,
}

impl From<&SuiteReport> for VerifyRecord {
    fn from(r: &SuiteReport) -> Self {
        Self {
            d: r.params.d,
            q: r.params.q,
            chain_links: r.chain_links,
            checks: r.checks.iter().map(|c| c.to_string()).collect(),
        }
    }
}

pub const BOUND_CSV_HEADER: &str =
    "d,q,f_num,f_den,K_num,K_den,lambda_num,lambda_den,ratio_bound,closed_form_bound,match";

pub fn bound_csv_row(r: &BoundReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.params.d,
        r.params.q,
        r.f.numer(),
        r.f.denom(),
        r.k.numer(),
        r.k.denom(),
        r.lambda.numer(),
        r.lambda.denom(),
        ex(&r.ratio_bound),
        r.closed_form_bound,
        r.bounds_match
    )
}

pub fn bound_text(r: &BoundReport) -> String {
    let mut s = String::new();
    let p = r.params;
    let _ = writeln!(s, "{p}  (d = {}, q = {})", p.d, p.q);
    if !r.in_main_range {
        let _ = writeln!(s, "  note: below the main range (odd d >= 5); shown as a cross-check");
    }
    let _ = writeln!(s, "  f               = {}  (= {} / {})", ex(&r.f), r.f_numerator, r.f_denominator);
    let _ = writeln!(s, "  K               = {}", ex(&r.k));
    let _ = writeln!(s, "  lambda          = {}", ex(&r.lambda));
    let _ = writeln!(s, "  spectrum        = [{}]", exs(&r.spectrum).join(", "));
    let _ = writeln!(s, "  ratio bound     = {}  (approx {})", ex(&r.ratio_bound), approx(&r.ratio_bound));
    let _ = writeln!(s, "  closed form     = {}", r.closed_form_bound);
    let _ = writeln!(s, "  bounds match    = {}", r.bounds_match);
    let _ = writeln!(s, "  point pencil    = {}", r.point_pencil);
    s
}

pub fn spectrum_text(em: &Eigenmatrix) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}  N = {}", em.params, em.n);
    let _ = writeln!(s, "  theta          = [{}]", ints(&em.theta).join(", "));
    let _ = writeln!(s, "  valencies      = [{}]", ints(&em.k).join(", "));
    let _ = writeln!(s, "  multiplicities = [{}]", exs(&em.m).join(", "));
    if let Some(perm) = &em.reordered {
        let _ = writeln!(s, "  rows reordered to match the closed-form column d: {perm:?}");
    }
    let _ = writeln!(s, "  P (row i = eigenspace V_i, column j = relation A_j):");
    for (i, row) in em.p.iter().enumerate() {
        let _ = writeln!(s, "    V_{i}: [{}]", ints(row).join(", "));
    }
    s
}

pub fn lp_text(inst: &DelsarteInstance, cmp: &LpComparison) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}  Delsarte LP over x_1..x_{}", cmp.params, cmp.params.d - 1);
    for (i, c) in inst.program.constraints.iter().enumerate() {
        let _ = writeln!(s, "  c{}: [{}] . x <= {}", i + 1, exs(&c.coeffs).join(", "), ex(&c.bound));
    }
    let _ = writeln!(s, "  status       = {}  ({} pivots)", cmp.certificate.status, cmp.certificate.pivots);
    let _ = writeln!(s, "  optimum      = {}", ex(&cmp.lp_optimum));
    let _ = writeln!(s, "  distribution = [{}]", exs(&cmp.distribution).join(", "));
    let _ = writeln!(s, "  dual         = [{}]", exs(&cmp.certificate.dual).join(", "));
    let _ = writeln!(s, "  ratio bound  = {}", ex(&cmp.ratio_bound));
    let _ = writeln!(s, "  equal        = {}", cmp.equal);
    s
}

pub fn equality_text(r: &EqualityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}  hypothetical |S| = {}", r.params, r.size);
    let _ = writeln!(s, "  a_1 = {}, a_d = {}", ex(&r.a1), ex(&r.ad));
    for (i, n) in r.n.iter().enumerate() {
        let mark = if r.witnesses.contains(&i) { "  <- impossible count" } else { "" };
        let _ = writeln!(s, "  n_{i} = {}{mark}", ex(n));
    }
    let _ = writeln!(s, "  verdict = {}", r.verdict);
    if r.verdict == Verdict::ContradictionFound {
        let _ = writeln!(s, "  (a set of this size cannot exist)");
    }
    s
}

pub fn sweep_text(r: &SweepReport) -> String {
    format!(
        "{}  sweep over {} values of f in [0, q^2-1]\n  optimal f = {} gives least eigenvalue {}\n  best sampled f = {} gives {}\n",
        r.params,
        r.samples.len(),
        ex(&r.optimal_f),
        ex(&r.optimal_min),
        ex(&r.best_sample.0),
        ex(&r.best_sample.1)
    )
}

pub fn oracle_text(r: &OracleReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}  explicit construction", r.params);
    let _ = writeln!(s, "  generators      = {}", r.generators);
    let _ = writeln!(s, "  isotropic points = {}", r.points);
    let _ = writeln!(s, "  distance counts = {:?}", r.distance_counts);
    let _ = writeln!(s, "  prod (A_1 - theta_i I) = 0: {}", r.matrices.annihilated);
    let _ = writeln!(s, "  A_j = v_j(A_1) checked for {} relation(s)", r.matrices.polynomial_relations);
    if let Some(k) = &r.matrices.row_sum {
        let _ = writeln!(s, "  row sums of A_d - f A_(d-2) all equal K = {}", ex(k));
    }
    let _ = writeln!(s, "  generators per point = {}", r.pencil_size);
    if let Some(b) = &r.ratio_bound {
        let _ = writeln!(s, "  ratio bound     = {}", ex(b));
    }
    s
}

pub fn weighted_text(r: &WeightedBound) -> String {
    format!(
        "{}  weights [{}]\n  spectrum = [{}]\n  K = {}, lambda = {}\n  bound = {}  (floor {})\n",
        r.params,
        exs(r.weights.coeffs()).join(", "),
        exs(&r.spectrum).join(", "),
        ex(&r.k),
        ex(&r.lambda),
        ex(&r.bound),
        r.floor
    )
}

pub fn verify_text(r: &SuiteReport) -> String {
    format!("{}  all checks passed ({} chain links)\n  {}\n", r.params, r.chain_links, r.checks.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hoffman::bound_report;

    #[test]
    fn bound_record_round_trips() {
        for (d, q) in [(3, 2), (5, 3), (11, 16)] {
            let rep = bound_report(SchemeParams::new(d, q).unwrap()).unwrap();
            let line = Record::Bound(BoundRecord::from(&rep)).to_json();
            let Record::Bound(back) = Record::from_json(&line).unwrap() else { panic!("wrong kind") };
            assert_eq!(BoundReport::try_from(&back).unwrap(), rep);
        }
    }

    #[test]
    fn csv_row_shape() {
        let rep = bound_report(SchemeParams::new(3, 2).unwrap()).unwrap();
        assert_eq!(bound_csv_row(&rep), "3,2,8,5,2224,5,-152,5,57,57,true");
        assert_eq!(BOUND_CSV_HEADER.split(',').count(), bound_csv_row(&rep).split(',').count());
    }

    #[test]
    fn generic_csv_flattens_lists() {
        let rep = crate::hoffman::f_sweep(SchemeParams::new(3, 2).unwrap(), 16, crate::Execution::Sequential).unwrap();
        let rec = Record::Sweep(SweepRecord::from(&rep));
        assert_eq!(rec.csv_header(), "d,q,grid_size,optimal_f,optimal_min,best_sample_f,best_sample_min");
        assert_eq!(rec.csv_row().unwrap(), "3,2,16,8/5,-152/5,8/5,-152/5");
        let rec = Record::Verify(VerifyRecord { d: 3, q: 2, chain_links: 13, checks: vec!["a".into(), "b".into()] });
        assert_eq!(rec.csv_row().unwrap(), "3,2,13,a;b");
    }

    #[test]
    fn malformed_record_is_rejected() {
        assert!(Record::from_json("{\"kind\":\"bound\"}").is_err());
        let mut rec = BoundRecord::from(&bound_report(SchemeParams::new(3, 2).unwrap()).unwrap());
        rec.lambda = "-152/0".into();
        assert!(BoundReport::try_from(&rec).is_err());
    }
}
