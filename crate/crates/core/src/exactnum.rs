//! Exact integer and rational arithmetic.
//!
//! Everything downstream is computed without rounding. Integers are
//! arbitrary precision ([`num_bigint::BigInt`]) and rationals are kept in
//! lowest terms with a positive denominator ([`num_rational::BigRational`]).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(int(num), int(den))
}

pub fn rat_int(v: &Integer) -> Rational {
    Rational::from_integer(v.clone())
}

/// `base^exp` for a machine-sized base.
pub fn ipow(base: u64, exp: u32) -> Integer {
    Pow::pow(&Integer::from(base), exp)
}

/// `base^exp` for a rational base; negative exponents invert.
pub fn rpow(base: &Rational, exp: i64) -> Result<Rational, EvalError> {
    if exp >= 0 {
        Ok(Pow::pow(base, exp as u64))
    } else if base.is_zero() {
        Err(EvalError::DivisionByZero("zero to a negative power"))
    } else {
        Ok(Pow::pow(base.recip(), exp.unsigned_abs()))
    }
}

/// Gaussian binomial coefficient `[n choose k]_b`.
///
/// Evaluated as `prod_{i=1..k} (b^(n-k+i) - 1) / (b^i - 1)`. Each partial
/// product is itself a Gaussian binomial, so every intermediate division
/// is exact.
pub fn gaussian_binomial(n: u32, k: u32, b: &Integer) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let one = Integer::one();
    let mut acc = Integer::one();
    for i in 1..=k {
        let num: Integer = Pow::pow(b, n - k + i) - &one;
        let den: Integer = Pow::pow(b, i) - &one;
        acc *= num;
        let (quot, rem) = acc.div_rem(&den);
        debug_assert!(rem.is_zero(), "partial Gaussian product not integral");
        acc = quot;
    }
    acc
}

/// Gaussian binomial with a rational base, as the same finite product.
///
/// Used when a closed form is evaluated at non-integer points to certify
/// a rational-function identity. Fails when some `b^i = 1`.
pub fn gaussian_binomial_rational(n: u32, k: u32, b: &Rational) -> Result<Rational, EvalError> {
    if k > n {
        return Ok(Rational::zero());
    }
    let one = Rational::one();
    let mut acc = Rational::one();
    for i in 1..=k {
        let den: Rational = Pow::pow(b, i) - &one;
        if den.is_zero() {
            return Err(EvalError::DivisionByZero("gaussian binomial base is a root of unity"));
        }
        acc *= (Pow::pow(b, n - k + i) - &one) / den;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),
}

/// Checked rational division.
pub fn div(num: &Rational, den: &Rational, what: &'static str) -> Result<Rational, EvalError> {
    if den.is_zero() {
        Err(EvalError::DivisionByZero(what))
    } else {
        Ok(num / den)
    }
}

/// Outcome of comparing two evaluators at a set of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    pub point: Rational,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("identity evaluation failed at {} point(s): {}", .0.len(), describe_failures(.0))]
pub struct IdentityError(pub Vec<IdentityFailure>);

fn describe_failures(fs: &[IdentityFailure]) -> String {
    fs.iter().map(|f| format!("q={}: {}", f.point, f.reason)).collect::<Vec<_>>().join("; ")
}

/// Compare `lhs` and `rhs` exactly at every point.
///
/// Returns `Ok(true)` iff both sides agree everywhere. Points where either
/// side cannot be evaluated are collected and returned as an error rather
/// than being skipped. For a polynomial identity of degree below
/// `points.len()` on distinct points, `Ok(true)` is a certificate.
pub fn verify_polynomial_identity<L, R>(lhs: L, rhs: R, points: &[Rational]) -> Result<bool, IdentityError>
where
    L: Fn(&Rational) -> Result<Rational, EvalError>,
    R: Fn(&Rational) -> Result<Rational, EvalError>,
{
    let mut failures = Vec::new();
    let mut all_equal = true;
    for p in points {
        match (lhs(p), rhs(p)) {
            (Ok(a), Ok(b)) => all_equal &= a == b,
            (Err(e), _) => failures.push(IdentityFailure { point: p.clone(), reason: format!("lhs: {e}") }),
            (_, Err(e)) => failures.push(IdentityFailure { point: p.clone(), reason: format!("rhs: {e}") }),
        }
    }
    if failures.is_empty() {
        Ok(all_equal)
    } else {
        Err(IdentityError(failures))
    }
}

/// Integer points `lo..=hi` as rationals.
pub fn integer_points(lo: i64, hi: i64) -> Vec<Rational> {
    (lo..=hi).map(|v| rat(v, 1)).collect()
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Floor of a rational (toward negative infinity).
pub fn floor(r: &Rational) -> Integer {
    r.floor().to_integer()
}

pub fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact textual form `num/den` (or just `num` for integers).
pub struct Exact<'a>(pub &'a Rational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed exact rational {0:?}")]
pub struct ParseRationalError(pub String);

/// Parse `num` or `num/den`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_owned());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = Integer::from_str(n).map_err(|_| err())?;
    let d = Integer::from_str(d).map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

/// Lossy decimal view, for clearly labelled convenience columns only.
pub fn approx(r: &Rational) -> String {
    // Scale to 12 significant digits without going through f64 for huge values.
    let neg = r.is_negative();
    let a = r.abs();
    if a.is_zero() {
        return "0".into();
    }
    let num = a.numer().to_string();
    let den = a.denom().to_string();
    let exp10 = num.len() as i64 - den.len() as i64;
    let shift = 12 - exp10;
    let scaled = if shift >= 0 {
        (a.numer() * Pow::pow(&int(10), shift as u64)) / a.denom()
    } else {
        a.numer() / (a.denom() * Pow::pow(&int(10), (-shift) as u64))
    };
    let digits = scaled.to_string();
    let point = digits.len() as i64 - shift;
    let mantissa = format!("{}.{}", &digits[..1], digits[1..].trim_end_matches('0'));
    let mantissa = mantissa.trim_end_matches('.');
    format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, point - 1)
}
