//! Field elements shared by every module: exact rationals and binary64 reals.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{self, DenseSystem, LinearForm};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// A field element usable as a series coefficient and as a linear-system entry.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic is exact.
    const EXACT: bool;
    /// Short backend label used in reports.
    const NAME: &'static str;

    fn from_ratio(numer: i64, denom: i64) -> Self;
    fn from_rational(value: &Rational) -> Self;
    /// Converts a finite double; exact for the rational backend.
    fn from_f64(value: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;

    fn from_i64(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }

    /// Solves `matrix · x = rhs`.
    fn solve(system: &DenseSystem<Self>) -> Result<Vec<Self>>;

    /// Solves the system and evaluates affine forms of the solution.
    fn solve_with_forms(
        system: &DenseSystem<Self>,
        forms: &[LinearForm<Self>],
    ) -> Result<(Vec<Self>, Vec<Self>)> {
        let x = Self::solve(system)?;
        let values = forms.iter().map(|f| f.apply(&x)).collect();
        Ok((x, values))
    }

    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> Result<Self>;
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn from_f64(value: f64) -> Option<Self> {
        Rational::from_float(value)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn solve(system: &DenseSystem<Self>) -> Result<Vec<Self>> {
        linalg::solve_rational(system)
    }

    fn solve_with_forms(
        system: &DenseSystem<Self>,
        forms: &[LinearForm<Self>],
    ) -> Result<(Vec<Self>, Vec<Self>)> {
        linalg::solve_rational_with_forms(system, forms)
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Rational::from_integer(i.into()))
                } else {
                    let f = n
                        .as_f64()
                        .ok_or_else(|| Error::InvalidInput(format!("bad number {n}")))?;
                    Rational::from_float(f)
                        .ok_or_else(|| Error::InvalidInput(format!("non-finite number {n}")))
                }
            }
            other => Err(Error::InvalidInput(format!("expected a coefficient, found {other}"))),
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn from_rational(value: &Rational) -> Self {
        ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
    }

    fn from_f64(value: f64) -> Option<Self> {
        value.is_finite().then_some(value)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn solve(system: &DenseSystem<Self>) -> Result<Vec<Self>> {
        linalg::solve_float(system)
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or_else(|| Value::String(self.to_string()))
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::InvalidInput(format!("bad number {n}"))),
            Value::String(s) => parse_rational(s).map(|r| Scalar::to_f64(&r)),
            other => Err(Error::InvalidInput(format!("expected a coefficient, found {other}"))),
        }
    }
}

/// Parses `p/q`, an integer, or a decimal such as `-1.25e-3` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidInput(format!("cannot parse '{text}' as a rational"));
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_rational(p)?;
        let q = parse_rational(q)?;
        if q.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in '{text}'")));
        }
        return Ok(p / q);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| bad())? };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Renders `p/q`, or `p` for integers.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses a scalar of either backend from text.
pub fn parse_scalar<T: Scalar>(text: &str) -> Result<T> {
    parse_rational(text).map(|r| T::from_rational(&r))
}
