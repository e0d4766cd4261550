//! Elementary functions of `x + y`: exact at the origin, binary64 when recentred.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::Rational;
use crate::series::DoubleSeries;

/// Which elementary function of the sum is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    /// `exp((x+y)/2)`
    ExpHalfSum,
    /// `sin((x+y)/2)`
    SinHalfSum,
    /// `sinh((x+y)/2)`
    SinhHalfSum,
    /// `log(1+x+y)`
    LogOnePlusSum,
}

impl Elementary {
    pub fn label(self) -> &'static str {
        match self {
            Elementary::ExpHalfSum => "exp((x+y)/2)",
            Elementary::SinHalfSum => "sin((x+y)/2)",
            Elementary::SinhHalfSum => "sinh((x+y)/2)",
            Elementary::LogOnePlusSum => "log(1+x+y)",
        }
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn origin() -> (Rational, Rational) {
    (Rational::zero(), Rational::zero())
}

/// Value of `d^k/du^k g(u)` at `u = 0` for the half-sum functions.
fn derivative_at_zero(kind: Elementary, k: usize) -> i64 {
    match kind {
        Elementary::ExpHalfSum => 1,
        Elementary::SinHalfSum => [0, 1, 0, -1][k % 4],
        Elementary::SinhHalfSum => (k % 2) as i64,
        Elementary::LogOnePlusSum => unreachable!("log is handled separately"),
    }
}

impl Elementary {
    /// The default argument scale `k` in `g(k(x+y))`.
    pub fn default_scale(self) -> Rational {
        match self {
            Elementary::LogOnePlusSum => Rational::one(),
            _ => Rational::new(BigInt::one(), BigInt::from(2)),
        }
    }
}

/// Exact Taylor coefficients about the origin.
pub fn elementary_series(kind: Elementary, degree: usize) -> DoubleSeries<Rational> {
    elementary_series_scaled(kind, &kind.default_scale(), degree)
}

/// Exact coefficients of `g(k(x+y))` about the origin.
pub fn elementary_series_scaled(kind: Elementary, k: &Rational, degree: usize) -> DoubleSeries<Rational> {
    let fact: Vec<BigInt> = (0..=degree).map(factorial).collect();
    let powers: Vec<Rational> = (0..=degree).map(|i| num_traits::pow(k.clone(), i)).collect();
    DoubleSeries::from_fn(origin(), degree, |m, n| {
        let total = m + n;
        let mn = Rational::from_integer(&fact[m] * &fact[n]);
        let derivative = match kind {
            Elementary::LogOnePlusSum => {
                if total == 0 {
                    return Rational::zero();
                }
                let sign = if total % 2 == 1 { 1 } else { -1 };
                BigInt::from(sign) * &fact[total - 1]
            }
            _ => BigInt::from(derivative_at_zero(kind, total)),
        };
        Rational::from_integer(derivative) * &powers[total] / mn
    })
}

/// Taylor coefficients about `(a, b)` from closed-form derivatives.
pub fn elementary_series_at(kind: Elementary, center: (f64, f64), degree: usize) -> DoubleSeries<f64> {
    let k = num_traits::ToPrimitive::to_f64(&kind.default_scale()).unwrap_or(f64::NAN);
    elementary_series_at_scaled(kind, k, center, degree)
}

/// Coefficients of `g(k(x+y))` about `(a, b)`.
pub fn elementary_series_at_scaled(kind: Elementary, k: f64, center: (f64, f64), degree: usize) -> DoubleSeries<f64> {
    let (a, b) = center;
    let u = k * (a + b);
    let inv_fact: Vec<f64> = {
        let mut v = vec![1.0f64; degree + 1];
        for i in 1..=degree {
            v[i] = v[i - 1] / i as f64;
        }
        v
    };
    let base = 1.0 + u;
    DoubleSeries::from_fn(center, degree, |m, n| {
        let total = m + n;
        let scale = inv_fact[m] * inv_fact[n] * k.powi(total as i32);
        match kind {
            Elementary::ExpHalfSum => u.exp() * scale,
            Elementary::SinHalfSum => [u.sin(), u.cos(), -u.sin(), -u.cos()][total % 4] * scale,
            Elementary::SinhHalfSum => (if total % 2 == 0 { u.sinh() } else { u.cosh() }) * scale,
            Elementary::LogOnePlusSum => {
                if total == 0 {
                    base.ln()
                } else {
                    let sign = if total % 2 == 1 { 1.0 } else { -1.0 };
                    sign * (total as f64 * inv_fact[total]).recip() * scale / base.powi(total as i32)
                }
            }
        }
    })
}

/// Closed-form value of `g(k(x+y))`.
pub fn elementary_value(kind: Elementary, k: f64, x: num_complex::Complex64, y: num_complex::Complex64) -> num_complex::Complex64 {
    let u = k * (x + y);
    match kind {
        Elementary::ExpHalfSum => u.exp(),
        Elementary::SinHalfSum => u.sin(),
        Elementary::SinhHalfSum => u.sinh(),
        Elementary::LogOnePlusSum => (1.0 + u).ln(),
    }
}

pub fn exp_half_sum(degree: usize) -> DoubleSeries<Rational> {
    elementary_series(Elementary::ExpHalfSum, degree)
}

pub fn sin_half_sum(degree: usize) -> DoubleSeries<Rational> {
    elementary_series(Elementary::SinHalfSum, degree)
}

pub fn sinh_half_sum(degree: usize) -> DoubleSeries<Rational> {
    elementary_series(Elementary::SinhHalfSum, degree)
}

pub fn log_one_plus_sum(degree: usize) -> DoubleSeries<Rational> {
    elementary_series(Elementary::LogOnePlusSum, degree)
}
