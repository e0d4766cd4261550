//! Fixed-point evaluation of exact-coefficient approximants.
//!
//! Coefficients and points are rounded to `FRACTION_BITS` binary places
//! (about 115 decimal digits) so that large-order fits can be evaluated
//! without the cost of normalizing huge rationals at every Horner step.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

pub const FRACTION_BITS: usize = 384;

/// Complex number scaled by `2^FRACTION_BITS`.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedComplex {
    re: BigInt,
    im: BigInt,
}

fn fixed(value: &Rational) -> BigInt {
    (value.numer() << FRACTION_BITS) / value.denom()
}

impl FixedComplex {
    pub fn zero() -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn from_rational(value: &Rational) -> Self {
        Self { re: fixed(value), im: BigInt::zero() }
    }

    pub fn from_complex(value: &Complex<Rational>) -> Self {
        Self { re: fixed(&value.re), im: fixed(&value.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.re += &other.re;
        self.im += &other.im;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = (&self.re * &other.re - &self.im * &other.im) >> FRACTION_BITS;
        let im = (&self.re * &other.im + &self.im * &other.re) >> FRACTION_BITS;
        Self { re, im }
    }

    /// `self / other` rounded to binary64.
    pub fn ratio(&self, other: &Self) -> Result<Complex64> {
        if other.is_zero() {
            return Err(Error::PoleHit);
        }
        let norm = &other.re * &other.re + &other.im * &other.im;
        let re = &self.re * &other.re + &self.im * &other.im;
        let im = &self.im * &other.re - &self.re * &other.im;
        let to_f64 = |n: BigInt| Ratio::new_raw(n, norm.clone()).to_f64().unwrap_or(f64::NAN);
        Ok(Complex64::new(to_f64(re), to_f64(im)))
    }
}

/// Horner evaluation of `Σ grid[p][q] x^p y^q`.
pub fn eval_grid(grid: &[Vec<Rational>], x: &FixedComplex, y: &FixedComplex) -> FixedComplex {
    let mut outer = FixedComplex::zero();
    for row in grid.iter().rev() {
        let inner = eval_poly(row, y);
        outer = outer.mul(x);
        outer.add_assign(&inner);
    }
    outer
}

/// Horner evaluation of `Σ coeffs[k] z^k`.
pub fn eval_poly(coeffs: &[Rational], z: &FixedComplex) -> FixedComplex {
    let mut acc = FixedComplex::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z);
        if !c.is_zero() {
            acc.add_assign(&FixedComplex::from_rational(c));
        }
    }
    acc
}

/// Exact complex point from binary64 components.
pub fn complex_from_f64(z: Complex64) -> Result<Complex<Rational>> {
    let conv = |v: f64| {
        Rational::from_float(v).ok_or_else(|| Error::InvalidInput(format!("non-finite coordinate {v}")))
    };
    Ok(Complex::new(conv(z.re)?, conv(z.im)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn ratio_of_polynomials() {
        let q = |n: i64, d: i64| Rational::from_ratio(n, d);
        let num = vec![q(1, 1), q(1, 2)];
        let den = vec![q(1, 1), q(-1, 2)];
        let z = FixedComplex::from_rational(&q(1, 1));
        let v = eval_poly(&num, &z).ratio(&eval_poly(&den, &z)).unwrap();
        assert_eq!(v, Complex64::new(3.0, 0.0));
        let zi = FixedComplex::from_complex(&Complex::new(q(0, 1), q(1, 1)));
        let w = eval_poly(&num, &zi).ratio(&eval_poly(&den, &zi)).unwrap();
        assert!((w - Complex64::new(0.6, 0.8)).norm() < 1e-15);
        let pole = FixedComplex::from_rational(&q(2, 1));
        assert_eq!(eval_poly(&num, &pole).ratio(&eval_poly(&den, &pole)), Err(Error::PoleHit));
    }
}
