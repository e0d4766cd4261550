//! Diagonal Padé approximants `[M/M]` of one-variable series.

use num_complex::{Complex, Complex64};

use crate::error::{Error, Result};
use crate::linalg::{DenseSystem, LinearForm};
use crate::precise::{self, FixedComplex};
use crate::scalar::{Rational, Scalar};
use crate::series::UniSeries;

/// Denominators below this magnitude count as poles in binary64 evaluation.
pub const POLE_THRESHOLD: f64 = 1e-300;

/// `P(x−a) / Q(x−a)` with `deg P = deg Q = M` and `q₀ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PadeApproximant<T> {
    order: usize,
    center: T,
    p: Vec<T>,
    q: Vec<T>,
}

impl<T: Scalar> PadeApproximant<T> {
    /// Builds an approximant from coefficient vectors; `q₀` must be 1.
    pub fn new(order: usize, center: T, p: Vec<T>, q: Vec<T>) -> Result<Self> {
        for v in [&p, &q] {
            if v.len() != order + 1 {
                return Err(Error::DimensionMismatch { expected: order + 1, found: v.len() });
            }
        }
        if !q[0].is_one() {
            return Err(Error::NotNormalized("Pade denominator must have q0 = 1".into()));
        }
        Ok(Self { order, center, p, q })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn center(&self) -> &T {
        &self.center
    }

    pub fn numerator(&self) -> &[T] {
        &self.p
    }

    pub fn denominator(&self) -> &[T] {
        &self.q
    }

    pub fn to_float(&self) -> PadeApproximant<f64> {
        let conv = |v: &[T]| v.iter().map(Scalar::to_f64).collect();
        PadeApproximant { order: self.order, center: self.center.to_f64(), p: conv(&self.p), q: conv(&self.q) }
    }

    /// Binary64 Horner evaluation at `z`.
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let t = z - self.center.to_f64();
        let horner = |c: &[T]| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, v| acc * t + v.to_f64());
        let den = horner(&self.q);
        if den.norm() < POLE_THRESHOLD {
            return Err(Error::PoleHit);
        }
        Ok(horner(&self.p) / den)
    }

    /// Same rational function with coefficient vectors extended by zeros.
    pub fn padded(&self, order: usize) -> Self {
        let pad = |v: &[T]| {
            let mut out = v.to_vec();
            out.resize(order.max(self.order) + 1, T::zero());
            out
        };
        Self { order: order.max(self.order), center: self.center.clone(), p: pad(&self.p), q: pad(&self.q) }
    }

    /// `1/R`, renormalized so the new denominator has unit constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let p0 = self.p[0].clone();
        if p0.is_zero() {
            return Err(Error::NotNormalized("numerator vanishes at the centre".into()));
        }
        let scale = |v: &[T]| v.iter().map(|c| c.clone() / p0.clone()).collect();
        Ok(Self { order: self.order, center: self.center.clone(), p: scale(&self.q), q: scale(&self.p) })
    }

    /// Taylor coefficients of `P/Q` about the centre through `degree`.
    pub fn taylor(&self, degree: usize) -> UniSeries<T> {
        let mut out: Vec<T> = Vec::with_capacity(degree + 1);
        for k in 0..=degree {
            let mut v = self.p.get(k).cloned().unwrap_or_else(T::zero);
            for j in 1..=k.min(self.order) {
                if !self.q[j].is_zero() {
                    v = v - self.q[j].clone() * out[k - j].clone();
                }
            }
            out.push(v);
        }
        UniSeries::new(self.center.clone(), out)
    }
}

impl PadeApproximant<Rational> {
    /// Exact value at a rational point.
    pub fn evaluate_exact(&self, z: &Rational) -> Result<Rational> {
        let t = z - &self.center;
        let horner = |c: &[Rational]| c.iter().rev().fold(Rational::from_integer(0.into()), |acc, v| acc * &t + v);
        let den = horner(&self.q);
        if num_traits::Zero::is_zero(&den) {
            return Err(Error::PoleHit);
        }
        Ok(horner(&self.p) / den)
    }

    /// High-precision value at an exact complex point, rounded to binary64.
    pub fn evaluate_precise(&self, z: &Complex<Rational>) -> Result<Complex64> {
        let t = FixedComplex::from_complex(&Complex::new(&z.re - &self.center, z.im.clone()));
        precise::eval_poly(&self.p, &t).ratio(&precise::eval_poly(&self.q, &t))
    }
}

/// Fits `[M/M]` to `a₀ … a_{2M}`: solves for `q`, then convolves for `p`.
///
/// When the q-system is singular, the lowest-order `[L/L]` (L < M) whose
/// expansion still matches through order `2M` is returned, zero-padded.
pub fn fit_diagonal<T: Scalar>(series: &UniSeries<T>, order: usize) -> Result<PadeApproximant<T>> {
    match fit_square(series, order) {
        Err(err @ Error::SingularSystem { .. }) => {
            let target = &series.coeffs[..=2 * order];
            for lower in 0..order {
                if let Ok(pa) = fit_square(series, lower) {
                    let padded = pa.padded(order);
                    if padded.taylor(2 * order).coeffs == target {
                        return Ok(padded);
                    }
                }
            }
            Err(err)
        }
        other => other,
    }
}

fn fit_square<T: Scalar>(series: &UniSeries<T>, order: usize) -> Result<PadeApproximant<T>> {
    let needed = 2 * order + 1;
    if series.coeffs.len() < needed {
        let missing = (series.coeffs.len()..needed).map(|k| (k, 0)).collect();
        return Err(Error::InsufficientTerms { missing });
    }
    let a0 = series.coeffs[0].clone();
    if a0.is_zero() {
        return Err(Error::NotNormalized(
            "constant term is zero; add a constant to the series before fitting".into(),
        ));
    }
    let a: Vec<T> = series.coeffs[..needed].iter().map(|c| c.clone() / a0.clone()).collect();
    let m = order;
    let mut matrix = Vec::with_capacity(m * m);
    let mut rhs = Vec::with_capacity(m);
    for k in m + 1..=2 * m {
        for j in 1..=m {
            matrix.push(a[k - j].clone());
        }
        rhs.push(-a[k].clone());
    }
    let system = DenseSystem::new(m, matrix, rhs)?;
    let forms: Vec<LinearForm<T>> = (0..=m)
        .map(|i| LinearForm {
            constant: a[i].clone(),
            terms: (1..=i).map(|j| (j - 1, a[i - j].clone())).collect(),
        })
        .collect();
    let (q_tail, p) = T::solve_with_forms(&system, &forms)?;
    let mut q = Vec::with_capacity(m + 1);
    q.push(T::one());
    q.extend(q_tail);
    let p = p.into_iter().map(|v| v * a0.clone()).collect();
    Ok(PadeApproximant { order, center: series.center.clone(), p, q })
}
