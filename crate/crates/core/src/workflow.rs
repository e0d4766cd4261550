//! Preprocessing chains around a fit: optional `z₁ = x−y, z₂ = x+y` rotation,
//! an additive offset polynomial, and normalization of the constant term.
//! Values are reported in the original variables with the offset removed.

use num_complex::{Complex, Complex64};
use num_traits::Zero;

use crate::chisholm::{fit_diagonal, ChisholmApproximant, FitReport};
use crate::error::Result;
use crate::precise::complex_from_f64;
use crate::scalar::{Rational, Scalar};
use crate::series::{DoubleSeries, Poly2};

/// Transform settings applied before fitting.
#[derive(Debug, Clone, PartialEq)]
pub struct Workflow<T> {
    pub rotate_pm: bool,
    pub offset: Poly2<T>,
}

impl<T: Scalar> Default for Workflow<T> {
    fn default() -> Self {
        Self { rotate_pm: false, offset: Poly2::zero() }
    }
}

/// A fitted approximant together with the transforms that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedWorkflow<T> {
    pub approximant: ChisholmApproximant<T>,
    pub report: FitReport,
    pub workflow: Workflow<T>,
}

impl<T: Scalar> Workflow<T> {
    pub fn new(rotate_pm: bool, offset: Poly2<T>) -> Self {
        Self { rotate_pm, offset }
    }

    /// The series actually handed to the fitter.
    pub fn prepare(&self, series: &DoubleSeries<T>) -> Result<DoubleSeries<T>> {
        let rotated = if self.rotate_pm { series.rotate_pm()? } else { series.clone() };
        Ok(rotated.add_polynomial(&self.offset))
    }

    pub fn fit(&self, series: &DoubleSeries<T>, order: usize) -> Result<FittedWorkflow<T>> {
        let prepared = self.prepare(series)?;
        let (normalized, scale) = prepared.scale_to_unit_constant()?;
        let (approximant, report) = fit_diagonal(&normalized, order)?;
        Ok(FittedWorkflow { approximant: approximant.scaled(&scale), report, workflow: self.clone() })
    }

    /// Maps original coordinates to the fit variables.
    pub fn to_fit_coordinates(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        if self.rotate_pm {
            (0.5 * (x + y), 0.5 * (y - x))
        } else {
            (x, y)
        }
    }
}

impl<T: Scalar> Workflow<T> {
    /// Binary64 value of a fit made by this workflow, at original coordinates.
    pub fn evaluate(&self, approximant: &ChisholmApproximant<T>, x: Complex64, y: Complex64) -> Result<Complex64> {
        let (u, v) = self.to_fit_coordinates(x, y);
        let (a, b) = approximant.center();
        let offset = self.offset.evaluate(u - a.to_f64(), v - b.to_f64());
        Ok(approximant.evaluate_mapped(u, v)? - offset)
    }
}

impl Workflow<Rational> {
    /// High-precision value at an exact original point.
    pub fn evaluate_precise(
        &self,
        approximant: &ChisholmApproximant<Rational>,
        x: &Complex<Rational>,
        y: &Complex<Rational>,
    ) -> Result<Complex64> {
        let (u, v) = if self.rotate_pm {
            let half = Rational::from_ratio(1, 2);
            ((x + y).scale(half.clone()), (y - x).scale(half))
        } else {
            (x.clone(), y.clone())
        };
        let value = approximant.evaluate_precise(&u, &v)?;
        let (a, b) = approximant.center();
        let du = Complex::new(&u.re - a, u.im.clone());
        let dv = Complex::new(&v.re - b, v.im.clone());
        let zero = Complex::new(Rational::zero(), Rational::zero());
        let offset = self.offset.terms.iter().fold(zero, |acc, ((m, n), c)| {
            acc + du.powu(*m as u32) * dv.powu(*n as u32) * c.clone()
        });
        Ok(value - Complex64::new(offset.re.to_f64(), offset.im.to_f64()))
    }
}

impl<T: Scalar> FittedWorkflow<T> {
    /// Binary64 value at original coordinates.
    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Result<Complex64> {
        self.workflow.evaluate(&self.approximant, x, y)
    }
}

impl FittedWorkflow<Rational> {
    /// High-precision value at an exact original point.
    pub fn evaluate_precise(&self, x: &Complex<Rational>, y: &Complex<Rational>) -> Result<Complex64> {
        self.workflow.evaluate_precise(&self.approximant, x, y)
    }

    /// High-precision value at a real point given in binary64.
    pub fn evaluate_precise_f64(&self, x: f64, y: f64) -> Result<f64> {
        let x = complex_from_f64(Complex64::new(x, 0.0))?;
        let y = complex_from_f64(Complex64::new(y, 0.0))?;
        Ok(self.evaluate_precise(&x, &y)?.re)
    }
}
