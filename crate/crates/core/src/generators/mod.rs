//! Truncated series for every function used in the examples and tables.

mod elementary;
mod hypergeometric;
mod special;

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};
use crate::series::{DoubleSeries, UniSeries};

pub use elementary::{
    elementary_series, elementary_series_at, elementary_series_at_scaled, elementary_series_scaled, elementary_value,
    exp_half_sum, log_one_plus_sum, sin_half_sum, sinh_half_sum, Elementary,
};
pub use hypergeometric::{
    appell_f1, appell_f1_partial_sum, appell_f1_transformed, appell_f2, appell_f2_ac_components,
    appell_f2_partial_sum, assemble, gauss_2f1, pochhammer, principal_power, CoordinateMap, MappedComponent,
    PowerBase, Prefactor,
};
pub use special::{
    cm2_denominator, cm2_function, ising_susceptibility, legendre_polynomials, li22, li22_at_one,
    li22_partial_sum_at_one, polynomial_generating_series,
};

/// Generator names with a one-line description.
pub const GENERATORS: &[(&str, &str)] = &[
    ("exp", "exp(k(x+y)); any centre; param k"),
    ("sin", "sin(k(x+y)); any centre; param k"),
    ("sinh", "sinh(k(x+y)); any centre; param k"),
    ("log", "log(1+k(x+y)); any centre with 1+k(a+b) > 0; param k"),
    ("2f1", "Gauss 2F1(a,b;c;z), one variable; params a,b,c"),
    ("f1", "Appell F1(a;b1,b2;c;x,y), |x|<1, |y|<1; params a,b1,b2,c"),
    ("f1t", "Appell F1 in the variables x/(x-1), y/(y-1), prefactor removed"),
    ("f2", "Appell F2(a;b1,b2;c1,c2;x,y), |x|+|y|<1; params a,b1,b2,c1,c2"),
    ("f2ac1", "first continuation sum of F2, in (-x/y, 1/y)"),
    ("f2ac2", "second continuation sum of F2, in (1/x, 1/y)"),
    ("f2ac3", "third continuation sum of F2, in (1/x, x/y)"),
    ("li22", "double polylogarithm Li_{2,2}(x,y)"),
    ("ising", "sum_{l>=0} P_l(z1) z2^l with Legendre P_l"),
    ("cm2", "1/(exp(z1 z2) - z2)"),
];

/// Default parameter values of a generator.
pub fn default_params(name: &str) -> &'static [(&'static str, &'static str)] {
    match name {
        "exp" | "sin" | "sinh" => &[("k", "1/2")],
        "log" => &[("k", "1")],
        "2f1" => &[("a", "1/2"), ("b", "1/3"), ("c", "1/5")],
        "f1" | "f1t" => &[("a", "1/2"), ("b1", "1/3"), ("b2", "1/5"), ("c", "1/7")],
        "f2" => &[("a", "3/10"), ("b1", "2/5"), ("b2", "3/17"), ("c1", "1/5"), ("c2", "1/7")],
        "f2ac1" | "f2ac2" | "f2ac3" => {
            &[("a", "123/100"), ("b1", "154/100"), ("b2", "167/100"), ("c1", "211/100"), ("c2", "239/100")]
        }
        _ => &[],
    }
}

/// A generated series: exact two-variable, binary64 two-variable, or exact one-variable.
#[derive(Debug, Clone, PartialEq)]
pub enum Generated {
    Exact(DoubleSeries<Rational>),
    Float(DoubleSeries<f64>),
    Univariate(UniSeries<Rational>),
}

/// Name, parameters, centre and degree bound of a generator call.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub name: String,
    pub params: BTreeMap<String, Rational>,
    pub center: (Rational, Rational),
    pub degree: usize,
}

impl GeneratorSpec {
    pub fn new(name: &str, degree: usize) -> Result<Self> {
        if !GENERATORS.iter().any(|(n, _)| *n == name) {
            return Err(Error::InvalidInput(format!("unknown generator '{name}'")));
        }
        if degree < 3 {
            return Err(Error::InvalidInput(format!("degree must be at least 3, got {degree}")));
        }
        let params = default_params(name)
            .iter()
            .map(|(k, v)| (k.to_string(), parse_rational(v).expect("valid default")))
            .collect();
        Ok(Self { name: name.to_string(), params, center: (Rational::zero(), Rational::zero()), degree })
    }

    pub fn with_center(mut self, center: (Rational, Rational)) -> Self {
        self.center = center;
        self
    }

    /// Overrides a named parameter; unknown names are rejected.
    pub fn with_param(mut self, key: &str, value: Rational) -> Result<Self> {
        match self.params.get_mut(key) {
            Some(slot) => *slot = value,
            None => {
                let known: Vec<&str> = self.params.keys().map(String::as_str).collect();
                return Err(Error::InvalidInput(format!(
                    "generator '{}' has no parameter '{key}' (known: {})",
                    self.name,
                    if known.is_empty() { "none".to_string() } else { known.join(", ") }
                )));
            }
        }
        Ok(self)
    }

    pub fn param(&self, key: &str) -> Result<&Rational> {
        self.params
            .get(key)
            .ok_or_else(|| Error::InvalidInput(format!("generator '{}' needs parameter '{key}'", self.name)))
    }

    fn at_origin(&self) -> bool {
        self.center.0.is_zero() && self.center.1.is_zero()
    }

    fn origin_only(&self) -> Result<()> {
        if self.at_origin() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("generator '{}' is only available at the origin", self.name)))
        }
    }

    fn elementary_kind(&self) -> Option<Elementary> {
        match self.name.as_str() {
            "exp" => Some(Elementary::ExpHalfSum),
            "sin" => Some(Elementary::SinHalfSum),
            "sinh" => Some(Elementary::SinhHalfSum),
            "log" => Some(Elementary::LogOnePlusSum),
            _ => None,
        }
    }

    /// Continuation components for the `f2ac*` family.
    pub fn f2_components(&self) -> Result<[MappedComponent; 3]> {
        let p = |k| self.param(k);
        appell_f2_ac_components(p("a")?, p("b1")?, p("b2")?, p("c1")?, p("c2")?, self.degree)
    }

    pub fn generate(&self) -> Result<Generated> {
        if let Some(kind) = self.elementary_kind() {
            let k = self.param("k")?;
            if self.at_origin() {
                return Ok(Generated::Exact(elementary_series_scaled(kind, k, self.degree)));
            }
            let center = (self.center.0.to_f64(), self.center.1.to_f64());
            let k = k.to_f64();
            if kind == Elementary::LogOnePlusSum && 1.0 + k * (center.0 + center.1) <= 0.0 {
                return Err(Error::InvalidInput("log(1+k(x+y)) needs 1+k(a+b) > 0 at the centre".into()));
            }
            return Ok(Generated::Float(elementary_series_at_scaled(kind, k, center, self.degree)));
        }
        self.origin_only()?;
        let p = |k| self.param(k);
        let d = self.degree;
        let series = match self.name.as_str() {
            "2f1" => return Ok(Generated::Univariate(gauss_2f1(p("a")?, p("b")?, p("c")?, d)?)),
            "f1" => appell_f1(p("a")?, p("b1")?, p("b2")?, p("c")?, d)?,
            "f1t" => appell_f1_transformed(p("a")?, p("b1")?, p("b2")?, p("c")?, d)?.series,
            "f2" => appell_f2(p("a")?, p("b1")?, p("b2")?, p("c1")?, p("c2")?, d)?,
            "f2ac1" | "f2ac2" | "f2ac3" => {
                let k = (self.name.as_bytes()[4] - b'1') as usize;
                let [c1, c2, c3] = self.f2_components()?;
                [c1, c2, c3].into_iter().nth(k).expect("three components").series
            }
            "li22" => li22(d),
            "ising" => ising_susceptibility(d),
            "cm2" => cm2_function(d)?,
            other => return Err(Error::InvalidInput(format!("unknown generator '{other}'"))),
        };
        Ok(Generated::Exact(series))
    }

    /// Closed-form or deep partial-sum value of the generated function.
    ///
    /// Hypergeometric references sum `depth` terms per index; `li22` is only
    /// available at `(1, 1)`.
    pub fn reference(&self, x: Complex64, y: Complex64, depth: usize) -> Result<Complex64> {
        let f = |k| self.param(k).map(Scalar::to_f64);
        if let Some(kind) = self.elementary_kind() {
            return Ok(elementary_value(kind, f("k")?, x, y));
        }
        let value = match self.name.as_str() {
            "f1" => appell_f1_partial_sum(f("a")?, f("b1")?, f("b2")?, f("c")?, x, y, depth),
            "f2" => appell_f2_partial_sum(f("a")?, f("b1")?, f("b2")?, f("c1")?, f("c2")?, x, y, depth),
            "ising" => (1.0 - 2.0 * x * y + y * y).sqrt().inv(),
            "cm2" => ((x * y).exp() - y).inv(),
            "li22" if x == Complex64::new(1.0, 0.0) && y == x => Complex64::new(li22_at_one(), 0.0),
            other => {
                return Err(Error::InvalidInput(format!(
                    "no reference value for '{other}' at ({x}, {y})"
                )))
            }
        };
        Ok(value)
    }

    /// `name a=.. b=..` summary for reports.
    pub fn describe(&self) -> String {
        let mut s = self.name.clone();
        for (k, v) in &self.params {
            s.push_str(&format!(" {k}={}", format_rational(v)));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(GeneratorSpec::new("nope", 5).is_err());
        assert!(GeneratorSpec::new("exp", 2).is_err());
        let s = GeneratorSpec::new("f2", 5).unwrap();
        assert_eq!(s.param("b2").unwrap(), &Rational::from_ratio(3, 17));
        assert!(s.clone().with_param("zz", Rational::zero()).is_err());
        let li = GeneratorSpec::new("li22", 5).unwrap().with_center((Rational::from_ratio(1, 2), Rational::zero()));
        assert!(li.generate().is_err());
    }

    #[test]
    fn every_generator_runs() {
        for (name, _) in GENERATORS {
            let g = GeneratorSpec::new(name, 6).unwrap().generate().unwrap();
            match g {
                Generated::Exact(s) => assert_eq!(s.degree(), 6),
                Generated::Univariate(u) => assert_eq!(u.coeffs.len(), 7),
                Generated::Float(_) => panic!("origin generators are exact"),
            }
        }
        let centred = GeneratorSpec::new("exp", 6)
            .unwrap()
            .with_center((Rational::from_integer(3.into()), Rational::from_integer(6.into())))
            .generate()
            .unwrap();
        assert!(matches!(centred, Generated::Float(_)));
    }

    #[test]
    fn references() {
        let spec = GeneratorSpec::new("f2", 5).unwrap();
        let v = spec.reference(Complex64::new(0.2, 0.0), Complex64::new(0.2, 0.0), 100).unwrap();
        assert!((v.re - 1.2989).abs() < 5e-5, "{v}");
        let li = GeneratorSpec::new("li22", 5).unwrap();
        assert!(li.reference(Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0), 10).is_err());
        let one = Complex64::new(1.0, 0.0);
        assert!((li.reference(one, one, 0).unwrap().re - 0.811742425283354).abs() < 1e-14);
    }
}
