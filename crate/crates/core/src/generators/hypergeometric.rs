//! Gauss and Appell hypergeometric series and the mapped pieces used to
//! continue them beyond their convergence regions.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use statrs::function::gamma::gamma;

use crate::chisholm::ChisholmApproximant;
use crate::error::{Error, Result};
use crate::precise;
use crate::scalar::{format_rational, Rational, Scalar};
use crate::series::{DoubleSeries, UniSeries};

/// Rising factorial `x (x+1) … (x+k−1)`.
pub fn pochhammer<T: Scalar>(x: &T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| acc * (x.clone() + T::from_i64(i as i64)))
}

/// `(x)_k` for all `k ≤ max`.
fn pochhammer_table(x: &Rational, max: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(Rational::one());
    for i in 0..max {
        let next = &out[i] * (x + Rational::from_integer(BigInt::from(i)));
        out.push(next);
    }
    out
}

/// `(x)_k` for signed `k`, using `(x)_{−k} = (−1)^k / (1−x)_k`.
fn pochhammer_signed(x: &Rational, k: i64, name: &str) -> Result<Rational> {
    if k >= 0 {
        return Ok(pochhammer(x, k as usize));
    }
    let den = pochhammer(&(Rational::one() - x), k.unsigned_abs() as usize);
    if den.is_zero() {
        return Err(pole(name, x));
    }
    let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
    Ok(sign / den)
}

fn pole(name: &str, value: &Rational) -> Error {
    Error::ParameterPole { name: name.to_string(), value: format_rational(value) }
}

fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && *x <= Rational::zero()
}

fn inverse_factorials(max: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(max + 1);
    let mut f = BigInt::one();
    for k in 0..=max {
        if k > 0 {
            f *= k;
        }
        out.push(Rational::new(BigInt::one(), f.clone()));
    }
    out
}

fn origin() -> (Rational, Rational) {
    (Rational::zero(), Rational::zero())
}

/// `₂F₁(a, b; c; z) = Σ (a)_n (b)_n / (c)_n · zⁿ/n!`.
pub fn gauss_2f1(a: &Rational, b: &Rational, c: &Rational, degree: usize) -> Result<UniSeries<Rational>> {
    if is_nonpositive_integer(c) {
        return Err(pole("c", c));
    }
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut term = Rational::one();
    for n in 0..=degree {
        coeffs.push(term.clone());
        let k = Rational::from_integer(BigInt::from(n));
        term = term * (a + &k) * (b + &k) / ((c + &k) * (&k + Rational::one()));
    }
    Ok(UniSeries::new(Rational::zero(), coeffs))
}

/// Appell `F₁`: `(a)_{m+n} (b₁)_m (b₂)_n / ((c)_{m+n} m! n!)`.
pub fn appell_f1(a: &Rational, b1: &Rational, b2: &Rational, c: &Rational, degree: usize) -> Result<DoubleSeries<Rational>> {
    if is_nonpositive_integer(c) {
        return Err(pole("c", c));
    }
    let pa = pochhammer_table(a, degree);
    let pc = pochhammer_table(c, degree);
    let p1 = pochhammer_table(b1, degree);
    let p2 = pochhammer_table(b2, degree);
    let inv = inverse_factorials(degree);
    Ok(DoubleSeries::from_fn(origin(), degree, |m, n| {
        &pa[m + n] / &pc[m + n] * &p1[m] * &inv[m] * &p2[n] * &inv[n]
    }))
}

/// Appell `F₂`: `(a)_{m+n} (b₁)_m (b₂)_n / ((c₁)_m (c₂)_n m! n!)`, convergent for `|x|+|y| < 1`.
pub fn appell_f2(
    a: &Rational,
    b1: &Rational,
    b2: &Rational,
    c1: &Rational,
    c2: &Rational,
    degree: usize,
) -> Result<DoubleSeries<Rational>> {
    for (name, v) in [("c1", c1), ("c2", c2)] {
        if is_nonpositive_integer(v) {
            return Err(pole(name, v));
        }
    }
    let pa = pochhammer_table(a, degree);
    let p1 = pochhammer_table(b1, degree);
    let p2 = pochhammer_table(b2, degree);
    let q1 = pochhammer_table(c1, degree);
    let q2 = pochhammer_table(c2, degree);
    let inv = inverse_factorials(degree);
    Ok(DoubleSeries::from_fn(origin(), degree, |m, n| {
        &pa[m + n] * &p1[m] / &q1[m] * &inv[m] * &p2[n] / &q2[n] * &inv[n]
    }))
}

/// Change of variables from the physical point `(x, y)` to a component's fit variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordinateMap {
    Identity,
    /// `(x/(x−1), y/(y−1))`
    Euler,
    /// `(−x/y, 1/y)`
    NegXOverYInvY,
    /// `(1/x, 1/y)`
    InvXInvY,
    /// `(1/x, x/y)`
    InvXXOverY,
}

impl CoordinateMap {
    pub fn apply(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Self::Identity => (x, y),
            Self::Euler => (x / (x - one), y / (y - one)),
            Self::NegXOverYInvY => (-x / y, one / y),
            Self::InvXInvY => (one / x, one / y),
            Self::InvXXOverY => (one / x, x / y),
        }
    }
}

/// Base of a power factor in a prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerBase {
    OneMinusX,
    OneMinusY,
    NegX,
    NegY,
}

/// Principal power, with negative reals taken on the upper side of the cut.
///
/// For `(−x)^e` this is the value for `x − i0`.
pub fn principal_power(w: Complex64, e: f64) -> Complex64 {
    if w.im == 0.0 && w.re < 0.0 {
        Complex64::from_polar((-w.re).powf(e), std::f64::consts::PI * e)
    } else if w.re == 0.0 && w.im == 0.0 {
        if e > 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        }
    } else {
        w.powf(e)
    }
}

/// `Π Γ(numer) / Π Γ(denom) · Π base^exponent`.
#[derive(Debug, Clone, PartialEq)]
pub struct Prefactor {
    pub gamma_numer: Vec<Rational>,
    pub gamma_denom: Vec<Rational>,
    pub powers: Vec<(PowerBase, Rational)>,
}

impl Prefactor {
    pub fn unit() -> Self {
        Self { gamma_numer: Vec::new(), gamma_denom: Vec::new(), powers: Vec::new() }
    }

    /// Constant gamma-ratio part; a pole of `1/Γ` makes it zero.
    pub fn gamma_ratio(&self) -> Result<f64> {
        if let Some(bad) = self.gamma_numer.iter().find(|g| is_nonpositive_integer(g)) {
            return Err(pole("gamma argument", bad));
        }
        if self.gamma_denom.iter().any(is_nonpositive_integer) {
            return Ok(0.0);
        }
        let num: f64 = self.gamma_numer.iter().map(|g| gamma(g.to_f64())).product();
        let den: f64 = self.gamma_denom.iter().map(|g| gamma(g.to_f64())).product();
        Ok(num / den)
    }

    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let mut value = Complex64::new(self.gamma_ratio()?, 0.0);
        for (base, e) in &self.powers {
            let w = match base {
                PowerBase::OneMinusX => one - x,
                PowerBase::OneMinusY => one - y,
                PowerBase::NegX => -x,
                PowerBase::NegY => -y,
            };
            value *= principal_power(w, e.to_f64());
        }
        Ok(value)
    }
}

/// One term `prefactor(x, y) · S(X, Y)` of a continuation formula.
#[derive(Debug, Clone, PartialEq)]
pub struct MappedComponent {
    pub series: DoubleSeries<Rational>,
    pub prefactor: Prefactor,
    pub map: CoordinateMap,
}

impl MappedComponent {
    /// Value using a rational approximant of this component's series.
    pub fn evaluate_with(&self, approximant: &ChisholmApproximant<Rational>, x: Complex64, y: Complex64) -> Result<Complex64> {
        let (u, v) = self.map.apply(x, y);
        let pre = self.prefactor.evaluate(x, y)?;
        if pre == Complex64::new(0.0, 0.0) {
            return Ok(pre);
        }
        let u = precise::complex_from_f64(u)?;
        let v = precise::complex_from_f64(v)?;
        Ok(pre * approximant.evaluate_precise(&u, &v)?)
    }

    /// Value using the truncated series itself.
    pub fn evaluate_partial_sum(&self, x: Complex64, y: Complex64) -> Result<Complex64> {
        let (u, v) = self.map.apply(x, y);
        Ok(self.prefactor.evaluate(x, y)? * self.series.partial_sum(u, v))
    }
}

/// Sum of mapped components fitted with one approximant each.
pub fn assemble(components: &[MappedComponent], approximants: &[ChisholmApproximant<Rational>], x: Complex64, y: Complex64) -> Result<Complex64> {
    if components.len() != approximants.len() {
        return Err(Error::DimensionMismatch { expected: components.len(), found: approximants.len() });
    }
    components
        .iter()
        .zip(approximants)
        .try_fold(Complex64::new(0.0, 0.0), |acc, (c, ca)| Ok(acc + c.evaluate_with(ca, x, y)?))
}

/// `F₁(a; b₁, b₂; c; x, y) = (1−x)^{−b₁} (1−y)^{−b₂} F₁(c−a; b₁, b₂; c; x/(x−1), y/(y−1))`.
pub fn appell_f1_transformed(a: &Rational, b1: &Rational, b2: &Rational, c: &Rational, degree: usize) -> Result<MappedComponent> {
    Ok(MappedComponent {
        series: appell_f1(&(c - a), b1, b2, c, degree)?,
        prefactor: Prefactor {
            gamma_numer: Vec::new(),
            gamma_denom: Vec::new(),
            powers: vec![(PowerBase::OneMinusX, -b1.clone()), (PowerBase::OneMinusY, -b2.clone())],
        },
        map: CoordinateMap::Euler,
    })
}

/// The three double series continuing `F₂` to large `|x|`, `|y|`, each with
/// `c₀₀ = 1`, its gamma/power prefactor and its argument map.
pub fn appell_f2_ac_components(
    a: &Rational,
    b1: &Rational,
    b2: &Rational,
    c1: &Rational,
    c2: &Rational,
    degree: usize,
) -> Result<[MappedComponent; 3]> {
    let one = Rational::one();
    let inv = inverse_factorials(degree);
    let check = |name: &str, v: &Rational| if is_nonpositive_integer(v) { Err(pole(name, v)) } else { Ok(()) };

    let first = {
        let (u, w, d) = (a - c2 + &one, a - b2 + &one, c1.clone());
        check("a-b2+1", &w)?;
        check("c1", &d)?;
        let pb1 = pochhammer_table(b1, degree);
        let pa = pochhammer_table(a, degree);
        let pu = pochhammer_table(&u, degree);
        let pw = pochhammer_table(&w, degree);
        let pd = pochhammer_table(&d, degree);
        MappedComponent {
            series: DoubleSeries::from_fn(origin(), degree, |m, n| {
                &pb1[m] * &pa[m + n] * &pu[m + n] / (&pd[m] * &pw[m + n]) * &inv[m] * &inv[n]
            }),
            prefactor: Prefactor {
                gamma_numer: vec![c2.clone(), b2 - a],
                gamma_denom: vec![b2.clone(), c2 - a],
                powers: vec![(PowerBase::NegY, -a.clone())],
            },
            map: CoordinateMap::NegXOverYInvY,
        }
    };

    let second = {
        let s = b1 + b2 - a + &one;
        check("b1+b2-a+1", &s)?;
        let pb1 = pochhammer_table(b1, degree);
        let pb2 = pochhammer_table(b2, degree);
        let pe1 = pochhammer_table(&(b1 - c1 + &one), degree);
        let pe2 = pochhammer_table(&(b2 - c2 + &one), degree);
        let ps = pochhammer_table(&s, degree);
        MappedComponent {
            series: DoubleSeries::from_fn(origin(), degree, |m, n| {
                &pb1[m] * &pb2[n] * &pe1[m] * &pe2[n] / &ps[m + n] * &inv[m] * &inv[n]
            }),
            prefactor: Prefactor {
                gamma_numer: vec![c1.clone(), c2.clone(), a - b1 - b2],
                gamma_denom: vec![a.clone(), c1 - b1, c2 - b2],
                powers: vec![(PowerBase::NegX, -b1.clone()), (PowerBase::NegY, -b2.clone())],
            },
            map: CoordinateMap::InvXInvY,
        }
    };

    let third = {
        let pb2 = pochhammer_table(b2, degree);
        let pe2 = pochhammer_table(&(b2 - c2 + &one), degree);
        let g1 = a - b2;
        let g2 = a - b2 - c1 + &one;
        let h = a - b1 - b2 + &one;
        let mut series = DoubleSeries::zero(origin(), degree);
        for m in 0..=degree {
            for n in 0..=degree - m {
                let k = m as i64 - n as i64;
                let num = pochhammer_signed(&g1, k, "a-b2")? * pochhammer_signed(&g2, k, "a-b2-c1+1")?;
                let den = pochhammer_signed(&h, k, "a-b1-b2+1")?;
                if den.is_zero() {
                    return Err(pole("a-b1-b2+1", &h));
                }
                let c = &pb2[n] * &pe2[n] * num / den * &inv[m] * &inv[n];
                series.set(m, n, c)?;
            }
        }
        MappedComponent {
            series,
            prefactor: Prefactor {
                gamma_numer: vec![c1.clone(), c2.clone(), g1.clone(), b1 + b2 - a],
                gamma_denom: vec![a.clone(), b1.clone(), c2 - b2, b2 + c1 - a],
                powers: vec![(PowerBase::NegX, b2 - a), (PowerBase::NegY, -b2.clone())],
            },
            map: CoordinateMap::InvXXOverY,
        }
    };
    let components = [first, second, third];
    for comp in &components {
        comp.prefactor.gamma_ratio()?;
    }
    Ok(components)
}

/// `Σ_{m,n < depth} c_mn xᵐ yⁿ` with `c₀₀ = 1`, built from the coefficient
/// ratios `c_{m+1,n}/c_mn` and `c_{m,n+1}/c_mn` to avoid overflow.
pub(crate) fn double_sum(
    depth: usize,
    x: Complex64,
    y: Complex64,
    ratio_x: impl Fn(f64, f64) -> f64,
    ratio_y: impl Fn(f64, f64) -> f64,
) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    let mut head = Complex64::new(1.0, 0.0);
    for m in 0..depth {
        let mut term = head;
        for n in 0..depth {
            total += term;
            term *= y * ratio_y(m as f64, n as f64);
        }
        head *= x * ratio_x(m as f64, 0.0);
    }
    total
}

/// Depth-limited partial sum of Appell `F₁`.
pub fn appell_f1_partial_sum(a: f64, b1: f64, b2: f64, c: f64, x: Complex64, y: Complex64, depth: usize) -> Complex64 {
    double_sum(
        depth,
        x,
        y,
        |m, n| (a + m + n) * (b1 + m) / ((c + m + n) * (m + 1.0)),
        |m, n| (a + m + n) * (b2 + n) / ((c + m + n) * (n + 1.0)),
    )
}

/// Depth-limited partial sum of Appell `F₂`.
#[allow(clippy::too_many_arguments)]
pub fn appell_f2_partial_sum(a: f64, b1: f64, b2: f64, c1: f64, c2: f64, x: Complex64, y: Complex64, depth: usize) -> Complex64 {
    double_sum(
        depth,
        x,
        y,
        |m, n| (a + m + n) * (b1 + m) / ((c1 + m) * (m + 1.0)),
        |m, n| (a + m + n) * (b2 + n) / ((c2 + n) * (n + 1.0)),
    )
}
