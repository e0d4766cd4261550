//! Truncated one- and two-variable Taylor series with an explicit known-support mask.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Scalar};

/// Position of `x^m y^n` in the total-degree-ordered triangle.
fn index(m: usize, n: usize) -> usize {
    let t = m + n;
    t * (t + 1) / 2 + n
}

fn triangle_len(degree: usize) -> usize {
    (degree + 1) * (degree + 2) / 2
}

/// Truncated two-variable series `Σ c_mn (x−a)^m (y−b)^n` over total degree ≤ `degree`.
///
/// Entries inside the triangle are either known (possibly zero) or unknown;
/// everything above the degree bound is unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleSeries<T> {
    center: (T, T),
    degree: usize,
    coeffs: Vec<Option<T>>,
}

impl<T: Scalar> DoubleSeries<T> {
    /// All coefficients known and zero.
    pub fn zero(center: (T, T), degree: usize) -> Self {
        Self { center, degree, coeffs: vec![Some(T::zero()); triangle_len(degree)] }
    }

    pub fn from_fn(center: (T, T), degree: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut s = Self::zero(center, degree);
        for t in 0..=degree {
            for n in 0..=t {
                s.coeffs[index(t - n, n)] = Some(f(t - n, n));
            }
        }
        s
    }

    /// Builds a series from listed terms; unlisted indices within `degree` are zero.
    pub fn from_terms(
        center: (T, T),
        degree: usize,
        terms: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self> {
        let mut s = Self::zero(center, degree);
        for (m, n, c) in terms {
            if m + n > degree {
                return Err(Error::InvalidInput(format!(
                    "term ({m},{n}) exceeds the degree bound {degree}"
                )));
            }
            s.coeffs[index(m, n)] = Some(c);
        }
        Ok(s)
    }

    pub fn center(&self) -> &(T, T) {
        &self.center
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Known coefficient of `x^m y^n`, or `None` when unknown.
    pub fn coefficient(&self, m: usize, n: usize) -> Option<&T> {
        if m + n > self.degree {
            return None;
        }
        self.coeffs[index(m, n)].as_ref()
    }

    pub fn is_known(&self, m: usize, n: usize) -> bool {
        self.coefficient(m, n).is_some()
    }

    pub fn set(&mut self, m: usize, n: usize, value: T) -> Result<()> {
        if m + n > self.degree {
            return Err(Error::InvalidInput(format!(
                "term ({m},{n}) exceeds the degree bound {}",
                self.degree
            )));
        }
        self.coeffs[index(m, n)] = Some(value);
        Ok(())
    }

    /// Marks `x^m y^n` as not supplied.
    pub fn forget(&mut self, m: usize, n: usize) {
        if m + n <= self.degree {
            self.coeffs[index(m, n)] = None;
        }
    }

    /// Known terms in total-degree order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        (0..=self.degree).flat_map(move |t| {
            (0..=t).filter_map(move |n| self.coeffs[index(t - n, n)].as_ref().map(|c| (t - n, n, c)))
        })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DoubleSeries<U> {
        DoubleSeries {
            center: (f(&self.center.0), f(&self.center.1)),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c.as_ref().map(&f)).collect(),
        }
    }

    pub fn to_float(&self) -> DoubleSeries<f64> {
        self.map(|c| c.to_f64())
    }

    /// Copy truncated to a smaller degree bound.
    pub fn truncate(&self, degree: usize) -> Self {
        let degree = degree.min(self.degree);
        Self {
            center: self.center.clone(),
            degree,
            coeffs: self.coeffs[..triangle_len(degree)].to_vec(),
        }
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        let mut out = self.clone();
        out.center = (self.center.1.clone(), self.center.0.clone());
        for t in 0..=self.degree {
            for n in 0..=t {
                out.coeffs[index(t - n, n)] = self.coeffs[index(n, t - n)].clone();
            }
        }
        out
    }

    /// Indices a diagonal `[M/M]` fit needs but the series does not supply:
    /// every `α+β ≤ 2M+1` except the pure powers of degree `2M+1`.
    pub fn missing_for_chisholm(&self, order: usize) -> Vec<(usize, usize)> {
        let top = 2 * order + 1;
        let mut missing = Vec::new();
        for t in 0..=top {
            for n in 0..=t {
                let m = t - n;
                if t == top && (m == 0 || n == 0) {
                    continue;
                }
                if !self.is_known(m, n) {
                    missing.push((m, n));
                }
            }
        }
        missing
    }

    pub fn has_chisholm_support(&self, order: usize) -> (bool, Vec<(usize, usize)>) {
        let missing = self.missing_for_chisholm(order);
        (missing.is_empty(), missing)
    }

    /// Divides by `c₀₀`, returning the normalized series and the factor.
    pub fn scale_to_unit_constant(&self) -> Result<(Self, T)> {
        let c00 = match self.coefficient(0, 0) {
            Some(c) if !c.is_zero() => c.clone(),
            Some(_) => {
                return Err(Error::NotNormalized(
                    "constant term is zero; add an offset such as 1+x+y before fitting".into(),
                ))
            }
            None => return Err(Error::NotNormalized("constant term is unknown".into())),
        };
        if c00.is_one() {
            return Ok((self.clone(), c00));
        }
        let mut out = self.clone();
        for c in out.coeffs.iter_mut().flatten() {
            *c = c.clone() / c00.clone();
        }
        Ok((out, c00))
    }

    /// Adds a polynomial; its terms become known, terms above the bound are dropped.
    pub fn add_polynomial(&self, p: &Poly2<T>) -> Self {
        let mut out = self.clone();
        for ((m, n), c) in &p.terms {
            if m + n <= self.degree {
                let slot = &mut out.coeffs[index(*m, *n)];
                *slot = Some(slot.clone().unwrap_or_else(T::zero) + c.clone());
            }
        }
        out
    }

    /// Re-expands `f(x_old, y_old)` with `x_old = α x + β y`, `y_old = γ x + δ y`.
    ///
    /// Degree levels containing an unknown input become unknown.
    pub fn substitute_linear(&self, [[alpha, beta], [gamma, delta]]: [[T; 2]; 2]) -> Self {
        let d = self.degree;
        let lx = UniPoly2::linear(alpha, beta);
        let ly = UniPoly2::linear(gamma, delta);
        let xp = lx.powers(d);
        let yp = ly.powers(d);
        let mut out = Self {
            center: self.center.clone(),
            degree: d,
            coeffs: vec![Some(T::zero()); triangle_len(d)],
        };
        for t in 0..=d {
            let level_known = (0..=t).all(|n| self.coeffs[index(t - n, n)].is_some());
            if !level_known {
                for n in 0..=t {
                    out.coeffs[index(t - n, n)] = None;
                }
                continue;
            }
            let mut level = vec![T::zero(); t + 1];
            for n in 0..=t {
                let m = t - n;
                let c = self.coeffs[index(m, n)].as_ref().expect("level known");
                if c.is_zero() {
                    continue;
                }
                let prod = xp[m].mul(&yp[n]);
                for (k, v) in prod.coeffs.into_iter().enumerate() {
                    if !v.is_zero() {
                        level[k] = level[k].clone() + c.clone() * v;
                    }
                }
            }
            for (n, v) in level.into_iter().enumerate() {
                out.coeffs[index(t - n, n)] = Some(v);
            }
        }
        out
    }

    /// Substitutes `z₁ = x − y`, `z₂ = x + y` into a series in `(z₁, z₂)`.
    pub fn rotate_pm(&self) -> Result<Self> {
        self.require_origin("rotate_pm")?;
        let one = T::one();
        Ok(self.substitute_linear([[one.clone(), -one.clone()], [one.clone(), one]]))
    }

    /// Inverse of [`rotate_pm`](Self::rotate_pm): `x = (z₁+z₂)/2`, `y = (z₂−z₁)/2`.
    pub fn unrotate_pm(&self) -> Result<Self> {
        self.require_origin("unrotate_pm")?;
        let h = T::from_ratio(1, 2);
        Ok(self.substitute_linear([[h.clone(), h.clone()], [-h.clone(), h]]))
    }

    fn require_origin(&self, op: &str) -> Result<()> {
        if self.center.0.is_zero() && self.center.1.is_zero() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("{op} requires a series centred at the origin")))
        }
    }

    /// Composes with `x = sx(u)`, `y = sy(v)`, truncating at total degree `degree`.
    pub fn compose_separable(&self, map: &SeparableMap<T>, degree: usize) -> Result<Self> {
        if degree > self.degree {
            return Err(Error::InvalidInput(format!(
                "composition degree {degree} exceeds the series bound {}",
                self.degree
            )));
        }
        let xp = map.sx.powers(degree);
        let yp = map.sy.powers(degree);
        let zero = T::zero();
        let mut out = Self::zero((zero.clone(), zero), degree);
        let mut unknown = vec![false; triangle_len(degree)];
        for t in 0..=degree {
            for n in 0..=t {
                let m = t - n;
                let Some(c) = self.coeffs[index(m, n)].as_ref() else {
                    for i in m..=degree {
                        for j in n..=degree - i {
                            unknown[index(i, j)] = true;
                        }
                    }
                    continue;
                };
                if c.is_zero() {
                    continue;
                }
                for i in m..=degree - n {
                    let a = &xp[m].coeffs[i];
                    if a.is_zero() {
                        continue;
                    }
                    let ca = c.clone() * a.clone();
                    for j in n..=degree - i {
                        let b = &yp[n].coeffs[j];
                        if b.is_zero() {
                            continue;
                        }
                        let slot = out.coeffs[index(i, j)].as_mut().expect("initialized");
                        *slot = slot.clone() + ca.clone() * b.clone();
                    }
                }
            }
        }
        for (slot, u) in out.coeffs.iter_mut().zip(unknown) {
            if u {
                *slot = None;
            }
        }
        Ok(out)
    }

    /// Product truncated at total degree `degree`; unknown inputs make the affected outputs unknown.
    pub fn mul_truncated(&self, other: &Self, degree: usize) -> Self {
        let mut out = Self::zero(self.center.clone(), degree);
        for t in 0..=degree {
            for n in 0..=t {
                let m = t - n;
                let mut acc = Some(T::zero());
                'sum: for i in 0..=m {
                    for j in 0..=n {
                        let (Some(a), Some(b)) =
                            (self.coefficient(i, j), other.coefficient(m - i, n - j))
                        else {
                            acc = None;
                            break 'sum;
                        };
                        if !a.is_zero() && !b.is_zero() {
                            acc = acc.map(|s| s + a.clone() * b.clone());
                        }
                    }
                }
                out.coeffs[index(m, n)] = acc;
            }
        }
        out
    }

    /// Series `d` with `self · d ≡ 1` through total degree `degree`; requires `c₀₀ = 1`.
    pub fn truncated_reciprocal(&self, degree: usize) -> Result<Self> {
        match self.coefficient(0, 0) {
            Some(c) if c.is_one() => {}
            _ => return Err(Error::NotNormalized("reciprocal requires c00 = 1".into())),
        }
        let mut d: Vec<Option<T>> = vec![None; triangle_len(degree)];
        d[0] = Some(T::one());
        for t in 1..=degree {
            for n in 0..=t {
                let m = t - n;
                let mut acc = Some(T::zero());
                'sum: for i in 0..=m {
                    for j in 0..=n {
                        if i == 0 && j == 0 {
                            continue;
                        }
                        let (Some(c), Some(prev)) =
                            (self.coefficient(i, j), d[index(m - i, n - j)].as_ref())
                        else {
                            acc = None;
                            break 'sum;
                        };
                        if !c.is_zero() && !prev.is_zero() {
                            acc = acc.map(|s| s - c.clone() * prev.clone());
                        }
                    }
                }
                d[index(m, n)] = acc;
            }
        }
        Ok(Self { center: self.center.clone(), degree, coeffs: d })
    }

    /// The one-variable series `Σ c_{m,0} (x−a)^m`, cut at the first unknown coefficient.
    pub fn slice_y0(&self) -> UniSeries<T> {
        let coeffs = (0..=self.degree).map_while(|m| self.coefficient(m, 0).cloned()).collect();
        UniSeries { center: self.center.0.clone(), coeffs }
    }

    /// Partial sum of the known terms at `(x, y)`, in binary64.
    pub fn partial_sum(&self, x: Complex64, y: Complex64) -> Complex64 {
        let dx = x - self.center.0.to_f64();
        let dy = y - self.center.1.to_f64();
        let mut total = Complex64::new(0.0, 0.0);
        let mut xm = Complex64::new(1.0, 0.0);
        for m in 0..=self.degree {
            let mut row = Complex64::new(0.0, 0.0);
            let mut yn = Complex64::new(1.0, 0.0);
            for n in 0..=self.degree - m {
                if let Some(c) = self.coefficient(m, n) {
                    row += yn * c.to_f64();
                }
                yn *= dy;
            }
            total += xm * row;
            xm *= dx;
        }
        total
    }
}

/// Homogeneous polynomial in `(x, y)`, stored by power of `y`.
#[derive(Debug, Clone)]
struct UniPoly2<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly2<T> {
    fn linear(a: T, b: T) -> Self {
        Self { coeffs: vec![a, b] }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Self { coeffs }
    }

    fn powers(&self, max: usize) -> Vec<Self> {
        let mut out = vec![Self { coeffs: vec![T::one()] }];
        for k in 1..=max {
            let next = out[k - 1].mul(self);
            out.push(next);
        }
        out
    }
}

/// Truncated one-variable series `Σ a_k (x−a)^k`; every listed coefficient is known.
#[derive(Debug, Clone, PartialEq)]
pub struct UniSeries<T> {
    pub center: T,
    pub coeffs: Vec<T>,
}

impl<T: Scalar> UniSeries<T> {
    pub fn new(center: T, coeffs: Vec<T>) -> Self {
        Self { center, coeffs }
    }

    pub fn from_fn(center: T, degree: usize, f: impl FnMut(usize) -> T) -> Self {
        Self { center, coeffs: (0..=degree).map(f).collect() }
    }

    /// Highest power present; an empty series has no degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn mul_truncated(&self, other: &Self, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(degree + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(degree + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Self { center: self.center.clone(), coeffs }
    }

    /// `self^k` for `k = 0..=degree`, each truncated at `degree`.
    pub fn powers(&self, degree: usize) -> Vec<Self> {
        let mut one = vec![T::zero(); degree + 1];
        one[0] = T::one();
        let mut out = vec![Self { center: self.center.clone(), coeffs: one }];
        for k in 1..=degree {
            let next = out[k - 1].mul_truncated(self, degree);
            out.push(next);
        }
        out
    }

    pub fn partial_sum(&self, x: Complex64) -> Complex64 {
        let dx = x - self.center.to_f64();
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * dx + c.to_f64())
    }
}

/// Separable substitution `x = sx(u)`, `y = sy(v)` with `sx(0) = sy(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableMap<T> {
    sx: UniSeries<T>,
    sy: UniSeries<T>,
}

impl<T: Scalar> SeparableMap<T> {
    pub fn new(sx: UniSeries<T>, sy: UniSeries<T>) -> Result<Self> {
        let zero_constant = |s: &UniSeries<T>| s.coeffs.first().is_none_or(|c| c.is_zero());
        if !zero_constant(&sx) || !zero_constant(&sy) {
            return Err(Error::InvalidInput("separable map needs zero constant terms".into()));
        }
        Ok(Self { sx, sy })
    }

    pub fn identity(degree: usize) -> Self {
        let id = UniSeries::from_fn(T::zero(), degree, |k| if k == 1 { T::one() } else { T::zero() });
        Self { sx: id.clone(), sy: id }
    }

    /// `t ↦ A t / (1 − B t) = Σ A B^{k−1} t^k` applied to both variables.
    pub fn homographic(a: T, b: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        let mut term = a;
        for c in coeffs.iter_mut().skip(1) {
            *c = term.clone();
            term = term * b.clone();
        }
        let s = UniSeries::new(T::zero(), coeffs);
        Self { sx: s.clone(), sy: s }
    }

    pub fn sx(&self) -> &UniSeries<T> {
        &self.sx
    }

    pub fn sy(&self) -> &UniSeries<T> {
        &self.sy
    }
}

/// Small polynomial in `x, y` used for offsets, e.g. `1+x+y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2<T> {
    pub terms: Vec<((usize, usize), T)>,
}

impl<T: Scalar> Poly2<T> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_zero())
    }

    /// Parses sums of terms like `3/2*x^2*y`, `-y`, `1`.
    pub fn parse(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(Self::zero());
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E' | b'^') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        let mut terms: Vec<((usize, usize), T)> = Vec::new();
        for piece in pieces {
            let (sign, body) = match piece.as_bytes()[0] {
                b'-' => (-T::one(), &piece[1..]),
                b'+' => (T::one(), &piece[1..]),
                _ => (T::one(), piece),
            };
            let mut coeff = sign;
            let (mut px, mut py) = (0usize, 0usize);
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<usize>().map_err(|_| {
                            Error::InvalidInput(format!("bad exponent in polynomial '{text}'"))
                        })?,
                    ),
                    None => (factor, 1),
                };
                match base {
                    "x" => px += exp,
                    "y" => py += exp,
                    num => {
                        let r = parse_rational(num)?;
                        coeff = coeff * T::from_rational(&r);
                    }
                }
            }
            match terms.iter_mut().find(|(k, _)| *k == (px, py)) {
                Some((_, c)) => *c = c.clone() + coeff,
                None => terms.push(((px, py), coeff)),
            }
        }
        Ok(Self { terms })
    }

    pub fn total_degree(&self) -> usize {
        self.terms.iter().map(|((m, n), _)| m + n).max().unwrap_or(0)
    }

    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|((m, n), c)| x.powu(*m as u32) * y.powu(*n as u32) * c.to_f64())
            .sum()
    }
}

impl<T: Scalar> fmt::Display for Poly2<T> {
    /// Renders in the syntax accepted by [`Poly2::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((m, n), c) in self.terms.iter().filter(|(_, c)| !c.is_zero()) {
            let text = match c.to_json() {
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            };
            let mut factors: Vec<String> = Vec::new();
            let has_vars = m + n > 0;
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if !(has_vars && magnitude == "1") {
                factors.push(magnitude);
            }
            for (var, power) in [("x", *m), ("y", *n)] {
                match power {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    p => factors.push(format!("{var}^{p}")),
                }
            }
            if negative {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            f.write_str(&factors.join("*"))?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
