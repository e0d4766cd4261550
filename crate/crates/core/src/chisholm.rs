//! Diagonal Chisholm approximants `[M/M]` of two-variable series.
//!
//! With `c₀₀ = a₀₀ = b₀₀ = 1`, write
//! `e_pq = Σ_{r ≤ min(p,M), s ≤ min(q,M)} b_rs c_{p−r,q−s} − a_pq [p ≤ M ∧ q ≤ M]`.
//! The fit imposes `e_pq = 0` for every `p+q ≤ 2M` and the `M` mirrored sums
//! `e_{2M+1−j,j} + e_{j,2M+1−j} = 0`, `j = 1..M`. Equations with `p > M` or
//! `q > M` involve only `b`, giving a square system of size `M² + 2M`; the
//! numerator then follows by convolution.

use num_complex::{Complex, Complex64};

use crate::error::{Error, Result};
use crate::linalg::{DenseSystem, LinearForm};
use crate::pade::{PadeApproximant, POLE_THRESHOLD};
use crate::precise::{self, FixedComplex};
use crate::scalar::{Rational, Scalar};
use crate::series::DoubleSeries;

/// `N(x−a, y−b) / D(x−a, y−b)`; grids are indexed `[power of x][power of y]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChisholmApproximant<T> {
    order: usize,
    center: (T, T),
    num: Vec<Vec<T>>,
    den: Vec<Vec<T>>,
}

/// Equation bookkeeping for one fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub order: usize,
    /// All consistency equations, numerator-defining ones included: `2M² + 4M`.
    pub equations_total: usize,
    /// Mirrored degree-`(2M+1)` equations: `M`.
    pub equations_symmetrized: usize,
    /// Size of the denominator system: `M² + 2M`.
    pub system_size: usize,
    /// Largest Taylor residual, reported by the float backend only.
    pub residual_max: Option<f64>,
}

/// Assembled denominator system plus the numerator convolutions.
#[derive(Debug, Clone)]
pub struct ChisholmSystem<T> {
    pub order: usize,
    pub system: DenseSystem<T>,
    /// `a_pq` as affine forms in the unknowns, in `[p][q]` order.
    pub numerator_forms: Vec<LinearForm<T>>,
    pub symmetrized_rows: usize,
}

/// Column of `b_rs` in the denominator system.
fn unknown_index(order: usize, r: usize, s: usize) -> usize {
    r * (order + 1) + s - 1
}

fn coeff<T: Scalar>(series: &DoubleSeries<T>, m: usize, n: usize) -> T {
    series.coefficient(m, n).cloned().expect("support verified before assembly")
}

/// Coefficients of `e_pq` over the unknowns `b_rs`, plus its `b₀₀` part.
fn equation_row<T: Scalar>(series: &DoubleSeries<T>, order: usize, p: usize, q: usize, row: &mut [T]) -> T {
    for r in 0..=p.min(order) {
        for s in 0..=q.min(order) {
            if r == 0 && s == 0 {
                continue;
            }
            let c = coeff(series, p - r, q - s);
            if !c.is_zero() {
                let k = unknown_index(order, r, s);
                row[k] = row[k].clone() + c;
            }
        }
    }
    coeff(series, p, q)
}

/// Checks preconditions and builds the square denominator system.
pub fn assemble_system<T: Scalar>(series: &DoubleSeries<T>, order: usize) -> Result<ChisholmSystem<T>> {
    match series.coefficient(0, 0) {
        Some(c) if c.is_one() => {}
        _ => {
            return Err(Error::NotNormalized(
                "constant term must be 1; rescale the series or add an offset".into(),
            ))
        }
    }
    let (supported, missing) = series.has_chisholm_support(order);
    if !supported {
        return Err(Error::InsufficientTerms { missing });
    }
    let m = order;
    let n = m * m + 2 * m;
    let mut matrix = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n);
    for t in 0..=2 * m {
        for q in 0..=t {
            let p = t - q;
            if p <= m && q <= m {
                continue;
            }
            let mut row = vec![T::zero(); n];
            let constant = equation_row(series, m, p, q, &mut row);
            matrix.extend(row);
            rhs.push(-constant);
        }
    }
    for j in 1..=m {
        let mut row = vec![T::zero(); n];
        let c1 = equation_row(series, m, 2 * m + 1 - j, j, &mut row);
        let c2 = equation_row(series, m, j, 2 * m + 1 - j, &mut row);
        matrix.extend(row);
        rhs.push(-(c1 + c2));
    }
    let system = DenseSystem::new(n, matrix, rhs)?;
    let mut numerator_forms = Vec::with_capacity((m + 1) * (m + 1));
    for p in 0..=m {
        for q in 0..=m {
            let mut terms = Vec::new();
            for r in 0..=p {
                for s in 0..=q {
                    if r == 0 && s == 0 {
                        continue;
                    }
                    let c = coeff(series, p - r, q - s);
                    if !c.is_zero() {
                        terms.push((unknown_index(m, r, s), c));
                    }
                }
            }
            numerator_forms.push(LinearForm { constant: coeff(series, p, q), terms });
        }
    }
    Ok(ChisholmSystem { order, system, numerator_forms, symmetrized_rows: m })
}

/// Fits the diagonal `[M/M]` approximant; requires `c₀₀ = 1` and full support.
///
/// A singular system falls back to the lowest order `L < M` whose
/// approximant, zero-padded, satisfies every order-`M` equation.
pub fn fit_diagonal<T: Scalar>(
    series: &DoubleSeries<T>,
    order: usize,
) -> Result<(ChisholmApproximant<T>, FitReport)> {
    let assembled = assemble_system(series, order)?;
    let report = FitReport {
        order,
        equations_total: assembled.system.dim() + assembled.numerator_forms.len() - 1,
        equations_symmetrized: assembled.symmetrized_rows,
        system_size: assembled.system.dim(),
        residual_max: None,
    };
    let approximant = match solve_assembled(series, &assembled) {
        Err(err @ Error::SingularSystem { .. }) => {
            let fallback = (0..order).find_map(|lower| {
                let padded = solve_assembled(series, &assemble_system(series, lower).ok()?).ok()?.padded(order);
                padded.taylor_residuals(series).ok()?.is_zero().then_some(padded)
            });
            fallback.ok_or(err)?
        }
        other => other?,
    };
    let residual_max = if T::EXACT {
        None
    } else {
        Some(approximant.taylor_residuals(series)?.max_abs())
    };
    Ok((approximant, FitReport { residual_max, ..report }))
}

fn solve_assembled<T: Scalar>(series: &DoubleSeries<T>, assembled: &ChisholmSystem<T>) -> Result<ChisholmApproximant<T>> {
    let m = assembled.order;
    let (b, a) = T::solve_with_forms(&assembled.system, &assembled.numerator_forms)?;
    let mut den = vec![vec![T::zero(); m + 1]; m + 1];
    den[0][0] = T::one();
    for r in 0..=m {
        for s in 0..=m {
            if r + s > 0 {
                den[r][s] = b[unknown_index(m, r, s)].clone();
            }
        }
    }
    let mut values = a.into_iter();
    let num = (0..=m).map(|_| values.by_ref().take(m + 1).collect()).collect();
    Ok(ChisholmApproximant { order: m, center: series.center().clone(), num, den })
}

/// Residuals of `D·f − N`: all orders `p+q ≤ 2M`, then the `M` mirrored sums.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorResiduals<T> {
    pub coefficients: Vec<((usize, usize), T)>,
    pub symmetrized: Vec<(usize, T)>,
}

impl<T: Scalar> TaylorResiduals<T> {
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|(_, v)| v.is_zero()) && self.symmetrized.iter().all(|(_, v)| v.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|(_, v)| v)
            .chain(self.symmetrized.iter().map(|(_, v)| v))
            .fold(0.0, |m, v| m.max(v.to_f64().abs()))
    }

    /// Indices `(p, q)` with nonzero residual; mirrored sums are reported as `(2M+1−j, j)`.
    pub fn nonzero(&self) -> Vec<(usize, usize)> {
        let order = self.symmetrized.len();
        self.coefficients
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, _)| *k)
            .chain(self.symmetrized.iter().filter(|(_, v)| !v.is_zero()).map(|(j, _)| (2 * order + 1 - j, *j)))
            .collect()
    }
}

impl<T: Scalar> ChisholmApproximant<T> {
    /// Builds an approximant from grids of size `(M+1)×(M+1)`.
    pub fn new(order: usize, center: (T, T), num: Vec<Vec<T>>, den: Vec<Vec<T>>) -> Result<Self> {
        for grid in [&num, &den] {
            if grid.len() != order + 1 {
                return Err(Error::DimensionMismatch { expected: order + 1, found: grid.len() });
            }
            if let Some(row) = grid.iter().find(|r| r.len() != order + 1) {
                return Err(Error::DimensionMismatch { expected: order + 1, found: row.len() });
            }
        }
        Ok(Self { order, center, num, den })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn center(&self) -> &(T, T) {
        &self.center
    }

    pub fn numerator(&self) -> &[Vec<T>] {
        &self.num
    }

    pub fn denominator(&self) -> &[Vec<T>] {
        &self.den
    }

    pub fn to_float(&self) -> ChisholmApproximant<f64> {
        let conv = |g: &[Vec<T>]| g.iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect();
        ChisholmApproximant {
            order: self.order,
            center: (self.center.0.to_f64(), self.center.1.to_f64()),
            num: conv(&self.num),
            den: conv(&self.den),
        }
    }

    /// Multiplies the numerator by `factor`, undoing a prior normalization.
    pub fn scaled(&self, factor: &T) -> Self {
        let mut out = self.clone();
        for v in out.num.iter_mut().flatten() {
            *v = v.clone() * factor.clone();
        }
        out
    }

    /// Same rational function on larger grids.
    pub fn padded(&self, order: usize) -> Self {
        let size = order.max(self.order) + 1;
        let pad = |g: &[Vec<T>]| {
            let mut out: Vec<Vec<T>> = g
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    r.resize(size, T::zero());
                    r
                })
                .collect();
            out.resize(size, vec![T::zero(); size]);
            out
        };
        Self { order: size - 1, center: self.center.clone(), num: pad(&self.num), den: pad(&self.den) }
    }

    fn horner(grid: &[Vec<T>], x: Complex64, y: Complex64) -> Complex64 {
        grid.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, row| {
            let inner = row.iter().rev().fold(Complex64::new(0.0, 0.0), |a, c| a * y + c.to_f64());
            acc * x + inner
        })
    }

    /// Binary64 value at `(x, y)`.
    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Result<Complex64> {
        let dx = x - self.center.0.to_f64();
        let dy = y - self.center.1.to_f64();
        let den = Self::horner(&self.den, dx, dy);
        if den.norm() < POLE_THRESHOLD {
            return Err(Error::PoleHit);
        }
        Ok(Self::horner(&self.num, dx, dy) / den)
    }

    /// Evaluates at coordinates the caller has already mapped into the fit variables.
    pub fn evaluate_mapped(&self, x_mapped: Complex64, y_mapped: Complex64) -> Result<Complex64> {
        self.evaluate(x_mapped, y_mapped)
    }

    /// `D/N`, the approximant of the reciprocal series.
    pub fn reciprocal(&self) -> Self {
        Self { order: self.order, center: self.center.clone(), num: self.den.clone(), den: self.num.clone() }
    }

    /// Residuals of the defining equations against `series`.
    pub fn taylor_residuals(&self, series: &DoubleSeries<T>) -> Result<TaylorResiduals<T>> {
        let m = self.order;
        let missing = series.missing_for_chisholm(m);
        if !missing.is_empty() {
            return Err(Error::InsufficientTerms { missing });
        }
        let e = |p: usize, q: usize| -> T {
            let mut v = if p <= m && q <= m { -self.num[p][q].clone() } else { T::zero() };
            for r in 0..=p.min(m) {
                for s in 0..=q.min(m) {
                    let b = &self.den[r][s];
                    if !b.is_zero() {
                        v = v + b.clone() * coeff(series, p - r, q - s);
                    }
                }
            }
            v
        };
        let mut coefficients = Vec::new();
        for t in 0..=2 * m {
            for q in 0..=t {
                coefficients.push(((t - q, q), e(t - q, q)));
            }
        }
        let symmetrized = (1..=m).map(|j| (j, e(2 * m + 1 - j, j) + e(j, 2 * m + 1 - j))).collect();
        Ok(TaylorResiduals { coefficients, symmetrized })
    }

    /// The `y = 0` restriction: `p_i = a_{i0}`, `q_j = b_{j0}`.
    pub fn reduce_to_pade(&self) -> PadeApproximant<T> {
        let col = |g: &[Vec<T>]| g.iter().map(|r| r[0].clone()).collect();
        PadeApproximant::new(self.order, self.center.0.clone(), col(&self.num), col(&self.den))
            .expect("b00 = 1 by construction")
    }

    /// The `x = 0` restriction.
    pub fn reduce_to_pade_y(&self) -> PadeApproximant<T> {
        PadeApproximant::new(self.order, self.center.1.clone(), self.num[0].clone(), self.den[0].clone())
            .expect("b00 = 1 by construction")
    }
}

impl ChisholmApproximant<Rational> {
    /// Exact value at a rational point.
    pub fn evaluate_exact(&self, x: &Rational, y: &Rational) -> Result<Rational> {
        let dx = x - &self.center.0;
        let dy = y - &self.center.1;
        let horner = |grid: &[Vec<Rational>]| {
            grid.iter().rev().fold(Rational::from_integer(0.into()), |acc, row| {
                let inner = row.iter().rev().fold(Rational::from_integer(0.into()), |a, c| a * &dy + c);
                acc * &dx + inner
            })
        };
        let den = horner(&self.den);
        if num_traits::Zero::is_zero(&den) {
            return Err(Error::PoleHit);
        }
        Ok(horner(&self.num) / den)
    }

    /// High-precision value at an exact complex point, rounded to binary64.
    pub fn evaluate_precise(&self, x: &Complex<Rational>, y: &Complex<Rational>) -> Result<Complex64> {
        let dx = FixedComplex::from_complex(&Complex::new(&x.re - &self.center.0, x.im.clone()));
        let dy = FixedComplex::from_complex(&Complex::new(&y.re - &self.center.1, y.im.clone()));
        precise::eval_grid(&self.num, &dx, &dy).ratio(&precise::eval_grid(&self.den, &dx, &dy))
    }

    /// High-precision value at a real point given in binary64.
    pub fn evaluate_precise_f64(&self, x: f64, y: f64) -> Result<f64> {
        let x = precise::complex_from_f64(Complex64::new(x, 0.0))?;
        let y = precise::complex_from_f64(Complex64::new(y, 0.0))?;
        Ok(self.evaluate_precise(&x, &y)?.re)
    }
}
