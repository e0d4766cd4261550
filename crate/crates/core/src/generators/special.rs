//! Double polylogarithm, polynomial generating functions and the
//! condensed-matter test functions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::scalar::Rational;
use crate::series::DoubleSeries;

fn origin() -> (Rational, Rational) {
    (Rational::zero(), Rational::zero())
}

/// `Li₂,₂(x, y) = Σ_{i>j≥1} xⁱ yʲ / (i² j²)`.
pub fn li22(degree: usize) -> DoubleSeries<Rational> {
    DoubleSeries::from_fn(origin(), degree, |i, j| {
        if j >= 1 && i > j {
            Rational::new(BigInt::one(), BigInt::from(i * i * j * j))
        } else {
            Rational::zero()
        }
    })
}

/// Partial sum `Σ_{i,j=1..terms} 1/((i+j)² j²)` of `Li₂,₂(1,1)`, in binary64.
pub fn li22_partial_sum_at_one(terms: usize) -> f64 {
    let mut total = 0.0;
    for i in (1..=terms).rev() {
        for j in (1..=terms).rev() {
            let ij = (i + j) as f64;
            let jj = j as f64;
            total += 1.0 / (ij * ij * jj * jj);
        }
    }
    total
}

/// `Li₂,₂(1, 1) = π⁴/120`.
pub fn li22_at_one() -> f64 {
    std::f64::consts::PI.powi(4) / 120.0
}

/// Legendre polynomials `P₀ … P_max` by Bonnet's recursion; `P_l[k]` is the coefficient of `zᵏ`.
pub fn legendre_polynomials(max: usize) -> Vec<Vec<Rational>> {
    let mut p: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    if max == 0 {
        return p;
    }
    p.push(vec![Rational::zero(), Rational::one()]);
    for l in 1..max {
        let mut next = vec![Rational::zero(); l + 2];
        let lr = Rational::from_integer(BigInt::from(l));
        let a = Rational::from_integer(BigInt::from(2 * l + 1)) / (&lr + Rational::one());
        let b = &lr / (&lr + Rational::one());
        for (k, c) in p[l].iter().enumerate() {
            next[k + 1] += &a * c;
        }
        for (k, c) in p[l - 1].iter().enumerate() {
            next[k] -= &b * c;
        }
        p.push(next);
    }
    p
}

/// `Σ_l P_l(z₁) z₂ˡ` for a polynomial family, truncated at total degree `degree`.
pub fn polynomial_generating_series(family: &[Vec<Rational>], degree: usize) -> DoubleSeries<Rational> {
    let mut s = DoubleSeries::zero(origin(), degree);
    for (l, poly) in family.iter().enumerate().take(degree + 1) {
        for (k, c) in poly.iter().enumerate() {
            if k + l <= degree && !c.is_zero() {
                s.set(k, l, c.clone()).expect("within degree");
            }
        }
    }
    s
}

/// Susceptibility stand-in `1 + Σ_{l≥1} P_l(z₁) z₂ˡ` with Legendre `P_l`.
pub fn ising_susceptibility(degree: usize) -> DoubleSeries<Rational> {
    polynomial_generating_series(&legendre_polynomials(degree), degree)
}

/// `1 / (e^{z₁z₂} − z₂)` by truncated reciprocal.
pub fn cm2_function(degree: usize) -> Result<DoubleSeries<Rational>> {
    cm2_denominator(degree).truncated_reciprocal(degree)
}

/// Series of `e^{z₁z₂} − z₂`.
pub fn cm2_denominator(degree: usize) -> DoubleSeries<Rational> {
    let mut fact = BigInt::one();
    let mut s = DoubleSeries::zero(origin(), degree);
    for k in 0..=degree / 2 {
        if k > 0 {
            fact *= k;
        }
        s.set(k, k, Rational::new(BigInt::one(), fact.clone())).expect("within degree");
    }
    if degree >= 1 {
        s.set(0, 1, -Rational::one()).expect("within degree");
    }
    s
}
