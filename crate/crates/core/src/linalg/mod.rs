//! Dense square linear systems over exact rationals and binary64 reals.

mod bareiss;
mod dixon;
mod float;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

pub use float::solve_float;

/// Systems up to this size use fraction-free elimination; larger ones use p-adic lifting.
pub const BAREISS_LIMIT: usize = 48;

/// Square system `matrix · x = rhs`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSystem<T> {
    n: usize,
    matrix: Vec<T>,
    rhs: Vec<T>,
}

impl<T: Clone> DenseSystem<T> {
    pub fn new(n: usize, matrix: Vec<T>, rhs: Vec<T>) -> Result<Self> {
        if matrix.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: matrix.len() });
        }
        if rhs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rhs.len() });
        }
        Ok(Self { n, matrix, rhs })
    }

    pub fn from_rows(rows: Vec<Vec<T>>, rhs: Vec<T>) -> Result<Self> {
        let n = rows.len();
        let mut matrix = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            matrix.extend(row);
        }
        Self::new(n, matrix, rhs)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.matrix[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.matrix[i * self.n..(i + 1) * self.n]
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    /// Reorders equations so that new row `k` is old row `perm[k]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInput("row permutation is not a bijection".into()));
            }
        }
        let matrix = perm.iter().flat_map(|&p| self.row(p).iter().cloned()).collect();
        let rhs = perm.iter().map(|&p| self.rhs[p].clone()).collect();
        Ok(Self { n: self.n, matrix, rhs })
    }
}

impl<T: Scalar> DenseSystem<T> {
    /// Returns `matrix · x − rhs`.
    pub fn residual(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                let mut acc = -self.rhs[i].clone();
                for (a, xj) in self.row(i).iter().zip(x) {
                    if !a.is_zero() {
                        acc = acc + a.clone() * xj.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn solve(&self) -> Result<Vec<T>> {
        T::solve(self)
    }
}

/// Affine function `constant + Σ coeff · x[index]` of a solution vector.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm<T> {
    pub constant: T,
    pub terms: Vec<(usize, T)>,
}

impl<T: Scalar> LinearForm<T> {
    pub fn apply(&self, x: &[T]) -> T {
        self.terms
            .iter()
            .fold(self.constant.clone(), |acc, (j, c)| acc + c.clone() * x[*j].clone())
    }
}

/// Solution `numerators / denominator` sharing one positive denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledSolution {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
}

impl ScaledSolution {
    pub fn to_rationals(&self) -> Vec<Rational> {
        self.numerators
            .iter()
            .map(|n| Rational::new(n.clone(), self.denominator.clone()))
            .collect()
    }

    fn normalize_sign(mut self) -> Self {
        if self.denominator.is_negative() {
            self.denominator = -self.denominator;
            for n in &mut self.numerators {
                *n = -std::mem::take(n);
            }
        }
        self
    }
}

/// Integer system obtained by clearing denominators row by row.
pub(crate) struct IntegerSystem {
    pub n: usize,
    pub matrix: Vec<BigInt>,
    pub rhs: Vec<BigInt>,
}

impl IntegerSystem {
    pub fn from_rational(system: &DenseSystem<Rational>) -> Self {
        let n = system.dim();
        let mut matrix = Vec::with_capacity(n * n);
        let mut rhs = Vec::with_capacity(n);
        for i in 0..n {
            let row = system.row(i);
            let scale = common_denominator(row.iter().chain(std::iter::once(&system.rhs()[i])));
            let lift = |v: &Rational| v.numer() * (&scale / v.denom());
            matrix.extend(row.iter().map(lift));
            rhs.push(lift(&system.rhs()[i]));
        }
        Self { n, matrix, rhs }
    }
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        let d = v.denom();
        if d.is_one() || l.is_multiple_of(d) {
            continue;
        }
        l = l.lcm(d);
    }
    l
}

/// Exact solve with a shared denominator; the method depends on the dimension.
pub fn solve_rational_scaled(system: &DenseSystem<Rational>) -> Result<ScaledSolution> {
    let int = IntegerSystem::from_rational(system);
    let solution = if int.n <= BAREISS_LIMIT {
        bareiss::solve(&int)?
    } else {
        dixon::solve(&int)?
    };
    Ok(solution.normalize_sign())
}

/// Exact solve by fraction-free Gauss-Jordan elimination.
pub fn solve_bareiss(system: &DenseSystem<Rational>) -> Result<Vec<Rational>> {
    let int = IntegerSystem::from_rational(system);
    Ok(bareiss::solve(&int)?.normalize_sign().to_rationals())
}

/// Exact solve by p-adic lifting and rational reconstruction.
pub fn solve_dixon(system: &DenseSystem<Rational>) -> Result<Vec<Rational>> {
    let int = IntegerSystem::from_rational(system);
    Ok(dixon::solve(&int)?.normalize_sign().to_rationals())
}

pub fn solve_rational(system: &DenseSystem<Rational>) -> Result<Vec<Rational>> {
    Ok(solve_rational_scaled(system)?.to_rationals())
}

/// Exact solve plus exact evaluation of affine forms, sharing the solution denominator.
pub fn solve_rational_with_forms(
    system: &DenseSystem<Rational>,
    forms: &[LinearForm<Rational>],
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let scaled = solve_rational_scaled(system)?;
    let d = &scaled.denominator;
    let values = forms
        .iter()
        .map(|form| {
            let l = common_denominator(
                std::iter::once(&form.constant).chain(form.terms.iter().map(|(_, c)| c)),
            );
            let mut acc = form.constant.numer() * (&l / form.constant.denom()) * d;
            for (j, c) in &form.terms {
                if !c.is_zero() {
                    acc += c.numer() * (&l / c.denom()) * &scaled.numerators[*j];
                }
            }
            Rational::new(acc, l * d)
        })
        .collect();
    Ok((scaled.to_rationals(), values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn int_system(rows: &[Vec<i64>], rhs: &[i64]) -> DenseSystem<Rational> {
        DenseSystem::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(),
            rhs.iter().map(|&v| q(v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_returns_rhs() {
        let s = int_system(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[4, -2, 7]);
        assert_eq!(s.solve().unwrap(), vec![q(4), q(-2), q(7)]);
        assert_eq!(solve_dixon(&s).unwrap(), vec![q(4), q(-2), q(7)]);
    }

    #[test]
    fn rank_deficient_is_singular() {
        let s = int_system(&[vec![1, 1], vec![1, 1]], &[1, 2]);
        assert!(matches!(s.solve(), Err(Error::SingularSystem { .. })));
        assert!(matches!(solve_dixon(&s), Err(Error::SingularSystem { .. })));
        let f = DenseSystem::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0]], vec![1.0, 2.0]).unwrap();
        assert!(matches!(f.solve(), Err(Error::SingularSystem { .. })));
    }

    #[test]
    fn dimension_checks() {
        assert!(DenseSystem::new(2, vec![q(1); 3], vec![q(0); 2]).is_err());
        assert!(DenseSystem::new(2, vec![q(1); 4], vec![q(0); 3]).is_err());
        let s = int_system(&[vec![1, 0], vec![0, 1]], &[1, 1]);
        assert!(s.permute_rows(&[0, 0]).is_err());
    }

    #[test]
    fn pivoting_needed() {
        let s = int_system(&[vec![0, 2, 1], vec![1, 0, 0], vec![3, 1, 0]], &[5, 1, 4]);
        let x = s.solve().unwrap();
        assert_eq!(x, vec![q(1), q(1), q(3)]);
    }

    #[test]
    fn forms_match_direct_evaluation() {
        let s = DenseSystem::from_rows(
            vec![vec![Rational::from_ratio(1, 3), q(2)], vec![q(5), Rational::from_ratio(-1, 7)]],
            vec![q(1), Rational::from_ratio(2, 9)],
        )
        .unwrap();
        let form = LinearForm {
            constant: Rational::from_ratio(3, 4),
            terms: vec![(0, Rational::from_ratio(1, 5)), (1, q(-2))],
        };
        let (x, v) = Rational::solve_with_forms(&s, std::slice::from_ref(&form)).unwrap();
        assert_eq!(v[0], form.apply(&x));
        assert!(s.residual(&x).iter().all(Zero::is_zero));
    }

    fn random_system(n: usize, entries: &[i64]) -> DenseSystem<Rational> {
        let rows = (0..n).map(|i| (0..n).map(|j| q(entries[i * n + j])).collect()).collect();
        let rhs = (0..n).map(|i| q(entries[n * n + i])).collect();
        DenseSystem::from_rows(rows, rhs).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn exact_solution_substitutes_back(n in 1usize..9, entries in prop::collection::vec(-9i64..10, 90)) {
            let s = random_system(n, &entries);
            if let Ok(x) = s.solve() {
                prop_assert!(s.residual(&x).iter().all(Zero::is_zero));
                prop_assert_eq!(solve_dixon(&s).unwrap(), x);
            } else {
                prop_assert!(solve_dixon(&s).is_err());
            }
        }

        #[test]
        fn row_permutation_invariance(n in 2usize..8, entries in prop::collection::vec(-9i64..10, 72), seed in any::<u64>()) {
            let s = random_system(n, &entries);
            let mut perm: Vec<usize> = (0..n).collect();
            let mut state = seed;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (state >> 33) as usize % (i + 1));
            }
            let p = s.permute_rows(&perm).unwrap();
            match (s.solve(), p.solve()) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "permutation changed solvability"),
            }
        }

        #[test]
        fn float_agrees_with_exact(n in 1usize..21, entries in prop::collection::vec(-20i64..21, 441)) {
            let s = random_system(n, &entries);
            if let Ok(x) = s.solve() {
                let big = x.iter().any(|v| Scalar::to_f64(v).abs() > 1e6);
                prop_assume!(!big);
                let f = DenseSystem::new(
                    n,
                    (0..n * n).map(|k| entries[k] as f64).collect(),
                    (0..n).map(|i| entries[n * n + i] as f64).collect(),
                ).unwrap();
                let y = f.solve().unwrap();
                let scale = x.iter().map(|v| Scalar::to_f64(v).abs()).fold(1e-300, f64::max);
                for (a, b) in x.iter().zip(&y) {
                    prop_assert!((Scalar::to_f64(a) - b).abs() <= 1e-8 * scale.max(1.0));
                }
            }
        }
    }
}
