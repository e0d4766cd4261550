use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntegerSystem, ScaledSolution};
use crate::error::{Error, Result};

/// Fraction-free Gauss-Jordan elimination on the augmented matrix.
///
/// Every intermediate entry is a minor of the input, so the divisions by the
/// previous pivot are exact and entry size stays bounded by Hadamard's bound.
pub(super) fn solve(system: &IntegerSystem) -> Result<ScaledSolution> {
    let n = system.n;
    let w = n + 1;
    let mut m: Vec<BigInt> = Vec::with_capacity(n * w);
    for i in 0..n {
        m.extend(system.matrix[i * n..(i + 1) * n].iter().cloned());
        m.push(system.rhs[i].clone());
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&r| !m[r * w + k].is_zero())
            .ok_or(Error::SingularSystem { column: k })?;
        if pivot_row != k {
            for j in 0..w {
                m.swap(k * w + j, pivot_row * w + j);
            }
        }
        let pivot = m[k * w + k].clone();
        let pivot_row: Vec<BigInt> = m[k * w..(k + 1) * w].to_vec();
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = std::mem::take(&mut m[i * w + k]);
            let row = &mut m[i * w..(i + 1) * w];
            for j in 0..w {
                if j == k {
                    continue;
                }
                let mut v = &pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot;
    }
    let numerators = (0..n).map(|i| m[i * w + n].clone()).collect();
    debug_assert!((0..n).all(|i| m[i * w + i] == prev));
    Ok(ScaledSolution { numerators, denominator: prev })
}
