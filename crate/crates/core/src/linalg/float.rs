use super::DenseSystem;
use crate::error::{Error, Result};

/// Relative pivot threshold against the column's largest initial entry.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

/// Gaussian elimination with row equilibration, partial pivoting and one
/// step of iterative refinement.
pub fn solve_float(system: &DenseSystem<f64>) -> Result<Vec<f64>> {
    let n = system.dim();
    let mut a: Vec<f64> = Vec::with_capacity(n * n);
    let mut b: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n {
        let row = system.row(i);
        let scale = row.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let s = if scale > 0.0 { 1.0 / scale } else { 1.0 };
        a.extend(row.iter().map(|v| v * s));
        b.push(system.rhs()[i] * s);
    }
    let column_max: Vec<f64> =
        (0..n).map(|j| (0..n).fold(0.0f64, |m, i| m.max(a[i * n + j].abs()))).collect();

    let lu = factor(&a, n, &column_max)?;
    let mut x = lu.solve(&b);
    let residual: Vec<f64> = (0..n)
        .map(|i| {
            let row = &a[i * n..(i + 1) * n];
            b[i] - row.iter().zip(&x).map(|(u, v)| u * v).sum::<f64>()
        })
        .collect();
    let correction = lu.solve(&residual);
    for (xi, c) in x.iter_mut().zip(correction) {
        *xi += c;
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularSystem { column: 0 });
    }
    Ok(x)
}

struct Lu {
    n: usize,
    data: Vec<f64>,
    perm: Vec<usize>,
}

fn factor(a: &[f64], n: usize, column_max: &[f64]) -> Result<Lu> {
    let mut m = a.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (p, best) = (k..n)
            .map(|r| (r, m[r * n + k].abs()))
            .fold((k, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best == 0.0 || best < PIVOT_TOLERANCE * column_max[k] {
            return Err(Error::SingularSystem { column: k });
        }
        if p != k {
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
        }
        let pivot = m[k * n + k];
        for i in k + 1..n {
            let f = m[i * n + k] / pivot;
            m[i * n + k] = f;
            if f != 0.0 {
                for j in k + 1..n {
                    m[i * n + j] -= f * m[k * n + j];
                }
            }
        }
    }
    Ok(Lu { n, data: m, perm })
}

impl Lu {
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = y[i];
            for j in 0..i {
                s -= self.data[i * n + j] * y[j];
            }
            y[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in i + 1..n {
                s -= self.data[i * n + j] * y[j];
            }
            y[i] = s / self.data[i * n + i];
        }
        y
    }
}
