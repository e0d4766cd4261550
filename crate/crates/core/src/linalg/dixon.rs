//! Dixon's p-adic lifting with rational reconstruction.
//!
//! A modular inverse `C = A⁻¹ mod p` is computed once; each lifting step then
//! costs two matrix-vector products on word-sized data. Digits accumulate into
//! `X ≡ A⁻¹ b (mod p^k)` and the rational solution is recovered with a shared
//! denominator once `p^k` exceeds twice the square of Hadamard's bound.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{IntegerSystem, ScaledSolution};
use crate::error::{Error, Result};

const PRIME_ATTEMPTS: usize = 4;

pub(super) fn solve(system: &IntegerSystem) -> Result<ScaledSolution> {
    let n = system.n;
    if n == 0 {
        return Ok(ScaledSolution { numerators: Vec::new(), denominator: BigInt::one() });
    }
    let mut primes = PrimeSource::new();
    let mut failed_column = 0;
    for _ in 0..PRIME_ATTEMPTS {
        let p = primes.next_prime();
        match modular_inverse(system, p) {
            Ok(inverse) => return lift(system, p, &inverse),
            Err(column) => failed_column = column,
        }
    }
    Err(Error::SingularSystem { column: failed_column })
}

struct PrimeSource {
    next: u64,
}

impl PrimeSource {
    fn new() -> Self {
        Self { next: (1 << 31) - 1 }
    }

    fn next_prime(&mut self) -> u64 {
        while !is_prime(self.next) {
            self.next -= 2;
        }
        let p = self.next;
        self.next -= 2;
        p
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 32-bit candidates.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn residue(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue below modulus")
}

/// In-place Gauss-Jordan inversion modulo `p`; returns the failing column when singular.
fn modular_inverse(system: &IntegerSystem, p: u64) -> std::result::Result<Vec<u64>, usize> {
    let n = system.n;
    let mut a: Vec<u64> = system.matrix.iter().map(|v| residue(v, p)).collect();
    let mut swaps = Vec::with_capacity(n);
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| a[r * n + k] != 0).ok_or(k)?;
        if pivot_row != k {
            for j in 0..n {
                a.swap(k * n + j, pivot_row * n + j);
            }
        }
        swaps.push(pivot_row);
        let inv = pow_mod(a[k * n + k], p - 2, p);
        a[k * n + k] = 1;
        for j in 0..n {
            a[k * n + j] = mul_mod(a[k * n + j], inv, p);
        }
        let pivot: Vec<u64> = a[k * n..(k + 1) * n].to_vec();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = a[i * n + k];
            if f == 0 {
                continue;
            }
            a[i * n + k] = 0;
            let neg = p - f;
            let row = &mut a[i * n..(i + 1) * n];
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = (*x + neg * y) % p;
            }
        }
    }
    for k in (0..n).rev() {
        let r = swaps[k];
        if r != k {
            for i in 0..n {
                a.swap(i * n + k, i * n + r);
            }
        }
    }
    Ok(a)
}

/// Signed matrix split into 64-bit limbs for word-level products.
struct LimbMatrix {
    n: usize,
    limbs: Vec<Vec<u64>>,
    negative: Vec<bool>,
}

impl LimbMatrix {
    fn new(system: &IntegerSystem) -> Self {
        let n = system.n;
        let digits: Vec<(Sign, Vec<u64>)> = system.matrix.iter().map(|v| v.to_u64_digits()).collect();
        let depth = digits.iter().map(|(_, d)| d.len()).max().unwrap_or(0).max(1);
        let mut limbs = vec![vec![0u64; n * n]; depth];
        for (idx, (_, d)) in digits.iter().enumerate() {
            for (l, &w) in d.iter().enumerate() {
                limbs[l][idx] = w;
            }
        }
        let negative = digits.iter().map(|(s, _)| *s == Sign::Minus).collect();
        Self { n, limbs, negative }
    }

    /// Row `i` of `A · x` for a vector of words below 2^32.
    fn row_product(&self, i: usize, x: &[u64]) -> BigInt {
        let n = self.n;
        let neg = &self.negative[i * n..(i + 1) * n];
        let mut total = BigInt::zero();
        for (l, limb) in self.limbs.iter().enumerate() {
            let row = &limb[i * n..(i + 1) * n];
            let (mut pos_acc, mut neg_acc) = (0u128, 0u128);
            for j in 0..n {
                let prod = row[j] as u128 * x[j] as u128;
                if neg[j] {
                    neg_acc += prod;
                } else {
                    pos_acc += prod;
                }
            }
            if pos_acc == neg_acc {
                continue;
            }
            let part = BigInt::from(pos_acc) - BigInt::from(neg_acc);
            total += part << (64 * l);
        }
        total
    }
}

/// Upper bound, in bits, on |det A| and on every Cramer numerator.
fn hadamard_bits(system: &IntegerSystem) -> f64 {
    let n = system.n;
    let mut bits = 0.0;
    for i in 0..n {
        let mut sum = 0.0f64;
        let row = system.matrix[i * n..(i + 1) * n].iter().chain(std::iter::once(&system.rhs[i]));
        let max_bits = row.clone().map(|v| v.bits()).max().unwrap_or(0) as i32;
        for v in row {
            if !v.is_zero() {
                let scaled = 2f64.powi(v.bits() as i32 - max_bits);
                sum += scaled * scaled;
            }
        }
        if sum > 0.0 {
            bits += max_bits as f64 + 0.5 * sum.log2();
        }
    }
    bits
}

fn lift(system: &IntegerSystem, p: u64, inverse: &[u64]) -> Result<ScaledSolution> {
    let n = system.n;
    let a = LimbMatrix::new(system);
    let big_p = BigInt::from(p);
    let bits_per_step = (p as f64).log2();
    let max_steps = ((2.0 * hadamard_bits(system) + 4.0) / bits_per_step).ceil() as usize + 2;

    let mut residual: Vec<BigInt> = system.rhs.clone();
    let mut accum: Vec<BigInt> = vec![BigInt::zero(); n];
    let mut modulus = BigInt::one();
    let mut r_mod = vec![0u64; n];
    let mut digit = vec![0u64; n];
    let mut next_check = 4usize;

    for step in 1..=max_steps {
        for (rm, r) in r_mod.iter_mut().zip(&residual) {
            *rm = residue(r, p);
        }
        for i in 0..n {
            let row = &inverse[i * n..(i + 1) * n];
            let mut acc = 0u128;
            for (c, r) in row.iter().zip(&r_mod) {
                acc += *c as u128 * *r as u128;
            }
            digit[i] = (acc % p as u128) as u64;
        }
        for i in 0..n {
            if digit[i] != 0 {
                accum[i] += &modulus * digit[i];
            }
            let updated = &residual[i] - a.row_product(i, &digit);
            let (q, rem) = updated.div_rem(&big_p);
            debug_assert!(rem.is_zero());
            residual[i] = q;
        }
        modulus *= p;

        if step >= next_check || step == max_steps {
            next_check = step + (step / 4).max(4);
            if let Some(solution) = reconstruct(system, &accum, &modulus) {
                return Ok(solution);
            }
        }
    }
    Err(Error::InvalidInput("p-adic lifting failed to reconstruct a rational solution".into()))
}

/// Half-extended Euclid: finds `n/d ≡ v (mod m)` with `|n|, d ≤ bound`.
fn rational_reconstruction(v: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), v.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

fn symmetric_mod(v: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r > half {
        r - m
    } else {
        r
    }
}

fn reconstruct(system: &IntegerSystem, accum: &[BigInt], modulus: &BigInt) -> Option<ScaledSolution> {
    let n = system.n;
    let bound: BigInt = (modulus >> 1usize).sqrt();
    let half: BigInt = modulus >> 1usize;
    let mut denominator = BigInt::one();
    let mut numerators: Vec<BigInt> = Vec::with_capacity(n);
    for x in accum {
        let v = symmetric_mod(&(x * &denominator), modulus, &half);
        if v.abs() <= bound {
            numerators.push(v);
            continue;
        }
        let (num, den) = rational_reconstruction(&v, modulus, &bound)?;
        for prev in &mut numerators {
            *prev *= &den;
        }
        denominator *= den;
        if denominator > bound {
            return None;
        }
        numerators.push(num);
    }
    for i in 0..n {
        let row = &system.matrix[i * n..(i + 1) * n];
        let mut lhs = BigInt::zero();
        for (a, x) in row.iter().zip(&numerators) {
            if !a.is_zero() && !x.is_zero() {
                lhs += a * x;
            }
        }
        if lhs != &system.rhs[i] * &denominator {
            return None;
        }
    }
    Some(ScaledSolution { numerators, denominator })
}
