//! Univariate building blocks: Pochhammer symbols, exact multinomials,
//! terminating hypergeometric sums and the classical polynomials built on them.
//!
//! Everything that only needs field arithmetic is generic over [`Field`], so
//! the same routines run in `f64` or exactly over [`Exact`](crate::Exact).

use num_bigint::BigInt;

use crate::error::{ensure, Result};
use crate::scalar::{Field, NeumaierSum};

/// `(a)_n = a (a + 1) ... (a + n - 1)`, with `(a)_0 = 1`.
pub fn pochhammer<F: Field>(a: &F, n: u32) -> F {
    let mut acc = F::one();
    let mut factor = a.clone();
    for _ in 0..n {
        acc = acc * factor.clone();
        factor = factor + F::one();
    }
    acc
}

pub fn factorial<F: Field>(n: u32) -> F {
    pochhammer(&F::one(), n)
}

pub fn factorial_big(n: u32) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// Exact binomial coefficient. Valid for `n <= 120` without overflow.
pub fn binomial_u128(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc * (n - j) is divisible by (j + 1) at every step.
        acc = acc * u128::from(n - j) / u128::from(j + 1);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrinomialArgs {
    pub n: u32,
    pub i: u32,
    pub k: u32,
}

impl TrinomialArgs {
    pub fn new(n: u32, i: u32, k: u32) -> Self {
        Self { n, i, k }
    }
}

/// `N! / (i! k! (N - i - k)!)` in exact integer arithmetic.
///
/// Exact for `N <= 80` (the largest value is below `3^N < 2^128`).
pub fn trinomial_u128(args: TrinomialArgs) -> Result<u128> {
    let TrinomialArgs { n, i, k } = args;
    ensure!(i + k <= n, "trinomial indices i={i}, k={k} exceed N={n}");
    ensure!(n <= 80, "trinomial N={n} exceeds exact u128 range");
    Ok(binomial_u128(n, i) * binomial_u128(n - i, k))
}

pub fn trinomial<F: Field>(args: TrinomialArgs) -> Result<F> {
    trinomial_u128(args).map(u128_to_field)
}

pub(crate) fn u128_to_field<F: Field>(v: u128) -> F {
    let hi = (v >> 64) as u64;
    let lo = v as u64;
    let two32 = F::from_u64(1 << 32).expect("representable");
    let hi = F::from_u64(hi).expect("representable");
    let lo = F::from_u64(lo).expect("representable");
    hi * two32.clone() * two32 + lo
}

/// Terminating generalized hypergeometric sum
/// `sum_{j < terms} prod (upper)_j / prod (lower)_j * z^j / j!`.
///
/// Terms are generated by the running ratio; summation is compensated. The
/// caller guarantees no lower parameter reaches zero before the series is
/// cut off (either by `terms` or by a vanishing upper parameter).
pub fn terminating_pfq<F: Field>(upper: &[F], lower: &[F], z: &F, terms: usize) -> F {
    let mut sum = NeumaierSum::new();
    let mut term = F::one();
    for j in 0..terms {
        if term.is_zero() {
            break;
        }
        sum += term.clone();
        if j + 1 == terms {
            break;
        }
        let jf = F::from_int(j as i64);
        let mut num = z.clone();
        for a in upper {
            num = num * (a.clone() + jf.clone());
        }
        if num.is_zero() {
            break;
        }
        let mut den = jf + F::one();
        for b in lower {
            den = den * (b.clone() + F::from_int(j as i64));
        }
        term = term * num / den;
    }
    sum.value()
}

/// Krawtchouk polynomial `K_n(x; p, N) = 2F1(-n, -x; -N; 1/p)`.
///
/// `x` may be non-integer; the series is then the full degree-`n` sum.
pub fn krawtchouk<F: Field>(n: u32, x: &F, p: &F, big_n: u32) -> Result<F> {
    ensure!(n <= big_n, "Krawtchouk degree n={n} exceeds N={big_n}");
    ensure!(!p.is_zero(), "Krawtchouk parameter p must be nonzero");
    let upper = [F::from_int(-i64::from(n)), -x.clone()];
    let lower = [F::from_int(-i64::from(big_n))];
    Ok(terminating_pfq(&upper, &lower, &(F::one() / p.clone()), n as usize + 1))
}

/// Dual Hahn polynomial `R_n(lambda(x); gamma, delta, N)
/// = 3F2(-n, -x, x + gamma + delta + 1; gamma + 1, -N; 1)`.
pub fn dual_hahn<F: Field>(n: u32, x: u32, gamma: &F, delta: &F, big_n: u32) -> Result<F> {
    ensure!(n <= big_n && x <= big_n, "dual Hahn indices n={n}, x={x} exceed N={big_n}");
    ensure!(*gamma > -F::one(), "dual Hahn parameter gamma must exceed -1");
    let xf = F::from_int(i64::from(x));
    let upper = [F::from_int(-i64::from(n)), -xf.clone(), xf + gamma.clone() + delta.clone() + F::one()];
    let lower = [gamma.clone() + F::one(), F::from_int(-i64::from(big_n))];
    Ok(terminating_pfq(&upper, &lower, &F::one(), n.min(x) as usize + 1))
}

/// Ratio between the monic dual Hahn polynomial and `R_n`: `(gamma + 1)_n (-N)_n`.
pub fn dual_hahn_monic_factor<F: Field>(n: u32, gamma: &F, big_n: u32) -> F {
    pochhammer(&(gamma.clone() + F::one()), n) * pochhammer(&F::from_int(-i64::from(big_n)), n)
}

/// Physicists' Hermite polynomial by `H_{j+1} = 2x H_j - 2j H_{j-1}`.
pub fn hermite<F: Field>(n: u32, x: &F) -> F {
    let two = F::from_int(2);
    let mut prev = F::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two.clone() * x.clone();
    for j in 1..n {
        let next = two.clone() * x.clone() * cur.clone() - two.clone() * F::from_int(j.into()) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// All `H_0(x) .. H_n(x)`.
pub fn hermite_table<F: Field>(n: u32, x: &F) -> Vec<F> {
    let two = F::from_int(2);
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(F::one());
    if n >= 1 {
        out.push(two.clone() * x.clone());
    }
    for j in 1..n as usize {
        let next = two.clone() * x.clone() * out[j].clone() - two.clone() * F::from_int(j as i64) * out[j - 1].clone();
        out.push(next);
    }
    out
}

/// Generalized Laguerre polynomial by
/// `(j + 1) L_{j+1} = (2j + 1 + alpha - x) L_j - (j + alpha) L_{j-1}`.
pub fn laguerre<F: Field>(n: u32, alpha: &F, x: &F) -> F {
    let mut prev = F::one();
    if n == 0 {
        return prev;
    }
    let mut cur = F::one() + alpha.clone() - x.clone();
    for j in 1..n {
        let jf = F::from_int(j.into());
        let next = ((F::from_int(2) * jf.clone() + F::one() + alpha.clone() - x.clone()) * cur.clone()
            - (jf.clone() + alpha.clone()) * prev)
            / (jf + F::one());
        prev = cur;
        cur = next;
    }
    cur
}
