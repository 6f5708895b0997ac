//! Clebsch-Gordan coefficients of su(1,1) for the positive discrete series.
//!
//! Two independent constructions are provided:
//!
//! * the closed form in terms of dual Hahn polynomials ([`cg_explicit`],
//!   [`cg_block`]);
//! * the three-term recurrence for the monic polynomials in `n1`, normalized
//!   afterwards by column orthonormality ([`cg_recurrence_row`],
//!   [`cg_block_recurrence`]).
//!
//! Representation parameters are exact rationals. The closed form suffers
//! heavy cancellation in floating point beyond `N ~ 15`, so both routes are
//! carried out over [`Exact`] and rounded once, right before the final square
//! root. The phase convention takes the positive square root; all signs come
//! from the polynomial factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::error::{ensure, Result};
use crate::polyfun::{dual_hahn, factorial, pochhammer};
use crate::scalar::{Exact, Field, Real};

/// Positive discrete series representation `V^(nu)`, `nu > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Su11Rep {
    nu: Rational64,
}

impl Su11Rep {
    pub fn new(nu: Rational64) -> Result<Self> {
        ensure!(nu > Rational64::zero(), "su(1,1) parameter nu = {nu} must be positive");
        Ok(Self { nu })
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        ensure!(denom != 0, "zero denominator");
        Self::new(Rational64::new(numer, denom))
    }

    pub fn nu(&self) -> Rational64 {
        self.nu
    }

    pub fn exact(&self) -> Exact {
        BigRational::new(BigInt::from(*self.nu.numer()), BigInt::from(*self.nu.denom()))
    }

    pub fn to_real<T: Real>(&self) -> T {
        T::from_f(*self.nu.numer() as f64 / *self.nu.denom() as f64)
    }

    /// `V^(nu) -> V^(nu + x)`, used for coupled labels.
    pub fn shifted(&self, x: u32) -> Self {
        Self { nu: self.nu + Rational64::from_integer(x.into()) }
    }
}

/// Labels of `C^{nu1, nu2, nu12}_{n1, n2, n12}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CgLabel {
    pub nu1: Su11Rep,
    pub n1: u32,
    pub nu2: Su11Rep,
    pub n2: u32,
    pub nu12: Su11Rep,
    pub n12: u32,
}

impl CgLabel {
    pub fn new(nu1: Su11Rep, n1: u32, nu2: Su11Rep, n2: u32, nu12: Su11Rep, n12: u32) -> Self {
        Self { nu1, n1, nu2, n2, nu12, n12 }
    }

    /// `x = n1 + n2 - n12` when both coupling conditions hold, `None` otherwise.
    pub fn coupling_index(&self) -> Option<u32> {
        let x = (self.n1 + self.n2).checked_sub(self.n12)?;
        (self.nu12.nu == self.nu1.nu + self.nu2.nu + Rational64::from_integer(x.into())).then_some(x)
    }
}

/// `lambda(x) = x (x + 2 nu1 + 2 nu2 - 1)`.
pub fn lambda<F: Field>(nu1: &F, nu2: &F, x: u32) -> F {
    let xf = F::from_int(x.into());
    let two = F::from_int(2);
    xf.clone() * (xf + two.clone() * nu1.clone() + two * nu2.clone() - F::one())
}

/// Recurrence coefficients `A_n = (n - N)(n + 2 nu1)`, `C_n = n (n - 2 nu2 - N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CgRecurrenceRow<F> {
    pub lambda_x: F,
    pub a: Vec<F>,
    pub c: Vec<F>,
}

impl<F: Field> CgRecurrenceRow<F> {
    pub fn new(nu1: &F, nu2: &F, big_n: u32, x: u32) -> Self {
        let two = F::from_int(2);
        let nf = F::from_int(big_n.into());
        let a = (0..=big_n)
            .map(|n| {
                let k = F::from_int(n.into());
                (k.clone() - nf.clone()) * (k + two.clone() * nu1.clone())
            })
            .collect();
        let c = (0..=big_n)
            .map(|n| {
                let k = F::from_int(n.into());
                k.clone() * (k - two.clone() * nu2.clone() - nf.clone())
            })
            .collect();
        Self { lambda_x: lambda(nu1, nu2, x), a, c }
    }

    /// `W_n^2 = A_{n-1} C_n` for `n >= 1`.
    pub fn off_diagonal_sq(&self, n: usize) -> F {
        self.a[n - 1].clone() * self.c[n].clone()
    }
}

/// Monic polynomials `P^_0 .. P^_N` at `lambda(x)` from
/// `P^_{n+1} = (lambda + A_n + C_n) P^_n - A_{n-1} C_n P^_{n-1}`.
pub fn cg_recurrence_row<F: Field>(nu1: &F, nu2: &F, big_n: u32, x: u32) -> Result<Vec<F>> {
    ensure!(x <= big_n, "x={x} exceeds N={big_n}");
    ensure!(*nu1 > F::zero() && *nu2 > F::zero(), "su(1,1) parameters must be positive");
    let rec = CgRecurrenceRow::new(nu1, nu2, big_n, x);
    let mut out = Vec::with_capacity(big_n as usize + 1);
    out.push(F::one());
    for n in 0..big_n as usize {
        let diag = rec.lambda_x.clone() + rec.a[n].clone() + rec.c[n].clone();
        let mut next = diag * out[n].clone();
        if n > 0 {
            next = next - rec.off_diagonal_sq(n) * out[n - 1].clone();
        }
        out.push(next);
    }
    Ok(out)
}

fn signed_sqrt<T: Real>(square: &Exact, negative: bool) -> T {
    let magnitude = T::from_exact(square).sqrt();
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Closed-form coefficient. Returns exactly zero when the coupling
/// conditions fail.
pub fn cg_explicit<T: Real>(label: &CgLabel) -> T {
    let Some(x) = label.coupling_index() else {
        return T::zero();
    };
    let (square, negative) = cg_explicit_exact(label, x);
    signed_sqrt(&square, negative)
}

/// Square of the coefficient and its sign, exactly.
fn cg_explicit_exact(label: &CgLabel, x: u32) -> (Exact, bool) {
    let CgLabel { n1, n2, n12, .. } = *label;
    let two = Exact::from_int(2);
    let tnu1 = two.clone() * label.nu1.exact();
    let tnu2 = two.clone() * label.nu2.exact();
    let xf = Exact::from_int(x.into());
    let num = pochhammer(&tnu1, n1) * pochhammer(&tnu2, n2) * pochhammer(&tnu1, x);
    let den = factorial::<Exact>(n1)
        * factorial::<Exact>(n2)
        * factorial::<Exact>(n12)
        * factorial::<Exact>(x)
        * pochhammer(&tnu2, x)
        * pochhammer(&(tnu1.clone() + tnu2.clone() + two * xf.clone()), n12)
        * pochhammer(&(tnu1.clone() + tnu2.clone() + xf - Exact::one()), x);
    let radicand = num / den;
    debug_assert!(!radicand.is_negative(), "negative radicand");
    let gamma = tnu1 - Exact::one();
    let delta = tnu2 - Exact::one();
    let poly =
        factorial::<Exact>(x + n12) * dual_hahn(n1, x, &gamma, &delta, n1 + n2).expect("indices within range by construction");
    let negative = poly.is_negative();
    (radicand * poly.clone() * poly, negative)
}

/// Orthogonal `(N+1) x (N+1)` block `C[n1][x]` with `n2 = N - n1`,
/// `n12 = N - x`, `nu12 = nu1 + nu2 + x`.
#[derive(Debug, Clone, PartialEq)]
pub struct CgBlock<T> {
    pub big_n: u32,
    entries: Vec<T>,
}

impl<T: Real> CgBlock<T> {
    fn from_squares(big_n: u32, squares: Vec<(Exact, bool)>) -> Self {
        let entries = squares.iter().map(|(sq, neg)| signed_sqrt(sq, *neg)).collect();
        Self { big_n, entries }
    }

    pub fn dim(&self) -> usize {
        self.big_n as usize + 1
    }

    pub fn get(&self, n1: u32, x: u32) -> T {
        self.entries[n1 as usize * self.dim() + x as usize]
    }

    /// `max |sum_x C[n][x] C[n'][x] - delta|` over `n, n'`.
    pub fn row_defect(&self) -> T {
        let d = self.dim() as u32;
        let mut worst = T::zero();
        for a in 0..d {
            for b in 0..d {
                let s: T = (0..d).fold(T::zero(), |s, x| s + self.get(a, x) * self.get(b, x));
                let target = if a == b { T::one() } else { T::zero() };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }

    /// `max |sum_n C[n][x] C[n][x'] - delta|` over `x, x'`.
    pub fn column_defect(&self) -> T {
        let d = self.dim() as u32;
        let mut worst = T::zero();
        for a in 0..d {
            for b in 0..d {
                let s: T = (0..d).fold(T::zero(), |s, n| s + self.get(n, a) * self.get(n, b));
                let target = if a == b { T::one() } else { T::zero() };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}

/// Integer form of `2 nu1 = t1 / D`, `2 nu2 = t2 / D`.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    den: i64,
    t1: i64,
    t2: i64,
}

impl Scaled {
    fn new(nu1: Su11Rep, nu2: Su11Rep) -> Self {
        let (h1, h2) = (nu1.nu() * 2, nu2.nu() * 2);
        let den = h1.denom().lcm(h2.denom());
        Scaled { den, t1: h1.numer() * (den / h1.denom()), t2: h2.numer() * (den / h2.denom()) }
    }
}

/// `prod_{k < n} (t + k D)` for `n = 0..=len`.
fn rising_table(t: i64, den: i64, len: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::one()];
    for k in 0..len as i64 {
        let next = &v[k as usize] * (t + k * den);
        v.push(next);
    }
    v
}

/// Closed-form block in integer arithmetic.
///
/// `C^2 = A(n1) B(x) R_{n1}(lambda(x))^2` with
/// `A(n1) = (2nu1)_{n1} (2nu2)_{N-n1} / (n1! (N-n1)!)` and
/// `B(x) = (N!)^2 (2nu1)_x / ((N-x)! x! (2nu2)_x (s+2x)_{N-x} (s+x-1)_x)`,
/// `s = 2nu1 + 2nu2`. The last two factors combine to
/// `prod_{k=0..N, k != x} (s+x-1+k)`, and the powers of `D` cancel.
pub fn cg_block<T: Real>(nu1: Su11Rep, nu2: Su11Rep, big_n: u32) -> CgBlock<T> {
    let Scaled { den, t1, t2 } = Scaled::new(nu1, nu2);
    let d = big_n as usize + 1;
    let nn = i64::from(big_n);
    let p1 = rising_table(t1, den, d);
    let p2 = rising_table(t2, den, d);
    let fact = rising_table(1, 1, d);

    let a_num: Vec<BigInt> = (0..d).map(|n1| &p1[n1] * &p2[d - 1 - n1]).collect();
    let a_den: Vec<BigInt> = (0..d).map(|n1| &fact[n1] * &fact[d - 1 - n1]).collect();
    let b_num: Vec<BigInt> = (0..d).map(|x| &fact[d - 1] * &fact[d - 1] * &p1[x]).collect();
    let b_den: Vec<BigInt> = (0..d as i64)
        .map(|x| {
            let tail = (0..=nn).filter(|&k| k != x).fold(BigInt::one(), |acc, k| acc * (t1 + t2 + den * (x - 1 + k)));
            &fact[d - 1 - x as usize] * &fact[x as usize] * &p2[x as usize] * tail
        })
        .collect();

    // R_n(lambda(x)) = sum_j (-1)^j binom(n, j) h_j(x), with
    // h_{j+1} / h_j = (j - x)(D(x+j-1) + t1 + t2) / ((t1 + jD)(j - N)).
    let mut squares = vec![(Exact::zero(), false); d * d];
    for x in 0..d {
        let xi = x as i64;
        let steps: Vec<(i64, i64)> =
            (0..xi).map(|j| ((j - xi) * (den * (xi + j - 1) + t1 + t2), (t1 + j * den) * (j - nn))).collect();
        // h_j = H_j / L over the common denominator L = prod of all step denominators.
        let mut diffs = vec![BigInt::one(); x + 1];
        for (j, &(num, den)) in steps.iter().enumerate() {
            for (i, h) in diffs.iter_mut().enumerate() {
                *h *= if i > j { num } else { den };
            }
        }
        let lcm = steps.iter().fold(BigInt::one(), |acc, &(_, q)| acc * q);
        // Sum_j (-1)^j binom(n, j) h_j is the n-th forward difference at 0.
        for n1 in 0..d {
            let acc = diffs[0].clone();
            // h_j vanishes past x, so the last entry never changes.
            for j in 0..diffs.len() - 1 {
                let next = &diffs[j] - &diffs[j + 1];
                diffs[j] = next;
            }
            let negative = acc.is_negative();
            let square = BigRational::new_raw(&a_num[n1] * &b_num[x] * &acc * &acc, &a_den[n1] * &b_den[x] * &lcm * &lcm);
            squares[n1 * d + x] = (square, negative != lcm.is_negative() && !acc.is_zero());
        }
    }
    CgBlock::from_squares(big_n, squares)
}

/// Block from the recurrence route: monic rows scaled by `1 / (W_1 ... W_n)`
/// with `W_k = -sqrt(A_{k-1} C_k)`, normalized so every column has unit norm
/// with positive `n1 = 0` entry.
///
/// With `D` the common denominator of `2 nu1`, `2 nu2`, the values
/// `D^n P^_n` obey the same recurrence with integer coefficients, so each row
/// is built in [`BigInt`] without any rational reduction.
pub fn cg_block_recurrence<T: Real>(nu1: Su11Rep, nu2: Su11Rep, big_n: u32) -> CgBlock<T> {
    let d = big_n as usize + 1;
    let Scaled { den, t1, t2 } = Scaled::new(nu1, nu2);
    let nn = i64::from(big_n);
    let a_of = |n: i64| BigInt::from((n - nn) * (den * n + t1));
    let c_of = |n: i64| BigInt::from(n * (den * n - t2 - den * nn));
    let mut squares = vec![(Exact::zero(), false); d * d];
    for x in 0..d as i64 {
        let lambda = x * (den * x + t1 + t2 - den);
        let mut rows: Vec<BigInt> = Vec::with_capacity(d);
        rows.push(BigInt::one());
        // w[n] = D^{2n} W_1^2 ... W_n^2
        let mut w = vec![BigInt::one()];
        for n in 0..big_n as i64 {
            let diag = BigInt::from(lambda) + a_of(n) + c_of(n);
            let mut next = diag * &rows[n as usize];
            if n > 0 {
                next -= a_of(n - 1) * c_of(n) * &rows[n as usize - 1];
            }
            rows.push(next);
            let step = a_of(n) * c_of(n + 1);
            w.push(&w[n as usize] * step);
        }
        let last = &w[d - 1];
        let scaled: Vec<BigInt> = rows.iter().zip(&w).map(|(p, wn)| p * p * (last / wn)).collect();
        let norm = scaled.iter().fold(BigInt::zero(), |acc, v| acc + v);
        for (n, (sq, p)) in scaled.into_iter().zip(&rows).enumerate() {
            // sign(P^_n / (W_1 ... W_n)) with every W_k negative.
            let negative = p.is_negative() != (n % 2 == 1);
            squares[n * d + x as usize] = (BigRational::new_raw(sq, norm.clone()), negative && !p.is_zero());
        }
    }
    CgBlock::from_squares(big_n, squares)
}

/// `max |C_explicit - C_recurrence| / max(|C_explicit|, floor)`.
pub fn explicit_vs_recurrence<T: Real>(nu1: Su11Rep, nu2: Su11Rep, big_n: u32, floor: T) -> T {
    let a = cg_block::<T>(nu1, nu2, big_n);
    let b = cg_block_recurrence::<T>(nu1, nu2, big_n);
    let mut worst = T::zero();
    for n in 0..=big_n {
        for x in 0..=big_n {
            let (u, v) = (a.get(n, x), b.get(n, x));
            worst = worst.max((u - v).abs() / u.abs().max(floor));
        }
    }
    worst
}

/// Monic dual Hahn values `(gamma+1)_n (-N)_n R_n(lambda(x))`, the closed-form
/// counterpart of [`cg_recurrence_row`].
pub fn monic_dual_hahn_row<F: Field>(nu1: &F, nu2: &F, big_n: u32, x: u32) -> Result<Vec<F>> {
    let two = F::from_int(2);
    let gamma = two.clone() * nu1.clone() - F::one();
    let delta = two * nu2.clone() - F::one();
    (0..=big_n)
        .map(|n| {
            let r = dual_hahn(n, x, &gamma, &delta, big_n)?;
            Ok(crate::polyfun::dual_hahn_monic_factor(n, &gamma, big_n) * r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(n: i64, d: i64) -> Su11Rep {
        Su11Rep::from_ratio(n, d).unwrap()
    }

    #[test]
    fn rejects_nonpositive_nu() {
        assert!(Su11Rep::from_ratio(0, 1).is_err());
        assert!(Su11Rep::from_ratio(-1, 4).is_err());
    }

    #[test]
    fn ground_coefficients() {
        let q = rep(1, 4);
        let label = CgLabel::new(q, 0, q, 0, rep(1, 2), 0);
        assert_eq!(cg_explicit::<f64>(&label), 1.0);
        let label = CgLabel::new(rep(3, 4), 0, q, 0, rep(1, 1), 0);
        assert_eq!(cg_explicit::<f64>(&label), 1.0);
        assert_eq!(cg_block_recurrence::<f64>(rep(3, 4), q, 0).get(0, 0), 1.0);
    }

    #[test]
    fn selection_rule_gives_exact_zero() {
        let q = rep(1, 4);
        // nu12 = 3/4 is never 1/2 + x.
        let label = CgLabel::new(q, 1, q, 2, rep(3, 4), 1);
        assert_eq!(label.coupling_index(), None);
        assert_eq!(cg_explicit::<f64>(&label), 0.0);
        // n12 > n1 + n2.
        let label = CgLabel::new(q, 0, q, 0, rep(1, 2), 3);
        assert_eq!(cg_explicit::<f64>(&label), 0.0);
    }

    #[test]
    fn two_by_two_block() {
        // nu1 = nu2 = 1/4, N = 1. Hand evaluation of the closed form:
        // C[0][0] = C[1][0] = 1/sqrt(2), C[0][1] = 1/sqrt(2), C[1][1] = -1/sqrt(2).
        let q = rep(1, 4);
        let b = cg_block::<f64>(q, q, 1);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [[h, h], [h, -h]];
        for n in 0..2 {
            for x in 0..2 {
                assert!((b.get(n, x) - expected[n as usize][x as usize]).abs() < 1e-15);
            }
        }
        assert!(b.row_defect() < 1e-15);
    }

    #[test]
    fn block_matches_single_entries() {
        let (a, b) = (rep(3, 4), rep(5, 2));
        let big_n = 6;
        let block = cg_block::<f64>(a, b, big_n);
        for n1 in 0..=big_n {
            for x in 0..=big_n {
                let nu12 = Su11Rep::new(a.nu() + b.nu()).unwrap().shifted(x);
                let label = CgLabel::new(a, n1, b, big_n - n1, nu12, big_n - x);
                let single = cg_explicit::<f64>(&label);
                assert!((single - block.get(n1, x)).abs() < 1e-15, "n1={n1} x={x}");
            }
        }
    }

    #[test]
    fn recurrence_first_step() {
        let row = cg_recurrence_row(&0.25f64, &0.25, 3, 0).unwrap();
        assert_eq!(row[0], 1.0);
        assert_eq!(row[1], -1.5);
        let rec = CgRecurrenceRow::new(&0.25f64, &0.25, 3, 0);
        assert_eq!(rec.lambda_x, 0.0);
    }

    #[test]
    fn recurrence_matches_monic_dual_hahn_exactly() {
        for (a, b) in [(rep(1, 4), rep(1, 4)), (rep(3, 4), rep(7, 2)), (rep(2, 1), rep(5, 4))] {
            for big_n in 0..=12u32 {
                for x in 0..=big_n {
                    let lhs = cg_recurrence_row(&a.exact(), &b.exact(), big_n, x).unwrap();
                    let rhs = monic_dual_hahn_row(&a.exact(), &b.exact(), big_n, x).unwrap();
                    assert_eq!(lhs, rhs, "N={big_n} x={x}");
                }
            }
        }
    }

    #[test]
    fn float_recurrence_tracks_monic_values() {
        let (a, b) = (0.75f64, 1.5f64);
        for big_n in 0..=10u32 {
            for x in 0..=big_n {
                let lhs = cg_recurrence_row(&a, &b, big_n, x).unwrap();
                let rhs = monic_dual_hahn_row(&rep(3, 4).exact(), &rep(3, 2).exact(), big_n, x).unwrap();
                for (u, v) in lhs.iter().zip(&rhs) {
                    let v = crate::scalar::exact_to_f64(v);
                    assert!((u - v).abs() <= 1e-9 * v.abs().max(1.0), "N={big_n} x={x}: {u} vs {v}");
                }
            }
        }
    }

    #[test]
    fn orthonormality_and_route_agreement() {
        let nus = [rep(1, 4), rep(3, 4), rep(1, 1), rep(7, 2)];
        for &a in &nus {
            for &b in &nus {
                for big_n in [0u32, 1, 5, 12] {
                    let block = cg_block::<f64>(a, b, big_n);
                    assert!(block.row_defect() < 1e-12);
                    assert!(block.column_defect() < 1e-12);
                    assert!(explicit_vs_recurrence::<f64>(a, b, big_n, 1e-300) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn works_in_single_precision() {
        let block = cg_block::<f32>(rep(1, 4), rep(3, 4), 8);
        assert!(block.row_defect() < 1e-5);
    }
}
