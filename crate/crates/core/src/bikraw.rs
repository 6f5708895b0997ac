//! General bivariate Krawtchouk polynomials `P_{r,s}(i, k; N)` attached to a
//! rotation `R`, evaluated by independent routes:
//!
//! * [`p_aomoto`]: the explicit quadruple hypergeometric series;
//! * [`p_genfun`]: coefficients of the generating function;
//! * [`p_interbasis`]: decomposition into Wigner blocks through the spherical
//!   basis;
//! * [`crate::oracles::p_quadrature`] and the matrix exponential of
//!   [`crate::oscrep`] as brute-force references.
//!
//! All routes except the matrix exponential divide by entries of `R`. Entries
//! smaller than [`GENERICITY_GUARD`] in magnitude are rejected with
//! [`Error::Singular`].

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{ensure, Error, Result};
use crate::linalg::ComplexMatrix;
use crate::oscrep::{Axis, Composition3, EigenspaceBasis, OscillatorRep};
use crate::overlaps::{overlap_matrix, spherical_labels, OverlapKind};
use crate::polyfun::{factorial_big, krawtchouk, pochhammer, trinomial, trinomial_u128, TrinomialArgs};
use crate::rotations::{euler_to_rotation, wigner_d, EulerAngles, RotationMatrix, WignerIndex};
use crate::scalar::{exact_from_real, Exact, Field, NeumaierSum, Real};

pub const GENERICITY_GUARD: f64 = 1e-10;

const ENTRY_NAMES: [[&str; 3]; 3] = [["R11", "R12", "R13"], ["R21", "R22", "R23"], ["R31", "R32", "R33"]];

/// Rejects `R_ij` (one-based) when it is below the guard.
fn require_entries<T: Real>(rot: &RotationMatrix<T>, entries: &[(usize, usize)]) -> Result<()> {
    for &(i, j) in entries {
        let v = rot.at(i, j);
        if v.abs().to_f() < GENERICITY_GUARD {
            return Err(Error::Singular { entry: ENTRY_NAMES[i - 1][j - 1], value: v.to_f() });
        }
    }
    Ok(())
}

/// Degree indices `(r, s)`, variable indices `(i, k)`, level `N` and rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiKrawArgs<T> {
    pub r: u32,
    pub s: u32,
    pub i: u32,
    pub k: u32,
    pub level: u32,
    pub rotation: RotationMatrix<T>,
}

impl<T: Real> BiKrawArgs<T> {
    pub fn new(r: u32, s: u32, i: u32, k: u32, level: u32, rotation: RotationMatrix<T>) -> Result<Self> {
        ensure!(r + s <= level, "degree ({r}, {s}) exceeds level {level}");
        ensure!(i + k <= level, "point ({i}, {k}) exceeds level {level}");
        Ok(Self { r, s, i, k, level, rotation })
    }

    /// `t = N - r - s`.
    pub fn t(&self) -> u32 {
        self.level - self.r - self.s
    }

    /// `l = N - i - k`.
    pub fn l(&self) -> u32 {
        self.level - self.i - self.k
    }
}

fn sqrt_trinomial<T: Real>(level: u32, a: u32, b: u32) -> T {
    trinomial::<T>(TrinomialArgs::new(level, a, b)).expect("indices checked by caller").sqrt()
}

/// `W_{i,k;N} = binom(N; i, k)^{1/2} R33^N (R13/R33)^i (R23/R33)^k`.
pub fn weight<T: Real>(i: u32, k: u32, level: u32, rot: &RotationMatrix<T>) -> Result<T> {
    ensure!(i + k <= level, "point ({i}, {k}) exceeds level {level}");
    require_entries(rot, &[(3, 3)])?;
    Ok(raw_weight(i, k, level, rot))
}

/// The weight as `binom^{1/2} R13^i R23^k R33^l`, with no guard.
fn raw_weight<T: Real>(i: u32, k: u32, level: u32, rot: &RotationMatrix<T>) -> T {
    sqrt_trinomial::<T>(level, i, k)
        * rot.at(1, 3).powi(i as i32)
        * rot.at(2, 3).powi(k as i32)
        * rot.at(3, 3).powi((level - i - k) as i32)
}

/// Guard for dividing by the weight: only the factors that actually occur.
fn require_weight<T: Real>(i: u32, k: u32, rot: &RotationMatrix<T>) -> Result<()> {
    let mut needed = vec![(3, 3)];
    if i > 0 {
        needed.push((1, 3));
    }
    if k > 0 {
        needed.push((2, 3));
    }
    require_entries(rot, &needed)
}

/// Cross-ratios `u_ab` of the explicit series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AomotoU<T> {
    pub u11: T,
    pub u12: T,
    pub u21: T,
    pub u22: T,
}

impl<T: Real> AomotoU<T> {
    pub fn from_rotation(rot: &RotationMatrix<T>) -> Result<Self> {
        require_entries(rot, &[(1, 3), (2, 3), (3, 3), (3, 1), (3, 2)])?;
        let r = |i, j| rot.at(i, j);
        Ok(Self {
            u11: r(1, 1) * r(3, 3) / (r(1, 3) * r(3, 1)),
            u12: r(1, 2) * r(3, 3) / (r(1, 3) * r(3, 2)),
            u21: r(2, 1) * r(3, 3) / (r(2, 3) * r(3, 1)),
            u22: r(2, 2) * r(3, 3) / (r(2, 3) * r(3, 2)),
        })
    }
}

fn powers<F: Field>(base: F, top: u32) -> Vec<F> {
    let mut v = Vec::with_capacity(top as usize + 1);
    let mut acc = F::one();
    for _ in 0..=top {
        v.push(acc.clone());
        acc = acc * base.clone();
    }
    v
}

/// `(-n)_j` for `j = 0..=n`.
fn falling_table<F: Field>(n: u32) -> Vec<F> {
    let a = -F::from_int(n.into());
    (0..=n).map(|j| pochhammer(&a, j)).collect()
}

/// The quadruple series
/// `sum (-r)_{a+b} (-s)_{c+d} (-i)_{a+c} (-k)_{b+d} / (a! b! c! d! (-N)_{a+b+c+d})
///  x11^a x21^b x12^c x22^d`
/// with `x_ab = 1 - u_ab`. Indices beyond the vanishing Pochhammers are never
/// visited.
pub fn aomoto_series<F: Field>(r: u32, s: u32, i: u32, k: u32, level: u32, x: [F; 4]) -> F {
    let [x11, x12, x21, x22] = x;
    let p11 = powers(x11, r.min(i));
    let p21 = powers(x21, r.min(k));
    let p12 = powers(x12, s.min(i));
    let p22 = powers(x22, s.min(k));
    let (fr, fs, fi, fk) = (falling_table::<F>(r), falling_table::<F>(s), falling_table::<F>(i), falling_table::<F>(k));
    let fnn = falling_table::<F>(level);
    let fact: Vec<F> = (0..=level).map(crate::polyfun::factorial::<F>).collect();

    let mut sum = F::zero();
    for a in 0..=r.min(i) as usize {
        for b in 0..=(r as usize - a).min(k as usize) {
            for c in 0..=(s as usize).min(i as usize - a) {
                for d in 0..=(s as usize - c).min(k as usize - b) {
                    let num = fr[a + b].clone() * fs[c + d].clone() * fi[a + c].clone() * fk[b + d].clone();
                    let den = fact[a].clone() * fact[b].clone() * fact[c].clone() * fact[d].clone() * fnn[a + b + c + d].clone();
                    let term = num / den * p11[a].clone() * p21[b].clone() * p12[c].clone() * p22[d].clone();
                    sum = sum + term;
                }
            }
        }
    }
    sum
}

/// Explicit series times `binom(N; r, s)^{1/2} (R31/R33)^r (R32/R33)^s`.
///
/// The series alternates with terms far larger than the result when `R33` is
/// small, so it is summed exactly from the binary values of the rotation
/// entries and rounded once.
pub fn p_aomoto<T: Real>(args: &BiKrawArgs<T>) -> Result<T> {
    let BiKrawArgs { r, s, i, k, level, rotation: rot } = *args;
    AomotoU::from_rotation(&rot)?;
    let q = |a: usize, b: usize| exact_from_real(rot.at(a, b));
    let one_minus_u = |row: usize, col: usize| Exact::one() - q(row, col) * q(3, 3) / (q(row, 3) * q(3, col));
    let x = [one_minus_u(1, 1), one_minus_u(1, 2), one_minus_u(2, 1), one_minus_u(2, 2)];
    let series = aomoto_series_exact(r, s, i, k, level, &x);
    let scale = (q(3, 1) / q(3, 3)).pow(r as i32) * (q(3, 2) / q(3, 3)).pow(s as i32);
    Ok(sqrt_trinomial::<T>(level, r, s) * T::from_exact(&(series * scale)))
}

/// [`aomoto_series`] over a common denominator. With `x_ab = A_ab / B_ab`,
/// `N! * series = sum (-1)^j r!/((r-a-b)! a! b!) s!/((s-c-d)! c! d!)
///  i!/(i-a-c)! k!/(k-b-d)! (N-j)! prod x_ab^e`, `j = a+b+c+d`, is an integer
/// once multiplied by `prod B_ab^{e_max}`.
fn aomoto_series_exact(r: u32, s: u32, i: u32, k: u32, level: u32, x: &[Exact; 4]) -> Exact {
    let tops = [r.min(i), s.min(i), r.min(k), s.min(k)];
    // (A^e B^{top-e}) for each of x11, x12, x21, x22.
    let scaled: Vec<Vec<BigInt>> = x
        .iter()
        .zip(tops)
        .map(|(xv, top)| {
            let (num, den) = (xv.numer(), xv.denom());
            (0..=top).map(|e| num.pow(e) * den.pow(top - e)).collect()
        })
        .collect();
    let fact: Vec<BigInt> = (0..=level).map(factorial_big).collect();
    let (fr, fs, fi, fk) = (&fact[r as usize], &fact[s as usize], &fact[i as usize], &fact[k as usize]);

    let mut total = BigInt::zero();
    for a in 0..=r.min(i) as usize {
        for b in 0..=(r as usize - a).min(k as usize) {
            for c in 0..=(s as usize).min(i as usize - a) {
                for d in 0..=(s as usize - c).min(k as usize - b) {
                    let j = a + b + c + d;
                    let coef = fr / (&fact[r as usize - a - b] * &fact[a] * &fact[b])
                        * (fs / (&fact[s as usize - c - d] * &fact[c] * &fact[d]))
                        * (fi / &fact[i as usize - a - c])
                        * (fk / &fact[k as usize - b - d])
                        * &fact[level as usize - j];
                    let term = coef * &scaled[0][a] * &scaled[2][b] * &scaled[1][c] * &scaled[3][d];
                    if j % 2 == 0 {
                        total += term;
                    } else {
                        total -= term;
                    }
                }
            }
        }
    }
    let denom = x.iter().zip(tops).fold(fact[level as usize].clone(), |acc, (xv, top)| acc * xv.denom().pow(top));
    Exact::new(total, denom)
}

/// Truncated bivariate polynomial, `coef[p][q]` of `u^p v^q`, `p + q <= N`.
#[derive(Debug, Clone, PartialEq)]
struct TruncatedPoly<T> {
    level: u32,
    coef: Vec<Vec<T>>,
}

impl<T: Real> TruncatedPoly<T> {
    /// `(1 + a u + b v)^n`, exact trinomial coefficients.
    fn trinomial_power(n: u32, a: T, b: T, level: u32) -> Self {
        let top = n.min(level);
        let pa = powers(a, top);
        let pb = powers(b, top);
        let coef = (0..=level)
            .map(|p| {
                (0..=level - p)
                    .map(|q| {
                        if p + q > n {
                            return T::zero();
                        }
                        let c = trinomial_u128(TrinomialArgs::new(n, p, q)).expect("p + q <= n");
                        crate::polyfun::u128_to_field::<T>(c) * pa[p as usize] * pb[q as usize]
                    })
                    .collect()
            })
            .collect();
        Self { level, coef }
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.level as usize;
        let mut coef = vec![Vec::new(); n + 1];
        for (p, row) in coef.iter_mut().enumerate() {
            *row = (0..=n - p)
                .map(|q| {
                    let mut acc = NeumaierSum::new();
                    for p1 in 0..=p {
                        for q1 in 0..=q {
                            acc += self.coef[p1][q1] * other.coef[p - p1][q - q1];
                        }
                    }
                    acc.value()
                })
                .collect();
        }
        Self { level: self.level, coef }
    }
}

/// All `P_{r,s}(i, k; N)` for fixed `(i, k)` from the generating function
/// `(1 + R11/R13 u + R12/R13 v)^i (1 + R21/R23 u + R22/R23 v)^k
///  (1 + R31/R33 u + R32/R33 v)^{N-i-k}`. Indexed `[r][s]`.
pub fn genfun_row<T: Real>(i: u32, k: u32, level: u32, rot: &RotationMatrix<T>) -> Result<Vec<Vec<T>>> {
    ensure!(i + k <= level, "point ({i}, {k}) exceeds level {level}");
    require_entries(rot, &[(1, 3), (2, 3), (3, 3)])?;
    let factor = |row: usize, n: u32| {
        let d = rot.at(row, 3);
        TruncatedPoly::trinomial_power(n, rot.at(row, 1) / d, rot.at(row, 2) / d, level)
    };
    let product = factor(1, i).mul(&factor(2, k)).mul(&factor(3, level - i - k));
    Ok(product
        .coef
        .iter()
        .enumerate()
        .map(|(r, row)| row.iter().enumerate().map(|(s, &c)| c / sqrt_trinomial::<T>(level, r as u32, s as u32)).collect())
        .collect())
}

pub fn p_genfun<T: Real>(args: &BiKrawArgs<T>) -> Result<T> {
    let row = genfun_row(args.i, args.k, args.level, &args.rotation)?;
    Ok(row[args.r as usize][args.s as usize])
}

/// Tolerance on the imaginary part of quantities that must be real.
const REALITY_TOL: f64 = 1e-9;

/// `U(R)` on one level assembled as `<C|S> D <S|C>` from Wigner blocks and
/// Cartesian/spherical overlaps.
#[derive(Debug, Clone)]
pub struct InterbasisEvaluator<T> {
    basis: EigenspaceBasis,
    rotation: RotationMatrix<T>,
    unitary: ComplexMatrix<T>,
}

impl<T: Real> InterbasisEvaluator<T> {
    pub fn new(level: u32, angles: &EulerAngles<T>) -> Self {
        let cs = overlap_matrix::<T>(level, OverlapKind::CartSpher);
        let labels = spherical_labels(level);
        let blocks = ComplexMatrix::from_fn(labels.len(), |a, b| {
            let (row, col) = (labels[a], labels[b]);
            if row.ell != col.ell {
                return Complex::new(T::zero(), T::zero());
            }
            let idx = WignerIndex::new(row.ell, row.m, col.m).expect("|m| <= l by construction");
            wigner_d(idx, angles)
        });
        let unitary = &(&cs * &blocks) * &cs.adjoint();
        Self { basis: EigenspaceBasis::new(level), rotation: euler_to_rotation(angles), unitary }
    }

    pub fn unitary(&self) -> &ComplexMatrix<T> {
        &self.unitary
    }

    pub fn rotation(&self) -> &RotationMatrix<T> {
        &self.rotation
    }

    /// `<C row| U |C col>`.
    pub fn element(&self, row: &Composition3, col: &Composition3) -> Result<Complex<T>> {
        let locate = |s: &Composition3| {
            self.basis
                .index_of(s)
                .ok_or_else(|| Error::Precondition(format!("state {s:?} is not on level {}", self.basis.level())))
        };
        Ok(self.unitary[(locate(row)?, locate(col)?)])
    }

    pub fn polynomial(&self, r: u32, s: u32, i: u32, k: u32) -> Result<T> {
        let level = self.basis.level();
        let args = BiKrawArgs::new(r, s, i, k, level, self.rotation)?;
        require_weight(i, k, &self.rotation)?;
        let w = raw_weight(i, k, level, &self.rotation);
        let z = self.element(&Composition3::new(i, k, args.l()), &Composition3::new(r, s, args.t()))?;
        Ok(real_part(z, "interbasis sum")? / w)
    }
}

fn real_part<T: Real>(z: Complex<T>, what: &str) -> Result<T> {
    if z.im.abs().to_f() > REALITY_TOL * z.re.abs().to_f().max(1.0) {
        return Err(Error::Inconsistent(format!("{what} has imaginary part {:e}", z.im.to_f())));
    }
    Ok(z.re)
}

pub fn p_interbasis<T: Real>(r: u32, s: u32, i: u32, k: u32, level: u32, angles: &EulerAngles<T>) -> Result<T> {
    InterbasisEvaluator::new(level, angles).polynomial(r, s, i, k)
}

/// `<C i,k,l| U(angles) |C r,s,t> / W_{i,k;N}` through the matrix exponential.
#[derive(Debug, Clone)]
pub struct MatexpEvaluator<T> {
    rep: OscillatorRep<T>,
    rotation: RotationMatrix<T>,
    unitary: ComplexMatrix<T>,
}

impl<T: Real> MatexpEvaluator<T> {
    pub fn new(level: u32, angles: &EulerAngles<T>) -> Self {
        let rep = OscillatorRep::new(level);
        let unitary = rep.unitary(angles);
        Self { rep, rotation: euler_to_rotation(angles), unitary }
    }

    pub fn unitary(&self) -> &ComplexMatrix<T> {
        &self.unitary
    }

    pub fn polynomial(&self, r: u32, s: u32, i: u32, k: u32) -> Result<T> {
        let level = self.rep.basis().level();
        let args = BiKrawArgs::new(r, s, i, k, level, self.rotation)?;
        require_weight(i, k, &self.rotation)?;
        let w = raw_weight(i, k, level, &self.rotation);
        let z = self.rep.element(&self.unitary, &Composition3::new(i, k, args.l()), &Composition3::new(r, s, args.t()))?;
        Ok(real_part(z, "oscillator matrix element")? / w)
    }
}

/// Two trinomial probabilities `p1 = R13^2`, `p2 = R23^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TratnikParams<T> {
    pub p1: T,
    pub p2: T,
}

impl<T: Real> TratnikParams<T> {
    pub fn new(p1: T, p2: T) -> Result<Self> {
        ensure!(p1 > T::zero() && p2 > T::zero() && p1 + p2 < T::one(), "({p1}, {p2}) are not trinomial probabilities");
        Ok(Self { p1, p2 })
    }

    pub fn from_rotation(rot: &RotationMatrix<T>) -> Result<Self> {
        Self::new(rot.at(1, 3).powi(2), rot.at(2, 3).powi(2))
    }
}

/// `K_2(m, n; i, k; p1, p2; N) = (n-N)_m (i-N)_n / (-N)_{m+n}
///  K_m(i; p1; N-n) K_n(k; p2/(1-p1); N-i)`.
pub fn tratnik_k2<T: Real>(m: u32, n: u32, i: u32, k: u32, params: &TratnikParams<T>, level: u32) -> Result<T> {
    ensure!(m + n <= level, "degree ({m}, {n}) exceeds level {level}");
    ensure!(i + k <= level, "point ({i}, {k}) exceeds level {level}");
    let nf = T::from_f(level.into());
    let pre = pochhammer(&(T::from_f(n.into()) - nf), m) * pochhammer(&(T::from_f(i.into()) - nf), n) / pochhammer(&-nf, m + n);
    if pre == T::zero() {
        return Ok(T::zero());
    }
    let first = krawtchouk(m, &T::from_f(i.into()), &params.p1, level - n)?;
    let second = krawtchouk(n, &T::from_f(k.into()), &(params.p2 / (T::one() - params.p1)), level - i)?;
    Ok(pre * first * second)
}

/// `max |<i,k,l| e^{i theta Lx} e^{i chi Ly} |r,s,t> - R33^{-N} W_{ik} W~_{rs} K_2(r,s;i,k)|`
/// with `R = R_x(theta) R_y(chi)` and `W~` the weight of `R^T`.
pub fn tratnik_oracle_defect<T: Real>(theta: T, chi: T, level: u32) -> Result<T> {
    let rep = OscillatorRep::<T>::new(level);
    let u = &rep.exp_generator(Axis::X, -theta) * &rep.exp_generator(Axis::Y, -chi);
    let rot = RotationMatrix::about_x(theta).mul(&RotationMatrix::about_y(chi));
    let params = TratnikParams::from_rotation(&rot)?;
    require_entries(&rot, &[(3, 3)])?;
    let scale = rot.at(3, 3).powi(-(level as i32));
    let mut worst = T::zero();
    for row in rep.basis().states() {
        for col in rep.basis().states() {
            let want = scale
                * raw_weight(row.a, row.b, level, &rot)
                * raw_weight(col.a, col.b, level, &rot.transpose())
                * tratnik_k2(col.a, col.b, row.a, row.b, &params, level)?;
            let got = rep.element(&u, row, col)?;
            worst = worst.max((got - Complex::new(want, T::zero())).norm());
        }
    }
    Ok(worst)
}

/// Checks `<i,k,l| e^{i theta Lx} e^{i chi Ly} |r,s,t> = (-1)^{l+t} <l,k,i| e^{i theta Lz} e^{i chi Ly} |t,s,r>`
/// on the representation, and that the right side equals the interbasis
/// assembly at Euler angles `(0, -chi, -theta)`. Returns the larger deviation.
pub fn tratnik_bridge_check<T: Real>(theta: T, chi: T, level: u32) -> T {
    let rep = OscillatorRep::<T>::new(level);
    let lhs = &rep.exp_generator(Axis::X, -theta) * &rep.exp_generator(Axis::Y, -chi);
    let rhs = &rep.exp_generator(Axis::Z, -theta) * &rep.exp_generator(Axis::Y, -chi);
    let interbasis = InterbasisEvaluator::new(level, &EulerAngles::new(T::zero(), -chi, -theta));
    let mut worst = T::zero();
    for row in rep.basis().states() {
        for col in rep.basis().states() {
            let flipped_row = Composition3::new(row.c, row.b, row.a);
            let flipped_col = Composition3::new(col.c, col.b, col.a);
            let sign = if (row.c + col.c) % 2 == 0 { T::one() } else { -T::one() };
            let left = rep.element(&lhs, row, col).expect("same level");
            let right = rep.element(&rhs, &flipped_row, &flipped_col).expect("same level");
            let assembled = interbasis.element(&flipped_row, &flipped_col).expect("same level");
            worst = worst.max((left - right * sign).norm()).max((right - assembled).norm());
        }
    }
    worst
}

/// `max |sum_{i+k<=N} W^2 P_{r,s} P_{r',s'} - delta|` through the generating
/// function.
pub fn orthonormality_defect<T: Real>(level: u32, rot: &RotationMatrix<T>) -> Result<T> {
    let points: Vec<(u32, u32)> = (0..=level).flat_map(|i| (0..=level - i).map(move |k| (i, k))).collect();
    let degrees = points.clone();
    let rows: Vec<Vec<Vec<T>>> = points.iter().map(|&(i, k)| genfun_row(i, k, level, rot)).collect::<Result<_>>()?;
    let weights: Vec<T> = points.iter().map(|&(i, k)| weight(i, k, level, rot)).collect::<Result<_>>()?;
    let mut worst = T::zero();
    for (a, &(r, s)) in degrees.iter().enumerate() {
        for &(r2, s2) in &degrees[a..] {
            let mut acc = NeumaierSum::new();
            for (row, w) in rows.iter().zip(&weights) {
                acc += *w * *w * row[r as usize][s as usize] * row[r2 as usize][s2 as usize];
            }
            let target = if (r, s) == (r2, s2) { T::one() } else { T::zero() };
            worst = worst.max((acc.value() - target).abs());
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Aomoto,
    Genfun,
    Interbasis,
    Quadrature,
    Matexp,
}

impl Route {
    pub const ALL: [Route; 5] = [Route::Aomoto, Route::Genfun, Route::Interbasis, Route::Quadrature, Route::Matexp];

    pub fn name(self) -> &'static str {
        match self {
            Route::Aomoto => "aomoto",
            Route::Genfun => "genfun",
            Route::Interbasis => "interbasis",
            Route::Quadrature => "quadrature",
            Route::Matexp => "matexp",
        }
    }
}

impl std::str::FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Route::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| Error::Precondition(format!("unknown route {s:?}")))
    }
}

/// One row `(r, s, i, k, P_{r,s}(i,k;N))` of a polynomial table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableEntry<T> {
    pub r: u32,
    pub s: u32,
    pub i: u32,
    pub k: u32,
    pub value: T,
}

/// Index pairs `(a, b)` with `a + b <= N`, lexicographic.
pub fn index_pairs(level: u32) -> Vec<(u32, u32)> {
    (0..=level).flat_map(|a| (0..=level - a).map(move |b| (a, b))).collect()
}

/// Every `P_{r,s}(i,k;N)` for one rotation, in lexicographic `(r, s, i, k)`
/// order, evaluated by one route with shared precomputation.
pub fn polynomial_table<T: Real>(level: u32, angles: &EulerAngles<T>, route: Route) -> Result<Vec<TableEntry<T>>> {
    let rot = euler_to_rotation(angles);
    let pairs = index_pairs(level);
    let mut out = Vec::with_capacity(pairs.len() * pairs.len());
    let mut push_all = |f: &mut dyn FnMut(u32, u32, u32, u32) -> Result<T>| -> Result<()> {
        for &(r, s) in &pairs {
            for &(i, k) in &pairs {
                out.push(TableEntry { r, s, i, k, value: f(r, s, i, k)? });
            }
        }
        Ok(())
    };
    match route {
        Route::Aomoto => push_all(&mut |r, s, i, k| p_aomoto(&BiKrawArgs::new(r, s, i, k, level, rot)?))?,
        Route::Genfun => {
            let rows: Vec<Vec<Vec<T>>> = pairs.iter().map(|&(i, k)| genfun_row(i, k, level, &rot)).collect::<Result<_>>()?;
            push_all(&mut |r, s, i, k| {
                let idx = pairs.iter().position(|&p| p == (i, k)).expect("enumerated pair");
                Ok(rows[idx][r as usize][s as usize])
            })?
        }
        Route::Interbasis => {
            let ev = InterbasisEvaluator::new(level, angles);
            push_all(&mut |r, s, i, k| ev.polynomial(r, s, i, k))?
        }
        Route::Quadrature => {
            let ev = crate::oracles::QuadratureEvaluator::new(level, &rot)?;
            push_all(&mut |r, s, i, k| ev.polynomial(r, s, i, k))?
        }
        Route::Matexp => {
            let ev = MatexpEvaluator::new(level, angles);
            push_all(&mut |r, s, i, k| ev.polynomial(r, s, i, k))?
        }
    }
    Ok(out)
}

/// A single value by the chosen route.
pub fn evaluate<T: Real>(r: u32, s: u32, i: u32, k: u32, level: u32, angles: &EulerAngles<T>, route: Route) -> Result<T> {
    let rot = euler_to_rotation(angles);
    let args = BiKrawArgs::new(r, s, i, k, level, rot)?;
    match route {
        Route::Aomoto => p_aomoto(&args),
        Route::Genfun => p_genfun(&args),
        Route::Interbasis => p_interbasis(r, s, i, k, level, angles),
        Route::Quadrature => crate::oracles::p_quadrature(&args),
        Route::Matexp => MatexpEvaluator::new(level, angles).polynomial(r, s, i, k),
    }
}
