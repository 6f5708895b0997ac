//! Proper rotations parametrized by Euler angles and the Wigner D-matrix
//! elements expressed through univariate Krawtchouk polynomials.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{ensure, Result};
use crate::linalg::ComplexMatrix;
use crate::polyfun::{binomial_u128, factorial_big};
use crate::scalar::{exact_from_real, Exact, Real};

/// Euler angles in radians. The rotation is `R_z(gamma) R_y(beta) R_z(alpha)`,
/// represented on oscillator states by `exp(-i gamma Lz) exp(-i beta Ly) exp(-i alpha Lz)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EulerAngles<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: Real> EulerAngles<T> {
    pub fn new(alpha: T, beta: T, gamma: T) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn identity() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix<T> {
    rows: [[T; 3]; 3],
}

impl<T: Real> RotationMatrix<T> {
    pub fn from_rows(rows: [[T; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self::from_rows([[o, z, z], [z, o, z], [z, z, o]])
    }

    /// Entry `R_ij` with one-based indices.
    pub fn at(&self, i: usize, j: usize) -> T {
        self.rows[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[[T; 3]; 3] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        Self::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| self.rows[j][i])))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_rows(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).fold(T::zero(), |s, k| s + self.rows[i][k] * other.rows[k][j]))
        }))
    }

    /// `R^T x`.
    pub fn apply_transpose(&self, x: [T; 3]) -> [T; 3] {
        std::array::from_fn(|j| (0..3).fold(T::zero(), |s, i| s + self.rows[i][j] * x[i]))
    }

    pub fn determinant(&self) -> T {
        let r = &self.rows;
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    }

    /// `max |R^T R - I|`.
    pub fn orthogonality_defect(&self) -> T {
        let p = self.transpose().mul(self);
        let mut worst = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((p.rows[i][j] - target).abs());
            }
        }
        worst
    }

    /// Rotation generated by `exp(i theta Lx)`: rotates the (y, z) plane.
    pub fn about_x(theta: T) -> Self {
        let (c, s, o, z) = (theta.cos(), theta.sin(), T::one(), T::zero());
        Self::from_rows([[o, z, z], [z, c, s], [z, -s, c]])
    }

    /// Rotation generated by `exp(i chi Ly)`: rotates the (z, x) plane.
    pub fn about_y(chi: T) -> Self {
        let (c, s, o, z) = (chi.cos(), chi.sin(), T::one(), T::zero());
        Self::from_rows([[c, z, -s], [z, o, z], [s, z, c]])
    }
}

pub fn euler_to_rotation<T: Real>(angles: &EulerAngles<T>) -> RotationMatrix<T> {
    let (sa, ca) = angles.alpha.sin_cos();
    let (sb, cb) = angles.beta.sin_cos();
    let (sg, cg) = angles.gamma.sin_cos();
    RotationMatrix::from_rows([
        [ca * cb * cg - sa * sg, -sa * cb * cg - ca * sg, sb * cg],
        [ca * cb * sg + sa * cg, ca * cg - sa * cb * sg, sb * sg],
        [-ca * sb, sa * sb, cb],
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WignerIndex {
    pub ell: u32,
    pub m_prime: i32,
    pub m: i32,
}

impl WignerIndex {
    pub fn new(ell: u32, m_prime: i32, m: i32) -> Result<Self> {
        ensure!(m.unsigned_abs() <= ell && m_prime.unsigned_abs() <= ell, "Wigner indices m'={m_prime}, m={m} exceed ell={ell}");
        Ok(Self { ell, m_prime, m })
    }
}

fn near_multiple_of_two_pi<T: Real>(beta: T, offset: T) -> bool {
    let two_pi = T::PI() + T::PI();
    let r = ((beta - offset) % two_pi + two_pi) % two_pi;
    let tol = T::from_f(1e-12);
    r < tol || two_pi - r < tol
}

/// `d^l_{m'm}(beta)` from
/// `(-1)^{m'+l} sin^{2l}(b/2) tan^{m+m'}(b/2) [C(2l, m+l) C(2l, m'+l)]^{1/2} K_{m+l}(m'+l; sin^2(b/2); 2l)`.
///
/// The tangent power is folded into the series as
/// `sin^{2l+m+m'-2j}(b/2) cos^{-(m+m')}(b/2)` term by term. When `m + m' > 0`
/// the equal element `d_{-m,-m'}` is evaluated instead so the cosine power
/// is never negative.
///
/// The series cancels badly in floating point for `l` near 10, so it is
/// summed exactly at the rounded value `s = sin(b/2)` (a dyadic rational),
/// with `cos^2 = 1 - s^2` taken exactly as well. The result is the exact
/// matrix element at an angle within one ulp of `b`, rounded once.
pub fn wigner_small_d<T: Real>(ell: u32, m_prime: i32, m: i32, beta: T) -> T {
    if near_multiple_of_two_pi(beta, T::zero()) {
        return if m_prime == m { T::one() } else { T::zero() };
    }
    if near_multiple_of_two_pi(beta, T::PI()) {
        if m_prime != -m {
            return T::zero();
        }
        return if (i64::from(ell) + i64::from(m_prime)) % 2 == 0 { T::one() } else { -T::one() };
    }
    let (mp, m) = if m + m_prime > 0 { (-m, -m_prime) } else { (m_prime, m) };
    let l = ell as i32;
    let n = (m + l) as u32;
    let x = (mp + l) as u32;
    let two_l = 2 * ell;
    let cos_pow = (-(m + mp)) as u32;
    let (s, c) = (beta / T::from_f(2.0)).sin_cos();

    // s = M 2^{-e} exactly, and c^2 = 1 - s^2 = Q 2^{-2e}.
    let s_exact = exact_from_real(s);
    let big_m = s_exact.numer().clone();
    let e = (s_exact.denom().bits() - 1) as usize;
    let m_sq = &big_m * &big_m;
    let q = (BigInt::one() << (2 * e)) - &m_sq;

    // coef_j = (-1)^j C(n,j) C(x,j) / C(2l,j) = (n! / (2l)!) (-1)^j C(x,j) (2l-j)! / (n-j)!
    // The integer part is summed by Horner in M^2 with the powers of two folded in.
    let top = n.min(x);
    let mut acc = BigInt::zero();
    for j in 0..=top {
        let falling: BigInt = ((n - j + 1)..=(two_l - j)).map(BigInt::from).product();
        let mut term = (falling * BigInt::from(binomial_u128(x, j))) << (2 * e * j as usize);
        if j % 2 == 1 {
            term = -term;
        }
        acc = acc * &m_sq + term;
    }
    let lowest = (2 * l + m + mp) as u32 - 2 * top;
    let half_cos = cos_pow / 2;
    let mut numer = acc * big_m.pow(lowest) * q.pow(half_cos) * factorial_big(n);
    if (mp + l) % 2 != 0 {
        numer = -numer;
    }
    let shift = e * (2 * l + m + mp) as usize + 2 * e * half_cos as usize;
    let denom = factorial_big(two_l) << shift;
    let binomials = BigInt::from(binomial_u128(two_l, n)) * BigInt::from(binomial_u128(two_l, x));
    let mut out = T::from_exact(&Exact::new_raw(numer, denom)) * T::from_exact(&Exact::from_integer(binomials)).sqrt();
    if cos_pow % 2 == 1 {
        let c_abs = T::from_exact(&Exact::new_raw(q, BigInt::one() << (2 * e))).sqrt();
        out = if c < T::zero() { -out * c_abs } else { out * c_abs };
    }
    out
}

/// `D^l_{m'm}(alpha, beta, gamma) = e^{-i(gamma m' + alpha m)} d^l_{m'm}(beta)`.
pub fn wigner_d<T: Real>(idx: WignerIndex, angles: &EulerAngles<T>) -> Complex<T> {
    let d = wigner_small_d(idx.ell, idx.m_prime, idx.m, angles.beta);
    let phase = -(angles.gamma * T::from_f(idx.m_prime.into()) + angles.alpha * T::from_f(idx.m.into()));
    Complex::from_polar(d, phase)
}

/// `(2l+1)`-dimensional block, row `m' + l`, column `m + l`.
pub fn wigner_block<T: Real>(ell: u32, angles: &EulerAngles<T>) -> ComplexMatrix<T> {
    let l = ell as i32;
    ComplexMatrix::from_fn(2 * ell as usize + 1, |r, c| {
        let idx = WignerIndex { ell, m_prime: r as i32 - l, m: c as i32 - l };
        wigner_d(idx, angles)
    })
}

/// Columns are the spherical unit vectors for `m = -1, 0, 1` in Cartesian
/// components `(x, y, z)`.
pub fn spherical_unit_vectors<T: Real>() -> ComplexMatrix<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = T::zero();
    ComplexMatrix::from_fn(3, |i, m| match (i, m) {
        (0, 0) => Complex::new(h, z),
        (1, 0) => Complex::new(z, -h),
        (2, 1) => Complex::new(T::one(), z),
        (0, 2) => Complex::new(-h, z),
        (1, 2) => Complex::new(z, -h),
        _ => Complex::new(z, z),
    })
}

/// `max |B^dagger R B - D^1|` for the spherical basis change `B`.
pub fn ell_one_defect<T: Real>(angles: &EulerAngles<T>) -> T {
    let basis = spherical_unit_vectors::<T>();
    let r = euler_to_rotation(angles);
    let rm = ComplexMatrix::from_real_fn(3, |i, j| r.at(i + 1, j + 1));
    let conj = &(&basis.adjoint() * &rm) * &basis;
    conj.max_abs_diff(&wigner_block(1, angles))
}
