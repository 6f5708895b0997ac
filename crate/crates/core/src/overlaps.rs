//! Overlaps between the Cartesian, polar and spherical eigenbases of one
//! oscillator energy level, expressed through su(1,1) Clebsch-Gordan
//! coefficients.
//!
//! Conventions:
//!
//! * [`cartesian_polar`] is `<C n_x n_y n_z | P n_rho m n_z>`;
//! * [`polar_spherical`] is `<P n_rho m n_z | S n_r l m>`;
//! * [`cartesian_spherical`] is `<S n_r l m | C r s t>` and
//!   [`spherical_in_cartesian`] its complex conjugate `<C | S>`.
//!
//! Matrix label orders: polar states by `(m, n_rho)` ascending, spherical
//! states by `(l, m)` ascending. Selection-rule failures give an exact zero.

use num_complex::Complex;
use num_rational::Rational64;

use crate::error::{ensure, Result};
use crate::linalg::ComplexMatrix;
use crate::oscrep::{Composition3, EigenspaceBasis};
use crate::scalar::Real;
use crate::su11cg::{cg_explicit, CgLabel, Su11Rep};

/// Polar (cylindrical) state `|n_rho, m, n_z>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolarLabel {
    pub n_rho: u32,
    pub m: i32,
    pub n_z: u32,
}

impl PolarLabel {
    pub fn new(n_rho: u32, m: i32, n_z: u32) -> Self {
        Self { n_rho, m, n_z }
    }

    /// `2 n_rho + |m| + n_z`.
    pub fn level(&self) -> u32 {
        2 * self.n_rho + self.m.unsigned_abs() + self.n_z
    }
}

/// Spherical state `|n_r, l, m>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SphericalLabel {
    pub n_r: u32,
    pub ell: u32,
    pub m: i32,
}

impl SphericalLabel {
    pub fn new(n_r: u32, ell: u32, m: i32) -> Result<Self> {
        ensure!(m.unsigned_abs() <= ell, "|m| = {} exceeds l = {ell}", m.unsigned_abs());
        Ok(Self { n_r, ell, m })
    }

    /// `2 n_r + l`.
    pub fn level(&self) -> u32 {
        2 * self.n_r + self.ell
    }
}

/// `w = 2 half + parity`, `parity` in {0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParitySplit {
    pub value: u32,
    pub half: u32,
    pub parity: u32,
}

impl ParitySplit {
    pub fn new(value: u32) -> Self {
        Self { value, half: value / 2, parity: value % 2 }
    }

    /// `1/4 + parity/2`, the representation carried by one Cartesian axis.
    fn axis_rep(&self) -> Su11Rep {
        rep(Rational64::new(1, 4) + Rational64::new(self.parity.into(), 2))
    }
}

fn rep(nu: Rational64) -> Su11Rep {
    Su11Rep::new(nu).expect("positive by construction")
}

/// `(1 + |m|) / 2`.
fn planar_rep(m: i32) -> Su11Rep {
    rep(Rational64::new(1 + i64::from(m.unsigned_abs()), 2))
}

/// `(l + 3/2) / 2`.
fn spherical_rep(ell: u32) -> Su11Rep {
    rep(Rational64::new(2 * i64::from(ell) + 3, 4))
}

fn i_pow<T: Real>(k: i64) -> Complex<T> {
    let (o, z) = (T::one(), T::zero());
    match k.rem_euclid(4) {
        0 => Complex::new(o, z),
        1 => Complex::new(z, o),
        2 => Complex::new(-o, z),
        _ => Complex::new(z, -o),
    }
}

fn sign<T: Real>(k: u32) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// `sigma_m = +1` for `m >= 0`, `-1` otherwise.
fn sigma(m: i32) -> i64 {
    if m >= 0 {
        1
    } else {
        -1
    }
}

/// `1/sqrt(2)` for `m != 0`, `1` for `m = 0`.
fn planar_norm<T: Real>(m: i32) -> T {
    if m == 0 {
        T::one()
    } else {
        T::FRAC_1_SQRT_2()
    }
}

/// Coefficient coupling the `x` and `y` oscillators into the planar state
/// `(n_rho, m)`. Zero unless `n_x + n_y = 2 n_rho + |m|`.
fn planar_cg<T: Real>(nx: ParitySplit, ny: ParitySplit, n_rho: u32, m: i32) -> T {
    if nx.value + ny.value != 2 * n_rho + m.unsigned_abs() {
        return T::zero();
    }
    cg_explicit(&CgLabel::new(nx.axis_rep(), nx.half, ny.axis_rep(), ny.half, planar_rep(m), n_rho))
}

/// Coefficient coupling the planar state with the `z` oscillator into
/// `(n_r, l)`. Zero unless the energies agree.
fn radial_cg<T: Real>(n_rho: u32, m: i32, nz: ParitySplit, n_r: u32, ell: u32) -> T {
    if 2 * n_rho + m.unsigned_abs() + nz.value != 2 * n_r + ell || m.unsigned_abs() > ell {
        return T::zero();
    }
    cg_explicit(&CgLabel::new(planar_rep(m), n_rho, nz.axis_rep(), nz.half, spherical_rep(ell), n_r))
}

/// `<C n_x n_y n_z | P n_rho m n_z'>`
/// `= delta(n_z, n_z') (-1)^{n_x/2 + n_rho} (sigma_m i)^{n_y} / sqrt(2) C`,
/// without the `sqrt(2)` when `m = 0`.
pub fn cartesian_polar<T: Real>(cart: &Composition3, pol: &PolarLabel) -> Complex<T> {
    if cart.c != pol.n_z {
        return zero();
    }
    let (nx, ny) = (ParitySplit::new(cart.a), ParitySplit::new(cart.b));
    let cg: T = planar_cg(nx, ny, pol.n_rho, pol.m);
    if cg == T::zero() {
        return zero();
    }
    let phase = i_pow::<T>(sigma(pol.m) * i64::from(cart.b)) * sign::<T>(nx.half + pol.n_rho);
    phase * (cg * planar_norm::<T>(pol.m))
}

/// `<P n_rho m' n_z | S n_r l m> = delta(m, m') i^{m + |m|} C`.
pub fn polar_spherical<T: Real>(pol: &PolarLabel, sph: &SphericalLabel) -> Complex<T> {
    if pol.m != sph.m {
        return zero();
    }
    let cg: T = radial_cg(pol.n_rho, pol.m, ParitySplit::new(pol.n_z), sph.n_r, sph.ell);
    if cg == T::zero() {
        return zero();
    }
    i_pow::<T>(i64::from(sph.m) + i64::from(sph.m.unsigned_abs())) * cg
}

/// `<S n_r l m | C r s t>`. The intermediate polar sum collapses to the single
/// term `n_rho = (r + s - |m|) / 2`.
pub fn cartesian_spherical<T: Real>(cart: &Composition3, sph: &SphericalLabel) -> Complex<T> {
    let planar = cart.a + cart.b;
    let abs_m = sph.m.unsigned_abs();
    if cart.total() != sph.level() || planar < abs_m || !(planar - abs_m).is_multiple_of(2) {
        return zero();
    }
    let n_rho = (planar - abs_m) / 2;
    let (r, s, t) = (ParitySplit::new(cart.a), ParitySplit::new(cart.b), ParitySplit::new(cart.c));
    let first: T = planar_cg(r, s, n_rho, sph.m);
    if first == T::zero() {
        return zero();
    }
    let second: T = radial_cg(n_rho, sph.m, t, sph.n_r, sph.ell);
    if second == T::zero() {
        return zero();
    }
    // (-i)^{m+|m|} (-sigma_m i)^s
    let quarter_turns = -(i64::from(sph.m) + i64::from(abs_m)) - sigma(sph.m) * i64::from(cart.b);
    i_pow::<T>(quarter_turns) * (sign::<T>(r.half + n_rho) * planar_norm::<T>(sph.m) * first * second)
}

/// `<C r s t | S n_r l m>`, the conjugate of [`cartesian_spherical`].
pub fn spherical_in_cartesian<T: Real>(cart: &Composition3, sph: &SphericalLabel) -> Complex<T> {
    cartesian_spherical(cart, sph).conj()
}

/// Polar labels of level `N`, ordered by `(m, n_rho)` ascending.
pub fn polar_labels(level: u32) -> Vec<PolarLabel> {
    let n = level as i32;
    (-n..=n)
        .flat_map(|m| {
            let room = level - m.unsigned_abs();
            (0..=room / 2).map(move |n_rho| PolarLabel::new(n_rho, m, room - 2 * n_rho))
        })
        .collect()
}

/// Spherical labels of level `N`, ordered by `(l, m)` ascending.
pub fn spherical_labels(level: u32) -> Vec<SphericalLabel> {
    (0..=level)
        .filter(|ell| (level - ell).is_multiple_of(2))
        .flat_map(|ell| {
            let l = ell as i32;
            (-l..=l).map(move |m| SphericalLabel { n_r: (level - ell) / 2, ell, m })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapKind {
    /// Rows Cartesian, columns polar: `<C|P>`.
    CartPolar,
    /// Rows polar, columns spherical: `<P|S>`.
    PolarSpher,
    /// Rows Cartesian, columns spherical: `<C|S>`.
    CartSpher,
}

pub fn overlap_matrix<T: Real>(level: u32, kind: OverlapKind) -> ComplexMatrix<T> {
    let cart = EigenspaceBasis::new(level);
    let polar = polar_labels(level);
    let spher = spherical_labels(level);
    let dim = cart.len();
    match kind {
        OverlapKind::CartPolar => ComplexMatrix::from_fn(dim, |i, j| cartesian_polar(&cart.state(i), &polar[j])),
        OverlapKind::PolarSpher => ComplexMatrix::from_fn(dim, |i, j| polar_spherical(&polar[i], &spher[j])),
        OverlapKind::CartSpher => ComplexMatrix::from_fn(dim, |i, j| spherical_in_cartesian(&cart.state(i), &spher[j])),
    }
}
