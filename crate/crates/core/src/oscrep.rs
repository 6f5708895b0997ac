//! The reducible rotation representation on one energy level of the 3D
//! isotropic oscillator, built by brute force from ladder operators.
//!
//! Basis order: compositions `(a, b, c)` of `N`, lexicographic in `(a, b)`,
//! so `index(a, b, c) = sum_{a' < a} (N - a' + 1) + b`.

use num_complex::Complex;

use crate::error::{ensure, Error, Result};
use crate::linalg::{exp_from_eigen, hermitian_eigen, ComplexMatrix, HermitianEigen};
use crate::rotations::EulerAngles;
use crate::scalar::Real;

/// Occupation numbers `(a, b, c)` along `x, y, z`, total `a + b + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition3 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Composition3 {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Self { a, b, c }
    }

    /// The composition `(a, b, total - a - b)`.
    pub fn with_total(total: u32, a: u32, b: u32) -> Result<Self> {
        ensure!(a + b <= total, "({a}, {b}) does not fit in level {total}");
        Ok(Self::new(a, b, total - a - b))
    }

    pub fn total(&self) -> u32 {
        self.a + self.b + self.c
    }

    pub fn as_array(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }

    fn from_array(v: [u32; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenspaceBasis {
    level: u32,
    states: Vec<Composition3>,
}

impl EigenspaceBasis {
    pub fn new(level: u32) -> Self {
        let states = (0..=level).flat_map(|a| (0..=level - a).map(move |b| Composition3::new(a, b, level - a - b))).collect();
        Self { level, states }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `(N + 1)(N + 2) / 2`.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Composition3] {
        &self.states
    }

    pub fn state(&self, index: usize) -> Composition3 {
        self.states[index]
    }

    pub fn index_of(&self, s: &Composition3) -> Option<usize> {
        if s.total() != self.level {
            return None;
        }
        let n = self.level as usize;
        let a = s.a as usize;
        // sum_{a' < a} (N - a' + 1)
        Some(a * (n + 1) - a * a.saturating_sub(1) / 2 + s.b as usize)
    }
}

pub fn enumerate_basis(level: u32) -> EigenspaceBasis {
    EigenspaceBasis::new(level)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// `L_x`, `L_y`, `L_z` on one energy level.
#[derive(Debug, Clone)]
pub struct AngularMomentum<T> {
    pub lx: ComplexMatrix<T>,
    pub ly: ComplexMatrix<T>,
    pub lz: ComplexMatrix<T>,
}

impl<T: Real> AngularMomentum<T> {
    pub fn get(&self, axis: Axis) -> &ComplexMatrix<T> {
        match axis {
            Axis::X => &self.lx,
            Axis::Y => &self.ly,
            Axis::Z => &self.lz,
        }
    }

    /// `L_x^2 + L_y^2 + L_z^2`.
    pub fn casimir(&self) -> ComplexMatrix<T> {
        (&self.lx * &self.lx).add(&(&self.ly * &self.ly)).add(&(&self.lz * &self.lz))
    }

    /// `max |[L_i, L_j] - i eps_ijk L_k|` over the three cyclic pairs.
    pub fn commutator_defect(&self) -> T {
        let i = Complex::new(T::zero(), T::one());
        [(&self.lx, &self.ly, &self.lz), (&self.ly, &self.lz, &self.lx), (&self.lz, &self.lx, &self.ly)]
            .into_iter()
            .map(|(a, b, c)| a.commutator(b).max_abs_diff(&c.scale(i)))
            .fold(T::zero(), T::max)
    }
}

/// `a_to^dagger a_from`, moving one quantum from axis `from` to axis `to`.
fn hop<T: Real>(basis: &EigenspaceBasis, to: usize, from: usize) -> ComplexMatrix<T> {
    let mut out = ComplexMatrix::zeros(basis.len());
    for (col, s) in basis.states().iter().enumerate() {
        let mut occ = s.as_array();
        if occ[from] == 0 {
            continue;
        }
        let amp = f64::from(occ[from]) * f64::from(occ[to] + 1);
        occ[from] -= 1;
        occ[to] += 1;
        let row = basis.index_of(&Composition3::from_array(occ)).expect("same level");
        out[(row, col)] = Complex::new(T::from_f(amp.sqrt()), T::zero());
    }
    out
}

/// `L_x = -i(a_y^+ a_z - a_z^+ a_y)` and cyclic.
pub fn angular_momentum_matrices<T: Real>(level: u32) -> AngularMomentum<T> {
    let basis = EigenspaceBasis::new(level);
    let minus_i = Complex::new(T::zero(), -T::one());
    let gen = |p: usize, q: usize| hop::<T>(&basis, p, q).sub(&hop(&basis, q, p)).scale(minus_i);
    AngularMomentum { lx: gen(1, 2), ly: gen(2, 0), lz: gen(0, 1) }
}

/// Cached eigendecompositions of the generators of one level, so repeated
/// exponentials cost only a product.
#[derive(Debug, Clone)]
pub struct OscillatorRep<T> {
    basis: EigenspaceBasis,
    generators: AngularMomentum<T>,
    eigen: [HermitianEigen<T>; 3],
}

impl<T: Real> OscillatorRep<T> {
    pub fn new(level: u32) -> Self {
        let generators = angular_momentum_matrices::<T>(level);
        let eigen = [hermitian_eigen(&generators.lx), hermitian_eigen(&generators.ly), hermitian_eigen(&generators.lz)];
        Self { basis: EigenspaceBasis::new(level), generators, eigen }
    }

    pub fn basis(&self) -> &EigenspaceBasis {
        &self.basis
    }

    pub fn generators(&self) -> &AngularMomentum<T> {
        &self.generators
    }

    /// `exp(-i theta L_axis)`.
    pub fn exp_generator(&self, axis: Axis, theta: T) -> ComplexMatrix<T> {
        exp_from_eigen(&self.eigen[axis.index()], theta)
    }

    /// `U = exp(-i gamma Lz) exp(-i beta Ly) exp(-i alpha Lz)`.
    pub fn unitary(&self, angles: &EulerAngles<T>) -> ComplexMatrix<T> {
        let outer = self.exp_generator(Axis::Z, angles.gamma);
        let middle = self.exp_generator(Axis::Y, angles.beta);
        let inner = self.exp_generator(Axis::Z, angles.alpha);
        &(&outer * &middle) * &inner
    }

    /// Entry `<row| M |col>` of a matrix on this level.
    pub fn element(&self, m: &ComplexMatrix<T>, row: &Composition3, col: &Composition3) -> Result<Complex<T>> {
        let r = self.locate(row)?;
        let c = self.locate(col)?;
        Ok(m[(r, c)])
    }

    fn locate(&self, s: &Composition3) -> Result<usize> {
        self.basis.index_of(s).ok_or_else(|| Error::Precondition(format!("state {s:?} is not on level {}", self.basis.level())))
    }
}

pub fn unitary_matrix<T: Real>(level: u32, angles: &EulerAngles<T>) -> ComplexMatrix<T> {
    OscillatorRep::new(level).unitary(angles)
}

/// `<row| U(angles) |col>`.
pub fn matrix_element_oracle<T: Real>(
    level: u32,
    angles: &EulerAngles<T>,
    row: &Composition3,
    col: &Composition3,
) -> Result<Complex<T>> {
    ensure!(row.total() == level && col.total() == level, "states {row:?}, {col:?} must both lie on level {level}");
    let rep = OscillatorRep::new(level);
    rep.element(&rep.unitary(angles), row, col)
}

/// Eigenvalues of `L^2` grouped as `(l, multiplicity)` with `l` descending.
#[derive(Debug, Clone, PartialEq)]
pub struct CasimirSpectrum<T> {
    pub levels: Vec<(u32, usize)>,
    /// Largest `|eigenvalue - l(l+1)|` for the assigned `l`.
    pub max_deviation: T,
}

impl<T: Real> CasimirSpectrum<T> {
    /// `{(N, 2N+1), (N-2, 2N-3), ...}`.
    pub fn expected(level: u32) -> Vec<(u32, usize)> {
        (0..=level).rev().step_by(2).map(|l| (l, 2 * l as usize + 1)).collect()
    }
}

pub fn casimir_spectrum_check<T: Real>(level: u32) -> CasimirSpectrum<T> {
    let l2 = angular_momentum_matrices::<T>(level).casimir();
    let eig = hermitian_eigen(&l2);
    let mut levels: Vec<(u32, usize)> = Vec::new();
    let mut max_deviation = T::zero();
    let quarter = T::from_f(0.25);
    let half = T::from_f(0.5);
    for &v in eig.values.iter().rev() {
        let l_real = ((v.max(T::zero()) + quarter).sqrt() - half).round();
        let l = l_real.to_f() as u32;
        max_deviation = max_deviation.max((v - l_real * (l_real + T::one())).abs());
        match levels.last_mut() {
            Some((prev, count)) if *prev == l => *count += 1,
            _ => levels.push((l, 1)),
        }
    }
    CasimirSpectrum { levels, max_deviation }
}

/// Largest deviation from the quarter-turn identities
/// `<a'b'c'| e^{i pi/2 Ly} |r s t> = (-1)^t [a' = t][b' = s]` and
/// `<i k l| e^{-i pi/2 Ly} |a b c> = (-1)^l [i = c][k = b]`.
pub fn quarter_turn_defect<T: Real>(level: u32) -> T {
    let rep = OscillatorRep::<T>::new(level);
    let half_pi = T::FRAC_PI_2();
    let plus = rep.exp_generator(Axis::Y, -half_pi);
    let minus = rep.exp_generator(Axis::Y, half_pi);
    let states = rep.basis().states();
    let parity = |n: u32| if n.is_multiple_of(2) { T::one() } else { -T::one() };
    let mut worst = T::zero();
    for (ri, row) in states.iter().enumerate() {
        for (ci, col) in states.iter().enumerate() {
            let hit = row.a == col.c && row.b == col.b;
            let want_plus = if hit { parity(col.c) } else { T::zero() };
            let want_minus = if hit { parity(row.c) } else { T::zero() };
            worst = worst
                .max((plus[(ri, ci)] - Complex::new(want_plus, T::zero())).norm())
                .max((minus[(ri, ci)] - Complex::new(want_minus, T::zero())).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotations::{euler_to_rotation, RotationMatrix};

    fn c(a: u32, b: u32, cc: u32) -> Composition3 {
        Composition3::new(a, b, cc)
    }

    #[test]
    fn enumeration_order_and_index() {
        assert_eq!(enumerate_basis(0).states(), &[c(0, 0, 0)]);
        assert_eq!(enumerate_basis(1).states(), &[c(0, 0, 1), c(0, 1, 0), c(1, 0, 0)]);
        assert_eq!(enumerate_basis(4).len(), 15);
        for n in 0..9 {
            let b = enumerate_basis(n);
            assert_eq!(b.len(), ((n + 1) * (n + 2) / 2) as usize);
            for (i, s) in b.states().iter().enumerate() {
                assert_eq!(b.index_of(s), Some(i));
            }
            assert!(b.states().windows(2).all(|w| (w[0].a, w[0].b) < (w[1].a, w[1].b)));
        }
        assert_eq!(enumerate_basis(2).index_of(&c(1, 1, 1)), None);
    }

    #[test]
    fn generators_are_hermitian_and_close() {
        for n in 0..=8 {
            let l = angular_momentum_matrices::<f64>(n);
            for ax in [Axis::X, Axis::Y, Axis::Z] {
                assert_eq!(l.get(ax).hermiticity_defect(), 0.0);
            }
            assert!(l.commutator_defect() < 1e-12, "N={n}");
        }
        let zero = angular_momentum_matrices::<f64>(0);
        assert_eq!(zero.lx.dim(), 1);
        assert_eq!(zero.lx.max_abs(), 0.0);
    }

    #[test]
    fn lz_spectrum_level_two() {
        let l = angular_momentum_matrices::<f64>(2);
        let vals = hermitian_eigen(&l.lz).values;
        let expected = [-2.0, -1.0, 0.0, 0.0, 1.0, 2.0];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12, "{vals:?}");
        }
    }

    #[test]
    fn casimir_decomposition() {
        assert_eq!(casimir_spectrum_check::<f64>(0).levels, vec![(0, 1)]);
        assert_eq!(casimir_spectrum_check::<f64>(1).levels, vec![(1, 3)]);
        assert_eq!(casimir_spectrum_check::<f64>(4).levels, vec![(4, 9), (2, 5), (0, 1)]);
        for n in 0..=10 {
            let spectrum = casimir_spectrum_check::<f64>(n);
            assert_eq!(spectrum.levels, CasimirSpectrum::<f64>::expected(n));
            assert!(spectrum.max_deviation < 1e-9);
        }
    }

    #[test]
    fn identity_angles_give_identity() {
        for n in 0..5 {
            let u = unitary_matrix(n, &EulerAngles::<f64>::identity());
            assert!(u.max_abs_diff(&ComplexMatrix::identity(u.dim())) < 1e-14);
        }
    }

    #[test]
    fn level_one_is_the_vector_representation() {
        let angles = EulerAngles::new(0.3f64, 0.7, 0.2);
        let r = euler_to_rotation(&angles);
        let u = unitary_matrix(1, &angles);
        // Basis (z, y, x): axis k sits at index 2 - k.
        for i in 0..3 {
            for j in 0..3 {
                let entry = u[(2 - i, 2 - j)];
                assert!((entry.re - r.rows()[i][j]).abs() < 1e-13);
                assert!(entry.im.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn unitary_and_homomorphic() {
        for n in 0..=6 {
            let rep = OscillatorRep::<f64>::new(n);
            let u = rep.unitary(&EulerAngles::new(1.1, -0.4, 2.9));
            assert!(u.unitarity_defect() < 1e-11);
            let b1 = rep.unitary(&EulerAngles::new(0.0, 0.35, 0.0));
            let b2 = rep.unitary(&EulerAngles::new(0.0, 0.8, 0.0));
            let b12 = rep.unitary(&EulerAngles::new(0.0, 1.15, 0.0));
            assert!((&b1 * &b2).max_abs_diff(&b12) < 1e-10);
        }
    }

    #[test]
    fn quarter_turn_relations() {
        for n in 0..=5 {
            assert!(quarter_turn_defect::<f64>(n) < 1e-12, "N={n}");
        }
    }

    #[test]
    fn axis_exponentials_match_vector_rotations() {
        let rep = OscillatorRep::<f64>::new(1);
        let (theta, chi) = (0.5, 0.9);
        let u = &rep.exp_generator(Axis::X, -theta) * &rep.exp_generator(Axis::Y, -chi);
        let r = RotationMatrix::about_x(theta).mul(&RotationMatrix::about_y(chi));
        for i in 0..3 {
            for j in 0..3 {
                assert!((u[(2 - i, 2 - j)].re - r.rows()[i][j]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn oracle_checks_levels() {
        let a = EulerAngles::new(0.3, 0.7, 0.2);
        assert!(matrix_element_oracle(2, &a, &c(1, 1, 0), &c(1, 0, 0)).is_err());
        let v = matrix_element_oracle(2, &a, &c(1, 1, 0), &c(2, 0, 0)).unwrap();
        // U entry through the vector representation: sqrt(2) R_11 R_21.
        let r = euler_to_rotation(&a);
        let want = 2f64.sqrt() * r.at(1, 1) * r.at(2, 1);
        assert!((v.re - want).abs() < 1e-13 && v.im.abs() < 1e-13, "{v} vs {want}");
    }
}
