//! Independent references: Gauss-Hermite quadrature of the Hermite integral
//! representation of `P_{r,s}(i,k;N)`, and oscillator wavefunctions used to
//! pin overlap phases.

use num_complex::Complex;

use crate::bikraw::BiKrawArgs;
use crate::error::{ensure, Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix};
use crate::oscrep::{Composition3, EigenspaceBasis};
use crate::overlaps::{cartesian_polar, polar_labels, PolarLabel};
use crate::polyfun::{factorial, hermite, hermite_table, laguerre, trinomial, TrinomialArgs};
use crate::rotations::RotationMatrix;
use crate::scalar::{NeumaierSum, Real};

/// Nodes and weights for `int e^{-x^2} f(x) dx`, exact for degree `2 order - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub order: usize,
}

impl<T: Real> QuadratureRule<T> {
    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).collect::<NeumaierSum<T>>().value()
    }
}

/// Orthonormal Hermite values `phi_0(x) .. phi_n(x)` for the weight `e^{-x^2}`.
fn orthonormal_hermite<T: Real>(n: usize, x: T) -> Vec<T> {
    let two = T::from_f(2.0);
    let mut v = Vec::with_capacity(n + 1);
    v.push(T::PI().powf(T::from_f(-0.25)));
    if n >= 1 {
        v.push(two.sqrt() * x * v[0]);
    }
    for j in 1..n {
        let jf = T::from_f(j as f64);
        let next = x * (two / (jf + T::one())).sqrt() * v[j] - (jf / (jf + T::one())).sqrt() * v[j - 1];
        v.push(next);
    }
    v
}

/// Newton steps applied to each Golub-Welsch node.
const NODE_POLISH_STEPS: usize = 3;

/// Golub-Welsch: eigenvalues of the Jacobi matrix with off-diagonal
/// `sqrt(j/2)` are the starting nodes, refined by Newton on `phi_n`. Weights
/// are the Christoffel numbers `1 / sum_{j<n} phi_j(x)^2`, which keep their
/// relative accuracy on the outermost nodes.
pub fn gauss_hermite<T: Real>(order: usize) -> Result<QuadratureRule<T>> {
    ensure!(order >= 1, "quadrature order must be positive");
    let jacobi = ComplexMatrix::from_real_fn(order, |i, j| {
        if i.abs_diff(j) == 1 {
            (T::from_f(i.max(j) as f64) / T::from_f(2.0)).sqrt()
        } else {
            T::zero()
        }
    });
    let eig = hermitian_eigen(&jacobi);
    let scale = T::from_f(2.0 * order as f64).sqrt();
    let polished: Vec<T> = eig
        .values
        .iter()
        .map(|&x0| {
            (0..NODE_POLISH_STEPS).fold(x0, |x, _| {
                let phi = orthonormal_hermite(order, x);
                x - phi[order] / (scale * phi[order - 1])
            })
        })
        .collect();
    let christoffel = |x: T| T::one() / orthonormal_hermite(order - 1, x).iter().fold(T::zero(), |acc, &p| acc + p * p);
    // Enforce the exact mirror symmetry of the rule.
    let half = T::from_f(0.5);
    let nodes: Vec<T> = (0..order).map(|i| (polished[i] - polished[order - 1 - i]) * half).collect();
    let weights = nodes.iter().map(|&x| christoffel(x)).collect();
    Ok(QuadratureRule { nodes, weights, order })
}

/// Point in space with Cartesian storage and cylindrical accessors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn from_cylindrical(rho: T, phi: T, z: T) -> Self {
        Self::new(rho * phi.cos(), rho * phi.sin(), z)
    }

    pub fn rho(&self) -> T {
        self.x.hypot(self.y)
    }

    /// Azimuth in `[0, 2 pi)`.
    pub fn phi(&self) -> T {
        let p = self.y.atan2(self.x);
        if p < T::zero() {
            p + T::TAU()
        } else {
            p
        }
    }
}

/// Tensor-product quadrature of
/// `int e^{-|x|^2} H_r(x~1) H_s(x~2) H_t(x~3) H_i(x1) H_k(x2) H_l(x3)`,
/// `x~ = R^T x`, for every pair of states on one level at once.
#[derive(Debug, Clone)]
pub struct QuadratureEvaluator<T> {
    basis: EigenspaceBasis,
    rotation: RotationMatrix<T>,
    integrals: Vec<T>,
}

impl<T: Real> QuadratureEvaluator<T> {
    pub fn new(level: u32, rot: &RotationMatrix<T>) -> Result<Self> {
        for (i, j, name) in [(1, 3, "R13"), (2, 3, "R23"), (3, 3, "R33")] {
            let v = rot.at(i, j);
            if v.abs().to_f() < crate::bikraw::GENERICITY_GUARD {
                return Err(Error::Singular { entry: name, value: v.to_f() });
            }
        }
        let order = (level as usize + 1).max(8);
        let rule = gauss_hermite::<T>(order)?;
        let basis = EigenspaceBasis::new(level);
        let dim = basis.len();
        let axis_tables: Vec<Vec<T>> = rule.nodes.iter().map(|x| hermite_table(level, x)).collect();

        let mut acc = vec![NeumaierSum::<T>::new(); dim * dim];
        let mut left = vec![T::zero(); dim];
        let mut right = vec![T::zero(); dim];
        for (a, ta) in axis_tables.iter().enumerate() {
            for (b, tb) in axis_tables.iter().enumerate() {
                for (c, tc) in axis_tables.iter().enumerate() {
                    let w = rule.weights[a] * rule.weights[b] * rule.weights[c];
                    let rotated = rot.apply_transpose([rule.nodes[a], rule.nodes[b], rule.nodes[c]]);
                    let tr: Vec<Vec<T>> = rotated.iter().map(|x| hermite_table(level, x)).collect();
                    for (idx, s) in basis.states().iter().enumerate() {
                        let (p, q, r) = (s.a as usize, s.b as usize, s.c as usize);
                        left[idx] = w * ta[p] * tb[q] * tc[r];
                        right[idx] = tr[0][p] * tr[1][q] * tr[2][r];
                    }
                    for (row, &lv) in left.iter().enumerate() {
                        for (col, &rv) in right.iter().enumerate() {
                            acc[row * dim + col] += lv * rv;
                        }
                    }
                }
            }
        }
        let integrals = acc.iter().map(NeumaierSum::value).collect();
        Ok(Self { basis, rotation: *rot, integrals })
    }

    /// `R13^{-i} R23^{-k} R33^{-l} binom(N; r, s)^{1/2} / (2^N pi^{3/2} N!)` times the integral.
    pub fn polynomial(&self, r: u32, s: u32, i: u32, k: u32) -> Result<T> {
        let level = self.basis.level();
        let args = BiKrawArgs::new(r, s, i, k, level, self.rotation)?;
        let row = self.basis.index_of(&Composition3::new(i, k, args.l())).expect("checked");
        let col = self.basis.index_of(&Composition3::new(r, s, args.t())).expect("checked");
        let rot = &self.rotation;
        let scale = rot.at(1, 3).powi(-(i as i32)) * rot.at(2, 3).powi(-(k as i32)) * rot.at(3, 3).powi(-(args.l() as i32));
        let tri = trinomial::<T>(TrinomialArgs::new(level, r, s))?.sqrt();
        let norm = T::from_f(2.0).powi(level as i32) * T::PI().powf(T::from_f(1.5)) * factorial::<T>(level);
        Ok(scale * tri / norm * self.integrals[row * self.basis.len() + col])
    }
}

pub fn p_quadrature<T: Real>(args: &BiKrawArgs<T>) -> Result<T> {
    QuadratureEvaluator::new(args.level, &args.rotation)?.polynomial(args.r, args.s, args.i, args.k)
}

/// `[2^N pi^{3/2} n_x! n_y! n_z!]^{-1/2} e^{-|x|^2/2} H_{n_x}(x) H_{n_y}(y) H_{n_z}(z)`.
pub fn psi_cartesian<T: Real>(state: &Composition3, pt: &Point3<T>) -> T {
    let n = state.total();
    let denom = T::from_f(2.0).powi(n as i32)
        * T::PI().powf(T::from_f(1.5))
        * factorial::<T>(state.a)
        * factorial::<T>(state.b)
        * factorial::<T>(state.c);
    let r2 = pt.x * pt.x + pt.y * pt.y + pt.z * pt.z;
    (T::one() / denom).sqrt()
        * (-r2 / T::from_f(2.0)).exp()
        * hermite(state.a, &pt.x)
        * hermite(state.b, &pt.y)
        * hermite(state.c, &pt.z)
}

/// `(-1)^{n_rho} pi^{-3/4} [n_rho! / (2^{n_z} n_z! (n_rho + |m|)!)]^{1/2}
///  e^{-(rho^2 + z^2)/2} rho^{|m|} L_{n_rho}^{(|m|)}(rho^2) H_{n_z}(z) e^{i m phi}`.
pub fn psi_polar<T: Real>(state: &PolarLabel, pt: &Point3<T>) -> Complex<T> {
    let abs_m = state.m.unsigned_abs();
    let rho = pt.rho();
    let rho2 = rho * rho;
    let norm = (factorial::<T>(state.n_rho)
        / (T::from_f(2.0).powi(state.n_z as i32) * factorial::<T>(state.n_z) * factorial::<T>(state.n_rho + abs_m)))
    .sqrt()
        / T::PI().powf(T::from_f(0.75));
    let sign = if state.n_rho.is_multiple_of(2) { T::one() } else { -T::one() };
    let radial = sign
        * norm
        * (-(rho2 + pt.z * pt.z) / T::from_f(2.0)).exp()
        * rho.powi(abs_m as i32)
        * laguerre(state.n_rho, &T::from_f(abs_m.into()), &rho2)
        * hermite(state.n_z, &pt.z);
    Complex::from_polar(radial, T::from_f(state.m.into()) * pt.phi())
}

/// Worst relative error of
/// `psi_polar(p) = sum_C <C|P> psi_cartesian(C)` over all polar states of
/// levels `0..=max_level` at the given points. Each state's error is taken
/// relative to its largest magnitude over the points.
pub fn polar_reconstruction_defect<T: Real>(max_level: u32, points: &[Point3<T>]) -> T {
    let mut worst = T::zero();
    for level in 0..=max_level {
        let basis = EigenspaceBasis::new(level);
        for pol in polar_labels(level) {
            let mut scale = T::zero();
            let mut err = T::zero();
            for pt in points {
                let direct = psi_polar(&pol, pt);
                let expanded = basis
                    .states()
                    .iter()
                    .fold(Complex::new(T::zero(), T::zero()), |acc, c| acc + cartesian_polar(c, &pol) * psi_cartesian(c, pt));
                scale = scale.max(direct.norm());
                err = err.max((direct - expanded).norm());
            }
            worst = worst.max(err / scale);
        }
    }
    worst
}

/// `max |<psi_a|psi_b> - delta|` over Cartesian states of levels `0..=max_level`,
/// integrated on the tensor Gauss-Hermite grid.
pub fn cartesian_gram_defect<T: Real>(max_level: u32) -> Result<T> {
    let rule = gauss_hermite::<T>((max_level as usize + 1).max(8))?;
    let states: Vec<Composition3> = (0..=max_level).flat_map(|n| EigenspaceBasis::new(n).states().to_vec()).collect();
    // psi = e^{-x^2/2} h(x) per axis; the Gaussian weight absorbs e^{-x^2}.
    let axis_norm = |n: u32| (T::from_f(2.0).powi(n as i32) * factorial::<T>(n) * T::PI().sqrt()).sqrt();
    let axis_gram = |p: u32, q: u32| rule.integrate(|x| hermite(p, &x) * hermite(q, &x)) / (axis_norm(p) * axis_norm(q));
    let mut worst = T::zero();
    for a in &states {
        for b in &states {
            let g = axis_gram(a.a, b.a) * axis_gram(a.b, b.b) * axis_gram(a.c, b.c);
            let target = if a == b { T::one() } else { T::zero() };
            worst = worst.max((g - target).abs());
        }
    }
    Ok(worst)
}
