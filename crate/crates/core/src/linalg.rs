//! Dense complex matrices and a cyclic Jacobi eigensolver for Hermitian
//! matrices. Sizes here stay below a few hundred rows.

use std::ops::{Index, IndexMut, Mul};

use ndarray::Array2;
use num_complex::Complex;

use crate::scalar::{unit_roundoff, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    data: Array2<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { data: Array2::from_elem((dim, dim), Complex::new(T::zero(), T::zero())) }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        Self { data: Array2::from_shape_fn((dim, dim), |(i, j)| f(i, j)) }
    }

    pub fn from_real_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        Self::from_fn(dim, |i, j| Complex::new(f(i, j), T::zero()))
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn as_array(&self) -> &Array2<Complex<T>> {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self { data: self.data.t().mapv(|z| z.conj()) }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { data: self.data.mapv(|z| z * c) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { data: &self.data + &other.data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { data: &self.data - &other.data }
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        (self * other).sub(&(other * self))
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.sub(other).max_abs()
    }

    /// `max |M M^dagger - I|`.
    pub fn unitarity_defect(&self) -> T {
        (self * &self.adjoint()).max_abs_diff(&Self::identity(self.dim()))
    }

    pub fn hermiticity_defect(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn max_imag(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.im.abs()))
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, idx: (usize, usize)) -> &Complex<T> {
        &self.data[idx]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut Complex<T> {
        &mut self.data[idx]
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        ComplexMatrix { data: self.data.dot(&rhs.data) }
    }
}

/// Eigenvalues in ascending order with matching unitary eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
pub fn hermitian_eigen<T: Real>(h: &ComplexMatrix<T>) -> HermitianEigen<T> {
    let n = h.dim();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(T::min_positive_value());
    let eps = unit_roundoff::<T>();
    let tiny = eps * eps * scale * scale;

    for _sweep in 0..100 {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |s, (i, j)| s + a[(i, j)].norm_sqr());
        if off <= tiny {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let h_pq = a[(p, q)];
                let g = h_pq.norm();
                if g == T::zero() {
                    continue;
                }
                let phase = h_pq / g; // e^{i phi}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (g + g);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                // Rotation on the (p, q) plane: G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
                let gpp = Complex::new(c, T::zero());
                let gpq = Complex::new(s, T::zero());
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[(p, q)] = Complex::new(T::zero(), T::zero());
                a[(q, p)] = Complex::new(T::zero(), T::zero());
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}

/// `exp(-i theta H)` for Hermitian `H`, via `V exp(-i theta Lambda) V^dagger`.
pub fn exp_hermitian<T: Real>(h: &ComplexMatrix<T>, theta: T) -> ComplexMatrix<T> {
    let eig = hermitian_eigen(h);
    exp_from_eigen(&eig, theta)
}

pub fn exp_from_eigen<T: Real>(eig: &HermitianEigen<T>, theta: T) -> ComplexMatrix<T> {
    let n = eig.values.len();
    let v = &eig.vectors;
    let phases: Vec<Complex<T>> = eig.values.iter().map(|&l| Complex::from_polar(T::one(), -theta * l)).collect();
    ComplexMatrix::from_fn(n, |i, j| {
        (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, k| acc + v[(i, k)] * phases[k] * v[(j, k)].conj())
    })
}
