//! Bivariate Krawtchouk polynomials and the interbasis overlaps of the
//! isotropic three-dimensional harmonic oscillator.
//!
//! The polynomials `P_{r,s}(i, k; N)` are evaluated by several independent
//! routes (Gel'fand-Aomoto series, generating function, Wigner/interbasis
//! expansion, Gauss-Hermite quadrature, and the matrix exponential of the
//! angular momentum generators) so that each route checks the others.
//!
//! Numerical code is generic over the scalar type: the hypergeometric kernels
//! accept any [`Field`] (including exact rationals), everything that needs
//! square roots or trigonometry accepts any [`Real`]. Concrete `f64` aliases
//! are exported at the crate root.

pub mod bikraw;
mod error;
pub mod linalg;
pub mod oracles;
pub mod oscrep;
pub mod overlaps;
pub mod polyfun;
pub mod rotations;
pub mod scalar;
pub mod su11cg;

pub use error::{Error, Result};
pub use scalar::{Exact, Field, NeumaierSum, Real};

pub type EulerAngles64 = rotations::EulerAngles<f64>;
pub type RotationMatrix64 = rotations::RotationMatrix<f64>;
pub type ComplexMatrix64 = linalg::ComplexMatrix<f64>;
pub type OscillatorRep64 = oscrep::OscillatorRep<f64>;
pub type QuadratureRule64 = oracles::QuadratureRule<f64>;
pub type Point3f64 = oracles::Point3<f64>;
pub type TableEntry64 = bikraw::TableEntry<f64>;
pub type TratnikParams64 = bikraw::TratnikParams<f64>;
