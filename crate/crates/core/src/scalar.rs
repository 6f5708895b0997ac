//! Scalar abstractions.
//!
//! Two tiers are used throughout the crate:
//!
//! * [`Field`]: anything with exact-or-rounded field arithmetic. Implemented
//!   for `f32`, `f64` and [`Exact`] (arbitrary precision rationals). The
//!   terminating hypergeometric machinery is written against this trait so the
//!   same code evaluates in floating point or exactly.
//! * [`Real`]: floating-point types (`f32`, `f64`) that additionally provide
//!   square roots and trigonometry.

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive, Zero};

/// Arbitrary precision rational.
pub type Exact = BigRational;

pub trait Field: Clone + Num + Neg<Output = Self> + PartialOrd + FromPrimitive + Debug {
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer is representable")
    }

    fn magnitude(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl<F> Field for F where F: Clone + Num + Neg<Output = F> + PartialOrd + FromPrimitive + Debug {}

pub trait Real: Field + Float + FloatConst + Display + Send + Sync + 'static {
    /// Converts an exact rational as a sum of `f64` limbs, so types wider
    /// than `f64` keep their full precision.
    fn from_exact(q: &Exact) -> Self {
        let first = exact_to_f64(q);
        let wider = Self::one() + Self::from_f(2f64.powi(-60)) != Self::one();
        if !wider || first == 0.0 || !first.is_finite() {
            return Self::from_f(first);
        }
        let mut acc = Self::from_f(first);
        let (mut num, mut den) = (q.numer().clone(), q.denom().clone());
        let mut limb = first;
        for _ in 1..MAX_LIMBS {
            // rest = num/den - limb, with limb = mant 2^exp, kept unreduced.
            let (mant, exp, sign) = Float::integer_decode(limb);
            let mant = BigInt::from(mant) * i64::from(sign);
            if exp >= 0 {
                num -= (mant << exp as usize) * &den;
            } else {
                num = (num << (-exp) as usize) - mant * &den;
                den <<= (-exp) as usize;
            }
            limb = exact_to_f64(&Exact::new_raw(num.clone(), den.clone()));
            if limb == 0.0 {
                break;
            }
            acc = acc + Self::from_f(limb);
        }
        acc
    }

    fn from_f(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 is representable")
    }

    fn to_f(self) -> f64 {
        ToPrimitive::to_f64(&self).expect("real converts to f64")
    }
}

impl<T> Real for T where T: Field + Float + FloatConst + Display + Send + Sync + 'static {}

/// Enough `f64` limbs to carry a 113-bit significand with margin.
const MAX_LIMBS: usize = 4;

/// The exact binary value of `x`.
pub fn exact_from_real<T: Real>(x: T) -> Exact {
    let mut rest = x;
    let mut acc = Exact::zero();
    for _ in 0..MAX_LIMBS {
        let limb = rest.to_f();
        if limb == 0.0 {
            break;
        }
        acc += Exact::from_float(limb).expect("finite value");
        rest = rest - T::from_f(limb);
    }
    acc
}

/// Unit roundoff of `T`. Double-double types report `MIN_POSITIVE` as their
/// epsilon, so the value is floored at the double-double precision `2^-104`.
pub fn unit_roundoff<T: Real>() -> T {
    T::epsilon().max(T::from_f(2f64.powi(-104)))
}

/// Correctly rounded-ish conversion of a big rational, robust to numerators
/// and denominators beyond the `f64` range.
pub fn exact_to_f64(q: &Exact) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let (num, den) = (q.numer(), q.denom());
    let shift = num.bits() as i64 - den.bits() as i64;
    // Scale so the quotient carries 64 significant bits.
    let k = 64 - shift;
    let scaled: BigInt = if k >= 0 { (num << k as usize) / den } else { num / (den << (-k) as usize) };
    let half = (-k / 2) as i32;
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(half) * 2f64.powi(-k as i32 - half)
}

pub fn exact_from_ratio(numer: i64, denom: i64) -> Exact {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Neumaier's variant of Kahan summation.
///
/// For exact fields the compensation term stays identically zero.
#[derive(Debug, Clone)]
pub struct NeumaierSum<F> {
    sum: F,
    comp: F,
}

impl<F: Field> Default for NeumaierSum<F> {
    fn default() -> Self {
        Self { sum: F::zero(), comp: F::zero() }
    }
}

impl<F: Field> NeumaierSum<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self) -> F {
        self.sum.clone() + self.comp.clone()
    }
}

impl<F: Field> AddAssign<F> for NeumaierSum<F> {
    fn add_assign(&mut self, rhs: F) {
        let t = self.sum.clone() + rhs.clone();
        if self.sum.magnitude() >= rhs.magnitude() {
            self.comp = self.comp.clone() + ((self.sum.clone() - t.clone()) + rhs);
        } else {
            self.comp = self.comp.clone() + ((rhs - t.clone()) + self.sum.clone());
        }
        self.sum = t;
    }
}

impl<F: Field> Add<F> for NeumaierSum<F> {
    type Output = Self;

    fn add(mut self, rhs: F) -> Self {
        self += rhs;
        self
    }
}

impl<F: Field> FromIterator<F> for NeumaierSum<F> {
    fn from_iter<I: IntoIterator<Item = F>>(iter: I) -> Self {
        iter.into_iter().fold(Self::new(), |acc, x| acc + x)
    }
}

/// `(-1)^k` in any field.
pub fn sign_pow<F: Field>(k: i64) -> F {
    if k.rem_euclid(2) == 0 {
        F::one()
    } else {
        -F::one()
    }
}

pub fn powi<F: Field>(base: &F, exp: u32) -> F {
    (0..exp).fold(F::one(), |acc, _| acc * base.clone())
}
