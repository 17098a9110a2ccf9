//! The real scalar abstraction every numeric routine in this crate is written against.
//!
//! Anything that is a `num_traits::Float` and that `rustfft` can transform qualifies, which in
//! practice means `f32` and `f64`. Both `Float` and `Signed` provide `abs`, so call sites use
//! `Float::abs(x)` explicitly.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use rustfft::FftNum;

pub trait Real: Float + FloatConst + FromPrimitive + FftNum + Default + Display + Debug + Send + Sync {}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + FftNum + Default + Display + Debug + Send + Sync {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("usize representable in scalar type")
}

#[inline]
pub fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// The imaginary unit.
#[inline]
pub fn ci<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// Euclidean norm of a complex vector.
pub fn vec_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// Hermitian inner product `Σ conj(u_i) v_i` without any volume factor.
pub fn vec_dot<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    u.iter().zip(v).fold(czero(), |acc, (a, b)| acc + a.conj() * b)
}
