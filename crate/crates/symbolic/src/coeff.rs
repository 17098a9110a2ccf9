//! Coefficient rings for the symbolic engine.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Commutative ring with a map from the rationals.
pub trait Coefficient:
    Clone + PartialEq + Debug + Display + Zero + One + Neg<Output = Self> + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn from_rational(q: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

/// Rings that contain a square root of `−1`.
pub trait ImaginaryUnit: Coefficient {
    fn i() -> Self;
}

impl Coefficient for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl Coefficient for Complex<BigRational> {
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.clone(), BigRational::zero())
    }
}

impl ImaginaryUnit for Complex<BigRational> {
    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
}

impl Coefficient for f64 {
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Coefficient for Complex<f64> {
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl ImaginaryUnit for Complex<f64> {
    fn i() -> Self {
        Complex::new(0.0, 1.0)
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `C(n, k)` as a big integer.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}
