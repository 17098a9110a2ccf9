//! Laurent polynomials in the formal central symbol `c`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeff::Coefficient;

/// `Σ_k r_k c^k` with finitely many nonzero `r_k`, `k ∈ ℤ`. Zero coefficients are never stored,
/// so structural equality is equality.
#[derive(Debug, Clone, PartialEq)]
pub struct CPoly<R> {
    terms: BTreeMap<i32, R>,
}

impl<R: Coefficient> CPoly<R> {
    pub fn monomial(coef: R, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(power, coef);
        }
        Self { terms }
    }

    pub fn constant(coef: R) -> Self {
        Self::monomial(coef, 0)
    }

    /// `c^power`.
    pub fn c_pow(power: i32) -> Self {
        Self::monomial(R::one(), power)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &R)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, power: i32) -> R {
        self.terms.get(&power).cloned().unwrap_or_else(R::zero)
    }

    pub fn scale(&self, s: &R) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v.clone() * s.clone());
        }
        out
    }

    fn add_term(&mut self, power: i32, coef: R) {
        if coef.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&power) {
            Some(old) => old + coef,
            None => coef,
        };
        if !sum.is_zero() {
            self.terms.insert(power, sum);
        }
    }

    /// Applies a ring map to every coefficient.
    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> CPoly<S> {
        let mut out = CPoly::<S>::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, f(v));
        }
        out
    }

    /// Substitutes a value for `c`; negative powers use `inverse` as `c⁻¹`.
    pub fn evaluate(&self, c: &R, inverse: &R) -> R {
        self.terms.iter().fold(R::zero(), |acc, (k, v)| {
            let base = if *k >= 0 { c } else { inverse };
            let p = (0..k.unsigned_abs()).fold(R::one(), |p, _| p * base.clone());
            acc + v.clone() * p
        })
    }
}

impl<R: Coefficient> Zero for CPoly<R> {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Coefficient> One for CPoly<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Coefficient> Add for CPoly<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
        self
    }
}

impl<R: Coefficient> Neg for CPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect() }
    }
}

impl<R: Coefficient> Sub for CPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Coefficient> Mul for CPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<R: Coefficient> fmt::Display for CPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, v)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match *k {
                0 => write!(f, "{v}")?,
                1 if v.is_one() => write!(f, "c")?,
                1 => write!(f, "({v})*c")?,
                k if v.is_one() => write!(f, "c^{k}")?,
                k => write!(f, "({v})*c^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational;
    use num_rational::BigRational;

    type P = CPoly<BigRational>;

    #[test]
    fn inverse_powers_cancel() {
        let x = P::monomial(rational(3, 1), 2) * P::monomial(rational(1, 3), -2);
        assert_eq!(x, P::one());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let x = P::c_pow(1) + P::constant(rational(2, 1));
        let y = x.clone() - P::c_pow(1);
        assert_eq!(y, P::constant(rational(2, 1)));
        assert!((x.clone() - x).is_zero());
    }

    #[test]
    fn evaluation() {
        let x = P::monomial(rational(1, 2), 2) + P::monomial(rational(3, 1), -1);
        assert_eq!(x.evaluate(&rational(2, 1), &rational(1, 2)), rational(7, 2));
    }
}
