//! Normal-ordered polynomials `Σ coef(p, q) · ad^p a^q` with coefficients Laurent in `c`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{binomial, factorial, Coefficient};
use crate::expr::OperatorExpr;
use crate::laurent::CPoly;

/// Canonical normal form: zero coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalPoly<R> {
    terms: BTreeMap<(u32, u32), CPoly<R>>,
}

impl<R: Coefficient> NormalPoly<R> {
    /// `coef · ad^p a^q`.
    pub fn monomial(p: u32, q: u32, coef: CPoly<R>) -> Self {
        let mut out = Self::zero();
        out.add_term((p, q), coef);
        out
    }

    pub fn scalar(coef: CPoly<R>) -> Self {
        Self::monomial(0, 0, coef)
    }

    pub fn a() -> Self {
        Self::monomial(0, 1, CPoly::one())
    }

    pub fn ad() -> Self {
        Self::monomial(1, 0, CPoly::one())
    }

    pub fn c() -> Self {
        Self::scalar(CPoly::c_pow(1))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &CPoly<R>)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coefficient(&self, p: u32, q: u32) -> CPoly<R> {
        self.terms.get(&(p, q)).cloned().unwrap_or_else(CPoly::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: &CPoly<R>) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v.clone() * s.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        result
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.clone() * other.clone() - other.clone() * self.clone()
    }

    pub(crate) fn add_term(&mut self, key: (u32, u32), coef: CPoly<R>) {
        if coef.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(old) => old + coef,
            None => coef,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }
}

impl NormalPoly<BigRational> {
    /// Rebuilds an expression whose normal form is `self`.
    pub fn to_expr(&self) -> OperatorExpr {
        let mut out: Option<OperatorExpr> = None;
        for (&(p, q), coef) in &self.terms {
            let mut word = OperatorExpr::Scalar(coef.clone());
            if p > 0 {
                word = word.mul(OperatorExpr::Ad.pow(p));
            }
            if q > 0 {
                word = word.mul(OperatorExpr::A.pow(q));
            }
            out = Some(match out {
                None => word,
                Some(acc) => acc.add(word),
            });
        }
        out.unwrap_or_else(|| OperatorExpr::Rational(BigRational::zero()))
    }
}

/// Coefficient of `ad^{p+r−k} a^{q+s−k}` in `(ad^p a^q)(ad^r a^s)`: `C(q,k)·C(r,k)·k!·c^k`.
fn contraction_weight<R: Coefficient>(q: u32, r: u32, k: u32) -> CPoly<R> {
    let n = binomial(q, k) * binomial(r, k) * factorial(k);
    let n = BigRational::from_integer(n);
    CPoly::monomial(R::from_rational(&n), k as i32)
}

impl<R: Coefficient> Zero for NormalPoly<R> {
    fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Coefficient> One for NormalPoly<R> {
    fn one() -> Self {
        Self::scalar(CPoly::one())
    }
}

impl<R: Coefficient> Add for NormalPoly<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
        self
    }
}

impl<R: Coefficient> Neg for NormalPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect() }
    }
}

impl<R: Coefficient> Sub for NormalPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Coefficient> Mul for NormalPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (&(p, q), x) in &self.terms {
            for (&(r, s), y) in &rhs.terms {
                let xy = x.clone() * y.clone();
                for k in 0..=q.min(r) {
                    out.add_term((p + r - k, q + s - k), xy.clone() * contraction_weight(q, r, k));
                }
            }
        }
        out
    }
}

impl<R: Coefficient> fmt::Display for NormalPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((p, q), v)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let mut word = Vec::new();
            match p {
                0 => {}
                1 => word.push("ad".to_string()),
                p => word.push(format!("ad^{p}")),
            }
            match q {
                0 => {}
                1 => word.push("a".to_string()),
                q => word.push(format!("a^{q}")),
            }
            if word.is_empty() {
                write!(f, "({v})")?;
            } else if v.is_one() {
                write!(f, "{}", word.join("*"))?;
            } else {
                write!(f, "({v})*{}", word.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Normal form of `e`. Commutators are expanded as `x*y − y*x`.
pub fn normal_order<R: Coefficient>(e: &OperatorExpr) -> NormalPoly<R> {
    match e {
        OperatorExpr::A => NormalPoly::a(),
        OperatorExpr::Ad => NormalPoly::ad(),
        OperatorExpr::C => NormalPoly::c(),
        OperatorExpr::Rational(q) => NormalPoly::scalar(CPoly::constant(R::from_rational(q))),
        OperatorExpr::Scalar(p) => NormalPoly::scalar(p.map(R::from_rational)),
        OperatorExpr::Add(x, y) => normal_order::<R>(x) + normal_order(y),
        OperatorExpr::Sub(x, y) => normal_order::<R>(x) - normal_order(y),
        OperatorExpr::Mul(x, y) => normal_order::<R>(x) * normal_order(y),
        OperatorExpr::Pow(x, n) => normal_order::<R>(x).pow(*n),
        OperatorExpr::Commutator(x, y) => {
            let (x, y) = (normal_order::<R>(x), normal_order::<R>(y));
            x.clone() * y.clone() - y * x
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational;
    use crate::parser::parse_expr;

    type N = NormalPoly<BigRational>;

    fn nf(s: &str) -> N {
        normal_order(&parse_expr(s).unwrap())
    }

    fn cq(n: i64, k: i32) -> CPoly<BigRational> {
        CPoly::monomial(rational(n, 1), k)
    }

    #[test]
    fn single_rewrite() {
        let want = N::monomial(1, 1, cq(1, 0)) + N::scalar(cq(1, 1));
        assert_eq!(nf("a*ad"), want);
    }

    #[test]
    fn commutator_is_central_symbol() {
        assert_eq!(nf("[a, ad]"), N::scalar(cq(1, 1)));
        assert_eq!(nf("[ad, a]"), N::scalar(cq(-1, 1)));
        assert!(nf("[a, a]").is_zero());
    }

    #[test]
    fn double_contraction() {
        let want = N::monomial(2, 2, cq(1, 0)) + N::monomial(1, 1, cq(4, 1)) + N::scalar(cq(2, 2));
        assert_eq!(nf("a*a*ad*ad"), want);
    }

    #[test]
    fn polynomial_in_c_is_scalar() {
        assert_eq!(nf("c*c + 2*c"), N::scalar(cq(1, 2) + cq(2, 1)));
    }

    #[test]
    fn normal_form_is_idempotent() {
        let x = nf("(a + 2*ad*c)^3 * [a^2, ad] - 1/3");
        assert_eq!(normal_order::<BigRational>(&x.to_expr()), x);
    }

    #[test]
    fn power_matches_repeated_product() {
        let x = nf("a + ad");
        assert_eq!(x.pow(5), x.clone() * x.clone() * x.clone() * x.clone() * x);
    }

    #[test]
    fn display() {
        assert_eq!(nf("a*ad").to_string(), "ad*a + (c)");
        assert_eq!(N::zero().to_string(), "0");
    }
}
