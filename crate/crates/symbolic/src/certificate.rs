//! Certificates for the creation-on-power identity and the descent contradiction.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::factorial;
use crate::expr::OperatorExpr;
use crate::laurent::CPoly;
use crate::normal::{normal_order, NormalPoly};

type Q = BigRational;

/// Outcome of `[a^(n+1), ad] = (n+1)·c·a^n` for one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerCheck {
    pub n: u32,
    /// `normal_order([a^(n+1), ad]) − (n+1)·c·normal_order(a^n)`.
    pub residual: NormalPoly<Q>,
    /// Same identity with the left side built by the recursion
    /// `[a^(n+1), ad] = a·[a^n, ad] + c·a^n`.
    pub recursive_residual: NormalPoly<Q>,
}

impl PowerCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero() && self.recursive_residual.is_zero()
    }
}

fn a_pow(n: u32) -> OperatorExpr {
    OperatorExpr::A.pow(n)
}

/// Checks the creation-on-power identity for every `n` in `0..=n_max`.
pub fn power_commutator_check(n_max: u32) -> Vec<PowerCheck> {
    let c = NormalPoly::<Q>::c();
    let a = NormalPoly::<Q>::a();
    let mut recursive = NormalPoly::<Q>::zero(); // [a^0, ad] = 0
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let an = normal_order::<Q>(&a_pow(n));
        recursive = a.clone() * recursive + c.clone() * an.clone();
        let lhs = normal_order::<Q>(&OperatorExpr::commutator(a_pow(n + 1), OperatorExpr::Ad));
        let rhs = an.scale(&CPoly::monomial(Q::from_integer(BigInt::from(n + 1)), 1));
        out.push(PowerCheck { n, residual: lhs - rhs.clone(), recursive_residual: recursive.clone() - rhs });
    }
    out
}

/// `a^k = (1/((k+1)c)) · (a^(k+1)·ad − ad·a^(k+1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct DescentStep {
    pub k: u32,
    pub rhs: OperatorExpr,
    pub residual: NormalPoly<Q>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentCertificate {
    pub k: u32,
    /// Steps for `k = K` down to `0`.
    pub steps: Vec<DescentStep>,
    /// `1/((K+1)!·c^(K+1))`.
    pub coefficient: CPoly<Q>,
    /// `[[…[a^(K+1), ad], …], ad]`, nested `K+1` times; lies in the two-sided ideal of `a^(K+1)`.
    pub nested: OperatorExpr,
    /// Normal form of `coefficient · nested`; equals `1` when the certificate holds.
    pub composed: NormalPoly<Q>,
    pub contradiction: String,
}

impl DescentCertificate {
    pub fn verified(&self) -> bool {
        self.steps.iter().all(|s| s.residual.is_zero()) && self.composed == NormalPoly::one()
    }
}

/// Builds and verifies the descent from `a^(K+1) = 0` to `1 = 0`.
pub fn descent_certificate(k_top: u32) -> DescentCertificate {
    let mut steps = Vec::with_capacity(k_top as usize + 1);
    for k in (0..=k_top).rev() {
        let coef = CPoly::monomial(Q::new(BigInt::one(), BigInt::from(k + 1)), -1);
        let diff = a_pow(k + 1).mul(OperatorExpr::Ad).sub(OperatorExpr::Ad.mul(a_pow(k + 1)));
        let rhs = OperatorExpr::Scalar(coef).mul(diff);
        let residual = normal_order::<Q>(&rhs) - normal_order(&a_pow(k));
        steps.push(DescentStep { k, rhs, residual });
    }
    let nested = (0..=k_top).fold(a_pow(k_top + 1), |acc, _| OperatorExpr::commutator(acc, OperatorExpr::Ad));
    let coefficient = CPoly::monomial(Q::new(BigInt::one(), factorial(k_top + 1)), -(k_top as i32 + 1));
    let composed = normal_order::<Q>(&OperatorExpr::Scalar(coefficient.clone()).mul(nested.clone()));
    let contradiction = if k_top == 0 {
        "a = 0 forces c = [a, ad] = 0, contradicting [a, ad] = c".to_string()
    } else {
        format!("1 = 0 modulo ideal(a^{}), hence [a, ad] = c is violated", k_top + 1)
    };
    DescentCertificate { k: k_top, steps, coefficient, nested, composed, contradiction }
}

impl fmt::Display for DescentCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "descent certificate K = {}", self.k)?;
        for s in &self.steps {
            let k1 = s.k + 1;
            let residual = if s.residual.is_zero() { "0".to_string() } else { s.residual.to_string() };
            writeln!(f, "step {}: a^{} = (1/({k1}c)) * ( a^{k1}*ad - ad*a^{k1} ) ; residual {residual}", s.k, s.k)?;
        }
        let k1 = self.k + 1;
        let expansion = if self.composed.is_one() { "1".to_string() } else { self.composed.to_string() };
        writeln!(f, "composed: 1 = (1/({k1}! c^{k1})) * [[...[a^{k1}, ad], ...], ad] ({k1}-fold) ; expands to {expansion}")?;
        writeln!(f, "contradiction: {}", self.contradiction)?;
        write!(f, "verified: {}", self.verified())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{rewrite_normal_order, Strategy};

    #[test]
    fn base_case() {
        let r = power_commutator_check(3);
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(PowerCheck::passed));
    }

    #[test]
    fn k_zero_certificate() {
        let cert = descent_certificate(0);
        assert_eq!(cert.steps.len(), 1);
        assert!(cert.verified());
        assert!(cert.contradiction.contains("a = 0 forces c"));
        assert_eq!(cert.coefficient, CPoly::monomial(Q::one(), -1));
    }

    #[test]
    fn k_two_text() {
        let cert = descent_certificate(2);
        let text = cert.to_string();
        let lines: Vec<_> = text.lines().filter(|l| l.starts_with("step")).collect();
        assert_eq!(
            lines,
            [
                "step 2: a^2 = (1/(3c)) * ( a^3*ad - ad*a^3 ) ; residual 0",
                "step 1: a^1 = (1/(2c)) * ( a^2*ad - ad*a^2 ) ; residual 0",
                "step 0: a^0 = (1/(1c)) * ( a^1*ad - ad*a^1 ) ; residual 0",
            ]
        );
    }

    #[test]
    fn k_ten_coefficient() {
        let cert = descent_certificate(10);
        assert!(cert.verified());
        let want = CPoly::monomial(Q::new(BigInt::one(), BigInt::from(39_916_800u64)), -11);
        assert_eq!(cert.coefficient, want);
    }

    #[test]
    fn nested_word_expands_by_rewriting() {
        let cert = descent_certificate(3);
        let nf = rewrite_normal_order::<Q>(&cert.nested, Strategy::Leftmost);
        assert_eq!(nf, NormalPoly::scalar(CPoly::monomial(Q::from_integer(BigInt::from(24)), 4)));
    }
}
