//! Operator expressions in one canonical mode: `a`, `ad` (its adjoint), the central symbol `c`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::laurent::CPoly;

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorExpr {
    /// Annihilator `a`.
    A,
    /// Creator `ad`.
    Ad,
    /// Central symbol `c`.
    C,
    Rational(BigRational),
    /// Exact Laurent polynomial in `c`; built programmatically, never produced by the parser.
    Scalar(CPoly<BigRational>),
    Add(Box<OperatorExpr>, Box<OperatorExpr>),
    Sub(Box<OperatorExpr>, Box<OperatorExpr>),
    Mul(Box<OperatorExpr>, Box<OperatorExpr>),
    Pow(Box<OperatorExpr>, u32),
    Commutator(Box<OperatorExpr>, Box<OperatorExpr>),
}

impl OperatorExpr {
    pub fn one() -> Self {
        OperatorExpr::Rational(BigRational::one())
    }

    pub fn pow(self, n: u32) -> Self {
        OperatorExpr::Pow(Box::new(self), n)
    }

    pub fn commutator(x: Self, y: Self) -> Self {
        OperatorExpr::Commutator(Box::new(x), Box::new(y))
    }

    pub fn mul(self, rhs: Self) -> Self {
        OperatorExpr::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn add(self, rhs: Self) -> Self {
        OperatorExpr::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Self) -> Self {
        OperatorExpr::Sub(Box::new(self), Box::new(rhs))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            OperatorExpr::A | OperatorExpr::Ad | OperatorExpr::C | OperatorExpr::Rational(_) | OperatorExpr::Scalar(_) => 1,
            OperatorExpr::Pow(x, _) => 1 + x.size(),
            OperatorExpr::Add(x, y) | OperatorExpr::Sub(x, y) | OperatorExpr::Mul(x, y) | OperatorExpr::Commutator(x, y) => {
                1 + x.size() + y.size()
            }
        }
    }
}

/// Fully parenthesised rendering that parses back to an equal tree (except for `Scalar`
/// nodes, which have no surface syntax).
impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::A => write!(f, "a"),
            OperatorExpr::Ad => write!(f, "ad"),
            OperatorExpr::C => write!(f, "c"),
            OperatorExpr::Rational(q) if q.is_integer() && !q.is_zero() && q > &BigRational::zero() => write!(f, "{}", q.numer()),
            OperatorExpr::Rational(q) if q >= &BigRational::zero() => write!(f, "{}/{}", q.numer(), q.denom()),
            OperatorExpr::Rational(q) => write!(f, "(0 - {}/{})", -q.numer(), q.denom()),
            OperatorExpr::Scalar(p) => write!(f, "{{{p}}}"),
            OperatorExpr::Add(x, y) => write!(f, "({x} + {y})"),
            OperatorExpr::Sub(x, y) => write!(f, "({x} - {y})"),
            OperatorExpr::Mul(x, y) => write!(f, "({x} * {y})"),
            OperatorExpr::Pow(x, n) => write!(f, "({x})^{n}"),
            OperatorExpr::Commutator(x, y) => write!(f, "[{x}, {y}]"),
        }
    }
}
