//! Bargmann Lie algebra `{H, P_i, K_i, M, 1}` and Hadamard conjugation series.
//!
//! Brackets: `[K_i, P_j] = i·M·δ_ij`, `[K_i, H] = i·P_i`; every other bracket among basis
//! elements vanishes, and `M`, `1` are central.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeff::{Coefficient, ImaginaryUnit};
use crate::error::SymbolicError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    H,
    /// Momentum component, axis `0..3`.
    P(u8),
    /// Boost component, axis `0..3`.
    K(u8),
    M,
    One,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::H => write!(f, "H"),
            Basis::P(i) => write!(f, "P{}", i + 1),
            Basis::K(i) => write!(f, "K{}", i + 1),
            Basis::M => write!(f, "M"),
            Basis::One => write!(f, "1"),
        }
    }
}

/// Structure constants: `[x, y] = coef · z`, or `None` when the bracket vanishes.
pub fn basis_bracket<R: ImaginaryUnit>(x: Basis, y: Basis) -> Option<(R, Basis)> {
    match (x, y) {
        (Basis::K(i), Basis::P(j)) if i == j => Some((R::i(), Basis::M)),
        (Basis::P(j), Basis::K(i)) if i == j => Some((-R::i(), Basis::M)),
        (Basis::K(i), Basis::H) => Some((R::i(), Basis::P(i))),
        (Basis::H, Basis::K(i)) => Some((-R::i(), Basis::P(i))),
        _ => None,
    }
}

/// Polynomial in `v₁, v₂, v₃`, keyed by exponent triples.
#[derive(Debug, Clone, PartialEq)]
pub struct VPoly<R> {
    terms: BTreeMap<[u32; 3], R>,
}

impl<R: Coefficient> VPoly<R> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(r: R) -> Self {
        let mut out = Self::zero();
        out.add_term([0; 3], r);
        out
    }

    /// The variable `v_{axis+1}`.
    pub fn var(axis: usize) -> Self {
        let mut e = [0; 3];
        e[axis] = 1;
        let mut out = Self::zero();
        out.add_term(e, R::one());
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = ([u32; 3], &R)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    fn add_term(&mut self, e: [u32; 3], r: R) {
        if r.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + r,
            None => r,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, r) in &other.terms {
            out.add_term(*e, r.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e, x) in &self.terms {
            for (f, y) in &other.terms {
                out.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], x.clone() * y.clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &R) -> Self {
        let mut out = Self::zero();
        for (e, r) in &self.terms {
            out.add_term(*e, r.clone() * s.clone());
        }
        out
    }

    /// Substitutes values for the variables; the result is a constant polynomial.
    pub fn evaluate(&self, v: &[R; 3]) -> R {
        self.terms.iter().fold(R::zero(), |acc, (e, r)| {
            let mut t = r.clone();
            for axis in 0..3 {
                for _ in 0..e[axis] {
                    t = t * v[axis].clone();
                }
            }
            acc + t
        })
    }
}

impl<R: Coefficient> fmt::Display for VPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, r)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({r})")?;
            for (axis, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*v{}", axis + 1)?,
                    p => write!(f, "*v{}^{p}", axis + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// `Σ coef_b · b` over the basis, coefficients polynomial in `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElement<R> {
    terms: BTreeMap<Basis, VPoly<R>>,
}

impl<R: ImaginaryUnit> LieElement<R> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn basis(b: Basis) -> Self {
        Self::term(b, VPoly::constant(R::one()))
    }

    pub fn term(b: Basis, coef: VPoly<R>) -> Self {
        let mut out = Self::zero();
        out.add_term(b, coef);
        out
    }

    pub fn coefficient(&self, b: Basis) -> VPoly<R> {
        self.terms.get(&b).cloned().unwrap_or_else(VPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Basis, &VPoly<R>)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    fn add_term(&mut self, b: Basis, coef: VPoly<R>) {
        if coef.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&b) {
            Some(old) => old.add(&coef),
            None => coef,
        };
        if !sum.is_zero() {
            self.terms.insert(b, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &R) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(*b, c.scale(s));
        }
        out
    }

    pub fn scale_poly(&self, s: &VPoly<R>) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(*b, c.mul(s));
        }
        out
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                if let Some((k, z)) = basis_bracket::<R>(*x, *y) {
                    out.add_term(z, cx.mul(cy).scale(&k));
                }
            }
        }
        out
    }

    /// Evaluates every coefficient at `v`.
    pub fn evaluate(&self, v: &[R; 3]) -> Self {
        let mut out = Self::zero();
        for (b, c) in &self.terms {
            out.add_term(*b, VPoly::constant(c.evaluate(v)));
        }
        out
    }
}

impl<R: ImaginaryUnit> fmt::Display for LieElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (b, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]*{b}")?;
        }
        Ok(())
    }
}

/// Hadamard terms `(1/n!)·ad_X^n(Y)` for `n = 0..=order`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieSeries<R> {
    pub terms: Vec<LieElement<R>>,
}

impl<R: ImaginaryUnit> LieSeries<R> {
    pub fn sum(&self) -> LieElement<R> {
        self.terms.iter().fold(LieElement::zero(), |acc, t| acc.add(t))
    }

    /// Whether every term of order `≥ from` vanishes structurally.
    pub fn vanishes_from(&self, from: usize) -> bool {
        self.terms.iter().skip(from).all(LieElement::is_zero)
    }
}

/// `(1/n!)·ad_X^n(y)` for `n = 0..=order`.
pub fn hadamard_series<R: ImaginaryUnit>(x: &LieElement<R>, y: &LieElement<R>, order: usize) -> LieSeries<R> {
    let mut terms = vec![y.clone()];
    for n in 1..=order {
        let inv_n = R::from_rational(&BigRational::new(BigInt::one(), BigInt::from(n)));
        let next = x.bracket(&terms[n - 1]).scale(&inv_n);
        terms.push(next);
    }
    LieSeries { terms }
}

/// `X = i·(v₁K₁ + v₂K₂ + v₃K₃)` with symbolic `v`.
pub fn boost_generator<R: ImaginaryUnit>() -> LieElement<R> {
    (0..3).fold(LieElement::zero(), |acc, axis| acc.add(&LieElement::term(Basis::K(axis as u8), VPoly::var(axis).scale(&R::i()))))
}

/// `H − v·P + (|v|²/2)·M` with symbolic `v`.
pub fn boost_closed_form<R: ImaginaryUnit>() -> LieElement<R> {
    let half = R::from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)));
    let mut out = LieElement::basis(Basis::H);
    let mut v2 = VPoly::zero();
    for axis in 0..3 {
        out = out.add(&LieElement::term(Basis::P(axis as u8), VPoly::var(axis).scale(&-R::one())));
        v2 = v2.add(&VPoly::var(axis).mul(&VPoly::var(axis)));
    }
    out.add(&LieElement::term(Basis::M, v2.scale(&half)))
}

/// Boost conjugation of `H`, symbolically in `v` and at a rational `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardExpansion<R> {
    pub v: [BigRational; 3],
    pub symbolic: LieSeries<R>,
    pub evaluated: LieSeries<R>,
    pub closed_form: LieElement<R>,
}

impl<R: ImaginaryUnit> HadamardExpansion<R> {
    /// All terms of order three and higher are structurally zero.
    pub fn terminates(&self) -> bool {
        self.symbolic.vanishes_from(3) && self.evaluated.vanishes_from(3)
    }

    /// The series sum equals the closed form, both symbolically and at `v`.
    pub fn matches_closed_form(&self) -> bool {
        let vr = self.v.clone().map(|q| R::from_rational(&q));
        self.symbolic.sum() == boost_closed_form() && self.evaluated.sum() == self.closed_form && self.closed_form == boost_closed_form().evaluate(&vr)
    }
}

pub fn hadamard_conjugation<R: ImaginaryUnit>(v: &[BigRational; 3], order: usize) -> Result<HadamardExpansion<R>, SymbolicError> {
    if order < 3 {
        return Err(SymbolicError::HadamardOrder(order));
    }
    let vr = v.clone().map(|q| R::from_rational(&q));
    let symbolic = hadamard_series(&boost_generator::<R>(), &LieElement::basis(Basis::H), order);
    let evaluated = LieSeries { terms: symbolic.terms.iter().map(|t| t.evaluate(&vr)).collect() };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let norm2 = v.iter().fold(BigRational::zero(), |acc, x| acc + x * x);
    let mut closed_form = LieElement::basis(Basis::H);
    for (axis, vi) in vr.iter().enumerate() {
        closed_form = closed_form.add(&LieElement::term(Basis::P(axis as u8), VPoly::constant(-vi.clone())));
    }
    closed_form = closed_form.add(&LieElement::term(Basis::M, VPoly::constant(R::from_rational(&(norm2 * half)))));
    Ok(HadamardExpansion { v: v.clone(), symbolic, evaluated, closed_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational;
    use num_complex::Complex;

    type G = Complex<BigRational>;

    fn g(n: i64, d: i64) -> G {
        G::from_rational(&rational(n, d))
    }

    #[test]
    fn bracket_table() {
        let k1 = LieElement::<G>::basis(Basis::K(0));
        let p1 = LieElement::<G>::basis(Basis::P(0));
        let p2 = LieElement::<G>::basis(Basis::P(1));
        let h = LieElement::<G>::basis(Basis::H);
        let m = LieElement::<G>::basis(Basis::M);
        assert_eq!(k1.bracket(&p1), m.scale(&G::i()));
        assert!(k1.bracket(&p2).is_zero());
        assert_eq!(k1.bracket(&h), p1.scale(&G::i()));
        assert_eq!(h.bracket(&k1), p1.scale(&-G::i()));
        assert!(m.bracket(&k1).is_zero());
        assert!(h.bracket(&p1).is_zero());
    }

    #[test]
    fn zero_boost_is_identity() {
        let z = rational(0, 1);
        let h = hadamard_conjugation::<G>(&[z.clone(), z.clone(), z], 4).unwrap();
        assert_eq!(h.evaluated.sum(), LieElement::basis(Basis::H));
        assert!(h.evaluated.vanishes_from(1));
    }

    #[test]
    fn unit_boost_along_first_axis() {
        let h = hadamard_conjugation::<G>(&[rational(1, 1), rational(0, 1), rational(0, 1)], 3).unwrap();
        assert!(h.terminates());
        let want = LieElement::basis(Basis::H)
            .add(&LieElement::basis(Basis::P(0)).scale(&g(-1, 1)))
            .add(&LieElement::basis(Basis::M).scale(&g(1, 2)));
        assert_eq!(h.evaluated.sum(), want);
    }

    #[test]
    fn mixed_rational_boost() {
        let h = hadamard_conjugation::<G>(&[rational(1, 2), rational(1, 3), rational(0, 1)], 4).unwrap();
        assert!(h.terminates());
        assert!(h.matches_closed_form());
        assert_eq!(h.closed_form.coefficient(Basis::M), VPoly::constant(g(13, 72)));
        assert_eq!(h.evaluated.terms[1].coefficient(Basis::P(1)), VPoly::constant(g(-1, 3)));
    }

    #[test]
    fn order_below_three_rejected() {
        let z = rational(0, 1);
        assert_eq!(hadamard_conjugation::<G>(&[z.clone(), z.clone(), z], 2).unwrap_err(), SymbolicError::HadamardOrder(2));
    }
}
