//! Word-level rewriting with the single rule `a·ad → ad·a + c`.
//!
//! Independent of the product formula in [`crate::normal`]: expressions are expanded into
//! words over `{a, ad}` and the rule is applied one occurrence at a time until no `a` precedes
//! an `ad`. The order in which occurrences are chosen is configurable.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::Coefficient;
use crate::expr::OperatorExpr;
use crate::laurent::CPoly;
use crate::normal::NormalPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    Ad,
}

pub type Word = Vec<Letter>;

/// Which `a·ad` occurrence to rewrite next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

/// Linear combination of words.
#[derive(Debug, Clone, PartialEq)]
pub struct WordSum<R> {
    terms: BTreeMap<Word, CPoly<R>>,
}

impl<R: Coefficient> WordSum<R> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn word(w: Word, coef: CPoly<R>) -> Self {
        let mut out = Self::zero();
        out.add(w, coef);
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, w: Word, coef: CPoly<R>) {
        if coef.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&w) {
            Some(old) => old + coef,
            None => coef,
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    fn plus(mut self, other: Self) -> Self {
        for (w, c) in other.terms {
            self.add(w, c);
        }
        self
    }

    fn scaled(self, s: &CPoly<R>) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms {
            out.add(w, c * s.clone());
        }
        out
    }

    fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, x) in &self.terms {
            for (v, y) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add(w, x.clone() * y.clone());
            }
        }
        out
    }
}

/// Distributes `e` into a sum of words without reordering any letters.
pub fn expand<R: Coefficient>(e: &OperatorExpr) -> WordSum<R> {
    match e {
        OperatorExpr::A => WordSum::word(vec![Letter::A], CPoly::one()),
        OperatorExpr::Ad => WordSum::word(vec![Letter::Ad], CPoly::one()),
        OperatorExpr::C => WordSum::word(Vec::new(), CPoly::c_pow(1)),
        OperatorExpr::Rational(q) => WordSum::word(Vec::new(), CPoly::constant(R::from_rational(q))),
        OperatorExpr::Scalar(p) => WordSum::word(Vec::new(), p.map(R::from_rational)),
        OperatorExpr::Add(x, y) => expand::<R>(x).plus(expand(y)),
        OperatorExpr::Sub(x, y) => expand::<R>(x).plus(expand::<R>(y).scaled(&-CPoly::one())),
        OperatorExpr::Mul(x, y) => expand::<R>(x).times(&expand(y)),
        OperatorExpr::Pow(x, n) => {
            let base = expand::<R>(x);
            (0..*n).fold(WordSum::word(Vec::new(), CPoly::one()), |acc, _| acc.times(&base))
        }
        OperatorExpr::Commutator(x, y) => {
            let (x, y) = (expand::<R>(x), expand::<R>(y));
            x.times(&y).plus(y.times(&x).scaled(&-CPoly::one()))
        }
    }
}

fn redexes(w: &[Letter]) -> Vec<usize> {
    w.windows(2).enumerate().filter(|(_, p)| p[0] == Letter::A && p[1] == Letter::Ad).map(|(i, _)| i).collect()
}

/// Rewrites to a fixpoint and reads off the normal form. Also returns the number of single
/// rule applications performed.
pub fn rewrite_to_normal<R: Coefficient>(sum: WordSum<R>, strategy: Strategy) -> (NormalPoly<R>, usize) {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut pending = sum;
    let mut done = NormalPoly::zero();
    let mut steps = 0usize;
    while !pending.is_empty() {
        // pick a word; random strategies also pick the word at random
        let idx = match rng.as_mut() {
            Some(r) => r.gen_range(0..pending.len()),
            None => 0,
        };
        let w = pending.terms.keys().nth(idx).cloned().expect("nonempty");
        let coef = pending.terms.remove(&w).expect("present");
        let sites = redexes(&w);
        if sites.is_empty() {
            let p = w.iter().filter(|&&l| l == Letter::Ad).count() as u32;
            let q = w.len() as u32 - p;
            done.add_term((p, q), coef);
            continue;
        }
        let i = match strategy {
            Strategy::Leftmost => sites[0],
            Strategy::Rightmost => sites[sites.len() - 1],
            Strategy::Random(_) => sites[rng.as_mut().expect("seeded").gen_range(0..sites.len())],
        };
        steps += 1;
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        let mut contracted = w[..i].to_vec();
        contracted.extend_from_slice(&w[i + 2..]);
        pending.add(swapped, coef.clone());
        pending.add(contracted, coef * CPoly::c_pow(1));
    }
    (done, steps)
}

/// Normal form of `e` by brute-force rewriting.
pub fn rewrite_normal_order<R: Coefficient>(e: &OperatorExpr, strategy: Strategy) -> NormalPoly<R> {
    rewrite_to_normal(expand(e), strategy).0
}

/// Builds the expression of a word.
pub fn word_expr(w: &[Letter]) -> OperatorExpr {
    let letter = |l: &Letter| match l {
        Letter::A => OperatorExpr::A,
        Letter::Ad => OperatorExpr::Ad,
    };
    match w.split_first() {
        None => OperatorExpr::one(),
        Some((first, rest)) => rest.iter().fold(letter(first), |acc, l| acc.mul(letter(l))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::normal_order;
    use crate::parser::parse_expr;
    use num_rational::BigRational;

    #[test]
    fn agrees_with_product_formula() {
        for s in ["a*ad", "a*a*ad*ad", "[a^3, ad]", "(a + ad)^4", "a*ad*a*ad - c*ad*a", "[[a^2, ad], ad]"] {
            let e = parse_expr(s).unwrap();
            let want = normal_order::<BigRational>(&e);
            for st in [Strategy::Leftmost, Strategy::Rightmost, Strategy::Random(7)] {
                assert_eq!(rewrite_normal_order::<BigRational>(&e, st), want, "{s} with {st:?}");
            }
        }
    }

    #[test]
    fn counts_rewrites() {
        let (_, steps) = rewrite_to_normal::<BigRational>(expand(&parse_expr("a*ad").unwrap()), Strategy::Leftmost);
        assert_eq!(steps, 1);
    }

    #[test]
    fn word_round_trip() {
        let w = vec![Letter::A, Letter::Ad, Letter::A];
        let sum = expand::<BigRational>(&word_expr(&w));
        assert_eq!(sum, WordSum::word(w, CPoly::one()));
    }
}
