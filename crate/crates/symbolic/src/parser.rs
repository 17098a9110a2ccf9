//! LL(1) parser for the operator expression grammar
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := 'a' | 'ad' | 'c' | '1' | rational | '[' expr ',' expr ']' | '(' expr ')'
//! ```
//!
//! A rational literal is `digits` or `digits/digits`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::expr::OperatorExpr;

pub const MAX_INPUT_BYTES: usize = 64 * 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("unexpected {found}, expected {expected}")]
    Unexpected { found: String, expected: &'static str },
    #[error("unbalanced `{0}`")]
    Unbalanced(char),
    #[error("exponents must be nonnegative integers")]
    NegativeExponent,
    #[error("exponent too large")]
    ExponentOverflow,
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
    #[error("input exceeds {MAX_INPUT_BYTES} bytes")]
    TooLong,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    A,
    Ad,
    C,
    Num(BigRational),
    Plus,
    Minus,
    Star,
    Caret,
    LBracket,
    RBracket,
    Comma,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::A => "`a`".into(),
            Tok::Ad => "`ad`".into(),
            Tok::C => "`c`".into(),
            Tok::Num(q) => format!("number `{q}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, column, kind| ParseError { line, column, kind };
    while i < chars.len() {
        let ch = chars[i];
        let (l0, c0) = (line, col);
        if ch == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: l0, column: c0 });
            i += 1;
            col += 1;
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = match word.as_str() {
                "a" => Tok::A,
                "ad" => Tok::Ad,
                "c" => Tok::C,
                _ => return Err(err(l0, c0, ParseErrorKind::UnknownToken(word))),
            };
            out.push(Spanned { tok, line: l0, column: c0 });
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let numer: BigInt = chars[start..i].iter().collect::<String>().parse().expect("digits");
            let mut value = BigRational::from_integer(numer.clone());
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let dstart = i + 1;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let denom: BigInt = chars[dstart..i].iter().collect::<String>().parse().expect("digits");
                if denom.is_zero() {
                    return Err(err(l0, c0 + (dstart - start), ParseErrorKind::ZeroDenominator));
                }
                value = BigRational::new(numer, denom);
            }
            col += i - start;
            out.push(Spanned { tok: Tok::Num(value), line: l0, column: c0 });
            continue;
        }
        return Err(err(l0, c0, ParseErrorKind::UnknownToken(ch.to_string())));
    }
    out.push(Spanned { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    // open brackets, for reporting the unmatched one
    open: Vec<(char, usize, usize)>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &'static str) -> ParseError {
        let t = self.peek();
        if t.tok == Tok::End {
            if let Some(&(ch, line, column)) = self.open.last() {
                return ParseError { line, column, kind: ParseErrorKind::Unbalanced(ch) };
            }
        }
        let kind = match t.tok {
            Tok::RParen if !self.open.iter().any(|o| o.0 == '(') => ParseErrorKind::Unbalanced(')'),
            Tok::RBracket if !self.open.iter().any(|o| o.0 == '[') => ParseErrorKind::Unbalanced(']'),
            _ => ParseErrorKind::Unexpected { found: t.tok.describe(), expected },
        };
        ParseError { line: t.line, column: t.column, kind }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(expected))
        }
    }

    fn expr(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = lhs.add(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = lhs.sub(self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = lhs.mul(self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<OperatorExpr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok {
            Tok::Num(q) if q.is_integer() => {
                let n: u32 = q
                    .numer()
                    .try_into()
                    .map_err(|_| ParseError { line: t.line, column: t.column, kind: ParseErrorKind::ExponentOverflow })?;
                Ok(base.pow(n))
            }
            Tok::Minus => Err(ParseError { line: t.line, column: t.column, kind: ParseErrorKind::NegativeExponent }),
            other => Err(ParseError {
                line: t.line,
                column: t.column,
                kind: ParseErrorKind::Unexpected { found: other.describe(), expected: "a nonnegative integer exponent" },
            }),
        }
    }

    fn atom(&mut self) -> Result<OperatorExpr, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::A => {
                self.bump();
                Ok(OperatorExpr::A)
            }
            Tok::Ad => {
                self.bump();
                Ok(OperatorExpr::Ad)
            }
            Tok::C => {
                self.bump();
                Ok(OperatorExpr::C)
            }
            Tok::Num(q) => {
                self.bump();
                Ok(OperatorExpr::Rational(q))
            }
            Tok::LParen => {
                self.bump();
                self.open.push(('(', t.line, t.column));
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                self.open.pop();
                Ok(inner)
            }
            Tok::LBracket => {
                self.bump();
                self.open.push(('[', t.line, t.column));
                let x = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                self.open.pop();
                Ok(OperatorExpr::commutator(x, y))
            }
            _ => Err(self.error_here("an operand (`a`, `ad`, `c`, a number, `[` or `(`)")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<OperatorExpr, ParseError> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(ParseError { line: 1, column: 1, kind: ParseErrorKind::TooLong });
    }
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, open: Vec::new() };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.error_here("an operator or end of input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rational;

    #[test]
    fn commutator_node() {
        assert_eq!(parse_expr("[a, ad]").unwrap(), OperatorExpr::commutator(OperatorExpr::A, OperatorExpr::Ad));
    }

    #[test]
    fn difference_of_products() {
        let e = parse_expr("a^4 * ad - ad * a^4").unwrap();
        let want = OperatorExpr::A.pow(4).mul(OperatorExpr::Ad).sub(OperatorExpr::Ad.mul(OperatorExpr::A.pow(4)));
        assert_eq!(e, want);
    }

    #[test]
    fn polynomial_in_c() {
        let e = parse_expr("c*c + 2*c").unwrap();
        let want = OperatorExpr::C.mul(OperatorExpr::C).add(OperatorExpr::Rational(rational(2, 1)).mul(OperatorExpr::C));
        assert_eq!(e, want);
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_expr("3/6").unwrap(), OperatorExpr::Rational(rational(1, 2)));
        assert_eq!(parse_expr("1").unwrap(), OperatorExpr::one());
    }

    #[test]
    fn unknown_token_has_position() {
        let e = parse_expr("a * b").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert_eq!(e.kind, ParseErrorKind::UnknownToken("b".into()));
        let e = parse_expr("a +\n  x").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn unbalanced_brackets() {
        let e = parse_expr("[a, ad").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unbalanced('['));
        assert_eq!((e.line, e.column), (1, 1));
        let e = parse_expr("(a * ad").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unbalanced('('));
        let e = parse_expr("a)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unbalanced(')'));
        assert_eq!(e.column, 2);
    }

    #[test]
    fn negative_exponent_rejected() {
        let e = parse_expr("a^-2").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NegativeExponent);
        assert_eq!(e.column, 3);
        assert!(matches!(parse_expr("a^1/2").unwrap_err().kind, ParseErrorKind::Unexpected { .. }));
    }

    #[test]
    fn oversized_input_rejected() {
        let text = "a+".repeat(40_000) + "a";
        assert_eq!(parse_expr(&text).unwrap_err().kind, ParseErrorKind::TooLong);
    }

    #[test]
    fn zero_denominator() {
        assert_eq!(parse_expr("1/0").unwrap_err().kind, ParseErrorKind::ZeroDenominator);
    }
}
