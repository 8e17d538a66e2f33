//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := base ('^' nat)?
//! base   := nat | ident | '(' expr ')'
//! ```
//!
//! Identifiers are variables of the ring or its scalar literals (`x` over
//! ℚ(x); `i`, `j`, `k` over the quaternions). Division is right division by
//! a nonzero scalar. Products are taken in the ring, so `t*x` normalizes to
//! `x*t + 1` over the Weyl algebra.

use std::sync::Arc;

use num::{BigInt, BigRational};
use thiserror::Error;

use crate::coeff::{RingKind, Scalar};
use crate::ore::{OreError, OreRing, SkewPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown variable {name:?}")]
    UnknownVariable { line: usize, column: usize, name: String },
    #[error("{line}:{column}: {name:?} is not a scalar of {ring}")]
    UnknownScalarLiteral {
        line: usize,
        column: usize,
        name: String,
        ring: RingKind,
    },
    #[error("{line}:{column}: {source}")]
    Arithmetic {
        line: usize,
        column: usize,
        #[source]
        source: OreError,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut n = 0;
    while n < chars.len() {
        let c = chars[n];
        let (l, col) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            n += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            n += 1;
            continue;
        }
        let start = n;
        let tok = if c.is_ascii_digit() {
            while n < chars.len() && chars[n].is_ascii_digit() {
                n += 1;
            }
            let text: String = chars[start..n].iter().collect();
            Tok::Num(text.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while n < chars.len() && (chars[n].is_ascii_alphanumeric() || chars[n] == '_') {
                n += 1;
            }
            Tok::Ident(chars[start..n].iter().collect())
        } else {
            n += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(ParseError::Syntax {
                        line: l,
                        column: col,
                        message: format!("unexpected character {other:?}"),
                    })
                }
            }
        };
        column += n - start;
        out.push(Token {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ring: &'a Arc<OreRing>,
}

fn scalar_literal(name: &str, kind: RingKind) -> Option<Scalar> {
    match (name, kind) {
        ("x", RingKind::RationalFunction) => Some(Scalar::x()),
        ("i", RingKind::Quaternion) => Some(Scalar::i()),
        ("j", RingKind::Quaternion) => Some(Scalar::j()),
        ("k", RingKind::Quaternion) => Some(Scalar::k()),
        _ => None,
    }
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn syntax(&self, t: &Token, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    fn arith<T>(t: &Token, r: Result<T, OreError>) -> Result<T, ParseError> {
        r.map_err(|source| ParseError::Arithmetic {
            line: t.line,
            column: t.column,
            source,
        })
    }

    fn expr(&mut self) -> Result<SkewPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            let op = self.peek().clone();
            match op.tok {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = Self::arith(&op, acc.add(&rhs))?;
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = Self::arith(&op, acc.sub(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SkewPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let op = self.peek().clone();
            match op.tok {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = Self::arith(&op, acc.mul(&rhs))?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    let c = rhs
                        .as_constant()
                        .ok_or_else(|| self.syntax(&op, "can only divide by a scalar"))?;
                    let inv = Self::arith(&op, c.inv().map_err(OreError::from))?;
                    let inv = Self::arith(&op, SkewPoly::constant(self.ring, inv))?;
                    acc = Self::arith(&op, acc.mul(&inv))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<SkewPoly, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<SkewPoly, ParseError> {
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let op = self.bump();
        let t = self.bump();
        let k: u32 = match &t.tok {
            Tok::Num(n) => n.try_into().map_err(|_| self.syntax(&t, "exponent too large"))?,
            _ => return Err(self.syntax(&t, "expected a natural-number exponent")),
        };
        Self::arith(&op, base.pow(k))
    }

    fn base(&mut self) -> Result<SkewPoly, ParseError> {
        let t = self.bump();
        let kind = self.ring.kind();
        match &t.tok {
            Tok::Num(n) => {
                let c = Scalar::from_rational(kind, BigRational::from_integer(n.clone()));
                Self::arith(&t, SkewPoly::constant(self.ring, c))
            }
            Tok::Ident(name) => {
                if let Some(v) = self.ring.var_index(name) {
                    return Self::arith(&t, SkewPoly::var(self.ring, v));
                }
                if let Some(c) = scalar_literal(name, kind) {
                    return Self::arith(&t, SkewPoly::constant(self.ring, c));
                }
                let foreign = [RingKind::RationalFunction, RingKind::Quaternion]
                    .into_iter()
                    .any(|k| scalar_literal(name, k).is_some());
                Err(if foreign {
                    ParseError::UnknownScalarLiteral {
                        line: t.line,
                        column: t.column,
                        name: name.clone(),
                        ring: kind,
                    }
                } else {
                    ParseError::UnknownVariable {
                        line: t.line,
                        column: t.column,
                        name: name.clone(),
                    }
                })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.syntax(&close, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(self.syntax(&t, "unexpected end of input")),
            other => Err(self.syntax(&t, format!("unexpected {}", describe(other)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Num(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::End => "end of input",
    }
}

/// Parses `src` and normalizes it in `ring`.
pub fn parse_expr(src: &str, ring: &Arc<OreRing>) -> Result<SkewPoly, ParseError> {
    let mut p = Parser {
        tokens: lex(src)?,
        pos: 0,
        ring,
    };
    let value = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.syntax(&t, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(value)
}

/// Parses a scalar of `kind`, e.g. `1/2 + i` or `(x^2 + 1)/(x - 2)`.
pub fn parse_scalar(src: &str, kind: RingKind) -> Result<Scalar, ParseError> {
    let ring = OreRing::trivial(kind, &[]).expect("empty variable list");
    let p = parse_expr(src, &ring)?;
    Ok(p.as_constant().expect("no variables"))
}

/// A rational number, for map parameters such as `q`.
pub fn parse_rational(src: &str) -> Result<BigRational, ParseError> {
    Ok(parse_scalar(src, RingKind::Rational)?
        .as_rational()
        .expect("rational ring"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::RingMap;
    use crate::ore::Variable;

    fn weyl() -> Arc<OreRing> {
        OreRing::commuting(
            RingKind::RationalFunction,
            vec![Variable::new("t", RingMap::Identity, RingMap::Ddx)],
        )
        .unwrap()
    }

    #[test]
    fn normalizes_products() {
        let ring = weyl();
        assert_eq!(parse_expr("t*x", &ring).unwrap().to_string(), "x*t + 1");
        assert_eq!(parse_expr("(t+1)^2", &ring).unwrap().to_string(), "t^2 + 2*t + 1");
        assert_eq!(parse_expr("t^2*x - x*t^2", &ring).unwrap().to_string(), "2*t");
        assert_eq!(
            parse_expr("-t/2 + 3/x^2*t", &ring).unwrap().to_string(),
            "((-1/2*x^2 + 3)/x^2)*t"
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let ring = weyl();
        assert!(matches!(
            parse_expr("t*", &ring),
            Err(ParseError::Syntax { line: 1, column: 3, .. })
        ));
        assert!(matches!(
            parse_expr("t +\n )", &ring),
            Err(ParseError::Syntax { line: 2, column: 2, .. })
        ));
        assert!(matches!(
            parse_expr("t $", &ring),
            Err(ParseError::Syntax { column: 3, .. })
        ));
        assert!(matches!(parse_expr("(t", &ring), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("t/t", &ring), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("t/0", &ring), Err(ParseError::Arithmetic { .. })));
    }

    #[test]
    fn unknown_names() {
        let ring = weyl();
        assert!(matches!(
            parse_expr("s", &ring),
            Err(ParseError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_expr("i*t", &ring),
            Err(ParseError::UnknownScalarLiteral { .. })
        ));
    }

    #[test]
    fn scalars() {
        let q = parse_scalar("1/2 + 1/2*i", RingKind::Quaternion).unwrap();
        assert_eq!(q.to_string(), "1/2 + 1/2*i");
        assert_eq!(
            parse_scalar("(x^2+1)/(x-2)", RingKind::RationalFunction)
                .unwrap()
                .to_string(),
            "(x^2 + 1)/(x - 2)"
        );
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
    }
}
