//! Text syntax for elements of the algebra.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := int ['/' int] | ident
//!          | '(' expr ',' expr ')' | '{' expr ',' expr '}'
//!          | '[' expr (',' expr)* ']' | '(' expr ')'
//! ```
//!
//! `*` is the commutative product, `(x, y)` and `{x, y}` the bracket and
//! `[x, y, z]` the left-normed bracket `((x, y), z)`. Integer factors
//! scale a term; a term made only of scalars must be `0`, since the
//! algebra has no unit.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Algebra, Poly};
use crate::basis::{Alphabet, Letter};
use crate::coeff::FieldError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    /// Re-anchors an error from a fragment starting at (`line`, `column`)
    /// of a larger document.
    pub fn shifted(mut self, line: usize, column: usize) -> Self {
        if self.line == 1 {
            self.column += column - 1;
        }
        self.line += line - 1;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Zero,
    Letter(Letter),
    /// `num/den * expr`.
    Scaled(BigInt, BigInt, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Value in `alg`. Fails only when a rational coefficient has a
    /// denominator divisible by the characteristic.
    pub fn eval(&self, alg: &Algebra) -> Result<Poly, FieldError> {
        Ok(match self {
            Expr::Zero => Poly::zero(),
            Expr::Letter(l) => alg.letter(*l),
            Expr::Scaled(n, d, e) => e.eval(alg)?.scale(&alg.field().from_ratio(n, d)?),
            Expr::Add(x, y) => x.eval(alg)?.add(&y.eval(alg)?),
            Expr::Sub(x, y) => x.eval(alg)?.sub(&y.eval(alg)?),
            Expr::Neg(x) => x.eval(alg)?.neg(),
            Expr::Mul(x, y) => alg.mul(&x.eval(alg)?, &y.eval(alg)?),
            Expr::Bracket(x, y) => alg.bracket(&x.eval(alg)?, &y.eval(alg)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l0, c0) = (line, col);
        if ch == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if ch.is_whitespace() {
            chars.next();
            col += 1;
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Int(s.parse().expect("digits")), l0, c0));
        } else if ch.is_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Ident(s), l0, c0));
        } else if "+-*/(){}[],".contains(ch) {
            chars.next();
            col += 1;
            out.push((Tok::Sym(ch), l0, c0));
        } else {
            return Err(ParseError {
                line,
                column: col,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    out.push((Tok::End, line, col));
    Ok(out)
}

/// A factor before scalars are folded into the term.
enum Factor {
    Scalar(BigInt, BigInt),
    Expr(Expr),
}

struct Parser<'a> {
    lex: Lexer,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.lex.toks[self.lex.pos].0
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (_, line, column) = self.lex.toks[self.lex.pos];
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.lex.toks[self.lex.pos].0.clone();
        if t != Tok::End {
            self.lex.pos += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`, found {}", describe(self.peek()))))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Tok::Sym('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let start = self.lex.pos;
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        let mut body: Option<Expr> = None;
        loop {
            match self.factor()? {
                Factor::Scalar(n, d) => {
                    num *= n;
                    den *= d;
                }
                Factor::Expr(e) => {
                    body = Some(match body {
                        None => e,
                        Some(b) => Expr::Mul(Box::new(b), Box::new(e)),
                    })
                }
            }
            if *self.peek() == Tok::Sym('*') {
                self.bump();
            } else {
                break;
            }
        }
        match body {
            _ if num.is_zero() => Ok(Expr::Zero),
            None => {
                let (_, line, column) = self.lex.toks[start];
                Err(ParseError {
                    line,
                    column,
                    message: "a nonzero constant is not an element of the algebra".into(),
                })
            }
            Some(e) if num.is_one() && den.is_one() => Ok(e),
            Some(e) => Ok(Expr::Scaled(num, den, Box::new(e))),
        }
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Sym('/') {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            self.bump();
                            Ok(Factor::Scalar(n, d))
                        }
                        Tok::Int(_) => Err(self.err("zero denominator")),
                        t => {
                            Err(self.err(format!("expected a denominator, found {}", describe(&t))))
                        }
                    }
                } else {
                    Ok(Factor::Scalar(n, BigInt::one()))
                }
            }
            Tok::Ident(name) => match self.alphabet.letter(&name) {
                Some(l) => {
                    self.bump();
                    Ok(Factor::Expr(Expr::Letter(l)))
                }
                None => Err(self.err(format!("unknown generator `{name}`"))),
            },
            Tok::Sym('(') => {
                self.bump();
                let x = self.expr()?;
                if *self.peek() == Tok::Sym(',') {
                    self.bump();
                    let y = self.expr()?;
                    self.expect(')')?;
                    Ok(Factor::Expr(Expr::Bracket(Box::new(x), Box::new(y))))
                } else {
                    self.expect(')')?;
                    Ok(Factor::Expr(x))
                }
            }
            Tok::Sym('{') => {
                self.bump();
                let x = self.expr()?;
                self.expect(',')?;
                let y = self.expr()?;
                self.expect('}')?;
                Ok(Factor::Expr(Expr::Bracket(Box::new(x), Box::new(y))))
            }
            Tok::Sym('[') => {
                self.bump();
                let mut acc = self.expr()?;
                while *self.peek() == Tok::Sym(',') {
                    self.bump();
                    acc = Expr::Bracket(Box::new(acc), Box::new(self.expr()?));
                }
                self.expect(']')?;
                Ok(Factor::Expr(acc))
            }
            t => Err(self.err(format!("expected an operand, found {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

/// Parses `src` over the generators in `alphabet`.
pub fn parse_expr(src: &str, alphabet: &Alphabet) -> Result<Expr, ParseError> {
    let mut p = Parser {
        lex: Lexer {
            toks: tokenize(src)?,
            pos: 0,
        },
        alphabet,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err(format!("unexpected {}", describe(p.peek()))));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::FieldSpec;

    fn eval(src: &str, field: FieldSpec) -> Poly {
        let abc = Alphabet::standard(3);
        parse_expr(src, &abc)
            .unwrap()
            .eval(&Algebra::new(field))
            .unwrap()
    }

    #[test]
    fn leibniz_and_metabelian() {
        let q = FieldSpec::rationals();
        assert_eq!(eval("(a, b*c)", q), eval("(a,b)*c + b*(a,c)", q));
        assert!(eval("((b,a),(c,a))", q).is_zero());
        assert_eq!(eval("[b,a,c]", q), eval("{{b,a},c}", q));
    }

    #[test]
    fn rendering_round_trip() {
        let abc = Alphabet::standard(3);
        let q = FieldSpec::rationals();
        let p = eval("3/2*[b,a]*b - 2*a*a + (c,a)", q);
        let text = p.display(&abc).to_string();
        assert_eq!(eval(&text, q), p);
    }

    #[test]
    fn scalars() {
        let q = FieldSpec::rationals();
        assert!(eval("0", q).is_zero());
        assert!(eval("a - a", q).is_zero());
        assert_eq!(eval("2*a*3", q), eval("6*a", q));
        assert!(eval("3*a", FieldSpec::prime(3).unwrap()).is_zero());
        let abc = Alphabet::standard(3);
        let e = parse_expr("a/3", &abc);
        assert!(e.is_err());
        let e = parse_expr("1/3*a", &abc).unwrap();
        assert_eq!(
            e.eval(&Algebra::new(FieldSpec::prime(3).unwrap())),
            Err(FieldError::DivisionByZero)
        );
    }

    #[test]
    fn errors_carry_positions() {
        let abc = Alphabet::standard(2);
        let e = parse_expr("a + (b,\n  z)", &abc).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown generator"));
        let e = parse_expr("a + 1", &abc).unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse_expr("[a,b", &abc).unwrap_err();
        assert!(e.message.contains("expected `]`"));
        assert_eq!(e.shifted(4, 10).line, 4);
    }
}
