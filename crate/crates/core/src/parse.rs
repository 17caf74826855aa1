//! A small expression grammar shared by every surface that accepts formulas:
//! scalar coefficients, ring elements, and noncommutative words.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! `*` and `/` are left associative; exponents are integer literals and may
//! be negative where the evaluated domain supports inverses.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::decl::Decl;
use crate::error::{CoreError, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
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

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Scanner {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars[self.pos];
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        c
    }
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut sc = Scanner {
        chars: src.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
    };
    while let Some(c) = sc.peek() {
        let (tline, tcol) = (sc.line, sc.column);
        if c.is_whitespace() {
            sc.bump();
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut digits = String::new();
            while sc.peek().is_some_and(|d| d.is_ascii_digit()) {
                digits.push(sc.bump());
            }
            Tok::Int(digits.parse::<BigInt>().expect("digit string"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while sc
                .peek()
                .is_some_and(|d| d.is_ascii_alphanumeric() || d == '_')
            {
                name.push(sc.bump());
            }
            Tok::Ident(name)
        } else {
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(CoreError::Parse {
                        line: tline,
                        column: tcol,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            };
            sc.bump();
            tok
        };
        out.push(Spanned {
            tok,
            line: tline,
            column: tcol,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line: sc.line,
        column: sc.column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn advance(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> CoreError {
        let here = self.peek();
        CoreError::Parse {
            line: here.line,
            column: here.column,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Tok::Minus => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.advance();
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Tok::Slash => {
                    self.advance();
                    let rhs = self.unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            self.advance();
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.advance();
        let negative = if self.peek().tok == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let Tok::Int(ref n) = self.peek().tok else {
            return Err(self.error("expected integer exponent after `^`"));
        };
        let n = n.clone();
        self.advance();
        let exp: i64 = n
            .try_into()
            .map_err(|_| self.error("exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), if negative { -exp } else { exp }))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.advance();
                Ok(Expr::Int(n))
            }
            Tok::Ident(name) => {
                self.advance();
                Ok(Expr::Ident(name))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return Err(self.error("expected `)`"));
                }
                self.advance();
                Ok(inner)
            }
            Tok::End => Err(self.error("unexpected end of input")),
            _ => Err(self.error("expected a number, symbol, or `(`")),
        }
    }
}

/// Parse an expression without evaluating it.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    let mut parser = Parser { toks, pos: 0 };
    let expr = parser.expr()?;
    if parser.peek().tok != Tok::End {
        return Err(parser.error("trailing input after expression"));
    }
    Ok(expr)
}

/// Parse and evaluate an expression in which every identifier must be a
/// declared parameter or the declared root symbol.
pub fn parse_scalar(decl: &Decl, src: &str) -> Result<Scalar> {
    let expr = parse_expr(src)?;
    eval_scalar(decl, &expr)
}

pub fn eval_scalar(decl: &Decl, expr: &Expr) -> Result<Scalar> {
    match expr {
        Expr::Int(n) => Ok(Scalar::from_rational(
            decl,
            BigRational::from(n.clone()),
        )),
        Expr::Ident(name) => Scalar::var(decl, name),
        Expr::Neg(inner) => Ok(-&eval_scalar(decl, inner)?),
        Expr::Add(a, b) => Ok(&eval_scalar(decl, a)? + &eval_scalar(decl, b)?),
        Expr::Sub(a, b) => Ok(&eval_scalar(decl, a)? - &eval_scalar(decl, b)?),
        Expr::Mul(a, b) => Ok(&eval_scalar(decl, a)? * &eval_scalar(decl, b)?),
        Expr::Div(a, b) => eval_scalar(decl, a)?.div_checked(&eval_scalar(decl, b)?),
        Expr::Pow(base, exp) => eval_scalar(decl, base)?.pow(*exp),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decl::FieldDecl;

    fn decl() -> Decl {
        FieldDecl::params(vec!["q", "p0"])
    }

    #[test]
    fn precedence_and_associativity() {
        let d = decl();
        let a = parse_scalar(&d, "1 + 2*3").unwrap();
        assert_eq!(a, Scalar::from_int(&d, 7));
        let b = parse_scalar(&d, "12/2/3").unwrap();
        assert_eq!(b, Scalar::from_int(&d, 2));
        let c = parse_scalar(&d, "2*q^2").unwrap();
        let q = Scalar::var(&d, "q").unwrap();
        assert_eq!(c, &Scalar::from_int(&d, 2) * &q.pow(2).unwrap());
    }

    #[test]
    fn unary_minus_binds_tighter_than_addition() {
        let d = decl();
        let a = parse_scalar(&d, "-q + 1").unwrap();
        let q = Scalar::var(&d, "q").unwrap();
        assert_eq!(a, &Scalar::one(&d) - &q);
        let b = parse_scalar(&d, "-q^2").unwrap();
        assert_eq!(b, -&q.pow(2).unwrap());
    }

    #[test]
    fn negative_exponents() {
        let d = decl();
        let a = parse_scalar(&d, "q^-2").unwrap();
        let q = Scalar::var(&d, "q").unwrap();
        assert_eq!(a, q.pow(-2).unwrap());
        let b = parse_scalar(&d, "2*q^-1*p0").unwrap();
        let p0 = Scalar::var(&d, "p0").unwrap();
        let expect = (&(&Scalar::from_int(&d, 2) * &p0)).div_checked(&q).unwrap();
        assert_eq!(b, expect);
    }

    #[test]
    fn display_output_parses_back() {
        let d = decl();
        for src in [
            "(q + 1)/2",
            "-2*q*p0",
            "2*p0/(q - 1)",
            "1/2/q",
            "(q^2 - 1)/(q^2 + q + 1)",
        ] {
            let s = parse_scalar(&d, src).unwrap();
            let reparsed = parse_scalar(&d, &s.to_string()).unwrap();
            assert_eq!(s, reparsed, "round trip through `{src}`");
        }
    }

    #[test]
    fn error_positions() {
        let d = decl();
        let err = parse_scalar(&d, "q + ").unwrap_err();
        match err {
            CoreError::Parse { line, column, .. } => {
                assert_eq!(line, 1);
                assert_eq!(column, 5);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        let err = parse_scalar(&d, "q $ 2").unwrap_err();
        assert!(matches!(err, CoreError::Parse { .. }));
        let err = parse_scalar(&d, "x + 1").unwrap_err();
        assert_eq!(err, CoreError::UndeclaredSymbol("x".to_string()));
        let err = parse_scalar(&d, "1/(q - q)").unwrap_err();
        assert_eq!(err, CoreError::DivisionByZero);
    }

    #[test]
    fn exponent_must_be_literal() {
        let d = decl();
        assert!(matches!(
            parse_scalar(&d, "q^p0"),
            Err(CoreError::Parse { .. })
        ));
    }
}
