//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := (coeff | variable | '(' expr ')') ('^' uint)?
//! coeff  := int ('/' uint)?
//! ```
//!
//! The imaginary unit `i` is accepted only by [`parse_complex_polynomial`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::polynomial::{ComplexPolynomial, Polynomial};
use super::rational::{GaussianRational, Rational};
use super::PolyError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
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

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), col));
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            other => {
                return Err(ParseError {
                    column: col,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a Arc<[String]>,
    complex: bool,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn constant(&self, c: GaussianRational) -> ComplexPolynomial {
        Polynomial::constant(self.vars.clone(), c)
    }

    fn expr(&mut self) -> Result<ComplexPolynomial, ParseError> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ComplexPolynomial, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ComplexPolynomial, ParseError> {
        let base = match self.bump() {
            Tok::Int(n) => {
                let mut r = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        Tok::Int(d) if !d.is_zero() => r /= Rational::from_integer(d),
                        Tok::Int(_) => return self.err("zero denominator"),
                        _ => return self.err("expected an unsigned integer denominator"),
                    }
                }
                self.constant(GaussianRational::real(r))
            }
            Tok::Ident(name) => {
                if let Some(idx) = self.vars.iter().position(|v| *v == name) {
                    Polynomial::var(self.vars.clone(), idx)
                } else if name == "i" && self.complex {
                    self.constant(GaussianRational::i())
                } else {
                    self.pos -= 1;
                    return self.err(format!("unknown variable '{name}'"));
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected ')'");
                }
                self.bump();
                inner
            }
            Tok::End => return self.err("unexpected end of input"),
            _ => {
                self.pos -= 1;
                return self.err("expected a coefficient, variable or '('");
            }
        };
        if *self.peek() == Tok::Caret {
            self.bump();
            return match self.bump() {
                Tok::Int(e) => match u32::try_from(e) {
                    Ok(e) if *self.peek() != Tok::Slash => Ok(base.pow(e)),
                    _ => self.err("exponent must be a nonnegative integer"),
                },
                _ => {
                    self.pos -= 1;
                    self.err("exponent must be a nonnegative integer")
                }
            };
        }
        Ok(base)
    }
}

fn parse_inner(text: &str, vars: &Arc<[String]>, complex: bool) -> Result<ComplexPolynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        complex,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

pub fn variables<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// Parses a polynomial with rational coefficients over `vars`.
pub fn parse_polynomial(text: &str, vars: &Arc<[String]>) -> Result<Polynomial, ParseError> {
    let p = parse_inner(text, vars, false)?;
    Ok(p.real_part_exact().expect("no imaginary unit in real mode"))
}

/// Parses a polynomial whose coefficients may involve the imaginary unit `i`.
pub fn parse_complex_polynomial(text: &str, vars: &Arc<[String]>) -> Result<ComplexPolynomial, ParseError> {
    parse_inner(text, vars, true)
}

/// Parses `vars: X0 X1 ...` header lines.
pub fn parse_vars_header(line: &str) -> Option<Arc<[String]>> {
    let rest = line.trim().strip_prefix("vars:")?;
    let names: Vec<&str> = rest.split_whitespace().collect();
    (!names.is_empty()).then(|| variables(&names))
}

/// Parses a `.poly` document: a `vars:` header line followed by one
/// expression (which may span lines). `#` starts a comment.
pub fn parse_poly_document(text: &str) -> Result<Polynomial, PolyError> {
    let mut vars = None;
    let mut body = String::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if vars.is_none() {
            vars = Some(parse_vars_header(line).ok_or(PolyError::MissingHeader)?);
            continue;
        }
        body.push_str(line);
        body.push(' ');
    }
    let vars = vars.ok_or(PolyError::MissingHeader)?;
    Ok(parse_polynomial(&body, &vars)?)
}
