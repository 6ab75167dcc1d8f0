//! Operator expression language: a recursive-descent parser producing
//! normally ordered operators, and the matching canonical printer.
//!
//! Grammar (multiplication is always explicit):
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | identifier | 'x' | 'D' | '∂' | '(' sum ')'
//! ```
//! The right operand of `/` must be a nonzero scalar, which also covers
//! rational literals such as `3/2`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::render::{join_terms, mpoly_terms, render_param_rat};
use crate::scalar::{ParamRat, UPoly};
use crate::weyl::WeylOperator;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Int(s.parse().unwrap()), l0, c0));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') && chars[i] != '∂' {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Ident(s), l0, c0));
            continue;
        }
        let c = match c {
            '−' => '-',
            '∂' => 'D',
            other => other,
        };
        if c == 'D' {
            out.push((Tok::Ident("D".into()), l0, c0));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), l0, c0));
        } else {
            return Err(Error::Parse {
                line: l0,
                column: c0,
                expected: "one of: integer, identifier, x, D, +, -, *, /, ^, (, )".into(),
            });
        }
        i += 1;
        col += 1;
    }
    out.push((Tok::End, line, col));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn error(&self, expected: &str) -> Error {
        let (_, line, column) = self.toks[self.pos];
        Error::Parse { line, column, expected: expected.to_string() }
    }

    fn sum(&mut self) -> Result<WeylOperator> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Tok::Sym('-') => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<WeylOperator> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Tok::Sym('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    match as_scalar(&d) {
                        Some(s) if !s.is_zero() => acc = acc.scale(&s.recip()),
                        _ => {
                            self.pos = at;
                            return Err(self.error("a nonzero scalar divisor"));
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<WeylOperator> {
        if self.peek() == &Tok::Sym('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<WeylOperator> {
        let base = self.atom()?;
        if self.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                u32::try_from(n).map_err(|_| self.error("a small nonnegative integer exponent"))?
            }
            _ => return Err(self.error("a nonnegative integer exponent")),
        };
        let mut acc = WeylOperator::one();
        for _ in 0..e {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<WeylOperator> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(WeylOperator::constant(ParamRat::rational(BigRational::from_integer(n))))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                Ok(match name.as_str() {
                    "x" => WeylOperator::x(),
                    "D" => WeylOperator::d(),
                    _ => WeylOperator::constant(ParamRat::param(&name)),
                })
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != &Tok::Sym(')') {
                    return Err(self.error("')' or one of: +, -, *, /"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("one of: integer, identifier, x, D, (")),
        }
    }
}

fn as_scalar(p: &WeylOperator) -> Option<ParamRat> {
    if p.is_zero() {
        return Some(ParamRat::zero());
    }
    (p.order() == 0 && p.degree() == 0).then(|| p.coeff(0).coeff(0))
}

/// Parses an operator expression into normal form.
pub fn parse_operator(src: &str) -> Result<WeylOperator> {
    let mut lx = Lexer { toks: lex(src)?, pos: 0 };
    if lx.peek() == &Tok::End {
        return Err(lx.error("an expression"));
    }
    let out = lx.sum()?;
    if lx.peek() != &Tok::End {
        return Err(lx.error("end of input or one of: +, -, *, /"));
    }
    Ok(out)
}

/// Parses an expression that must not involve x or D.
pub fn parse_scalar(src: &str) -> Result<ParamRat> {
    let op = parse_operator(src)?;
    as_scalar(&op).ok_or(Error::Parse { line: 1, column: 1, expected: "a scalar without x or D".into() })
}

/// Canonical text of a scalar.
pub fn render_scalar(q: &ParamRat) -> String {
    render_param_rat(q)
}

fn x_power(k: usize) -> Option<String> {
    match k {
        0 => None,
        1 => Some("x".into()),
        _ => Some(format!("x^{}", k)),
    }
}

fn attach(body: String, factor: Option<String>) -> String {
    match factor {
        None => body,
        Some(f) if body == "1" => f,
        Some(f) => format!("{}*{}", body, f),
    }
}

/// Signed terms of a coefficient polynomial in x, lowest power first.
fn coefficient_terms(a: &UPoly) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    for (k, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.denom().is_one() {
            out.push((false, attach(render_param_rat(c), x_power(k))));
            continue;
        }
        let ts = mpoly_terms(c.numer());
        if ts.len() == 1 || k == 0 {
            for (neg, body) in ts {
                out.push((neg, attach(body, x_power(k))));
            }
        } else {
            out.push((false, attach(format!("({})", join_terms(ts)), x_power(k))));
        }
    }
    out
}

/// Canonical text: descending powers of D, each coefficient a sum in x.
pub fn render_operator(p: &WeylOperator) -> String {
    let mut terms = Vec::new();
    for i in (0..p.coeffs().len()).rev() {
        let a = &p.coeffs()[i];
        if a.is_zero() {
            continue;
        }
        let dpow = match i {
            0 => None,
            1 => Some("D".to_string()),
            _ => Some(format!("D^{}", i)),
        };
        let ct = coefficient_terms(a);
        if ct.len() == 1 {
            let (neg, body) = ct.into_iter().next().unwrap();
            terms.push((neg, attach(body, dpow)));
        } else if dpow.is_none() {
            terms.extend(ct);
        } else {
            terms.push((false, attach(format!("({})", join_terms(ct)), dpow)));
        }
    }
    join_terms(terms)
}
