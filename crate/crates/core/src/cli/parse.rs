//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: integers, a/b, named variables, + - * / ^ and parentheses.
//! Juxtaposition is rejected, so "2T" and "(T)(Y)" are errors. Division is
//! allowed only by nonzero constants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{BiPoly, Rat, UniPoly};

/// Largest exponent accepted after '^'.
pub const MAX_EXPONENT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at {pos}")]
    UnknownVariable { pos: usize, name: String },
}

// Sparse polynomial in up to two variables keyed by exponents.
type Terms = BTreeMap<(usize, usize), Rat>;

fn constant(c: Rat) -> Terms {
    let mut t = Terms::new();
    if !c.is_zero() {
        t.insert((0, 0), c);
    }
    t
}

fn add(mut a: Terms, b: Terms, sign: i32) -> Terms {
    for (k, v) in b {
        let e = a.entry(k).or_insert_with(Rat::zero);
        if sign < 0 {
            *e -= v;
        } else {
            *e += v;
        }
    }
    a.retain(|_, v| !v.is_zero());
    a
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            *out.entry((ka.0 + kb.0, ka.1 + kb.1)).or_insert_with(Rat::zero) += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn as_constant(t: &Terms) -> Option<Rat> {
    match t.len() {
        0 => Some(Rat::zero()),
        1 => t.get(&(0, 0)).cloned(),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(text.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Var(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) || c == '\u{2212}' {
            out.push((i, Tok::Op(if c == '\u{2212}' { '-' } else { c })));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Terms, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = add(acc, self.term()?, 1);
            } else if self.eat('-') {
                acc = add(acc, self.term()?, -1);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Terms, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = mul(&acc, &self.unary()?);
            } else if self.eat('/') {
                let at = self.here();
                let d = self.unary()?;
                match as_constant(&d) {
                    Some(c) if !c.is_zero() => acc = mul(&acc, &constant(c.recip())),
                    Some(_) => return Err(ParseError::Syntax { pos: at, msg: "division by zero".into() }),
                    None => return Err(ParseError::Syntax { pos: at, msg: "division by a non-constant".into() }),
                }
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Var(_) | Tok::Op('('))) {
                return self.err("implicit multiplication is not allowed; use '*'");
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Terms, ParseError> {
        if self.eat('-') {
            return Ok(add(Terms::new(), self.unary()?, -1));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Terms, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return self.err("expected a nonnegative integer exponent");
        };
        let n = match n.to_usize() {
            Some(n) if n <= MAX_EXPONENT => n,
            _ => return self.err(format!("exponent exceeds {MAX_EXPONENT}")),
        };
        self.pos += 1;
        let mut out = constant(Rat::from_integer(1.into()));
        for _ in 0..n {
            out = mul(&out, &base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Terms, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(constant(Rat::from_integer(n)))
            }
            Some(Tok::Var(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(0) => Ok([((1, 0), Rat::from_integer(1.into()))].into_iter().collect()),
                    Some(_) => Ok([((0, 1), Rat::from_integer(1.into()))].into_iter().collect()),
                    None => Err(ParseError::UnknownVariable { pos: at, name }),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_terms(text: &str, vars: &[&str]) -> Result<Terms, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.chars().count(), vars };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// Parse a polynomial in T and Y.
pub fn parse_bipoly(text: &str) -> Result<BiPoly, ParseError> {
    Ok(BiPoly::new(parse_terms(text, &["T", "Y"])?))
}

/// Parse a polynomial in the single variable `var`.
pub fn parse_unipoly(text: &str, var: &str) -> Result<UniPoly, ParseError> {
    let terms = parse_terms(text, &[var])?;
    let deg = terms.keys().map(|k| k.0).max().unwrap_or(0);
    let mut cs = vec![Rat::zero(); deg + 1];
    for ((i, _), c) in terms {
        cs[i] = c;
    }
    Ok(UniPoly::new(cs))
}

/// Parse a rational constant such as "-41/4".
pub fn parse_rational(text: &str) -> Result<Rat, ParseError> {
    let terms = parse_terms(text, &[])?;
    Ok(as_constant(&terms).expect("no variables allowed"))
}
