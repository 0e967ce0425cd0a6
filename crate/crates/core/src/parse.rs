//! Recursive-descent parser for the textual grammar shared by scalars, exponents and
//! noncommutative polynomials.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' exp-atom]
//! atom   := number | identifier | '(' expr ')'
//! ```
//!
//! `q^x` is the only place where a symbolic exponent may appear; any other base only
//! accepts an integer power.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::scalar::{Exponent, Rat, Scalar, Symbol};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

/// Values the parser can build.
pub trait Algebraic: Sized + Clone {
    /// Lookup context for identifiers.
    type Ctx;
    fn from_rational(r: BigRational) -> Result<Self, String>;
    fn q_power(e: Exponent) -> Result<Self, String>;
    fn identifier(ctx: &Self::Ctx, name: &str) -> Result<Self, String>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Result<Self, String>;
    fn div(&self, o: &Self) -> Result<Self, String>;
    fn neg(&self) -> Self;
    fn int_pow(&self, n: i64) -> Result<Self, String>;
}

#[derive(Clone, Debug, PartialEq)]
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
}

struct Lexed {
    toks: Vec<(Tok, usize, usize)>,
}

fn lex(src: &str) -> Result<Lexed, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1;
    let mut col = 0;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        col += 1;
        let start_col = col;
        match ch {
            '\n' => {
                line += 1;
                col = 0;
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            c if c_tok(c).is_some() => {
                toks.push((c_tok(c).unwrap(), line, start_col));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                let n: BigInt =
                    text.parse().map_err(|_| ParseError::new(line, start_col, format!("bad number `{text}`")))?;
                toks.push((Tok::Num(n), line, start_col));
                col += j - i - 1;
                i = j;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                toks.push((Tok::Ident(text), line, start_col));
                col += j - i - 1;
                i = j;
            }
            other => return Err(ParseError::new(line, start_col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(Lexed { toks })
}

fn c_tok(c: char) -> Option<Tok> {
    Some(match c {
        '+' => Tok::Plus,
        '-' => Tok::Minus,
        '*' => Tok::Star,
        '/' => Tok::Slash,
        '^' => Tok::Caret,
        '(' => Tok::LParen,
        ')' => Tok::RParen,
        _ => return None,
    })
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        let lexed = lex(src)?;
        let lines = src.lines().count().max(1);
        let last_len = src.lines().last().map(|l| l.chars().count()).unwrap_or(0);
        Ok(Parser { toks: lexed.toks, pos: 0, end: (lines, last_len + 1) })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (l, c) = self.here();
        ParseError::new(l, c, msg)
    }

    fn wrap<T>(&self, at: (usize, usize), r: Result<T, String>) -> Result<T, ParseError> {
        r.map_err(|m| ParseError::new(at.0, at.1, m))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    fn expr<V: Algebraic>(&mut self, ctx: &V::Ctx) -> Result<V, ParseError> {
        let negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc: V = self.term(ctx)?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(&Tok::Plus) {
                let t: V = self.term(ctx)?;
                acc = acc.add(&t);
            } else if self.eat(&Tok::Minus) {
                let t: V = self.term(ctx)?;
                acc = acc.sub(&t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<V: Algebraic>(&mut self, ctx: &V::Ctx) -> Result<V, ParseError> {
        let mut acc: V = self.unary(ctx)?;
        loop {
            let at = self.here();
            if self.eat(&Tok::Star) {
                let f: V = self.unary(ctx)?;
                acc = self.wrap(at, acc.mul(&f))?;
            } else if self.eat(&Tok::Slash) {
                let f: V = self.unary(ctx)?;
                acc = self.wrap(at, acc.div(&f))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<V: Algebraic>(&mut self, ctx: &V::Ctx) -> Result<V, ParseError> {
        if self.eat(&Tok::Minus) {
            let v: V = self.unary(ctx)?;
            Ok(v.neg())
        } else {
            self.power(ctx)
        }
    }

    fn power<V: Algebraic>(&mut self, ctx: &V::Ctx) -> Result<V, ParseError> {
        let at = self.here();
        if let Some(Tok::Ident(name)) = self.peek() {
            if name == "q" {
                self.pos += 1;
                let e = if self.eat(&Tok::Caret) { self.exp_atom()? } else { Exponent::int(1) };
                return self.wrap(at, V::q_power(e));
            }
        }
        let base: V = self.atom(ctx)?;
        if self.eat(&Tok::Caret) {
            let at = self.here();
            let e = self.exp_atom()?;
            let n = if e.is_constant() && e.constant_part().is_integer() {
                *e.constant_part().numer()
            } else {
                return Err(ParseError::new(at.0, at.1, "only q may carry a non-integer or symbolic exponent"));
            };
            return self.wrap(at, base.int_pow(n));
        }
        Ok(base)
    }

    fn exp_atom(&mut self) -> Result<Exponent, ParseError> {
        if self.eat(&Tok::Minus) {
            let e = self.exp_atom()?;
            return Ok(-e);
        }
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let v = n.to_i64().ok_or_else(|| ParseError::new(at.0, at.1, "exponent too large"))?;
                Ok(Exponent::int(v))
            }
            Some(Tok::Ident(_)) | Some(Tok::LParen) => self.atom::<Exponent>(&()),
            _ => Err(self.err("expected an exponent")),
        }
    }

    fn atom<V: Algebraic>(&mut self, ctx: &V::Ctx) -> Result<V, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                self.wrap(at, V::from_rational(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.wrap(at, V::identifier(ctx, &name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v: V = self.expr(ctx)?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a complete expression of type `V`.
pub fn parse_value<V: Algebraic>(src: &str, ctx: &V::Ctx) -> Result<V, ParseError> {
    let mut p = Parser::new(src)?;
    if p.toks.is_empty() {
        return Err(p.err("empty expression"));
    }
    let v = p.expr(ctx)?;
    p.finish()?;
    Ok(v)
}

pub fn parse_scalar(src: &str) -> Result<Scalar, ParseError> {
    parse_value(src, &())
}

pub fn parse_exponent(src: &str) -> Result<Exponent, ParseError> {
    parse_value(src, &())
}

fn small_rat(r: &BigRational) -> Result<Rat, String> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Rat::new(n, d)),
        _ => Err(format!("exponent coefficient {r} is too large")),
    }
}

impl Algebraic for Exponent {
    type Ctx = ();

    fn from_rational(r: BigRational) -> Result<Self, String> {
        Ok(Exponent::rational(small_rat(&r)?))
    }

    fn q_power(_: Exponent) -> Result<Self, String> {
        Err("`q` cannot appear inside an exponent".into())
    }

    fn identifier(_: &(), name: &str) -> Result<Self, String> {
        Ok(Exponent::term(Symbol::new(name), Rat::one()))
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Result<Self, String> {
        if self.is_constant() {
            Ok(o.scale(self.constant_part()))
        } else if o.is_constant() {
            Ok(self.scale(o.constant_part()))
        } else {
            Err(format!("nonlinear exponent ({self})*({o})"))
        }
    }

    fn div(&self, o: &Self) -> Result<Self, String> {
        if !o.is_constant() {
            return Err(format!("nonlinear exponent ({self})/({o})"));
        }
        let d = o.constant_part();
        if d.is_zero() {
            return Err("division by zero".into());
        }
        Ok(self.scale(d.recip()))
    }

    fn neg(&self) -> Self {
        -self
    }

    fn int_pow(&self, n: i64) -> Result<Self, String> {
        match n {
            1 => Ok(self.clone()),
            0 => Ok(Exponent::int(1)),
            _ if self.is_constant() && n > 0 => {
                let mut acc = Rat::one();
                for _ in 0..n {
                    acc *= self.constant_part();
                }
                Ok(Exponent::rational(acc))
            }
            _ => Err(format!("nonlinear exponent ({self})^{n}")),
        }
    }
}

impl Algebraic for Scalar {
    type Ctx = ();

    fn from_rational(r: BigRational) -> Result<Self, String> {
        Ok(Scalar::rational(r))
    }

    fn q_power(e: Exponent) -> Result<Self, String> {
        Ok(Scalar::q_pow(e))
    }

    fn identifier(_: &(), name: &str) -> Result<Self, String> {
        match name {
            "s" => Ok(Scalar::s()),
            _ => Err(format!("unknown identifier `{name}` in a scalar")),
        }
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Result<Self, String> {
        Ok(self * o)
    }

    fn div(&self, o: &Self) -> Result<Self, String> {
        let inv = o.invert().map_err(|e| e.to_string())?;
        Ok(self * &inv)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn int_pow(&self, n: i64) -> Result<Self, String> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            let inv = self.invert().map_err(|e| e.to_string())?;
            Ok(inv.pow(n.unsigned_abs() as u32))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_carry_positions() {
        let e = parse_scalar("q^(1 +)").unwrap_err();
        assert_eq!(e.line, 1);
        assert_eq!(e.column, 7);
        let e = parse_scalar("q\n + $").unwrap_err();
        assert_eq!((e.line, e.column), (2, 4));
    }

    #[test]
    fn unary_minus_and_precedence() {
        assert_eq!(parse_scalar("-q^2").unwrap(), -Scalar::q_int(2));
        assert_eq!(parse_scalar("q^-1").unwrap(), Scalar::q_int(-1));
        assert_eq!(parse_scalar("2*q/4").unwrap(), Scalar::frac(1, 2) * Scalar::q());
        assert_eq!(parse_scalar("(q + 1)^2").unwrap(), parse_scalar("q^2 + 2*q + 1").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "q^", "(q", "q q", "lambda", "q^(q)", "1/(q + 1)"] {
            assert!(parse_scalar(bad).is_err(), "{bad}");
        }
    }
}
