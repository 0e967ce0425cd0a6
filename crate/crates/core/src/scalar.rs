//! Exact coefficient ring.
//!
//! A [`Scalar`] is a finite sum of rational multiples of monomials `q^e`, where the
//! exponent `e` is an affine form over named symbols (the colours `lambda`, `mu`, ...,
//! plus the two unit symbols [`C_PLUS`] and [`C_MINUS`] that stand for the free
//! normalisation constants `c+ = q^cp`, `c- = q^cm`).
//!
//! Values are kept in canonical form: zero coefficients are never stored, and the zero
//! scalar is the empty sum.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::parse::{self, ParseError};

/// Rational numbers used for exponent coefficients.
pub type Rat = Ratio<i64>;

/// Unit symbol carrying powers of the free constant `c+`.
pub const C_PLUS: &str = "cp";
/// Unit symbol carrying powers of the free constant `c-`.
pub const C_MINUS: &str = "cm";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScalarError {
    #[error("not a unit: {0} has {1} terms")]
    NotAUnit(String, usize),
    #[error("exponent {exponent} evaluates to {value}, which is not representable exactly")]
    NonIntegralExponent { exponent: String, value: Rat },
    #[error("symbol `{0}` has no assigned value")]
    UnassignedSymbol(String),
    #[error("q must be positive, got {0}")]
    NonPositiveQ(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// An interned symbol name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

/// Colour parameters are plain symbols.
pub type ColourSym = Symbol;

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// Affine form `constant + sum_i coeff_i * symbol_i` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Exponent {
    constant: Rat,
    symbols: BTreeMap<Symbol, Rat>,
}

impl Exponent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rat::from_integer(n))
    }

    pub fn rational(r: Rat) -> Self {
        Exponent { constant: r, symbols: BTreeMap::new() }
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::rational(Rat::new(num, den))
    }

    pub fn symbol(name: &str) -> Self {
        Self::term(Symbol::new(name), Rat::one())
    }

    pub fn term(sym: Symbol, coeff: Rat) -> Self {
        let mut symbols = BTreeMap::new();
        if !coeff.is_zero() {
            symbols.insert(sym, coeff);
        }
        Exponent { constant: Rat::zero(), symbols }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.symbols.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn constant_part(&self) -> Rat {
        self.constant
    }

    pub fn coeff(&self, sym: &Symbol) -> Rat {
        self.symbols.get(sym).copied().unwrap_or_else(Rat::zero)
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&Symbol, &Rat)> {
        self.symbols.iter()
    }

    pub fn scale(&self, k: Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Exponent {
            constant: self.constant * k,
            symbols: self.symbols.iter().map(|(s, c)| (s.clone(), *c * k)).collect(),
        }
    }

    /// Replaces every symbol found in `map` by the given affine form.
    pub fn substitute(&self, map: &BTreeMap<Symbol, Exponent>) -> Self {
        let mut out = Exponent::rational(self.constant);
        for (sym, c) in &self.symbols {
            match map.get(sym) {
                Some(e) => out = &out + &e.scale(*c),
                None => out = &out + &Exponent::term(sym.clone(), *c),
            }
        }
        out
    }

    pub fn evaluate(&self, values: &BTreeMap<Symbol, Rat>) -> Result<Rat, ScalarError> {
        let mut acc = self.constant;
        for (sym, c) in &self.symbols {
            let v = values.get(sym).ok_or_else(|| ScalarError::UnassignedSymbol(sym.to_string()))?;
            acc += *c * *v;
        }
        Ok(acc)
    }

    fn add_term(&mut self, sym: &Symbol, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.symbols.entry(sym.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.symbols.remove(sym);
        }
    }
}

// Lexicographic on (coefficients in sorted symbol order, then constant), treating absent
// symbols as zero. This order is compatible with addition, so leading terms multiply.
impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.symbols.iter().peekable();
        let mut b = other.symbols.iter().peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some((sa, ca)), Some((sb, cb))) => match sa.cmp(sb) {
                    Ordering::Equal => {
                        let o = ca.cmp(cb);
                        a.next();
                        b.next();
                        o
                    }
                    Ordering::Less => {
                        let o = ca.cmp(&&Rat::zero());
                        a.next();
                        o
                    }
                    Ordering::Greater => {
                        let o = Rat::zero().cmp(cb);
                        b.next();
                        o
                    }
                },
                (Some((_, ca)), None) => {
                    let o = ca.cmp(&&Rat::zero());
                    a.next();
                    o
                }
                (None, Some((_, cb))) => {
                    let o = Rat::zero().cmp(cb);
                    b.next();
                    o
                }
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.constant.cmp(&other.constant)
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Exponent> for &'a Exponent {
    type Output = Exponent;
    fn add(self, rhs: &Exponent) -> Exponent {
        let mut out = self.clone();
        out.constant += rhs.constant;
        for (s, c) in &rhs.symbols {
            out.add_term(s, *c);
        }
        out
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Exponent> for &'a Exponent {
    type Output = Exponent;
    fn sub(self, rhs: &Exponent) -> Exponent {
        self + &(-rhs)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        &self - &rhs
    }
}

impl Neg for &Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        self.scale(-Rat::one())
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        -&self
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        if !self.constant.is_zero() {
            parts.push((self.constant.is_negative(), fmt_rat(&self.constant.abs())));
        }
        for (sym, c) in &self.symbols {
            let mag = c.abs();
            let body = if mag.is_one() { sym.to_string() } else { format!("{}*{}", fmt_rat(&mag), sym) };
            parts.push((c.is_negative(), body));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (i, (neg, body)) in parts.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Exponent({self})")
    }
}

impl FromStr for Exponent {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_exponent(s)
    }
}

/// How `q` is supplied to [`Scalar::specialize`].
#[derive(Clone, Debug, PartialEq)]
pub enum QValue {
    /// Exact positive rational; every exponent must evaluate to an integer.
    Exact(BigRational),
    /// `q = t^2` for an exact positive rational `t`; half-integer exponents are exact.
    Square(BigRational),
    Float(f64),
}

/// Result of a specialization.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Float(f64),
}

impl Value {
    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Value::Float(x) => *x,
        }
    }
}

/// Element of the coefficient ring.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Exponent, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), Exponent::zero())
    }

    pub fn int(n: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(n)), Exponent::zero())
    }

    pub fn rational(r: BigRational) -> Self {
        Self::monomial(r, Exponent::zero())
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn monomial(coeff: BigRational, exp: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Scalar { terms }
    }

    /// `q^e`.
    pub fn q_pow(exp: Exponent) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    pub fn q_int(n: i64) -> Self {
        Self::q_pow(Exponent::int(n))
    }

    pub fn q() -> Self {
        Self::q_int(1)
    }

    /// `q - q^{-1}`, the ubiquitous off-diagonal entry.
    pub fn q_minus_qinv() -> Self {
        &Self::q() - &Self::q_int(-1)
    }

    /// `s = (c+)^{-1} c-`.
    pub fn s() -> Self {
        Self::q_pow(Exponent::symbol(C_MINUS) - Exponent::symbol(C_PLUS))
    }

    pub fn c_plus() -> Self {
        Self::q_pow(Exponent::symbol(C_PLUS))
    }

    pub fn c_minus() -> Self {
        Self::q_pow(Exponent::symbol(C_MINUS))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn as_monomial(&self) -> Option<(&BigRational, &Exponent)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, e))
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The term with the largest exponent.
    pub fn leading(&self) -> Option<(&Exponent, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Inverse of a monomial `c q^e`.
    pub fn invert(&self) -> Result<Scalar, ScalarError> {
        match self.as_monomial() {
            Some((c, e)) => Ok(Scalar::monomial(c.recip(), -e)),
            None => Err(ScalarError::NotAUnit(self.to_string(), self.terms.len())),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_q_pow(&self, e: &Exponent) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Scalar {
        if k.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    fn insert_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Affine substitution of exponent symbols (colour limits, relabelling).
    pub fn substitute(&self, map: &BTreeMap<Symbol, Exponent>) -> Scalar {
        let mut out = Scalar::zero();
        for (e, c) in &self.terms {
            out.insert_term(e.substitute(map), c.clone());
        }
        out
    }

    /// Evaluates at a numeric point. Every symbol (colours and the unit symbols) must be
    /// assigned in `symbols`.
    pub fn specialize(&self, q: &QValue, symbols: &BTreeMap<Symbol, Rat>) -> Result<Value, ScalarError> {
        match q {
            QValue::Float(x) => {
                if *x <= 0.0 {
                    return Err(ScalarError::NonPositiveQ(x.to_string()));
                }
                let mut acc = 0.0;
                for (e, c) in &self.terms {
                    let v = e.evaluate(symbols)?;
                    let ev = *v.numer() as f64 / *v.denom() as f64;
                    acc += c.to_f64().unwrap_or(f64::NAN) * x.powf(ev);
                }
                Ok(Value::Float(acc))
            }
            QValue::Exact(base) | QValue::Square(base) => {
                if !base.is_positive() {
                    return Err(ScalarError::NonPositiveQ(base.to_string()));
                }
                let doubled = matches!(q, QValue::Square(_));
                let mut acc = BigRational::zero();
                for (e, c) in &self.terms {
                    let v = e.evaluate(symbols)?;
                    let k = if doubled { v * Rat::from_integer(2) } else { v };
                    if !k.is_integer() {
                        return Err(ScalarError::NonIntegralExponent { exponent: e.to_string(), value: v });
                    }
                    let n = *k.numer();
                    let p = rational_pow(base, n);
                    acc += c * p;
                }
                Ok(Value::Exact(acc))
            }
        }
    }
}

fn rational_pow(base: &BigRational, n: i64) -> BigRational {
    let mut acc = BigRational::one();
    let b = if n < 0 { base.recip() } else { base.clone() };
    for _ in 0..n.unsigned_abs() {
        acc *= &b;
    }
    acc
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.terms {
            self.insert_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.terms {
            self.insert_term(e.clone(), -c.clone());
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_big(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_q_power(e: &Exponent) -> String {
    if e.is_constant() && e.constant_part().is_integer() {
        let n = *e.constant_part().numer();
        return match n {
            1 => "q".to_string(),
            n if n > 1 => format!("q^{n}"),
            n => format!("q^({n})"),
        };
    }
    format!("q^({e})")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let symbolic = self.terms.iter().rev().filter(|(e, _)| !e.is_constant());
        let constant = self.terms.iter().rev().filter(|(e, _)| e.is_constant());
        for (i, (e, c)) in symbolic.chain(constant).enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if e.is_zero() {
                fmt_big(&mag)
            } else if mag.is_one() {
                fmt_q_power(e)
            } else {
                format!("{}*{}", fmt_big(&mag), fmt_q_power(e))
            };
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_scalar(s)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Substitution sending every listed colour to zero.
pub fn colourless_map(colours: &[Symbol]) -> BTreeMap<Symbol, Exponent> {
    colours.iter().map(|c| (c.clone(), Exponent::zero())).collect()
}

/// Substitution sending every listed colour to one shared symbol.
pub fn monochromatic_map(colours: &[Symbol], target: &Symbol) -> BTreeMap<Symbol, Exponent> {
    colours.iter().map(|c| (c.clone(), Exponent::term(target.clone(), Rat::one()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn e(x: &str) -> Exponent {
        x.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&s("q^(1/2)") * &s("q^(1/2)"), Scalar::q());
        assert_eq!(&s("q - q^(-1)") * &s("q + q^(-1)"), &Scalar::q_int(2) - &Scalar::q_int(-2));
        assert_eq!(&s("q^(lambda + mu)") * &s("q^(-lambda - mu)"), Scalar::one());
        assert!((&s("q") - &s("q")).is_zero());
    }

    #[test]
    fn inversion() {
        assert_eq!(s("q^(lambda)").invert().unwrap(), s("q^(-lambda)"));
        assert_eq!(s("2*q^(1 - lambda)").invert().unwrap(), s("1/2*q^(lambda - 1)"));
        assert!(matches!(s("q - q^(-1)").invert(), Err(ScalarError::NotAUnit(_, 2))));
        assert!(Scalar::zero().invert().is_err());
    }

    #[test]
    fn specialize_examples() {
        let mut vals = BTreeMap::new();
        vals.insert(Symbol::new("lambda"), Rat::from_integer(1));
        vals.insert(Symbol::new("mu"), Rat::from_integer(2));
        let three = QValue::Exact(BigRational::from_integer(3.into()));
        assert_eq!(
            s("q^(lambda + mu)").specialize(&three, &vals).unwrap(),
            Value::Exact(BigRational::from_integer(27.into()))
        );
        let two = QValue::Exact(BigRational::from_integer(2.into()));
        assert_eq!(
            Scalar::q_minus_qinv().specialize(&two, &vals).unwrap(),
            Value::Exact(BigRational::new(3.into(), 2.into()))
        );
        let four = QValue::Square(BigRational::from_integer(2.into()));
        assert_eq!(s("q^(1/2)").specialize(&four, &vals).unwrap(), Value::Exact(BigRational::from_integer(2.into())));
        assert!(matches!(s("q^(1/2)").specialize(&two, &vals), Err(ScalarError::NonIntegralExponent { .. })));
        assert!(matches!(s("q^(nu)").specialize(&two, &vals), Err(ScalarError::UnassignedSymbol(_))));
    }

    #[test]
    fn colour_substitution_limits() {
        let l = Symbol::new("lambda");
        let m = Symbol::new("mu");
        let c = Symbol::new("c");
        let zero = colourless_map(&[l.clone(), m.clone()]);
        assert_eq!(s("q^(1 - lambda + mu)").substitute(&zero), Scalar::q());
        let mono = monochromatic_map(&[l, m], &c);
        assert_eq!(s("q^(lambda + mu)").substitute(&mono), s("q^(2*c)"));
        assert_eq!(s("q^(2*mu - 2*lambda)").substitute(&mono), Scalar::one());
    }

    #[test]
    fn display_round_trip_examples() {
        for text in ["q^(1 - lambda + mu) - q^(-1)", "q - q^(-1)", "-1/2*q^(-lambda - mu) + 3", "0", "q^2 + 2*q + 1"] {
            let v = s(text);
            assert_eq!(v.to_string().parse::<Scalar>().unwrap(), v, "{text}");
        }
        assert_eq!(s("q^(1 - lambda + mu) - q^(-1)").to_string(), "q^(1 - lambda + mu) - q^(-1)");
    }

    #[test]
    fn exponent_order_is_translation_invariant() {
        let xs = ["lambda", "-lambda + 1", "mu - 2", "1/2", "lambda - mu", "0"];
        let shift = e("mu - 1/2*lambda + 3");
        for a in xs {
            for b in xs {
                let (a, b) = (e(a), e(b));
                assert_eq!(a.cmp(&b), (&a + &shift).cmp(&(&b + &shift)));
            }
        }
    }

    #[test]
    fn nonlinear_exponents_are_rejected() {
        assert!("lambda*mu".parse::<Exponent>().is_err());
        assert!("q^(lambda*lambda)".parse::<Scalar>().is_err());
        assert_eq!(e("2*(lambda - mu)/4"), e("1/2*lambda - 1/2*mu"));
    }
}
