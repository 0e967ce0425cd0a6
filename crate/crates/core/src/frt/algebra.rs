//! Generators, words and noncommutative polynomials of the coloured matrix group.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::linalg::Ring;
use crate::parse::{self, Algebraic, ParseError};
use crate::scalar::{Exponent, Scalar, Symbol};

/// Matrix entry of `T = [[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];

    pub fn at(i: usize, j: usize) -> Letter {
        Letter::ALL[2 * i + j]
    }

    pub fn position(self) -> (usize, usize) {
        let k = self as usize;
        (k / 2, k % 2)
    }

    pub fn name(self) -> char {
        ['a', 'b', 'c', 'd'][self as usize]
    }
}

/// A named colour and the exponent it stands for (a symbol, or a number in limits).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaletteColour {
    pub name: String,
    pub value: Exponent,
}

/// Finite ordered set of colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette {
    colours: Vec<PaletteColour>,
}

impl Palette {
    pub fn new(colours: Vec<PaletteColour>) -> Self {
        Palette { colours }
    }

    /// Each colour stands for the symbol of the same name.
    pub fn symbolic(names: &[&str]) -> Self {
        Palette::new(names.iter().map(|n| PaletteColour { name: n.to_string(), value: Exponent::symbol(n) }).collect())
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.colours[i].name
    }

    pub fn value(&self, i: usize) -> &Exponent {
        &self.colours[i].value
    }

    pub fn colours(&self) -> &[PaletteColour] {
        &self.colours
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.colours.iter().position(|c| c.name == name)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.colours.iter().map(|c| Symbol::new(&c.name)).collect()
    }

    /// Applies an exponent substitution to every colour value.
    pub fn substitute(&self, map: &BTreeMap<Symbol, Exponent>) -> Palette {
        Palette::new(
            self.colours
                .iter()
                .map(|c| PaletteColour { name: c.name.clone(), value: c.value.substitute(map) })
                .collect(),
        )
    }
}

/// Ranking of generators inside the degree-lexicographic word order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    /// `a_1 < a_2 < b_1 < ...`: letters first, palette position second.
    #[default]
    LetterMajor,
    /// `a_1 < b_1 < ... < d_1 < a_2 < ...`.
    ColourMajor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupLetter {
    Gen {
        letter: Letter,
        colour: usize,
    },
    /// Inverse of the quantum determinant of one colour.
    DetInv {
        colour: usize,
    },
}

/// Generator table for a palette. Letter ids are ranked so that numeric order is the
/// monomial order; inverse determinants come first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebra {
    palette: Palette,
    order: MonomialOrder,
    letters: Vec<GroupLetter>,
}

impl GroupAlgebra {
    pub fn new(palette: Palette, order: MonomialOrder) -> Self {
        let p = palette.len();
        let mut letters: Vec<GroupLetter> = (0..p).map(|colour| GroupLetter::DetInv { colour }).collect();
        match order {
            MonomialOrder::LetterMajor => {
                for letter in Letter::ALL {
                    for colour in 0..p {
                        letters.push(GroupLetter::Gen { letter, colour });
                    }
                }
            }
            MonomialOrder::ColourMajor => {
                for colour in 0..p {
                    for letter in Letter::ALL {
                        letters.push(GroupLetter::Gen { letter, colour });
                    }
                }
            }
        }
        assert!(letters.len() < 256, "palette too large");
        GroupAlgebra { palette, order, letters }
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn letter(&self, id: u8) -> GroupLetter {
        self.letters[id as usize]
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    pub fn gen_id(&self, letter: Letter, colour: usize) -> u8 {
        let p = self.palette.len();
        let k = letter as usize;
        let rank = match self.order {
            MonomialOrder::LetterMajor => k * p + colour,
            MonomialOrder::ColourMajor => colour * 4 + k,
        };
        (p + rank) as u8
    }

    pub fn det_inv_id(&self, colour: usize) -> u8 {
        colour as u8
    }

    /// Entry `t_{ij}` of `T_colour`.
    pub fn t(&self, i: usize, j: usize, colour: usize) -> u8 {
        self.gen_id(Letter::at(i, j), colour)
    }

    /// All `a, b, c, d` generators of every colour.
    pub fn generator_ids(&self) -> Vec<u8> {
        (0..self.letters.len() as u8).filter(|&id| matches!(self.letter(id), GroupLetter::Gen { .. })).collect()
    }

    pub fn gen(&self, letter: Letter, colour: usize) -> NCPoly {
        NCPoly::word(Word::from_slice(&[self.gen_id(letter, colour)]))
    }

    pub fn det_inv(&self, colour: usize) -> NCPoly {
        NCPoly::word(Word::from_slice(&[self.det_inv_id(colour)]))
    }

    /// The generator matrix `T_colour` as polynomials.
    pub fn t_matrix(&self, colour: usize) -> crate::linalg::Matrix<NCPoly> {
        crate::linalg::Matrix::from_fn(2, 2, |i, j| NCPoly::word(Word::from_slice(&[self.t(i, j, colour)])))
    }

    pub fn letter_name(&self, id: u8) -> String {
        match self.letter(id) {
            GroupLetter::Gen { letter, colour } => {
                format!("{}_{}", letter.name(), self.palette.name(colour))
            }
            GroupLetter::DetInv { colour } => format!("Dinv_{}", self.palette.name(colour)),
        }
    }

    pub fn parse_letter(&self, name: &str) -> Option<u8> {
        let (head, colour) = name.split_once('_')?;
        let c = self.palette.index_of(colour)?;
        match head {
            "a" => Some(self.gen_id(Letter::A, c)),
            "b" => Some(self.gen_id(Letter::B, c)),
            "c" => Some(self.gen_id(Letter::C, c)),
            "d" => Some(self.gen_id(Letter::D, c)),
            "Dinv" => Some(self.det_inv_id(c)),
            _ => None,
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&id| self.letter_name(id)).collect::<Vec<_>>().join("*")
    }

    /// Text form in the scalar/word grammar; [`GroupAlgebra::parse_poly`] reads it back.
    pub fn format_poly(&self, p: &NCPoly) -> String {
        format_terms(p.terms.iter().rev().map(|(w, c)| (self.format_word(w), c)))
    }

    pub fn format_tensor(&self, t: &TensorPoly) -> String {
        format_terms(t.terms.iter().rev().map(|(legs, c)| {
            let body = legs.iter().map(|w| self.format_word(w)).collect::<Vec<_>>().join(" ⊗ ");
            (format!("[{body}]"), c)
        }))
    }

    pub fn parse_poly(&self, src: &str) -> Result<NCPoly, ParseError> {
        parse::parse_value(src, self)
    }

    /// Exchanges the roles of two colours (same order and palette shape).
    pub fn swap_colours(&self, w: &Word, x: usize, y: usize) -> Word {
        w.iter()
            .map(|&id| {
                let sw = |c: usize| {
                    if c == x {
                        y
                    } else if c == y {
                        x
                    } else {
                        c
                    }
                };
                match self.letter(id) {
                    GroupLetter::Gen { letter, colour } => self.gen_id(letter, sw(colour)),
                    GroupLetter::DetInv { colour } => self.det_inv_id(sw(colour)),
                }
            })
            .collect()
    }
}

pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (i, (body, c)) in terms.enumerate() {
        let (neg, text) = signed_term(&body, c);
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&text);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn signed_term(body: &str, c: &Scalar) -> (bool, String) {
    let plain = body == "1";
    if let Some((k, e)) = c.as_monomial() {
        let neg = k < &BigRational::from_integer(0.into());
        let mag = Scalar::monomial(if neg { -k.clone() } else { k.clone() }, e.clone());
        let text = match (mag.is_one(), plain) {
            (true, _) => body.to_string(),
            (false, true) => mag.to_string(),
            (false, false) => format!("{mag}*{body}"),
        };
        return (neg, text);
    }
    if plain {
        (false, format!("({c})"))
    } else {
        (false, format!("({c})*{body}"))
    }
}

/// A word in generator ids, compared degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u8; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(ids: &[u8]) -> Self {
        Word(SmallVec::from_slice(ids))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u8> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `prefix + middle + suffix` where `middle` replaces `self[at..at + len]`.
    pub fn splice(&self, at: usize, len: usize, middle: &Word) -> Word {
        let mut v: SmallVec<[u8; 8]> = SmallVec::with_capacity(self.len() - len + middle.len());
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(&middle.0);
        v.extend_from_slice(&self.0[at + len..]);
        Word(v)
    }
}

impl FromIterator<u8> for Word {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0.as_slice())
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Noncommutative polynomial over [`Scalar`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, w, c);
        NCPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Largest word and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total number of scalar terms over all words.
    pub fn scalar_terms(&self) -> usize {
        self.terms.values().map(Scalar::len).sum()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        add_into(&mut self.terms, w, c);
    }

    pub fn add_scaled(&mut self, other: &NCPoly, k: &Scalar) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), k * c);
        }
    }

    pub fn scale(&self, k: &Scalar) -> NCPoly {
        let mut out = NCPoly::zero();
        out.add_scaled(self, k);
        out
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn map_words(&self, f: impl Fn(&Word) -> Word) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    /// Product with words concatenated in order.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    pub fn product(factors: &[&NCPoly]) -> NCPoly {
        factors.iter().fold(NCPoly::one(), |acc, f| acc.mul(f))
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1));
        out
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&Scalar::int(-1))
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl Ring for NCPoly {
    fn zero() -> Self {
        NCPoly::zero()
    }
    fn one() -> Self {
        NCPoly::one()
    }
    fn is_zero(&self) -> bool {
        NCPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        NCPoly::add(self, other)
    }
    fn neg(&self) -> Self {
        NCPoly::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        NCPoly::mul(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        NCPoly::sub(self, other)
    }
}

impl Algebraic for NCPoly {
    type Ctx = GroupAlgebra;

    fn from_rational(r: BigRational) -> Result<Self, String> {
        Ok(NCPoly::scalar(Scalar::rational(r)))
    }

    fn q_power(e: Exponent) -> Result<Self, String> {
        Ok(NCPoly::scalar(Scalar::q_pow(e)))
    }

    fn identifier(ctx: &GroupAlgebra, name: &str) -> Result<Self, String> {
        if name == "s" {
            return Ok(NCPoly::scalar(Scalar::s()));
        }
        ctx.parse_letter(name)
            .map(|id| NCPoly::word(Word::from_slice(&[id])))
            .ok_or_else(|| format!("unknown generator `{name}`"))
    }

    fn add(&self, o: &Self) -> Self {
        NCPoly::add(self, o)
    }

    fn sub(&self, o: &Self) -> Self {
        NCPoly::sub(self, o)
    }

    fn mul(&self, o: &Self) -> Result<Self, String> {
        Ok(NCPoly::mul(self, o))
    }

    fn div(&self, o: &Self) -> Result<Self, String> {
        match o.terms.iter().next() {
            Some((w, c)) if o.terms.len() == 1 && w.is_empty() => {
                let inv = c.invert().map_err(|e| e.to_string())?;
                Ok(self.scale(&inv))
            }
            _ => Err("can only divide by a unit scalar".into()),
        }
    }

    fn neg(&self) -> Self {
        NCPoly::neg(self)
    }

    fn int_pow(&self, n: i64) -> Result<Self, String> {
        if n < 0 {
            return Err("negative powers of polynomials are not supported".into());
        }
        Ok((0..n).fold(NCPoly::one(), |acc, _| acc.mul(self)))
    }
}

/// Element of a tensor power of the group algebra with a fixed number of legs.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorPoly {
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(legs: usize) -> Self {
        Self::term(vec![Word::empty(); legs], Scalar::one())
    }

    pub fn term(legs: Vec<Word>, c: Scalar) -> Self {
        let mut t = TensorPoly::zero();
        t.add_term(legs, c);
        t
    }

    /// `p1 ⊗ p2 ⊗ ...`.
    pub fn from_legs(legs: &[&NCPoly]) -> Self {
        let mut acc = TensorPoly::term(Vec::new(), Scalar::one());
        for p in legs {
            let mut next = TensorPoly::zero();
            for (ws, c) in &acc.terms {
                for (w, d) in p.terms() {
                    let mut v = ws.clone();
                    v.push(w.clone());
                    next.add_term(v, c * d);
                }
            }
            acc = next;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, legs: Vec<Word>, c: Scalar) {
        add_into(&mut self.terms, legs, c);
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, k: &Scalar) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), k * c);
        }
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1));
        out
    }

    /// Leg-wise product.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                let legs = l1.iter().zip(l2).map(|(a, b)| a.concat(b)).collect();
                out.add_term(legs, c1 * c2);
            }
        }
        out
    }

    pub fn scalar_terms(&self) -> usize {
        self.terms.values().map(Scalar::len).sum()
    }
}

impl fmt::Debug for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
