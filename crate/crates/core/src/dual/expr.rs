//! Normal-ordered elements of the dual algebra and the spin-1/2 representation.

use std::collections::BTreeMap;
use std::fmt;

use crate::frt::Palette;
use crate::linalg::{Matrix, Ring};
use crate::scalar::{Exponent, Rat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DualLetter {
    A,
    B,
    C,
    D,
}

impl DualLetter {
    pub const ALL: [DualLetter; 4] = [DualLetter::A, DualLetter::B, DualLetter::C, DualLetter::D];

    pub fn name(self) -> char {
        match self {
            DualLetter::A => 'A',
            DualLetter::B => 'B',
            DualLetter::C => 'C',
            DualLetter::D => 'D',
        }
    }

    /// Matrix unit `e_ij` of the pairing `<X, T>`.
    pub fn position(self) -> (usize, usize) {
        match self {
            DualLetter::A => (0, 0),
            DualLetter::B => (0, 1),
            DualLetter::C => (1, 0),
            DualLetter::D => (1, 1),
        }
    }

    /// `n` in `X q^K = q^{n Σ_γ α_γ} q^K X` for `K = Σ α_γ H_γ + β_γ H'_γ`.
    fn shift(self) -> i64 {
        match self {
            DualLetter::A | DualLetter::D => 0,
            DualLetter::B => -2,
            DualLetter::C => 2,
        }
    }
}

/// A dual generator carrying a palette colour index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualGen {
    pub letter: DualLetter,
    pub colour: usize,
}

impl DualGen {
    pub fn new(letter: DualLetter, colour: usize) -> Self {
        DualGen { letter, colour }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CartanKind {
    /// `H = A - D`.
    H,
    /// `H' = A + D`.
    HPrime,
}

/// Formal exponential `q^{Σ coeff · H}` over the Cartan symbols `H_c, H'_c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanExp(BTreeMap<(usize, CartanKind), Exponent>);

impl CartanExp {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(colour: usize, kind: CartanKind, coeff: Exponent) -> Self {
        let mut m = BTreeMap::new();
        if !coeff.is_zero() {
            m.insert((colour, kind), coeff);
        }
        CartanExp(m)
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(usize, CartanKind), &Exponent)> {
        self.0.iter()
    }

    pub fn compose(&self, other: &CartanExp) -> CartanExp {
        let mut m = self.0.clone();
        for (k, v) in &other.0 {
            let sum = m.get(k).map_or_else(|| v.clone(), |x| x + v);
            if sum.is_zero() {
                m.remove(k);
            } else {
                m.insert(*k, sum);
            }
        }
        CartanExp(m)
    }

    pub fn inverse(&self) -> CartanExp {
        CartanExp(self.0.iter().map(|(k, v)| (*k, -v)).collect())
    }

    /// Sum of the `H` coefficients, which drives every shift rule.
    pub fn h_weight(&self) -> Exponent {
        self.0.iter().filter(|((_, k), _)| *k == CartanKind::H).fold(Exponent::zero(), |acc, (_, v)| &acc + v)
    }

    /// Sum of the `H'` coefficients.
    pub fn h_prime_weight(&self) -> Exponent {
        self.0.iter().filter(|((_, k), _)| *k == CartanKind::HPrime).fold(Exponent::zero(), |acc, (_, v)| &acc + v)
    }

    pub fn map_colours(&self, f: impl Fn(usize) -> usize) -> CartanExp {
        let mut out = CartanExp::identity();
        for ((c, k), v) in &self.0 {
            out = out.compose(&CartanExp::single(f(*c), *k, v.clone()));
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Exponent) -> Exponent) -> CartanExp {
        CartanExp(self.0.iter().map(|(k, v)| (*k, f(v))).filter(|(_, v)| !v.is_zero()).collect())
    }
}

pub type DualWord = Vec<DualGen>;
type Key = (CartanExp, DualWord);

/// Element of the dual algebra: `Σ c · q^K · w` with every Cartan factor on the left.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct DualExpr {
    terms: BTreeMap<Key, Scalar>,
}

/// A raw factor for building products in arbitrary order.
#[derive(Clone, Debug, PartialEq)]
pub enum DualFactor {
    Gen(DualGen),
    Cartan(CartanExp),
    Scalar(Scalar),
}

impl DualExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::term(CartanExp::identity(), Vec::new(), c)
    }

    pub fn term(k: CartanExp, w: DualWord, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(k, w, c);
        out
    }

    pub fn gen(letter: DualLetter, colour: usize) -> Self {
        Self::term(CartanExp::identity(), vec![DualGen::new(letter, colour)], Scalar::one())
    }

    pub fn cartan(k: CartanExp) -> Self {
        Self::term(k, Vec::new(), Scalar::one())
    }

    /// `q^{coeff · H_c}` or `q^{coeff · H'_c}`.
    pub fn exp(colour: usize, kind: CartanKind, coeff: Exponent) -> Self {
        Self::cartan(CartanExp::single(colour, kind, coeff))
    }

    /// Normal-ordered product of factors given in any order.
    pub fn from_factors(factors: &[DualFactor]) -> Self {
        factors.iter().fold(Self::one(), |acc, f| {
            let x = match f {
                DualFactor::Gen(g) => Self::gen(g.letter, g.colour),
                DualFactor::Cartan(k) => Self::cartan(k.clone()),
                DualFactor::Scalar(s) => Self::scalar(s.clone()),
            };
            acc.mul(&x)
        })
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

    pub fn terms(&self) -> impl Iterator<Item = (&CartanExp, &DualWord, &Scalar)> {
        self.terms.iter().map(|((k, w), c)| (k, w, c))
    }

    pub fn add_term(&mut self, k: CartanExp, w: DualWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (k, w);
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &DualExpr) -> DualExpr {
        let mut out = self.clone();
        for ((k, w), c) in &other.terms {
            out.add_term(k.clone(), w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DualExpr {
        self.scale(&Scalar::int(-1))
    }

    pub fn sub(&self, other: &DualExpr) -> DualExpr {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Scalar) -> DualExpr {
        let mut out = DualExpr::zero();
        for ((cart, w), c) in &self.terms {
            out.add_term(cart.clone(), w.clone(), c * k);
        }
        out
    }

    /// `(q^{K1} w1)(q^{K2} w2) = q^{shift} q^{K1 + K2} w1 w2`.
    pub fn mul(&self, other: &DualExpr) -> DualExpr {
        let mut out = DualExpr::zero();
        for ((k1, w1), c1) in &self.terms {
            for ((k2, w2), c2) in &other.terms {
                let weight = k2.h_weight();
                let n: i64 = w1.iter().map(|g| g.letter.shift()).sum();
                let coeff = (c1 * c2).mul_q_pow(&weight.scale(Rat::from_integer(n)));
                let mut w = w1.clone();
                w.extend(w2.iter().copied());
                out.add_term(k1.compose(k2), w, coeff);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> DualExpr {
        (0..n).fold(DualExpr::one(), |acc, _| acc.mul(self))
    }

    /// Canonical form. Construction already normal-orders, so this is the identity map;
    /// it exists so the ordering can be exercised explicitly.
    pub fn normal_form(&self) -> DualExpr {
        let mut out = DualExpr::zero();
        for ((k, w), c) in &self.terms {
            let mut factors = vec![DualFactor::Scalar(c.clone()), DualFactor::Cartan(k.clone())];
            factors.extend(w.iter().map(|g| DualFactor::Gen(*g)));
            out = out.add(&DualExpr::from_factors(&factors));
        }
        out
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> DualExpr {
        let mut out = DualExpr::zero();
        for ((k, w), c) in &self.terms {
            out.add_term(k.clone(), w.clone(), f(c));
        }
        out
    }

    /// Relabels colours of both generators and Cartan symbols.
    pub fn map_colours(&self, f: impl Fn(usize) -> usize + Copy) -> DualExpr {
        let mut out = DualExpr::zero();
        for ((k, w), c) in &self.terms {
            let w2 = w.iter().map(|g| DualGen::new(g.letter, f(g.colour))).collect();
            out.add_term(k.map_colours(f), w2, c.clone());
        }
        out
    }

    /// Applies `f` to every exponent in coefficients and Cartan exponents.
    pub fn map_exponents(
        &self,
        scalar: impl Fn(&Scalar) -> Scalar,
        exponent: impl Fn(&Exponent) -> Exponent,
    ) -> DualExpr {
        let mut out = DualExpr::zero();
        for ((k, w), c) in &self.terms {
            out.add_term(k.map_coeffs(&exponent), w.clone(), scalar(c));
        }
        out
    }

    pub fn counit(&self) -> Scalar {
        let mut out = Scalar::zero();
        for ((_, w), c) in &self.terms {
            if w.is_empty() {
                out += c;
            }
        }
        out
    }

    pub fn scalar_terms(&self) -> usize {
        self.terms.values().map(Scalar::len).sum()
    }

    pub fn format(&self, palette: &Palette) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((k, w), c)| {
                let mut f = vec![format!("({c})")];
                if !k.is_identity() {
                    f.push(format_cartan(k, palette));
                }
                f.extend(w.iter().map(|g| format!("{}_{}", g.letter.name(), palette.name(g.colour))));
                f.join("*")
            })
            .collect();
        parts.join(" + ")
    }
}

fn format_cartan(k: &CartanExp, palette: &Palette) -> String {
    let body: Vec<String> = k
        .coeffs()
        .map(|((c, kind), v)| {
            let h = match kind {
                CartanKind::H => "H",
                CartanKind::HPrime => "H'",
            };
            format!("({v})*{h}_{}", palette.name(*c))
        })
        .collect();
    format!("q^({})", body.join(" + "))
}

impl fmt::Debug for DualExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|((k, w), c)| format!("({c}) {k:?} {w:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Ring for DualExpr {
    fn zero() -> Self {
        DualExpr::zero()
    }
    fn one() -> Self {
        DualExpr::one()
    }
    fn is_zero(&self) -> bool {
        DualExpr::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        DualExpr::add(self, other)
    }
    fn neg(&self) -> Self {
        DualExpr::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        DualExpr::mul(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        DualExpr::sub(self, other)
    }
}

/// `ρ(q^K) = diag(q^{h + h'}, q^{-h + h'})` with `h, h'` the summed coefficients.
pub fn rho_cartan(k: &CartanExp) -> Matrix<Scalar> {
    let h = k.h_weight();
    let hp = k.h_prime_weight();
    let mut m = Matrix::zeros(2, 2);
    m.set(0, 0, Scalar::q_pow(&h + &hp));
    m.set(1, 1, Scalar::q_pow(&hp - &h));
    m
}

pub fn rho_gen(letter: DualLetter) -> Matrix<Scalar> {
    let (i, j) = letter.position();
    let mut m = Matrix::zeros(2, 2);
    m.set(i, j, Scalar::one());
    m
}

/// Spin-1/2 representation, identical for every colour.
pub fn rho_eval(e: &DualExpr) -> Matrix<Scalar> {
    let mut out = Matrix::zeros(2, 2);
    for ((k, w), c) in &e.terms {
        let mut m = rho_cartan(k);
        for g in w {
            m = m.matmul(&rho_gen(g.letter)).expect("2x2");
        }
        out = out.add(&m.scale_left(c)).expect("2x2");
    }
    out
}

/// Element of the tensor square of the dual algebra.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DualTensor {
    terms: BTreeMap<(Key, Key), Scalar>,
}

impl DualTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(x: &DualExpr, y: &DualExpr) -> Self {
        let mut out = Self::zero();
        for ((k1, w1), c1) in &x.terms {
            for ((k2, w2), c2) in &y.terms {
                out.add_term((k1.clone(), w1.clone()), (k2.clone(), w2.clone()), c1 * c2);
            }
        }
        out
    }

    fn add_term(&mut self, l: Key, r: Key, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &DualTensor) -> DualTensor {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &DualTensor) -> DualTensor {
        let mut out = DualTensor::zero();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                let left = key_expr(l1).mul(&key_expr(l2));
                let right = key_expr(r1).mul(&key_expr(r2));
                let prod = DualTensor::pure(&left, &right);
                for ((l, r), c) in prod.terms {
                    out.add_term(l, r, &(c1 * c2) * &c);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies `f` to the left leg and `g` to the right leg, then multiplies.
    pub fn contract(&self, f: impl Fn(&DualExpr) -> DualExpr, g: impl Fn(&DualExpr) -> DualExpr) -> DualExpr {
        let mut out = DualExpr::zero();
        for ((l, r), c) in &self.terms {
            out = out.add(&f(&key_expr(l)).mul(&g(&key_expr(r))).scale(c));
        }
        out
    }

    /// `Σ <x_(1)> <x_(2)>` with one functional on each leg.
    pub fn evaluate(&self, f: impl Fn(&DualExpr) -> Scalar, g: impl Fn(&DualExpr) -> Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for ((l, r), c) in &self.terms {
            out += &(&(c * &f(&key_expr(l))) * &g(&key_expr(r)));
        }
        out
    }

    pub fn map_colours(&self, f: impl Fn(usize) -> usize + Copy) -> DualTensor {
        let mut out = DualTensor::zero();
        for ((l, r), c) in &self.terms {
            let l2 = key_expr(l).map_colours(f);
            let r2 = key_expr(r).map_colours(f);
            out = out.add(&DualTensor::pure(&l2, &r2).scale(c));
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> DualTensor {
        let mut out = DualTensor::zero();
        for ((l, r), c) in &self.terms {
            out.add_term(l.clone(), r.clone(), c * k);
        }
        out
    }
}

fn key_expr(k: &Key) -> DualExpr {
    DualExpr::term(k.0.clone(), k.1.clone(), Scalar::one())
}

/// `Δ(A) = A⊗1 + 1⊗A`, `Δ(B) = B⊗q^H + 1⊗B`, `Δ(C) = C⊗q^H + 1⊗C`, `Δ(D) = D⊗1 + 1⊗D`,
/// `Δ(q^K) = q^K⊗q^K`, extended multiplicatively.
pub fn dual_coproduct(e: &DualExpr) -> DualTensor {
    let mut out = DualTensor::zero();
    for ((k, w), c) in &e.terms {
        let ck = DualExpr::cartan(k.clone());
        let mut acc = DualTensor::pure(&ck, &ck);
        for g in w {
            acc = acc.mul(&gen_coproduct(*g));
        }
        out = out.add(&acc.scale(c));
    }
    out
}

fn gen_coproduct(g: DualGen) -> DualTensor {
    let x = DualExpr::gen(g.letter, g.colour);
    let one = DualExpr::one();
    let right = match g.letter {
        DualLetter::A | DualLetter::D => one.clone(),
        DualLetter::B | DualLetter::C => DualExpr::exp(g.colour, CartanKind::H, Exponent::int(1)),
    };
    DualTensor::pure(&x, &right).add(&DualTensor::pure(&one, &x))
}

/// `S(A) = -A`, `S(B) = -B q^{-H}`, `S(C) = -C q^{-H}`, `S(D) = -D`, `S(q^K) = q^{-K}`,
/// extended as an anti-homomorphism.
pub fn dual_antipode(e: &DualExpr) -> DualExpr {
    let mut out = DualExpr::zero();
    for ((k, w), c) in &e.terms {
        let mut acc = DualExpr::one();
        for g in w.iter().rev() {
            acc = acc.mul(&gen_antipode(*g));
        }
        acc = acc.mul(&DualExpr::cartan(k.inverse()));
        out = out.add(&acc.scale(c));
    }
    out
}

fn gen_antipode(g: DualGen) -> DualExpr {
    let x = DualExpr::gen(g.letter, g.colour).neg();
    match g.letter {
        DualLetter::A | DualLetter::D => x,
        DualLetter::B | DualLetter::C => x.mul(&DualExpr::exp(g.colour, CartanKind::H, Exponent::int(-1))),
    }
}
