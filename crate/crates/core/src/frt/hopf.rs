//! Coproduct, counit, quantum determinant, antipode and the localisation at the
//! determinants.

use std::collections::BTreeMap;

use num_traits::One;
use thiserror::Error;

use super::algebra::{GroupAlgebra, GroupLetter, Letter, NCPoly, TensorPoly, Word};
use super::rewrite::{RewriteError, RewriteSystem, Rule};
use crate::scalar::{Exponent, Rat, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HopfError {
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("no single power of q relates the two orderings; residual `{0}`")]
    NoMonomialExchange(String),
    #[error("cannot solve for the exponent: {0}")]
    Unsolvable(String),
    #[error("determinants of colours {0} and {1} do not commute")]
    NonCommutingDeterminants(usize, usize),
}

fn letter_coproduct(alg: &GroupAlgebra, id: u8) -> TensorPoly {
    match alg.letter(id) {
        GroupLetter::Gen { letter, colour } => {
            let (i, j) = letter.position();
            let mut t = TensorPoly::zero();
            for k in 0..2 {
                t.add_term(
                    vec![Word::from_slice(&[alg.t(i, k, colour)]), Word::from_slice(&[alg.t(k, j, colour)])],
                    Scalar::one(),
                );
            }
            t
        }
        GroupLetter::DetInv { .. } => {
            let w = Word::from_slice(&[id]);
            TensorPoly::term(vec![w.clone(), w], Scalar::one())
        }
    }
}

/// `Δ(t_ij) = Σ_k t_ik ⊗ t_kj`, extended multiplicatively; `Δ(D^{-1}) = D^{-1} ⊗ D^{-1}`.
pub fn coproduct(alg: &GroupAlgebra, p: &NCPoly) -> TensorPoly {
    let mut out = TensorPoly::zero();
    for (w, c) in p.terms() {
        let mut acc = TensorPoly::unit(2);
        for &id in w.iter() {
            acc = acc.mul(&letter_coproduct(alg, id));
        }
        out.add_scaled(&acc, c);
    }
    out
}

/// Applies the coproduct to one leg of a tensor, producing one more leg.
pub fn coproduct_on_leg(alg: &GroupAlgebra, t: &TensorPoly, leg: usize) -> TensorPoly {
    let mut out = TensorPoly::zero();
    for (legs, c) in t.terms() {
        let split = coproduct(alg, &NCPoly::word(legs[leg].clone()));
        for (pair, d) in split.terms() {
            let mut v = legs[..leg].to_vec();
            v.extend(pair.iter().cloned());
            v.extend(legs[leg + 1..].iter().cloned());
            out.add_term(v, c * d);
        }
    }
    out
}

fn letter_counit(alg: &GroupAlgebra, id: u8) -> bool {
    match alg.letter(id) {
        GroupLetter::Gen { letter, .. } => matches!(letter, Letter::A | Letter::D),
        GroupLetter::DetInv { .. } => true,
    }
}

/// `ε(a) = ε(d) = 1`, `ε(b) = ε(c) = 0`, `ε(D^{-1}) = 1`.
pub fn counit(alg: &GroupAlgebra, p: &NCPoly) -> Scalar {
    let mut out = Scalar::zero();
    for (w, c) in p.terms() {
        if w.iter().all(|&id| letter_counit(alg, id)) {
            out += c;
        }
    }
    out
}

/// Applies the counit on one leg of a two-leg tensor.
pub fn counit_on_leg(alg: &GroupAlgebra, t: &TensorPoly, leg: usize) -> NCPoly {
    let mut out = NCPoly::zero();
    for (legs, c) in t.terms() {
        let e = counit(alg, &NCPoly::word(legs[leg].clone()));
        if !e.is_zero() {
            out.add_term(legs[1 - leg].clone(), c * &e);
        }
    }
    out
}

/// `D = a d - q^e c b` in one colour.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumDet {
    pub colour: usize,
    pub exponent: Exponent,
    pub poly: NCPoly,
}

impl QuantumDet {
    pub fn with_exponent(alg: &GroupAlgebra, colour: usize, exponent: Exponent) -> Self {
        let ad = alg.gen(Letter::A, colour).mul(&alg.gen(Letter::D, colour));
        let cb = alg.gen(Letter::C, colour).mul(&alg.gen(Letter::B, colour));
        let poly = ad.sub(&cb.scale(&Scalar::q_pow(exponent.clone())));
        QuantumDet { colour, exponent, poly }
    }

    /// The textbook coefficient `q^{-(1+2c)}`.
    pub fn printed(alg: &GroupAlgebra, colour: usize) -> Self {
        let v = alg.palette().value(colour);
        let e = -(&Exponent::int(1) + &v.scale(Rat::from_integer(2)));
        Self::with_exponent(alg, colour, e)
    }
}

/// `Δ(D) - D ⊗ D`, normalised leg-wise.
pub fn group_like_residual(rs: &RewriteSystem, det: &QuantumDet) -> Result<TensorPoly, HopfError> {
    let alg = rs.algebra();
    let lhs = coproduct(alg, &det.poly);
    let rhs = TensorPoly::from_legs(&[&det.poly, &det.poly]);
    Ok(rs.tensor_normal_form(&lhs.sub(&rhs))?)
}

/// Solves `Δ(D) = D ⊗ D` for the exponent `e` in `D = a d - q^e c b`.
///
/// The residual is `c0 + c1 u + c2 u^2` in `u = q^e`; any tensor word without a `u^2`
/// contribution fixes `u = -c0 / c1`, which is then checked on the full residual.
pub fn solve_det_exponent(rs: &RewriteSystem, colour: usize) -> Result<Exponent, HopfError> {
    let alg = rs.algebra();
    let ad = alg.gen(Letter::A, colour).mul(&alg.gen(Letter::D, colour));
    let cb = alg.gen(Letter::C, colour).mul(&alg.gen(Letter::B, colour));
    let nf_ad = rs.normal_form(&ad)?;
    let nf_cb = rs.normal_form(&cb)?;
    let c0 = rs.tensor_normal_form(&coproduct(alg, &ad))?.sub(&TensorPoly::from_legs(&[&nf_ad, &nf_ad]));
    let mut c1 = TensorPoly::from_legs(&[&nf_ad, &nf_cb]);
    c1.add_scaled(&TensorPoly::from_legs(&[&nf_cb, &nf_ad]), &Scalar::one());
    c1 = c1.sub(&rs.tensor_normal_form(&coproduct(alg, &cb))?);
    let c2 = TensorPoly::from_legs(&[&nf_cb, &nf_cb]);
    let c0m: BTreeMap<_, _> = c0.terms().collect();
    let c2m: BTreeMap<_, _> = c2.terms().collect();
    for (legs, k1) in c1.terms() {
        if c2m.contains_key(legs) {
            continue;
        }
        let k0 = c0m.get(legs).map(|s| (*s).clone()).unwrap_or_default();
        let inv = k1.invert().map_err(|_| HopfError::Unsolvable(format!("coefficient {k1} is not a unit")))?;
        let u = -(&k0 * &inv);
        let e = match u.as_monomial() {
            Some((k, e)) if k.is_one() => e.clone(),
            _ => return Err(HopfError::Unsolvable(format!("q^e = {u} is not a power of q"))),
        };
        let det = QuantumDet::with_exponent(alg, colour, e.clone());
        let res = group_like_residual(rs, &det)?;
        if res.is_zero() {
            return Ok(e);
        }
        return Err(HopfError::Unsolvable(alg.format_tensor(&res)));
    }
    Err(HopfError::Unsolvable("no linear tensor word".into()))
}

/// The exponent `e` with `xy = q^e yx` modulo the relations.
pub fn exchange_exponent(rs: &RewriteSystem, x: &NCPoly, y: &NCPoly) -> Result<Exponent, HopfError> {
    let xy = rs.normal_form(&x.mul(y))?;
    let yx = rs.normal_form(&y.mul(x))?;
    let fail = |u: &NCPoly| HopfError::NoMonomialExchange(rs.algebra().format_poly(u));
    let Some((w, cy)) = yx.leading() else {
        return if xy.is_zero() { Ok(Exponent::zero()) } else { Err(fail(&xy)) };
    };
    let ratio = &xy.coeff(w) * &cy.invert().map_err(|_| fail(&yx))?;
    let e = match ratio.as_monomial() {
        Some((k, e)) if k.is_one() => e.clone(),
        _ => return Err(fail(&xy.sub(&yx))),
    };
    let residual = xy.sub(&yx.scale(&Scalar::q_pow(e.clone())));
    if residual.is_zero() {
        Ok(e)
    } else {
        Err(fail(&residual))
    }
}

/// `e` with `D g = q^e g D`.
pub fn det_exchange(rs: &RewriteSystem, det: &QuantumDet, g: &NCPoly) -> Result<Exponent, HopfError> {
    exchange_exponent(rs, &det.poly, g)
}

/// `S(T) = D^{-1} [[d, -q^β b], [-q^γ c, a]]` in one colour.
#[derive(Clone, Debug, PartialEq)]
pub struct Antipode {
    pub colour: usize,
    pub b_exponent: Exponent,
    pub c_exponent: Exponent,
    /// Flips the sign of the `b` entry; only used as a negative control.
    pub corrupt: bool,
}

impl Antipode {
    /// The textbook exponents `β = 1 + 2c`, `γ = -1 - 2c`.
    pub fn printed(alg: &GroupAlgebra, colour: usize) -> Self {
        let two_v = alg.palette().value(colour).scale(Rat::from_integer(2));
        Antipode {
            colour,
            b_exponent: &Exponent::int(1) + &two_v,
            c_exponent: -(&Exponent::int(1) + &two_v),
            corrupt: false,
        }
    }

    /// Exponents forced by the off-diagonal entries of `S(T) T = 1`: `d b = q^β b d` and
    /// `a c = q^γ c a`.
    pub fn solve(rs: &RewriteSystem, colour: usize) -> Result<Self, HopfError> {
        let alg = rs.algebra();
        let g = |l| alg.gen(l, colour);
        Ok(Antipode {
            colour,
            b_exponent: exchange_exponent(rs, &g(Letter::D), &g(Letter::B))?,
            c_exponent: exchange_exponent(rs, &g(Letter::A), &g(Letter::C))?,
            corrupt: false,
        })
    }

    pub fn corrupted(mut self) -> Self {
        self.corrupt = true;
        self
    }

    /// `S(t_ij)`.
    pub fn entry(&self, alg: &GroupAlgebra, i: usize, j: usize) -> NCPoly {
        let c = self.colour;
        let body = match (i, j) {
            (0, 0) => alg.gen(Letter::D, c),
            (0, 1) => {
                let sign = if self.corrupt { 1 } else { -1 };
                alg.gen(Letter::B, c).scale(&(&Scalar::int(sign) * &Scalar::q_pow(self.b_exponent.clone())))
            }
            (1, 0) => alg.gen(Letter::C, c).scale(&-Scalar::q_pow(self.c_exponent.clone())),
            _ => alg.gen(Letter::A, c),
        };
        alg.det_inv(c).mul(&body)
    }
}

/// The group algebra with the determinants inverted. `D_c^{-1}` letters are kept to the
/// left by exchange rules; an element vanishes iff its numerator, obtained by multiplying
/// with enough determinants on the left, vanishes in the base algebra.
#[derive(Clone, Debug)]
pub struct Localized {
    base: RewriteSystem,
    extended: RewriteSystem,
    dets: Vec<QuantumDet>,
}

impl Localized {
    pub fn new(base: &RewriteSystem, dets: Vec<QuantumDet>) -> Result<Self, HopfError> {
        let alg = base.algebra().clone();
        let mut extra = Vec::new();
        for det in &dets {
            let dinv = alg.det_inv_id(det.colour);
            for g in alg.generator_ids() {
                let e = det_exchange(base, det, &NCPoly::word(Word::from_slice(&[g])))?;
                extra.push(Rule {
                    lead: Word::from_slice(&[g, dinv]),
                    rhs: NCPoly::term(Word::from_slice(&[dinv, g]), Scalar::q_pow(e)),
                });
            }
        }
        for (x, dx) in dets.iter().enumerate() {
            for dy in dets.iter().skip(x + 1) {
                let e = exchange_exponent(base, &dx.poly, &dy.poly)?;
                if !e.is_zero() {
                    return Err(HopfError::NonCommutingDeterminants(dx.colour, dy.colour));
                }
                let (lo, hi) = (alg.det_inv_id(dx.colour), alg.det_inv_id(dy.colour));
                extra.push(Rule { lead: Word::from_slice(&[hi, lo]), rhs: NCPoly::word(Word::from_slice(&[lo, hi])) });
            }
        }
        Ok(Localized { base: base.clone(), extended: base.extended(extra), dets })
    }

    pub fn base(&self) -> &RewriteSystem {
        &self.base
    }

    pub fn dets(&self) -> &[QuantumDet] {
        &self.dets
    }

    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly, HopfError> {
        Ok(self.extended.normal_form(p)?)
    }

    /// `D^β p` with `β` the largest power of each inverse determinant present, reduced in
    /// the base algebra.
    pub fn numerator(&self, p: &NCPoly) -> Result<NCPoly, HopfError> {
        let alg = self.base.algebra();
        let nf = self.normal_form(p)?;
        let ncol = alg.palette().len();
        let split = |w: &Word| {
            let mut alpha = vec![0usize; ncol];
            let mut k = 0;
            for &id in w.iter() {
                match alg.letter(id) {
                    GroupLetter::DetInv { colour } => {
                        alpha[colour] += 1;
                        k += 1;
                    }
                    GroupLetter::Gen { .. } => break,
                }
            }
            (alpha, Word::from_slice(&w.as_slice()[k..]))
        };
        let mut beta = vec![0usize; ncol];
        for (w, _) in nf.terms() {
            let (alpha, _) = split(w);
            for (b, a) in beta.iter_mut().zip(alpha) {
                *b = (*b).max(a);
            }
        }
        let det_of = |c: usize| self.dets.iter().find(|d| d.colour == c).map(|d| &d.poly);
        let mut out = NCPoly::zero();
        for (w, c) in nf.terms() {
            let (alpha, rest) = split(w);
            if rest.iter().any(|&id| matches!(alg.letter(id), GroupLetter::DetInv { .. })) {
                return Err(HopfError::Unsolvable(format!(
                    "inverse determinant not moved left in `{}`",
                    alg.format_word(w)
                )));
            }
            let mut term = NCPoly::one();
            for (colour, (b, a)) in beta.iter().zip(&alpha).enumerate() {
                for _ in 0..(b - a) {
                    let d = det_of(colour)
                        .ok_or_else(|| HopfError::Unsolvable(format!("no determinant for colour {colour}")))?;
                    term = term.mul(d);
                }
            }
            out.add_scaled(&term.mul(&NCPoly::word(rest)), c);
        }
        Ok(self.base.normal_form(&out)?)
    }

    pub fn is_zero(&self, p: &NCPoly) -> Result<bool, HopfError> {
        Ok(self.numerator(p)?.is_zero())
    }
}

/// `Σ_k S(t_ik) t_kj - δ_ij` (left) or `Σ_k t_ik S(t_kj) - δ_ij` (right), per entry.
pub fn antipode_residuals(alg: &GroupAlgebra, ap: &Antipode, left: bool) -> Vec<((usize, usize), NCPoly)> {
    let c = ap.colour;
    let mut out = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let mut p = NCPoly::zero();
            for k in 0..2 {
                let t = |x, y| NCPoly::word(Word::from_slice(&[alg.t(x, y, c)]));
                let term = if left { ap.entry(alg, i, k).mul(&t(k, j)) } else { t(i, k).mul(&ap.entry(alg, k, j)) };
                p = p.add(&term);
            }
            if i == j {
                p = p.sub(&NCPoly::one());
            }
            out.push(((i, j), p));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frt::algebra::{MonomialOrder, Palette};
    use crate::frt::relations::palette_relations;
    use crate::frt::rewrite::DEFAULT_STEP_BUDGET;
    use std::sync::Arc;

    fn system(names: &[&str]) -> RewriteSystem {
        let alg = Arc::new(GroupAlgebra::new(Palette::symbolic(names), MonomialOrder::LetterMajor));
        let rels = palette_relations(&alg);
        RewriteSystem::from_relations(alg, &rels, DEFAULT_STEP_BUDGET).unwrap()
    }

    #[test]
    fn coproduct_of_a() {
        let rs = system(&["lambda"]);
        let alg = rs.algebra();
        let d = coproduct(alg, &alg.gen(Letter::A, 0));
        let want = TensorPoly::from_legs(&[&alg.gen(Letter::A, 0), &alg.gen(Letter::A, 0)]);
        let mut want = want;
        want.add_scaled(&TensorPoly::from_legs(&[&alg.gen(Letter::B, 0), &alg.gen(Letter::C, 0)]), &Scalar::one());
        assert_eq!(d, want);
    }

    #[test]
    fn determinant_exponent_is_solved() {
        let rs = system(&["lambda"]);
        let e = solve_det_exponent(&rs, 0).unwrap();
        assert_eq!(e, "1 - 2*lambda".parse().unwrap());
        let printed = QuantumDet::printed(rs.algebra(), 0);
        assert!(!group_like_residual(&rs, &printed).unwrap().is_zero());
    }

    #[test]
    fn antipode_axioms_in_one_colour() {
        let rs = system(&["lambda"]);
        let alg = rs.algebra().clone();
        let e = solve_det_exponent(&rs, 0).unwrap();
        let det = QuantumDet::with_exponent(&alg, 0, e);
        let loc = Localized::new(&rs, vec![det]).unwrap();
        let ap = Antipode::solve(&rs, 0).unwrap();
        for left in [true, false] {
            for (_, r) in antipode_residuals(&alg, &ap, left) {
                assert!(loc.is_zero(&r).unwrap());
            }
        }
        let bad = ap.corrupted();
        assert!(antipode_residuals(&alg, &bad, true).iter().any(|(_, r)| !loc.is_zero(r).unwrap()));
    }
}
