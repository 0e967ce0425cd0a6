//! First-order differential calculus: one-form commutation, vector fields, convolutions
//! and the exterior derivative generated from `f = S(L+) L-`.

pub mod tables;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dual::functionals::{antipode_l_plus, build_l};
use crate::dual::{rho_eval, ColourPair, DualExpr, Units};
use crate::frt::hopf::{coproduct, counit};
use crate::frt::{GroupAlgebra, GroupLetter, Letter, NCPoly, Palette, RewriteError, RewriteSystem, Word};
use crate::linalg::Matrix;
use crate::rmatrix::Sign;
use crate::scalar::{colourless_map, monochromatic_map, Exponent, Scalar, Symbol};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalculusError {
    #[error("`{0}` is not a generator word")]
    NotAGenerator(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Basis one-forms `ω¹ = ω₁₁`, `ω⁺ = ω₁₂`, `ω⁻ = ω₂₁`, `ω² = ω₂₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OneForm {
    W1,
    Plus,
    Minus,
    W2,
}

impl OneForm {
    pub const ALL: [OneForm; 4] = [OneForm::W1, OneForm::Plus, OneForm::Minus, OneForm::W2];

    pub fn position(self) -> (usize, usize) {
        let k = self.index();
        (k / 2, k % 2)
    }

    /// Flattened index `2i + j`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(k: usize) -> OneForm {
        OneForm::ALL[k]
    }

    pub fn is_diagonal(self) -> bool {
        matches!(self, OneForm::W1 | OneForm::W2)
    }

    pub fn label(self) -> &'static str {
        ["ω¹", "ω⁺", "ω⁻", "ω²"][self.index()]
    }

    pub fn ascii(self) -> &'static str {
        ["w1", "w+", "w-", "w2"][self.index()]
    }

    /// Label of the matching vector field.
    pub fn chi_label(self) -> &'static str {
        ["χ₁", "χ₊", "χ₋", "χ₂"][self.index()]
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `Σ_i p_i ω^i` with every algebra coefficient on the left.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GammaElement {
    pub coeffs: [NCPoly; 4],
}

impl GammaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(form: OneForm, p: NCPoly) -> Self {
        let mut out = Self::zero();
        out.coeffs[form.index()] = p;
        out
    }

    pub fn coeff(&self, form: OneForm) -> &NCPoly {
        &self.coeffs[form.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(NCPoly::is_zero)
    }

    pub fn add(&self, o: &GammaElement) -> GammaElement {
        GammaElement { coeffs: std::array::from_fn(|k| self.coeffs[k].add(&o.coeffs[k])) }
    }

    pub fn sub(&self, o: &GammaElement) -> GammaElement {
        GammaElement { coeffs: std::array::from_fn(|k| self.coeffs[k].sub(&o.coeffs[k])) }
    }

    /// `p · Σ_i x_i ω^i`.
    pub fn left_mul(&self, p: &NCPoly) -> GammaElement {
        GammaElement { coeffs: std::array::from_fn(|k| p.mul(&self.coeffs[k])) }
    }

    pub fn map(&self, f: impl Fn(&NCPoly) -> NCPoly) -> GammaElement {
        GammaElement { coeffs: std::array::from_fn(|k| f(&self.coeffs[k])) }
    }

    pub fn try_map<E>(&self, f: impl Fn(&NCPoly) -> Result<NCPoly, E>) -> Result<GammaElement, E> {
        let [a, b, c, d] = &self.coeffs;
        Ok(GammaElement { coeffs: [f(a)?, f(b)?, f(c)?, f(d)?] })
    }

    pub fn normal_form(&self, rs: &RewriteSystem) -> Result<GammaElement, RewriteError> {
        self.try_map(|p| rs.normal_form(p))
    }

    pub fn scalar_terms(&self) -> usize {
        self.coeffs.iter().map(NCPoly::scalar_terms).sum()
    }

    pub fn format(&self, alg: &GroupAlgebra) -> String {
        let parts: Vec<String> = OneForm::ALL
            .iter()
            .filter(|f| !self.coeff(**f).is_zero())
            .map(|f| format!("({}) {}", alg.format_poly(self.coeff(*f)), f.label()))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Colour limits of the calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Limit {
    /// Every colour set to zero.
    Colourless,
    /// Every colour set to one shared symbol `c`.
    Monochromatic,
}

impl Limit {
    pub fn substitution(self, colours: &[Symbol]) -> BTreeMap<Symbol, Exponent> {
        match self {
            Limit::Colourless => colourless_map(colours),
            Limit::Monochromatic => monochromatic_map(colours, &Symbol::new("c")),
        }
    }

    pub fn apply(self, palette: &Palette) -> Palette {
        palette.substitute(&self.substitution(&palette.symbols()))
    }
}

/// `F[(i,j),(k,l)] = S(l+_{ki}) l-_{jl}` for generators of colour `colour`, row index `2i + j`.
pub fn f_matrix(colour: usize, cp: &ColourPair, units: &Units) -> Matrix<DualExpr> {
    let sl = antipode_l_plus(colour, cp, units);
    let lm = build_l(Sign::Minus, colour, cp, units);
    Matrix::from_fn(4, 4, |r, c| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (c / 2, c % 2);
        sl.get(k, i).mul(lm.get(j, l))
    })
}

/// The calculus over a palette, with `f` evaluated on generators through ρ and extended to
/// words by `f(xy) = f(x) f(y)` as 4×4 matrices.
#[derive(Clone, Debug)]
pub struct Calculus {
    alg: GroupAlgebra,
    cp: ColourPair,
    /// `f_values[colour][letter]`: the 4×4 matrix `f(t_xy)`.
    f_values: Vec<[Matrix<Scalar>; 4]>,
    /// `omega[id][form]`: `ω^form · g` for generator id.
    omega: BTreeMap<u8, [GammaElement; 4]>,
}

impl Calculus {
    pub fn new(alg: GroupAlgebra, units: &Units) -> Self {
        let cp = ColourPair::from_palette(alg.palette());
        let f_values: Vec<[Matrix<Scalar>; 4]> = (0..alg.palette().len())
            .map(|c| {
                let f = f_matrix(c, &cp, units);
                let rho: Vec<Matrix<Scalar>> = f.entries().map(|(_, _, e)| rho_eval(e)).collect();
                Letter::ALL.map(|g| {
                    let (x, y) = g.position();
                    Matrix::from_fn(4, 4, |r, s| rho[4 * r + s].get(x, y).clone())
                })
            })
            .collect();
        let mut out = Calculus { alg, cp, f_values, omega: BTreeMap::new() };
        for id in out.alg.generator_ids() {
            let row = OneForm::ALL.map(|form| out.generate_omega(id, form));
            out.omega.insert(id, row);
        }
        out
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        &self.alg
    }

    pub fn colours(&self) -> &ColourPair {
        &self.cp
    }

    fn generator(&self, id: u8) -> Result<(Letter, usize), CalculusError> {
        match self.alg.letter(id) {
            GroupLetter::Gen { letter, colour } => Ok((letter, colour)),
            GroupLetter::DetInv { .. } => Err(CalculusError::NotAGenerator(self.alg.letter_name(id))),
        }
    }

    /// `f(t_xy)` as a 4×4 matrix for one generator.
    pub fn f_generator(&self, letter: Letter, colour: usize) -> &Matrix<Scalar> {
        &self.f_values[colour][letter as usize]
    }

    /// `f(w)` for a generator word, `f(1) = I`.
    pub fn f_word(&self, w: &Word) -> Result<Matrix<Scalar>, CalculusError> {
        let mut acc = Matrix::identity(4);
        for &id in w.iter() {
            let (letter, colour) = self.generator(id)?;
            acc = acc.matmul(self.f_generator(letter, colour)).expect("4x4");
        }
        Ok(acc)
    }

    /// `f` applied linearly to a polynomial.
    pub fn f_poly(&self, p: &NCPoly) -> Result<Matrix<Scalar>, CalculusError> {
        let mut acc = Matrix::zeros(4, 4);
        for (w, c) in p.terms() {
            acc = acc.add(&self.f_word(w)?.scale_left(c)).expect("4x4");
        }
        Ok(acc)
    }

    /// `ω_ij t_xy = Σ_kl Σ_m t_xm f_{ij,kl}(t_my) ω_kl`.
    fn generate_omega(&self, id: u8, form: OneForm) -> GammaElement {
        let (letter, colour) = self.generator(id).expect("generator id");
        let (x, y) = letter.position();
        let mut out = GammaElement::zero();
        for target in OneForm::ALL {
            let mut coeff = NCPoly::zero();
            for m in 0..2 {
                let f = self.f_generator(Letter::at(m, y), colour);
                let v = f.get(form.index(), target.index());
                coeff.add_scaled(&self.alg.gen(Letter::at(x, m), colour), v);
            }
            out.coeffs[target.index()] = coeff;
        }
        out
    }

    /// `ω^form · g` for a generator.
    pub fn omega_commute(&self, letter: Letter, colour: usize, form: OneForm) -> &GammaElement {
        &self.omega[&self.alg.gen_id(letter, colour)][form.index()]
    }

    /// Replaces one entry of the commutation table; used for negative controls.
    pub fn with_omega(mut self, letter: Letter, colour: usize, form: OneForm, value: GammaElement) -> Self {
        let id = self.alg.gen_id(letter, colour);
        self.omega.get_mut(&id).expect("generator")[form.index()] = value;
        self
    }

    /// Moves `ω^form` from the left of `p` to the right: `ω^form p = Σ_l p_l ω^l`.
    pub fn push(&self, form: OneForm, p: &NCPoly) -> Result<GammaElement, CalculusError> {
        let mut out = GammaElement::zero();
        for (w, c) in p.terms() {
            let mut state = GammaElement::single(form, NCPoly::scalar(c.clone()));
            for &id in w.iter() {
                self.generator(id)?;
                let row = &self.omega[&id];
                let mut next = GammaElement::zero();
                for k in OneForm::ALL {
                    let s = state.coeff(k);
                    if s.is_zero() {
                        continue;
                    }
                    next = next.add(&row[k.index()].left_mul(s));
                }
                state = next;
            }
            out = out.add(&state);
        }
        Ok(out)
    }

    /// `(Σ_i q_i ω^i) · p` in left-module form.
    pub fn right_mul(&self, g: &GammaElement, p: &NCPoly) -> Result<GammaElement, CalculusError> {
        let mut out = GammaElement::zero();
        for k in OneForm::ALL {
            if !g.coeff(k).is_zero() {
                out = out.add(&self.push(k, p)?.left_mul(g.coeff(k)));
            }
        }
        Ok(out)
    }

    /// `χ_ij(p) = Σ_k f_{kk,ij}(p) - δ_ij ε(p)`.
    pub fn chi(&self, form: OneForm, p: &NCPoly) -> Result<Scalar, CalculusError> {
        let f = self.f_poly(p)?;
        let mut out = Scalar::zero();
        for k in [OneForm::W1, OneForm::W2] {
            out += f.get(k.index(), form.index());
        }
        if form.is_diagonal() {
            out -= &counit(&self.alg, p);
        }
        Ok(out)
    }

    /// Left convolution `χ ∗ p = Σ p_(1) χ(p_(2))`.
    pub fn convolve(&self, form: OneForm, p: &NCPoly) -> Result<NCPoly, CalculusError> {
        let mut out = NCPoly::zero();
        for (legs, c) in coproduct(&self.alg, p).terms() {
            let v = self.chi(form, &NCPoly::word(legs[1].clone()))?;
            out.add_term(legs[0].clone(), c * &v);
        }
        Ok(out)
    }

    /// `d p = Σ_i (χ_i ∗ p) ω^i`.
    pub fn d(&self, p: &NCPoly) -> Result<GammaElement, CalculusError> {
        let mut out = GammaElement::zero();
        for form in OneForm::ALL {
            out.coeffs[form.index()] = self.convolve(form, p)?;
        }
        Ok(out)
    }

    /// `d(nf(xy)) - (dx) y - x (dy)` with coefficients in normal form.
    pub fn leibniz_residual(&self, rs: &RewriteSystem, x: &NCPoly, y: &NCPoly) -> Result<GammaElement, CalculusError> {
        let xy = rs.normal_form(&x.mul(y))?;
        let lhs = self.d(&xy)?;
        let rhs = self.right_mul(&self.d(x)?, y)?.add(&self.d(y)?.left_mul(x));
        Ok(lhs.sub(&rhs).normal_form(rs)?)
    }

    /// `f(r)` for a relation `r`; zero exactly when the commutation rules respect `r`.
    pub fn f_relation_residual(&self, r: &NCPoly) -> Result<Matrix<Scalar>, CalculusError> {
        self.f_poly(r)
    }
}
