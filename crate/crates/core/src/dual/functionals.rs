//! Coloured `L±` functionals, their ρ-assembly against `R±`, and the RLL residuals.

use serde::Serialize;

use super::expr::{rho_eval, CartanExp, CartanKind, DualExpr, DualLetter};
use crate::frt::Palette;
use crate::linalg::{LinalgError, Matrix};
use crate::rmatrix::{build_r, build_r_pm, Sign};
use crate::scalar::{Exponent, Scalar};

/// The two colour parameters entering every `L` matrix, with generator colour indices.
#[derive(Clone, Debug, PartialEq)]
pub struct ColourPair {
    pub lambda: Exponent,
    pub mu: Exponent,
    pub lambda_index: usize,
    pub mu_index: usize,
}

impl ColourPair {
    /// First two palette colours; a one-colour palette uses its colour twice.
    pub fn from_palette(p: &Palette) -> Self {
        let mu_index = if p.len() > 1 { 1 } else { 0 };
        ColourPair { lambda: p.value(0).clone(), mu: p.value(mu_index).clone(), lambda_index: 0, mu_index }
    }
}

/// The free normalizations `c±` of the functionals.
#[derive(Clone, Debug, PartialEq)]
pub struct Units {
    pub c_plus: Scalar,
    pub c_minus: Scalar,
}

impl Default for Units {
    fn default() -> Self {
        Units { c_plus: Scalar::c_plus(), c_minus: Scalar::c_minus() }
    }
}

impl Units {
    fn plus_prefactor(&self) -> Scalar {
        self.c_plus.mul_q_pow(&Exponent::frac(1, 2))
    }

    fn minus_prefactor(&self) -> Scalar {
        self.c_minus.mul_q_pow(&Exponent::frac(-1, 2))
    }
}

fn cartan(colour: usize, h: Exponent, hp: Exponent) -> DualExpr {
    DualExpr::cartan(CartanExp::single(colour, CartanKind::H, h).compose(&CartanExp::single(
        colour,
        CartanKind::HPrime,
        hp,
    )))
}

fn half() -> Exponent {
    Exponent::frac(1, 2)
}

/// `L+_c` (upper triangular) or `L-_c` (lower triangular) with generators of colour `colour`.
pub fn build_l(sign: Sign, colour: usize, cp: &ColourPair, units: &Units) -> Matrix<DualExpr> {
    let (l, m) = (&cp.lambda, &cp.mu);
    let mut out = Matrix::zeros(2, 2);
    match sign {
        Sign::Plus => {
            let pre = units.plus_prefactor();
            out.set(0, 0, cartan(colour, &half() + m, -l).scale(&pre));
            let off = Scalar::q_minus_qinv().mul_q_pow(&-half());
            out.set(0, 1, DualExpr::gen(DualLetter::C, colour).scale(&(&pre * &off)));
            out.set(1, 1, cartan(colour, m - &half(), l.clone()).scale(&pre));
        }
        Sign::Minus => {
            let pre = units.minus_prefactor();
            out.set(0, 0, cartan(colour, l - &half(), -m).scale(&pre));
            let off = (-&Scalar::q_minus_qinv()).mul_q_pow(&half());
            out.set(1, 0, DualExpr::gen(DualLetter::B, colour).scale(&(&pre * &off)));
            out.set(1, 1, cartan(colour, &half() + l, m.clone()).scale(&pre));
        }
    }
    out
}

/// The closed form of `S(L+_c)` as printed alongside the calculus.
pub fn antipode_l_plus(colour: usize, cp: &ColourPair, units: &Units) -> Matrix<DualExpr> {
    let (l, m) = (&cp.lambda, &cp.mu);
    let inv = units.plus_prefactor().invert().expect("c+ is a unit");
    let top = cartan(colour, &(-&half()) - m, l.clone());
    let bottom = cartan(colour, &half() - m, -l);
    let off_coeff = (-&Scalar::q_minus_qinv()).mul_q_pow(&-half());
    let off = top.mul(&DualExpr::gen(DualLetter::C, colour)).mul(&bottom).scale(&off_coeff);
    let mut out = Matrix::zeros(2, 2);
    out.set(0, 0, top.scale(&inv));
    out.set(0, 1, off.scale(&inv));
    out.set(1, 1, bottom.scale(&inv));
    out
}

/// 4×4 matrix with `(a,c),(b,d)` entry `ρ(L_ab)_cd`, row index `2a + c`.
pub fn assemble_rho(l: &Matrix<DualExpr>) -> Matrix<Scalar> {
    let mut out = Matrix::zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            let r = rho_eval(l.get(a, b));
            for c in 0..2 {
                for d in 0..2 {
                    out.set(2 * a + c, 2 * b + d, r.get(c, d).clone());
                }
            }
        }
    }
    out
}

/// `ρ`-assembly of `L±_c` minus `R±(λ, μ)`.
pub fn l_pairing_residual(
    sign: Sign,
    colour: usize,
    cp: &ColourPair,
    units: &Units,
) -> Result<Matrix<Scalar>, LinalgError> {
    let got = assemble_rho(&build_l(sign, colour, cp, units));
    let want = build_r_pm(sign, &cp.lambda, &cp.mu, &units.c_plus, &units.c_minus)?;
    got.sub(&want)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RllIdentity {
    PlusPlus,
    MinusMinus,
    PlusMinus,
}

/// Colour content assigned to the `R12` of the RLL relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ROrder {
    LambdaMu,
    MuLambda,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RllVariant {
    pub identity: RllIdentity,
    pub r_order: ROrder,
}

impl RllVariant {
    pub fn all() -> Vec<RllVariant> {
        let mut out = Vec::new();
        for identity in [RllIdentity::PlusPlus, RllIdentity::MinusMinus, RllIdentity::PlusMinus] {
            for r_order in [ROrder::LambdaMu, ROrder::MuLambda] {
                out.push(RllVariant { identity, r_order });
            }
        }
        out
    }

    pub fn id(&self) -> String {
        let i = match self.identity {
            RllIdentity::PlusPlus => "pp",
            RllIdentity::MinusMinus => "mm",
            RllIdentity::PlusMinus => "pm",
        };
        let o = match self.r_order {
            ROrder::LambdaMu => "lm",
            ROrder::MuLambda => "ml",
        };
        format!("{i}-{o}")
    }
}

/// `R12 X2λ Y1μ - Y1μ X2λ R12` with every entry evaluated under ρ, as an 8×8 block matrix
/// whose `(2r + x, 2c + y)` entry is `ρ(entry_rc)_xy`.
pub fn rll_residual(v: RllVariant, cp: &ColourPair, units: &Units) -> Matrix<Scalar> {
    let (x_sign, y_sign) = match v.identity {
        RllIdentity::PlusPlus => (Sign::Plus, Sign::Plus),
        RllIdentity::MinusMinus => (Sign::Minus, Sign::Minus),
        RllIdentity::PlusMinus => (Sign::Plus, Sign::Minus),
    };
    let r = match v.r_order {
        ROrder::LambdaMu => build_r(&cp.lambda, &cp.mu).matrix,
        ROrder::MuLambda => build_r(&cp.mu, &cp.lambda).matrix,
    };
    let r = r.map(|s| DualExpr::scalar(s.clone()));
    let id2 = Matrix::<DualExpr>::identity(2);
    let x2 = id2.kron(&build_l(x_sign, cp.lambda_index, cp, units));
    let y1 = build_l(y_sign, cp.mu_index, cp, units).kron(&id2);
    let lhs = Matrix::chain(&[&r, &x2, &y1]).expect("4x4");
    let rhs = Matrix::chain(&[&y1, &x2, &r]).expect("4x4");
    let diff = lhs.sub(&rhs).expect("4x4");
    let mut out = Matrix::zeros(8, 8);
    for (i, j, e) in diff.entries() {
        let m = rho_eval(e);
        for x in 0..2 {
            for y in 0..2 {
                out.set(2 * i + x, 2 * j + y, m.get(x, y).clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::colourless_map;

    fn pair() -> ColourPair {
        ColourPair::from_palette(&Palette::symbolic(&["lambda", "mu"]))
    }

    #[test]
    fn printed_antipode_inverts_l_plus() {
        let cp = pair();
        let u = Units::default();
        for colour in 0..2 {
            let l = build_l(Sign::Plus, colour, &cp, &u);
            let s = antipode_l_plus(colour, &cp, &u);
            assert_eq!(l.matmul(&s).unwrap(), Matrix::identity(2));
            assert_eq!(s.matmul(&l).unwrap(), Matrix::identity(2));
        }
    }

    #[test]
    fn rho_of_l_matches_r_pm() {
        let cp = pair();
        let u = Units::default();
        for sign in [Sign::Plus, Sign::Minus] {
            for colour in 0..2 {
                assert!(l_pairing_residual(sign, colour, &cp, &u).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rll_colourless_vanishes() {
        let p = Palette::symbolic(&["lambda", "mu"]);
        let flat = p.substitute(&colourless_map(&p.symbols()));
        let cp = ColourPair::from_palette(&flat);
        for v in RllVariant::all() {
            assert!(rll_residual(v, &cp, &Units::default()).is_zero(), "{}", v.id());
        }
    }
}
