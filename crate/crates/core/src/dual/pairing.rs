//! Duality pairing between dual expressions and group polynomials.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::{rho_cartan, rho_gen, DualExpr, DualLetter};
use crate::frt::{GroupAlgebra, GroupLetter, NCPoly, Word};
use crate::linalg::Matrix;
use crate::scalar::{Exponent, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DualError {
    #[error("pairing with `{0}` is not supported: it contains an inverse determinant")]
    UnsupportedWord(String),
}

/// Which coproduct leg pairs with which factor of a group product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairingConvention {
    /// `<u, xy> = <u_(1), x> <u_(2), y>`.
    Standard,
    /// `<u, xy> = <u_(2), x> <u_(1), y>`.
    #[default]
    Opposite,
}

fn kron_power(m: &Matrix<Scalar>, n: usize) -> Matrix<Scalar> {
    (0..n).fold(Matrix::identity(1), |acc, _| acc.kron(m))
}

/// `(ρ ⊗ ... ⊗ ρ) Δ^{(n)}(u)`, first leg most significant.
pub fn rho_n(u: &DualExpr, n: usize) -> Matrix<Scalar> {
    let dim = 1 << n;
    let mut out = Matrix::zeros(dim, dim);
    for (k, w, c) in u.terms() {
        let mut m = kron_power(&rho_cartan(k), n);
        for g in w {
            m = m.matmul(&rho_n_gen(g.letter, g.colour, n)).expect("square");
        }
        out = out.add(&m.scale_left(c)).expect("square");
    }
    out
}

fn rho_n_gen(letter: DualLetter, colour: usize, n: usize) -> Matrix<Scalar> {
    let tail = match letter {
        DualLetter::A | DualLetter::D => Matrix::identity(2),
        DualLetter::B | DualLetter::C => {
            rho_cartan(&super::expr::CartanExp::single(colour, super::expr::CartanKind::H, Exponent::int(1)))
        }
    };
    let x = rho_gen(letter);
    let dim = 1 << n;
    let mut out = Matrix::zeros(dim, dim);
    for k in 0..n {
        let m = kron_power(&Matrix::identity(2), k).kron(&x).kron(&kron_power(&tail, n - k - 1));
        out = out.add(&m).expect("square");
    }
    out
}

/// Row/column indices `(i, j)` of a group word of generators, leg order applied.
fn word_indices(alg: &GroupAlgebra, w: &Word, conv: PairingConvention) -> Result<(usize, usize), DualError> {
    let mut pos = Vec::with_capacity(w.len());
    for &id in w.iter() {
        match alg.letter(id) {
            GroupLetter::Gen { letter, .. } => pos.push(letter.position()),
            GroupLetter::DetInv { .. } => return Err(DualError::UnsupportedWord(alg.format_word(w))),
        }
    }
    if conv == PairingConvention::Opposite {
        pos.reverse();
    }
    Ok(pos.iter().fold((0, 0), |(r, c), (i, j)| (2 * r + i, 2 * c + j)))
}

/// Evaluates `<u, ·>` for one fixed `u`, caching the tensor-power representations.
pub struct Pairer<'a> {
    alg: &'a GroupAlgebra,
    u: &'a DualExpr,
    conv: PairingConvention,
    cache: Vec<Option<Matrix<Scalar>>>,
}

impl<'a> Pairer<'a> {
    pub fn new(alg: &'a GroupAlgebra, u: &'a DualExpr, conv: PairingConvention) -> Self {
        Pairer { alg, u, conv, cache: Vec::new() }
    }

    pub fn pair(&mut self, x: &NCPoly) -> Result<Scalar, DualError> {
        let mut out = Scalar::zero();
        for (w, c) in x.terms() {
            let n = w.len();
            if self.cache.len() <= n {
                self.cache.resize(n + 1, None);
            }
            let u = self.u;
            let m = self.cache[n].get_or_insert_with(|| rho_n(u, n));
            let (i, j) = word_indices(self.alg, w, self.conv)?;
            out += &(c * m.get(i, j));
        }
        Ok(out)
    }
}

/// `<u, x>`, linear in both arguments.
pub fn pair(alg: &GroupAlgebra, u: &DualExpr, x: &NCPoly, conv: PairingConvention) -> Result<Scalar, DualError> {
    Pairer::new(alg, u, conv).pair(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frt::{MonomialOrder, Palette};

    fn alg() -> GroupAlgebra {
        GroupAlgebra::new(Palette::symbolic(&["lambda", "mu"]), MonomialOrder::LetterMajor)
    }

    #[test]
    fn generator_pairings_are_matrix_units() {
        let alg = alg();
        for letter in DualLetter::ALL {
            for colour in 0..2 {
                let u = DualExpr::gen(letter, colour);
                for g in crate::frt::Letter::ALL {
                    let x = alg.gen(g, 1 - colour);
                    let v = pair(&alg, &u, &x, PairingConvention::Opposite).unwrap();
                    let want = if letter.position() == g.position() { Scalar::one() } else { Scalar::zero() };
                    assert_eq!(v, want);
                }
            }
        }
    }

    #[test]
    fn leg_order_of_products() {
        let alg = alg();
        let b = DualExpr::gen(DualLetter::B, 0);
        let ab = alg.parse_poly("a_mu*b_mu").unwrap();
        let std = pair(&alg, &b, &ab, PairingConvention::Standard).unwrap();
        let opp = pair(&alg, &b, &ab, PairingConvention::Opposite).unwrap();
        assert_eq!(std, Scalar::one());
        assert_eq!(opp, Scalar::q());
    }

    #[test]
    fn inverse_determinant_is_rejected() {
        let alg = alg();
        let x = alg.det_inv(0);
        let u = DualExpr::one();
        assert!(pair(&alg, &u, &x, PairingConvention::Opposite).is_err());
    }
}
