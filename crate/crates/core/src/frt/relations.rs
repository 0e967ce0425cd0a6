//! Extraction of the coloured RTT relations.

use std::collections::BTreeMap;

use super::algebra::{GroupAlgebra, GroupLetter, Letter, NCPoly};
use super::rewrite::{interreduce, RewriteError, Rule};
use crate::linalg::Matrix;
use crate::rmatrix::build_r;
use crate::scalar::Symbol;

/// Entry-wise expansion of `R(c_i, c_j) T1_{c_i} T2_{c_j} - T2_{c_j} T1_{c_i} R(c_i, c_j)`,
/// dropping zero entries and repeated (or negated) relations.
pub fn expand_rtt(alg: &GroupAlgebra, i: usize, j: usize) -> Vec<NCPoly> {
    let pal = alg.palette();
    let r = build_r(pal.value(i), pal.value(j)).matrix.map(|s| NCPoly::scalar(s.clone()));
    let id2 = Matrix::<NCPoly>::identity(2);
    let t1 = alg.t_matrix(i).kron(&id2);
    let t2 = id2.kron(&alg.t_matrix(j));
    let lhs = Matrix::chain(&[&r, &t1, &t2]).expect("4x4");
    let rhs = Matrix::chain(&[&t2, &t1, &r]).expect("4x4");
    let diff = lhs.sub(&rhs).expect("4x4");
    let mut out: Vec<NCPoly> = Vec::new();
    for (_, _, p) in diff.entries() {
        if p.is_zero() || out.iter().any(|o| o == p || o.add(p).is_zero()) {
            continue;
        }
        out.push(p.clone());
    }
    out
}

/// Relations for every palette pair `i <= j`.
pub fn palette_relations(alg: &GroupAlgebra) -> Vec<NCPoly> {
    let n = alg.palette().len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.extend(expand_rtt(alg, i, j));
        }
    }
    out
}

/// The six defining relations of the one-parameter quantum matrix group in one colour:
/// `ab = q ba, ac = q ca, bc = cb, bd = q db, cd = q dc, ad - da = (q - q^{-1}) bc`.
pub fn standard_relations(alg: &GroupAlgebra, colour: usize) -> Vec<NCPoly> {
    let name = alg.palette().name(colour).to_string();
    [
        "a_X*b_X - q*b_X*a_X",
        "a_X*c_X - q*c_X*a_X",
        "b_X*c_X - c_X*b_X",
        "b_X*d_X - q*d_X*b_X",
        "c_X*d_X - q*d_X*c_X",
        "a_X*d_X - d_X*a_X - (q - q^(-1))*b_X*c_X",
    ]
    .iter()
    .map(|s| alg.parse_poly(&s.replace('X', &name)).expect("well-formed relation"))
    .collect()
}

/// Canonical basis of the span of `relations`, for set comparisons.
pub fn canonical_span(alg: &GroupAlgebra, relations: &[NCPoly]) -> Result<Vec<Rule>, RewriteError> {
    interreduce(alg, relations)
}

/// Image of a relation under exchanging two colours and reversing every word.
pub fn swap_and_reverse(alg: &GroupAlgebra, p: &NCPoly, x: usize, y: usize) -> NCPoly {
    p.map_words(|w| alg.swap_colours(w, x, y).reversed())
}

/// Image under exchanging the generator colours `x, y`, transposing every `T`
/// (`b <-> c`), and substituting `c_x -> -c_y`, `c_y -> -c_x` in the coefficients.
pub fn colour_exchange(alg: &GroupAlgebra, p: &NCPoly, x: usize, y: usize) -> NCPoly {
    let pal = alg.palette();
    let mut map = BTreeMap::new();
    map.insert(Symbol::new(pal.name(x)), -pal.value(y));
    map.insert(Symbol::new(pal.name(y)), -pal.value(x));
    exchange_words(alg, p, x, y).map_scalars(|s| s.substitute(&map))
}

/// The word part of [`colour_exchange`]: colours `x, y` swapped and every `T` transposed.
pub fn exchange_words(alg: &GroupAlgebra, p: &NCPoly, x: usize, y: usize) -> NCPoly {
    p.map_words(|w| {
        alg.swap_colours(w, x, y)
            .iter()
            .map(|&id| match alg.letter(id) {
                GroupLetter::Gen { letter, colour } => {
                    let (i, j) = letter.position();
                    alg.gen_id(Letter::at(j, i), colour)
                }
                GroupLetter::DetInv { .. } => id,
            })
            .collect()
    })
}
