//! The coloured R-matrix, its braid form, and the two Yang-Baxter checks.

use crate::linalg::{LinalgError, Matrix, Slot};
use crate::scalar::{Exponent, Scalar};

/// A coloured R-matrix together with the colours it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct ColouredR {
    pub matrix: Matrix<Scalar>,
    pub colours: (Exponent, Exponent),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `R(first, second)`: diagonal `q^{1-(l-m)}, q^{l+m}, q^{-(l+m)}, q^{1+(l-m)}` and
/// `q - q^{-1}` at row 2, column 1 (0-based).
pub fn build_r(first: &Exponent, second: &Exponent) -> ColouredR {
    let one = Exponent::int(1);
    let diff = first - second;
    let sum = first + second;
    let mut m = Matrix::zeros(4, 4);
    m.set(0, 0, Scalar::q_pow(&one - &diff));
    m.set(1, 1, Scalar::q_pow(sum.clone()));
    m.set(2, 2, Scalar::q_pow(-&sum));
    m.set(3, 3, Scalar::q_pow(&one + &diff));
    m.set(2, 1, Scalar::q_minus_qinv());
    ColouredR { matrix: m, colours: (first.clone(), second.clone()) }
}

fn r(a: &Exponent, b: &Exponent) -> Matrix<Scalar> {
    build_r(a, b).matrix
}

fn embed(m: &Matrix<Scalar>, slot: Slot) -> Matrix<Scalar> {
    m.slot_embed(slot).expect("R-matrices are 4x4")
}

fn triple(a: &Matrix<Scalar>, b: &Matrix<Scalar>, c: &Matrix<Scalar>) -> Matrix<Scalar> {
    Matrix::chain(&[a, b, c]).expect("8x8 products")
}

/// `R12(l,m) R13(l,n) R23(m,n) - R23(m,n) R13(l,n) R12(l,m)`.
pub fn check_cqybe(l: &Exponent, m: &Exponent, n: &Exponent) -> Matrix<Scalar> {
    let r12 = embed(&r(l, m), Slot::S12);
    let r13 = embed(&r(l, n), Slot::S13);
    let r23 = embed(&r(m, n), Slot::S23);
    let lhs = triple(&r12, &r13, &r23);
    let rhs = triple(&r23, &r13, &r12);
    lhs.sub(&rhs).expect("same shape")
}

/// Yang-Baxter residual with one fixed R in every slot.
pub fn check_constant_ybe(l: &Exponent, m: &Exponent) -> Matrix<Scalar> {
    let rr = r(l, m);
    let r12 = embed(&rr, Slot::S12);
    let r13 = embed(&rr, Slot::S13);
    let r23 = embed(&rr, Slot::S23);
    triple(&r12, &r13, &r23).sub(&triple(&r23, &r13, &r12)).expect("same shape")
}

/// `P R(l, m)`.
pub fn build_braid(l: &Exponent, m: &Exponent) -> Matrix<Scalar> {
    Matrix::swap(2).matmul(&r(l, m)).expect("4x4")
}

/// `B23(l,m) B12(l,n) B23(m,n) - B12(m,n) B23(l,n) B12(l,m)` with `B = P R`.
pub fn check_braided_ybe(l: &Exponent, m: &Exponent, n: &Exponent) -> Matrix<Scalar> {
    let lhs = triple(
        &embed(&build_braid(l, m), Slot::S23),
        &embed(&build_braid(l, n), Slot::S12),
        &embed(&build_braid(m, n), Slot::S23),
    );
    let rhs = triple(
        &embed(&build_braid(m, n), Slot::S12),
        &embed(&build_braid(l, n), Slot::S23),
        &embed(&build_braid(l, m), Slot::S12),
    );
    lhs.sub(&rhs).expect("same shape")
}

/// `R+ = c+ P R P` and `R- = c- R^{-1}`.
pub fn build_r_pm(
    sign: Sign,
    l: &Exponent,
    m: &Exponent,
    c_plus: &Scalar,
    c_minus: &Scalar,
) -> Result<Matrix<Scalar>, LinalgError> {
    let rr = r(l, m);
    match sign {
        Sign::Plus => {
            let p = Matrix::swap(2);
            Ok(Matrix::chain(&[&p, &rr, &p])?.scale_left(c_plus))
        }
        Sign::Minus => Ok(rr.triangular_inverse()?.scale_left(c_minus)),
    }
}
