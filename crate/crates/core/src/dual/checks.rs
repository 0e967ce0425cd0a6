//! Residual-producing checks on the dual algebra.

use super::expr::{dual_antipode, dual_coproduct, rho_eval, CartanExp, CartanKind, DualExpr, DualLetter};
use super::functionals::ColourPair;
use super::pairing::{pair, DualError, Pairer, PairingConvention};
use crate::frt::hopf::coproduct;
use crate::frt::{GroupAlgebra, Letter, NCPoly};
use crate::linalg::Matrix;
use crate::scalar::{Exponent, Scalar};

/// A named residual that is expected to vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct Named<T> {
    pub name: String,
    pub residual: T,
}

fn named<T>(name: impl Into<String>, residual: T) -> Named<T> {
    Named { name: name.into(), residual }
}

fn gen(l: DualLetter, c: usize) -> DualExpr {
    DualExpr::gen(l, c)
}

fn comm(x: &DualExpr, y: &DualExpr) -> DualExpr {
    x.mul(y).sub(&y.mul(x))
}

fn h(c: usize) -> DualExpr {
    gen(DualLetter::A, c).sub(&gen(DualLetter::D, c))
}

fn h_prime(c: usize) -> DualExpr {
    gen(DualLetter::A, c).add(&gen(DualLetter::D, c))
}

fn colour_name(cp: &ColourPair, c: usize) -> &'static str {
    if c == cp.lambda_index {
        "lambda"
    } else {
        "mu"
    }
}

/// Commutators `[A,B] = B`, `[D,B] = -B`, `[A,C] = -C`, `[D,C] = C`, `[A,D] = 0`,
/// `[H,H] = 0`, `[H', •] = 0` for every ordered colour pair, evaluated under ρ.
pub fn commutator_residuals(cp: &ColourPair) -> Vec<Named<Matrix<Scalar>>> {
    let colours = [cp.lambda_index, cp.mu_index];
    let mut out = Vec::new();
    for &g in &colours {
        for &d in &colours {
            let (gn, dn) = (colour_name(cp, g), colour_name(cp, d));
            let b = gen(DualLetter::B, d);
            let c = gen(DualLetter::C, d);
            let cases = [
                (format!("[A_{gn},B_{dn}] = B_{dn}"), comm(&gen(DualLetter::A, g), &b).sub(&b)),
                (format!("[D_{gn},B_{dn}] = -B_{dn}"), comm(&gen(DualLetter::D, g), &b).add(&b)),
                (format!("[A_{gn},C_{dn}] = -C_{dn}"), comm(&gen(DualLetter::A, g), &c).add(&c)),
                (format!("[D_{gn},C_{dn}] = C_{dn}"), comm(&gen(DualLetter::D, g), &c).sub(&c)),
                (format!("[A_{gn},D_{dn}] = 0"), comm(&gen(DualLetter::A, g), &gen(DualLetter::D, d))),
                (format!("[H_{gn},H_{dn}] = 0"), comm(&h(g), &h(d))),
            ];
            for (name, e) in cases {
                out.push(named(name, rho_eval(&e)));
            }
            for l in DualLetter::ALL {
                let e = comm(&h_prime(g), &gen(l, d));
                out.push(named(format!("[H'_{gn},{}_{dn}] = 0", l.name()), rho_eval(&e)));
            }
        }
        if cp.lambda_index == cp.mu_index {
            break;
        }
    }
    out
}

/// The four exchange relations between the two colours, evaluated under ρ.
pub fn exchange_residuals(cp: &ColourPair) -> Vec<Named<Matrix<Scalar>>> {
    let (l, m) = (cp.lambda_index, cp.mu_index);
    let d = &cp.mu - &cp.lambda;
    let two = crate::scalar::Rat::from_integer(2);
    let cases = [
        ("A_lambda A_mu = A_mu A_lambda", DualLetter::A, Exponent::zero()),
        ("B_lambda B_mu = q^(2(mu - lambda)) B_mu B_lambda", DualLetter::B, d.scale(two)),
        ("C_lambda C_mu = q^(2(lambda - mu)) C_mu C_lambda", DualLetter::C, (-&d).scale(two)),
        ("D_lambda D_mu = D_mu D_lambda", DualLetter::D, Exponent::zero()),
    ];
    cases
        .into_iter()
        .map(|(name, x, e)| {
            let lhs = gen(x, l).mul(&gen(x, m));
            let rhs = gen(x, m).mul(&gen(x, l)).scale(&Scalar::q_pow(e));
            named(name, rho_eval(&lhs.sub(&rhs)))
        })
        .collect()
}

/// Both sides of the `C_λ B_μ` relation multiplied by `q - q^{-1}`, as a dual expression.
pub fn cb_relation_expr(cp: &ColourPair) -> DualExpr {
    let (li, mi) = (cp.lambda_index, cp.mu_index);
    let (l, m) = (&cp.lambda, &cp.mu);
    let sum = l + m;
    let lhs = gen(DualLetter::C, li)
        .mul(&gen(DualLetter::B, mi))
        .scale(&Scalar::q_pow(-&sum))
        .sub(&gen(DualLetter::B, mi).mul(&gen(DualLetter::C, li)).scale(&Scalar::q_pow(sum.clone())))
        .scale(&Scalar::q_minus_qinv());
    let k = |c: usize, kind: CartanKind, e: Exponent| CartanExp::single(c, kind, e);
    let prefactor = k(mi, CartanKind::H, l.clone()).compose(&k(li, CartanKind::H, m.clone()));
    let half = Exponent::frac(1, 2);
    let first = k(li, CartanKind::H, -&half)
        .compose(&k(mi, CartanKind::H, -&half))
        .compose(&k(li, CartanKind::HPrime, l.clone()))
        .compose(&k(mi, CartanKind::HPrime, -m));
    let second = k(li, CartanKind::H, half.clone())
        .compose(&k(mi, CartanKind::H, half))
        .compose(&k(li, CartanKind::HPrime, -l))
        .compose(&k(mi, CartanKind::HPrime, m.clone()));
    let rhs = DualExpr::cartan(prefactor.compose(&first)).sub(&DualExpr::cartan(prefactor.compose(&second)));
    lhs.sub(&rhs)
}

/// ρ-residual of the `C_λ B_μ` relation, scaled by `q - q^{-1}`.
pub fn cb_relation_residual(cp: &ColourPair) -> Matrix<Scalar> {
    rho_eval(&cb_relation_expr(cp))
}

/// Single-letter alphabet used for pairing sweeps: generators of each colour, and
/// `q^{cH}`, `q^{cH'}` for `c ∈ {±1, ±1/2}`.
pub fn dual_alphabet(alg: &GroupAlgebra) -> Vec<(String, DualExpr)> {
    let pal = alg.palette();
    let mut out = Vec::new();
    for c in 0..pal.len() {
        for l in DualLetter::ALL {
            out.push((format!("{}_{}", l.name(), pal.name(c)), gen(l, c)));
        }
        for (kind, label) in [(CartanKind::H, "H"), (CartanKind::HPrime, "H'")] {
            for e in [Exponent::int(1), Exponent::int(-1), Exponent::frac(1, 2), Exponent::frac(-1, 2)] {
                out.push((format!("q^(({e})*{label}_{})", pal.name(c)), DualExpr::exp(c, kind, e)));
            }
        }
    }
    out
}

/// Nonzero pairing of a dual word with a relation.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingFailure {
    pub dual: String,
    pub relation: usize,
    pub value: Scalar,
}

/// Outcome of the well-definedness sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct WellDefinedness {
    pub checked: usize,
    pub failures: Vec<PairingFailure>,
}

/// `<u, r>` for every dual word `u` of length `<= max_len` and every relation `r`.
pub fn pairing_well_defined(
    alg: &GroupAlgebra,
    relations: &[NCPoly],
    max_len: usize,
    conv: PairingConvention,
) -> Result<WellDefinedness, DualError> {
    let alphabet = dual_alphabet(alg);
    let mut words: Vec<(String, DualExpr)> = vec![("1".into(), DualExpr::one())];
    let mut layer = words.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (n, u) in &layer {
            for (m, x) in &alphabet {
                let name = if n == "1" { m.clone() } else { format!("{n}*{m}") };
                next.push((name, u.mul(x)));
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    for (name, u) in &words {
        let mut pairer = Pairer::new(alg, u, conv);
        for (ri, r) in relations.iter().enumerate() {
            checked += 1;
            let v = pairer.pair(r)?;
            if !v.is_zero() {
                failures.push(PairingFailure { dual: name.clone(), relation: ri, value: v });
            }
        }
    }
    Ok(WellDefinedness { checked, failures })
}

/// Antipode and counit axioms for every dual generator of every colour.
pub fn dual_hopf_residuals(colours: usize) -> Vec<Named<DualExpr>> {
    let mut out = Vec::new();
    for c in 0..colours {
        for l in DualLetter::ALL {
            let u = gen(l, c);
            let d = dual_coproduct(&u);
            let eps = DualExpr::scalar(u.counit());
            let id = |x: &DualExpr| x.clone();
            let counit_left = |x: &DualExpr| DualExpr::scalar(x.counit());
            let tag = format!("{}_{c}", l.name());
            out.push(named(format!("m(S⊗id)Δ({tag}) = ε"), d.contract(dual_antipode, id).sub(&eps)));
            out.push(named(format!("m(id⊗S)Δ({tag}) = ε"), d.contract(id, dual_antipode).sub(&eps)));
            out.push(named(format!("(ε⊗id)Δ({tag}) = {tag}"), d.contract(counit_left, id).sub(&u)));
            out.push(named(format!("(id⊗ε)Δ({tag}) = {tag}"), d.contract(id, counit_left).sub(&u)));
        }
    }
    out
}

/// `<Δu, x⊗y> - <u, xy>` for generators `u, x, y`, with legs of `Δu` matched to the
/// factors according to `conv`.
pub fn pairing_compatibility(alg: &GroupAlgebra, conv: PairingConvention) -> Result<Vec<Named<Scalar>>, DualError> {
    let pal = alg.palette();
    let mut out = Vec::new();
    let gens: Vec<(String, NCPoly)> = (0..pal.len())
        .flat_map(|c| Letter::ALL.map(|l| (format!("{}_{}", l.name(), pal.name(c)), alg.gen(l, c))))
        .collect();
    for c in 0..pal.len() {
        for l in DualLetter::ALL {
            let u = gen(l, c);
            let d = dual_coproduct(&u);
            for (xn, x) in &gens {
                for (yn, y) in &gens {
                    let split = d.evaluate(
                        |a| {
                            pair(alg, a, if conv == PairingConvention::Standard { x } else { y }, conv)
                                .expect("generators")
                        },
                        |b| {
                            pair(alg, b, if conv == PairingConvention::Standard { y } else { x }, conv)
                                .expect("generators")
                        },
                    );
                    let whole = pair(alg, &u, &x.mul(y), conv)?;
                    out.push(named(format!("<Δ{}_{}, {xn}⊗{yn}>", l.name(), pal.name(c)), &split - &whole));
                }
            }
        }
    }
    Ok(out)
}

/// `<uv, z> - Σ <u, z_(1)> <v, z_(2)>` for generators `u, v` and words `z` of length 2.
pub fn bialgebra_consistency(alg: &GroupAlgebra, conv: PairingConvention) -> Result<Vec<Named<Scalar>>, DualError> {
    let pal = alg.palette();
    let mut out = Vec::new();
    let duals: Vec<DualExpr> = (0..pal.len()).flat_map(|c| DualLetter::ALL.map(|l| gen(l, c))).collect();
    let gens: Vec<NCPoly> = (0..pal.len()).flat_map(|c| Letter::ALL.map(|l| alg.gen(l, c))).collect();
    for (ui, u) in duals.iter().enumerate() {
        for (vi, v) in duals.iter().enumerate() {
            for (xi, x) in gens.iter().enumerate() {
                for (yi, y) in gens.iter().enumerate() {
                    let z = x.mul(y);
                    let whole = pair(alg, &u.mul(v), &z, conv)?;
                    let mut split = Scalar::zero();
                    for (legs, c) in coproduct(alg, &z).terms() {
                        let a = pair(alg, u, &NCPoly::word(legs[0].clone()), conv)?;
                        let b = pair(alg, v, &NCPoly::word(legs[1].clone()), conv)?;
                        split += &(&(c * &a) * &b);
                    }
                    out.push(named(format!("u{ui} v{vi} x{xi} y{yi}"), &whole - &split));
                }
            }
        }
    }
    Ok(out)
}
