use cqg_core::dual::checks::{
    bialgebra_consistency, cb_relation_residual, commutator_residuals, dual_hopf_residuals, exchange_residuals,
    pairing_compatibility, pairing_well_defined,
};
use cqg_core::dual::expr::{dual_antipode, dual_coproduct, rho_eval, CartanKind, DualExpr, DualLetter, DualTensor};
use cqg_core::dual::functionals::{antipode_l_plus, l_pairing_residual, rll_residual};
use cqg_core::dual::{build_l, pair, ColourPair, PairingConvention, RllVariant, Units};
use cqg_core::frt::relations::palette_relations;
use cqg_core::frt::{GroupAlgebra, Letter, MonomialOrder, Palette};
use cqg_core::linalg::Matrix;
use cqg_core::parse::parse_scalar;
use cqg_core::rmatrix::Sign;
use cqg_core::scalar::{colourless_map, monochromatic_map, Exponent, Scalar, Symbol};

fn symbolic() -> Palette {
    Palette::symbolic(&["lambda", "mu"])
}

fn colourless() -> Palette {
    let p = symbolic();
    p.substitute(&colourless_map(&p.symbols()))
}

fn monochromatic() -> Palette {
    let p = symbolic();
    p.substitute(&monochromatic_map(&p.symbols(), &Symbol::new("c")))
}

fn alg(p: Palette) -> GroupAlgebra {
    GroupAlgebra::new(p, MonomialOrder::LetterMajor)
}

fn sc(s: &str) -> Scalar {
    parse_scalar(s).unwrap()
}

fn diag(x: &str, y: &str) -> Matrix<Scalar> {
    Matrix::from_rows(vec![vec![sc(x), Scalar::zero()], vec![Scalar::zero(), sc(y)]]).unwrap()
}

#[test]
fn spin_half_representation() {
    assert_eq!(rho_eval(&DualExpr::exp(0, CartanKind::H, Exponent::frac(1, 2))), diag("q^(1/2)", "q^(-1/2)"));
    assert!(rho_eval(&DualExpr::gen(DualLetter::C, 0).pow(2)).is_zero());
    assert_eq!(rho_eval(&DualExpr::gen(DualLetter::A, 1)), diag("1", "0"));
    let hp = DualExpr::exp(1, CartanKind::HPrime, Exponent::symbol("lambda"));
    assert_eq!(rho_eval(&hp), diag("q^(lambda)", "q^(lambda)"));
}

#[test]
fn l_matrices_as_printed() {
    let cp = ColourPair::from_palette(&symbolic());
    let u = Units::default();
    let lp = build_l(Sign::Plus, 0, &cp, &u);
    let c = DualExpr::gen(DualLetter::C, 0).scale(&sc("q^(cp)*(q - q^(-1))"));
    assert_eq!(lp.get(0, 1), &c);
    assert!(lp.get(1, 0).is_zero());
    assert_eq!(rho_eval(lp.get(0, 0)), diag("q^(cp + 1 + mu - lambda)", "q^(cp - lambda - mu)"));
    assert!(build_l(Sign::Minus, 1, &cp, &u).get(0, 1).is_zero());
}

#[test]
fn l_pairing_gives_r_plus_minus_in_every_regime() {
    for p in [symbolic(), colourless(), monochromatic()] {
        let cp = ColourPair::from_palette(&p);
        for units in [Units::default(), Units { c_plus: Scalar::one(), c_minus: Scalar::one() }] {
            for sign in [Sign::Plus, Sign::Minus] {
                for colour in 0..2 {
                    assert!(l_pairing_residual(sign, colour, &cp, &units).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn printed_antipode_of_l_plus_is_an_inverse() {
    let cp = ColourPair::from_palette(&symbolic());
    let u = Units::default();
    for colour in 0..2 {
        let prod = build_l(Sign::Plus, colour, &cp, &u).matmul(&antipode_l_plus(colour, &cp, &u)).unwrap();
        assert_eq!(prod, Matrix::identity(2));
    }
}

#[test]
fn generator_and_product_pairings() {
    let g = alg(Palette::symbolic(&["lambda", "mu", "nu"]));
    let conv = PairingConvention::Opposite;
    let a_l = DualExpr::gen(DualLetter::A, 0);
    assert_eq!(pair(&g, &a_l, &g.gen(Letter::A, 1), conv).unwrap(), Scalar::one());
    assert!(pair(&g, &a_l, &g.gen(Letter::D, 1), conv).unwrap().is_zero());

    let cb = DualExpr::gen(DualLetter::C, 0).mul(&DualExpr::gen(DualLetter::B, 1));
    for l in Letter::ALL {
        let want = if l == Letter::D { Scalar::one() } else { Scalar::zero() };
        assert_eq!(pair(&g, &cb, &g.gen(l, 2), conv).unwrap(), want);
    }

    let b = DualExpr::gen(DualLetter::B, 0);
    let ab = g.gen(Letter::A, 1).mul(&g.gen(Letter::B, 2));
    assert_eq!(pair(&g, &b, &ab, PairingConvention::Standard).unwrap(), Scalar::one());
    assert_eq!(pair(&g, &b, &ab, PairingConvention::Opposite).unwrap(), Scalar::q());
}

#[test]
fn counit_annihilates_every_relation() {
    let g = alg(symbolic());
    for r in palette_relations(&g) {
        assert!(pair(&g, &DualExpr::one(), &r, PairingConvention::Opposite).unwrap().is_zero());
    }
}

#[test]
fn colourless_pairing_is_well_defined() {
    let g = alg(colourless());
    let rels = palette_relations(&g);
    let w = pairing_well_defined(&g, &rels, 2, PairingConvention::Opposite).unwrap();
    assert!(w.checked > 0);
    assert!(w.failures.is_empty(), "{} failures", w.failures.len());
}

#[test]
fn dual_hopf_structure() {
    let a = DualExpr::gen(DualLetter::A, 0);
    let want = DualTensor::pure(&a, &DualExpr::one()).add(&DualTensor::pure(&DualExpr::one(), &a));
    assert_eq!(dual_coproduct(&a), want);
    assert_eq!(dual_antipode(&a), a.neg());
    for n in dual_hopf_residuals(2) {
        assert!(n.residual.is_zero(), "{}", n.name);
    }
    let swap = |c: usize| 1 - c;
    for l in DualLetter::ALL {
        let u = DualExpr::gen(l, 0);
        assert_eq!(dual_coproduct(&u).map_colours(swap), dual_coproduct(&u.map_colours(swap)));
        assert_eq!(dual_antipode(&u).map_colours(swap), dual_antipode(&u.map_colours(swap)));
    }
}

#[test]
fn coproduct_and_product_pairings_are_compatible() {
    let g = alg(symbolic());
    for n in pairing_compatibility(&g, PairingConvention::Opposite).unwrap() {
        assert!(n.residual.is_zero(), "{}", n.name);
    }
    for n in bialgebra_consistency(&g, PairingConvention::Opposite).unwrap() {
        assert!(n.residual.is_zero(), "{}", n.name);
    }
}

#[test]
fn dual_relations_under_rho() {
    let cp = ColourPair::from_palette(&symbolic());
    for n in commutator_residuals(&cp).into_iter().chain(exchange_residuals(&cp)) {
        assert!(n.residual.is_zero(), "{}", n.name);
    }
}

#[test]
fn cb_relation_and_rll_vanish_at_equal_colours() {
    for p in [colourless(), monochromatic()] {
        let cp = ColourPair::from_palette(&p);
        assert!(cb_relation_residual(&cp).is_zero());
        for v in RllVariant::all() {
            assert!(rll_residual(v, &cp, &Units::default()).is_zero(), "{}", v.id());
        }
    }
}
