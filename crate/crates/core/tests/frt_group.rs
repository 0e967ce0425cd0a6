use std::sync::Arc;

use cqg_core::frt::hopf::{
    antipode_residuals, coproduct, coproduct_on_leg, counit, counit_on_leg, det_exchange, exchange_exponent,
    group_like_residual, solve_det_exponent, Antipode, Localized, QuantumDet,
};
use cqg_core::frt::relations::{canonical_span, colour_exchange, expand_rtt, palette_relations, swap_and_reverse};
use cqg_core::frt::rewrite::DEFAULT_STEP_BUDGET;
use cqg_core::frt::{GroupAlgebra, Letter, MonomialOrder, NCPoly, Palette, RewriteSystem, TensorPoly, Word};
use cqg_core::scalar::Exponent;

fn system(names: &[&str], order: MonomialOrder) -> RewriteSystem {
    let alg = Arc::new(GroupAlgebra::new(Palette::symbolic(names), order));
    let rels = palette_relations(&alg);
    RewriteSystem::from_relations(alg, &rels, DEFAULT_STEP_BUDGET).unwrap()
}

fn two() -> RewriteSystem {
    system(&["lambda", "mu"], MonomialOrder::LetterMajor)
}

#[test]
fn relation_counts_and_confluence() {
    let rs = two();
    assert_eq!(rs.rules().len(), 28);
    assert!(rs.confluence_probe(4).unwrap().is_empty());
    let cm = system(&["lambda", "mu"], MonomialOrder::ColourMajor);
    assert!(cm.confluence_probe(4).unwrap().is_empty());
}

#[test]
fn three_colour_probe() {
    let rs = system(&["lambda", "mu", "nu"], MonomialOrder::LetterMajor);
    assert_eq!(rs.rules().len(), 6 * 3 + 16 * 3);
    let bad = rs.confluence_probe(3).unwrap();
    assert!(bad.is_empty(), "{} unresolved overlaps", bad.len());
}

#[test]
fn every_relation_reduces_to_zero_and_ideal_is_stable() {
    let rs = two();
    let alg = rs.algebra().clone();
    let gens = alg.generator_ids();
    for r in rs.rules() {
        let rel = r.relation();
        assert!(rs.normal_form(&rel).unwrap().is_zero());
        for &x in gens.iter().step_by(3) {
            for &y in gens.iter().step_by(5) {
                let p = NCPoly::product(&[
                    &NCPoly::word(Word::from_slice(&[x])),
                    &rel,
                    &NCPoly::word(Word::from_slice(&[y])),
                ]);
                assert!(rs.normal_form(&p).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn strategies_agree_on_long_words() {
    let rs = two();
    let alg = rs.algebra().clone();
    let p = alg.parse_poly("a_lambda*b_mu*c_mu*d_lambda").unwrap();
    assert_eq!(rs.normal_form(&p).unwrap(), rs.normal_form_rightmost(&p).unwrap());
    let p = alg.parse_poly("d_mu*d_lambda*c_mu*b_lambda*a_mu").unwrap();
    assert_eq!(rs.normal_form(&p).unwrap(), rs.normal_form_rightmost(&p).unwrap());
}

#[test]
fn cross_relation_exchange_symmetry() {
    let rs = two();
    let alg = rs.algebra().clone();
    let rels = expand_rtt(&alg, 0, 1);
    let span = canonical_span(&alg, &rels).unwrap();
    let exchanged: Vec<NCPoly> = rels.iter().map(|r| colour_exchange(&alg, r, 0, 1)).collect();
    assert_eq!(span, canonical_span(&alg, &exchanged).unwrap());
    let reversed: Vec<NCPoly> = rels.iter().map(|r| swap_and_reverse(&alg, r, 0, 1)).collect();
    assert_ne!(Ok(span), canonical_span(&alg, &reversed));
}

#[test]
fn hopf_structure_two_colours() {
    let rs = two();
    let alg = rs.algebra().clone();
    for g in alg.generator_ids() {
        let p = NCPoly::word(Word::from_slice(&[g]));
        let d = coproduct(&alg, &p);
        assert_eq!(coproduct_on_leg(&alg, &d, 0), coproduct_on_leg(&alg, &d, 1));
        assert_eq!(counit_on_leg(&alg, &d, 0), p);
        assert_eq!(counit_on_leg(&alg, &d, 1), p);
    }
    for r in rs.rules() {
        let rel = r.relation();
        assert!(rs.tensor_normal_form(&coproduct(&alg, &rel)).unwrap().is_zero());
        assert!(counit(&alg, &rel).is_zero());
    }
    let dets: Vec<QuantumDet> =
        (0..2).map(|c| QuantumDet::with_exponent(&alg, c, solve_det_exponent(&rs, c).unwrap())).collect();
    for d in &dets {
        assert_eq!(group_like_residual(&rs, d).unwrap(), TensorPoly::zero());
    }
    let loc = Localized::new(&rs, dets).unwrap();
    for c in 0..2 {
        let ap = Antipode::solve(&rs, c).unwrap();
        for left in [true, false] {
            for (_, r) in antipode_residuals(&alg, &ap, left) {
                assert!(loc.is_zero(&r).unwrap());
            }
        }
    }
}

#[test]
fn determinant_exchange() {
    let rs = two();
    let alg = rs.algebra().clone();
    let e = solve_det_exponent(&rs, 0).unwrap();
    let d = QuantumDet::with_exponent(&alg, 0, e);
    let eb = det_exchange(&rs, &d, &alg.gen(Letter::B, 1)).unwrap();
    assert_eq!(eb, "4*lambda".parse::<Exponent>().unwrap());
    let ea = det_exchange(&rs, &d, &alg.gen(Letter::A, 1)).unwrap();
    assert!(ea.is_zero());
    let back = exchange_exponent(&rs, &alg.gen(Letter::B, 1), &d.poly).unwrap();
    assert_eq!(back, -eb);
    let comm = d.poly.mul(&alg.gen(Letter::B, 1)).sub(&alg.gen(Letter::B, 1).mul(&d.poly));
    assert!(!rs.normal_form(&comm).unwrap().is_zero());
}
