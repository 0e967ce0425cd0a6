use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use proptest::prelude::*;

use cqg_core::calculus::{Calculus, GammaElement, OneForm};
use cqg_core::dual::checks::dual_alphabet;
use cqg_core::dual::expr::{rho_eval, DualExpr};
use cqg_core::dual::Units;
use cqg_core::frt::relations::palette_relations;
use cqg_core::frt::rewrite::DEFAULT_STEP_BUDGET;
use cqg_core::frt::{GroupAlgebra, MonomialOrder, NCPoly, Palette, RewriteSystem, Word};
use cqg_core::linalg::Matrix;
use cqg_core::report::{run_suite, CheckRecord, Status, Suite, SuiteConfig, VerificationReport};
use cqg_core::scalar::{Exponent, QValue, Rat, Scalar, Symbol, Value};

fn exponent() -> impl Strategy<Value = Exponent> {
    (-4i64..=4, -2i64..=2, -2i64..=2).prop_map(|(k, a, b)| {
        &(&Exponent::frac(k, 2) + &Exponent::symbol("lambda").scale(Rat::from_integer(a)))
            + &Exponent::symbol("mu").scale(Rat::from_integer(b))
    })
}

fn monomial() -> impl Strategy<Value = Scalar> {
    ((-5i64..=5).prop_filter("nonzero", |n| *n != 0), 1i64..=3, exponent())
        .prop_map(|(n, d, e)| Scalar::frac(n, d).mul_q_pow(&e))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(monomial(), 0..4).prop_map(|ms| ms.iter().fold(Scalar::zero(), |a, m| &a + m))
}

fn matrix2() -> impl Strategy<Value = Matrix<Scalar>> {
    prop::collection::vec(scalar(), 4).prop_map(|v| Matrix::new(2, 2, v).unwrap())
}

fn point() -> impl Strategy<Value = (BigRational, BTreeMap<Symbol, Rat>)> {
    (1i64..=6, 1i64..=3, -4i64..=4, -4i64..=4).prop_map(|(tn, td, l, m)| {
        let at = BTreeMap::from([(Symbol::new("lambda"), Rat::new(l, 2)), (Symbol::new("mu"), Rat::new(m, 2))]);
        (BigRational::new(tn.into(), td.into()), at)
    })
}

fn value(s: &Scalar, t: &BigRational, at: &BTreeMap<Symbol, Rat>) -> BigRational {
    match s.specialize(&QValue::Square(t.clone()), at).unwrap() {
        Value::Exact(x) => x,
        Value::Float(_) => unreachable!(),
    }
}

fn algebra() -> &'static Arc<GroupAlgebra> {
    static ALG: OnceLock<Arc<GroupAlgebra>> = OnceLock::new();
    ALG.get_or_init(|| Arc::new(GroupAlgebra::new(Palette::symbolic(&["lambda", "mu"]), MonomialOrder::LetterMajor)))
}

fn rewrite() -> &'static RewriteSystem {
    static RS: OnceLock<RewriteSystem> = OnceLock::new();
    RS.get_or_init(|| {
        let alg = algebra().clone();
        let rels = palette_relations(&alg);
        RewriteSystem::from_relations(alg, &rels, DEFAULT_STEP_BUDGET).unwrap()
    })
}

fn calculus() -> &'static Calculus {
    static CALC: OnceLock<Calculus> = OnceLock::new();
    CALC.get_or_init(|| Calculus::new((**algebra()).clone(), &Units::default()))
}

fn word() -> impl Strategy<Value = NCPoly> {
    let ids = algebra().generator_ids();
    (prop::collection::vec(prop::sample::select(ids), 0..5), monomial())
        .prop_map(|(w, c)| NCPoly::term(Word::from_slice(&w), c))
}

fn dual_expr() -> impl Strategy<Value = DualExpr> {
    let letters: Vec<DualExpr> = dual_alphabet(algebra()).into_iter().map(|(_, e)| e).collect();
    let n = letters.len();
    let term = (prop::collection::vec(0..n, 0..4), monomial())
        .prop_map(move |(ix, c)| ix.iter().fold(DualExpr::scalar(c), |acc, i| acc.mul(&letters[*i])));
    prop::collection::vec(term, 1..3).prop_map(|ts| ts.iter().fold(DualExpr::zero(), |a, t| a.add(t)))
}

fn status() -> impl Strategy<Value = Status> {
    prop::sample::select(vec![Status::Pass, Status::Fail, Status::Reported])
}

fn report(statuses: &[Status]) -> VerificationReport {
    VerificationReport {
        suite: "all".into(),
        config_hash: "0".repeat(64),
        checks: statuses
            .iter()
            .enumerate()
            .map(|(i, s)| CheckRecord {
                id: format!("check.{i}"),
                status: *s,
                anchor: "anchor".into(),
                residual_terms: usize::from(*s == Status::Fail),
                ms: 0,
                details: Vec::new(),
                specialized: Vec::new(),
            })
            .collect(),
        tables: None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn specialization_is_a_homomorphism(a in scalar(), b in scalar(), (t, at) in point()) {
        prop_assert_eq!(value(&(&a + &b), &t, &at), value(&a, &t, &at) + value(&b, &t, &at));
        prop_assert_eq!(value(&(&a * &b), &t, &at), value(&a, &t, &at) * value(&b, &t, &at));
    }

    #[test]
    fn substitution_is_multiplicative(a in scalar(), b in scalar(), x in exponent(), y in exponent()) {
        let map = BTreeMap::from([(Symbol::new("lambda"), x), (Symbol::new("mu"), y)]);
        prop_assert_eq!((&a * &b).substitute(&map), &a.substitute(&map) * &b.substitute(&map));
    }

    #[test]
    fn monomials_invert(m in monomial()) {
        prop_assert!((&m * &m.invert().unwrap()).is_one());
    }

    #[test]
    fn text_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn kron_is_associative(a in matrix2(), b in matrix2(), c in matrix2()) {
        prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
    }

    #[test]
    fn matmul_is_associative(a in matrix2(), b in matrix2(), c in matrix2()) {
        let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
        prop_assert_eq!(left, a.matmul(&b.matmul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.kron(&b).matmul(&c.kron(&a)).unwrap(), a.matmul(&c).unwrap().kron(&b.matmul(&a).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rho_is_multiplicative(u in dual_expr(), v in dual_expr()) {
        prop_assert_eq!(rho_eval(&u.mul(&v)), rho_eval(&u).matmul(&rho_eval(&v)).unwrap());
    }

    #[test]
    fn dual_normal_form_is_idempotent_and_rho_invariant(u in dual_expr()) {
        let n = u.normal_form();
        prop_assert_eq!(n.normal_form(), n.clone());
        prop_assert_eq!(rho_eval(&n), rho_eval(&u));
    }

    #[test]
    fn group_normal_form_is_idempotent(x in word(), y in word()) {
        let rs = rewrite();
        let p = x.add(&y);
        let n = rs.normal_form(&p).unwrap();
        prop_assert_eq!(rs.normal_form(&n).unwrap(), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn one_form_pushing_is_associative_and_closed(x in word(), y in word(), k in 0usize..4) {
        let calc = calculus();
        let rs = rewrite();
        let form = OneForm::from_index(k);
        let omega = GammaElement::single(form, NCPoly::one());
        let twice = calc.right_mul(&calc.right_mul(&omega, &x).unwrap(), &y).unwrap();
        let once = calc.right_mul(&omega, &x.mul(&y)).unwrap();
        prop_assert_eq!(&twice, &once);
        let n = once.normal_form(rs).unwrap();
        prop_assert_eq!(n.normal_form(rs).unwrap(), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exit_code_contract(statuses in prop::collection::vec(status(), 0..12)) {
        let r = report(&statuses);
        let gating = statuses.contains(&Status::Fail);
        prop_assert_eq!(r.exit_code(), i32::from(gating));
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        prop_assert_eq!(back, r);
    }
}

#[test]
fn injected_failures_flip_the_exit_code() {
    let base = run_suite(Suite::Ybe, &SuiteConfig::default());
    assert_eq!(base.exit_code(), 0);
    for i in 0..base.checks.len() {
        let mut r = base.clone();
        r.checks[i].status = Status::Fail;
        assert_eq!(r.exit_code(), 1);
        r.checks[i].status = Status::Reported;
        assert_eq!(r.exit_code(), 0);
    }
}
