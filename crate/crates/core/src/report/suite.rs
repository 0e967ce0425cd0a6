//! Check registry, suite orchestration and report emission.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::SuiteConfig;
use crate::calculus::tables::{colour_blind, compare_tables, render_text, TableKind};
use crate::calculus::{Calculus, GammaElement, OneForm};
use crate::dual::checks::{
    bialgebra_consistency, cb_relation_residual, commutator_residuals, dual_hopf_residuals, exchange_residuals,
    pairing_compatibility, pairing_well_defined, Named,
};
use crate::dual::functionals::{l_pairing_residual, rll_residual};
use crate::dual::{ColourPair, Units};
use crate::frt::hopf::{
    antipode_residuals, coproduct, counit, counit_on_leg, group_like_residual, solve_det_exponent, Antipode, Localized,
    QuantumDet,
};
use crate::frt::relations::{canonical_span, exchange_words, expand_rtt, palette_relations, standard_relations};
use crate::frt::{GroupAlgebra, Letter, NCPoly, Palette, PaletteColour, RewriteSystem, Word};
use crate::linalg::Matrix;
use crate::rmatrix::{check_braided_ybe, check_cqybe, Sign};
use crate::scalar::{Exponent, QValue, Rat, Scalar, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ybe,
    Rtt,
    Hopf,
    Duality,
    Rll,
    Calculus,
    All,
}

impl Suite {
    pub const MODULES: [Suite; 6] = [Suite::Ybe, Suite::Rtt, Suite::Hopf, Suite::Duality, Suite::Rll, Suite::Calculus];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ybe => "ybe",
            Suite::Rtt => "rtt",
            Suite::Hopf => "hopf",
            Suite::Duality => "duality",
            Suite::Rll => "rll",
            Suite::Calculus => "calculus",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::MODULES
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Reported,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "REPORTED",
        }
    }
}

/// Whether a check gates the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Pass,
    Reported,
}

/// A residual evaluated at one numeric point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Specialized {
    pub q: String,
    pub nonzero: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub anchor: String,
    pub residual_terms: usize,
    pub ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub specialized: Vec<Specialized>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub config_hash: String,
    pub checks: Vec<CheckRecord>,
    /// Generated calculus tables in text layout, when the calculus ran.
    #[serde(skip)]
    pub tables: Option<String>,
}

impl VerificationReport {
    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// `0` iff no gating check failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.checks.iter().any(|c| c.status == Status::Fail))
    }

    /// Copy with timing fields zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> VerificationReport {
        let mut out = self.clone();
        for c in &mut out.checks {
            c.ms = 0;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite: {}\nconfig: {}\n", self.suite, self.config_hash);
        for c in &self.checks {
            out.push_str(&format!(
                "{:<9} {:<36} terms={:<5} {:>6}ms  {}\n",
                c.status.label(),
                c.id,
                c.residual_terms,
                c.ms,
                c.anchor
            ));
            for d in &c.details {
                out.push_str(&format!("    {d}\n"));
            }
            for s in &c.specialized {
                let tail = s.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default();
                out.push_str(&format!("    q = {}: {} nonzero{tail}\n", s.q, s.nonzero));
            }
        }
        if let Some(t) = &self.tables {
            out.push('\n');
            out.push_str(t);
        }
        let fails = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        out.push_str(&format!("\n{} checks, {} failed\n", self.checks.len(), fails));
        out
    }
}

/// Result of running one check body.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    /// Whether the residual vanishes (or, for negative controls, whether it does not).
    pub ok: bool,
    pub residual_terms: usize,
    pub details: Vec<String>,
    /// Residual scalars for numeric specialization.
    pub residuals: Vec<Scalar>,
}

const MAX_DETAILS: usize = 24;

impl Outcome {
    fn push_detail(&mut self, d: String) {
        if self.details.len() < MAX_DETAILS {
            self.details.push(d);
        }
    }

    fn note(mut self, d: impl Into<String>) -> Self {
        self.details.insert(0, d.into());
        self
    }

    /// Vanishing matrices; details list the nonzero entries.
    pub fn matrices(items: &[Named<Matrix<Scalar>>]) -> Outcome {
        let mut out = Outcome { ok: true, ..Outcome::default() };
        for n in items {
            for (i, j, v) in n.residual.entries() {
                if !v.is_zero() {
                    out.ok = false;
                    out.residual_terms += v.len();
                    out.push_detail(format!("{} ({i},{j}): {v}", n.name));
                    out.residuals.push(v.clone());
                }
            }
        }
        out
    }

    /// Vanishing scalars.
    pub fn scalars(items: &[Named<Scalar>]) -> Outcome {
        let mut out = Outcome { ok: true, ..Outcome::default() };
        for n in items {
            if !n.residual.is_zero() {
                out.ok = false;
                out.residual_terms += n.residual.len();
                out.push_detail(format!("{}: {}", n.name, n.residual));
                out.residuals.push(n.residual.clone());
            }
        }
        out
    }

    /// Vanishing polynomials; `fmt` renders a nonzero one.
    pub fn polys(items: &[Named<NCPoly>], fmt: impl Fn(&NCPoly) -> String) -> Outcome {
        let mut out = Outcome { ok: true, ..Outcome::default() };
        for n in items {
            if !n.residual.is_zero() {
                out.ok = false;
                out.residual_terms += n.residual.scalar_terms();
                out.push_detail(format!("{}: {}", n.name, fmt(&n.residual)));
                out.residuals.extend(n.residual.terms().map(|(_, c)| c.clone()));
            }
        }
        out
    }

    /// Negative control: passes when the residual does not vanish.
    fn inverted(mut self) -> Outcome {
        self.ok = !self.ok;
        self.residuals.clear();
        self
    }
}

/// Shared, lazily built inputs of one run.
pub struct Context {
    pub cfg: SuiteConfig,
    pub palette: Palette,
    pub alg: Arc<GroupAlgebra>,
    rs: OnceLock<Result<RewriteSystem, String>>,
    calc: OnceLock<Calculus>,
}

impl Context {
    pub fn new(cfg: SuiteConfig) -> Self {
        let palette = cfg.palette();
        let alg = Arc::new(GroupAlgebra::new(palette.clone(), cfg.order));
        Context { cfg, palette, alg, rs: OnceLock::new(), calc: OnceLock::new() }
    }

    pub fn rewrite_system(&self) -> Result<&RewriteSystem, String> {
        self.rs
            .get_or_init(|| {
                let rels = palette_relations(&self.alg);
                RewriteSystem::from_relations(self.alg.clone(), &rels, self.cfg.budget()).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn calculus(&self) -> &Calculus {
        self.calc.get_or_init(|| Calculus::new((*self.alg).clone(), &Units::default()))
    }

    fn units(&self) -> Units {
        self.cfg.units().expect("validated")
    }

    fn colours(&self) -> ColourPair {
        ColourPair::from_palette(&self.palette)
    }

    fn is_symbolic(&self) -> bool {
        self.palette.colours().iter().any(|c| !c.value.is_constant())
    }

    /// Three colour values for the Yang–Baxter checks: the palette, padded with a fresh
    /// symbol when it is symbolic and by repetition otherwise.
    fn three_colours(&self) -> [Exponent; 3] {
        let mut v: Vec<Exponent> = self.palette.colours().iter().map(|c| c.value.clone()).collect();
        let fresh = ["nu", "kappa", "theta"];
        let mut k = 0;
        while v.len() < 3 {
            if self.is_symbolic() {
                while self.palette.index_of(fresh[k]).is_some() {
                    k += 1;
                }
                v.push(Exponent::symbol(fresh[k]));
                k += 1;
            } else {
                v.push(v.last().expect("nonempty").clone());
            }
        }
        [v[0].clone(), v[1].clone(), v[2].clone()]
    }
}

type Body = Box<dyn Fn(&Context) -> Result<Outcome, String> + Send + Sync>;

pub struct CheckSpec {
    pub id: String,
    pub anchor: &'static str,
    pub expect: Expect,
    body: Body,
}

fn entry(
    id: impl Into<String>,
    anchor: &'static str,
    expect: Expect,
    body: impl Fn(&Context) -> Result<Outcome, String> + Send + Sync + 'static,
) -> CheckSpec {
    CheckSpec { id: id.into(), anchor, expect, body: Box::new(body) }
}

fn named<T>(name: impl Into<String>, residual: T) -> Named<T> {
    Named { name: name.into(), residual }
}

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn ybe_checks() -> Vec<CheckSpec> {
    vec![
        entry("ybe.cqybe", "coloured quantum Yang-Baxter equation", Expect::Pass, |cx| {
            let [a, b, c] = cx.three_colours();
            Ok(Outcome::matrices(&[named(format!("R12 R13 R23 ({a}, {b}, {c})"), check_cqybe(&a, &b, &c))]))
        }),
        entry("ybe.braided", "braided coloured Yang-Baxter equation", Expect::Pass, |cx| {
            let [a, b, c] = cx.three_colours();
            Ok(Outcome::matrices(&[named(format!("braid ({a}, {b}, {c})"), check_braided_ybe(&a, &b, &c))]))
        }),
    ]
}

fn rtt_checks(palette: &Palette) -> Vec<CheckSpec> {
    let mut out = vec![
        entry("rtt.colourless-standard", "RTT relations, colourless limit", Expect::Pass, |cx| {
            let alg = GroupAlgebra::new(with_values(&cx.palette, |_| Exponent::zero()), cx.cfg.order);
            let mut items = Vec::new();
            for c in 0..alg.palette().len() {
                let got = canonical_span(&alg, &expand_rtt(&alg, c, c)).map_err(err)?;
                let want = canonical_span(&alg, &standard_relations(&alg, c)).map_err(err)?;
                let diff = got.len().abs_diff(want.len()) + got.iter().filter(|r| !want.contains(r)).count();
                items.push(named(
                    format!("colour {}: {} relations vs six standard", alg.palette().name(c), got.len()),
                    Scalar::int(diff as i64),
                ));
            }
            Ok(Outcome::scalars(&items))
        }),
        entry("rtt.rule-count", "RTT relations, independent rules", Expect::Pass, |cx| {
            let n = cx.palette.len();
            let want = 6 * n + 8 * n * (n - 1);
            let got = cx.rewrite_system()?.rules().len();
            let mut o = Outcome::scalars(&[named("rules - expected", Scalar::int(got as i64 - want as i64))]);
            o.details.push(format!("{got} rules for {n} colours"));
            Ok(o)
        }),
        entry("rtt.confluence", "RTT relations, overlap resolution", Expect::Pass, |cx| {
            let rs = cx.rewrite_system()?;
            let depth = if cx.palette.len() > 2 { cx.cfg.confluence_depth.min(3) } else { cx.cfg.confluence_depth };
            let bad = rs.confluence_probe(depth).map_err(err)?;
            let items: Vec<Named<NCPoly>> = bad
                .into_iter()
                .map(|o| named(format!("overlap {}", cx.alg.format_word(&o.word)), o.difference))
                .collect();
            Ok(Outcome::polys(&items, |p| cx.alg.format_poly(p)).note(format!("overlaps up to length {depth}")))
        }),
    ];
    if palette.len() >= 2 {
        out.push(entry(
            "rtt.exchange-symmetry",
            "RTT relations map to the exchanged colours (-mu, -lambda)",
            Expect::Pass,
            |cx| {
                let alg = &cx.alg;
                let image = GroupAlgebra::new(
                    with_values(&cx.palette, |c| match c {
                        0 => -cx.palette.value(1),
                        1 => -cx.palette.value(0),
                        _ => cx.palette.value(c).clone(),
                    }),
                    cx.cfg.order,
                );
                let ex: Vec<NCPoly> = expand_rtt(alg, 0, 1).iter().map(|r| exchange_words(alg, r, 0, 1)).collect();
                let span = canonical_span(&image, &expand_rtt(&image, 0, 1)).map_err(err)?;
                let other = canonical_span(&image, &ex).map_err(err)?;
                let diff = other.iter().filter(|r| !span.contains(r)).count();
                Ok(Outcome::scalars(&[named("rules outside the original span", Scalar::int(diff as i64))]))
            },
        ));
    }
    out
}

fn dets(cx: &Context) -> Result<Vec<QuantumDet>, String> {
    let rs = cx.rewrite_system()?;
    (0..cx.palette.len())
        .map(|c| solve_det_exponent(rs, c).map(|e| QuantumDet::with_exponent(&cx.alg, c, e)).map_err(err))
        .collect()
}

fn antipode_outcome(cx: &Context, printed: bool) -> Result<Outcome, String> {
    let rs = cx.rewrite_system()?;
    let loc = Localized::new(rs, dets(cx)?).map_err(err)?;
    let mut items = Vec::new();
    for c in 0..cx.palette.len() {
        let ap = if printed { Antipode::printed(&cx.alg, c) } else { Antipode::solve(rs, c).map_err(err)? };
        for left in [true, false] {
            for ((i, j), r) in antipode_residuals(&cx.alg, &ap, left) {
                let num = loc.numerator(&r).map_err(err)?;
                let side = if left { "S(T)T" } else { "TS(T)" };
                items.push(named(format!("{side}[{i}{j}] colour {}", cx.palette.name(c)), num));
            }
        }
    }
    Ok(Outcome::polys(&items, |p| cx.alg.format_poly(p)))
}

fn hopf_checks(palette: &Palette) -> Vec<CheckSpec> {
    let mut out = vec![
        entry("hopf.coproduct", "group coproduct respects the relations", Expect::Pass, |cx| {
            let rs = cx.rewrite_system()?;
            let mut o = Outcome { ok: true, ..Outcome::default() };
            for r in rs.rules() {
                let t = rs.tensor_normal_form(&coproduct(&cx.alg, &r.relation())).map_err(err)?;
                if !t.is_zero() {
                    o.ok = false;
                    o.residual_terms += t.scalar_terms();
                    o.push_detail(format!("Δ({}) = {}", cx.alg.format_word(&r.lead), cx.alg.format_tensor(&t)));
                    o.residuals.extend(t.terms().map(|(_, c)| c.clone()));
                }
            }
            Ok(o)
        }),
        entry("hopf.counit", "group counit axioms", Expect::Pass, |cx| {
            let rs = cx.rewrite_system()?;
            let mut items = Vec::new();
            for r in rs.rules() {
                let v = NCPoly::scalar(counit(&cx.alg, &r.relation()));
                items.push(named(format!("ε({})", cx.alg.format_word(&r.lead)), v));
            }
            for id in cx.alg.generator_ids() {
                let g = NCPoly::word(Word::from_slice(&[id]));
                let d = coproduct(&cx.alg, &g);
                for leg in 0..2 {
                    let back = counit_on_leg(&cx.alg, &d, leg).sub(&g);
                    items.push(named(format!("(ε leg {leg})Δ({})", cx.alg.letter_name(id)), back));
                }
            }
            Ok(Outcome::polys(&items, |p| cx.alg.format_poly(p)))
        }),
        entry("hopf.det-group-like", "quantum determinant is group-like", Expect::Pass, |cx| {
            let rs = cx.rewrite_system()?;
            let mut o = Outcome { ok: true, ..Outcome::default() };
            for d in dets(cx)? {
                let r = group_like_residual(rs, &d).map_err(err)?;
                o.details.push(format!("D_{} = a d - q^({}) c b", cx.palette.name(d.colour), d.exponent));
                if !r.is_zero() {
                    o.ok = false;
                    o.residual_terms += r.scalar_terms();
                    o.residuals.extend(r.terms().map(|(_, c)| c.clone()));
                }
            }
            Ok(o)
        }),
        entry("hopf.det-printed", "quantum determinant with the textbook exponent", Expect::Reported, |cx| {
            let rs = cx.rewrite_system()?;
            let mut o = Outcome { ok: true, ..Outcome::default() };
            for c in 0..cx.palette.len() {
                let d = QuantumDet::printed(&cx.alg, c);
                let r = group_like_residual(rs, &d).map_err(err)?;
                if !r.is_zero() {
                    o.ok = false;
                    o.residual_terms += r.scalar_terms();
                    o.push_detail(format!("Δ(D_{}) - D⊗D = {}", cx.palette.name(c), cx.alg.format_tensor(&r)));
                }
            }
            Ok(o)
        }),
        entry("hopf.antipode", "antipode axioms in the localized algebra", Expect::Pass, |cx| {
            antipode_outcome(cx, false)
        }),
        entry("hopf.antipode-printed", "antipode with the textbook exponents", Expect::Reported, |cx| {
            antipode_outcome(cx, true).map(|mut o| {
                o.residuals.clear();
                o
            })
        }),
    ];
    if palette.len() >= 2 {
        let generic = !palette.value(0).is_zero();
        out.push(entry(
            "hopf.det-noncentral",
            "quantum determinant is not central",
            if generic { Expect::Pass } else { Expect::Reported },
            |cx| {
                let rs = cx.rewrite_system()?;
                let d = &dets(cx)?[0];
                let b = cx.alg.gen(Letter::B, 1);
                let comm = rs.normal_form(&d.poly.mul(&b).sub(&b.mul(&d.poly))).map_err(err)?;
                let o = Outcome::polys(
                    &[named(format!("[D_{}, b_{}]", cx.palette.name(0), cx.palette.name(1)), comm)],
                    |p| cx.alg.format_poly(p),
                );
                Ok(o.inverted())
            },
        ));
    }
    out
}

fn duality_checks() -> Vec<CheckSpec> {
    vec![
        entry("duality.l-pairing", "L functionals pair with T to give R+ and R-", Expect::Pass, |cx| {
            let cp = cx.colours();
            let units = cx.units();
            let mut items = Vec::new();
            for sign in [Sign::Plus, Sign::Minus] {
                for (c, tag) in [(cp.lambda_index, "lambda"), (cp.mu_index, "mu")] {
                    let r = l_pairing_residual(sign, c, &cp, &units).map_err(err)?;
                    let s = if sign == Sign::Plus { "+" } else { "-" };
                    items.push(named(format!("L{s}_{tag}"), r));
                }
            }
            Ok(Outcome::matrices(&items))
        }),
        entry("duality.well-defined", "pairing annihilates the RTT relations", Expect::Pass, |cx| {
            let rels = palette_relations(&cx.alg);
            let w =
                pairing_well_defined(&cx.alg, &rels, cx.cfg.pairing_depth, cx.cfg.pairing_convention).map_err(err)?;
            let items: Vec<Named<Scalar>> = w
                .failures
                .iter()
                .map(|f| named(format!("<{}, {}>", f.dual, cx.alg.format_poly(&rels[f.relation])), f.value.clone()))
                .collect();
            Ok(Outcome::scalars(&items).note(format!("{} of {} pairings nonzero", w.failures.len(), w.checked)))
        }),
        entry("duality.commutators", "dual commutators under the spin-1/2 representation", Expect::Pass, |cx| {
            Ok(Outcome::matrices(&commutator_residuals(&cx.colours())))
        }),
        entry("duality.exchange", "dual exchange relations under the spin-1/2 representation", Expect::Pass, |cx| {
            Ok(Outcome::matrices(&exchange_residuals(&cx.colours())))
        }),
        entry("duality.dual-hopf", "dual antipode and counit axioms", Expect::Pass, |cx| {
            let items: Vec<Named<Matrix<Scalar>>> = dual_hopf_residuals(cx.palette.len())
                .into_iter()
                .map(|n| {
                    let zero = n.residual.is_zero();
                    named(n.name, Matrix::from_fn(1, 1, |_, _| Scalar::int(i64::from(!zero))))
                })
                .collect();
            Ok(Outcome::matrices(&items))
        }),
        entry("duality.coproduct-pairing", "dual coproduct is compatible with products", Expect::Pass, |cx| {
            Ok(Outcome::scalars(&pairing_compatibility(&cx.alg, cx.cfg.pairing_convention).map_err(err)?))
        }),
        entry("duality.bialgebra", "dual products are compatible with the group coproduct", Expect::Pass, |cx| {
            Ok(Outcome::scalars(&bialgebra_consistency(&cx.alg, cx.cfg.pairing_convention).map_err(err)?))
        }),
        entry(
            "duality.cb-relation",
            "C_lambda B_mu relation under the spin-1/2 representation",
            Expect::Reported,
            |cx| Ok(Outcome::matrices(&[named("(q - q^-1)(lhs - rhs)", cb_relation_residual(&cx.colours()))])),
        ),
    ]
}

fn rll_checks(cfg: &SuiteConfig) -> Vec<CheckSpec> {
    cfg.rll()
        .into_iter()
        .map(|v| {
            entry(format!("rll.{}", v.id()), "RLL relations", Expect::Reported, move |cx| {
                let r = rll_residual(v, &cx.colours(), &cx.units());
                Ok(Outcome::matrices(&[named(v.id(), r)]))
            })
        })
        .collect()
}

fn table_check(kind: TableKind) -> CheckSpec {
    let id = format!("calculus.{}", kind.name());
    let anchor = match kind {
        TableKind::Omega => "one-form commutation table",
        TableKind::Chi => "vector field table",
        TableKind::Convolution => "left convolution table",
        TableKind::Derivative => "exterior derivative of the generators",
    };
    entry(id, anchor, Expect::Pass, move |cx| {
        let calc = cx.calculus();
        let mut o = Outcome { ok: true, ..Outcome::default() };
        let mut compared = 0;
        for c in 0..cx.palette.len().min(2) {
            for row in compare_tables(calc, c).map_err(err)? {
                if row.table != kind {
                    continue;
                }
                compared += 1;
                if !row.matches {
                    o.ok = false;
                    o.residual_terms += 1;
                    o.push_detail(format!("{}: printed {} | generated {}", row.lhs, row.printed, row.generated));
                }
            }
        }
        Ok(o.note(format!("{compared} entries compared")))
    })
}

fn generator_polys(alg: &GroupAlgebra) -> Vec<NCPoly> {
    alg.generator_ids().into_iter().map(|id| NCPoly::word(Word::from_slice(&[id]))).collect()
}

fn leibniz_outcome(cx: &Context, calc: &Calculus, first_only: bool) -> Result<Outcome, String> {
    let rs = cx.rewrite_system()?;
    let gens = generator_polys(&cx.alg);
    let xs: Vec<&NCPoly> = if first_only { gens.iter().take(1).collect() } else { gens.iter().collect() };
    let pairs: Vec<(&NCPoly, &NCPoly)> = xs.iter().flat_map(|x| gens.iter().map(move |y| (*x, y))).collect();
    let residuals: Vec<Result<GammaElement, String>> =
        pairs.par_iter().map(|(x, y)| calc.leibniz_residual(rs, x, y).map_err(err)).collect();
    let mut o = Outcome { ok: true, ..Outcome::default() };
    let mut bad = 0;
    for ((x, y), r) in pairs.iter().zip(residuals) {
        let r = r?;
        if !r.is_zero() {
            bad += 1;
            o.ok = false;
            o.residual_terms += r.scalar_terms();
            let name = format!("{} {}", cx.alg.format_poly(x), cx.alg.format_poly(y));
            o.push_detail(format!("{name}: {}", r.format(&cx.alg)));
            for f in OneForm::ALL {
                o.residuals.extend(r.coeff(f).terms().map(|(_, c)| c.clone()));
            }
        }
    }
    Ok(o.note(format!("{bad} of {} pairs nonzero", pairs.len())))
}

fn calculus_checks() -> Vec<CheckSpec> {
    let mut out: Vec<CheckSpec> = TableKind::ALL.into_iter().map(table_check).collect();
    out.push(entry("calculus.colour-blind", "one-form table is colour independent", Expect::Pass, |cx| {
        let ok = colour_blind(cx.calculus());
        Ok(Outcome::scalars(&[named("colour dependent coefficients", Scalar::int(i64::from(!ok)))]))
    }));
    out.push(entry("calculus.leibniz", "exterior derivative obeys the Leibniz rule", Expect::Pass, |cx| {
        leibniz_outcome(cx, cx.calculus(), false)
    }));
    out.push(entry("calculus.leibniz-control", "Leibniz rule detects a corrupted table", Expect::Pass, |cx| {
        let base = cx.calculus();
        let entry = base.omega_commute(Letter::A, 0, OneForm::W1).clone();
        let bad = entry.map(|p| p.scale(&Scalar::q()));
        let corrupted = base.clone().with_omega(Letter::A, 0, OneForm::W1, bad);
        Ok(leibniz_outcome(cx, &corrupted, true)?.inverted())
    }));
    out
}

/// Checks of one suite in registry order.
pub fn registry(suite: Suite, cfg: &SuiteConfig) -> Vec<CheckSpec> {
    let palette = cfg.palette();
    match suite {
        Suite::Ybe => ybe_checks(),
        Suite::Rtt => rtt_checks(&palette),
        Suite::Hopf => hopf_checks(&palette),
        Suite::Duality => duality_checks(),
        Suite::Rll => rll_checks(cfg),
        Suite::Calculus => calculus_checks(),
        Suite::All => Suite::MODULES.iter().flat_map(|s| registry(*s, cfg)).collect(),
    }
}

pub fn config_hash(cfg: &SuiteConfig) -> String {
    let json = serde_json::to_string(cfg).expect("config serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

fn specialize_all(cx: &Context, residuals: &[Scalar]) -> Vec<Specialized> {
    let mut out = Vec::new();
    for (q, syms) in cx.cfg.specializations() {
        let mut values: BTreeMap<Symbol, Rat> = BTreeMap::new();
        for s in ["cp", "cm"] {
            values.insert(Symbol::new(s), Rat::from_integer(0));
        }
        values.extend(syms);
        let qv = QValue::Exact(num_rational::BigRational::new((*q.numer()).into(), (*q.denom()).into()));
        let mut rec = Specialized { q: q.to_string(), nonzero: 0, error: None };
        for r in residuals {
            match r.specialize(&qv, &values) {
                Ok(v) if v.as_f64() == 0.0 => {}
                Ok(_) => rec.nonzero += 1,
                Err(e) => {
                    rec.error = Some(e.to_string());
                    break;
                }
            }
        }
        out.push(rec);
    }
    out
}

fn run_one(cx: &Context, s: &CheckSpec) -> CheckRecord {
    let start = Instant::now();
    let outcome = (s.body)(cx);
    let ms = start.elapsed().as_millis() as u64;
    let (status, residual_terms, details, specialized) = match outcome {
        Ok(o) => {
            let status = match (s.expect, o.ok) {
                (Expect::Reported, _) => Status::Reported,
                (Expect::Pass, true) => Status::Pass,
                (Expect::Pass, false) => Status::Fail,
            };
            let mut details = o.details;
            if s.expect == Expect::Reported {
                let verdict = if o.ok { "residual vanishes" } else { "residual nonzero" };
                details.insert(0, verdict.into());
            }
            (status, o.residual_terms, details, specialize_all(cx, &o.residuals))
        }
        Err(e) => (Status::Fail, 0, vec![format!("error: {e}")], Vec::new()),
    };
    CheckRecord { id: s.id.clone(), status, anchor: s.anchor.into(), residual_terms, ms, details, specialized }
}

/// Runs a suite; checks run concurrently and are reported in registry order.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> VerificationReport {
    let cx = Context::new(cfg.clone());
    run_in(suite, &cx)
}

/// Runs only the checks of `suite` whose id satisfies `keep`.
pub fn run_filtered(suite: Suite, cfg: &SuiteConfig, keep: &dyn Fn(&str) -> bool) -> VerificationReport {
    let cx = Context::new(cfg.clone());
    let specs: Vec<CheckSpec> = registry(suite, cfg).into_iter().filter(|s| keep(&s.id)).collect();
    let checks = specs.par_iter().map(|s| run_one(&cx, s)).collect();
    VerificationReport { suite: suite.name().into(), config_hash: config_hash(cfg), checks, tables: None }
}

fn run_in(suite: Suite, cx: &Context) -> VerificationReport {
    let specs = registry(suite, &cx.cfg);
    let checks: Vec<CheckRecord> = specs.par_iter().map(|s| run_one(cx, s)).collect();
    let tables = if matches!(suite, Suite::Calculus | Suite::All) { render_text(cx.calculus(), 0).ok() } else { None };
    VerificationReport { suite: suite.name().into(), config_hash: config_hash(&cx.cfg), checks, tables }
}

/// The configuration with every palette colour set to `value`.
pub fn limit_config(cfg: &SuiteConfig, value: &str) -> SuiteConfig {
    let mut out = cfg.clone();
    out.colours = cfg.palette.iter().map(|n| (n.clone(), value.to_string())).collect();
    out
}

/// One-colour palette at colour zero, named after the first configured colour.
pub fn classical_config(cfg: &SuiteConfig) -> SuiteConfig {
    let mut out = cfg.clone();
    out.palette = vec![cfg.palette[0].clone()];
    out.colours = BTreeMap::from([(cfg.palette[0].clone(), "0".to_string())]);
    out
}

fn gating_failures(r: &VerificationReport) -> Vec<String> {
    r.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.id.clone()).collect()
}

/// Colourless and monochromatic re-runs of every suite.
pub fn run_limits(cfg: &SuiteConfig) -> VerificationReport {
    let mut checks = Vec::new();
    let flat = Context::new(limit_config(cfg, "0"));
    let classical = Context::new(classical_config(cfg));
    let mono = Context::new(limit_config(cfg, "c"));
    for suite in Suite::MODULES {
        let start = Instant::now();
        let a = run_in(suite, &flat);
        let b = run_in(suite, &classical);
        let mut details = Vec::new();
        for id in gating_failures(&a) {
            details.push(format!("colourless palette: {id} failed"));
        }
        for id in gating_failures(&b) {
            details.push(format!("one-colour palette: {id} failed"));
        }
        for ca in &a.checks {
            if let Some(cb) = b.check(&ca.id) {
                if ca.status != cb.status {
                    details.push(format!("{}: {:?} vs {:?}", ca.id, ca.status, cb.status));
                }
            }
        }
        if a.tables != b.tables {
            details.push("generated tables differ".into());
        }
        checks.push(CheckRecord {
            id: format!("limits.colourless.{suite}"),
            status: if details.is_empty() { Status::Pass } else { Status::Fail },
            anchor: "colourless limit agrees with the one-colour classical group".into(),
            residual_terms: details.len(),
            ms: start.elapsed().as_millis() as u64,
            details,
            specialized: Vec::new(),
        });
    }
    for suite in Suite::MODULES {
        let start = Instant::now();
        let r = run_in(suite, &mono);
        let mut details: Vec<String> = gating_failures(&r).into_iter().map(|id| format!("{id} failed")).collect();
        for c in &r.checks {
            let reported_nonzero = c.status == Status::Reported
                && (c.id.starts_with("rll.") || c.id == "duality.cb-relation")
                && c.residual_terms > 0;
            if reported_nonzero {
                details.push(format!("{} does not vanish", c.id));
            }
        }
        checks.push(CheckRecord {
            id: format!("limits.monochromatic.{suite}"),
            status: if details.is_empty() { Status::Pass } else { Status::Fail },
            anchor: "monochromatic limit passes every check".into(),
            residual_terms: details.len(),
            ms: start.elapsed().as_millis() as u64,
            details,
            specialized: Vec::new(),
        });
    }
    VerificationReport { suite: "limits".into(), config_hash: config_hash(cfg), checks, tables: None }
}

fn with_values(p: &Palette, value: impl Fn(usize) -> Exponent) -> Palette {
    Palette::new((0..p.len()).map(|c| PaletteColour { name: p.name(c).to_string(), value: value(c) }).collect())
}

/// Palette whose colours carry the given values, for numeric re-runs.
pub fn numeric_palette(names: &[&str], values: &[Rat]) -> Palette {
    Palette::new(
        names
            .iter()
            .zip(values)
            .map(|(n, v)| PaletteColour { name: n.to_string(), value: Exponent::rational(*v) })
            .collect(),
    )
}
