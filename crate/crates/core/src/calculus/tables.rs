//! The printed one-form, vector-field, convolution and derivative tables, and their
//! comparison with the generated calculus.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{Calculus, CalculusError, GammaElement, OneForm};
use crate::frt::{GroupAlgebra, Letter, NCPoly, Word};
use crate::parse::parse_scalar;
use crate::scalar::{Exponent, Scalar, Symbol};

use Letter::{A, B, C, D};
use OneForm::{Minus, Plus, W1, W2};

/// `coefficient · generator · one-form`; generators share the colour of the table row.
type Term = (&'static str, Letter, OneForm);

const DIAG_1: &str = "s*q^(-2 + 2*(lambda - mu)) - 1";
const DIAG_2: &str = "s*q^(-2 + 2*(mu - lambda)) - 1";
const MIXED: &str = "s*(q^(-1) - q)^2 + s - 1";
const UP: &str = "s*(q^(-1) - q)*q^(lambda + mu)";
const DOWN: &str = "s*(q^(-1) - q)*q^(-(lambda + mu))";

/// `ω^form · g = Σ terms`.
pub const OMEGA: [(Letter, OneForm, &[Term]); 16] = [
    (A, W1, &[("s*q^(-2 + 2*(lambda - mu))", A, W1)]),
    (A, Plus, &[("s*q^(-1 + 2*lambda)", A, Plus)]),
    (A, Minus, &[("s*q^(-1 - 2*mu)", A, Minus), ("s*(q^(-2) - 1)*q^(lambda - mu)", B, W1)]),
    (A, W2, &[("s", A, W2), (UP, B, Plus)]),
    (B, W1, &[("s", B, W1)]),
    (B, Plus, &[("s*q^(-1 + 2*mu)", B, Plus), ("s*(q^(-2) - 1)*q^(lambda - mu)", A, W1)]),
    (B, Minus, &[("s*q^(-1 - 2*lambda)", B, Minus)]),
    (B, W2, &[("s*q^(-2 + 2*(mu - lambda))", B, W2), (DOWN, A, Minus), ("s*(q^(-1) - q)^2", B, W1)]),
    (C, W1, &[("s*q^(-2 + 2*(lambda - mu))", C, W1)]),
    (C, Plus, &[("s*q^(-1 + 2*lambda)", C, Plus)]),
    (C, Minus, &[("s*q^(-1 - 2*mu)", C, Minus), ("s*(q^(-2) - 1)*q^(lambda - mu)", D, W1)]),
    (C, W2, &[("s", C, W2), (UP, D, Plus)]),
    (D, W1, &[("s", D, W1)]),
    (D, Plus, &[("s*q^(-1 + 2*mu)", D, Plus), ("s*(q^(-2) - 1)*q^(lambda - mu)", C, W1)]),
    (D, Minus, &[("s*q^(-1 - 2*lambda)", D, Minus)]),
    (D, W2, &[("s*q^(-2 + 2*(mu - lambda))", D, W2), (DOWN, C, Minus), ("s*(q^(-1) - q)^2", D, W1)]),
];

/// `χ_form(g)`.
pub const CHI: [(OneForm, Letter, &str); 16] = [
    (W1, A, DIAG_1),
    (W1, B, "0"),
    (W1, C, "0"),
    (W1, D, MIXED),
    (Plus, A, "0"),
    (Plus, B, "0"),
    (Plus, C, DOWN),
    (Plus, D, "0"),
    (Minus, A, "0"),
    (Minus, B, DOWN),
    (Minus, C, "0"),
    (Minus, D, "0"),
    (W2, A, "s - 1"),
    (W2, B, "0"),
    (W2, C, "0"),
    (W2, D, DIAG_2),
];

/// One convolution row: form, generator and the printed result.
pub type ConvolutionRow = (OneForm, Letter, Option<(&'static str, Letter)>);

/// `χ_form ∗ g = coefficient · generator`, or zero.
pub const CONVOLUTION: [ConvolutionRow; 16] = [
    (W1, A, Some((DIAG_1, A))),
    (W1, B, Some((MIXED, B))),
    (W1, C, Some((DIAG_1, C))),
    (W1, D, Some((MIXED, D))),
    (Plus, A, Some((UP, B))),
    (Plus, B, None),
    (Plus, C, Some((UP, D))),
    (Plus, D, None),
    (Minus, A, None),
    (Minus, B, Some((DOWN, A))),
    (Minus, C, None),
    (Minus, D, Some((DOWN, C))),
    (W2, A, Some(("s - 1", A))),
    (W2, B, Some((DIAG_2, B))),
    (W2, C, Some(("s - 1", C))),
    (W2, D, Some((DIAG_2, D))),
];

/// `d g = Σ terms`.
pub const DERIVATIVE: [(Letter, &[Term]); 4] = [
    (A, &[(DIAG_1, A, W1), (UP, B, Plus), ("s - 1", A, W2)]),
    (B, &[(MIXED, B, W1), (DOWN, A, Minus), (DIAG_2, B, W2)]),
    (C, &[(DIAG_1, C, W1), (UP, D, Plus), ("s - 1", C, W2)]),
    (D, &[(MIXED, D, W1), (DOWN, C, Minus), (DIAG_2, D, W2)]),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    Omega,
    Chi,
    Convolution,
    Derivative,
}

impl TableKind {
    pub const ALL: [TableKind; 4] = [TableKind::Omega, TableKind::Chi, TableKind::Convolution, TableKind::Derivative];

    pub fn name(self) -> &'static str {
        match self {
            TableKind::Omega => "omega",
            TableKind::Chi => "chi",
            TableKind::Convolution => "convolution",
            TableKind::Derivative => "derivative",
        }
    }
}

/// One printed entry next to its generated counterpart.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub table: TableKind,
    /// Left-hand side, e.g. `ω¹ a_lambda`.
    pub lhs: String,
    pub printed: String,
    pub generated: String,
    pub matches: bool,
}

/// Reads the printed coefficients with `lambda`, `mu` replaced by the palette's values.
struct Reader<'a> {
    alg: &'a GroupAlgebra,
    colour: usize,
    subst: BTreeMap<Symbol, Exponent>,
}

impl Reader<'_> {
    fn scalar(&self, src: &str) -> Scalar {
        parse_scalar(src).unwrap_or_else(|e| panic!("printed coefficient `{src}`: {e}")).substitute(&self.subst)
    }

    fn gen(&self, l: Letter) -> NCPoly {
        self.alg.gen(l, self.colour)
    }

    fn gamma(&self, terms: &[Term]) -> GammaElement {
        let mut out = GammaElement::zero();
        for (c, l, f) in terms {
            out.coeffs[f.index()].add_scaled(&self.gen(*l), &self.scalar(c));
        }
        out
    }

    fn gen_name(&self, l: Letter) -> String {
        self.alg.letter_name(self.alg.gen_id(l, self.colour))
    }
}

/// Every printed entry for generators of one colour, compared with the calculus.
pub fn compare_tables(calc: &Calculus, colour: usize) -> Result<Vec<TableRow>, CalculusError> {
    let alg = calc.algebra();
    let cp = calc.colours();
    let subst = BTreeMap::from([(Symbol::new("lambda"), cp.lambda.clone()), (Symbol::new("mu"), cp.mu.clone())]);
    let rd = Reader { alg, colour, subst };
    let mut rows = Vec::new();
    for (g, form, terms) in OMEGA {
        let want = rd.gamma(terms);
        let got = calc.omega_commute(g, colour, form);
        rows.push(TableRow {
            table: TableKind::Omega,
            lhs: format!("{} {}", form.label(), rd.gen_name(g)),
            printed: want.format(alg),
            generated: got.format(alg),
            matches: &want == got,
        });
    }
    for (form, g, src) in CHI {
        let want = rd.scalar(src);
        let got = calc.chi(form, &rd.gen(g))?;
        rows.push(TableRow {
            table: TableKind::Chi,
            lhs: format!("{}({})", form.chi_label(), rd.gen_name(g)),
            printed: want.to_string(),
            generated: got.to_string(),
            matches: want == got,
        });
    }
    for (form, g, entry) in CONVOLUTION {
        let want = entry.map_or_else(NCPoly::zero, |(c, l)| rd.gen(l).scale(&rd.scalar(c)));
        let got = calc.convolve(form, &rd.gen(g))?;
        rows.push(TableRow {
            table: TableKind::Convolution,
            lhs: format!("{} ∗ {}", form.chi_label(), rd.gen_name(g)),
            printed: alg.format_poly(&want),
            generated: alg.format_poly(&got),
            matches: want == got,
        });
    }
    for (g, terms) in DERIVATIVE {
        let want = rd.gamma(terms);
        let got = calc.d(&rd.gen(g))?;
        rows.push(TableRow {
            table: TableKind::Derivative,
            lhs: format!("d {}", rd.gen_name(g)),
            printed: want.format(alg),
            generated: got.format(alg),
            matches: want == got,
        });
    }
    Ok(rows)
}

/// Whether every one-form commutation coefficient is the same for all palette colours.
pub fn colour_blind(calc: &Calculus) -> bool {
    let alg = calc.algebra();
    let n = alg.palette().len();
    let to_zero = |p: &NCPoly, c: usize| p.map_words(|w: &Word| alg.swap_colours(w, c, 0));
    (1..n).all(|c| {
        Letter::ALL.iter().all(|&g| {
            OneForm::ALL
                .iter()
                .all(|&f| calc.omega_commute(g, c, f).map(|p| to_zero(p, c)) == *calc.omega_commute(g, 0, f))
        })
    })
}

/// Text layout of the generated tables, one relation per line.
pub fn render_text(calc: &Calculus, colour: usize) -> Result<String, CalculusError> {
    let alg = calc.algebra();
    let mut out = String::new();
    for g in Letter::ALL {
        let name = alg.letter_name(alg.gen_id(g, colour));
        for f in OneForm::ALL {
            let rhs = calc.omega_commute(g, colour, f);
            out.push_str(&format!("{} {name} = {}\n", f.label(), rhs.format(alg)));
        }
    }
    for g in Letter::ALL {
        let p = alg.gen(g, colour);
        let name = alg.letter_name(alg.gen_id(g, colour));
        for f in OneForm::ALL {
            out.push_str(&format!("{}({name}) = {}\n", f.chi_label(), calc.chi(f, &p)?));
        }
    }
    for g in Letter::ALL {
        let p = alg.gen(g, colour);
        let name = alg.letter_name(alg.gen_id(g, colour));
        for f in OneForm::ALL {
            out.push_str(&format!("{} ∗ {name} = {}\n", f.chi_label(), alg.format_poly(&calc.convolve(f, &p)?)));
        }
    }
    for g in Letter::ALL {
        let name = alg.letter_name(alg.gen_id(g, colour));
        out.push_str(&format!("d {name} = {}\n", calc.d(&alg.gen(g, colour))?.format(alg)));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableEntry {
    pub table: TableKind,
    /// One-form or vector-field label.
    pub form: String,
    pub generator: String,
    /// Coefficient strings keyed by the one-form (or by the generator for convolutions).
    pub coefficients: BTreeMap<String, String>,
}

/// Generated tables as coefficient strings keyed by (one-form, generator).
pub fn export(calc: &Calculus, colour: usize) -> Result<Vec<TableEntry>, CalculusError> {
    let alg = calc.algebra();
    let mut out = Vec::new();
    let gamma_map = |g: &GammaElement| -> BTreeMap<String, String> {
        OneForm::ALL
            .iter()
            .filter(|f| !g.coeff(**f).is_zero())
            .map(|f| (f.ascii().to_string(), alg.format_poly(g.coeff(*f))))
            .collect()
    };
    for g in Letter::ALL {
        let name = alg.letter_name(alg.gen_id(g, colour));
        let p = alg.gen(g, colour);
        for f in OneForm::ALL {
            out.push(TableEntry {
                table: TableKind::Omega,
                form: f.ascii().into(),
                generator: name.clone(),
                coefficients: gamma_map(calc.omega_commute(g, colour, f)),
            });
            out.push(TableEntry {
                table: TableKind::Chi,
                form: f.ascii().into(),
                generator: name.clone(),
                coefficients: BTreeMap::from([("value".into(), calc.chi(f, &p)?.to_string())]),
            });
            out.push(TableEntry {
                table: TableKind::Convolution,
                form: f.ascii().into(),
                generator: name.clone(),
                coefficients: BTreeMap::from([("value".into(), alg.format_poly(&calc.convolve(f, &p)?))]),
            });
        }
        out.push(TableEntry {
            table: TableKind::Derivative,
            form: "d".into(),
            generator: name,
            coefficients: gamma_map(&calc.d(&p)?),
        });
    }
    out.sort_by(|a, b| (a.table, &a.generator, &a.form).cmp(&(b.table, &b.generator, &b.form)));
    Ok(out)
}
