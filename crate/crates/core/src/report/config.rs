//! Suite configuration: TOML input, defaults and validation.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dual::{PairingConvention, RllVariant, Units};
use crate::frt::rewrite::DEFAULT_STEP_BUDGET;
use crate::frt::{MonomialOrder, Palette, PaletteColour};
use crate::parse::{parse_exponent, parse_scalar};
use crate::scalar::{Exponent, Rat, Scalar, Symbol};

pub const STEP_BUDGET_ENV: &str = "CQG_STEP_BUDGET";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid value for `{key}`: {message}")]
    Validation { key: String, message: String },
}

fn invalid(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Validation { key: key.into(), message: message.into() }
}

/// Validated configuration shared by every suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Ordered colour names.
    pub palette: Vec<String>,
    /// Values substituted for colour names; unlisted colours stay symbolic.
    pub colours: BTreeMap<String, String>,
    /// Exact values of `q` at which every residual is additionally evaluated.
    pub q_specializations: Vec<String>,
    /// Symbol assignments paired with each `q` specialization.
    pub colour_specializations: Vec<BTreeMap<String, String>>,
    pub c_plus: String,
    pub c_minus: String,
    pub order: MonomialOrder,
    pub step_budget: i64,
    pub rll_variants: Vec<String>,
    pub pairing_convention: PairingConvention,
    /// Longest dual word in the well-definedness sweep.
    pub pairing_depth: usize,
    /// Longest overlap examined by the confluence probe.
    pub confluence_depth: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            palette: vec!["lambda".into(), "mu".into()],
            colours: BTreeMap::new(),
            q_specializations: Vec::new(),
            colour_specializations: Vec::new(),
            c_plus: "1".into(),
            c_minus: "1".into(),
            order: MonomialOrder::LetterMajor,
            step_budget: DEFAULT_STEP_BUDGET as i64,
            rll_variants: RllVariant::all().iter().map(RllVariant::id).collect(),
            pairing_convention: PairingConvention::Opposite,
            pairing_depth: 2,
            confluence_depth: 4,
        }
    }
}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].matches('\n').count() + 1
}

impl SuiteConfig {
    pub fn from_toml(src: &str) -> Result<Self, ConfigError> {
        let cfg: SuiteConfig = toml::from_str(src).map_err(|e| ConfigError::Parse {
            line: e.span().map_or(1, |s| line_of(src, s.start)),
            message: e.message().to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let src = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_toml(&src)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.palette.is_empty() {
            return Err(invalid("palette", "at least one colour is required"));
        }
        for (i, name) in self.palette.iter().enumerate() {
            let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric());
            if !ok || matches!(name.as_str(), "q" | "s" | "cp" | "cm") {
                return Err(invalid("palette", format!("`{name}` is not a usable colour name")));
            }
            if self.palette[..i].contains(name) {
                return Err(invalid("palette", format!("`{name}` is listed twice")));
            }
        }
        for (name, value) in &self.colours {
            if !self.palette.contains(name) {
                return Err(invalid("colours", format!("`{name}` is not in the palette")));
            }
            parse_exponent(value).map_err(|e| invalid("colours", format!("`{name}`: {e}")))?;
        }
        for q in &self.q_specializations {
            let r = parse_rational(q).map_err(|m| invalid("q_specializations", m))?;
            if r <= Rat::from_integer(0) {
                return Err(invalid("q_specializations", format!("`{q}` is not positive")));
            }
        }
        for assignment in &self.colour_specializations {
            for (sym, v) in assignment {
                parse_rational(v).map_err(|m| invalid("colour_specializations", format!("`{sym}`: {m}")))?;
            }
        }
        self.units().map_err(|(key, m)| invalid(key, m))?;
        if self.step_budget <= 0 {
            return Err(invalid("step_budget", "must be positive"));
        }
        let known: Vec<String> = RllVariant::all().iter().map(RllVariant::id).collect();
        for v in &self.rll_variants {
            if !known.contains(v) {
                return Err(invalid("rll_variants", format!("unknown variant `{v}`")));
            }
        }
        if self.confluence_depth < 3 {
            return Err(invalid("confluence_depth", "must be at least 3"));
        }
        Ok(())
    }

    /// The palette with configured colour values substituted.
    pub fn palette(&self) -> Palette {
        Palette::new(
            self.palette
                .iter()
                .map(|name| PaletteColour {
                    name: name.clone(),
                    value: self
                        .colours
                        .get(name)
                        .map(|v| parse_exponent(v).expect("validated"))
                        .unwrap_or_else(|| Exponent::symbol(name)),
                })
                .collect(),
        )
    }

    /// Normalizations `c±` of the duality checks; each must be a unit.
    pub fn units(&self) -> Result<Units, (&'static str, String)> {
        let read = |key: &'static str, src: &str| -> Result<Scalar, (&'static str, String)> {
            let v = parse_scalar(src).map_err(|e| (key, e.to_string()))?;
            if !v.is_monomial() {
                return Err((key, format!("`{src}` is not a unit")));
            }
            Ok(v)
        };
        Ok(Units { c_plus: read("c_plus", &self.c_plus)?, c_minus: read("c_minus", &self.c_minus)? })
    }

    pub fn rll(&self) -> Vec<RllVariant> {
        RllVariant::all().into_iter().filter(|v| self.rll_variants.contains(&v.id())).collect()
    }

    pub fn budget(&self) -> usize {
        self.step_budget as usize
    }

    /// Applies the `CQG_STEP_BUDGET` override when set.
    pub fn with_env(mut self) -> Result<Self, ConfigError> {
        if let Ok(v) = std::env::var(STEP_BUDGET_ENV) {
            self.step_budget =
                v.trim().parse().map_err(|_| invalid(STEP_BUDGET_ENV, format!("`{v}` is not an integer")))?;
            self.validate()?;
        }
        Ok(self)
    }

    /// `(q, symbol values)` pairs; the `i`-th `q` uses the `i`-th assignment, or none.
    pub fn specializations(&self) -> Vec<(Rat, BTreeMap<Symbol, Rat>)> {
        self.q_specializations
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let syms = self
                    .colour_specializations
                    .get(i)
                    .map(|a| a.iter().map(|(k, v)| (Symbol::new(k), parse_rational(v).expect("validated"))).collect())
                    .unwrap_or_default();
                (parse_rational(q).expect("validated"), syms)
            })
            .collect()
    }
}

/// Reads `n` or `n/d`.
pub fn parse_rational(src: &str) -> Result<Rat, String> {
    let s = src.trim();
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i64 = n.trim().parse().map_err(|_| format!("`{src}` is not a rational"))?;
    let d: i64 = d.trim().parse().map_err(|_| format!("`{src}` is not a rational"))?;
    if d == 0 {
        return Err(format!("`{src}` has zero denominator"));
    }
    Ok(Rat::new(n, d))
}
