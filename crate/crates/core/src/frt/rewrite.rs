//! Oriented rewriting modulo a set of quadratic relations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use super::algebra::{GroupAlgebra, NCPoly, TensorPoly, Word};
use crate::scalar::Scalar;

pub const DEFAULT_STEP_BUDGET: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RewriteError {
    #[error("leading coefficient of `{relation}` is not a unit: {coeff}")]
    NonMonomialLeadingCoefficient { relation: String, coeff: String },
    #[error("step budget of {budget} exceeded while reducing; last word `{last_word}`")]
    NonTermination { budget: usize, last_word: String },
}

/// `lead -> rhs`, with every word of `rhs` smaller than `lead`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lead: Word,
    pub rhs: NCPoly,
}

impl Rule {
    /// The relation `lead - rhs` this rule encodes.
    pub fn relation(&self) -> NCPoly {
        NCPoly::word(self.lead.clone()).sub(&self.rhs)
    }
}

/// Reduced row-echelon form of a set of relations, viewed as vectors over the word basis.
/// Every output is monic in its largest word, and no leading word occurs in another output.
pub fn interreduce(alg: &GroupAlgebra, relations: &[NCPoly]) -> Result<Vec<Rule>, RewriteError> {
    let mut basis: BTreeMap<Word, NCPoly> = BTreeMap::new();
    for rel in relations {
        let mut r = rel.clone();
        loop {
            let hit = r.terms().rev().find(|(w, _)| basis.contains_key(*w)).map(|(w, c)| (w.clone(), c.clone()));
            match hit {
                Some((w, c)) => {
                    let rhs = &basis[&w];
                    let mut next = r.clone();
                    next.add_term(w, -c.clone());
                    next.add_scaled(rhs, &c);
                    r = next;
                }
                None => break,
            }
        }
        let Some((lead, lc)) = r.leading().map(|(w, c)| (w.clone(), c.clone())) else {
            continue;
        };
        let inv = lc.invert().map_err(|_| RewriteError::NonMonomialLeadingCoefficient {
            relation: alg.format_poly(rel),
            coeff: lc.to_string(),
        })?;
        let mut rhs = r.scale(&inv).neg();
        rhs.add_term(lead.clone(), Scalar::one());
        for other in basis.values_mut() {
            let c = other.coeff(&lead);
            if !c.is_zero() {
                other.add_term(lead.clone(), -c.clone());
                other.add_scaled(&rhs, &c);
            }
        }
        basis.insert(lead, rhs);
    }
    Ok(basis.into_iter().map(|(lead, rhs)| Rule { lead, rhs }).collect())
}

/// Immutable rewriting system over one generator table.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alg: Arc<GroupAlgebra>,
    rules: Vec<Rule>,
    index: HashMap<Vec<u8>, usize>,
    lead_lens: Vec<usize>,
    budget: usize,
}

/// An overlap whose two resolutions have different normal forms.
#[derive(Clone, Debug, PartialEq)]
pub struct Overlap {
    pub word: Word,
    pub difference: NCPoly,
}

impl RewriteSystem {
    /// Orients `relations` after inter-reduction.
    pub fn from_relations(alg: Arc<GroupAlgebra>, relations: &[NCPoly], budget: usize) -> Result<Self, RewriteError> {
        let rules = interreduce(&alg, relations)?;
        Ok(Self::from_rules(alg, rules, budget))
    }

    pub fn from_rules(alg: Arc<GroupAlgebra>, rules: Vec<Rule>, budget: usize) -> Self {
        let index = rules.iter().enumerate().map(|(i, r)| (r.lead.as_slice().to_vec(), i)).collect();
        let lead_lens: BTreeSet<usize> = rules.iter().map(|r| r.lead.len()).collect();
        RewriteSystem { alg, rules, index, lead_lens: lead_lens.into_iter().collect(), budget }
    }

    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        &self.alg
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    /// A copy with extra rules appended (they must not share leading words).
    pub fn extended(&self, extra: Vec<Rule>) -> Self {
        let mut rules = self.rules.clone();
        rules.extend(extra);
        Self::from_rules(self.alg.clone(), rules, self.budget)
    }

    /// A copy without the rule whose leading word is `lead`.
    pub fn without(&self, lead: &Word) -> Self {
        let rules = self.rules.iter().filter(|r| &r.lead != lead).cloned().collect();
        Self::from_rules(self.alg.clone(), rules, self.budget)
    }

    fn find_redex(&self, w: &Word) -> Option<(usize, &Rule)> {
        let s = w.as_slice();
        for start in 0..s.len() {
            for &len in &self.lead_lens {
                if start + len > s.len() {
                    break;
                }
                if let Some(&i) = self.index.get(&s[start..start + len]) {
                    return Some((start, &self.rules[i]));
                }
            }
        }
        None
    }

    /// Fully reduced form. The largest pending word is always rewritten first, so each
    /// finished word is final.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly, RewriteError> {
        let mut todo = p.clone().into_terms();
        let mut out = NCPoly::zero();
        let mut steps = 0usize;
        while let Some((w, c)) = todo.pop_last() {
            steps += 1;
            if steps > self.budget {
                return Err(RewriteError::NonTermination { budget: self.budget, last_word: self.alg.format_word(&w) });
            }
            match self.find_redex(&w) {
                Some((at, rule)) => {
                    for (rw, rc) in rule.rhs.terms() {
                        let nw = w.splice(at, rule.lead.len(), rw);
                        let e = todo.entry(nw.clone()).or_default();
                        *e += &(&c * rc);
                        if e.is_zero() {
                            todo.remove(&nw);
                        }
                    }
                }
                None => out.add_term(w, c),
            }
        }
        Ok(out)
    }

    /// Rewrites a single redex at a time, always the rightmost, until none remain. Slower,
    /// used to cross-check [`RewriteSystem::normal_form`].
    pub fn normal_form_rightmost(&self, p: &NCPoly) -> Result<NCPoly, RewriteError> {
        let mut cur = p.clone();
        let mut steps = 0usize;
        loop {
            let mut next = NCPoly::zero();
            let mut changed = false;
            for (w, c) in cur.terms() {
                let s = w.as_slice();
                let mut hit = None;
                'outer: for start in (0..s.len()).rev() {
                    for &len in &self.lead_lens {
                        if start + len <= s.len() {
                            if let Some(&i) = self.index.get(&s[start..start + len]) {
                                hit = Some((start, i));
                                break 'outer;
                            }
                        }
                    }
                }
                match hit {
                    Some((at, i)) => {
                        changed = true;
                        let rule = &self.rules[i];
                        for (rw, rc) in rule.rhs.terms() {
                            next.add_term(w.splice(at, rule.lead.len(), rw), c * rc);
                        }
                    }
                    None => next.add_term(w.clone(), c.clone()),
                }
            }
            cur = next;
            steps += 1;
            if !changed {
                return Ok(cur);
            }
            if steps > self.budget {
                return Err(RewriteError::NonTermination { budget: self.budget, last_word: String::new() });
            }
        }
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    /// Leg-wise normal form of a tensor.
    pub fn tensor_normal_form(&self, t: &TensorPoly) -> Result<TensorPoly, RewriteError> {
        let mut cache: HashMap<Word, NCPoly> = HashMap::new();
        let mut out = TensorPoly::zero();
        for (legs, c) in t.terms() {
            let mut acc = TensorPoly::term(Vec::new(), c.clone());
            for w in legs {
                if !cache.contains_key(w) {
                    let nf = self.normal_form(&NCPoly::word(w.clone()))?;
                    cache.insert(w.clone(), nf);
                }
                let nf = &cache[w];
                let mut next = TensorPoly::zero();
                for (prefix, pc) in acc.terms() {
                    for (nw, nc) in nf.terms() {
                        let mut v = prefix.clone();
                        v.push(nw.clone());
                        next.add_term(v, pc * nc);
                    }
                }
                acc = next;
            }
            out.add_scaled(&acc, &Scalar::one());
        }
        Ok(out)
    }

    /// Resolves every overlap and inclusion of two leading words whose union has length at
    /// most `max_len`; returns those that fail to join.
    pub fn confluence_probe(&self, max_len: usize) -> Result<Vec<Overlap>, RewriteError> {
        let mut bad = Vec::new();
        for r1 in &self.rules {
            for r2 in &self.rules {
                let (l1, l2) = (r1.lead.as_slice(), r2.lead.as_slice());
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] != l2[..k] || l1.len() + l2.len() - k > max_len {
                        continue;
                    }
                    let tail = Word::from_slice(&l2[k..]);
                    let head = Word::from_slice(&l1[..l1.len() - k]);
                    let left = r1.rhs.mul(&NCPoly::word(tail.clone()));
                    let right = NCPoly::word(head.clone()).mul(&r2.rhs);
                    let diff = self.normal_form(&left.sub(&right))?;
                    if !diff.is_zero() {
                        bad.push(Overlap { word: r1.lead.concat(&tail), difference: diff });
                    }
                }
                if r1.lead != r2.lead && l2.len() < l1.len() {
                    for at in 0..=(l1.len() - l2.len()) {
                        if l1[at..at + l2.len()] == *l2 {
                            let inner = r1.lead.splice(at, l2.len(), &Word::empty());
                            let pre = Word::from_slice(&inner.as_slice()[..at]);
                            let post = Word::from_slice(&inner.as_slice()[at..]);
                            let other = NCPoly::product(&[&NCPoly::word(pre), &r2.rhs, &NCPoly::word(post)]);
                            let diff = self.normal_form(&r1.rhs.sub(&other))?;
                            if !diff.is_zero() {
                                bad.push(Overlap { word: r1.lead.clone(), difference: diff });
                            }
                        }
                    }
                }
            }
        }
        Ok(bad)
    }

    /// Text dump, one rule per line.
    pub fn dump(&self) -> String {
        self.rules
            .iter()
            .map(|r| format!("{} -> {}", self.alg.format_word(&r.lead), self.alg.format_poly(&r.rhs)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}
