//! Presented algebras: rewrite rules, reduction to normal form,
//! local-confluence diagnostics and graded dimension counts, plus the
//! built-in quantum plane and quantum exterior algebra presentations.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freealg::{FreeAlgError, GenSet, NCPoly, NCPolyJson, Word};
use crate::scalar::LaurentQ;

/// Hard cap on rule applications per `reduce` call. All shipped
/// presentations terminate orders of magnitude below this; hitting the cap
/// signals a non-terminating rule set.
pub const MAX_REWRITE_STEPS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("iteration limit exceeded while reducing term `{term}`")]
    IterationLimit { term: String },
    #[error("rule rhs word {rhs:?} is not smaller than lhs {lhs:?} in deg-lex order")]
    BadRuleOrder { lhs: Word, rhs: Word },
    #[error("duplicate rule lhs {0:?}")]
    DuplicateLhs(Word),
    #[error("empty rule lhs")]
    EmptyLhs,
    #[error("presentation needs at least one generator (n >= 1)")]
    EmptyGenSet,
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

/// One oriented rewrite rule `lhs → rhs`. Every word of `rhs` is strictly
/// smaller than `lhs` in deg-lex order, which is the termination certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

/// Generator order plus rewrite rules; carries the normal-form contract.
#[derive(Debug, Clone)]
pub struct Presentation {
    gens: Arc<GenSet>,
    rules: Vec<RewriteRule>,
}

impl Presentation {
    pub fn new(gens: Arc<GenSet>, rules: Vec<RewriteRule>) -> Result<Self, RewriteError> {
        let mut seen = std::collections::BTreeSet::new();
        for rule in &rules {
            if rule.lhs.degree() == 0 {
                return Err(RewriteError::EmptyLhs);
            }
            if !seen.insert(rule.lhs.clone()) {
                return Err(RewriteError::DuplicateLhs(rule.lhs.clone()));
            }
            for (w, _) in rule.rhs.terms() {
                if w >= &rule.lhs {
                    return Err(RewriteError::BadRuleOrder { lhs: rule.lhs.clone(), rhs: w.clone() });
                }
            }
        }
        Ok(Presentation { gens, rules })
    }

    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// The defining relations `lhs − rhs` as polynomials.
    pub fn relations(&self) -> Vec<NCPoly> {
        self.rules
            .iter()
            .map(|r| {
                let lhs = NCPoly::from_term(&self.gens, r.lhs.clone(), LaurentQ::one());
                lhs.sub(&r.rhs).expect("same gens")
            })
            .collect()
    }

    /// Leftmost match of any rule in `word`: (position, rule index), with the
    /// smallest rule index winning at equal positions.
    fn leftmost_match(&self, word: &Word) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (ri, rule) in self.rules.iter().enumerate() {
            if let Some(pos) = word.find_subword(&rule.lhs) {
                if best.map(|(bp, _)| pos < bp).unwrap_or(true) {
                    best = Some((pos, ri));
                }
            }
        }
        best
    }

    /// True iff no rule lhs occurs as a subword.
    pub fn is_normal(&self, word: &Word) -> bool {
        self.leftmost_match(word).is_none()
    }

    /// Reduce to normal form by leftmost subword replacement.
    pub fn reduce(&self, p: &NCPoly) -> Result<NCPoly, RewriteError> {
        self.reduce_with_first_match(p, None)
    }

    /// Reduce, but force the very first rewrite to use `(position, rule)` on
    /// the given single word. Used by the confluence oracle to explore both
    /// orders of an ambiguity.
    fn reduce_with_first_match(
        &self,
        p: &NCPoly,
        first: Option<(usize, usize)>,
    ) -> Result<NCPoly, RewriteError> {
        let mut normal = NCPoly::zero(&self.gens);
        // pending terms, processed largest first
        let mut pending: std::collections::BTreeMap<Word, LaurentQ> = std::collections::BTreeMap::new();
        let mut steps = 0usize;
        let mut forced = first;
        for (w, c) in p.terms() {
            merge(&mut pending, w.clone(), c.clone());
        }
        while let Some((word, coeff)) = pending.pop_last() {
            if coeff.is_zero() {
                continue;
            }
            let hit = match forced.take() {
                Some((pos, ri)) => Some((pos, ri)),
                None => self.leftmost_match(&word),
            };
            match hit {
                None => normal.add_term(word, coeff),
                Some((pos, ri)) => {
                    steps += 1;
                    if steps > MAX_REWRITE_STEPS {
                        return Err(RewriteError::IterationLimit { term: format!("{:?}", word) });
                    }
                    let rule = &self.rules[ri];
                    let u = Word(word.letters()[..pos].to_vec());
                    let v = Word(word.letters()[pos + rule.lhs.degree()..].to_vec());
                    let replaced = rule.rhs.sandwich(&u, &v).scale(&coeff);
                    for (w, c) in replaced.terms() {
                        merge(&mut pending, w.clone(), c.clone());
                    }
                }
            }
        }
        Ok(normal)
    }

    /// Brute-force local-confluence scan: for every word of degree ≤ max_deg
    /// admitting two or more rule matches, complete the reduction starting
    /// from each match and compare the results. Returns the ambiguous words
    /// whose completions disagree.
    pub fn local_confluence(&self, max_deg: usize) -> Result<Vec<Word>, RewriteError> {
        assert!(max_deg >= 2, "max_deg must be at least 2");
        let mut failures = Vec::new();
        for word in all_words(self.gens.len(), max_deg) {
            let matches: Vec<(usize, usize)> = self
                .rules
                .iter()
                .enumerate()
                .flat_map(|(ri, rule)| {
                    let w = word.letters();
                    let p = rule.lhs.letters();
                    (0..w.len().saturating_sub(p.len()) + 1)
                        .filter(move |&i| p.len() <= w.len() && &w[i..i + p.len()] == p)
                        .map(move |i| (i, ri))
                })
                .collect();
            if matches.len() < 2 {
                continue;
            }
            let start = NCPoly::from_term(&self.gens, word.clone(), LaurentQ::one());
            let mut results = Vec::new();
            for m in matches {
                results.push(self.reduce_with_first_match(&start, Some(m))?);
            }
            if results.windows(2).any(|w| w[0] != w[1]) {
                failures.push(word);
            }
        }
        Ok(failures)
    }

    /// Number of normal words of total degree `d`.
    pub fn graded_dimension(&self, d: usize) -> usize {
        count_normal_words(self, d)
    }
}

fn merge(map: &mut std::collections::BTreeMap<Word, LaurentQ>, w: Word, c: LaurentQ) {
    match map.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = &*e.get() + &c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

/// All words over `n` generators of degree 1..=max_deg.
pub fn all_words(n: usize, max_deg: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut current: Vec<Word> = vec![Word::unit()];
    for _ in 0..max_deg {
        let mut next = Vec::with_capacity(current.len() * n);
        for w in &current {
            for g in 0..n {
                let mut letters = w.letters().to_vec();
                letters.push(g as u16);
                next.push(Word(letters));
            }
        }
        out.extend(next.iter().cloned());
        current = next;
    }
    out
}

/// Count normal words of exact degree `d` by depth-first extension, pruning
/// as soon as a rule lhs appears as a suffix.
fn count_normal_words(pres: &Presentation, d: usize) -> usize {
    fn has_lhs_suffix(pres: &Presentation, letters: &[u16]) -> bool {
        pres.rules().iter().any(|r| {
            let p = r.lhs.letters();
            p.len() <= letters.len() && &letters[letters.len() - p.len()..] == p
        })
    }
    fn go(pres: &Presentation, letters: &mut Vec<u16>, remaining: usize) -> usize {
        if remaining == 0 {
            return 1;
        }
        let mut total = 0;
        for g in 0..pres.gens().len() {
            letters.push(g as u16);
            if !has_lhs_suffix(pres, letters) {
                total += go(pres, letters, remaining - 1);
            }
            letters.pop();
        }
        total
    }
    go(pres, &mut Vec::with_capacity(d), d)
}

/// Built-in presentation families from the deformation examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinKind {
    QuantumPlane,
    QuantumExterior,
}

/// Quantum plane on n generators: relations x_ι x_κ = q x_κ x_ι for ι < κ,
/// oriented as x_κ x_ι → q⁻¹ x_ι x_κ. Quantum exterior algebra: ξ_ι² → 0
/// and ξ_κ ξ_ι → −q ξ_ι ξ_κ for ι < κ (from ξ_ι ξ_κ = −q⁻¹ ξ_κ ξ_ι).
pub fn builtin_presentation(kind: BuiltinKind, n: usize) -> Result<Presentation, RewriteError> {
    if n < 1 {
        return Err(RewriteError::EmptyGenSet);
    }
    match kind {
        BuiltinKind::QuantumPlane => {
            let gens = Arc::new(GenSet::vector_gens(n, "x"));
            let mut rules = Vec::new();
            for lo in 0..n {
                for hi in lo + 1..n {
                    let lhs = Word::from_indices(&[hi, lo]);
                    let rhs = NCPoly::from_term(
                        &gens,
                        Word::from_indices(&[lo, hi]),
                        LaurentQ::q_inv(),
                    );
                    rules.push(RewriteRule { lhs, rhs });
                }
            }
            Presentation::new(gens, rules)
        }
        BuiltinKind::QuantumExterior => {
            let gens = Arc::new(GenSet::vector_gens(n, "xi"));
            let mut rules = Vec::new();
            for i in 0..n {
                rules.push(RewriteRule {
                    lhs: Word::from_indices(&[i, i]),
                    rhs: NCPoly::zero(&gens),
                });
            }
            for lo in 0..n {
                for hi in lo + 1..n {
                    let lhs = Word::from_indices(&[hi, lo]);
                    let coeff = -LaurentQ::q();
                    let rhs =
                        NCPoly::from_term(&gens, Word::from_indices(&[lo, hi]), coeff);
                    rules.push(RewriteRule { lhs, rhs });
                }
            }
            Presentation::new(gens, rules)
        }
    }
}

/// Serde-facing presentation dump: generator names plus word/poly rule pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub rules: Vec<RuleJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RuleJson {
    pub lhs: Vec<String>,
    pub rhs: NCPolyJson,
}

impl Presentation {
    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            generators: (0..self.gens.len()).map(|i| self.gens.name(i).to_string()).collect(),
            rules: self
                .rules
                .iter()
                .map(|r| RuleJson {
                    lhs: r
                        .lhs
                        .letters()
                        .iter()
                        .map(|&i| self.gens.name(i as usize).to_string())
                        .collect(),
                    rhs: r.rhs.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PresentationJson) -> Result<Presentation, RewriteError> {
        let gens = Arc::new(GenSet::new(json.generators.clone()));
        let mut rules = Vec::new();
        for r in &json.rules {
            let mut idx = Vec::new();
            for name in &r.lhs {
                idx.push(
                    gens.index_of(name)
                        .ok_or_else(|| FreeAlgError::UnknownGenerator(name.clone()))?,
                );
            }
            rules.push(RewriteRule {
                lhs: Word::from_indices(&idx),
                rhs: NCPoly::from_json(&gens, &r.rhs)?,
            });
        }
        Presentation::new(gens, rules)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::NCPoly;

    fn quantum_plane(n: usize) -> Presentation {
        builtin_presentation(BuiltinKind::QuantumPlane, n).unwrap()
    }

    #[test]
    fn quantum_plane_basic_reduction() {
        let pres = quantum_plane(2);
        // x2 x1 → q⁻¹ x1 x2
        let p = NCPoly::from_term(pres.gens(), Word::from_indices(&[1, 0]), LaurentQ::one());
        let r = pres.reduce(&p).unwrap();
        let expect =
            NCPoly::from_term(pres.gens(), Word::from_indices(&[0, 1]), LaurentQ::q_inv());
        assert_eq!(r, expect);
    }

    #[test]
    fn exterior_square_vanishes() {
        let pres = builtin_presentation(BuiltinKind::QuantumExterior, 2).unwrap();
        let p = NCPoly::from_term(pres.gens(), Word::from_indices(&[0, 0]), LaurentQ::one());
        assert!(pres.reduce(&p).unwrap().is_zero());
    }

    #[test]
    fn normal_word_is_fixed_point() {
        let pres = quantum_plane(3);
        let p = NCPoly::from_term(pres.gens(), Word::from_indices(&[0, 1, 2]), LaurentQ::one());
        assert_eq!(pres.reduce(&p).unwrap(), p);
    }

    #[test]
    fn rule_counts() {
        assert_eq!(quantum_plane(2).rules().len(), 1);
        let ext = builtin_presentation(BuiltinKind::QuantumExterior, 2).unwrap();
        assert_eq!(ext.rules().len(), 3);
    }

    #[test]
    fn graded_dimensions_match_classical() {
        let plane = quantum_plane(2);
        assert_eq!(plane.graded_dimension(0), 1);
        assert_eq!(plane.graded_dimension(2), 3);
        let ext = builtin_presentation(BuiltinKind::QuantumExterior, 2).unwrap();
        assert_eq!(ext.graded_dimension(2), 1);
    }

    #[test]
    fn quantum_plane_locally_confluent() {
        let pres = quantum_plane(3);
        assert!(pres.local_confluence(3).unwrap().is_empty());
    }

    #[test]
    fn toy_non_confluent_presentation_detected() {
        // rules {ab → 0, bc → c} on the word abc: (a)(bc) → ac while
        // (ab)(c) → 0, so the overlap must be reported.
        let gens = Arc::new(GenSet::new(vec!["a".into(), "b".into(), "c".into()]));
        let rules = vec![
            RewriteRule { lhs: Word::from_indices(&[0, 1]), rhs: NCPoly::zero(&gens) },
            RewriteRule {
                lhs: Word::from_indices(&[1, 2]),
                rhs: NCPoly::from_term(&gens, Word::from_indices(&[2]), LaurentQ::one()),
            },
        ];
        let pres = Presentation::new(gens, rules).unwrap();
        let failures = pres.local_confluence(3).unwrap();
        assert!(failures.contains(&Word::from_indices(&[0, 1, 2])));
    }

    #[test]
    fn reduce_of_relation_is_zero() {
        let pres = quantum_plane(3);
        for rel in pres.relations() {
            assert!(pres.reduce(&rel).unwrap().is_zero());
            // u·r·v also reduces to zero
            let u = Word::from_indices(&[2]);
            let v = Word::from_indices(&[0, 1]);
            assert!(pres.reduce(&rel.sandwich(&u, &v)).unwrap().is_zero());
        }
    }

    #[test]
    fn rule_order_invariant_enforced() {
        let gens = Arc::new(GenSet::vector_gens(2, "x"));
        let bad = vec![RewriteRule {
            lhs: Word::from_indices(&[0]),
            rhs: NCPoly::from_term(&gens, Word::from_indices(&[1]), LaurentQ::one()),
        }];
        assert!(Presentation::new(gens, bad).is_err());
    }

    #[test]
    fn presentation_json_round_trip() {
        let pres = quantum_plane(2);
        let json = pres.to_json();
        let s = serde_json::to_string(&json).unwrap();
        let parsed: PresentationJson = serde_json::from_str(&s).unwrap();
        let back = Presentation::from_json(&parsed).unwrap();
        assert_eq!(back.rules().len(), pres.rules().len());
        assert_eq!(back.rules()[0].lhs, pres.rules()[0].lhs);
    }
}
