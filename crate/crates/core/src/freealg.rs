//! Free associative algebra over [`LaurentQ`] on a fixed ordered generator
//! set, together with elements of the algebraic tensor square (the codomain
//! of coproducts).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::LaurentQ;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FreeAlgError {
    #[error("mismatched generator sets")]
    GenSetMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
}

/// Ordered set of generator names. The order is total and fixed; it induces
/// the deg-lex monomial order used everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSet {
    names: Vec<String>,
}

impl GenSet {
    pub fn new(names: Vec<String>) -> Self {
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            assert!(seen.insert(n.clone()), "duplicate generator name `{n}`");
        }
        GenSet { names }
    }

    /// Generators t[i][j] for 1 ≤ i,j ≤ n in row-major order
    /// t11 < t12 < … < tnn.
    pub fn matrix_gens(n: usize) -> Self {
        let mut names = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                names.push(format!("t{}{}", i, j));
            }
        }
        Self::new(names)
    }

    /// Generators x1 < x2 < … < xn.
    pub fn vector_gens(n: usize, prefix: &str) -> Self {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Index of t[i][j] in a row-major matrix generator set (1-based i, j).
    pub fn matrix_index(n: usize, i: usize, j: usize) -> usize {
        debug_assert!(1 <= i && i <= n && 1 <= j && j <= n);
        (i - 1) * n + (j - 1)
    }
}

/// A monomial: a finite word in generator indices. The empty word is the
/// unit. Ordered by degree first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<u16>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn single(idx: usize) -> Self {
        Word(vec![idx as u16])
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        Word(indices.iter().map(|&i| i as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    /// First position at which `pattern` occurs as a subword, if any.
    pub fn find_subword(&self, pattern: &Word) -> Option<usize> {
        let (w, p) = (&self.0, &pattern.0);
        if p.is_empty() || p.len() > w.len() {
            return None;
        }
        (0..=w.len() - p.len()).find(|&i| &w[i..i + p.len()] == p.as_slice())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        // deg-lex
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Noncommutative polynomial: finite LaurentQ-linear combination of words.
/// Canonical: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCPoly {
    gens: Arc<GenSet>,
    terms: BTreeMap<Word, LaurentQ>,
}

impl NCPoly {
    pub fn zero(gens: &Arc<GenSet>) -> Self {
        NCPoly { gens: gens.clone(), terms: BTreeMap::new() }
    }

    pub fn one(gens: &Arc<GenSet>) -> Self {
        Self::from_term(gens, Word::unit(), LaurentQ::one())
    }

    pub fn gen(gens: &Arc<GenSet>, idx: usize) -> Self {
        Self::from_term(gens, Word::single(idx), LaurentQ::one())
    }

    pub fn from_term(gens: &Arc<GenSet>, word: Word, coeff: LaurentQ) -> Self {
        let mut p = Self::zero(gens);
        p.add_term(word, coeff);
        p
    }

    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentQ)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> LaurentQ {
        self.terms.get(w).cloned().unwrap_or_else(LaurentQ::zero)
    }

    /// Largest word in deg-lex order (the leading monomial).
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.degree()).max()
    }

    pub fn add_term(&mut self, word: Word, coeff: LaurentQ) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_same_gens(&self, other: &NCPoly) -> Result<(), FreeAlgError> {
        if self.gens == other.gens {
            Ok(())
        } else {
            Err(FreeAlgError::GenSetMismatch)
        }
    }

    pub fn add(&self, other: &NCPoly) -> Result<NCPoly, FreeAlgError> {
        self.check_same_gens(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NCPoly) -> Result<NCPoly, FreeAlgError> {
        self.check_same_gens(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> NCPoly {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect();
        NCPoly { gens: self.gens.clone(), terms }
    }

    pub fn scale(&self, c: &LaurentQ) -> NCPoly {
        let mut out = Self::zero(&self.gens);
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k * c);
        }
        out
    }

    /// Bilinear extension of word concatenation.
    pub fn mul(&self, other: &NCPoly) -> Result<NCPoly, FreeAlgError> {
        self.check_same_gens(other)?;
        let mut out = Self::zero(&self.gens);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// `u · self · v` for plain words u, v.
    pub fn sandwich(&self, u: &Word, v: &Word) -> NCPoly {
        let mut out = Self::zero(&self.gens);
        for (w, c) in &self.terms {
            out.add_term(u.concat(w).concat(v), c.clone());
        }
        out
    }
}

/// Serde-facing form of one NCPoly term: generator names plus coefficient.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NCTermJson {
    pub word: Vec<String>,
    pub coeff: LaurentQ,
}

/// Serde-facing form of an NCPoly: `{"terms":[{"word":[...],"coeff":{...}}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NCPolyJson {
    pub terms: Vec<NCTermJson>,
}

impl NCPoly {
    pub fn to_json(&self) -> NCPolyJson {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| NCTermJson {
                word: w.letters().iter().map(|&i| self.gens.name(i as usize).to_string()).collect(),
                coeff: c.clone(),
            })
            .collect();
        NCPolyJson { terms }
    }

    pub fn from_json(gens: &Arc<GenSet>, json: &NCPolyJson) -> Result<NCPoly, FreeAlgError> {
        let mut out = NCPoly::zero(gens);
        for term in &json.terms {
            let mut indices = Vec::with_capacity(term.word.len());
            for name in &term.word {
                let idx = gens
                    .index_of(name)
                    .ok_or_else(|| FreeAlgError::UnknownGenerator(name.clone()))?;
                indices.push(idx);
            }
            out.add_term(Word::from_indices(&indices), term.coeff.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let word_str = if w.degree() == 0 {
                "1".to_string()
            } else {
                w.letters().iter().map(|&i| self.gens.name(i as usize)).collect::<Vec<_>>().join("*")
            };
            write!(f, "({})*{}", c, word_str)?;
        }
        Ok(())
    }
}

/// Element of the algebraic tensor square of the free algebra, with the
/// componentwise product (u⊗v)(u'⊗v') = uu' ⊗ vv'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor2 {
    gens: Arc<GenSet>,
    terms: BTreeMap<(Word, Word), LaurentQ>,
}

impl Tensor2 {
    pub fn zero(gens: &Arc<GenSet>) -> Self {
        Tensor2 { gens: gens.clone(), terms: BTreeMap::new() }
    }

    pub fn one(gens: &Arc<GenSet>) -> Self {
        Self::from_term(gens, Word::unit(), Word::unit(), LaurentQ::one())
    }

    pub fn from_term(gens: &Arc<GenSet>, left: Word, right: Word, coeff: LaurentQ) -> Self {
        let mut t = Self::zero(gens);
        t.add_term(left, right, coeff);
        t
    }

    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &LaurentQ)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: Word, right: Word, coeff: LaurentQ) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Tensor2) -> Result<Tensor2, FreeAlgError> {
        if self.gens != other.gens {
            return Err(FreeAlgError::GenSetMismatch);
        }
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Tensor2) -> Result<Tensor2, FreeAlgError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Tensor2 {
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect();
        Tensor2 { gens: self.gens.clone(), terms }
    }

    pub fn scale(&self, c: &LaurentQ) -> Tensor2 {
        let mut out = Self::zero(&self.gens);
        for ((l, r), k) in &self.terms {
            out.add_term(l.clone(), r.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &Tensor2) -> Result<Tensor2, FreeAlgError> {
        if self.gens != other.gens {
            return Err(FreeAlgError::GenSetMismatch);
        }
        let mut out = Self::zero(&self.gens);
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                out.add_term(l1.concat(l2), r1.concat(r2), c1 * c2);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens2() -> Arc<GenSet> {
        Arc::new(GenSet::matrix_gens(2))
    }

    #[test]
    fn word_order_is_deg_lex() {
        let a = Word::from_indices(&[0, 3]);
        let b = Word::from_indices(&[1, 2]);
        let c = Word::from_indices(&[3]);
        assert!(c < a);
        assert!(a < b);
    }

    #[test]
    fn concatenation_product() {
        let g = gens2();
        let t11 = NCPoly::gen(&g, GenSet::matrix_index(2, 1, 1));
        let t12 = NCPoly::gen(&g, GenSet::matrix_index(2, 1, 2));
        let p = t11.mul(&t12).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.leading_word().unwrap(), &Word::from_indices(&[0, 1]));
    }

    #[test]
    fn unit_is_neutral() {
        let g = gens2();
        let one = NCPoly::one(&g);
        let p = NCPoly::gen(&g, 2).mul(&NCPoly::gen(&g, 1)).unwrap();
        assert_eq!(one.mul(&p).unwrap(), p);
        assert_eq!(p.mul(&one).unwrap(), p);
    }

    #[test]
    fn bilinearity() {
        let g = Arc::new(GenSet::vector_gens(2, "x"));
        let x1 = NCPoly::gen(&g, 0);
        let x2 = NCPoly::gen(&g, 1);
        let sum = x1.add(&x2).unwrap();
        let prod = sum.mul(&x1).unwrap();
        let expect = x1.mul(&x1).unwrap().add(&x2.mul(&x1).unwrap()).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn gen_set_mismatch_rejected() {
        let g1 = gens2();
        let g2 = Arc::new(GenSet::vector_gens(2, "x"));
        let p = NCPoly::one(&g1);
        let q = NCPoly::one(&g2);
        assert_eq!(p.mul(&q), Err(FreeAlgError::GenSetMismatch));
    }

    #[test]
    fn tensor2_componentwise_product() {
        let g = gens2();
        let t11 = Word::single(0);
        let t12 = Word::single(1);
        let a = Tensor2::from_term(&g, t11.clone(), t11.clone(), LaurentQ::one());
        let b = Tensor2::from_term(&g, t12.clone(), t12.clone(), LaurentQ::one());
        let ab = a.mul(&b).unwrap();
        let expect =
            Tensor2::from_term(&g, t11.concat(&t12), t11.concat(&t12), LaurentQ::one());
        assert_eq!(ab, expect);
        let one = Tensor2::one(&g);
        assert_eq!(one.mul(&ab).unwrap(), ab);
    }

    #[test]
    fn degree_additivity() {
        let g = gens2();
        let a = NCPoly::gen(&g, 0).mul(&NCPoly::gen(&g, 3)).unwrap();
        let b = NCPoly::gen(&g, 2);
        assert_eq!(a.mul(&b).unwrap().degree(), Some(3));
    }
}
