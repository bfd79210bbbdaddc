//! The tensor-algebra oracle.
//!
//! In characteristic zero the free graded Lie algebra embeds into the tensor
//! algebra through graded commutators. This module computes that embedding
//! from the bracket structure of monomials only, never calling the
//! normalizing bracket, so it is an independent check on it.

use std::collections::{BTreeMap, HashMap};

use super::element::LieElement;
use super::letter::Letter;
use super::monomial::{word_degree, LieMonomial};
use crate::linalg::{rank, SparseMatrix};
use crate::scalar::Scalar;

/// An element of the free graded associative algebra: word → coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement<L: Letter, F: Scalar> {
    terms: BTreeMap<Vec<L>, F>,
}

impl<L: Letter, F: Scalar> Default for TensorElement<L, F> {
    fn default() -> Self {
        TensorElement { terms: BTreeMap::new() }
    }
}

impl<L: Letter, F: Scalar> TensorElement<L, F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Vec<L>) -> Self {
        let mut t = Self::zero();
        t.add_term(w, F::one());
        t
    }

    pub fn add_term(&mut self, w: Vec<L>, c: F) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&w) {
            Some(x) => x + c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(w, s);
        }
    }

    pub fn add_scaled(&mut self, c: &F, other: &Self) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), c.clone() * x.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<L>, &F)> {
        self.terms.iter()
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a.clone() * b.clone());
            }
        }
        out
    }

    /// Graded commutator `XY - (-1)^{|X||Y|} YX` of homogeneous elements.
    pub fn commutator(&self, other: &Self) -> Self {
        let (Some(dx), Some(dy)) = (self.degree(), other.degree()) else {
            return Self::zero();
        };
        let mut out = self.product(other);
        out.add_scaled(&-F::sign((dx as u64) * (dy as u64)), &other.product(self));
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|w| word_degree(w))
    }
}

fn embed_mono<L: Letter, F: Scalar>(
    m: &LieMonomial<L>,
    memo: &mut HashMap<LieMonomial<L>, TensorElement<L, F>>,
) -> TensorElement<L, F> {
    if let Some(t) = memo.get(m) {
        return t.clone();
    }
    let t = match m.as_letter() {
        Some(l) => TensorElement::word(vec![l.clone()]),
        None => {
            let (u, v) = m.factors().expect("non-letter");
            embed_mono(&u, memo).commutator(&embed_mono(&v, memo))
        }
    };
    memo.insert(m.clone(), t.clone());
    t
}

/// Image of a Lie element under the graded-commutator embedding.
pub fn oracle_embed<L: Letter, F: Scalar>(e: &LieElement<L, F>) -> TensorElement<L, F> {
    let mut memo = HashMap::new();
    let mut out = TensorElement::zero();
    for (m, c) in e.terms() {
        out.add_scaled(c, &embed_mono(m, &mut memo));
    }
    out
}

/// Dimension of the span of the oracle images of `elements`.
pub fn oracle_rank<L: Letter, F: Scalar>(elements: &[LieElement<L, F>]) -> usize {
    let images: Vec<TensorElement<L, F>> = elements.iter().map(oracle_embed).collect();
    let mut words: BTreeMap<Vec<L>, usize> = BTreeMap::new();
    for t in &images {
        for (w, _) in t.terms() {
            let n = words.len();
            words.entry(w.clone()).or_insert(n);
        }
    }
    let cols: Vec<BTreeMap<usize, F>> =
        images.iter().map(|t| t.terms().map(|(w, c)| (words[w], c.clone())).collect()).collect();
    rank(&SparseMatrix::from_sparse_columns(words.len(), &cols))
}

/// Dimension of the degree-`d` part of the Lie subalgebra of the tensor
/// algebra generated by `letters`, computed without any Lie basis: iterated
/// commutators of letters are spanned by left-normed ones.
pub fn oracle_dimension<L: Letter, F: Scalar>(letters: &[L], d: u32) -> usize {
    // left-normed commutators [l1,[l2,[...,lk]]] span the free Lie algebra
    let mut by_degree: Vec<Vec<TensorElement<L, F>>> = vec![Vec::new(); d as usize + 1];
    for l in letters {
        if l.degree() <= d {
            by_degree[l.degree() as usize].push(TensorElement::word(vec![l.clone()]));
        }
    }
    for n in 1..=d as usize {
        let mut fresh = Vec::new();
        for l in letters {
            let k = l.degree() as usize;
            if k >= n {
                continue;
            }
            let x = TensorElement::word(vec![l.clone()]);
            for t in &by_degree[n - k] {
                let c = x.commutator(t);
                if !c.is_zero() {
                    fresh.push(c);
                }
            }
        }
        by_degree[n].extend(fresh);
        // keep only an independent subset so the search stays small
        by_degree[n] = independent_subset(std::mem::take(&mut by_degree[n]));
    }
    by_degree[d as usize].len()
}

fn independent_subset<L: Letter, F: Scalar>(v: Vec<TensorElement<L, F>>) -> Vec<TensorElement<L, F>> {
    let mut words: BTreeMap<Vec<L>, usize> = BTreeMap::new();
    for t in &v {
        for (w, _) in t.terms() {
            let n = words.len();
            words.entry(w.clone()).or_insert(n);
        }
    }
    let mut e = crate::linalg::Echelon::<F>::new(words.len());
    v.into_iter()
        .filter(|t| e.insert_sparse(t.terms().map(|(w, c)| (words[w], c.clone())).collect()).is_some())
        .collect()
}
