//! Degreewise bases of free graded Lie algebras.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use super::element::LieElement;
use super::letter::Letter;
use super::monomial::LieMonomial;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeLieError {
    #[error("degree {degree} exceeds the cutoff {cutoff}")]
    BeyondCutoff { degree: u32, cutoff: u32 },
    #[error("element is not homogeneous of degree {0}")]
    WrongDegree(u32),
    #[error("element uses a letter outside the alphabet: {0}")]
    ForeignLetter(String),
}

/// Basis of one degree component together with its coordinate index.
#[derive(Debug)]
pub struct DegreeBasis<L: Letter> {
    pub degree: u32,
    pub monomials: Vec<LieMonomial<L>>,
    index: HashMap<LieMonomial<L>, usize>,
}

impl<L: Letter> DegreeBasis<L> {
    fn new(degree: u32, monomials: Vec<LieMonomial<L>>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        DegreeBasis { degree, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &LieMonomial<L>) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `e` (homogeneous of this degree) on the basis.
    pub fn decompose<F: Scalar>(&self, e: &LieElement<L, F>) -> Result<Vec<F>, FreeLieError> {
        let mut v = vec![F::zero(); self.len()];
        for (m, c) in e.terms() {
            if m.degree() != self.degree {
                return Err(FreeLieError::WrongDegree(self.degree));
            }
            let i = self.position(m).ok_or_else(|| FreeLieError::ForeignLetter(m.render()))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Sparse coordinates; panics on foreign monomials.
    pub fn decompose_sparse<F: Scalar>(&self, e: &LieElement<L, F>) -> BTreeMap<usize, F> {
        e.terms()
            .map(|(m, c)| (self.position(m).unwrap_or_else(|| panic!("{} not in degree-{} basis", m.render(), self.degree)), c.clone()))
            .collect()
    }

    pub fn compose<F: Scalar>(&self, coords: &[F]) -> LieElement<L, F> {
        LieElement::from_terms(self.monomials.iter().cloned().zip(coords.iter().cloned()))
    }

    pub fn compose_sparse<F: Scalar>(&self, coords: &BTreeMap<usize, F>) -> LieElement<L, F> {
        LieElement::from_terms(coords.iter().map(|(&i, c)| (self.monomials[i].clone(), c.clone())))
    }
}

/// The free graded Lie algebra on an ordered alphabet, truncated at a degree
/// cutoff. Bases are computed on demand and cached.
pub struct FreeLie<L: Letter> {
    letters: Vec<L>,
    cutoff: u32,
    lyndon: Mutex<Vec<Vec<Vec<L>>>>,
    bases: Mutex<BTreeMap<u32, Arc<DegreeBasis<L>>>>,
}

impl<L: Letter> std::fmt::Debug for FreeLie<L> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FreeLie").field("letters", &self.letters).field("cutoff", &self.cutoff).finish()
    }
}

impl<L: Letter> Clone for FreeLie<L> {
    fn clone(&self) -> Self {
        FreeLie::new(self.letters.clone(), self.cutoff)
    }
}

impl<L: Letter> FreeLie<L> {
    /// Letters are sorted by their `Ord`; duplicates are dropped.
    pub fn new(mut letters: Vec<L>, cutoff: u32) -> Self {
        letters.sort();
        letters.dedup();
        assert!(letters.iter().all(|l| l.degree() >= 1), "letters must have positive degree");
        FreeLie { letters, cutoff, lyndon: Mutex::new(Vec::new()), bases: Mutex::new(BTreeMap::new()) }
    }

    pub fn letters(&self) -> &[L] {
        &self.letters
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn contains_letter(&self, l: &L) -> bool {
        self.letters.binary_search(l).is_ok()
    }

    /// Lyndon words of each degree `0..=d`, built from standard
    /// factorizations, each word once.
    fn lyndon_words(&self, d: u32) -> Vec<Vec<L>> {
        let mut table = self.lyndon.lock().expect("lyndon table");
        while table.len() <= d as usize {
            let n = table.len() as u32;
            let mut words: Vec<Vec<L>> = self.letters.iter().filter(|l| l.degree() == n).map(|l| vec![l.clone()]).collect();
            for du in 1..n {
                let dv = n - du;
                for u in &table[du as usize] {
                    for v in &table[dv as usize] {
                        if u >= v {
                            continue;
                        }
                        let ok = u.len() == 1 || {
                            let k = super::monomial::standard_split(u);
                            &u[k..] >= v.as_slice()
                        };
                        if ok {
                            let mut w = u.clone();
                            w.extend_from_slice(v);
                            words.push(w);
                        }
                    }
                }
            }
            words.sort();
            table.push(words);
        }
        table[d as usize].clone()
    }

    /// Basis of the degree-`d` component in the deterministic monomial order.
    pub fn basis(&self, d: u32) -> Result<Arc<DegreeBasis<L>>, FreeLieError> {
        if d > self.cutoff {
            return Err(FreeLieError::BeyondCutoff { degree: d, cutoff: self.cutoff });
        }
        if let Some(b) = self.bases.lock().expect("basis cache").get(&d) {
            return Ok(b.clone());
        }
        let mut monos: Vec<LieMonomial<L>> =
            self.lyndon_words(d).into_iter().map(LieMonomial::lyndon_unchecked).collect();
        if d.is_multiple_of(2) && d > 0 {
            for w in self.lyndon_words(d / 2) {
                if (d / 2) % 2 == 1 {
                    monos.push(LieMonomial::square_of(&w));
                }
            }
        }
        monos.sort();
        let b = Arc::new(DegreeBasis::new(d, monos));
        self.bases.lock().expect("basis cache").entry(d).or_insert(b.clone());
        Ok(b)
    }

    pub fn dim(&self, d: u32) -> Result<usize, FreeLieError> {
        Ok(self.basis(d)?.len())
    }

    pub fn check_element<F: Scalar>(&self, e: &LieElement<L, F>) -> Result<(), FreeLieError> {
        for l in e.letters() {
            if !self.contains_letter(l) {
                return Err(FreeLieError::ForeignLetter(l.label()));
            }
        }
        Ok(())
    }

    pub fn decompose<F: Scalar>(&self, e: &LieElement<L, F>, d: u32) -> Result<Vec<F>, FreeLieError> {
        self.check_element(e)?;
        self.basis(d)?.decompose(e)
    }
}

/// Basis of the degree-`d` component of the free Lie algebra on `letters`.
pub fn monomial_basis<L: Letter>(letters: &[L], d: u32) -> Vec<LieMonomial<L>> {
    FreeLie::new(letters.to_vec(), d).basis(d).expect("within cutoff").monomials.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::letter::{Gen, GeneratorSet};
    use crate::scalar::{q, Q};

    fn alg(spec: &[(&str, u32)], cutoff: u32) -> FreeLie<Gen> {
        FreeLie::new(GeneratorSet::new(spec).unwrap().gens().to_vec(), cutoff)
    }

    #[test]
    fn single_even_generator() {
        let f = alg(&[("a", 2)], 6);
        assert_eq!(f.dim(2).unwrap(), 1);
        assert_eq!(f.dim(4).unwrap(), 0);
    }

    #[test]
    fn single_odd_generator() {
        let f = alg(&[("a", 1)], 6);
        assert_eq!(f.dim(1).unwrap(), 1);
        assert_eq!(f.dim(2).unwrap(), 1);
        assert_eq!(f.dim(3).unwrap(), 0);
    }

    #[test]
    fn two_odd_generators() {
        let f = alg(&[("a", 1), ("b", 1)], 6);
        let dims: Vec<usize> = (1..=6).map(|d| f.dim(d).unwrap()).collect();
        assert_eq!(dims, vec![2, 3, 2, 3, 6, 11]);
    }

    #[test]
    fn cutoff_enforced() {
        let f = alg(&[("a", 1)], 3);
        assert!(f.basis(4).is_err());
    }

    #[test]
    fn decompose_round_trip() {
        let f = alg(&[("a", 1), ("b", 1)], 4);
        let b = f.basis(2).unwrap();
        let e: LieElement<Gen> = b.compose(&[q(3) / q(2), q(-1), q(0)]);
        assert_eq!(f.decompose(&e, 2).unwrap(), vec![q(3) / q(2), q(-1), q(0)]);
        assert_eq!(f.decompose(&LieElement::<Gen, Q>::zero(), 2).unwrap(), vec![q(0); 3]);
    }
}
