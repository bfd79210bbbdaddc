//! Basis monomials of free graded Lie algebras.
//!
//! A basis monomial is either the standard bracketing `P_w` of a Lyndon word
//! `w`, or a square `[P_w, P_w]` with `w` Lyndon of odd degree. Squares are
//! stored with the doubled word `ww`, which is never Lyndon, so the word alone
//! identifies the monomial.

use std::sync::Arc;

use super::letter::Letter;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieMonomial<L: Letter> {
    degree: u32,
    word: Arc<[L]>,
    square: bool,
}

pub fn word_degree<L: Letter>(w: &[L]) -> u32 {
    w.iter().map(|l| l.degree()).sum()
}

pub fn is_lyndon<L: Letter>(w: &[L]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Split point of the standard factorization `w = uv` (v the longest proper
/// Lyndon suffix). `w` must be Lyndon of length at least 2.
pub fn standard_split<L: Letter>(w: &[L]) -> usize {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("Lyndon word of length >= 2")
}

impl<L: Letter> LieMonomial<L> {
    pub fn letter(l: L) -> Self {
        LieMonomial { degree: l.degree(), word: Arc::from(vec![l]), square: false }
    }

    /// `P_w`; panics unless `w` is Lyndon.
    pub fn lyndon(w: Vec<L>) -> Self {
        assert!(is_lyndon(&w), "not a Lyndon word: {w:?}");
        LieMonomial { degree: word_degree(&w), word: Arc::from(w), square: false }
    }

    pub(crate) fn lyndon_unchecked(w: Vec<L>) -> Self {
        LieMonomial { degree: word_degree(&w), word: Arc::from(w), square: false }
    }

    /// `[P_w, P_w]`; panics unless `w` is Lyndon of odd degree.
    pub fn square_of(w: &[L]) -> Self {
        assert!(is_lyndon(w) && word_degree(w) % 2 == 1, "square of a non-odd or non-Lyndon word");
        let mut ww = w.to_vec();
        ww.extend_from_slice(w);
        LieMonomial { degree: 2 * word_degree(w), word: Arc::from(ww), square: true }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_square(&self) -> bool {
        self.square
    }

    /// The full letter word (`ww` for squares).
    pub fn word(&self) -> &[L] {
        &self.word
    }

    /// The Lyndon word `w` (for squares: the half).
    pub fn lyndon_word(&self) -> &[L] {
        if self.square {
            &self.word[..self.word.len() / 2]
        } else {
            &self.word
        }
    }

    /// Number of letters, i.e. bracket length.
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn as_letter(&self) -> Option<&L> {
        (!self.square && self.word.len() == 1).then(|| &self.word[0])
    }

    /// The two bracket factors of a non-letter monomial.
    pub fn factors(&self) -> Option<(LieMonomial<L>, LieMonomial<L>)> {
        if self.square {
            let h = LieMonomial::lyndon_unchecked(self.lyndon_word().to_vec());
            return Some((h.clone(), h));
        }
        if self.word.len() < 2 {
            return None;
        }
        let k = standard_split(&self.word);
        Some((
            LieMonomial::lyndon_unchecked(self.word[..k].to_vec()),
            LieMonomial::lyndon_unchecked(self.word[k..].to_vec()),
        ))
    }

    /// Bracket expression with letter labels, e.g. `[[a,b],c]`.
    pub fn render(&self) -> String {
        match (self.as_letter(), self.factors()) {
            (Some(l), _) => l.label(),
            (None, Some((u, v))) => format!("[{},{}]", u.render(), v.render()),
            (None, None) => unreachable!(),
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = &L> {
        self.word.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::letter::GeneratorSet;

    #[test]
    fn lyndon_words() {
        let s = GeneratorSet::new(&[("a", 1), ("b", 1)]).unwrap();
        let a = s.get("a").unwrap().clone();
        let b = s.get("b").unwrap().clone();
        assert!(is_lyndon(&[a.clone(), b.clone()]));
        assert!(!is_lyndon(&[b.clone(), a.clone()]));
        assert!(!is_lyndon(&[a.clone(), a.clone()]));
        assert!(is_lyndon(&[a.clone(), a.clone(), b.clone()]));
        assert!(is_lyndon(&[a.clone(), b.clone(), b.clone()]));
        let w = vec![a.clone(), a.clone(), b.clone(), a.clone(), b.clone()];
        assert_eq!(standard_split(&w), 3);
        assert_eq!(LieMonomial::lyndon(w).render(), "[[a,[a,b]],[a,b]]");
        assert_eq!(LieMonomial::square_of(&[a]).render(), "[a,a]");
    }
}
