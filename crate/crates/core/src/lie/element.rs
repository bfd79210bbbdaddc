//! Elements of free graded Lie algebras and the normalizing bracket.

use std::any::{Any, TypeId};
use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use super::letter::Letter;
use super::monomial::LieMonomial;
use crate::scalar::{Scalar, Q};

/// A finite ℚ-linear (more generally `F`-linear) combination of basis
/// monomials. Stored coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieElement<L: Letter, F: Scalar = Q> {
    terms: BTreeMap<LieMonomial<L>, F>,
}

impl<L: Letter, F: Scalar> Default for LieElement<L, F> {
    fn default() -> Self {
        LieElement { terms: BTreeMap::new() }
    }
}

impl<L: Letter, F: Scalar> LieElement<L, F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn letter(l: L) -> Self {
        Self::monomial(LieMonomial::letter(l))
    }

    pub fn monomial(m: LieMonomial<L>) -> Self {
        Self::term(m, F::one())
    }

    pub fn term(m: LieMonomial<L>, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn from_terms(it: impl IntoIterator<Item = (LieMonomial<L>, F)>) -> Self {
        let mut e = Self::zero();
        for (m, c) in it {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, m: LieMonomial<L>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, c: &F, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c.clone() * x.clone());
        }
    }

    pub fn scaled(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LieElement { terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LieMonomial<L>, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &LieMonomial<L>) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Degree of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// Terms of bracket length exactly `k`.
    pub fn length_part(&self, k: usize) -> Self {
        LieElement {
            terms: self.terms.iter().filter(|(m, _)| m.length() == k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Smallest bracket length among the terms.
    pub fn min_length(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.length()).min()
    }

    pub fn letters(&self) -> impl Iterator<Item = &L> {
        self.terms.keys().flat_map(|m| m.letters())
    }

    /// Normalized graded bracket.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let r = bracket_monomials::<L, F>(u, v);
                out.add_scaled(&(a.clone() * b.clone()), &r);
            }
        }
        out
    }

    /// Extends `f` (given on letters) to a morphism of graded Lie algebras.
    pub fn map_letters<M: Letter>(&self, f: &mut impl FnMut(&L) -> LieElement<M, F>) -> LieElement<M, F> {
        let mut memo: HashMap<LieMonomial<L>, LieElement<M, F>> = HashMap::new();
        let mut out = LieElement::zero();
        for (m, c) in &self.terms {
            let img = map_mono(m, f, &mut memo);
            out.add_scaled(c, &img);
        }
        out
    }

    /// Extends `f` (given on letters) to a derivation whose degree has the
    /// given parity: `D[u,v] = [Du,v] + (-1)^{parity·|u|}[u,Dv]`.
    pub fn derive(&self, parity: u32, f: &mut impl FnMut(&L) -> LieElement<L, F>) -> Self {
        let mut memo: HashMap<LieMonomial<L>, LieElement<L, F>> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let img = derive_mono(m, parity, f, &mut memo);
            out.add_scaled(c, &img);
        }
        out
    }

    /// Human-readable rendering, e.g. `[[b,a],c] - 2*[x,y]`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = is_negative_display(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if abs != F::one() {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(&m.render());
        }
        s
    }
}

fn is_negative_display<F: Scalar>(c: &F) -> bool {
    format!("{c}").starts_with('-')
}

impl<L: Letter, F: Scalar> fmt::Debug for LieElement<L, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<L: Letter, F: Scalar> fmt::Display for LieElement<L, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<L: Letter, F: Scalar> Add for LieElement<L, F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<L: Letter, F: Scalar> Sub for LieElement<L, F> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<L: Letter, F: Scalar> AddAssign for LieElement<L, F> {
    fn add_assign(&mut self, rhs: Self) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<L: Letter, F: Scalar> SubAssign for LieElement<L, F> {
    fn sub_assign(&mut self, rhs: Self) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl<L: Letter, F: Scalar> Neg for LieElement<L, F> {
    type Output = Self;
    fn neg(self) -> Self {
        LieElement { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

fn sign<F: Scalar>(e: u32) -> F {
    F::sign(e as u64)
}

fn map_mono<L: Letter, M: Letter, F: Scalar>(
    m: &LieMonomial<L>,
    f: &mut impl FnMut(&L) -> LieElement<M, F>,
    memo: &mut HashMap<LieMonomial<L>, LieElement<M, F>>,
) -> LieElement<M, F> {
    if let Some(r) = memo.get(m) {
        return r.clone();
    }
    let r = match m.as_letter() {
        Some(l) => f(l),
        None => {
            let (u, v) = m.factors().expect("non-letter monomial");
            let a = map_mono(&u, f, memo);
            let b = map_mono(&v, f, memo);
            a.bracket(&b)
        }
    };
    memo.insert(m.clone(), r.clone());
    r
}

fn derive_mono<L: Letter, F: Scalar>(
    m: &LieMonomial<L>,
    parity: u32,
    f: &mut impl FnMut(&L) -> LieElement<L, F>,
    memo: &mut HashMap<LieMonomial<L>, LieElement<L, F>>,
) -> LieElement<L, F> {
    if let Some(r) = memo.get(m) {
        return r.clone();
    }
    let r = match m.as_letter() {
        Some(l) => f(l),
        None => {
            let (u, v) = m.factors().expect("non-letter monomial");
            let du = derive_mono(&u, parity, f, memo);
            let dv = derive_mono(&v, parity, f, memo);
            let eu = LieElement::monomial(u.clone());
            let ev = LieElement::monomial(v);
            let mut r = du.bracket(&ev);
            r.add_scaled(&sign(parity * u.degree()), &eu.bracket(&dv));
            r
        }
    };
    memo.insert(m.clone(), r.clone());
    r
}

type Memo<L, F> = HashMap<(LieMonomial<L>, LieMonomial<L>), LieElement<L, F>>;

thread_local! {
    static MEMOS: RefCell<HashMap<TypeId, Box<dyn Any>>> = RefCell::new(HashMap::new());
    static DEPTH: Cell<usize> = const { Cell::new(0) };
}

const MAX_DEPTH: usize = 100_000;

fn memo_get<L: Letter, F: Scalar>(key: &(LieMonomial<L>, LieMonomial<L>)) -> Option<LieElement<L, F>> {
    MEMOS.with(|m| {
        m.borrow()
            .get(&TypeId::of::<Memo<L, F>>())
            .and_then(|b| b.downcast_ref::<Memo<L, F>>())
            .and_then(|memo| memo.get(key).cloned())
    })
}

fn memo_put<L: Letter, F: Scalar>(key: (LieMonomial<L>, LieMonomial<L>), value: LieElement<L, F>) {
    MEMOS.with(|m| {
        let mut m = m.borrow_mut();
        let entry = m.entry(TypeId::of::<Memo<L, F>>()).or_insert_with(|| Box::new(Memo::<L, F>::new()));
        entry.downcast_mut::<Memo<L, F>>().expect("memo type").insert(key, value);
    })
}

/// Bracket of two basis monomials, rewritten into the basis.
///
/// Results are memoized per thread; the memo only ever stores the unique
/// normal form of a key, so it never changes an answer.
pub fn bracket_monomials<L: Letter, F: Scalar>(u: &LieMonomial<L>, v: &LieMonomial<L>) -> LieElement<L, F> {
    let key = (u.clone(), v.clone());
    if let Some(r) = memo_get::<L, F>(&key) {
        return r;
    }
    let depth = DEPTH.with(|d| {
        d.set(d.get() + 1);
        d.get()
    });
    assert!(depth < MAX_DEPTH, "bracket rewriting does not terminate on {u:?}, {v:?}");
    let r = rewrite(u, v);
    DEPTH.with(|d| d.set(d.get() - 1));
    memo_put(key, r.clone());
    r
}

fn rewrite<L: Letter, F: Scalar>(u: &LieMonomial<L>, v: &LieMonomial<L>) -> LieElement<L, F> {
    let two = F::from_i64(2);
    // [[P,P],P] = 0 for odd P
    if (u.is_square() && !v.is_square() && u.lyndon_word() == v.word())
        || (v.is_square() && !u.is_square() && v.lyndon_word() == u.word())
    {
        return LieElement::zero();
    }
    if u.is_square() {
        // [[P,P],z] = 2[P,[P,z]]
        let p = LieMonomial::lyndon_unchecked(u.lyndon_word().to_vec());
        let inner = bracket_monomials::<L, F>(&p, v);
        return LieElement::monomial(p).bracket(&inner).scaled(&two);
    }
    if v.is_square() {
        // [u,[P,P]] = -2[P,[P,u]]
        let p = LieMonomial::lyndon_unchecked(v.lyndon_word().to_vec());
        let inner = bracket_monomials::<L, F>(&p, u);
        return LieElement::monomial(p).bracket(&inner).scaled(&(-two));
    }
    let (w1, w2) = (u.word(), v.word());
    match w1.cmp(w2) {
        std::cmp::Ordering::Equal => {
            if u.degree() % 2 == 1 {
                LieElement::monomial(LieMonomial::square_of(w1))
            } else {
                LieElement::zero()
            }
        }
        std::cmp::Ordering::Greater => {
            // [u,v] = -(-1)^{|u||v|}[v,u]
            let s: F = -sign::<F>(u.degree() * v.degree());
            bracket_monomials::<L, F>(v, u).scaled(&s)
        }
        std::cmp::Ordering::Less => {
            let concat = match u.factors() {
                None => true,
                Some((_, u2)) => u2.word() >= w2,
            };
            if concat {
                let mut w = w1.to_vec();
                w.extend_from_slice(w2);
                return LieElement::monomial(LieMonomial::lyndon_unchecked(w));
            }
            // [[a,b],v] = [a,[b,v]] - (-1)^{|a||b|}[b,[a,v]]
            let (a, b) = u.factors().expect("non-letter");
            let bv = bracket_monomials::<L, F>(&b, v);
            let av = bracket_monomials::<L, F>(&a, v);
            let mut r = LieElement::monomial(a.clone()).bracket(&bv);
            let s: F = -sign::<F>(a.degree() * b.degree());
            r.add_scaled(&s, &LieElement::monomial(b).bracket(&av));
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::letter::{Gen, GeneratorSet};
    use crate::scalar::q;

    fn gens(spec: &[(&str, u32)]) -> Vec<LieElement<Gen>> {
        let s = GeneratorSet::new(spec).unwrap();
        s.gens().iter().cloned().map(LieElement::letter).collect()
    }

    #[test]
    fn antisymmetry_cancels() {
        let g = gens(&[("a", 1), ("b", 2)]);
        let (a, b) = (&g[0], &g[1]);
        let s = q(-1) * sign::<Q>(2);
        let mut e = a.bracket(b);
        e.add_scaled(&-s, &b.bracket(a));
        assert!(e.is_zero());
    }

    #[test]
    fn even_square_vanishes_odd_does_not() {
        let g = gens(&[("a", 2), ("b", 1)]);
        assert!(g[0].bracket(&g[0]).is_zero());
        assert!(!g[1].bracket(&g[1]).is_zero());
        assert!(g[1].bracket(&g[1]).bracket(&g[1]).is_zero());
    }

    #[test]
    fn render_is_readable() {
        let g = gens(&[("a", 1), ("b", 1)]);
        let e = g[1].bracket(&g[0]).scaled(&q(2));
        assert_eq!(e.render(), "2*[a,b]");
        let e = g[0].bracket(&g[1]) - g[0].clone().bracket(&g[0]).scaled(&crate::qr(1, 2));
        assert_eq!(e.render(), "-1/2*[a,a] + [a,b]");
    }

    #[test]
    fn derivation_on_bracket() {
        let g = gens(&[("a", 2), ("b", 3), ("c", 1)]);
        // D b = [c,c] ... degree +0 derivation: send a ↦ a, b ↦ b (Euler-type)
        let e = g[0].bracket(&g[1]);
        let d = e.derive(0, &mut |l: &Gen| LieElement::letter(l.clone()));
        assert_eq!(d, e.scaled(&q(2)));
    }
}
