//! Bigraded models `(𝕃⟨X_{*,*}⟩, ∂_A)` of graded Lie algebras.
//!
//! A generator `x ∈ X_{n,k}` has filtration `n`, internal degree `k` and
//! total degree `n + k`; `∂_A` lowers `n` by one and keeps `k`. Generators are
//! adjoined for internal degree `k = 1, 2, …` and, within `k`, for filtration
//! `n = 0, 1, …`: first enough of `X_{0,k}` to reach `L_k`, then `X_{n+1,k}`
//! killing `H_{n,k}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::target::LieTarget;
use super::ModelError;
use crate::dgl::Dgl;
use crate::lie::{monomial::standard_split, Gen, GeneratorSet, LieElement, LieMonomial};
use crate::linalg::{homology_at, Echelon, SparseMatrix};
use crate::scalar::Q;

/// Bidegree `(filtration, internal degree)`.
pub type Bidegree = (u32, u32);

/// Lyndon words over bigraded letters, enumerated by bidegree.
#[derive(Clone, Debug, Default)]
pub struct BigradedBasis {
    letters: Vec<(Gen, Bidegree)>,
    lyndon: BTreeMap<Bidegree, Arc<Vec<Vec<Gen>>>>,
}

impl BigradedBasis {
    pub fn new(mut letters: Vec<(Gen, Bidegree)>) -> Self {
        letters.sort();
        BigradedBasis { letters, lyndon: BTreeMap::new() }
    }

    pub fn letters(&self) -> &[(Gen, Bidegree)] {
        &self.letters
    }

    /// Adds letters of internal degree `k`; cached words of internal degree
    /// `≥ k` are discarded.
    pub fn extend(&mut self, new: impl IntoIterator<Item = (Gen, Bidegree)>) {
        let mut kmin = u32::MAX;
        for (g, b) in new {
            kmin = kmin.min(b.1);
            self.letters.push((g, b));
        }
        self.letters.sort();
        self.lyndon.retain(|b, _| b.1 < kmin);
    }

    fn words(&mut self, w: Bidegree) -> Arc<Vec<Vec<Gen>>> {
        if let Some(v) = self.lyndon.get(&w) {
            return v.clone();
        }
        let mut out: Vec<Vec<Gen>> = self.letters.iter().filter(|(_, b)| *b == w).map(|(g, _)| vec![g.clone()]).collect();
        for k1 in 1..w.1 {
            for n1 in 0..=w.0 {
                let (w1, w2) = ((n1, k1), (w.0 - n1, w.1 - k1));
                let left = self.words(w1);
                if left.is_empty() {
                    continue;
                }
                let right = self.words(w2);
                for u in left.iter() {
                    for v in right.iter() {
                        if u >= v {
                            continue;
                        }
                        if u.len() == 1 || &u[standard_split(u)..] >= v.as_slice() {
                            let mut x = u.clone();
                            x.extend_from_slice(v);
                            out.push(x);
                        }
                    }
                }
            }
        }
        out.sort();
        let out = Arc::new(out);
        self.lyndon.insert(w, out.clone());
        out
    }

    /// Basis monomials of bidegree `w`, in monomial order.
    pub fn basis(&mut self, w: Bidegree) -> Vec<LieMonomial<Gen>> {
        let mut out: Vec<LieMonomial<Gen>> = self.words(w).iter().map(|x| LieMonomial::lyndon(x.clone())).collect();
        if w.0.is_multiple_of(2) && w.1.is_multiple_of(2) && w.1 > 0 && ((w.0 + w.1) / 2) % 2 == 1 {
            for x in self.words((w.0 / 2, w.1 / 2)).iter() {
                out.push(LieMonomial::square_of(x));
            }
        }
        out.sort();
        out
    }
}

/// A bigraded model of a graded Lie algebra through cutoffs.
#[derive(Clone, Debug)]
pub struct BigradedModel {
    pub gens: GeneratorSet,
    bidegrees: Vec<Bidegree>,
    diff: BTreeMap<Gen, LieElement<Gen>>,
    /// Ambient representatives in the target of the images of `X_0`.
    pub x0_images: BTreeMap<Gen, LieElement<Gen>>,
    pub deg_cutoff: u32,
    pub filt_cutoff: u32,
    /// Bidegrees `(n, k)` with `n + k ≤ deg_cutoff` where homology survives
    /// because `X_{n+1}` lies beyond the filtration cutoff.
    pub incomplete: Vec<(Bidegree, usize)>,
    pub(crate) basis: BigradedBasis,
}

fn fresh_name(gens: &GeneratorSet, want: &str, fallback: String) -> String {
    let mut name = if crate::lie::letter::valid_name(want) && gens.get(want).is_none() { want.to_string() } else { fallback };
    while gens.get(&name).is_some() {
        name.push('\'');
    }
    name
}

impl BigradedModel {
    pub fn bidegree(&self, g: &Gen) -> Bidegree {
        self.bidegrees[g.index]
    }

    pub fn filtration(&self, g: &Gen) -> u32 {
        self.bidegree(g).0
    }

    pub fn generators(&self) -> &[Gen] {
        self.gens.gens()
    }

    /// Generators of `X_{n,*}` in index order.
    pub fn generators_in_filtration(&self, n: u32) -> Vec<Gen> {
        self.gens.gens().iter().filter(|g| self.filtration(g) == n).cloned().collect()
    }

    pub fn differential_of(&self, g: &Gen) -> LieElement<Gen> {
        self.diff.get(g).cloned().unwrap_or_default()
    }

    pub fn differential_map(&self) -> &BTreeMap<Gen, LieElement<Gen>> {
        &self.diff
    }

    pub fn d(&self, e: &LieElement<Gen>) -> LieElement<Gen> {
        e.derive(1, &mut |g| self.differential_of(g))
    }

    /// Bigraded weight of a monomial.
    pub fn weight(&self, m: &LieMonomial<Gen>) -> Bidegree {
        m.letters().fold((0, 0), |acc, g| {
            let b = self.bidegree(g);
            (acc.0 + b.0, acc.1 + b.1)
        })
    }

    pub fn basis(&mut self, w: Bidegree) -> Vec<LieMonomial<Gen>> {
        self.basis.basis(w)
    }

    /// Matrix of `∂_A : A_{n,k} → A_{n-1,k}` on bigraded bases.
    pub fn boundary_matrix(&mut self, n: u32, k: u32) -> SparseMatrix<Q> {
        let src = self.basis((n, k));
        if n == 0 {
            return SparseMatrix::zeros(0, src.len());
        }
        let dst = self.basis((n - 1, k));
        let index: BTreeMap<&LieMonomial<Gen>, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let cols: Vec<BTreeMap<usize, Q>> = src
            .iter()
            .map(|m| self.d(&LieElement::monomial(m.clone())).terms().map(|(t, c)| (index[t], c.clone())).collect())
            .collect();
        SparseMatrix::from_sparse_columns(dst.len(), &cols)
    }

    /// The associated DGL on total degrees (homology valid through
    /// `deg_cutoff`).
    pub fn associated_dgl(&self) -> Dgl<Gen> {
        Dgl::new(self.gens.gens().to_vec(), self.diff.clone(), self.deg_cutoff).expect("model differential is valid")
    }

    /// Every `∂_A x` has bracket length at least 2.
    pub fn is_decomposable(&self) -> bool {
        self.diff.values().all(|v| v.min_length().is_none_or(|l| l >= 2))
    }

    /// `∂_A² = 0` on generators.
    pub fn squares_to_zero(&self) -> bool {
        self.diff.values().all(|v| self.d(v).is_zero())
    }

    /// Generator counts by bidegree.
    pub fn generator_table(&self) -> BTreeMap<Bidegree, usize> {
        let mut t = BTreeMap::new();
        for g in self.gens.gens() {
            *t.entry(self.bidegree(g)).or_insert(0) += 1;
        }
        t
    }

    /// `H_{n,k}(A, ∂_A)` dimension on bigraded bases.
    pub fn homology_dim(&mut self, n: u32, k: u32) -> usize {
        let dim = self.basis((n, k)).len();
        let out = self.boundary_matrix(n, k);
        let inn = self.boundary_matrix(n + 1, k);
        homology_at(&out, &inn, dim).expect("shapes agree").betti
    }

    /// Checks the model against its target through the cutoffs: `H_{0,k}`
    /// maps isomorphically onto `L_k`, and `H_{n,k} = 0` for `n ≥ 1` wherever
    /// the filtration cutoff allowed it to be killed.
    pub fn verify_against(&mut self, target: &impl LieTarget) -> Result<bool, ModelError> {
        for k in 1..=self.deg_cutoff {
            let a0 = self.basis((0, k));
            let eval: Vec<Vec<Q>> = a0.iter().map(|m| target.class_of(k, &self.evaluate(&LieElement::monomial(m.clone())))).collect::<Result<_, _>>()?;
            let dim_l = target.dim(k)?;
            let evm = SparseMatrix::from_columns(dim_l, &eval);
            let h = homology_at(&evm, &self.boundary_matrix(1, k), a0.len())?;
            if h.betti != 0 || crate::linalg::rank(&evm) != dim_l {
                return Ok(false);
            }
            for n in 1..self.filt_cutoff {
                if n + k > self.deg_cutoff {
                    break;
                }
                if self.homology_dim(n, k) != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Image of a filtration-0 element in the target's ambient algebra.
    pub fn evaluate(&self, e: &LieElement<Gen>) -> LieElement<Gen> {
        e.map_letters(&mut |g| self.x0_images.get(g).cloned().unwrap_or_default())
    }
}

/// Builds the bigraded model of `target` with generators of total degree
/// `≤ deg_cutoff + 1` and filtration `≤ filt_cutoff`.
pub fn bigraded_model(target: &impl LieTarget, deg_cutoff: u32, filt_cutoff: u32) -> Result<BigradedModel, ModelError> {
    let mut m = BigradedModel {
        gens: GeneratorSet::default(),
        bidegrees: Vec::new(),
        diff: BTreeMap::new(),
        x0_images: BTreeMap::new(),
        deg_cutoff,
        filt_cutoff,
        incomplete: Vec::new(),
        basis: BigradedBasis::default(),
    };
    let top = deg_cutoff + 1;
    for k in 1..=top {
        // stage 0: reach a basis of L_k modulo decomposables
        let dim_l = target.dim(k)?;
        let mut span = Echelon::<Q>::new(dim_l);
        for mono in m.basis((0, k)) {
            span.insert(&target.class_of(k, &m.evaluate(&LieElement::monomial(mono)))?);
        }
        let mut fresh = Vec::new();
        for (i, (name, rep)) in target.representatives(k)?.into_iter().enumerate() {
            if span.insert(&target.class_of(k, &rep)?).is_some() {
                let name = fresh_name(&m.gens, &name, format!("h{k}_{i}"));
                let g = m.gens.push(&name, k)?;
                m.bidegrees.push((0, k));
                m.x0_images.insert(g.clone(), rep);
                fresh.push((g, (0, k)));
            }
        }
        m.basis.extend(fresh);
        // relations: ker(A_{0,k} → L_k) modulo ∂A_{1,k}, then H_{n,k} for n ≥ 1
        let mut n = 0;
        while n + 1 + k <= top {
            if n + 1 > filt_cutoff {
                let h = m.homology_dim(n, k);
                if h > 0 && n + k <= deg_cutoff {
                    m.incomplete.push(((n, k), h));
                }
                break;
            }
            let src = m.basis((n, k));
            let out = if n == 0 {
                let cols: Vec<Vec<Q>> = src
                    .iter()
                    .map(|mono| target.class_of(k, &m.evaluate(&LieElement::monomial(mono.clone()))))
                    .collect::<Result<_, _>>()?;
                SparseMatrix::from_columns(dim_l, &cols)
            } else {
                m.boundary_matrix(n, k)
            };
            let inn = m.boundary_matrix(n + 1, k);
            let h = homology_at(&out, &inn, src.len())?;
            let mut fresh = Vec::new();
            for (i, rep) in h.representatives.iter().enumerate() {
                let z = LieElement::from_terms(src.iter().cloned().zip(rep.iter().cloned()));
                let name = fresh_name(&m.gens, "", format!("x{}_{k}_{i}", n + 1));
                let g = m.gens.push(&name, n + 1 + k)?;
                m.bidegrees.push((n + 1, k));
                m.diff.insert(g.clone(), z);
                fresh.push((g, (n + 1, k)));
            }
            m.basis.extend(fresh);
            n += 1;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::FreeLie;
    use crate::models::target::GLPresentation;

    #[test]
    fn bigraded_basis_matches_free_lie() {
        let s = GeneratorSet::new(&[("a", 1), ("b", 2), ("c", 3)]).unwrap();
        let bideg = [(0, 1), (1, 1), (1, 2)];
        let mut bb = BigradedBasis::new(s.gens().iter().cloned().zip(bideg).collect());
        let f = FreeLie::new(s.gens().to_vec(), 7);
        for t in 1..=7u32 {
            let mut all: Vec<LieMonomial<Gen>> = Vec::new();
            for n in 0..=t {
                for k in 1..=t {
                    if n + k == t {
                        all.extend(bb.basis((n, k)));
                    }
                }
            }
            all.sort();
            assert_eq!(all, f.basis(t).unwrap().monomials, "total degree {t}");
        }
    }

    #[test]
    fn free_target_is_concentrated_in_filtration_zero() {
        let p = GLPresentation::free(&[("a", 1), ("b", 2)], 7).unwrap();
        let mut m = bigraded_model(&p, 6, 4).unwrap();
        assert!(m.generators().iter().all(|g| m.filtration(g) == 0));
        assert_eq!(m.generators().len(), 2);
        assert!(m.diff.is_empty());
        assert!(m.verify_against(&p).unwrap());
    }

    #[test]
    fn abelian_odd_generator() {
        let p = GLPresentation::abelian(&[("a", 3)], 12).unwrap();
        let mut m = bigraded_model(&p, 10, 4).unwrap();
        let x1 = m.generators_in_filtration(1);
        assert_eq!(x1.len(), 1);
        assert_eq!(m.bidegree(&x1[0]), (1, 6));
        assert_eq!(x1[0].degree, 7);
        let a = LieElement::letter(m.gens.get("a").unwrap().clone());
        assert_eq!(m.differential_of(&x1[0]), a.bracket(&a));
        assert!(m.is_decomposable() && m.squares_to_zero());
        assert!(m.verify_against(&p).unwrap());
        let x2 = m.generators_in_filtration(2);
        assert_eq!(x2.iter().map(|g| m.bidegree(g)).collect::<Vec<_>>(), vec![(2, 9)]);
    }

    #[test]
    fn abelian_even_generator() {
        let p = GLPresentation::abelian(&[("a", 2)], 9).unwrap();
        let m = bigraded_model(&p, 8, 4).unwrap();
        assert_eq!(m.generators().len(), 1);
    }

    #[test]
    fn two_odd_generators_commuting() {
        let p = GLPresentation::parse(&[("a", 1), ("b", 1)], &["[a,b]"], 7).unwrap();
        let mut m = bigraded_model(&p, 6, 5).unwrap();
        assert!(m.is_decomposable() && m.squares_to_zero());
        assert!(m.verify_against(&p).unwrap());
        assert_eq!(m.generators_in_filtration(1).len(), 1);
    }
}
