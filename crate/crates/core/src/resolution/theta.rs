//! The embedding `θ` of a bigraded or filtered model into the canonical
//! resolution of its associated DGL, and the ladder elements `x^{(s)}`.
//!
//! `θ(x) = ⟨θ(∂_0 x)⟩`, multiplicative for the shuffle bracket. For
//! `x ∈ X_n` the ladder `x^{(s)} ∈ W_{n-s}` ends at `x^{(n)} = ⟨x⟩ ∈ W_0` and
//! satisfies
//!
//! ```text
//! d_{n-s} x^{(s)} = ∂_W x^{(s+1)}      d_i x^{(s)} = 0   (0 < i < n-s)
//! ```
//!
//! Each `x^{(s)} = ⟨α_s⟩` with `α_s` a combination of the terms
//! `ω⟦y_1^{(r_1)},…,y_m^{(r_m)}⟧` over the monomials `ω` of the components
//! `∂_r x` and all `r + Σ r_j = s`. The coefficients are solved for exactly
//! against the last-face conditions rather than fixed by a sign rule. The
//! scalar on the top rung is solved for along with them; it comes out as 1
//! with the Eilenberg-Zilber sign used here.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::canonical::{lift_base, wrap, CanonicalResolution, RGen};
use super::ResolutionError;
use crate::dgl::Dgl;
use crate::lie::{Gen, LieElement, LieMonomial};
use crate::linalg::{Echelon, SparseVec};
use crate::models::{BigradedModel, FilteredModel};
use crate::scalar::Q;
use crate::simplicial::SimplicialLie;

/// Generators with filtrations and the components `∂_r` of the differential.
#[derive(Clone, Debug)]
pub struct FilteredGenerators {
    pub dgl: Dgl<Gen>,
    filtration: BTreeMap<Gen, u32>,
    /// `components[x][r] = ∂_r x`.
    components: BTreeMap<Gen, Vec<LieElement<Gen>>>,
}

impl FilteredGenerators {
    pub fn from_bigraded(m: &BigradedModel) -> Self {
        let filtration = m.generators().iter().map(|g| (g.clone(), m.filtration(g))).collect();
        let components = m.generators().iter().map(|g| (g.clone(), vec![m.differential_of(g)])).collect();
        FilteredGenerators { dgl: m.associated_dgl(), filtration, components }
    }

    pub fn from_filtered(m: &FilteredModel) -> Self {
        let filtration = m.generators().iter().map(|g| (g.clone(), m.model.filtration(g))).collect();
        let components = m
            .generators()
            .iter()
            .map(|g| (g.clone(), (0..m.model.filtration(g).max(1)).map(|r| m.component(g, r)).collect()))
            .collect();
        FilteredGenerators { dgl: m.associated_dgl(), filtration, components }
    }

    pub fn generators(&self) -> &[Gen] {
        self.dgl.generators()
    }

    pub fn filtration(&self, g: &Gen) -> u32 {
        self.filtration[g]
    }

    pub fn component(&self, g: &Gen, r: u32) -> LieElement<Gen> {
        self.components.get(g).and_then(|v| v.get(r as usize)).cloned().unwrap_or_default()
    }

    pub fn max_filtration(&self) -> u32 {
        self.filtration.values().copied().max().unwrap_or(0)
    }

    fn monomial_filtration(&self, m: &LieMonomial<Gen>) -> u32 {
        m.letters().map(|g| self.filtration(g)).sum()
    }
}

#[derive(Debug)]
pub struct ThetaEmbedding {
    pub source: FilteredGenerators,
    pub w: Arc<CanonicalResolution>,
    /// `ladders[x][s] = x^{(s)}` for `0 ≤ s ≤ n`.
    ladders: BTreeMap<Gen, Vec<LieElement<RGen>>>,
}

impl ThetaEmbedding {
    /// `x^{(s)}`; zero above the filtration of `x`.
    pub fn ladder(&self, g: &Gen, s: u32) -> LieElement<RGen> {
        self.ladders.get(g).and_then(|v| v.get(s as usize)).cloned().unwrap_or_default()
    }

    /// `θ(x) = x^{(0)}`.
    pub fn theta_of_generator(&self, g: &Gen) -> LieElement<RGen> {
        self.ladder(g, 0)
    }

    /// `θ` on an element of one filtration, landing in `W_n`.
    pub fn theta(&self, e: &LieElement<Gen>) -> Result<LieElement<RGen>, ResolutionError> {
        let mut out = LieElement::zero();
        for (m, c) in e.terms() {
            let t = self.terms(m, 0)?;
            out.add_scaled(c, &t[0]);
        }
        Ok(out)
    }

    /// `ω⟦y_1^{(r_1)},…⟧` for every admissible `r_1 + ⋯ + r_m = s`.
    fn terms(&self, m: &LieMonomial<Gen>, s: u32) -> Result<Vec<LieElement<RGen>>, ResolutionError> {
        if let Some(y) = m.as_letter() {
            return Ok(if s <= self.source.filtration(y) { vec![self.ladder(y, s)] } else { vec![] });
        }
        let (u, v) = m.factors().expect("bracket");
        let (fu, fv) = (self.source.monomial_filtration(&u), self.source.monomial_filtration(&v));
        let mut out = Vec::new();
        for s1 in 0..=s.min(fu) {
            let s2 = s - s1;
            if s2 > fv {
                continue;
            }
            let left = self.terms(&u, s1)?;
            let right = self.terms(&v, s2)?;
            for a in &left {
                for b in &right {
                    out.push(self.w.shuffle_bracket_ez(a, (fu - s1) as usize, b, (fv - s2) as usize)?);
                }
            }
        }
        Ok(out)
    }

    /// Solves for `α_1, …, α_{n-1}` and the top scalar `λ` together:
    /// `∂_W α_s = d_{n-s} α_{s-1}` and `ε α_{n-1} = λ D x`.
    fn solve_ladder(&self, g: &Gen, alpha0: &LieElement<RGen>) -> Result<(Vec<LieElement<RGen>>, Q), ResolutionError> {
        let n = self.source.filtration(g);
        let big_n = n - 1;
        // cands[s - 1] are the bracket terms available for α_s
        let mut cands: Vec<Vec<LieElement<RGen>>> = Vec::new();
        for s in 1..=big_n {
            let mut v = Vec::new();
            for r in 0..=s {
                for (m, c) in self.source.component(g, r).terms() {
                    for t in self.terms(m, s - r)? {
                        if !t.is_zero() {
                            v.push(t.scaled(c));
                        }
                    }
                }
            }
            cands.push(v);
        }
        let mut rows: HashMap<(u32, bool, LieMonomial<RGen>), usize> = HashMap::new();
        let mut put = |s: u32, counit: bool, e: &LieElement<RGen>, sign: &Q, v: &mut SparseVec<Q>| {
            for (m, c) in e.terms() {
                let k = rows.len();
                let i = *rows.entry((s, counit, m.clone())).or_insert(k);
                let x = v.remove(&i).unwrap_or_default() + c.clone() * sign.clone();
                if x != Q::default() {
                    v.insert(i, x);
                }
            }
        };
        let (one, minus) = (Q::from_integer(1.into()), Q::from_integer((-1).into()));
        let mut cols: Vec<(u32, usize, SparseVec<Q>)> = Vec::new();
        for s in 1..=big_n {
            let dim = (big_n - s) as usize;
            for (i, cand) in cands[s as usize - 1].iter().enumerate() {
                let mut v = SparseVec::new();
                put(s, false, &self.w.differential(cand), &one, &mut v);
                if s < big_n {
                    put(s + 1, false, &self.w.face(dim, dim, cand), &minus, &mut v);
                } else {
                    put(s, true, &lift_base(&self.w.augmentation(cand)), &one, &mut v);
                }
                cols.push((s, i, v));
            }
        }
        // λ enters only through the counit rows
        let mut v = SparseVec::new();
        put(big_n, true, &lift_base(&self.source.dgl.differential_of(g)), &minus, &mut v);
        cols.push((0, 0, v));
        let mut rhs = SparseVec::new();
        put(1, false, &self.w.face(big_n as usize, big_n as usize, alpha0), &one, &mut rhs);
        let mut solver = Echelon::<Q>::new(rows.len());
        let mut accepted = Vec::new();
        for (s, i, v) in cols {
            if solver.insert_sparse(v).is_some() {
                accepted.push((s, i));
            }
        }
        let fail = |what: &str| ResolutionError::Ladder { generator: g.name.to_string(), s: 1, face: n - 1, what: what.into() };
        let coeffs = solver.solve_sparse(&rhs).ok_or_else(|| fail("no combination of bracket terms closes the ladder"))?;
        let mut alphas = vec![LieElement::zero(); big_n as usize];
        let mut lambda = Q::default();
        for (k, c) in coeffs {
            match accepted[k] {
                (0, _) => lambda = c,
                (s, i) => alphas[s as usize - 1].add_scaled(&c, &cands[s as usize - 1][i]),
            }
        }
        if lambda == Q::default() {
            return Err(fail("the top rung would vanish"));
        }
        Ok((alphas, lambda))
    }

    /// `d_i x^{(s)}` for `s ≥ 1` and `0 < i < n - s` that fail to vanish.
    /// Not imposed by the solve, so checked after the fact.
    pub fn inner_face_defects(&self, g: &Gen) -> Vec<(u32, usize, LieElement<RGen>)> {
        let n = self.source.filtration(g);
        let mut out = Vec::new();
        for s in 1..n {
            let dim = (n - s) as usize;
            for i in 1..dim {
                let f = self.w.face(dim, i, &self.ladder(g, s));
                if !f.is_zero() {
                    out.push((s, i, f));
                }
            }
        }
        out
    }

    /// Checks `d_{n-s} x^{(s)} = ∂_W x^{(s+1)}` and the vanishing inner faces
    /// on every rung, reporting the first failing face.
    pub fn verify_generator(&self, g: &Gen) -> Result<(), ResolutionError> {
        let n = self.source.filtration(g);
        let fail = |s: u32, face: u32, what: &str| ResolutionError::Ladder {
            generator: g.name.to_string(),
            s,
            face,
            what: what.to_string(),
        };
        for s in 0..n {
            let x = self.ladder(g, s);
            let dim = (n - s) as usize;
            for i in 1..dim {
                if !self.w.face(dim, i, &x).is_zero() {
                    return Err(fail(s, i as u32, "inner face does not vanish"));
                }
            }
            if self.w.face(dim, dim, &x) != self.w.differential(&self.ladder(g, s + 1)) {
                return Err(fail(s, n - s, "last face is not the boundary of the next rung"));
            }
        }
        if n >= 1 && self.w.face(n as usize, 0, &self.ladder(g, 0)) != self.theta(&self.source.component(g, 0))? {
            return Err(fail(0, 0, "d_0 θ ≠ θ ∂_0"));
        }
        Ok(())
    }

    pub fn verify(&self) -> Result<(), ResolutionError> {
        self.source.generators().iter().try_for_each(|g| self.verify_generator(g))
    }

    pub fn ladders(&self) -> &BTreeMap<Gen, Vec<LieElement<RGen>>> {
        &self.ladders
    }
}

/// Builds `θ` and every ladder, verifying each generator as it is added.
/// `w` must resolve the source's associated DGL.
pub fn theta(source: FilteredGenerators, w: Arc<CanonicalResolution>) -> Result<ThetaEmbedding, ResolutionError> {
    if w.base().generators() != source.generators() || w.base().differential_map() != source.dgl.differential_map() {
        return Err(ResolutionError::Mismatch("the resolution is not of the model's associated DGL".into()));
    }
    if (w.simp_cutoff() as u32) < source.max_filtration() {
        return Err(ResolutionError::Mismatch(format!(
            "simplicial cutoff {} is below the top filtration {}",
            w.simp_cutoff(),
            source.max_filtration()
        )));
    }
    let mut order: Vec<Gen> = source.generators().to_vec();
    order.sort_by_key(|g| (source.filtration(g), g.index));
    let mut emb = ThetaEmbedding { source, w, ladders: BTreeMap::new() };
    for g in order {
        let n = emb.source.filtration(&g);
        let top = emb.w.bracket0(&LieElement::letter(g.clone()));
        if n == 0 {
            emb.ladders.insert(g, vec![top]);
            continue;
        }
        let alpha0 = emb.theta(&emb.source.component(&g, 0))?;
        let mut rungs = vec![wrap(&alpha0, n as usize)];
        let (alphas, lambda) = if n >= 2 { emb.solve_ladder(&g, &alpha0)? } else { (vec![], Q::from_integer(1.into())) };
        for (s, alpha) in alphas.iter().enumerate() {
            rungs.push(wrap(alpha, n as usize - s - 1));
        }
        rungs.push(top.scaled(&lambda));
        emb.ladders.insert(g.clone(), rungs);
        emb.verify_generator(&g)?;
    }
    Ok(emb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{bigraded_model, filtered_model, GLPresentation};

    fn embed(p: &GLPresentation, deg: u32, filt: u32) -> ThetaEmbedding {
        let m = bigraded_model(p, deg, filt).unwrap();
        let src = FilteredGenerators::from_bigraded(&m);
        let w = Arc::new(CanonicalResolution::new(&src.dgl, src.max_filtration() as usize, deg));
        theta(src, w).unwrap()
    }

    #[test]
    fn filtration_zero_is_a_sphere() {
        let e = embed(&GLPresentation::free(&[("a", 2), ("b", 3)], 6).unwrap(), 5, 2);
        let a = e.source.dgl.generator("a").unwrap().clone();
        assert_eq!(e.theta_of_generator(&a), e.w.bracket0(&LieElement::letter(a.clone())));
        assert!(e.ladder(&a, 1).is_zero());
    }

    #[test]
    fn abelian_odd_ladders() {
        let p = GLPresentation::abelian(&[("a", 1)], 8).unwrap();
        let e = embed(&p, 6, 3);
        let gens = e.source.generators().to_vec();
        let top = gens.iter().map(|g| e.source.filtration(g)).max().unwrap();
        assert!(top >= 3, "need a filtration-3 generator");
        let a = e.source.dgl.generator("a").unwrap().clone();
        let b = gens.iter().find(|g| e.source.filtration(g) == 1).unwrap();
        // θ(b) = ⟨⟦⟨a⟩,⟨a⟩⟧⟩ and b^{(1)} = ⟨b⟩
        let ta = e.theta_of_generator(&a);
        let tt = e.w.shuffle_bracket(&ta, 0, &ta, 0).unwrap();
        assert_eq!(e.theta_of_generator(b), wrap(&tt, 1));
        assert_eq!(e.ladder(b, 1), e.w.bracket0(&LieElement::letter(b.clone())));
        e.verify().unwrap();
    }

    #[test]
    fn ladders_reach_filtration_four() {
        let p = GLPresentation::abelian(&[("a", 1), ("b", 2)], 12).unwrap();
        let e = embed(&p, 8, 6);
        assert_eq!(e.source.max_filtration(), 4);
        for g in e.source.generators() {
            let n = e.source.filtration(g);
            assert_eq!(e.ladder(g, n), e.w.bracket0(&LieElement::letter(g.clone())), "{}", g.name);
            assert!(e.inner_face_defects(g).is_empty());
        }
    }

    #[test]
    fn filtered_ladders_verify() {
        let fm = filtered_model(&crate::dgl::secondary_product(7), 5, 3).unwrap();
        let src = FilteredGenerators::from_filtered(&fm);
        let w = Arc::new(CanonicalResolution::new(&src.dgl, src.max_filtration() as usize, 5));
        let e = theta(src, w).unwrap();
        e.verify().unwrap();
    }
}
