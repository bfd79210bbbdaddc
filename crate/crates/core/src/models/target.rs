//! Graded Lie algebras that models resolve: finite presentations, and the
//! homology of a free DGL.

use std::collections::BTreeMap;
use std::sync::Mutex;

use super::ModelError;
use crate::dgl::{DegreeHomology, Dgl};
use crate::lie::{parse_expr, FreeLie, Gen, GeneratorSet, LieElement};
use crate::linalg::{to_dense, Echelon};
use crate::scalar::Q;

/// A graded Lie algebra `L` realized as a subquotient of a free "ambient"
/// Lie algebra: elements are ambient elements, and `class_of` reads off
/// coordinates on a fixed basis of `L_k`.
pub trait LieTarget {
    fn dim(&self, k: u32) -> Result<usize, ModelError>;
    /// Ambient representatives of a basis of `L_k`, with suggested names.
    fn representatives(&self, k: u32) -> Result<Vec<(String, LieElement<Gen>)>, ModelError>;
    /// Coordinates of the class of a homogeneous ambient element of degree `k`.
    fn class_of(&self, k: u32, e: &LieElement<Gen>) -> Result<Vec<Q>, ModelError>;
}

struct Quotient {
    ideal: Vec<LieElement<Gen>>,
    complement: Vec<usize>,
    full: Echelon<Q>,
}

/// `L = 𝕃⟨X⟩ / (R)` for homogeneous relations `R`.
pub struct GLPresentation {
    gens: GeneratorSet,
    relations: Vec<LieElement<Gen>>,
    cutoff: u32,
    free: FreeLie<Gen>,
    cache: Mutex<BTreeMap<u32, std::sync::Arc<Quotient>>>,
}

impl std::fmt::Debug for GLPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GLPresentation").field("gens", &self.gens).field("relations", &self.relations).finish()
    }
}

impl GLPresentation {
    /// Relations must be homogeneous; degrees above `cutoff` are reported
    /// as cutoff-incomplete.
    pub fn new(gens: GeneratorSet, relations: Vec<LieElement<Gen>>, cutoff: u32) -> Result<Self, ModelError> {
        let mut rels = Vec::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            let d = r.degree().filter(|_| r.is_homogeneous()).ok_or(ModelError::InhomogeneousRelation(r.render()))?;
            if d > cutoff {
                return Err(ModelError::CutoffIncomplete(format!("relation {} has degree {d} > {cutoff}", r.render())));
            }
            rels.push(r);
        }
        let free = FreeLie::new(gens.gens().to_vec(), cutoff);
        Ok(GLPresentation { gens, relations: rels, cutoff, free, cache: Mutex::new(BTreeMap::new()) })
    }

    /// Parses relations in the bracket grammar.
    pub fn parse(spec: &[(&str, u32)], relations: &[&str], cutoff: u32) -> Result<Self, ModelError> {
        let gens = GeneratorSet::new(spec)?;
        let rels = relations
            .iter()
            .map(|r| parse_expr(r).and_then(|e| e.eval(&|n| gens.get(n).cloned())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(gens, rels, cutoff)
    }

    pub fn free(spec: &[(&str, u32)], cutoff: u32) -> Result<Self, ModelError> {
        Self::new(GeneratorSet::new(spec)?, vec![], cutoff)
    }

    /// All brackets of generators vanish (including `[a,a]` for odd `a`).
    pub fn abelian(spec: &[(&str, u32)], cutoff: u32) -> Result<Self, ModelError> {
        let gens = GeneratorSet::new(spec)?;
        let mut rels = Vec::new();
        for (i, a) in gens.gens().iter().enumerate() {
            for b in &gens.gens()[i..] {
                if a.degree + b.degree <= cutoff {
                    rels.push(LieElement::letter(a.clone()).bracket(&LieElement::letter(b.clone())));
                }
            }
        }
        Self::new(gens, rels, cutoff)
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn relations(&self) -> &[LieElement<Gen>] {
        &self.relations
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    fn quotient(&self, k: u32) -> Result<std::sync::Arc<Quotient>, ModelError> {
        if k > self.cutoff {
            return Err(ModelError::CutoffIncomplete(format!("degree {k} exceeds the presentation cutoff {}", self.cutoff)));
        }
        if let Some(q) = self.cache.lock().expect("cache").get(&k) {
            return Ok(q.clone());
        }
        let basis = self.free.basis(k)?;
        let mut solver = Echelon::new(basis.len());
        let mut ideal = Vec::new();
        let push = |e: LieElement<Gen>, solver: &mut Echelon<Q>, ideal: &mut Vec<LieElement<Gen>>| {
            if !e.is_zero() && solver.insert_sparse(basis.decompose_sparse(&e)).is_some() {
                ideal.push(e);
            }
        };
        for r in &self.relations {
            if r.degree() == Some(k) {
                push(r.clone(), &mut solver, &mut ideal);
            }
        }
        for g in self.gens.gens() {
            if g.degree < k {
                let lower = self.quotient(k - g.degree)?;
                for i in &lower.ideal {
                    push(LieElement::letter(g.clone()).bracket(i), &mut solver, &mut ideal);
                }
            }
        }
        // complement: basis monomials independent modulo the ideal
        let mut full = solver;
        let mut complement = Vec::new();
        for j in 0..basis.len() {
            let mut v = BTreeMap::new();
            v.insert(j, Q::from_integer(1.into()));
            if full.insert_sparse(v).is_some() {
                complement.push(j);
            }
        }
        let q = std::sync::Arc::new(Quotient { ideal, complement, full });
        self.cache.lock().expect("cache").insert(k, q.clone());
        Ok(q)
    }

    /// Dimension table `k ↦ dim L_k` through the cutoff.
    pub fn dims(&self) -> Result<BTreeMap<u32, usize>, ModelError> {
        (1..=self.cutoff).map(|k| Ok((k, self.dim(k)?))).collect()
    }
}

impl LieTarget for GLPresentation {
    fn dim(&self, k: u32) -> Result<usize, ModelError> {
        Ok(self.quotient(k)?.complement.len())
    }

    fn representatives(&self, k: u32) -> Result<Vec<(String, LieElement<Gen>)>, ModelError> {
        let q = self.quotient(k)?;
        let basis = self.free.basis(k)?;
        Ok(q.complement.iter().map(|&j| (basis.monomials[j].render(), LieElement::monomial(basis.monomials[j].clone()))).collect())
    }

    fn class_of(&self, k: u32, e: &LieElement<Gen>) -> Result<Vec<Q>, ModelError> {
        let q = self.quotient(k)?;
        let basis = self.free.basis(k)?;
        let c = q.full.solve_sparse(&basis.decompose_sparse(e)).expect("full rank");
        let r = q.ideal.len();
        Ok(to_dense(&c, r + q.complement.len())[r..].to_vec())
    }
}

/// `H'_*(B)` for a free DGL `B`, on the homology representatives.
pub struct HomologyTarget<'a> {
    pub dgl: &'a Dgl<Gen>,
    cache: Mutex<BTreeMap<u32, std::sync::Arc<DegreeHomology<Gen>>>>,
}

impl<'a> HomologyTarget<'a> {
    pub fn new(dgl: &'a Dgl<Gen>) -> Self {
        HomologyTarget { dgl, cache: Mutex::new(BTreeMap::new()) }
    }

    pub fn homology(&self, k: u32) -> Result<std::sync::Arc<DegreeHomology<Gen>>, ModelError> {
        if k > self.dgl.cutoff() {
            return Err(ModelError::CutoffIncomplete(format!("homology in degree {k} needs a DGL cutoff of at least {k}")));
        }
        if let Some(h) = self.cache.lock().expect("cache").get(&k) {
            return Ok(h.clone());
        }
        let h = std::sync::Arc::new(self.dgl.homology_in_degree(k)?);
        self.cache.lock().expect("cache").insert(k, h.clone());
        Ok(h)
    }
}

impl LieTarget for HomologyTarget<'_> {
    fn dim(&self, k: u32) -> Result<usize, ModelError> {
        Ok(self.homology(k)?.betti)
    }

    fn representatives(&self, k: u32) -> Result<Vec<(String, LieElement<Gen>)>, ModelError> {
        let h = self.homology(k)?;
        Ok(h.representatives
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let name = match z.terms().next() {
                    Some((m, c)) if z.len() == 1 && *c == Q::from_integer(1.into()) && m.as_letter().is_some() => {
                        m.as_letter().expect("letter").name.to_string()
                    }
                    _ => format!("h{k}_{i}"),
                };
                (name, z.clone())
            })
            .collect())
    }

    fn class_of(&self, k: u32, e: &LieElement<Gen>) -> Result<Vec<Q>, ModelError> {
        self.homology(k)?.class_of(e).ok_or_else(|| ModelError::NotACycle(e.render()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_dimensions() {
        let p = GLPresentation::abelian(&[("a", 1), ("b", 2)], 6).unwrap();
        let d = p.dims().unwrap();
        assert_eq!(d[&1], 1);
        assert_eq!(d[&2], 1);
        assert!((3..=6).all(|k| d[&k] == 0));
    }

    #[test]
    fn free_and_quotient_classes() {
        let p = GLPresentation::parse(&[("a", 1), ("b", 1)], &["[a,b]"], 4).unwrap();
        // L_2 = span([a,a],[b,b]); [a,b] is zero in L
        assert_eq!(p.dim(2).unwrap(), 2);
        let a = LieElement::letter(p.generators().gens()[0].clone());
        let b = LieElement::letter(p.generators().gens()[1].clone());
        assert!(p.class_of(2, &a.bracket(&b)).unwrap().iter().all(|x| *x == Q::default()));
        assert!(p.class_of(2, &a.bracket(&a)).unwrap().iter().any(|x| *x != Q::default()));
        // [a,[a,b]] and [b,[a,b]] vanish, [a,[a,a]] = 0 anyway: L_3 = 0
        assert_eq!(p.dim(3).unwrap(), 0);
    }
}
