//! Morphisms of free DGLs and Baues–Lemaire minimal models.

use std::collections::BTreeMap;

use super::ModelError;
use crate::dgl::Dgl;
use crate::lie::{Gen, GeneratorSet, LieElement};
use crate::linalg::{kernel_basis, rank, to_sparse, Echelon, SparseMatrix};
use crate::scalar::Q;

/// A morphism of DGLs given on generators of the source.
#[derive(Clone, Debug)]
pub struct DglMorphism {
    pub source: Dgl<Gen>,
    pub target: Dgl<Gen>,
    pub images: BTreeMap<Gen, LieElement<Gen>>,
}

impl DglMorphism {
    pub fn new(source: Dgl<Gen>, target: Dgl<Gen>, images: BTreeMap<Gen, LieElement<Gen>>) -> Result<Self, ModelError> {
        for (g, v) in &images {
            if !v.is_zero() && (v.degree() != Some(g.degree) || !v.is_homogeneous()) {
                return Err(ModelError::NotAChainMap(format!("image of {} has the wrong degree", g.name)));
            }
            target.algebra().check_element(v)?;
        }
        Ok(DglMorphism { source, target, images })
    }

    pub fn identity(d: &Dgl<Gen>) -> Self {
        let images = d.generators().iter().map(|g| (g.clone(), LieElement::letter(g.clone()))).collect();
        DglMorphism { source: d.clone(), target: d.clone(), images }
    }

    pub fn zero(source: &Dgl<Gen>, target: &Dgl<Gen>) -> Self {
        DglMorphism { source: source.clone(), target: target.clone(), images: BTreeMap::new() }
    }

    pub fn apply(&self, e: &LieElement<Gen>) -> LieElement<Gen> {
        e.map_letters(&mut |g| self.images.get(g).cloned().unwrap_or_default())
    }

    /// `f∂ = ∂f` on every generator.
    pub fn check_chain_map(&self) -> Result<(), ModelError> {
        for g in self.source.generators() {
            let lhs = self.apply(&self.source.differential_of(g));
            let rhs = self.target.d(&self.apply(&LieElement::letter(g.clone())));
            if lhs != rhs {
                return Err(ModelError::NotAChainMap(format!("f∂{0} ≠ ∂f{0}", g.name)));
            }
        }
        Ok(())
    }

    /// Matrix of `H'_t(f)` on the homology representatives.
    pub fn induced_matrix(&self, t: u32) -> Result<SparseMatrix<Q>, ModelError> {
        let hs = self.source.homology_in_degree(t)?;
        let ht = self.target.homology_in_degree(t)?;
        let cols: Vec<_> = hs
            .representatives
            .iter()
            .map(|z| {
                let img = self.apply(z);
                ht.class_of(&img).map(|c| to_sparse(&c)).ok_or_else(|| ModelError::NotACycle(img.render()))
            })
            .collect::<Result<_, _>>()?;
        Ok(SparseMatrix::from_sparse_columns(ht.betti, &cols))
    }

    /// True iff `H'_t(f)` is an isomorphism for `1 ≤ t ≤ through`.
    pub fn verify_quasi_iso(&self, through: u32) -> Result<bool, ModelError> {
        self.check_chain_map()?;
        for t in 1..=through {
            let m = self.induced_matrix(t)?;
            if m.rows() != m.cols() || rank(&m) != m.rows() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn name_for(set: &GeneratorSet, z: &LieElement<Gen>, fallback: String) -> String {
    let mut name = match z.terms().next() {
        Some((m, c)) if z.len() == 1 && *c == Q::from_integer(1.into()) && m.as_letter().is_some() => {
            m.as_letter().expect("letter").name.to_string()
        }
        _ => fallback,
    };
    while set.get(&name).is_some() {
        name.push('\'');
    }
    name
}

/// A minimal model `φ : (𝕃V, ∂) → d` through `deg_cutoff`, built by killing
/// the kernel of `H'_{t-1}(φ)` and then the cokernel of `H'_t(φ)` for
/// `t = 1, 2, …`. A DGL that is already minimal is returned with the
/// identity.
pub fn minimal_model(d: &Dgl<Gen>, deg_cutoff: u32) -> Result<DglMorphism, ModelError> {
    if d.cutoff() < deg_cutoff {
        return Err(ModelError::CutoffIncomplete(format!("the DGL cutoff {} is below {deg_cutoff}", d.cutoff())));
    }
    if d.is_minimal() {
        return Ok(DglMorphism::identity(d));
    }
    let mut set = GeneratorSet::default();
    let mut diff: BTreeMap<Gen, LieElement<Gen>> = BTreeMap::new();
    let mut images: BTreeMap<Gen, LieElement<Gen>> = BTreeMap::new();
    let build = |set: &GeneratorSet, diff: &BTreeMap<Gen, LieElement<Gen>>| {
        Dgl::new(set.gens().to_vec(), diff.clone(), deg_cutoff).expect("valid by construction")
    };
    for t in 1..=deg_cutoff + 1 {
        if t >= 2 {
            let m = build(&set, &diff);
            let phi = DglMorphism { source: m.clone(), target: d.clone(), images: images.clone() };
            let hm = m.homology_in_degree(t - 1)?;
            let induced = phi.induced_matrix(t - 1)?;
            let basis = d.basis(t)?;
            let bd = d.boundary_matrix(t)?;
            let mut solver = Echelon::<Q>::new(bd.rows());
            let mut accepted = Vec::new();
            for j in 0..bd.cols() {
                if solver.insert(&bd.column(j)).is_some() {
                    accepted.push(j);
                }
            }
            for (i, k) in kernel_basis(&induced).into_iter().enumerate() {
                let z = hm.representatives.iter().zip(&k).fold(LieElement::zero(), |mut acc, (r, c)| {
                    acc.add_scaled(c, r);
                    acc
                });
                let fz = phi.apply(&z);
                let target_basis = d.basis(t - 1)?;
                let coeffs = solver
                    .solve(&crate::linalg::to_dense(&target_basis.decompose_sparse(&fz), bd.rows()))
                    .ok_or(ModelError::InconsistentSolve { degree: t, what: "kernel class is not a boundary".into() })?;
                let mut c = LieElement::zero();
                for (a, x) in accepted.iter().zip(coeffs) {
                    c.add_term(basis.monomials[*a].clone(), x);
                }
                let g = set.push(&name_for(&set, &LieElement::zero(), format!("u{t}_{i}")), t)?;
                diff.insert(g.clone(), z);
                images.insert(g, c);
            }
        }
        if t <= deg_cutoff {
            let m = build(&set, &diff);
            let phi = DglMorphism { source: m, target: d.clone(), images: images.clone() };
            let ht = d.homology_in_degree(t)?;
            let induced = phi.induced_matrix(t)?;
            let mut span = Echelon::<Q>::new(ht.betti);
            for j in 0..induced.cols() {
                span.insert(&induced.column(j));
            }
            for (i, rep) in ht.representatives.iter().enumerate() {
                let mut e = vec![Q::default(); ht.betti];
                e[i] = Q::from_integer(1.into());
                if span.insert(&e).is_some() {
                    let g = set.push(&name_for(&set, rep, format!("v{t}_{i}")), t)?;
                    images.insert(g, rep.clone());
                }
            }
        }
    }
    let m = build(&set, &diff);
    Ok(DglMorphism { source: m, target: d.clone(), images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgl::{coproduct, disk, sphere};

    #[test]
    fn identity_and_zero() {
        let s = sphere(3, "a", 6).unwrap();
        assert!(DglMorphism::identity(&s).verify_quasi_iso(6).unwrap());
        assert!(!DglMorphism::zero(&s, &s).verify_quasi_iso(6).unwrap());
    }

    #[test]
    fn disk_has_empty_minimal_model() {
        let d = disk(4, "x", 6).unwrap();
        let m = minimal_model(&d, 5).unwrap();
        assert!(m.source.generators().is_empty());
        assert!(m.verify_quasi_iso(5).unwrap());
    }

    #[test]
    fn minimal_input_is_returned() {
        let s = sphere(3, "a", 6).unwrap();
        let m = minimal_model(&s, 6).unwrap();
        assert_eq!(m.source.generators(), s.generators());
    }

    #[test]
    fn sphere_plus_disk() {
        let c = coproduct(&[&sphere(2, "a", 7).unwrap(), &disk(3, "x", 7).unwrap()]).unwrap();
        assert!(!c.is_minimal());
        let m = minimal_model(&c, 6).unwrap();
        assert!(m.source.is_minimal());
        assert!(m.verify_quasi_iso(6).unwrap());
        assert_eq!(m.source.generators().len(), 1);
    }
}
