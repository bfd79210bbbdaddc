//! Filtered models: a bigraded model with the perturbed differential
//! `D_A = ∂_0 + ∂_1 + ⋯`, where `∂_r` lowers filtration by `r + 1`, and a
//! quasi-isomorphism `φ` onto an arbitrary DGL.

use std::collections::{BTreeMap, HashMap};

use super::bigraded::{bigraded_model, BigradedModel, Bidegree};
use super::morphism::DglMorphism;
use super::target::HomologyTarget;
use super::ModelError;
use crate::dgl::Dgl;
use crate::lie::{Gen, LieElement, LieMonomial};
use crate::linalg::{Echelon, SparseVec};
use crate::scalar::Q;

#[derive(Clone, Debug)]
pub struct FilteredModel {
    pub model: BigradedModel,
    /// `D_A` on generators.
    differential: BTreeMap<Gen, LieElement<Gen>>,
    /// `φ` on generators.
    phi: BTreeMap<Gen, LieElement<Gen>>,
    pub target: Dgl<Gen>,
}

impl FilteredModel {
    pub fn generators(&self) -> &[Gen] {
        self.model.generators()
    }

    pub fn differential_of(&self, g: &Gen) -> LieElement<Gen> {
        self.differential.get(g).cloned().unwrap_or_default()
    }

    pub fn d(&self, e: &LieElement<Gen>) -> LieElement<Gen> {
        e.derive(1, &mut |g| self.differential_of(g))
    }

    pub fn phi_of(&self, g: &Gen) -> LieElement<Gen> {
        self.phi.get(g).cloned().unwrap_or_default()
    }

    pub fn phi(&self, e: &LieElement<Gen>) -> LieElement<Gen> {
        e.map_letters(&mut |g| self.phi_of(g))
    }

    /// `∂_r x`: the part of `D_A x` in filtration `n - r - 1`.
    pub fn component(&self, g: &Gen, r: u32) -> LieElement<Gen> {
        let n = self.model.filtration(g);
        if r + 1 > n {
            return LieElement::zero();
        }
        LieElement::from_terms(
            self.differential_of(g)
                .terms()
                .filter(|(m, _)| self.model.weight(m).0 + r + 1 == n)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Every component `∂_r x` for `r ≥ 1` that is nonzero, as
    /// `(generator, r, component)`.
    pub fn perturbations(&self) -> Vec<(Gen, u32, LieElement<Gen>)> {
        let mut out = Vec::new();
        for g in self.generators() {
            for r in 1..self.model.filtration(g) {
                let c = self.component(g, r);
                if !c.is_zero() {
                    out.push((g.clone(), r, c));
                }
            }
        }
        out
    }

    pub fn is_perturbed(&self) -> bool {
        !self.perturbations().is_empty()
    }

    /// `∂_0` agrees with the bigraded differential.
    pub fn leading_term_matches(&self) -> bool {
        self.generators().iter().all(|g| self.component(g, 0) == self.model.differential_of(g))
    }

    pub fn squares_to_zero(&self) -> bool {
        self.differential.values().all(|v| self.d(v).is_zero())
    }

    /// The total-degree DGL `(A, D_A)`.
    pub fn associated_dgl(&self) -> Dgl<Gen> {
        Dgl::new(self.generators().to_vec(), self.differential.clone(), self.model.deg_cutoff)
            .expect("perturbed differential is valid")
    }

    /// `φ : (A, D_A) → target` as a DGL morphism.
    pub fn morphism(&self) -> DglMorphism {
        DglMorphism {
            source: self.associated_dgl(),
            target: self.target.with_cutoff(self.model.deg_cutoff),
            images: self.phi.clone(),
        }
    }
}

/// Builds a filtered model of `b` with generators of total degree
/// `≤ deg_cutoff + 1` and filtration `≤ filt_cutoff`.
///
/// Generators are perturbed in order of total degree, then filtration
/// descending. For `x` with `z = ∂_0 x` we look for `u` of filtration
/// `≤ n - 2` and `c` in the target with `D(z + u) = 0` and
/// `φ(z + u) = ∂c`, preferring `u = 0`.
pub fn filtered_model(b: &Dgl<Gen>, deg_cutoff: u32, filt_cutoff: u32) -> Result<FilteredModel, ModelError> {
    let target = b.with_cutoff(deg_cutoff + 1);
    let mut model = bigraded_model(&HomologyTarget::new(&target), deg_cutoff, filt_cutoff)?;
    let mut out = FilteredModel { model: model.clone(), differential: BTreeMap::new(), phi: BTreeMap::new(), target };
    for (g, rep) in &model.x0_images {
        out.phi.insert(g.clone(), rep.clone());
    }
    let mut order: Vec<Gen> = model.generators().iter().filter(|g| model.filtration(g) > 0).cloned().collect();
    order.sort_by_key(|g| (g.degree, std::cmp::Reverse(model.filtration(g)), g.index));
    let letters = model.generators().to_vec();
    let ambient = Dgl::trivial(letters, deg_cutoff);
    for g in order {
        let (n, _) = model.bidegree(&g);
        let t = g.degree;
        let z = model.differential_of(&g);
        let dz = out.d(&z);
        let fz = out.phi(&z);
        let u_monos: Vec<LieMonomial<Gen>> = (0..n.saturating_sub(1))
            .filter(|m| t - 1 > *m)
            .flat_map(|m| model.basis((m, t - 1 - m)))
            .collect();
        let (u, c) = solve(&out, &ambient, t, &z, &dz, &fz, &u_monos)?;
        let mut dx = z;
        dx.add_scaled(&Q::from_integer(1.into()), &u);
        out.differential.insert(g.clone(), dx);
        out.phi.insert(g, c);
    }
    out.model = model;
    Ok(out)
}

/// Solves `D u = -Dz`, `φ(u) - ∂c = -φ(z)` with target columns inserted
/// first, so that `u = 0` whenever possible.
#[allow(clippy::too_many_arguments)]
fn solve(
    fm: &FilteredModel,
    ambient: &Dgl<Gen>,
    t: u32,
    z: &LieElement<Gen>,
    dz: &LieElement<Gen>,
    fz: &LieElement<Gen>,
    u_monos: &[LieMonomial<Gen>],
) -> Result<(LieElement<Gen>, LieElement<Gen>), ModelError> {
    let bt = fm.target.basis(t)?;
    let bt1 = fm.target.basis(t - 1)?;
    let off = bt1.len();
    let a_rows: HashMap<LieMonomial<Gen>, usize> = if t >= 2 {
        ambient.basis(t - 2)?.monomials.iter().cloned().enumerate().map(|(i, m)| (m, off + i)).collect()
    } else {
        HashMap::new()
    };
    let vector = |phi: &LieElement<Gen>, d: &LieElement<Gen>| -> SparseVec<Q> {
        let mut v = bt1.decompose_sparse(phi);
        for (m, c) in d.terms() {
            v.insert(a_rows[m], c.clone());
        }
        v
    };
    let mut solver = Echelon::<Q>::new(off + a_rows.len());
    let mut accepted: Vec<Option<&LieMonomial<Gen>>> = Vec::new();
    let mut targets: Vec<&LieMonomial<Gen>> = Vec::new();
    for m in &bt.monomials {
        let bd = fm.target.d(&LieElement::monomial(m.clone()));
        if solver.insert_sparse(vector(&-bd, &LieElement::zero())).is_some() {
            targets.push(m);
            accepted.push(None);
        }
    }
    let n_targets = targets.len();
    for m in u_monos {
        let e = LieElement::monomial(m.clone());
        if solver.insert_sparse(vector(&fm.phi(&e), &fm.d(&e))).is_some() {
            accepted.push(Some(m));
        }
    }
    let rhs = vector(&-fz.clone(), &-dz.clone());
    let coeffs = solver.solve_sparse(&rhs).ok_or_else(|| ModelError::InconsistentSolve {
        degree: t,
        what: format!("no perturbation of {} lifts", z.render()),
    })?;
    let mut u = LieElement::zero();
    let mut c = LieElement::zero();
    for (i, x) in coeffs {
        if i < n_targets {
            c.add_term(targets[i].clone(), x);
        } else {
            u.add_term(accepted[i].expect("model column").clone(), x);
        }
    }
    Ok((u, c))
}

/// One nonzero component of the first nonvanishing perturbation.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexingClass {
    pub generator: String,
    pub bidegree: Bidegree,
    pub order: u32,
    /// `∂_r x` in the bigraded basis of its bidegree.
    pub component: Vec<(String, Q)>,
    /// Coordinates of `φ(∂_r x)` in `H'(target)` when the component lies in
    /// filtration 0 and is a cycle there.
    pub homology_class: Option<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionReport {
    pub coformal: bool,
    /// `r + 1` for the least `r ≥ 1` with `∂_r ≠ 0`.
    pub n0: Option<u32>,
    pub classes: Vec<IndexingClass>,
    pub deg_cutoff: u32,
    pub filt_cutoff: u32,
    pub incomplete: Vec<(Bidegree, usize)>,
}

impl ObstructionReport {
    pub fn from_model(fm: &FilteredModel) -> Result<Self, ModelError> {
        let perts = fm.perturbations();
        let first = perts.iter().map(|p| p.1).min();
        let mut classes = Vec::new();
        if let Some(r) = first {
            for (g, _, comp) in perts.iter().filter(|p| p.1 == r) {
                let (n, _) = fm.model.bidegree(g);
                let homology_class = if n == r + 1 {
                    let img = fm.phi(comp);
                    fm.target.homology_in_degree(g.degree - 1)?.class_of(&img)
                } else {
                    None
                };
                classes.push(IndexingClass {
                    generator: g.name.to_string(),
                    bidegree: fm.model.bidegree(g),
                    order: r,
                    component: comp.terms().map(|(m, c)| (m.render(), c.clone())).collect(),
                    homology_class,
                });
            }
        }
        Ok(ObstructionReport {
            coformal: first.is_none(),
            n0: first.map(|r| r + 1),
            classes,
            deg_cutoff: fm.model.deg_cutoff,
            filt_cutoff: fm.model.filt_cutoff,
            incomplete: fm.model.incomplete.clone(),
        })
    }
}

/// Coformality within cutoffs, with the first obstruction order.
pub fn coformal_check(b: &Dgl<Gen>, deg_cutoff: u32, filt_cutoff: u32) -> Result<ObstructionReport, ModelError> {
    ObstructionReport::from_model(&filtered_model(b, deg_cutoff, filt_cutoff)?)
}
