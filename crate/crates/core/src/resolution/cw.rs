//! The minimal CW resolution carried by a θ-embedding.
//!
//! Inside `W` it is the sub-object generated by the spheres `x^{(0)}`, the
//! disks `x^{(r)}` and their degeneracies. Its levelwise homology `H′` is
//! free in each dimension on the letters `x.v`, one for each generator
//! `x ∈ X_m` and surjection `v : [n] → [m]`, standing for `s_v x^{(0)}`. On
//! the nondegenerate letters
//!
//! ```text
//! d_0 x = θ(∂_0 x)      d_i x = 0   (1 ≤ i ≤ m)
//! ```
//!
//! and faces of degenerate letters follow from the simplicial identities.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::canonical::{CanonicalResolution, RGen};
use super::theta::{FilteredGenerators, ThetaEmbedding};
use super::ResolutionError;
use crate::lie::{Gen, GeneratorSet, LieElement, LieMonomial};
use crate::simplicial::{moore, shuffle_bracket_with, surjections, BracketSign, LieModule, SimplicialGradedLie, SimplicialLie};

/// `v` as the degeneracy sequence applied to `[m]`, first entry first.
fn degeneracy_sequence(v: &[usize]) -> Vec<usize> {
    (0..v.len().saturating_sub(1)).filter(|&i| v[i] == v[i + 1]).collect()
}

fn letter_name(g: &Gen, v: &[usize]) -> String {
    format!("{}.{}", g.name, v.iter().map(|d| d.to_string()).collect::<String>())
}

/// One nondegenerate sphere: a model generator and its image in `W`.
#[derive(Clone, Debug)]
pub struct CwCell {
    pub generator: Gen,
    pub dim: usize,
    pub internal_degree: u32,
    pub sphere: LieElement<RGen>,
}

/// Result of the homotopy check on `H′` of the resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionCheck {
    /// `(degree, dim π_0, dim H′(B))`.
    pub pi0: Vec<(u32, usize, usize)>,
    /// `(s, degree, dim π_s)` for every nonzero `π_s`, `s ≥ 1`.
    pub higher: Vec<(usize, u32, usize)>,
    pub simp_range: usize,
    pub deg_range: u32,
}

impl ResolutionCheck {
    pub fn is_resolution(&self) -> bool {
        self.higher.is_empty() && self.pi0.iter().all(|(_, a, b)| a == b)
    }
}

/// `H′` of a CW resolution, levelwise: free on the letters `x.v`.
#[derive(Clone, Debug)]
pub struct CwHomology {
    pub lie: SimplicialGradedLie<Gen>,
    /// `(generator, dimension, internal degree)` of each nondegenerate letter.
    cells: Vec<(Gen, usize, u32)>,
    /// letter in dimension `n` ↦ (model generator, surjection).
    letters: Vec<BTreeMap<Gen, (Gen, Vec<usize>)>>,
    base: crate::dgl::Dgl<Gen>,
}

/// Builds `H′` of the CW resolution of a filtered or bigraded model
/// through simplicial dimension `top` and internal degree `deg`. Needs no
/// canonical resolution; [`minimal_cw_resolution`] ties it to one.
pub fn cw_homology(src: &FilteredGenerators, top: usize, deg: u32) -> Result<CwHomology, ResolutionError> {
    let internal = |g: &Gen| g.degree - src.filtration(g);
    let cells: Vec<(Gen, usize, u32)> = src
        .generators()
        .iter()
        .filter(|g| src.filtration(g) as usize <= top && internal(g) <= deg)
        .map(|g| (g.clone(), src.filtration(g) as usize, internal(g)))
        .collect();
    let mut sets = Vec::new();
    let mut letters = Vec::new();
    for n in 0..=top {
        let mut spec = Vec::new();
        let mut table = Vec::new();
        for v in surjections(n) {
            let m = v[n];
            for (g, _, k) in cells.iter().filter(|c| c.1 == m) {
                spec.push((letter_name(g, &v), *k));
                table.push((g.clone(), v.clone()));
            }
        }
        let set = GeneratorSet::new(&spec).map_err(|e| ResolutionError::Cw(e.to_string()))?;
        letters.push(set.gens().iter().cloned().zip(table).collect::<BTreeMap<_, _>>());
        sets.push(set);
    }
    let letter = |g: &Gen, v: &[usize]| -> LieElement<Gen> {
        LieElement::letter(sets[v.len() - 1].get(&letter_name(g, v)).expect("letter in range").clone())
    };
    let degen_letter = |n: usize, j: usize, l: &Gen| -> LieElement<Gen> {
        let (g, v) = &letters[n][l];
        let mut w = v.clone();
        w.insert(j, v[j]);
        letter(g, &w)
    };
    let degen = |n: usize, js: &[usize], e: &LieElement<Gen>| -> LieElement<Gen> {
        let mut out = e.clone();
        for (k, &j) in js.iter().enumerate() {
            out = out.map_letters(&mut |l| degen_letter(n + k, j, l));
        }
        out
    };
    // θ on a monomial of the model, as an element of H′ in dimension its filtration
    fn theta_h(
        m: &LieMonomial<Gen>,
        filt: &dyn Fn(&LieMonomial<Gen>) -> usize,
        letter: &dyn Fn(&Gen) -> LieElement<Gen>,
        degen: &dyn Fn(usize, &[usize], &LieElement<Gen>) -> LieElement<Gen>,
    ) -> LieElement<Gen> {
        if let Some(y) = m.as_letter() {
            return letter(y);
        }
        let (u, v) = m.factors().expect("bracket");
        let (a, b) = (theta_h(&u, filt, letter, degen), theta_h(&v, filt, letter, degen));
        shuffle_bracket_with(&a, filt(&u), &b, filt(&v), BracketSign::EilenbergZilber, &|n, js, e| degen(n, js, e))
    }
    let filt = |m: &LieMonomial<Gen>| m.letters().map(|g| src.filtration(g) as usize).sum::<usize>();
    let base_letter = |y: &Gen| -> LieElement<Gen> {
        let n = src.filtration(y) as usize;
        letter(y, &(0..=n).collect::<Vec<_>>())
    };
    let mut attaching: BTreeMap<Gen, LieElement<Gen>> = BTreeMap::new();
    for (g, _, _) in cells.iter().filter(|c| c.1 >= 1) {
        let mut out = LieElement::zero();
        for (m, k) in src.component(g, 0).terms() {
            out.add_scaled(k, &theta_h(m, &filt, &base_letter, &degen));
        }
        attaching.insert(g.clone(), out);
    }

    let mut faces = BTreeMap::new();
    let mut degens = BTreeMap::new();
    for n in 0..=top {
        for (l, (g, v)) in &letters[n] {
            for i in (0..=n).filter(|_| n > 0) {
                let mut w = v.clone();
                let k = w.remove(i);
                let img = if w.contains(&k) {
                    letter(g, &w)
                } else if k == 0 {
                    let w2: Vec<usize> = w.iter().map(|&x| x - 1).collect();
                    degen(v[v.len() - 1] - 1, &degeneracy_sequence(&w2), &attaching[g])
                } else {
                    LieElement::zero()
                };
                faces.entry((n, i)).or_insert_with(BTreeMap::new).insert(l.clone(), img);
            }
            for j in (0..=n).filter(|_| n < top) {
                degens.entry((n, j)).or_insert_with(BTreeMap::new).insert(l.clone(), degen_letter(n, j, l));
            }
        }
    }
    let all: Vec<Vec<Gen>> = sets.iter().map(|s| s.gens().to_vec()).collect();
    let lie = SimplicialGradedLie::new(all, faces, degens, deg).map_err(|e| ResolutionError::Cw(e.to_string()))?;
    Ok(CwHomology { lie, cells, letters, base: src.dgl.clone() })
}

impl CwHomology {
    /// `(generator, dimension, internal degree)` of each nondegenerate letter.
    pub fn cells(&self) -> &[(Gen, usize, u32)] {
        &self.cells
    }

    /// The letter `x.v`, with `v` the identity for a nondegenerate one.
    pub fn letter(&self, g: &Gen, v: &[usize]) -> Option<Gen> {
        let name = letter_name(g, v);
        self.letters.get(v.len() - 1)?.keys().find(|l| *l.name == *name).cloned()
    }

    /// `(model generator, surjection)` behind a letter of dimension `n`.
    pub fn decode(&self, n: usize, l: &Gen) -> Option<&(Gen, Vec<usize>)> {
        self.letters.get(n)?.get(l)
    }

    pub fn letters(&self, n: usize) -> impl Iterator<Item = &Gen> {
        self.letters[n].keys()
    }

    /// The attaching map `d_0` on a nondegenerate letter.
    pub fn attaching_map(&self, g: &Gen) -> LieElement<Gen> {
        let Some((_, n, _)) = self.cells.iter().find(|c| c.0 == *g) else { return LieElement::zero() };
        match (*n, self.letter(g, &(0..=*n).collect::<Vec<_>>())) {
            (0, _) | (_, None) => LieElement::zero(),
            (n, Some(l)) => self.lie.face(n, 0, &LieElement::letter(l)),
        }
    }

    /// Every attaching map is decomposable, so no generator could be
    /// dropped from the CW basis.
    pub fn is_minimal(&self) -> bool {
        self.cells.iter().all(|c| self.attaching_map(&c.0).min_length().is_none_or(|k| k >= 2))
    }

    /// `π_0 ≅ H′(B)` and `π_s = 0` for `1 ≤ s` below the simplicial cutoff,
    /// in every internal degree in range.
    pub fn check_resolution(&self) -> Result<ResolutionCheck, ResolutionError> {
        let top = self.lie.simp_cutoff();
        let deg = self.lie.deg_cutoff();
        let mc = moore(&LieModule::new(&self.lie))?;
        let base = self.base.chain_homology(deg).map_err(|e| ResolutionError::Cw(e.to_string()))?;
        let mut check = ResolutionCheck { pi0: Vec::new(), higher: Vec::new(), simp_range: top.saturating_sub(1), deg_range: deg };
        for t in 1..=deg {
            check.pi0.push((t, mc.homotopy(0, t)?.betti, base.betti(t)));
            for s in 1..top {
                let b = mc.homotopy(s, t)?.betti;
                if b != 0 {
                    check.higher.push((s, t, b));
                }
            }
        }
        Ok(check)
    }
}

pub struct MinimalCwResolution {
    pub embedding: ThetaEmbedding,
    pub homology: CwHomology,
    cells: Vec<CwCell>,
}

impl std::fmt::Debug for MinimalCwResolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MinimalCwResolution").field("cells", &self.cells.len()).finish()
    }
}

/// Builds the sub-object and its levelwise homology through the simplicial
/// cutoff of the embedding's resolution. Internal degrees run to the
/// resolution's degree cutoff minus its simplicial cutoff, the range on
/// which a model complete through that total degree determines every
/// dimension.
pub fn minimal_cw_resolution(embedding: ThetaEmbedding) -> Result<MinimalCwResolution, ResolutionError> {
    embedding.verify()?;
    let top = embedding.w.simp_cutoff();
    let deg = embedding.w.deg_cutoff().saturating_sub(top as u32);
    let homology = cw_homology(&embedding.source, top, deg)?;
    let cells = homology
        .cells()
        .iter()
        .map(|(g, n, k)| CwCell { generator: g.clone(), dim: *n, internal_degree: *k, sphere: embedding.ladder(g, 0) })
        .collect();
    Ok(MinimalCwResolution { embedding, homology, cells })
}

impl MinimalCwResolution {
    pub fn w(&self) -> &Arc<CanonicalResolution> {
        &self.embedding.w
    }

    /// The bijection between model generators and nondegenerate spheres.
    pub fn cells(&self) -> &[CwCell] {
        &self.cells
    }

    pub fn nondegenerate(&self, n: usize) -> impl Iterator<Item = &CwCell> {
        self.cells.iter().filter(move |c| c.dim == n)
    }

    /// The sphere generators of the sub-object in dimension `n`, degenerate
    /// ones included, as elements of `W_n`.
    pub fn spheres(&self, n: usize) -> Vec<(String, LieElement<RGen>)> {
        self.homology.letters[n].iter().map(|(l, (g, v))| (l.name.to_string(), self.realize(g, v, 0))).collect()
    }

    /// The disk generators `s_v x^{(r)}`, `r ≥ 1`, in dimension `n`, each
    /// with its boundary in `W_n`.
    pub fn disks(&self, n: usize) -> Vec<(String, LieElement<RGen>, LieElement<RGen>)> {
        let mut out = Vec::new();
        for g in self.embedding.source.generators() {
            let f = self.embedding.source.filtration(g) as usize;
            for r in 1..=f {
                for v in surjections(n).into_iter().filter(|v| v[n] == f - r) {
                    let e = self.realize(g, &v, r as u32);
                    let d = self.w().differential(&e);
                    out.push((format!("{}^({r}).{}", g.name, v.iter().map(|d| d.to_string()).collect::<String>()), e, d));
                }
            }
        }
        out
    }

    fn realize(&self, g: &Gen, v: &[usize], r: u32) -> LieElement<RGen> {
        let m = v[v.len() - 1];
        self.w().degeneracies(m, &degeneracy_sequence(v), &self.embedding.ladder(g, r))
    }

    /// The image in `W` of an element of `H′` in dimension `n`.
    pub fn to_w(&self, n: usize, e: &LieElement<Gen>) -> LieElement<RGen> {
        e.map_letters(&mut |l| {
            let (g, v) = &self.homology.letters[n][l];
            self.realize(g, v, 0)
        })
    }

    /// `d_i = 0` on nondegenerate generators for `1 ≤ i ≤ n`, in `H′` and,
    /// up to the boundary `∂_W x^{(1)}` on the last face, in `W`.
    pub fn check_cw(&self) -> Result<(), ResolutionError> {
        for c in &self.cells {
            let n = c.dim;
            let l = self.homology.letter(&c.generator, &(0..=n).collect::<Vec<_>>()).expect("cell");
            for i in 1..=n {
                let fail = |what: &str| ResolutionError::Cw(format!("d{i} on {}: {what}", c.generator.name));
                if !self.homology.lie.face(n, i, &LieElement::letter(l.clone())).is_zero() {
                    return Err(fail("nonzero in H′"));
                }
                let f = self.w().face(n, i, &c.sphere);
                let expected = if i == n { self.w().differential(&self.embedding.ladder(&c.generator, 1)) } else { LieElement::zero() };
                if f != expected {
                    return Err(fail("not zero modulo boundaries in W"));
                }
            }
        }
        Ok(())
    }

    /// Faces of `H′` agree with faces in `W` up to `∂_W`-boundaries, on every
    /// letter through dimension `max_dim`. Costly: it needs homology of the
    /// levels of `W`.
    pub fn check_against_w(&self, max_dim: usize) -> Result<(), ResolutionError> {
        for n in 1..=max_dim.min(self.homology.letters.len() - 1) {
            for l in self.homology.letters[n].keys() {
                let x = self.to_w(n, &LieElement::letter(l.clone()));
                for i in 0..=n {
                    let diff = {
                        let mut d = self.w().face(n, i, &x);
                        d.add_scaled(&crate::q(-1), &self.to_w(n - 1, &self.homology.lie.face(n, i, &LieElement::letter(l.clone()))));
                        d
                    };
                    if diff.is_zero() {
                        continue;
                    }
                    let level = self.w().level(n - 1);
                    let h = level.homology_in_degree(l.degree).map_err(|e| ResolutionError::Cw(e.to_string()))?;
                    if !h.is_boundary(&diff) {
                        return Err(ResolutionError::Cw(format!("d{i} on {} differs from W by a non-boundary", l.name)));
                    }
                }
            }
        }
        Ok(())
    }
}
