//! The comonad `F` and canonical free simplicial DGL resolutions.
//!
//! `F(B)` is free on one letter `⟨m⟩` for each basis monomial `m` of `B`, with
//! `∂⟨m⟩ = ⟨∂m⟩` extended linearly. A letter is a sphere when its payload is a
//! cycle and the top of a disk otherwise; after a change of basis adapted to
//! cycles this is the coproduct of spheres and disks. `W_n = F^{n+1}(B)`:
//!
//! ```text
//! d_0⟨α⟩ = α          d_i⟨α⟩ = ⟨d_{i-1} α⟩   (i ≥ 1)
//! s_0⟨α⟩ = ⟨⟨α⟩⟩      s_j⟨α⟩ = ⟨s_{j-1} α⟩   (j ≥ 1)
//! ```
//!
//! with `d_0` on `W_0` the counit `ε : ⟨b⟩ ↦ b`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::dgl::{DegreeHomology, Dgl, DglError};
use crate::lie::{FreeLie, Gen, Letter, LieElement, LieMonomial};
use crate::linalg::SparseMatrix;
use crate::scalar::Q;
use crate::simplicial::{SimplicialLie, SimplicialModule};

/// Letters of the canonical resolution: generators of the resolved DGL, or
/// formal brackets `⟨α⟩` around a basis monomial of the previous level.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RGen {
    Base(Gen),
    Wrap(Arc<Wrapped>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wrapped {
    pub degree: u32,
    /// Simplicial level of the letter itself; payload letters sit one below.
    pub level: usize,
    pub payload: LieMonomial<RGen>,
}

impl Letter for RGen {
    fn degree(&self) -> u32 {
        match self {
            RGen::Base(g) => g.degree,
            RGen::Wrap(w) => w.degree,
        }
    }

    fn label(&self) -> String {
        match self {
            RGen::Base(g) => g.name.to_string(),
            RGen::Wrap(w) => format!("⟨{}⟩", w.payload.render()),
        }
    }
}

impl fmt::Debug for RGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl RGen {
    /// `None` for base letters.
    pub fn level(&self) -> Option<usize> {
        match self {
            RGen::Base(_) => None,
            RGen::Wrap(w) => Some(w.level),
        }
    }

    pub fn payload(&self) -> Option<&LieMonomial<RGen>> {
        match self {
            RGen::Base(_) => None,
            RGen::Wrap(w) => Some(&w.payload),
        }
    }

    pub fn wrap_monomial(m: LieMonomial<RGen>, level: usize) -> RGen {
        RGen::Wrap(Arc::new(Wrapped { degree: m.degree(), level, payload: m }))
    }
}

/// `⟨e⟩ = Σ c_m ⟨m⟩` for `e` at level `level - 1`.
pub fn wrap(e: &LieElement<RGen>, level: usize) -> LieElement<RGen> {
    LieElement::from_terms(e.terms().map(|(m, c)| (LieMonomial::letter(RGen::wrap_monomial(m.clone(), level)), c.clone())))
}

pub fn lift_base(e: &LieElement<Gen>) -> LieElement<RGen> {
    e.map_letters(&mut |g| LieElement::letter(RGen::Base(g.clone())))
}

/// Inverse of [`lift_base`]; panics on wrapped letters.
pub fn lower_base(e: &LieElement<RGen>) -> LieElement<Gen> {
    e.map_letters(&mut |l| match l {
        RGen::Base(g) => LieElement::letter(g.clone()),
        RGen::Wrap(_) => panic!("wrapped letter {} has no base image", l.label()),
    })
}

type Memo = Mutex<HashMap<(usize, RGen), LieElement<RGen>>>;

/// `W_{•,*}(B)` through a simplicial cutoff and an internal-degree cutoff
/// `D`. Letters are materialized through degree `D + 1`, so each `W_n`
/// has valid homology through `D`. Everything else is computed lazily and
/// elementwise.
pub struct CanonicalResolution {
    base: Dgl<Gen>,
    simp_cutoff: usize,
    deg_cutoff: u32,
    faces: Memo,
    degeneracies: Memo,
    diffs: Mutex<HashMap<RGen, LieElement<RGen>>>,
    algebras: Mutex<BTreeMap<usize, Arc<FreeLie<RGen>>>>,
    levels: Mutex<BTreeMap<usize, Arc<Dgl<RGen>>>>,
}

impl fmt::Debug for CanonicalResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CanonicalResolution")
            .field("simp_cutoff", &self.simp_cutoff)
            .field("deg_cutoff", &self.deg_cutoff)
            .finish()
    }
}

impl CanonicalResolution {
    /// `base` must have bases available through `deg_cutoff + 1`.
    pub fn new(base: &Dgl<Gen>, simp_cutoff: usize, deg_cutoff: u32) -> Self {
        let base = if base.cutoff() < deg_cutoff { base.with_cutoff(deg_cutoff) } else { base.clone() };
        CanonicalResolution {
            base,
            simp_cutoff,
            deg_cutoff,
            faces: Mutex::new(HashMap::new()),
            degeneracies: Mutex::new(HashMap::new()),
            diffs: Mutex::new(HashMap::new()),
            algebras: Mutex::new(BTreeMap::new()),
            levels: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn base(&self) -> &Dgl<Gen> {
        &self.base
    }

    /// Cutoff through which homology of each level is valid.
    pub fn homology_cutoff(&self) -> u32 {
        self.deg_cutoff
    }

    /// `⟨b⟩ ∈ W_0` for `b ∈ B`.
    pub fn bracket0(&self, b: &LieElement<Gen>) -> LieElement<RGen> {
        wrap(&lift_base(b), 0)
    }

    /// The counit `ε : W_0 → B`.
    pub fn augmentation(&self, e: &LieElement<RGen>) -> LieElement<Gen> {
        lower_base(&e.map_letters(&mut |l| match l {
            RGen::Wrap(w) if w.level == 0 => LieElement::monomial(w.payload.clone()),
            _ => panic!("{} is not a letter of W_0", l.label()),
        }))
    }

    fn letter_differential(&self, l: &RGen) -> LieElement<RGen> {
        if let Some(v) = self.diffs.lock().expect("memo").get(l) {
            return v.clone();
        }
        let v = match l {
            RGen::Base(g) => lift_base(&self.base.differential_of(g)),
            RGen::Wrap(w) => {
                let inner = LieElement::monomial(w.payload.clone());
                wrap(&self.differential(&inner), w.level)
            }
        };
        self.diffs.lock().expect("memo").insert(l.clone(), v.clone());
        v
    }

    /// `∂_W` on any level (base letters use `∂_B`).
    pub fn differential(&self, e: &LieElement<RGen>) -> LieElement<RGen> {
        e.derive(1, &mut |l| self.letter_differential(l))
    }

    /// A letter is a sphere when its payload is a cycle.
    pub fn is_sphere(&self, l: &RGen) -> bool {
        self.letter_differential(l).is_zero()
    }

    /// `W_n` as a DGL, with homology valid through the degree cutoff.
    pub fn level(&self, n: usize) -> Arc<Dgl<RGen>> {
        if let Some(d) = self.levels.lock().expect("levels").get(&n) {
            return d.clone();
        }
        let alg = self.algebra(n);
        let diff = alg.letters().iter().map(|l| (l.clone(), self.letter_differential(l))).collect();
        let d = Arc::new(Dgl::new(alg.letters().to_vec(), diff, self.deg_cutoff).expect("levels are valid DGLs"));
        self.levels.lock().expect("levels").insert(n, d.clone());
        d
    }

    /// Checks that `ε` is a DGL map on letters of `W_0`, that `ε d_0 = ε d_1`
    /// on `W_1`, and that faces and degeneracies commute with `∂_W` on letters.
    pub fn check_structure(&self) -> Result<(), String> {
        for l in self.algebra(0).letters() {
            let x = LieElement::letter(l.clone());
            if self.augmentation(&self.differential(&x)) != self.base.d(&self.augmentation(&x)) {
                return Err(format!("ε∂ ≠ ∂ε on {}", l.label()));
            }
        }
        if self.simp_cutoff >= 1 {
            for l in self.algebra(1).letters() {
                let x = LieElement::letter(l.clone());
                if self.augmentation(&self.face(1, 0, &x)) != self.augmentation(&self.face(1, 1, &x)) {
                    return Err(format!("εd0 ≠ εd1 on {}", l.label()));
                }
            }
        }
        for n in 0..=self.simp_cutoff {
            for l in self.algebra(n).letters() {
                let x = LieElement::letter(l.clone());
                let dx = self.differential(&x);
                if n > 0 {
                    for i in 0..=n {
                        if self.face(n, i, &dx) != self.differential(&self.face(n, i, &x)) {
                            return Err(format!("d{i} does not commute with ∂ on {}", l.label()));
                        }
                    }
                }
                if n < self.simp_cutoff {
                    for j in 0..=n {
                        if self.degeneracy(n, j, &dx) != self.differential(&self.degeneracy(n, j, &x)) {
                            return Err(format!("s{j} does not commute with ∂ on {}", l.label()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The simplicial graded vector space `n ↦ H'_*(W_n)`, augmented to
    /// `H'_*(B)`, in degrees `1..=D`.
    pub fn levelwise_homology(&self) -> LevelwiseHomology<'_> {
        LevelwiseHomology { w: self, cache: Mutex::new(HashMap::new()) }
    }
}

fn memo_get(m: &Memo, key: &(usize, RGen)) -> Option<LieElement<RGen>> {
    m.lock().expect("memo").get(key).cloned()
}

impl SimplicialLie for CanonicalResolution {
    type L = RGen;

    fn simp_cutoff(&self) -> usize {
        self.simp_cutoff
    }

    fn deg_cutoff(&self) -> u32 {
        self.deg_cutoff + 1
    }

    fn algebra(&self, n: usize) -> Arc<FreeLie<RGen>> {
        if let Some(a) = self.algebras.lock().expect("algebras").get(&n) {
            return a.clone();
        }
        let top = self.deg_cutoff + 1;
        let mut letters = Vec::new();
        for d in 1..=top {
            let monos = if n == 0 {
                self.base.basis(d).expect("base within cutoff").monomials.iter().map(|m| lift_base(&LieElement::monomial(m.clone()))).collect::<Vec<_>>()
            } else {
                self.algebra(n - 1).basis(d).expect("within cutoff").monomials.iter().map(|m| LieElement::monomial(m.clone())).collect()
            };
            for e in monos {
                let (m, _) = e.terms().next().expect("monomial");
                letters.push(RGen::wrap_monomial(m.clone(), n));
            }
        }
        let a = Arc::new(FreeLie::new(letters, top));
        self.algebras.lock().expect("algebras").insert(n, a.clone());
        a
    }

    fn face_letter(&self, n: usize, i: usize, l: &RGen) -> LieElement<RGen> {
        let key = (i, l.clone());
        if let Some(v) = memo_get(&self.faces, &key) {
            return v;
        }
        let RGen::Wrap(w) = l else { panic!("base letter in a face map") };
        debug_assert_eq!(w.level, n);
        let inner = LieElement::monomial(w.payload.clone());
        let v = if i == 0 { inner } else { wrap(&self.face(n - 1, i - 1, &inner), n - 1) };
        self.faces.lock().expect("memo").insert(key, v.clone());
        v
    }

    fn degeneracy_letter(&self, n: usize, j: usize, l: &RGen) -> LieElement<RGen> {
        let key = (j, l.clone());
        if let Some(v) = memo_get(&self.degeneracies, &key) {
            return v;
        }
        let RGen::Wrap(w) = l else { panic!("base letter in a degeneracy") };
        debug_assert_eq!(w.level, n);
        let v = if j == 0 {
            LieElement::letter(RGen::wrap_monomial(LieMonomial::letter(l.clone()), n + 1))
        } else {
            let inner = LieElement::monomial(w.payload.clone());
            wrap(&self.degeneracy(n - 1, j - 1, &inner), n + 1)
        };
        self.degeneracies.lock().expect("memo").insert(key, v.clone());
        v
    }
}

/// `F(B)` as a DGL, together with its counit.
pub fn comonad_f(b: &Dgl<Gen>, deg_cutoff: u32) -> (Arc<Dgl<RGen>>, CanonicalResolution) {
    let w = CanonicalResolution::new(b, 0, deg_cutoff);
    (w.level(0), w)
}

/// `n ↦ H'_*(W_n)` with induced faces and degeneracies on the chosen
/// homology representatives.
pub struct LevelwiseHomology<'a> {
    w: &'a CanonicalResolution,
    cache: Mutex<HashMap<(usize, u32), Arc<DegreeHomology<RGen>>>>,
}

impl LevelwiseHomology<'_> {
    pub fn homology(&self, n: usize, t: u32) -> Arc<DegreeHomology<RGen>> {
        if let Some(h) = self.cache.lock().expect("cache").get(&(n, t)) {
            return h.clone();
        }
        let h = Arc::new(self.w.level(n).homology_in_degree(t).expect("within cutoff"));
        self.cache.lock().expect("cache").insert((n, t), h.clone());
        h
    }

    fn induced(&self, from: usize, to: usize, t: u32, f: impl Fn(&LieElement<RGen>) -> LieElement<RGen>) -> SparseMatrix<Q> {
        let src = self.homology(from, t);
        let dst = self.homology(to, t);
        let cols: Vec<BTreeMap<usize, Q>> = src
            .representatives
            .iter()
            .map(|z| {
                let c = dst.class_of(&f(z)).expect("image of a cycle is a cycle");
                crate::linalg::to_sparse(&c)
            })
            .collect();
        SparseMatrix::from_sparse_columns(dst.betti, &cols)
    }

    /// `ε_* : H'(W_0) → H'(B)` on representatives.
    pub fn augmentation_matrix(&self, t: u32) -> Result<SparseMatrix<Q>, DglError> {
        let src = self.homology(0, t);
        let dst = self.w.base.homology_in_degree(t)?;
        let cols: Vec<BTreeMap<usize, Q>> = src
            .representatives
            .iter()
            .map(|z| crate::linalg::to_sparse(&dst.class_of(&self.w.augmentation(z)).expect("cycle")))
            .collect();
        Ok(SparseMatrix::from_sparse_columns(dst.betti, &cols))
    }
}

impl SimplicialModule for LevelwiseHomology<'_> {
    fn simp_cutoff(&self) -> usize {
        self.w.simp_cutoff
    }

    fn internal_degrees(&self) -> Vec<u32> {
        (1..=self.w.deg_cutoff).collect()
    }

    fn dim(&self, n: usize, s: u32) -> usize {
        self.homology(n, s).betti
    }

    fn face_matrix(&self, n: usize, i: usize, s: u32) -> SparseMatrix<Q> {
        self.induced(n, n - 1, s, |z| self.w.face(n, i, z))
    }

    fn degeneracy_matrix(&self, n: usize, j: usize, s: u32) -> SparseMatrix<Q> {
        self.induced(n, n + 1, s, |z| self.w.degeneracy(n, j, z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgl::disk;
    use crate::lie::GeneratorSet;
    use crate::simplicial::moore;

    fn free_odd() -> Dgl<Gen> {
        Dgl::trivial(GeneratorSet::new(&[("a", 3)]).unwrap().gens().to_vec(), 6)
    }

    fn two_gen() -> Dgl<Gen> {
        let s = GeneratorSet::new(&[("a", 2), ("b", 3)]).unwrap();
        Dgl::trivial(s.gens().to_vec(), 6)
    }

    #[test]
    fn zero_differential_has_only_spheres() {
        let w = CanonicalResolution::new(&free_odd(), 3, 6);
        for n in 0..=3 {
            let alg = w.algebra(n);
            assert!(alg.letters().iter().all(|l| w.is_sphere(l)));
            assert!(w.level(n).differential_map().is_empty());
        }
        // W_0 has one letter per basis monomial of L(a): a and [a,a]
        let names: Vec<String> = w.algebra(0).letters().iter().map(|l| l.label()).collect();
        assert_eq!(names, vec!["⟨a⟩", "⟨[a,a]⟩"]);
    }

    #[test]
    fn disk_has_disk_letters() {
        let d = disk(3, "x", 4).unwrap();
        let w = CanonicalResolution::new(&d, 2, 4);
        let letters = w.algebra(0).letters().to_vec();
        assert!(letters.iter().any(|l| !w.is_sphere(l)));
        for l in &letters {
            let RGen::Wrap(wr) = l else { unreachable!() };
            let x = LieElement::letter(l.clone());
            assert_eq!(w.augmentation(&x), lower_base(&LieElement::monomial(wr.payload.clone())));
        }
    }

    #[test]
    fn simplicial_identities_and_structure() {
        let d = disk(3, "x", 4).unwrap();
        let w = CanonicalResolution::new(&d, 3, 4);
        w.check_letter_identities().unwrap();
        w.check_structure().unwrap();
        let w = CanonicalResolution::new(&two_gen(), 3, 5);
        w.check_letter_identities().unwrap();
        w.check_structure().unwrap();
    }

    #[test]
    fn levelwise_homology_resolves() {
        let b = two_gen();
        let w = CanonicalResolution::new(&b, 3, 5);
        let h = w.levelwise_homology();
        h.check_identities().unwrap();
        let c = moore(&h).unwrap();
        for t in 1..=5 {
            let pi0 = c.homotopy(0, t).unwrap();
            assert_eq!(pi0.betti, b.homology_in_degree(t).unwrap().betti, "degree {t}");
            for s in 1..3 {
                assert_eq!(c.homotopy(s, t).unwrap().betti, 0, "π_{s} in degree {t}");
            }
        }
        for t in 1..=5 {
            assert_eq!(crate::linalg::rank(&h.augmentation_matrix(t).unwrap()), b.homology_in_degree(t).unwrap().betti);
        }
    }
}
