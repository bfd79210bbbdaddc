//! Free differential graded Lie algebras.
//!
//! A [`Dgl`] is a free graded Lie algebra on an ordered alphabet together with
//! a degree `-1` derivation given on generators. Everything is truncated at a
//! degree cutoff `c`: bases are available through degree `c + 1`, so homology
//! is computable through degree `c`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::lie::{DegreeBasis, FreeLie, FreeLieError, Gen, GeneratorError, GeneratorSet, Letter, LieElement};
use crate::linalg::{ChainComplex, HomologyAt, LinalgError, SparseMatrix};
use crate::scalar::{q, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DglError {
    #[error("differential of `{gen}` has degree {found}, expected {expected}")]
    DegreeMismatch { gen: String, expected: i64, found: u32 },
    #[error("differential of `{0}` is not homogeneous")]
    Inhomogeneous(String),
    #[error("differential of `{gen}` uses `{letter}`, which is not a generator")]
    UnknownLetter { gen: String, letter: String },
    #[error("differential given for `{0}`, which is not a generator")]
    NotAGenerator(String),
    #[error("sphere and disk dimensions must be at least 1 (got {0})")]
    BadDimension(u32),
    #[error("half-smash with a simplex of positive dimension needs a linear differential, but ∂{0} is decomposable")]
    NonlinearHalfSmash(String),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    FreeLie(#[from] FreeLieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `(L⟨X⟩, ∂)`, truncated at `cutoff`.
pub struct Dgl<L: Letter = Gen> {
    algebra: FreeLie<L>,
    diff: BTreeMap<L, LieElement<L>>,
    cutoff: u32,
    matrices: Mutex<BTreeMap<u32, Arc<SparseMatrix<Q>>>>,
}

impl<L: Letter> Clone for Dgl<L> {
    fn clone(&self) -> Self {
        Dgl {
            algebra: self.algebra.clone(),
            diff: self.diff.clone(),
            cutoff: self.cutoff,
            matrices: Mutex::new(BTreeMap::new()),
        }
    }
}

impl<L: Letter> std::fmt::Debug for Dgl<L> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for g in self.generators() {
            m.entry(&g.label(), &self.differential_of(g).render());
        }
        m.finish()
    }
}

/// One violation of `∂² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation<L: Letter> {
    pub generator: L,
    pub residue: LieElement<L>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport<L: Letter> {
    pub violations: Vec<Violation<L>>,
}

impl<L: Letter> ValidationReport<L> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `H'_n` with its chosen representatives.
#[derive(Clone, Debug)]
pub struct DegreeHomology<L: Letter> {
    pub degree: u32,
    pub betti: usize,
    pub representatives: Vec<LieElement<L>>,
    pub basis: Arc<DegreeBasis<L>>,
    pub cycles: usize,
    inner: HomologyAt<Q>,
}

impl<L: Letter> DegreeHomology<L> {
    /// Coordinates of the class of `z` on the representatives; `None` if `z`
    /// is not a cycle.
    pub fn class_of(&self, z: &LieElement<L>) -> Option<Vec<Q>> {
        if z.is_zero() {
            return Some(vec![q(0); self.betti]);
        }
        let v = self.basis.decompose(z).ok()?;
        self.inner.class_of(&v)
    }

    pub fn is_boundary(&self, z: &LieElement<L>) -> bool {
        self.class_of(z).is_some_and(|c| c.iter().all(|x| *x == q(0)))
    }

    /// Basis of the boundaries as Lie elements.
    pub fn boundaries(&self) -> Vec<LieElement<L>> {
        self.inner.boundary_basis.iter().map(|v| self.basis.compose(v)).collect()
    }
}

/// `H'_*` through a degree.
#[derive(Clone, Debug)]
pub struct HomologyPresentation<L: Letter> {
    pub through: u32,
    pub degrees: BTreeMap<u32, DegreeHomology<L>>,
}

impl<L: Letter> HomologyPresentation<L> {
    pub fn betti(&self, n: u32) -> usize {
        self.degrees.get(&n).map_or(0, |h| h.betti)
    }

    pub fn betti_table(&self) -> BTreeMap<u32, usize> {
        self.degrees.iter().map(|(&n, h)| (n, h.betti)).collect()
    }

    pub fn at(&self, n: u32) -> Option<&DegreeHomology<L>> {
        self.degrees.get(&n)
    }
}

impl<L: Letter> Dgl<L> {
    pub fn new(letters: Vec<L>, diff: BTreeMap<L, LieElement<L>>, cutoff: u32) -> Result<Self, DglError> {
        let algebra = FreeLie::new(letters, cutoff + 1);
        let mut full = BTreeMap::new();
        for (g, v) in &diff {
            if !algebra.contains_letter(g) {
                return Err(DglError::NotAGenerator(g.label()));
            }
            if let Some(bad) = v.letters().find(|l| !algebra.contains_letter(l)) {
                return Err(DglError::UnknownLetter { gen: g.label(), letter: bad.label() });
            }
            if !v.is_homogeneous() {
                return Err(DglError::Inhomogeneous(g.label()));
            }
            if let Some(d) = v.degree() {
                if d + 1 != g.degree() {
                    return Err(DglError::DegreeMismatch { gen: g.label(), expected: g.degree() as i64 - 1, found: d });
                }
            }
            if !v.is_zero() {
                full.insert(g.clone(), v.clone());
            }
        }
        Ok(Dgl { algebra, diff: full, cutoff, matrices: Mutex::new(BTreeMap::new()) })
    }

    /// The free DGL with zero differential.
    pub fn trivial(letters: Vec<L>, cutoff: u32) -> Self {
        Self::new(letters, BTreeMap::new(), cutoff).expect("zero differential is valid")
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn algebra(&self) -> &FreeLie<L> {
        &self.algebra
    }

    pub fn generators(&self) -> &[L] {
        self.algebra.letters()
    }

    pub fn differential_of(&self, g: &L) -> LieElement<L> {
        self.diff.get(g).cloned().unwrap_or_default()
    }

    pub fn differential_map(&self) -> &BTreeMap<L, LieElement<L>> {
        &self.diff
    }

    /// Extends the differential as a derivation of degree `-1`.
    pub fn d(&self, e: &LieElement<L>) -> LieElement<L> {
        e.derive(1, &mut |l: &L| self.differential_of(l))
    }

    pub fn validate(&self) -> ValidationReport<L> {
        let violations = self
            .generators()
            .iter()
            .filter_map(|g| {
                let r = self.d(&self.differential_of(g));
                (!r.is_zero()).then(|| Violation { generator: g.clone(), residue: r })
            })
            .collect();
        ValidationReport { violations }
    }

    /// Every `∂g` has bracket length at least 2.
    pub fn is_minimal(&self) -> bool {
        self.diff.values().all(|v| v.min_length().is_none_or(|k| k >= 2))
    }

    pub fn basis(&self, n: u32) -> Result<Arc<DegreeBasis<L>>, DglError> {
        Ok(self.algebra.basis(n)?)
    }

    /// Matrix of `∂ : L_n → L_{n-1}` on the monomial bases.
    pub fn boundary_matrix(&self, n: u32) -> Result<Arc<SparseMatrix<Q>>, DglError> {
        if let Some(m) = self.matrices.lock().expect("matrix cache").get(&n) {
            return Ok(m.clone());
        }
        let src = self.basis(n)?;
        let m = if n <= 1 {
            SparseMatrix::zeros(0, src.len())
        } else {
            let tgt = self.basis(n - 1)?;
            let cols: Vec<BTreeMap<usize, Q>> = src
                .monomials
                .iter()
                .map(|m| tgt.decompose_sparse(&self.d(&LieElement::monomial(m.clone()))))
                .collect();
            SparseMatrix::from_sparse_columns(tgt.len(), &cols)
        };
        let m = Arc::new(m);
        self.matrices.lock().expect("matrix cache").insert(n, m.clone());
        Ok(m)
    }

    /// The underlying chain complex in degrees `1..=through+1`.
    pub fn chain_complex(&self, through: u32) -> Result<ChainComplex<Q>, DglError> {
        let mut c = ChainComplex::new();
        for n in 1..=through + 1 {
            let b = self.basis(n)?;
            c.set_labels(n as i64, b.monomials.iter().map(|m| m.render()).collect());
        }
        for n in 2..=through + 1 {
            c.set_boundary(n as i64, (*self.boundary_matrix(n)?).clone())?;
        }
        Ok(c)
    }

    pub fn homology_in_degree(&self, n: u32) -> Result<DegreeHomology<L>, DglError> {
        let basis = self.basis(n)?;
        let d_out = self.boundary_matrix(n)?;
        let d_in = self.boundary_matrix(n + 1)?;
        let inner = crate::linalg::homology_at(&d_out, &d_in, basis.len())?;
        let representatives = inner.representatives.iter().map(|v| basis.compose(v)).collect();
        Ok(DegreeHomology { degree: n, betti: inner.betti, representatives, cycles: inner.cycle_dim, basis, inner })
    }

    /// `H'_n` for `1 ≤ n ≤ through`.
    pub fn chain_homology(&self, through: u32) -> Result<HomologyPresentation<L>, DglError> {
        let through = through.min(self.cutoff);
        let degrees = (1..=through).map(|n| Ok((n, self.homology_in_degree(n)?))).collect::<Result<_, DglError>>()?;
        Ok(HomologyPresentation { through, degrees })
    }

    /// Same generators, but a different cutoff.
    pub fn with_cutoff(&self, cutoff: u32) -> Self {
        Dgl::new(self.generators().to_vec(), self.diff.clone(), cutoff).expect("already validated")
    }
}

impl Dgl<Gen> {
    /// Builds a DGL from named generators and differential values.
    pub fn from_named(
        gens: &GeneratorSet,
        diff: impl IntoIterator<Item = (String, LieElement<Gen>)>,
        cutoff: u32,
    ) -> Result<Self, DglError> {
        let mut map = BTreeMap::new();
        for (name, v) in diff {
            let g = gens.get(&name).ok_or_else(|| DglError::NotAGenerator(name.clone()))?;
            map.insert(g.clone(), v);
        }
        Dgl::new(gens.gens().to_vec(), map, cutoff)
    }

    pub fn generator(&self, name: &str) -> Option<&Gen> {
        self.generators().iter().find(|g| &*g.name == name)
    }

    pub fn element(&self, name: &str) -> LieElement<Gen> {
        LieElement::letter(self.generator(name).unwrap_or_else(|| panic!("no generator `{name}`")).clone())
    }

    pub fn generator_set(&self) -> GeneratorSet {
        let spec: Vec<(&str, u32)> = self.generators().iter().map(|g| (&*g.name, g.degree)).collect();
        GeneratorSet::new(&spec).expect("names already unique")
    }

    /// Renames generators (bijectively); order is preserved.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<Self, DglError> {
        let spec: Vec<(String, u32)> = self.generators().iter().map(|g| (f(&g.name), g.degree)).collect();
        let set = GeneratorSet::new(&spec)?;
        let image = |g: &Gen| LieElement::letter(set.gens()[g.index].clone());
        let diff = self
            .diff
            .iter()
            .map(|(g, v)| (set.gens()[g.index].clone(), v.map_letters(&mut |l: &Gen| image(l))))
            .collect();
        Dgl::new(set.gens().to_vec(), diff, self.cutoff)
    }
}

/// `S^k_{(x)}`: one generator of degree `k`, zero differential.
pub fn sphere(k: u32, name: &str, cutoff: u32) -> Result<Dgl<Gen>, DglError> {
    if k < 1 {
        return Err(DglError::BadDimension(k));
    }
    let s = GeneratorSet::new(&[(name, k)])?;
    Ok(Dgl::trivial(s.gens().to_vec(), cutoff))
}

/// `D^{n}_{(x)}`: generators `x` of degree `n` and `∂x` of degree `n - 1`.
pub fn disk(n: u32, name: &str, cutoff: u32) -> Result<Dgl<Gen>, DglError> {
    if n < 2 {
        return Err(DglError::BadDimension(n));
    }
    let s = GeneratorSet::new(&[(name.to_string(), n), (format!("∂{name}"), n - 1)])?;
    let x = s.gens()[0].clone();
    let dx = s.gens()[1].clone();
    Dgl::new(s.gens().to_vec(), BTreeMap::from([(x, LieElement::letter(dx))]), cutoff)
}

/// The sphere spanned by the boundary generator of a disk.
pub fn boundary_of_disk(d: &Dgl<Gen>) -> Result<Dgl<Gen>, DglError> {
    let (x, dx) = match d.generators() {
        [a, b] if d.differential_of(a) == LieElement::letter(b.clone()) => (a, b),
        [a, b] if d.differential_of(b) == LieElement::letter(a.clone()) => (b, a),
        _ => return Err(DglError::NotAGenerator("not a disk".into())),
    };
    let _ = x;
    sphere(dx.degree, &dx.name, d.cutoff())
}

/// Coproduct of free DGLs; clashing names get primes appended.
pub fn coproduct(ds: &[&Dgl<Gen>]) -> Result<Dgl<Gen>, DglError> {
    let mut set = GeneratorSet::default();
    let mut diff = BTreeMap::new();
    let cutoff = ds.iter().map(|d| d.cutoff()).min().unwrap_or(0);
    for d in ds {
        let mut map: BTreeMap<Gen, Gen> = BTreeMap::new();
        for g in d.generators() {
            let mut name = g.name.to_string();
            while set.get(&name).is_some() {
                name.push('\'');
            }
            map.insert(g.clone(), set.push(&name, g.degree)?);
        }
        for (g, v) in d.differential_map() {
            diff.insert(map[g].clone(), v.map_letters(&mut |l: &Gen| LieElement::letter(map[l].clone())));
        }
    }
    Dgl::new(set.gens().to_vec(), diff, cutoff)
}

/// Four odd degree-1 spheres `a, b, c, d` with the triple brackets
/// `[[b,a],c]`, `[[b,a],d]`, `[[d,c],a]`, `[[d,c],b]` killed. The cycle
/// `[x,d] + [y,c] + [z,b] + [w,a]` carries a secondary Whitehead product.
pub fn secondary_product(cutoff: u32) -> Dgl<Gen> {
    let s = GeneratorSet::new(&[("a", 1), ("b", 1), ("c", 1), ("d", 1), ("x", 4), ("y", 4), ("z", 4), ("w", 4)])
        .expect("distinct names");
    let e = |src: &str| crate::lie::parse_expr(src).expect("valid").eval(&|n| s.get(n).cloned()).expect("known names");
    Dgl::from_named(
        &s,
        [
            ("x".to_string(), e("[[b,a],c]")),
            ("y".to_string(), e("[[b,a],d]")),
            ("z".to_string(), e("[[d,c],a]")),
            ("w".to_string(), e("[[d,c],b]")),
        ],
        cutoff,
    )
    .expect("a DGL")
}

/// Three odd degree-1 spheres with `[a,b]`, `[b,c]`, `[c,a]` killed by
/// `x`, `y`, `z`. The cycle `[x,c] + [y,a] + [z,b]` carries a triple Massey
/// product.
pub fn triple_massey(cutoff: u32) -> Dgl<Gen> {
    let s = GeneratorSet::new(&[("a", 1), ("b", 1), ("c", 1), ("x", 3), ("y", 3), ("z", 3)]).expect("distinct names");
    let e = |src: &str| crate::lie::parse_expr(src).expect("valid").eval(&|n| s.get(n).cloned()).expect("known names");
    let diff = [("x", "[a,b]"), ("y", "[b,c]"), ("z", "[c,a]")].map(|(g, v)| (g.to_string(), e(v)));
    Dgl::from_named(&s, diff, cutoff).expect("a DGL")
}

/// A face of a nondegenerate simplex: another nondegenerate simplex, or a
/// degenerate one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Face {
    Simplex(usize),
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub name: String,
    /// `faces[i]` indexes the nondegenerate simplices of one dimension lower.
    pub faces: Vec<Face>,
}

/// Finite simplicial set given by its nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    pub simplices: Vec<Vec<Simplex>>,
    pub basepoint: usize,
}

impl FiniteSimplicialSet {
    pub fn point() -> Self {
        FiniteSimplicialSet { simplices: vec![vec![Simplex { name: "*".into(), faces: vec![] }]], basepoint: 0 }
    }

    /// The standard simplex `Δ[n]`; simplices are named by vertex lists.
    pub fn standard_simplex(n: usize) -> Self {
        let mut simplices: Vec<Vec<Simplex>> = Vec::new();
        let mut index: Vec<BTreeMap<Vec<usize>, usize>> = Vec::new();
        for k in 0..=n {
            let mut level = Vec::new();
            let mut idx = BTreeMap::new();
            for subset in subsets(n + 1, k + 1) {
                let faces = if k == 0 {
                    vec![]
                } else {
                    (0..=k)
                        .map(|i| {
                            let mut f = subset.clone();
                            f.remove(i);
                            Face::Simplex(index[k - 1][&f])
                        })
                        .collect()
                };
                idx.insert(subset.clone(), level.len());
                level.push(Simplex { name: subset.iter().map(|v| v.to_string()).collect(), faces });
            }
            simplices.push(level);
            index.push(idx);
        }
        FiniteSimplicialSet { simplices, basepoint: 0 }
    }

    /// `S^n = Δ[n]/∂Δ[n]`: a point and one `n`-simplex with degenerate faces.
    pub fn sphere(n: usize) -> Self {
        assert!(n >= 1);
        let mut simplices = vec![vec![Simplex { name: "*".into(), faces: vec![] }]];
        for _ in 1..n {
            simplices.push(vec![]);
        }
        let faces = if n == 1 { vec![Face::Simplex(0), Face::Simplex(0)] } else { vec![Face::Degenerate; n + 1] };
        simplices.push(vec![Simplex { name: "σ".into(), faces }]);
        FiniteSimplicialSet { simplices, basepoint: 0 }
    }

    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on nondegenerate data,
    /// treating degenerate faces as absorbing.
    pub fn check_identities(&self) -> bool {
        for (k, level) in self.simplices.iter().enumerate().skip(2) {
            for s in level {
                for j in 0..=k {
                    for i in 0..j {
                        let a = self.face_of_face(k, s, j, i);
                        let b = self.face_of_face(k, s, i, j - 1);
                        if let (Some(a), Some(b)) = (a, b) {
                            if a != b {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    // Some(Some(idx)) nondegenerate, Some(None) degenerate; None unknown
    fn face_of_face(&self, k: usize, s: &Simplex, outer: usize, inner: usize) -> Option<Option<usize>> {
        match &s.faces[outer] {
            Face::Degenerate => None,
            Face::Simplex(f) => match &self.simplices[k - 1][*f].faces[inner] {
                Face::Degenerate => Some(None),
                Face::Simplex(g) => Some(Some(*g)),
            },
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The half-smash `L ⋊ A`.
///
/// On a vertex `a`, `(∂x, a)` is the image of `∂x` under the Lie morphism
/// `y ↦ (y, a)`. On simplices of positive dimension `(·, a)` is only defined
/// linearly, so every `∂x` must then be linear.
pub fn half_smash(d: &Dgl<Gen>, k: &FiniteSimplicialSet) -> Result<Dgl<Gen>, DglError> {
    let positive = k.simplices.iter().skip(1).any(|l| !l.is_empty());
    if positive {
        if let Some(g) = d.generators().iter().find(|g| d.differential_of(g).min_length().is_some_and(|m| m >= 2)) {
            return Err(DglError::NonlinearHalfSmash(g.name.to_string()));
        }
    }
    let single_point = k.simplices.iter().map(|l| l.len()).sum::<usize>() == 1;
    let mut set = GeneratorSet::default();
    let mut pair: BTreeMap<(usize, usize, usize), Gen> = BTreeMap::new();
    for x in d.generators() {
        for (dim, level) in k.simplices.iter().enumerate() {
            for (i, s) in level.iter().enumerate() {
                let name = if single_point { x.name.to_string() } else { format!("{}@{}", x.name, s.name) };
                let g = set.push(&name, x.degree + dim as u32)?;
                pair.insert((x.index, dim, i), g);
            }
        }
    }
    let mut diff = BTreeMap::new();
    for x in d.generators() {
        let m = x.degree as i64;
        let dx = d.differential_of(x);
        for (dim, level) in k.simplices.iter().enumerate() {
            for (i, s) in level.iter().enumerate() {
                let mut v = LieElement::zero();
                if dim > 0 {
                    for (fi, f) in s.faces.iter().enumerate() {
                        if let Face::Simplex(j) = f {
                            let sgn = crate::scalar::parity_sign(fi as i64 + m);
                            v.add_scaled(&q(sgn), &LieElement::letter(pair[&(x.index, dim - 1, *j)].clone()));
                        }
                    }
                }
                v += dx.map_letters(&mut |y: &Gen| LieElement::letter(pair[&(y.index, dim, i)].clone()));
                diff.insert(pair[&(x.index, dim, i)].clone(), v);
            }
        }
    }
    Dgl::new(set.gens().to_vec(), diff, d.cutoff())
}

/// Generator names appearing in `e`.
pub fn support_names(e: &LieElement<Gen>) -> BTreeSet<String> {
    e.letters().map(|g| g.name.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_on_generators_and_brackets() {
        let d = secondary_product(6);
        assert_eq!(d.d(&d.element("x")), d.differential_of(d.generator("x").unwrap()));
        let xd = d.element("x").bracket(&d.element("d"));
        let abc = d.element("b").bracket(&d.element("a")).bracket(&d.element("c")).bracket(&d.element("d"));
        assert_eq!(d.d(&xd), abc);
        let ab = d.element("a").bracket(&d.element("b"));
        assert!(d.d(&ab).is_zero());
    }

    #[test]
    fn validation() {
        assert!(secondary_product(6).validate().is_valid());
        let s = GeneratorSet::new(&[("u", 3), ("v", 2), ("w", 1)]).unwrap();
        let v = LieElement::letter(s.gens()[1].clone());
        let w = LieElement::letter(s.gens()[2].clone());
        let bad = Dgl::from_named(&s, [("u".into(), v), ("v".into(), w)], 4).unwrap();
        let r = bad.validate();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(&*r.violations[0].generator.name, "u");
    }

    #[test]
    fn degree_mismatch_rejected() {
        let s = GeneratorSet::new(&[("x", 4), ("y", 4)]).unwrap();
        let y = LieElement::letter(s.gens()[1].clone());
        assert!(matches!(Dgl::from_named(&s, [("x".into(), y)], 4), Err(DglError::DegreeMismatch { .. })));
    }

    #[test]
    fn minimality() {
        assert!(secondary_product(5).is_minimal());
        assert!(!disk(3, "x", 5).unwrap().is_minimal());
        assert!(sphere(2, "x", 5).unwrap().is_minimal());
    }

    #[test]
    fn spheres_and_disks() {
        let s = sphere(2, "x", 6).unwrap();
        let h = s.chain_homology(6).unwrap();
        assert_eq!(h.betti_table(), BTreeMap::from([(1, 0), (2, 1), (3, 0), (4, 0), (5, 0), (6, 0)]));
        let dk = disk(3, "x", 7).unwrap();
        assert!(dk.chain_homology(7).unwrap().betti_table().values().all(|&b| b == 0));
        let b = boundary_of_disk(&dk).unwrap();
        assert_eq!(b.generators().len(), 1);
        assert_eq!(&*b.generators()[0].name, "∂x");
        assert!(sphere(0, "x", 3).is_err());
    }

    #[test]
    fn secondary_cycle_is_nontrivial() {
        let d = secondary_product(6);
        let e = |n: &str| d.element(n);
        let cyc = e("x").bracket(&e("d")) + e("y").bracket(&e("c")) + e("z").bracket(&e("b")) + e("w").bracket(&e("a"));
        assert!(d.d(&cyc).is_zero());
        let h = d.homology_in_degree(5).unwrap();
        let c = h.class_of(&cyc).unwrap();
        assert!(c.iter().any(|x| *x != q(0)));
    }

    #[test]
    fn coproducts() {
        let x = sphere(2, "x", 5).unwrap();
        let y = sphere(2, "y", 5).unwrap();
        let c = coproduct(&[&x, &y]).unwrap();
        assert_eq!(c.basis(4).unwrap().len(), 1);
        let one = coproduct(&[&x]).unwrap();
        assert_eq!(one.generators(), x.generators());
        let xx = coproduct(&[&x, &x]).unwrap();
        assert_eq!(&*xx.generators()[1].name, "x'");
    }

    #[test]
    fn half_smash_with_interval() {
        let s = sphere(2, "x", 5).unwrap();
        let h = half_smash(&s, &FiniteSimplicialSet::standard_simplex(1)).unwrap();
        assert_eq!(h.generators().len(), 3);
        assert!(h.validate().is_valid());
        let e = h.generator("x@01").unwrap();
        let v0 = LieElement::letter(h.generator("x@0").unwrap().clone());
        let v1 = LieElement::letter(h.generator("x@1").unwrap().clone());
        // d_0(01) = 1, d_1(01) = 0
        assert_eq!(h.differential_of(e), v1 - v0);
        let p = half_smash(&s, &FiniteSimplicialSet::point()).unwrap();
        assert_eq!(p.generators(), s.generators());
    }

    #[test]
    fn half_smash_needs_linear_differential() {
        let d = secondary_product(5);
        assert!(half_smash(&d, &FiniteSimplicialSet::point()).is_ok());
        assert!(matches!(
            half_smash(&d, &FiniteSimplicialSet::standard_simplex(1)),
            Err(DglError::NonlinearHalfSmash(_))
        ));
    }

    #[test]
    fn simplicial_sets_satisfy_identities() {
        for n in 0..4 {
            assert!(FiniteSimplicialSet::standard_simplex(n).check_identities());
        }
        assert!(FiniteSimplicialSet::sphere(2).check_identities());
    }
}
