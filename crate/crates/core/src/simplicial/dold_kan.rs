//! The Dold–Kan correspondence for bigraded chain complexes.

use std::collections::BTreeMap;

use super::moore::{moore, SimplicialModule, SimplicialVectorSpace};
use super::SimplicialError;
use crate::linalg::{Echelon, SparseMatrix};
use crate::scalar::{parity_sign, Q};

/// Finite-dimensional chain complexes `C_{•,s}`, one per internal degree,
/// with `∂ : C_{p,s} → C_{p-1,s}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BigradedComplex {
    pub dims: BTreeMap<(usize, u32), usize>,
    pub boundaries: BTreeMap<(usize, u32), SparseMatrix<Q>>,
}

impl BigradedComplex {
    pub fn dim(&self, p: usize, s: u32) -> usize {
        self.dims.get(&(p, s)).copied().unwrap_or(0)
    }

    pub fn boundary(&self, p: usize, s: u32) -> SparseMatrix<Q> {
        self.boundaries.get(&(p, s)).cloned().unwrap_or_else(|| {
            SparseMatrix::zeros(if p == 0 { 0 } else { self.dim(p - 1, s) }, self.dim(p, s))
        })
    }

    pub fn top(&self) -> usize {
        self.dims.iter().filter(|(_, &d)| d > 0).map(|(k, _)| k.0).max().unwrap_or(0)
    }

    pub fn internal_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.dims.keys().map(|k| k.1).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn is_complex(&self) -> bool {
        self.boundaries.keys().all(|&(p, s)| {
            p < 2 || self.boundary(p - 1, s).mul(&self.boundary(p, s)).is_ok_and(|m| m.is_zero())
        })
    }
}

/// Monotone surjection `[n] → [k]` stored by its values.
pub type Surjection = Vec<usize>;

/// All monotone surjections `[n] ↠ [k]` for `k ≤ n`, ordered by `k` and then
/// lexicographically.
pub fn surjections(n: usize) -> Vec<Surjection> {
    let mut out = Vec::new();
    // a surjection is determined by the set of positions where it jumps
    for mask in 0u64..(1u64 << n) {
        let mut v = vec![0usize];
        for b in 0..n {
            let last = *v.last().expect("nonempty");
            v.push(if mask >> b & 1 == 1 { last + 1 } else { last });
        }
        out.push(v);
    }
    out.sort_by(|a, b| (a[n], a).cmp(&(b[n], b)));
    out
}

fn target(eta: &Surjection) -> usize {
    *eta.last().expect("nonempty")
}

/// `(ΓC)_n = ⊕_{η : [n] ↠ [k]} C_k`.
pub struct Gamma<'a> {
    c: &'a BigradedComplex,
    simp_cutoff: usize,
    summands: Vec<Vec<(Surjection, usize)>>,
}

impl<'a> Gamma<'a> {
    pub fn new(c: &'a BigradedComplex, simp_cutoff: usize) -> Self {
        let summands = (0..=simp_cutoff + 1).map(|n| surjections(n).into_iter().map(|e| (e.clone(), target(&e))).collect()).collect();
        Gamma { c, simp_cutoff, summands }
    }

    /// Offset of the summand indexed by `eta` inside `(ΓC)_{n,s}`.
    fn offset(&self, eta: &Surjection, s: u32) -> usize {
        let n = eta.len() - 1;
        let mut off = 0;
        for (e, k) in &self.summands[n] {
            if e == eta {
                return off;
            }
            off += self.c.dim(*k, s);
        }
        panic!("not a surjection: {eta:?}")
    }

    /// Labels `η|i` for each basis vector.
    pub fn labels(&self, n: usize, s: u32) -> Vec<String> {
        let mut out = Vec::new();
        for (e, k) in &self.summands[n] {
            let name: String = e.iter().map(|v| v.to_string()).collect();
            for i in 0..self.c.dim(*k, s) {
                out.push(format!("{name}|{i}"));
            }
        }
        out
    }

    /// Positions of the identity summand `C_n ⊂ (ΓC)_n`.
    pub fn identity_summand(&self, n: usize, s: u32) -> std::ops::Range<usize> {
        let id: Surjection = (0..=n).collect();
        let o = self.offset(&id, s);
        o..o + self.c.dim(n, s)
    }

    pub fn materialize(&self) -> SimplicialVectorSpace {
        let mut out = SimplicialVectorSpace::from_module(self);
        for s in self.internal_degrees() {
            for n in 0..=self.simp_cutoff {
                out.labels.insert((n, s), self.labels(n, s));
            }
        }
        out
    }
}

/// Factors a monotone map `f : [m] → [k]` as `δ ∘ η'` with `η'` surjective
/// onto its image; returns `η'` and the sorted list of missed values.
fn image_factor(f: &[usize], k: usize) -> (Surjection, Vec<usize>) {
    let missed: Vec<usize> = (0..=k).filter(|v| !f.contains(v)).collect();
    let eta = f.iter().map(|v| v - missed.iter().filter(|m| *m < v).count()).collect();
    (eta, missed)
}

impl SimplicialModule for Gamma<'_> {
    fn simp_cutoff(&self) -> usize {
        self.simp_cutoff
    }

    fn internal_degrees(&self) -> Vec<u32> {
        self.c.internal_degrees()
    }

    fn dim(&self, n: usize, s: u32) -> usize {
        self.summands[n].iter().map(|(_, k)| self.c.dim(*k, s)).sum()
    }

    fn face_matrix(&self, n: usize, i: usize, s: u32) -> SparseMatrix<Q> {
        let mut m = SparseMatrix::zeros(self.dim(n - 1, s), self.dim(n, s));
        let sign = Q::from_integer(parity_sign(s as i64).into());
        let mut col = 0;
        for (eta, k) in &self.summands[n] {
            let dk = self.c.dim(*k, s);
            // η ∘ δ^i skips position i
            let comp: Vec<usize> = eta.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| *v).collect();
            let (eta2, missed) = image_factor(&comp, *k);
            if missed.is_empty() {
                let off = self.offset(&eta2, s);
                for a in 0..dk {
                    m.set(off + a, col + a, Q::from_integer(1.into()));
                }
            } else if missed == [0] {
                let off = self.offset(&eta2, s);
                let d = self.c.boundary(*k, s);
                for a in 0..dk {
                    for b in 0..d.rows() {
                        let x = d.get(b, a);
                        if x != Q::default() {
                            m.set(off + b, col + a, sign.clone() * x);
                        }
                    }
                }
            }
            col += dk;
        }
        m
    }

    fn degeneracy_matrix(&self, n: usize, j: usize, s: u32) -> SparseMatrix<Q> {
        let mut m = SparseMatrix::zeros(self.dim(n + 1, s), self.dim(n, s));
        let mut col = 0;
        for (eta, k) in &self.summands[n] {
            // η ∘ σ^j repeats position j
            let mut comp = eta.clone();
            comp.insert(j, eta[j]);
            let off = self.offset(&comp, s);
            for a in 0..self.c.dim(*k, s) {
                m.set(off + a, col + a, Q::from_integer(1.into()));
            }
            col += self.c.dim(*k, s);
        }
        m
    }
}

pub fn gamma(c: &BigradedComplex, simp_cutoff: usize) -> SimplicialVectorSpace {
    Gamma::new(c, simp_cutoff).materialize()
}

/// The normalized (Moore) complex as a bigraded chain complex, on the
/// Moore bases chosen by [`moore`].
pub fn normalize_n(a: &impl SimplicialModule) -> Result<BigradedComplex, SimplicialError> {
    let mc = moore(a)?;
    let mut out = BigradedComplex::default();
    for s in mc.internal_degrees() {
        for p in 0..=mc.simp_cutoff() {
            out.dims.insert((p, s), mc.dim(p, s));
            if p > 0 {
                out.boundaries.insert((p, s), mc.boundary(p, s));
            }
        }
    }
    Ok(out)
}

/// Checks `N(ΓC) ≅ C` through the cutoff by the identity on labels: the
/// Moore subspace of `(ΓC)_p` equals the identity summand, and `(-1)^s d_0`
/// restricts to `∂`.
pub fn check_round_trip(c: &BigradedComplex, simp_cutoff: usize) -> Result<bool, SimplicialError> {
    let g = Gamma::new(c, simp_cutoff);
    let mc = moore(&g)?;
    for s in c.internal_degrees() {
        for p in 0..=simp_cutoff {
            let range = g.identity_summand(p, s);
            if mc.dim(p, s) != range.len() {
                return Ok(false);
            }
            let amb = g.dim(p, s);
            let mut e = Echelon::<Q>::new(amb);
            for b in mc.basis(p, s) {
                e.insert(b);
            }
            for idx in range.clone() {
                let mut v = vec![Q::default(); amb];
                v[idx] = Q::from_integer(1.into());
                if !e.contains(&v) {
                    return Ok(false);
                }
                if p == 0 {
                    continue;
                }
                // (-1)^s d_0 on the identity summand is ∂ into the identity summand of p-1
                let d0 = g.face_matrix(p, 0, s).mul_vec(&v);
                let sign = Q::from_integer(parity_sign(s as i64).into());
                let tr = g.identity_summand(p - 1, s);
                let col = c.boundary(p, s).column(idx - range.start);
                for (k, x) in d0.iter().enumerate() {
                    let want = if tr.contains(&k) { col[k - tr.start].clone() } else { Q::default() };
                    if sign.clone() * x.clone() != want {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn one_generator(p: usize) -> BigradedComplex {
        let mut c = BigradedComplex::default();
        c.dims.insert((p, 2), 1);
        c
    }

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(0).len(), 1);
        assert_eq!(surjections(2).len(), 4);
        assert_eq!(surjections(2).iter().filter(|e| target(e) == 1).count(), 2);
    }

    #[test]
    fn degree_one_generator_counts() {
        let c = one_generator(1);
        let g = gamma(&c, 3);
        assert_eq!((g.dim(0, 2), g.dim(1, 2), g.dim(2, 2), g.dim(3, 2)), (0, 1, 2, 3));
        g.check_identities().unwrap();
    }

    #[test]
    fn degree_zero_is_constant() {
        let mut c = BigradedComplex::default();
        c.dims.insert((0, 1), 2);
        let g = gamma(&c, 3);
        for n in 0..=3 {
            assert_eq!(g.dim(n, 1), 2);
            for i in 0..=n {
                if n > 0 {
                    assert_eq!(g.face_matrix(n, i, 1), SparseMatrix::identity(2));
                }
            }
        }
    }

    #[test]
    fn round_trip_with_boundary() {
        let mut c = BigradedComplex::default();
        c.dims.insert((0, 3), 1);
        c.dims.insert((1, 3), 2);
        c.dims.insert((2, 3), 1);
        c.boundaries.insert((1, 3), SparseMatrix::from_dense(&[vec![q(1), q(2)]]));
        c.boundaries.insert((2, 3), SparseMatrix::from_dense(&[vec![q(2)], vec![q(-1)]]));
        assert!(c.is_complex());
        let g = gamma(&c, 4);
        g.check_identities().unwrap();
        assert!(check_round_trip(&c, 4).unwrap());
        let n = normalize_n(&g).unwrap();
        assert_eq!((n.dim(0, 3), n.dim(1, 3), n.dim(2, 3), n.dim(3, 3)), (1, 2, 1, 0));
    }
}
