//! Simplicial graded vector spaces given by matrices, and their Moore
//! complexes.

use std::collections::BTreeMap;

use super::SimplicialError;
use crate::linalg::{kernel_basis, to_dense, to_sparse, ChainComplex, Echelon, HomologyAt, SparseMatrix};
use crate::scalar::Q;

/// A simplicial graded vector space presented through its structure
/// matrices. `face_matrix(n, i, s)` maps `(n, s) → (n-1, s)` and
/// `degeneracy_matrix(n, j, s)` maps `(n, s) → (n+1, s)`.
pub trait SimplicialModule {
    fn simp_cutoff(&self) -> usize;
    fn internal_degrees(&self) -> Vec<u32>;
    fn dim(&self, n: usize, s: u32) -> usize;
    fn face_matrix(&self, n: usize, i: usize, s: u32) -> SparseMatrix<Q>;
    fn degeneracy_matrix(&self, n: usize, j: usize, s: u32) -> SparseMatrix<Q>;

    /// Checks every simplicial identity within the cutoff.
    fn check_identities(&self) -> Result<(), SimplicialError> {
        let top = self.simp_cutoff();
        let fail = |what: String| Err(SimplicialError::Identity(what));
        for s in self.internal_degrees() {
            for n in 2..=top {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face_matrix(n - 1, i, s).mul(&self.face_matrix(n, j, s))?;
                        let rhs = self.face_matrix(n - 1, j - 1, s).mul(&self.face_matrix(n, i, s))?;
                        if lhs != rhs {
                            return fail(format!("d{i} d{j} = d{} d{i} in dimension {n}, degree {s}", j - 1));
                        }
                    }
                }
            }
            for n in 0..top {
                for j in 0..=n {
                    for i in 0..=n + 1 {
                        let lhs = self.face_matrix(n + 1, i, s).mul(&self.degeneracy_matrix(n, j, s))?;
                        let rhs = if i < j {
                            self.degeneracy_matrix(n - 1, j - 1, s).mul(&self.face_matrix(n, i, s))?
                        } else if i == j || i == j + 1 {
                            SparseMatrix::identity(self.dim(n, s))
                        } else {
                            self.degeneracy_matrix(n - 1, j, s).mul(&self.face_matrix(n, i - 1, s))?
                        };
                        if lhs != rhs {
                            return fail(format!("d{i} s{j} in dimension {n}, degree {s}"));
                        }
                    }
                }
            }
            for n in 0..top.saturating_sub(1) {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = self.degeneracy_matrix(n + 1, i, s).mul(&self.degeneracy_matrix(n, j, s))?;
                        let rhs = self.degeneracy_matrix(n + 1, j + 1, s).mul(&self.degeneracy_matrix(n, i, s))?;
                        if lhs != rhs {
                            return fail(format!("s{i} s{j} in dimension {n}, degree {s}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Projection onto `⋂_{i≥1} Ker d_i`:
    /// `(1 - s_0 d_1)(1 - s_1 d_2)…(1 - s_{p-1} d_p)`, rightmost factor first.
    fn moore_projection(&self, p: usize, s: u32, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for k in (1..=p).rev() {
            let d = self.face_matrix(p, k, s).mul_vec(&v);
            let back = self.degeneracy_matrix(p - 1, k - 1, s).mul_vec(&d);
            for (a, b) in v.iter_mut().zip(back) {
                *a -= b;
            }
        }
        v
    }
}

/// Explicit structure matrices.
#[derive(Clone, Debug, Default)]
pub struct SimplicialVectorSpace {
    pub simp_cutoff: usize,
    pub dims: BTreeMap<(usize, u32), usize>,
    pub faces: BTreeMap<(usize, usize, u32), SparseMatrix<Q>>,
    pub degeneracies: BTreeMap<(usize, usize, u32), SparseMatrix<Q>>,
    pub labels: BTreeMap<(usize, u32), Vec<String>>,
}

impl SimplicialVectorSpace {
    /// The constant simplicial object on a graded space of the given
    /// dimensions: every face and degeneracy is the identity.
    pub fn constant(dims: &BTreeMap<u32, usize>, simp_cutoff: usize) -> Self {
        let mut out = SimplicialVectorSpace { simp_cutoff, ..Default::default() };
        for (&s, &d) in dims {
            for n in 0..=simp_cutoff {
                out.dims.insert((n, s), d);
                for i in 0..=n {
                    if n > 0 {
                        out.faces.insert((n, i, s), SparseMatrix::identity(d));
                    }
                    if n < simp_cutoff {
                        out.degeneracies.insert((n, i, s), SparseMatrix::identity(d));
                    }
                }
            }
        }
        out
    }

    /// Materializes any presentation within its cutoffs.
    pub fn from_module(m: &impl SimplicialModule) -> Self {
        let top = m.simp_cutoff();
        let mut out = SimplicialVectorSpace { simp_cutoff: top, ..Default::default() };
        for s in m.internal_degrees() {
            for n in 0..=top {
                out.dims.insert((n, s), m.dim(n, s));
                for i in 0..=n {
                    if n > 0 {
                        out.faces.insert((n, i, s), m.face_matrix(n, i, s));
                    }
                    if n < top {
                        out.degeneracies.insert((n, i, s), m.degeneracy_matrix(n, i, s));
                    }
                }
            }
        }
        out
    }
}

impl SimplicialModule for SimplicialVectorSpace {
    fn simp_cutoff(&self) -> usize {
        self.simp_cutoff
    }

    fn internal_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.dims.keys().map(|k| k.1).collect();
        v.dedup();
        v.sort();
        v.dedup();
        v
    }

    fn dim(&self, n: usize, s: u32) -> usize {
        self.dims.get(&(n, s)).copied().unwrap_or(0)
    }

    fn face_matrix(&self, n: usize, i: usize, s: u32) -> SparseMatrix<Q> {
        self.faces.get(&(n, i, s)).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.dim(n - 1, s), self.dim(n, s)))
    }

    fn degeneracy_matrix(&self, n: usize, j: usize, s: u32) -> SparseMatrix<Q> {
        self.degeneracies
            .get(&(n, j, s))
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(n + 1, s), self.dim(n, s)))
    }
}

#[derive(Clone, Debug)]
struct MooreCell {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    solver: Echelon<Q>,
}

/// `C_{p,s} = ⋂_{i=1}^{p} Ker d_i` with `∂ = (-1)^s d_0`, written in
/// coordinates relative to a chosen basis of each `C_{p,s}`.
#[derive(Clone, Debug)]
pub struct MooreComplex {
    simp_cutoff: usize,
    cells: BTreeMap<(usize, u32), MooreCell>,
    boundaries: BTreeMap<(usize, u32), SparseMatrix<Q>>,
}

/// Computes the Moore complex by exact kernel intersection through the
/// simplicial cutoff.
pub fn moore(m: &impl SimplicialModule) -> Result<MooreComplex, SimplicialError> {
    let top = m.simp_cutoff();
    let mut cells = BTreeMap::new();
    for s in m.internal_degrees() {
        for p in 0..=top {
            let ambient = m.dim(p, s);
            let basis = if p == 0 {
                (0..ambient).map(|i| (0..ambient).map(|j| if i == j { Q::from_integer(1.into()) } else { Q::default() }).collect()).collect()
            } else {
                let mut stack = m.face_matrix(p, 1, s);
                for i in 2..=p {
                    stack = stack.vstack(&m.face_matrix(p, i, s))?;
                }
                kernel_basis(&stack)
            };
            let mut solver = Echelon::new(ambient);
            for b in &basis {
                solver.insert(b);
            }
            cells.insert((p, s), MooreCell { ambient, basis, solver });
        }
    }
    let mut boundaries = BTreeMap::new();
    for (&(p, s), cell) in &cells {
        if p == 0 {
            continue;
        }
        let target = &cells[&(p - 1, s)];
        let d0 = m.face_matrix(p, 0, s);
        let sign = Q::from_integer(crate::scalar::parity_sign(s as i64).into());
        let mut cols = Vec::new();
        for b in &cell.basis {
            let img: Vec<Q> = d0.mul_vec(b).into_iter().map(|x| x * sign.clone()).collect();
            let c = target.solver.solve(&img).ok_or_else(|| {
                SimplicialError::Identity(format!("d0 does not preserve the Moore complex at ({p}, {s})"))
            })?;
            cols.push(to_sparse(&c));
        }
        boundaries.insert((p, s), SparseMatrix::from_sparse_columns(target.basis.len(), &cols));
    }
    Ok(MooreComplex { simp_cutoff: top, cells, boundaries })
}

impl MooreComplex {
    pub fn simp_cutoff(&self) -> usize {
        self.simp_cutoff
    }

    pub fn internal_degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.cells.keys().map(|k| k.1).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn dim(&self, p: usize, s: u32) -> usize {
        self.cells.get(&(p, s)).map_or(0, |c| c.basis.len())
    }

    /// Basis of `C_{p,s}` in ambient coordinates.
    pub fn basis(&self, p: usize, s: u32) -> &[Vec<Q>] {
        self.cells.get(&(p, s)).map_or(&[], |c| &c.basis)
    }

    pub fn ambient_dim(&self, p: usize, s: u32) -> usize {
        self.cells.get(&(p, s)).map_or(0, |c| c.ambient)
    }

    /// Coordinates of an ambient vector on the Moore basis, if it lies in
    /// `C_{p,s}`.
    pub fn coordinates(&self, p: usize, s: u32, v: &[Q]) -> Option<Vec<Q>> {
        self.cells.get(&(p, s))?.solver.solve(v)
    }

    pub fn contains(&self, p: usize, s: u32, v: &[Q]) -> bool {
        v.iter().all(|x| x == &Q::default()) || self.coordinates(p, s, v).is_some()
    }

    pub fn to_ambient(&self, p: usize, s: u32, coords: &[Q]) -> Vec<Q> {
        let cell = &self.cells[&(p, s)];
        let mut out = vec![Q::default(); cell.ambient];
        for (c, b) in coords.iter().zip(&cell.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c.clone() * x.clone();
            }
        }
        out
    }

    /// `∂ : C_{p,s} → C_{p-1,s}` on Moore coordinates.
    pub fn boundary(&self, p: usize, s: u32) -> SparseMatrix<Q> {
        if p == 0 {
            return SparseMatrix::zeros(0, self.dim(0, s));
        }
        self.boundaries.get(&(p, s)).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.dim(p - 1, s), self.dim(p, s)))
    }

    /// The chain complex `C_{•,s}` for one internal degree.
    pub fn chain_complex(&self, s: u32) -> Result<ChainComplex<Q>, SimplicialError> {
        let mut c = ChainComplex::new();
        for p in 0..=self.simp_cutoff {
            c.set_dim(p as i64, self.dim(p, s));
        }
        for p in 1..=self.simp_cutoff {
            c.set_boundary(p as i64, self.boundary(p, s))?;
        }
        Ok(c)
    }

    pub fn is_complex(&self) -> bool {
        self.internal_degrees().into_iter().all(|s| self.chain_complex(s).is_ok_and(|c| c.is_complex()))
    }

    /// `π_p` in internal degree `s`, valid for `p < simp_cutoff`.
    pub fn homotopy(&self, p: usize, s: u32) -> Result<HomologyAt<Q>, SimplicialError> {
        Ok(self.chain_complex(s)?.homology_at(p as i64)?)
    }

    /// Ambient image of a Moore-coordinate vector under `∂`.
    pub fn boundary_ambient(&self, p: usize, s: u32, v: &[Q]) -> Option<Vec<Q>> {
        let c = self.coordinates(p, s, v)?;
        let img = to_dense(&to_sparse(&self.boundary(p, s).mul_vec(&c)), self.dim(p - 1, s));
        Some(self.to_ambient(p - 1, s, &img))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_object_has_trivial_moore_complex() {
        let dims = BTreeMap::from([(1u32, 2usize), (3, 1)]);
        let v = SimplicialVectorSpace::constant(&dims, 4);
        v.check_identities().unwrap();
        let c = moore(&v).unwrap();
        assert_eq!(c.dim(0, 1), 2);
        assert_eq!(c.dim(0, 3), 1);
        for p in 1..=4 {
            assert_eq!(c.dim(p, 1), 0);
        }
        assert!(c.is_complex());
    }
}
