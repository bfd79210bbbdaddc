//! Exact computer algebra for differential graded Lie algebras over ℚ.

pub mod dgl;
pub mod dgl_homology;
pub mod jacobi;
pub mod lie;
pub mod models;
pub mod linalg;
pub mod resolution;
pub mod scalar;
pub mod simplicial;

pub use scalar::{q, qr, Scalar, Q};

pub type QMatrix = linalg::SparseMatrix<Q>;
pub type QChainComplex = linalg::ChainComplex<Q>;
