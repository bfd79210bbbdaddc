//! Simplicial graded Lie algebras, shuffle brackets and Moore complexes.

mod dold_kan;
mod faces;
mod moore;
mod shuffle;
mod slie;

pub use dold_kan::{check_round_trip, gamma, normalize_n, surjections, BigradedComplex, Gamma, Surjection};
pub use faces::{face_normal_form, kappa, FaceIndexError, FaceMultiIndex};
pub use moore::{moore, MooreComplex, SimplicialModule, SimplicialVectorSpace};
pub use shuffle::{shuffles, Shuffle};
pub use slie::{shuffle_bracket_with, BracketSign, LieModule, SimplicialGradedLie, SimplicialLie};

use thiserror::Error;

use crate::lie::FreeLieError;
use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("simplicial dimension {dim} exceeds the cutoff {cutoff}")]
    BeyondSimplicialCutoff { dim: usize, cutoff: usize },
    #[error("internal degree {degree} exceeds the cutoff {cutoff}")]
    BeyondDegreeCutoff { degree: u32, cutoff: u32 },
    #[error("simplicial identity fails: {0}")]
    Identity(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed simplicial object: {0}")]
    Malformed(String),
    #[error(transparent)]
    FreeLie(#[from] FreeLieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
