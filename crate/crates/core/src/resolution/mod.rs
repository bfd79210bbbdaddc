//! Free simplicial resolutions of DGLs and the θ calculus of models.

mod canonical;
mod cw;
mod theta;

pub use canonical::{comonad_f, lift_base, lower_base, wrap, CanonicalResolution, LevelwiseHomology, RGen, Wrapped};
pub use cw::{cw_homology, minimal_cw_resolution, CwCell, CwHomology, MinimalCwResolution, ResolutionCheck};
pub use theta::{theta, FilteredGenerators, ThetaEmbedding};

use thiserror::Error;

use crate::models::ModelError;
use crate::simplicial::SimplicialError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("model and resolution do not match: {0}")]
    Mismatch(String),
    #[error("ladder of {generator} at s = {s} fails at face d{face}: {what}")]
    Ladder { generator: String, s: u32, face: u32, what: String },
    #[error("CW check failed: {0}")]
    Cw(String),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
