//! Bigraded, filtered and minimal models.

mod bigraded;
mod filtered;
mod morphism;
mod target;

pub use bigraded::{bigraded_model, BigradedBasis, BigradedModel, Bidegree};
pub use filtered::{coformal_check, filtered_model, FilteredModel, IndexingClass, ObstructionReport};
pub use morphism::{minimal_model, DglMorphism};
pub use target::{GLPresentation, HomologyTarget, LieTarget};

use thiserror::Error;

use crate::dgl::DglError;
use crate::lie::{ExprError, FreeLieError, GeneratorError};
use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("cutoff-incomplete: {0}")]
    CutoffIncomplete(String),
    #[error("relation {0} is not homogeneous")]
    InhomogeneousRelation(String),
    #[error("{0} is not a cycle")]
    NotACycle(String),
    #[error("inconsistent solve in degree {degree}: {what}")]
    InconsistentSolve { degree: u32, what: String },
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error(transparent)]
    Dgl(#[from] DglError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    FreeLie(#[from] FreeLieError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
