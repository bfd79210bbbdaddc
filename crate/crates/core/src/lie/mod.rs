//! Free graded Lie algebras.

pub mod algebra;
pub mod element;
pub mod expr;
pub mod letter;
pub mod monomial;
pub mod tensor;

pub use algebra::{monomial_basis, DegreeBasis, FreeLie, FreeLieError};
pub use element::{bracket_monomials, LieElement};
pub use expr::{parse_expr, Expr, ExprError};
pub use letter::{Gen, GeneratorError, GeneratorSet, Letter};
pub use monomial::LieMonomial;
pub use tensor::{oracle_dimension, oracle_embed, oracle_rank, TensorElement};
