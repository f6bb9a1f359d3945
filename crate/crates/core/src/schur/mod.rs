//! Schur functors, polynomial functors and their instances `P(K^n)`.
//!
//! Each Schur summand `S_λ(K^n)` is realised inside `(K^n)^{⊗|λ|}` as the
//! span of Young-symmetrised basis tensors indexed by semistandard
//! tableaux. Induced maps, the `gl_n` action, equivariant map spaces and
//! shift decompositions are all computed on that realisation.

pub mod functor;
pub mod instance;
pub mod mapspace;
pub mod partition;
pub mod shift;
pub mod tensor;

pub use functor::{functor_less, CopyIndex, PolynomialFunctor, TopSplit};
pub use instance::{apply_map, CoordLabel, FunctorInstance, LinearMapMatrix};
pub use mapspace::{extend_coordinate_map, map_space, validate_equivariance, MapSpaceBasis};
pub use partition::{lr_coefficient, ssyt, Partition, Tableau};
pub use shift::{lr_shift, ShiftDecomposition};
pub use tensor::SchurRealisation;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cannot parse functor term `{0}`")]
    Syntax(String),
    #[error("functor is zero")]
    ZeroFunctor,
    #[error("functor {0} has a nonzero degree-0 part")]
    NotPure(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("realisation of S{shape} on K^{n} is degenerate")]
    Degenerate { shape: String, n: usize },
    #[error("shift decomposition failed: {0}")]
    Shift(String),
}
