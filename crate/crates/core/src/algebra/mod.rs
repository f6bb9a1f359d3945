//! Exact commutative algebra: polynomials, Gröbner bases, elimination,
//! radicals and a restricted prime decomposition.

pub mod decompose;
pub mod gcd;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod order;
pub mod parse;
pub mod poly;
pub mod radical;
pub mod ring;
pub mod scalar;

pub use decompose::{decompose_restricted, Component};
pub use groebner::{GroebnerBasis, GroebnerEngine, StepOutcome};
pub use ideal::{eliminate, intersect, is_trivial, membership, saturate};
pub use linalg::RingElem;
pub use order::MonomialOrder;
pub use poly::{Exps, Poly};
pub use radical::radical;
pub use ring::{Ring, SpaceTag, Variable};
pub use scalar::{Field, Omega, OmegaContext, Q};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ring context error: {0}")]
    RingContext(String),
    #[error("unsupported algebra: {0}")]
    Unsupported(String),
    #[error("decomposition incomplete: could not split or certify {0}")]
    DecompositionIncomplete(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// Formal partial derivative.
pub fn partial_derivative<F: Field>(f: &Poly<F>, v: usize) -> Poly<F> {
    f.derivative(v)
}
