//! Closed subsets of `B × Q` and morphisms `A × P → B × Q`, handled through
//! their finite-dimensional instances.

pub mod morphism;
pub mod subset;
pub mod variety;

pub use morphism::{evaluate_morphism, image_closure_instance, morphism_from_instance, InstanceMap, Morphism};
pub use subset::{
    instance_equations, instance_ring, point_membership, shift_closed_subset, shifted_instance_equations, smear, smear_unreduced, ClosedSubsetRepr, ShiftedSubset,
};
pub use variety::{localize, AffineVariety, LocalizedVariety};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::schur::SchurError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("map does not land in the codomain: {0}")]
    Codomain(String),
    #[error("cannot localise at an element vanishing on the base")]
    EmptyLocalization,
    #[error("inconsistent data: {0}")]
    Shape(String),
    #[error("equation {0} is not homogeneous for the instance grading")]
    NotHomogeneous(String),
}
