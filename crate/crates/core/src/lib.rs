//! Exact computations with closed subsets of polynomial functors.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod schur;
pub mod geometry;
pub mod parameterise;
pub mod certify;
pub mod corpus;
pub mod implicitise;
pub mod cli;
