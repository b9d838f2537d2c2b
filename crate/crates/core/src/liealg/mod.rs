//! The Witt and loop-algebra families, their standard complexes, and the
//! boundary, coboundary and shift operators on chains.

mod algebra;
mod chain;
mod complex;

use thiserror::Error;

pub use algebra::{bracket_h, deformed_bracket, eps, mu, AlgebraSpec, Family};
pub use chain::{inner, Basis, Chain, Monomial};
pub use complex::{
    d, d_matrix, d_monomial, delta, delta_generator, delta_matrix, delta_monomial, graded_basis,
    max_dim, operator_matrix, sigma_conj_pow, sigma_pow, slice_bases,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("unknown family {0:?} (expected witt or loop)")]
    UnknownFamily(String),
    #[error("k must be at least -1, got {0}")]
    KOutOfRange(i32),
    #[error("this computation needs k >= 1, got {0}")]
    NeedsPositiveK(i32),
    #[error("{0} is not a cube root of unity")]
    NotCubeRoot(String),
    #[error("indices must be strictly increasing: {0:?}")]
    NotStrict(Vec<i32>),
    #[error("monomial {0} is outside the slice")]
    OutsideSlice(String),
}
