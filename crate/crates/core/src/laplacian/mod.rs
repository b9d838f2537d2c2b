//! The Laplace operator `d delta + delta d` on the graded slices: matrices,
//! closed-form eigenvalues and diagonal entries, spectra, eigenvectors and
//! harmonic chains.

mod formulas;
mod operator;
mod spectrum;

use thiserror::Error;

use crate::filtering::FilteringError;
use crate::liealg::{AlgebraSpec, LieError};
use crate::partitions::PartitionError;
use crate::qlinalg::LinalgError;

pub use formulas::{
    energy, energy0, energy_by_partial_sums, f_diagonal, trace_identity_holds, trace_sides,
};
pub use operator::{gamma, gamma_matrix, second_order_expand, GammaBasis};
pub use spectrum::{
    charpoly, eigenvector, gamma0_expected, harmonic_basis, integer_roots, is_psd,
    level_one_expected, spectrum, EigenEntry, SpectralReport, SpectrumMethod,
};

#[derive(Debug, Error)]
pub enum LaplacianError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Filtering(#[from] FilteringError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("the tau basis is only used at k = 1 (got {0})")]
    TauNeedsLevelOne(AlgebraSpec),
    #[error("closed forms need the witt family at k = 1 (got {0})")]
    NeedsWittLevelOne(AlgebraSpec),
    #[error("{0} is singular")]
    SingularShape(String),
    #[error("the tau matrix of {spec} at n={n}, q={q} is not triangular")]
    NotTriangular { spec: AlgebraSpec, n: i64, q: usize },
    #[error("eigenvalue {value} of {shape} collides with a lower shape; eigenspace has dim {}", eigenspace.len())]
    Collision {
        shape: String,
        value: i64,
        eigenspace: Vec<crate::liealg::Chain<crate::qlinalg::Q>>,
    },
    #[error("spectrum check failed at n={n}: {detail}")]
    Mismatch { n: i64, detail: String },
}
