//! The τ- and ξ-monomial bases of the cochain complex, the quadratic relations
//! among coboundaries of generators, and exact change of basis per slice.

mod basis;
mod identities;
mod monomials;

use thiserror::Error;

use crate::liealg::{AlgebraSpec, LieError};
use crate::partitions::PartitionError;
use crate::qlinalg::LinalgError;

pub use basis::{basis_change, expand_in_basis, BasisChange, FilteringBasis};
pub use identities::{verify_identities, IdentityCheck};
pub use monomials::{expand_tau, expand_xi, is_bad_pair, is_good, TauMonomial, XiMonomial};

#[derive(Debug, Error)]
pub enum FilteringError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0} has a mark off the leading parts of its normal form")]
    MarkNotLeading(String),
    #[error("{0} has a singular base")]
    SingularShape(String),
    #[error("{basis:?} expansion on {spec}, n={n}, dim={dim} has rank {rank} < {size}")]
    RankDeficient {
        spec: AlgebraSpec,
        n: i64,
        dim: usize,
        basis: FilteringBasis,
        rank: usize,
        size: usize,
    },
    #[error("outside the slice: {0}")]
    SliceMismatch(String),
}
