//! Stable cycles: chains killed by the boundary after every upward index
//! shift. They are computed as the orthogonal complement of the marked
//! ξ-monomials, by the shift definition, and by Vandermonde divisibility in
//! the determinant-polynomial model, together with explicit Schur-polynomial
//! homology cycles.

mod boundary;
mod cycles;
mod poly;
mod stab;

use thiserror::Error;

use crate::filtering::FilteringError;
use crate::liealg::LieError;
use crate::partitions::PartitionError;
use crate::qlinalg::LinalgError;

pub use boundary::d_poly;
pub use cycles::{
    explicit_cycle, explicit_cycle_poly, explicit_cycles_check, odd_delta_product_check,
    CycleRecord, ExplicitCycleCheck,
};
pub use poly::{
    chain_to_poly, poly_to_chain, schur, schur_product, straighten, vandermonde,
    vandermonde_factors, AntisymPoly, Exponents, Poly, SymPoly,
};
pub use stab::{
    divisible_subspace, is_divisible, is_stable, pos_complement, shift_kernel,
    stab_laplacian_check, stab_laplacian_report, stab_pos_decomposition, triple_agreement,
    StabLaplacianReport, StableBasisReport, TripleAgreement,
};

#[derive(Debug, Error)]
pub enum StableError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Filtering(#[from] FilteringError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("monomial {0} has a negative index")]
    NegativeIndex(String),
    #[error("chain is not homogeneous")]
    NotGraded,
    #[error("partition of length {dim} in {q} variables")]
    TooManyParts { dim: usize, q: usize },
    #[error("variable counts differ: {0} and {1}")]
    VariableMismatch(usize, usize),
    #[error("{0} is singular for k={1}")]
    Singular(String, i32),
    #[error("need an odd number of factors, got {0}")]
    EvenFactorCount(usize),
    #[error("divisibility says {divisible}, shifted boundaries say {shifted} for {chain}")]
    Disagreement {
        chain: String,
        divisible: bool,
        shifted: bool,
    },
    #[error("this check is defined for the witt family at k=1")]
    NeedsWittLevelOne,
}
