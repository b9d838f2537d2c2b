//! Betti numbers of the graded slices, representing cocycles of the main
//! partitions, the binomial dimension count, and product checks.

mod cocycles;
mod ranks;
mod report;

use thiserror::Error;

use crate::filtering::FilteringError;
use crate::liealg::LieError;
use crate::partitions::PartitionError;
use crate::qlinalg::LinalgError;

pub use cocycles::{
    classes_independent, cocycle_for_main, homotopy_check, is_coboundary, product_check,
    product_is_coboundary,
};
pub use ranks::{betti, boundary_rank, rational_boundary_rank};
pub use report::{
    binomial_check, binomial_sum, binomial_value, degree_bound, homology_dims, homology_dims_upto,
    to_csv, HomologyReport, HomologyRow,
};

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Filtering(#[from] FilteringError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0} is not a main {1}-partition")]
    NotMain(String, i32),
    #[error("no cocycle with leading term {0}")]
    Unsolvable(String),
    #[error("the cocycle for {0} is a coboundary")]
    ZeroClass(String),
    #[error("chain is not homogeneous")]
    NotGraded,
    #[error("need q >= 1, got {0}")]
    BadDimension(usize),
}
