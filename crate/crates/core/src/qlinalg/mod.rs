//! Exact linear algebra over the rationals and over `Q(w)`, `w^2 + w + 1 = 0`.

mod elim;
mod field;
mod matrix;
mod modular;

pub use field::{format_q, parse_q, q, q_frac, Field, FieldKind, QOmega, Scalar, Q};
pub use matrix::{span_rank, SparseMatrix};
pub use modular::{rank_mod_p, to_fp, PRIME};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}
