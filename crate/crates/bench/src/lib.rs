//! Fixed workloads shared by the criterion benches.

use fhl_core::liealg::{AlgebraSpec, Family};

/// Degree slices heavy enough to show scaling without long runs.
pub const SLICES: [(Family, i32, i64); 4] = [
    (Family::Witt, 1, 24),
    (Family::Loop, 1, 24),
    (Family::Witt, 2, 24),
    (Family::Loop, 3, 22),
];

pub fn spec(family: Family, k: i32) -> AlgebraSpec {
    AlgebraSpec { family, k }
}
