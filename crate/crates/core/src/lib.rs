pub mod cohomology;
pub mod filtering;
pub mod laplacian;
pub mod liealg;
pub mod partitions;
pub mod qlinalg;
pub mod stablecycles;
pub mod verify;
