pub mod field;
pub mod int;

pub use field::{field_kernel, FVec, FieldMatrix, Subspace};
pub use int::{hnf, left_kernel, snf_diag, HnfBuilder, IntMatrix, ZLattice, ZVec};
