//! Exact lattice vertex algebras and Chevalley-basis Lie algebras over
//! small commutative rings, with mechanical checks of covering, norm-ideal
//! and mod-3 regrading identities.

pub mod error;
pub mod covering;
pub mod exec;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod va;

pub use error::{Error, Result};
pub use scalar::{Ring, Scalar};
