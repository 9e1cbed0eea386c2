//! Covering-procedure checks at the vertex algebra level.

pub mod cube;
pub mod identity;
pub mod regrade;
pub mod tate;

pub use identity::{check_coprime_collapse, check_covering, CoprimeReport, CoveringLattices, CoveringReport};
