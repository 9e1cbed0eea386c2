//! Chevalley-basis Lie algebras, structure-constant algebras over fields,
//! automorphisms and reduced (fixed modulo norm) algebras.

pub mod algebra;
pub mod generator;
pub mod reduced;
pub mod structure;

pub use algebra::{IntComb, LieAlgebra, LieElement};
pub use generator::{chevalley_generator, divided_powers, graph_action, norm_map, orbit_generator, LieMap};
pub use structure::{Coordinatizer, Quotient, StructAlg};
pub use reduced::{ancestor, exceptional_action_check, fixed_group_generators, ActionReport, FixedData, GeneratorCheck, ReducedAlgebra, ReducedDims, EXCEPTIONAL_PAIRS};
