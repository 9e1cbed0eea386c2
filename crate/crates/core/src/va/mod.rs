//! Lattice vertex algebras: Fock bases, mode products, integral forms,
//! Virasoro element, bilinear forms, automorphisms and real forms.

pub mod axioms;
pub mod engine;
pub mod form;
pub mod integral;
pub mod mono;
pub mod morphism;
pub mod real_form;
pub mod subva;
pub mod symfun;
pub mod virasoro;

pub use engine::{LatticeVA, QElem};
pub use mono::Mono;
