pub mod cocycle;
pub mod graph;
pub mod lattice;

pub use cocycle::Cocycle;
pub use graph::{graph_automorphism, Folding, GraphAut};
pub use lattice::{classify_cartan, short_vectors, Coords, RootLattice, RootType};

/// `build_cocycle`: the cocycle of `l`, checked against the identities it
/// must satisfy on every pair of roots.
pub fn build_cocycle(l: &RootLattice) -> crate::Result<Cocycle> {
    let eps = Cocycle::new(l);
    for a in l.roots() {
        if eps.sign(a, a) != -1 {
            return Err(crate::Error::CheckFailed { check: "cocycle_diagonal".into(), witness: format!("{a:?}") });
        }
        for b in l.roots() {
            let want = if l.inner(a, b).rem_euclid(2) == 0 { 1 } else { -1 };
            if eps.sign(a, b) * eps.sign(b, a) != want {
                return Err(crate::Error::CheckFailed { check: "cocycle_commutator".into(), witness: format!("{a:?} {b:?}") });
            }
        }
    }
    Ok(eps)
}
