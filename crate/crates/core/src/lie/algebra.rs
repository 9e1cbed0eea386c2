//! Chevalley-basis Lie algebras of simply-laced type over a coefficient ring.
//!
//! Basis order: `h_1..h_r`, then `e_a` for the roots in [`RootLattice::roots`]
//! order (positive by height, then negatives).

use std::sync::Arc;


use crate::error::{Error, Result};
use crate::linalg::FVec;
use crate::roots::{Cocycle, RootLattice};
use crate::scalar::{Ring, Scalar};

/// Sparse integer combination of basis vectors.
pub type IntComb = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    lattice: Arc<RootLattice>,
    eps: Cocycle,
    ring: Ring,
    table: Vec<Vec<IntComb>>,
}

/// Elements are sparse coefficient vectors in the Chevalley basis.
pub type LieElement = FVec;

impl LieAlgebra {
    pub fn new(lattice: Arc<RootLattice>, ring: Ring) -> LieAlgebra {
        let eps = Cocycle::new(&lattice);
        let r = lattice.rank();
        let dim = r + lattice.roots().len();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                *out = structure_constant(&lattice, &eps, i, j);
            }
        }
        LieAlgebra { lattice, eps, ring, table }
    }

    pub fn build(name: &str, ring: Ring) -> Result<LieAlgebra> {
        Ok(LieAlgebra::new(Arc::new(RootLattice::parse(name)?), ring))
    }

    pub fn lattice(&self) -> &RootLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> Arc<RootLattice> {
        self.lattice.clone()
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.eps
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn with_ring(&self, ring: Ring) -> LieAlgebra {
        LieAlgebra { ring, ..self.clone() }
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn root_basis_index(&self, root: &[i64]) -> Option<usize> {
        self.lattice.root_index(root).map(|k| self.rank() + k)
    }

    pub fn basis_label(&self, i: usize) -> String {
        let r = self.rank();
        if i < r {
            format!("h{}", i + 1)
        } else {
            format!("e{:?}", self.lattice.roots()[i - r])
        }
    }

    /// `[b_i, b_j]` as an integer combination.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &IntComb {
        &self.table[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> LieElement {
        FVec::unit(self.ring, i)
    }

    pub fn from_ints(&self, c: &IntComb) -> LieElement {
        FVec::from_entries(self.ring, c.iter().map(|(k, x)| (*k, Scalar::from_i64(self.ring, *x))))
    }

    /// `h_a` for a lattice vector `a` in simple-root coordinates.
    pub fn coroot(&self, a: &[i64]) -> LieElement {
        FVec::from_entries(self.ring, a.iter().enumerate().map(|(i, x)| (i, Scalar::from_i64(self.ring, *x))))
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        if x.ring() != self.ring || y.ring() != self.ring {
            return Err(Error::RingMismatch(x.ring().to_string(), self.ring.to_string()));
        }
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for (i, a) in &x.entries {
            for (j, b) in &y.entries {
                let ab = a * b;
                for (k, c) in &self.table[*i][*j] {
                    acc.push((*k, &ab * &Scalar::from_i64(self.ring, *c)));
                }
            }
        }
        Ok(FVec::from_entries(self.ring, acc))
    }
}

fn structure_constant(l: &RootLattice, eps: &Cocycle, i: usize, j: usize) -> IntComb {
    let r = l.rank();
    let roots = l.roots();
    match (i < r, j < r) {
        (true, true) => vec![],
        (true, false) => {
            let a = &roots[j - r];
            let c = l.inner(&l.simple_root(i), a);
            if c == 0 {
                vec![]
            } else {
                vec![(j, c)]
            }
        }
        (false, true) => structure_constant(l, eps, j, i).into_iter().map(|(k, c)| (k, -c)).collect(),
        (false, false) => {
            let a = &roots[i - r];
            let b = &roots[j - r];
            let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if s.iter().all(|x| *x == 0) {
                let e = eps.sign(a, b);
                a.iter().enumerate().filter(|(_, x)| **x != 0).map(|(k, x)| (k, e * x)).collect()
            } else if let Some(k) = l.root_index(&s) {
                vec![(r + k, eps.sign(a, b))]
            } else {
                vec![]
            }
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(LieAlgebra::build("E8", Ring::PrimeField(3)).unwrap().dim(), 248);
        assert_eq!(LieAlgebra::build("A1", Ring::PrimeField(2)).unwrap().dim(), 3);
        assert_eq!(LieAlgebra::build("D4", Ring::PrimeField(3)).unwrap().dim(), 28);
    }

    #[test]
    fn jacobi_and_antisymmetry_exhaustive_small() {
        for name in ["A1", "A2", "A3"] {
            let g = LieAlgebra::build(name, Ring::Int).unwrap();
            let n = g.dim();
            let b = |i| g.basis_vector(i);
            for i in 0..n {
                assert!(g.bracket(&b(i), &b(i)).unwrap().is_zero());
                for j in 0..n {
                    let s = g.bracket(&b(i), &b(j)).unwrap().add(&g.bracket(&b(j), &b(i)).unwrap());
                    assert!(s.is_zero());
                    for k in 0..n {
                        let t1 = g.bracket(&b(i), &g.bracket(&b(j), &b(k)).unwrap()).unwrap();
                        let t2 = g.bracket(&b(j), &g.bracket(&b(k), &b(i)).unwrap()).unwrap();
                        let t3 = g.bracket(&b(k), &g.bracket(&b(i), &b(j)).unwrap()).unwrap();
                        assert!(t1.add(&t2).add(&t3).is_zero(), "{name} {i} {j} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn chevalley_relations() {
        let g = LieAlgebra::build("D4", Ring::Int).unwrap();
        let l = g.lattice().clone();
        let eps = g.cocycle().clone();
        for a in l.roots() {
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            let ea = g.root_basis_index(a).unwrap();
            let en = g.root_basis_index(&neg).unwrap();
            let br = g.bracket(&g.basis_vector(ea), &g.basis_vector(en)).unwrap();
            let h = g.coroot(a).scale(&Scalar::from_i64(Ring::Int, eps.sign(a, &neg)));
            assert_eq!(br, h);
            for b in l.roots() {
                if l.inner(a, b) >= 0 && a.iter().zip(b).any(|(x, y)| x + y != 0) {
                    let eb = g.root_basis_index(b).unwrap();
                    assert!(g.bracket(&g.basis_vector(ea), &g.basis_vector(eb)).unwrap().is_zero());
                }
            }
        }
    }
}
