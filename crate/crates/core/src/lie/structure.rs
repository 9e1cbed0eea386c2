//! Finite-dimensional algebras over a field given by structure constants:
//! centers, ideal closures, subalgebras and quotients.

use crate::error::{Error, Result};
use crate::linalg::{FVec, Subspace};
use crate::scalar::{Ring, Scalar};

use super::algebra::LieAlgebra;

#[derive(Clone, Debug)]
pub struct StructAlg {
    ring: Ring,
    table: Vec<Vec<FVec>>,
}

/// Expresses vectors in a fixed independent family `b_1..b_k`.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    dim: usize,
    k: usize,
    aug: Subspace,
}

impl Coordinatizer {
    pub fn new(ring: Ring, dim: usize, basis: &[FVec]) -> Result<Coordinatizer> {
        let k = basis.len();
        let mut aug = Subspace::new(ring, dim + k)?;
        for (i, b) in basis.iter().enumerate() {
            let mut e = b.entries.clone();
            e.push((dim + i, Scalar::one(ring)));
            if !aug.insert(FVec::from_entries(ring, e)) {
                return Err(Error::Dimension("dependent basis".into()));
            }
        }
        Ok(Coordinatizer { dim, k, aug })
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &FVec) -> Option<FVec> {
        let r = self.aug.reduce(v);
        if r.lead().is_some_and(|c| c < self.dim) {
            return None;
        }
        let ring = v.ring();
        Some(FVec::from_entries(ring, r.entries.iter().map(|(i, x)| (i - self.dim, -x.clone()))))
    }
}

impl StructAlg {
    pub fn from_lie(g: &LieAlgebra) -> Result<StructAlg> {
        let ring = g.ring();
        if !ring.is_field() {
            return Err(Error::NotAField(ring.to_string()));
        }
        let n = g.dim();
        let table = (0..n).map(|i| (0..n).map(|j| g.from_ints(g.bracket_basis(i, j))).collect()).collect();
        Ok(StructAlg { ring, table })
    }

    pub fn from_table(ring: Ring, table: Vec<Vec<FVec>>) -> StructAlg {
        StructAlg { ring, table }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<FVec>] {
        &self.table
    }

    pub fn bracket(&self, x: &FVec, y: &FVec) -> FVec {
        let mut acc = FVec::zero(self.ring);
        for (i, a) in &x.entries {
            for (j, b) in &y.entries {
                let t = &self.table[*i][*j];
                if !t.is_zero() {
                    acc = acc.axpy(&(a * b), t);
                }
            }
        }
        acc
    }

    pub fn basis(&self) -> Vec<FVec> {
        (0..self.dim()).map(|i| FVec::unit(self.ring, i)).collect()
    }

    pub fn is_zero_bracket(&self) -> bool {
        self.table.iter().flatten().all(|v| v.is_zero())
    }

    /// `{x : [x, b] = 0 for all basis b}`.
    pub fn center(&self) -> Result<Subspace> {
        let n = self.dim();
        // row j*n+k of the system: sum_i x_i [b_i, b_j]_k = 0
        let mut rows = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in &self.table[i][j].entries {
                    rows[j * n + k].push((i, c.clone()));
                }
            }
        }
        let m = crate::linalg::FieldMatrix::new(self.ring, n, rows.into_iter().map(|e| FVec::from_entries(self.ring, e)).collect());
        Subspace::spanned(self.ring, n, m.kernel()?)
    }

    /// Smallest ideal containing `gens`, by spinning under `ad`.
    pub fn ideal_generated_by(&self, gens: &[FVec]) -> Result<Subspace> {
        let mut s = Subspace::new(self.ring, self.dim())?;
        let mut queue: Vec<FVec> = Vec::new();
        for g in gens {
            if s.insert(g.clone()) {
                queue.push(g.clone());
            }
        }
        let basis = self.basis();
        while let Some(v) = queue.pop() {
            for b in &basis {
                let w = self.bracket(b, &v);
                if s.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        Ok(s)
    }

    pub fn is_ideal(&self, sub: &Subspace) -> bool {
        let basis = self.basis();
        sub.basis().iter().all(|v| basis.iter().all(|b| sub.contains(&self.bracket(b, v))))
    }

    pub fn is_subalgebra(&self, sub: &Subspace) -> bool {
        let bs = sub.basis();
        bs.iter().all(|x| bs.iter().all(|y| sub.contains(&self.bracket(x, y))))
    }

    /// The subalgebra spanned by `basis` (must be closed), in those coordinates.
    pub fn subalgebra(&self, basis: &[FVec]) -> Result<StructAlg> {
        let co = Coordinatizer::new(self.ring, self.dim(), basis)?;
        let mut table = Vec::with_capacity(basis.len());
        for x in basis {
            let mut row = Vec::with_capacity(basis.len());
            for y in basis {
                let b = self.bracket(x, y);
                row.push(co.coords(&b).ok_or_else(|| Error::CheckFailed { check: "subalgebra_closed".into(), witness: format!("{b:?}") })?);
            }
            table.push(row);
        }
        Ok(StructAlg { ring: self.ring, table })
    }

    /// Quotient by an ideal contained in the span of `ambient`; returns the
    /// quotient algebra and its representatives.
    pub fn quotient(&self, ambient: &Subspace, ideal: &Subspace) -> Result<Quotient> {
        let reps = ambient.complement_of(ideal);
        let q = Quotient::new(self.ring, self.dim(), reps, ideal)?;
        let mut table = Vec::with_capacity(q.len());
        for x in &q.reps {
            let mut row = Vec::with_capacity(q.len());
            for y in &q.reps {
                row.push(q.project(&self.bracket(x, y))?);
            }
            table.push(row);
        }
        Ok(Quotient { alg: Some(StructAlg { ring: self.ring, table }), ..q })
    }

    pub fn check_jacobi_exhaustive(&self) -> Option<(usize, usize, usize)> {
        let b = self.basis();
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.jacobiator(&b[i], &b[j], &b[k]).is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn jacobiator(&self, x: &FVec, y: &FVec, z: &FVec) -> FVec {
        let t1 = self.bracket(x, &self.bracket(y, z));
        let t2 = self.bracket(y, &self.bracket(z, x));
        let t3 = self.bracket(z, &self.bracket(x, y));
        t1.add(&t2).add(&t3)
    }
}

/// `V / I` with deterministic representatives for a basis of the quotient.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub reps: Vec<FVec>,
    coords: Coordinatizer,
    alg: Option<StructAlg>,
}

impl Quotient {
    pub fn new(ring: Ring, dim: usize, reps: Vec<FVec>, ideal: &Subspace) -> Result<Quotient> {
        let mut all = reps.clone();
        all.extend(ideal.basis());
        let coords = Coordinatizer::new(ring, dim, &all)?;
        Ok(Quotient { reps, coords, alg: None })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn algebra(&self) -> &StructAlg {
        self.alg.as_ref().expect("quotient algebra built")
    }

    /// Class of `v` (which must lie in reps + ideal) in quotient coordinates.
    pub fn project(&self, v: &FVec) -> Result<FVec> {
        let c = self.coords.coords(v).ok_or_else(|| Error::CheckFailed { check: "quotient_membership".into(), witness: format!("{v:?}") })?;
        let k = self.reps.len();
        Ok(FVec::from_entries(v.ring(), c.entries.into_iter().filter(|(i, _)| *i < k)))
    }

    /// A representative of quotient vector `q`.
    pub fn lift(&self, q: &FVec) -> FVec {
        let mut acc = FVec::zero(q.ring());
        for (i, x) in &q.entries {
            acc = acc.axpy(x, &self.reps[*i]);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_of_a2_mod_3_is_one_dimensional() {
        let g = LieAlgebra::build("A2", Ring::PrimeField(3)).unwrap();
        let s = StructAlg::from_lie(&g).unwrap();
        let z = s.center().unwrap();
        assert_eq!(z.rank(), 1);
        // spanned by h1 - h2
        let r = Ring::PrimeField(3);
        let v = FVec::from_entries(r, vec![(0, Scalar::one(r)), (1, -Scalar::one(r))]);
        assert!(z.contains(&v));
        assert_eq!(StructAlg::from_lie(&g.with_ring(Ring::PrimeField(5))).unwrap().center().unwrap().rank(), 0);
    }

    #[test]
    fn whole_basis_generates_everything() {
        let g = LieAlgebra::build("A2", Ring::PrimeField(2)).unwrap();
        let s = StructAlg::from_lie(&g).unwrap();
        assert_eq!(s.ideal_generated_by(&s.basis()).unwrap().rank(), 8);
        // any nonzero element of a simple algebra generates it
        let g5 = StructAlg::from_lie(&g.with_ring(Ring::PrimeField(5))).unwrap();
        assert_eq!(g5.ideal_generated_by(&[FVec::unit(Ring::PrimeField(5), 3)]).unwrap().rank(), 8);
    }

    #[test]
    fn coordinates_roundtrip() {
        let r = Ring::Rat;
        let b = vec![FVec::unit(r, 0).add(&FVec::unit(r, 1)), FVec::unit(r, 1)];
        let c = Coordinatizer::new(r, 3, &b).unwrap();
        let v = FVec::unit(r, 0);
        let x = c.coords(&v).unwrap();
        assert_eq!(x.get(0), Scalar::one(r));
        assert_eq!(x.get(1), -Scalar::one(r));
        assert!(c.coords(&FVec::unit(r, 2)).is_none());
    }
}
