//! Sparse linear algebra over the field rings (`Q`, `F_p`, `F_9`).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

/// Sparse vector over a field: increasing indices, nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVec {
    ring: Ring,
    pub entries: Vec<(usize, Scalar)>,
}

impl FVec {
    pub fn zero(ring: Ring) -> FVec {
        FVec { ring, entries: Vec::new() }
    }

    pub fn unit(ring: Ring, i: usize) -> FVec {
        FVec { ring, entries: vec![(i, Scalar::one(ring))] }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn from_entries(ring: Ring, entries: impl IntoIterator<Item = (usize, Scalar)>) -> FVec {
        let mut m: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in entries {
            let e = m.entry(i).or_insert_with(|| Scalar::zero(ring));
            *e = &*e + &x;
        }
        FVec { ring, entries: m.into_iter().filter(|(_, x)| !x.is_zero()).collect() }
    }

    pub fn from_dense(ring: Ring, v: &[Scalar]) -> FVec {
        FVec { ring, entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect() }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(self.ring); n];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(self.ring),
        }
    }

    pub fn lead(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> FVec {
        if c.is_zero() {
            return FVec::zero(self.ring);
        }
        FVec { ring: self.ring, entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self + c*other`
    pub fn axpy(&self, c: &Scalar, other: &FVec) -> FVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (x, y) = (&self.entries, &other.entries);
        let (mut p, mut q) = (0, 0);
        while p < x.len() || q < y.len() {
            if q >= y.len() || (p < x.len() && x[p].0 < y[q].0) {
                out.push(x[p].clone());
                p += 1;
            } else if p >= x.len() || y[q].0 < x[p].0 {
                let v = c * &y[q].1;
                if !v.is_zero() {
                    out.push((y[q].0, v));
                }
                q += 1;
            } else {
                let v = &x[p].1 + &(c * &y[q].1);
                if !v.is_zero() {
                    out.push((x[p].0, v));
                }
                p += 1;
                q += 1;
            }
        }
        FVec { ring: self.ring, entries: out }
    }

    pub fn add(&self, other: &FVec) -> FVec {
        self.axpy(&Scalar::one(self.ring), other)
    }

    pub fn sub(&self, other: &FVec) -> FVec {
        self.axpy(&-Scalar::one(self.ring), other)
    }

    pub fn dot(&self, other: &FVec) -> Scalar {
        let mut acc = Scalar::zero(self.ring);
        for (i, x) in &self.entries {
            let y = other.get(*i);
            if !y.is_zero() {
                acc = &acc + &(x * &y);
            }
        }
        acc
    }
}

fn require_field(ring: Ring) -> Result<()> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(Error::NotAField(ring.to_string()))
    }
}

/// A subspace of `K^dim` in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    ring: Ring,
    dim: usize,
    rows: BTreeMap<usize, FVec>,
}

impl PartialEq for Subspace {
    fn eq(&self, o: &Subspace) -> bool {
        self.ring == o.ring && self.dim == o.dim && self.rows == o.rows
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn new(ring: Ring, dim: usize) -> Result<Subspace> {
        require_field(ring)?;
        Ok(Subspace { ring, dim, rows: BTreeMap::new() })
    }

    pub fn spanned(ring: Ring, dim: usize, gens: impl IntoIterator<Item = FVec>) -> Result<Subspace> {
        let mut s = Subspace::new(ring, dim)?;
        for g in gens {
            s.insert(g);
        }
        Ok(s)
    }

    pub fn whole(ring: Ring, dim: usize) -> Result<Subspace> {
        Subspace::spanned(ring, dim, (0..dim).map(|i| FVec::unit(ring, i)))
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<FVec> {
        self.rows.values().cloned().collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Remainder of `v` after elimination against the echelon rows.
    pub fn reduce(&self, v: &FVec) -> FVec {
        let mut v = v.clone();
        let mut k = 0;
        while k < v.entries.len() {
            let (c, x) = v.entries[k].clone();
            if let Some(r) = self.rows.get(&c) {
                v = v.axpy(&-x, r);
            } else {
                k += 1;
            }
        }
        v
    }

    pub fn contains(&self, v: &FVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`, keeping the form fully reduced; returns whether rank grew.
    pub fn insert(&mut self, v: FVec) -> bool {
        let v = self.reduce(&v);
        let Some(c) = v.lead() else { return false };
        let inv = v.entries[0].1.inv().expect("field element invertible");
        let v = v.scale(&inv);
        for r in self.rows.values_mut() {
            let x = r.get(c);
            if !x.is_zero() {
                *r = r.axpy(&-x, &v);
            }
        }
        self.rows.insert(c, v);
        true
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.rows.values().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in o.rows.values() {
            s.insert(v.clone());
        }
        s
    }

    /// Zassenhaus intersection.
    pub fn intersection(&self, o: &Subspace) -> Subspace {
        let n = self.dim;
        let mut z = Subspace { ring: self.ring, dim: 2 * n, rows: BTreeMap::new() };
        for a in self.rows.values() {
            let shifted = a.entries.iter().map(|(i, x)| (i + n, x.clone()));
            z.insert(FVec { ring: self.ring, entries: a.entries.iter().cloned().chain(shifted).collect() });
        }
        for b in o.rows.values() {
            z.insert(b.clone());
        }
        let mut out = Subspace { ring: self.ring, dim: n, rows: BTreeMap::new() };
        for r in z.rows.values() {
            if r.entries[0].0 >= n {
                out.insert(FVec { ring: self.ring, entries: r.entries.iter().map(|(i, x)| (i - n, x.clone())).collect() });
            }
        }
        out
    }

    /// Deterministic complement of `sub` inside `self`: the vectors of
    /// `self`'s echelon basis that are independent modulo `sub`.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<FVec> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in self.rows.values() {
            if acc.insert(v.clone()) {
                out.push(v.clone());
            }
        }
        out
    }
}

/// Sparse matrix over a field, stored as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    pub ring: Ring,
    pub cols: usize,
    pub rows: Vec<FVec>,
}

impl FieldMatrix {
    pub fn new(ring: Ring, cols: usize, rows: Vec<FVec>) -> FieldMatrix {
        FieldMatrix { ring, cols, rows }
    }

    pub fn identity(ring: Ring, n: usize) -> FieldMatrix {
        FieldMatrix { ring, cols: n, rows: (0..n).map(|i| FVec::unit(ring, i)).collect() }
    }

    pub fn zeros(ring: Ring, nrows: usize, cols: usize) -> FieldMatrix {
        FieldMatrix { ring, cols, rows: vec![FVec::zero(ring); nrows] }
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut rows = vec![Vec::new(); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in &r.entries {
                rows[*j].push((i, x.clone()));
            }
        }
        FieldMatrix { ring: self.ring, cols: self.rows.len(), rows: rows.into_iter().map(|e| FVec { ring: self.ring, entries: e }).collect() }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(Subspace::spanned(self.ring, self.cols, self.rows.iter().cloned())?.rank())
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Result<Vec<FVec>> {
        let rref = Subspace::spanned(self.ring, self.cols, self.rows.iter().cloned())?;
        let pivots = rref.pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rref.rows.contains_key(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut e = vec![(f, Scalar::one(self.ring))];
            for &p in &pivots {
                let x = rref.rows[&p].get(f);
                if !x.is_zero() {
                    e.push((p, -x));
                }
            }
            out.push(FVec::from_entries(self.ring, e));
        }
        Ok(out)
    }
}

/// Kernel of a field matrix; errors on non-field rings.
pub fn field_kernel(m: &FieldMatrix) -> Result<Vec<FVec>> {
    m.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, v: &[i64]) -> FVec {
        let r = Ring::PrimeField(p);
        FVec::from_dense(r, &v.iter().map(|x| Scalar::from_i64(r, *x)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_examples() {
        let r = Ring::PrimeField(3);
        assert!(field_kernel(&FieldMatrix::identity(r, 3)).unwrap().is_empty());
        assert_eq!(field_kernel(&FieldMatrix::zeros(r, 3, 3)).unwrap().len(), 3);
        let m = FieldMatrix::new(r, 2, vec![f(3, &[1, 1]), f(3, &[2, 2])]);
        let k = field_kernel(&m).unwrap();
        assert_eq!(k.len(), 1);
        let span = Subspace::spanned(r, 2, k).unwrap();
        assert!(span.contains(&f(3, &[1, -1])));
    }

    #[test]
    fn integers_are_not_a_field() {
        let m = FieldMatrix::zeros(Ring::Int, 2, 2);
        assert!(matches!(field_kernel(&m), Err(Error::NotAField(_))));
    }

    #[test]
    fn zassenhaus() {
        let r = Ring::PrimeField(5);
        let a = Subspace::spanned(r, 3, vec![f(5, &[1, 0, 0]), f(5, &[0, 1, 0])]).unwrap();
        let b = Subspace::spanned(r, 3, vec![f(5, &[0, 1, 1]), f(5, &[1, 1, 0])]).unwrap();
        let i = a.intersection(&b);
        assert_eq!(i.rank(), 1);
        assert!(i.contains(&f(5, &[1, 1, 0])));
        assert_eq!(a.sum(&b).rank(), 3);
    }

    #[test]
    fn complement() {
        let r = Ring::Rat;
        let whole = Subspace::whole(r, 3).unwrap();
        let sub = Subspace::spanned(r, 3, vec![FVec::unit(r, 1)]).unwrap();
        let c = whole.complement_of(&sub);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0], FVec::unit(r, 0));
    }
}
