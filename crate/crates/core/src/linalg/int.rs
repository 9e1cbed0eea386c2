//! Integer matrices, Hermite and Smith normal forms, and row lattices in `Z^n`.
//!
//! Hermite form is row style: pivots are positive, each pivot sits strictly
//! right of the pivot above it, and entries above a pivot lie in `[0, pivot)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse integer vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZVec(pub Vec<(usize, BigInt)>);

impl ZVec {
    pub fn new() -> ZVec {
        ZVec(Vec::new())
    }

    pub fn from_dense(v: &[BigInt]) -> ZVec {
        ZVec(v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect())
    }

    pub fn from_i64(v: &[i64]) -> ZVec {
        ZVec(v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, BigInt::from(*x))).collect())
    }

    /// Builds from unsorted entries, summing duplicates.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, BigInt)>) -> ZVec {
        let mut m: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (i, x) in entries {
            *m.entry(i).or_default() += x;
        }
        ZVec(m.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }

    pub fn to_dense(&self, n: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in &self.0 {
            out[*i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> Option<(usize, &BigInt)> {
        self.0.first().map(|(i, x)| (*i, x))
    }

    pub fn get(&self, i: usize) -> BigInt {
        match self.0.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.0[k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn neg(&self) -> ZVec {
        ZVec(self.0.iter().map(|(i, x)| (*i, -x)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> ZVec {
        if c.is_zero() {
            return ZVec::new();
        }
        ZVec(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    /// `a*self + b*other`
    pub fn combine(&self, a: &BigInt, other: &ZVec, b: &BigInt) -> ZVec {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut p, mut q) = (0, 0);
        let (x, y) = (&self.0, &other.0);
        while p < x.len() || q < y.len() {
            let take = if q >= y.len() {
                0
            } else if p >= x.len() {
                1
            } else {
                match x[p].0.cmp(&y[q].0) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Greater => 1,
                    std::cmp::Ordering::Equal => 2,
                }
            };
            let (i, v) = match take {
                0 => {
                    p += 1;
                    (x[p - 1].0, a * &x[p - 1].1)
                }
                1 => {
                    q += 1;
                    (y[q - 1].0, b * &y[q - 1].1)
                }
                _ => {
                    p += 1;
                    q += 1;
                    (x[p - 1].0, a * &x[p - 1].1 + b * &y[q - 1].1)
                }
            };
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        ZVec(out)
    }

    pub fn add(&self, other: &ZVec) -> ZVec {
        self.combine(&BigInt::one(), other, &BigInt::one())
    }

    pub fn sub(&self, other: &ZVec) -> ZVec {
        self.combine(&BigInt::one(), other, &-BigInt::one())
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x))
    }
}

/// Dense-backed integer matrix (rows of sparse vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub cols: usize,
    pub rows: Vec<ZVec>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { cols, rows: vec![ZVec::new(); rows] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        IntMatrix { cols: n, rows: (0..n).map(|i| ZVec(vec![(i, BigInt::one())])).collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix { cols, rows: rows.iter().map(|r| ZVec::from_i64(r)).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<ZVec>) -> IntMatrix {
        IntMatrix { cols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.to_dense().iter().map(|r| r.iter().map(|x| x.to_i64().expect("entry fits i64")).collect()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.rows[i].get(j)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| ZVec::from_entries(r.0.iter().flat_map(|(k, a)| other.rows[*k].0.iter().map(move |(j, b)| (*j, a * b)))))
            .collect();
        IntMatrix { cols: other.cols, rows }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut rows = vec![Vec::new(); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in &r.0 {
                rows[*j].push((i, x.clone()));
            }
        }
        IntMatrix { cols: self.rows.len(), rows: rows.into_iter().map(ZVec).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    /// Exact determinant by fraction-free elimination (square matrices).
    pub fn det(&self) -> BigInt {
        let n = self.nrows();
        assert_eq!(n, self.cols);
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &a[n - 1][n - 1]
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.to_dense() {
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", s.join(", "))?;
        }
        Ok(())
    }
}

fn row_op(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    // rows[dst] -= q * rows[src]
    let (d, s) = if dst < src {
        let (a, b) = rows.split_at_mut(src);
        (&mut a[dst], &b[0])
    } else {
        let (a, b) = rows.split_at_mut(dst);
        (&mut b[0], &a[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Row Hermite normal form with transform: returns `(H, U)` with `H = U*M`,
/// `U` unimodular. Zero rows of `H` are at the bottom.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let nr = m.nrows();
    let nc = m.cols;
    let mut h = m.to_dense();
    let mut u = IntMatrix::identity(nr).to_dense();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below r; ties -> lowest row
            let mut best: Option<usize> = None;
            for i in r..nr {
                if !h[i][c].is_zero() && best.is_none_or(|b| h[i][c].abs() < h[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap(r, b);
            u.swap(r, b);
            let mut done = true;
            for i in r + 1..nr {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                row_op(&mut h, i, r, &q);
                row_op(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r).is_none_or(|row| row[c].is_zero()) {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                row_op(&mut h, i, r, &q);
                row_op(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    let to_m = |d: Vec<Vec<BigInt>>, cols| IntMatrix { cols, rows: d.iter().map(|x| ZVec::from_dense(x)).collect() };
    (to_m(h, nc), to_m(u, nr))
}

/// Smith normal form diagonal (nonzero elementary divisors, `d1 | d2 | ...`).
pub fn snf_diag(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.to_dense();
    let nr = a.len();
    let nc = m.cols;
    let mut out = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // pivot: smallest nonzero |entry| in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let p = a[t][t].clone();
        let mut clean = true;
        for i in t + 1..nr {
            let q = a[i][t].div_floor(&p);
            if !q.is_zero() {
                row_op(&mut a, i, t, &q);
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..nc {
            let q = a[t][j].div_floor(&p);
            if !q.is_zero() {
                for row in a.iter_mut() {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // divisibility: fold any entry not divisible by p into row t
        if let Some(i) = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !(&a[i][j] % &p).is_zero())) {
            let one = BigInt::one();
            row_op(&mut a, t, i, &-one);
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

/// Incremental Hermite form of the row lattice spanned by inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct HnfBuilder {
    dim: usize,
    rows: BTreeMap<usize, ZVec>,
}

impl HnfBuilder {
    pub fn new(dim: usize) -> HnfBuilder {
        HnfBuilder { dim, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: ZVec) -> bool {
        loop {
            let Some((c, vc)) = v.lead().map(|(c, x)| (c, x.clone())) else {
                return false;
            };
            let Some(r) = self.rows.get(&c) else {
                if vc.is_negative() {
                    v = v.neg();
                }
                self.rows.insert(c, v);
                return true;
            };
            let rc = r.0[0].1.clone();
            if (&vc % &rc).is_zero() {
                let q = &vc / &rc;
                v = v.combine(&BigInt::one(), r, &-q);
                continue;
            }
            let e = rc.extended_gcd(&vc);
            let g = e.gcd;
            let new_r = r.combine(&e.x, &v, &e.y);
            let new_v = r.combine(&(&vc / &g), &v, &-(&rc / &g));
            let new_r = if new_r.0[0].1.is_negative() { new_r.neg() } else { new_r };
            self.rows.insert(c, new_r);
            v = new_v;
        }
    }

    /// Reduced Hermite basis, rows in increasing pivot order.
    pub fn finish(self) -> ZLattice {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut rows = self.rows;
        for (k, &ci) in pivots.iter().enumerate() {
            for &cj in &pivots[k + 1..] {
                let rj = rows[&cj].clone();
                let ri = rows.get_mut(&ci).unwrap();
                let x = ri.get(cj);
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&rj.0[0].1);
                if !q.is_zero() {
                    *ri = ri.combine(&BigInt::one(), &rj, &-q);
                }
            }
        }
        ZLattice { dim: self.dim, basis: rows.into_values().collect() }
    }
}

/// A sublattice of `Z^dim` stored as its reduced row Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZLattice {
    dim: usize,
    basis: Vec<ZVec>,
}

impl ZLattice {
    pub fn from_generators(dim: usize, gens: impl IntoIterator<Item = ZVec>) -> ZLattice {
        let mut b = HnfBuilder::new(dim);
        for g in gens {
            b.insert(g);
        }
        b.finish()
    }

    pub fn full(dim: usize) -> ZLattice {
        ZLattice { dim, basis: (0..dim).map(|i| ZVec(vec![(i, BigInt::one())])).collect() }
    }

    pub fn zero(dim: usize) -> ZLattice {
        ZLattice { dim, basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ZVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<(usize, BigInt)> {
        self.basis.iter().map(|r| (r.0[0].0, r.0[0].1.clone())).collect()
    }

    fn same_dim(&self, o: &ZLattice) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::Dimension(format!("lattices in Z^{} and Z^{}", self.dim, o.dim)));
        }
        Ok(())
    }

    pub fn sum(&self, o: &ZLattice) -> Result<ZLattice> {
        self.same_dim(o)?;
        Ok(ZLattice::from_generators(self.dim, self.basis.iter().chain(o.basis.iter()).cloned()))
    }

    /// Coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &ZVec) -> Option<Vec<BigInt>> {
        let mut v = v.clone();
        let mut out = vec![BigInt::zero(); self.basis.len()];
        for (k, r) in self.basis.iter().enumerate() {
            let (c, p) = r.lead().unwrap();
            let x = v.get(c);
            if x.is_zero() {
                continue;
            }
            if let Some((lc, _)) = v.lead() {
                if lc < c {
                    return None;
                }
            }
            if !(&x % p).is_zero() {
                return None;
            }
            let q = &x / p;
            v = v.combine(&BigInt::one(), r, &-&q);
            out[k] = q;
        }
        v.is_zero().then_some(out)
    }

    pub fn contains_vec(&self, v: &ZVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, o: &ZLattice) -> bool {
        self.dim == o.dim && o.basis.iter().all(|v| self.contains_vec(v))
    }

    /// Intersection via the kernel trick on `[[A, A], [B, 0]]`.
    pub fn intersection(&self, o: &ZLattice) -> Result<ZLattice> {
        self.same_dim(o)?;
        let n = self.dim;
        let mut b = HnfBuilder::new(2 * n);
        for a in &self.basis {
            let shifted = a.0.iter().map(|(i, x)| (i + n, x.clone()));
            b.insert(ZVec(a.0.iter().cloned().chain(shifted).collect()));
        }
        for v in &o.basis {
            b.insert(v.clone());
        }
        let h = b.finish();
        let gens = h
            .basis
            .iter()
            .filter(|r| r.0[0].0 >= n)
            .map(|r| ZVec(r.0.iter().map(|(i, x)| (i - n, x.clone())).collect()));
        Ok(ZLattice::from_generators(n, gens))
    }

    /// `[self : sub]` for a full-rank sublattice of equal rank.
    pub fn index(&self, sub: &ZLattice) -> Result<BigInt> {
        self.same_dim(sub)?;
        if sub.rank() != self.rank() {
            return Err(Error::IndexUndefined(format!("ranks {} and {}", self.rank(), sub.rank())));
        }
        let mut coords = Vec::new();
        for v in &sub.basis {
            let c = self.coordinates(v).ok_or_else(|| Error::IndexUndefined("not a sublattice".into()))?;
            coords.push(ZVec::from_dense(&c));
        }
        let h = ZLattice::from_generators(self.rank(), coords);
        Ok(h.basis.iter().map(|r| r.0[0].1.clone()).product())
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.dim, self.basis.clone())
    }
}

/// Left kernel `{x : x*M = 0}` as a saturated lattice, via the Hermite transform.
pub fn left_kernel(m: &IntMatrix) -> ZLattice {
    let (h, u) = hnf(m);
    let gens = h.rows.iter().zip(u.rows.iter()).filter(|(r, _)| r.is_zero()).map(|(_, x)| x.clone());
    ZLattice::from_generators(m.nrows(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn lat(rows: &[Vec<i64>]) -> ZLattice {
        let cols = rows[0].len();
        ZLattice::from_generators(cols, rows.iter().map(|r| ZVec::from_i64(r)))
    }

    #[test]
    fn cartan_a2_hermite_form() {
        let a = m(&[vec![2, -1], vec![-1, 2]]);
        let (h, u) = hnf(&a);
        assert_eq!(h.to_i64(), vec![vec![1, 1], vec![0, 3]]);
        assert_eq!(u.mul(&a), h);
        assert_eq!(u.det().abs(), BigInt::one());
    }

    #[test]
    fn already_reduced_and_zero() {
        let a = m(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(hnf(&a).0, a);
        let z = IntMatrix::zeros(3, 2);
        assert!(hnf(&z).0.is_zero());
    }

    #[test]
    fn smith_divisors() {
        assert_eq!(snf_diag(&m(&[vec![2, -1], vec![-1, 2]])), vec![BigInt::from(1), BigInt::from(3)]);
        assert_eq!(snf_diag(&m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])), vec![2, 6, 12].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(snf_diag(&IntMatrix::identity(4)).len(), 4);
    }

    #[test]
    fn gcd_and_lcm_lattices() {
        let two = lat(&[vec![2, 0], vec![0, 2]]);
        let three = lat(&[vec![3, 0], vec![0, 3]]);
        assert_eq!(two.sum(&three).unwrap(), ZLattice::full(2));
        assert_eq!(two.intersection(&three).unwrap(), lat(&[vec![6, 0], vec![0, 6]]));
        assert_eq!(ZLattice::full(2).index(&two).unwrap(), BigInt::from(4));
        assert!(two.index(&three).is_err());
        assert!(ZLattice::full(2).index(&lat(&[vec![1, 0]])).is_err());
    }

    #[test]
    fn builder_matches_dense() {
        let a = m(&[vec![4, 6, 2], vec![3, 1, 7], vec![5, 5, 5], vec![0, 2, 8]]);
        let (h, _) = hnf(&a);
        let b = ZLattice::from_generators(3, a.rows.clone());
        let nz: Vec<ZVec> = h.rows.into_iter().filter(|r| !r.is_zero()).collect();
        assert_eq!(b.basis(), &nz[..]);
    }

    #[test]
    fn kernel_of_rank_one_map() {
        let k = left_kernel(&m(&[vec![1, 2], vec![2, 4], vec![3, 6]]));
        assert_eq!(k.rank(), 2);
        for v in k.basis() {
            let d = v.to_dense(3);
            let s: BigInt = &d[0] + &d[1] * 2 + &d[2] * 3;
            assert!(s.is_zero());
        }
    }

    #[test]
    fn determinant() {
        assert_eq!(m(&[vec![2, -1], vec![-1, 2]]).det(), BigInt::from(3));
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).det(), BigInt::from(-1));
    }
}
