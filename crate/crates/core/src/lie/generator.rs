//! Linear maps on Chevalley algebras: root-group generators `x_a(t)`, graph
//! automorphisms and the norm map.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::algebra::LieAlgebra;
use super::structure::StructAlg;
use crate::error::{Error, Result};
use crate::linalg::{FVec, Subspace};
use crate::roots::GraphAut;
use crate::scalar::{Ring, Scalar};

/// A linear endomorphism given by the images of the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieMap {
    ring: Ring,
    images: Vec<FVec>,
}

impl LieMap {
    pub fn new(ring: Ring, images: Vec<FVec>) -> LieMap {
        LieMap { ring, images }
    }

    pub fn identity(ring: Ring, n: usize) -> LieMap {
        LieMap { ring, images: (0..n).map(|i| FVec::unit(ring, i)).collect() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[FVec] {
        &self.images
    }

    pub fn apply(&self, v: &FVec) -> FVec {
        let mut acc = FVec::zero(self.ring);
        for (i, x) in &v.entries {
            acc = acc.axpy(x, &self.images[*i]);
        }
        acc
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &LieMap) -> LieMap {
        LieMap { ring: self.ring, images: other.images.iter().map(|v| self.apply(v)).collect() }
    }

    pub fn add(&self, other: &LieMap) -> LieMap {
        LieMap { ring: self.ring, images: self.images.iter().zip(&other.images).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn pow(&self, k: u32) -> LieMap {
        (0..k).fold(LieMap::identity(self.ring, self.dim()), |acc, _| self.compose(&acc))
    }

    pub fn is_identity(&self) -> bool {
        *self == LieMap::identity(self.ring, self.dim())
    }

    /// First basis pair `(i, j)` with `f[b_i, b_j] != [f b_i, f b_j]`.
    pub fn bracket_defect(&self, g: &LieAlgebra) -> Result<Option<(usize, usize)>> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply(&g.from_ints(g.bracket_basis(i, j)));
                let rhs = g.bracket(&self.images[i], &self.images[j])?;
                if lhs != rhs {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    pub fn preserves_bracket(&self, g: &LieAlgebra) -> Result<bool> {
        Ok(self.bracket_defect(g)?.is_none())
    }

    pub fn preserves_bracket_of(&self, a: &StructAlg) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i + 1..n).all(|j| self.apply(&a.table()[i][j]) == a.bracket(&self.images[i], &self.images[j]))
        })
    }

    /// Whether `f(S)` lies in `S`.
    pub fn preserves(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| s.contains(&self.apply(v)))
    }

    /// `ker(f - 1)` over a field.
    pub fn fixed_space(&self) -> Result<Subspace> {
        let id = LieMap::identity(self.ring, self.dim());
        let minus = LieMap { ring: self.ring, images: self.images.iter().zip(&id.images).map(|(a, b)| a.sub(b)).collect() };
        minus.kernel()
    }

    pub fn kernel(&self) -> Result<Subspace> {
        // columns are images; kernel of the matrix whose j-th column is images[j]
        let n = self.dim();
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for (j, v) in self.images.iter().enumerate() {
            for (i, x) in &v.entries {
                rows[*i].push((j, x.clone()));
            }
        }
        let m = crate::linalg::FieldMatrix::new(self.ring, n, rows.into_iter().map(|e| FVec::from_entries(self.ring, e)).collect());
        Subspace::spanned(self.ring, n, m.kernel()?)
    }

    pub fn image(&self) -> Result<Subspace> {
        Subspace::spanned(self.ring, self.dim(), self.images.iter().cloned())
    }
}

type QVec = BTreeMap<usize, BigRational>;

fn ad_rational(g: &LieAlgebra, x: usize, v: &QVec) -> QVec {
    let mut out = QVec::new();
    for (j, c) in v {
        for (k, s) in g.bracket_basis(x, *j) {
            let e = out.entry(*k).or_insert_with(BigRational::zero);
            *e += c * BigRational::from_integer(BigInt::from(*s));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Divided powers `(ad e_a)^k / k!` applied to each basis vector, computed
/// over `Q` and checked to be integral. Entry `[j][k]` is the k-th term.
pub fn divided_powers(g: &LieAlgebra, root: &[i64]) -> Result<Vec<Vec<Vec<(usize, BigInt)>>>> {
    let x = g.root_basis_index(root).ok_or_else(|| Error::InvalidArgument(format!("{root:?} is not a root")))?;
    let mut out = Vec::with_capacity(g.dim());
    for j in 0..g.dim() {
        let mut v: QVec = [(j, BigRational::one())].into_iter().collect();
        let mut terms = Vec::new();
        let mut k = 0i64;
        while !v.is_empty() {
            let mut t = Vec::with_capacity(v.len());
            for (i, c) in &v {
                if !c.is_integer() {
                    return Err(Error::NonIntegral(format!("divided power {k} of ad e{root:?} on basis {j}")));
                }
                t.push((*i, c.to_integer()));
            }
            terms.push(t);
            k += 1;
            v = ad_rational(g, x, &v);
            let kk = BigRational::from_integer(BigInt::from(k));
            for c in v.values_mut() {
                *c /= &kk;
            }
            if k > 4 {
                return Err(Error::CheckFailed { check: "ad_nilpotent".into(), witness: format!("{root:?}") });
            }
        }
        out.push(terms);
    }
    Ok(out)
}

/// `x_a(t) = exp(t ad e_a)` over the algebra's ring.
pub fn chevalley_generator(g: &LieAlgebra, root: &[i64], t: &Scalar) -> Result<LieMap> {
    let ring = g.ring();
    if t.ring() != ring {
        return Err(Error::RingMismatch(t.ring().to_string(), ring.to_string()));
    }
    let dp = divided_powers(g, root)?;
    let images = dp
        .iter()
        .map(|terms| {
            let mut e = Vec::new();
            for (k, term) in terms.iter().enumerate() {
                let tk = t.pow(k as u64);
                for (i, c) in term {
                    e.push((*i, &tk * &Scalar::from_bigint(ring, c)));
                }
            }
            FVec::from_entries(ring, e)
        })
        .collect();
    Ok(LieMap::new(ring, images))
}

/// Sign attached to `e_a` by the graph action; in characteristic 2 signs are
/// invisible, so automorphisms without a sign lift still act.
fn action_sign(g: &LieAlgebra, gamma: &GraphAut, a: &[i64]) -> Result<i64> {
    if g.ring().characteristic() == 2 {
        Ok(1)
    } else if gamma.has_lift() {
        Ok(gamma.eta(a))
    } else {
        Err(Error::NoLift(gamma.order()))
    }
}

/// `h_i -> h_(gamma i)`, `e_a -> eta(a) e_(gamma a)`.
pub fn graph_action(g: &LieAlgebra, gamma: &GraphAut) -> Result<LieMap> {
    let ring = g.ring();
    let r = g.rank();
    let mut images = Vec::with_capacity(g.dim());
    for i in 0..r {
        images.push(FVec::unit(ring, gamma.perm()[i]));
    }
    for a in g.lattice().roots() {
        let ga = gamma.apply(a);
        let k = g.root_basis_index(&ga).expect("roots permuted");
        images.push(FVec::from_entries(ring, [(k, Scalar::from_i64(ring, action_sign(g, gamma, a)?))]));
    }
    Ok(LieMap::new(ring, images))
}

/// `nu = sum_{j<p} gamma^j`.
pub fn norm_map(g: &LieAlgebra, gamma: &GraphAut) -> Result<LieMap> {
    let s = graph_action(g, gamma)?;
    let mut acc = LieMap::identity(g.ring(), g.dim());
    let mut pw = LieMap::identity(g.ring(), g.dim());
    for _ in 1..gamma.order() {
        pw = s.compose(&pw);
        acc = acc.add(&pw);
    }
    Ok(acc)
}

/// For a root `b` moved by `gamma` whose orbit is pairwise orthogonal, the
/// product `x_b(t) x_(gb)(c_1 t) ...` with signs making it commute with the
/// graph action.
pub fn orbit_generator(g: &LieAlgebra, gamma: &GraphAut, root: &[i64], t: &Scalar) -> Result<LieMap> {
    let ring = g.ring();
    let mut orbit = vec![root.to_vec()];
    loop {
        let nx = gamma.apply(orbit.last().unwrap());
        if nx == root {
            break;
        }
        orbit.push(nx);
    }
    for (i, a) in orbit.iter().enumerate() {
        for b in &orbit[i + 1..] {
            if g.lattice().inner(a, b) != 0 {
                return Err(Error::InvalidArgument(format!("orbit of {root:?} is not orthogonal")));
            }
        }
    }
    let mut acc = LieMap::identity(ring, g.dim());
    let mut c = Scalar::one(ring);
    for a in &orbit {
        acc = chevalley_generator(g, a, &(&c * t))?.compose(&acc);
        c = &c * &Scalar::from_i64(ring, action_sign(g, gamma, a)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootLattice;

    fn f(p: u64, x: i64) -> Scalar {
        Scalar::from_i64(Ring::PrimeField(p), x)
    }

    #[test]
    fn generator_at_zero_is_identity_and_fixes_e_alpha() {
        let g = LieAlgebra::build("A2", Ring::PrimeField(3)).unwrap();
        let a = g.lattice().roots()[0].clone();
        assert!(chevalley_generator(&g, &a, &f(3, 0)).unwrap().is_identity());
        let x = chevalley_generator(&g, &a, &f(3, 2)).unwrap();
        let ea = g.basis_vector(g.root_basis_index(&a).unwrap());
        assert_eq!(x.apply(&ea), ea);
    }

    #[test]
    fn generators_preserve_bracket_over_f2_on_a2() {
        let g = LieAlgebra::build("A2", Ring::PrimeField(2)).unwrap();
        for a in g.lattice().roots().to_vec() {
            let x = chevalley_generator(&g, &a, &f(2, 1)).unwrap();
            assert!(x.preserves_bracket(&g).unwrap());
            // image of e_(-a): e_(-a) + eps h_a - e_a
            let neg: Vec<i64> = a.iter().map(|v| -v).collect();
            let en = g.basis_vector(g.root_basis_index(&neg).unwrap());
            let want = en.add(&g.coroot(&a)).add(&g.basis_vector(g.root_basis_index(&a).unwrap()));
            assert_eq!(x.apply(&en), want);
        }
    }

    #[test]
    fn generators_are_additive_and_integral_over_z() {
        let g = LieAlgebra::build("D4", Ring::Int).unwrap();
        let a = g.lattice().highest_root().clone();
        let s = Scalar::from_i64(Ring::Int, 3);
        let t = Scalar::from_i64(Ring::Int, -5);
        let xs = chevalley_generator(&g, &a, &s).unwrap();
        let xt = chevalley_generator(&g, &a, &t).unwrap();
        assert_eq!(xs.compose(&xt), chevalley_generator(&g, &a, &(&s + &t)).unwrap());
        assert!(xs.preserves_bracket(&g).unwrap());
    }

    #[test]
    fn graph_action_has_order_p_and_preserves_bracket() {
        for (name, p, q) in [("D4", 3, 3), ("D4", 2, 5), ("E6", 2, 3), ("A3", 2, 3), ("D5", 2, 2)] {
            let l = RootLattice::parse(name).unwrap();
            let gamma = GraphAut::new(&l, p).unwrap();
            let g = LieAlgebra::build(name, Ring::PrimeField(q)).unwrap();
            let s = graph_action(&g, &gamma).unwrap();
            assert!(s.pow(p).is_identity(), "{name}");
            assert!(!s.is_identity());
            assert!(s.preserves_bracket(&g).unwrap(), "{name}");
            let nu = norm_map(&g, &gamma).unwrap();
            assert_eq!(nu.compose(&s), nu);
            let fixed = s.fixed_space().unwrap();
            assert!(fixed.contains_space(&nu.image().unwrap()));
        }
    }

    #[test]
    fn norm_is_power_of_gamma_minus_one_in_char_3() {
        let l = RootLattice::parse("D4").unwrap();
        let gamma = GraphAut::new(&l, 3).unwrap();
        let g = LieAlgebra::build("D4", Ring::PrimeField(3)).unwrap();
        let s = graph_action(&g, &gamma).unwrap();
        let neg_id = LieMap::new(g.ring(), (0..g.dim()).map(|i| g.basis_vector(i).scale(&f(3, -1))).collect());
        let m = s.add(&neg_id);
        assert_eq!(m.compose(&m), norm_map(&g, &gamma).unwrap());
    }

    #[test]
    fn orbit_generators_commute_with_gamma() {
        for (name, p, q) in [("D4", 3, 3), ("E6", 2, 2), ("D5", 2, 2)] {
            let l = RootLattice::parse(name).unwrap();
            let gamma = GraphAut::new(&l, p).unwrap();
            let g = LieAlgebra::build(name, Ring::PrimeField(q)).unwrap();
            let s = graph_action(&g, &gamma).unwrap();
            for a in l.positive_roots().iter().filter(|a| gamma.apply(a) != **a).take(6) {
                let x = orbit_generator(&g, &gamma, a, &f(q, 1)).unwrap();
                assert_eq!(x.compose(&s), s.compose(&x), "{name} {a:?}");
            }
        }
    }
}
