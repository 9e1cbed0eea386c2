//! Weight-preserving maps of `R (x) IV_L`, stored per weight as matrices in
//! h-coordinates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use serde::Serialize;

use super::engine::{LatticeVA, QElem};
use super::form::theta;
use super::integral::{h_mono, ring_product, to_h_integral, RElem};
use super::mono::Mono;
use super::symfun::Q;
use crate::error::{Error, Result};
use crate::lie::LieMap;
use crate::linalg::FVec;
use crate::roots::GraphAut;
use crate::scalar::{Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismKind {
    GammaLift,
    Theta,
    ChevalleyGenerator,
    Norm,
    ConjugationTwist,
}

/// Integral matrices per weight; columns are images of h-basis vectors.
type IntColumns = Vec<BTreeMap<usize, BigInt>>;

#[derive(Clone, Debug)]
pub struct GradedMap {
    pub kind: MorphismKind,
    pub ring: Ring,
    pub weights: BTreeMap<usize, LieMap>,
}

impl GradedMap {
    pub fn at(&self, n: usize) -> Result<&LieMap> {
        self.weights.get(&n).ok_or(Error::Truncation { requested: n as i64, max: self.weights.len() as i64 - 1 })
    }

    pub fn apply(&self, a: &RElem) -> Result<RElem> {
        Ok(RElem { weight: a.weight, coords: self.at(a.weight)?.apply(&a.coords) })
    }

    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        let weights = self.weights.iter().map(|(n, m)| (*n, m.compose(&other.weights[n]))).collect();
        GradedMap { kind: self.kind, ring: self.ring, weights }
    }

    pub fn pow(&self, k: u32) -> GradedMap {
        let weights = self.weights.iter().map(|(n, m)| (*n, m.pow(k))).collect();
        GradedMap { kind: self.kind, ring: self.ring, weights }
    }

    pub fn is_identity(&self) -> bool {
        self.weights.values().all(|m| m.is_identity())
    }

    pub fn top(&self) -> usize {
        self.weights.keys().next_back().copied().unwrap_or(0)
    }
}

/// Integral h-coordinate matrix of a `Q`-linear map given on Fock elements.
fn int_columns(va: &LatticeVA, n: usize, f: &dyn Fn(&QElem) -> Result<QElem>) -> Result<IntColumns> {
    let basis = va.basis(n)?;
    let idx = va.basis_index(n)?;
    let mut cols = Vec::with_capacity(basis.len());
    for b in basis.iter() {
        let img = f(&h_mono(va, b))?;
        let mut col = BTreeMap::new();
        for (m, c) in to_h_integral(va, &img)? {
            let i = *idx.get(&m).ok_or_else(|| Error::Dimension(format!("{m:?} left weight {n}")))?;
            col.insert(i, c);
        }
        cols.push(col);
    }
    Ok(cols)
}

fn to_ring(ring: Ring, cols: &IntColumns) -> LieMap {
    LieMap::new(ring, cols.iter().map(|c| FVec::from_entries(ring, c.iter().map(|(i, x)| (*i, Scalar::from_bigint(ring, x))))).collect())
}

fn graded(va: &LatticeVA, kind: MorphismKind, ring: Ring, wmax: usize, f: &dyn Fn(&QElem) -> Result<QElem>) -> Result<GradedMap> {
    let mut weights = BTreeMap::new();
    for n in 0..=wmax {
        weights.insert(n, to_ring(ring, &int_columns(va, n, f)?));
    }
    Ok(GradedMap { kind, ring, weights })
}

pub fn theta_map(va: &LatticeVA, ring: Ring, wmax: usize) -> Result<GradedMap> {
    graded(va, MorphismKind::Theta, ring, wmax, &|a| Ok(theta(a)))
}

/// Fock-level lift of a graph automorphism: colours permuted, `e^b` sent to
/// `eta(b) e^(gamma b)`. In characteristic 2 the signs are dropped.
pub fn gamma_fock(gamma: &GraphAut, char2: bool) -> Result<impl Fn(&QElem) -> Result<QElem>> {
    if !char2 && !gamma.has_lift() {
        return Err(Error::NoLift(gamma.order()));
    }
    let perm = gamma.perm().to_vec();
    let gamma = gamma.clone();
    Ok(move |a: &QElem| {
        let mut out = QElem::zero();
        for (m, x) in a.terms() {
            let parts = m.parts.iter().map(|(c, n)| (perm[*c as usize] as u8, *n)).collect();
            let beta = m.lattice_i64();
            let gb = gamma.apply(&beta);
            let s = if char2 { 1 } else { gamma.eta(&beta) };
            out.add_term(Mono::new(parts, gb.iter().map(|v| *v as i16).collect()), x * Q::from_integer(BigInt::from(s)));
        }
        Ok(out)
    })
}

pub fn gamma_lift(va: &LatticeVA, gamma: &GraphAut, ring: Ring, wmax: usize) -> Result<GradedMap> {
    let f = gamma_fock(gamma, ring.characteristic() == 2)?;
    graded(va, MorphismKind::GammaLift, ring, wmax, &f)
}

/// `nu = sum_j gamma^j` on `R (x) IV_L`.
pub fn norm_lift(va: &LatticeVA, gamma: &GraphAut, ring: Ring, wmax: usize) -> Result<GradedMap> {
    let g = gamma_lift(va, gamma, ring, wmax)?;
    let mut weights = BTreeMap::new();
    for (n, m) in &g.weights {
        let mut acc = LieMap::identity(ring, m.dim());
        let mut pw = LieMap::identity(ring, m.dim());
        for _ in 1..gamma.order() {
            pw = m.compose(&pw);
            acc = acc.add(&pw);
        }
        weights.insert(*n, acc);
    }
    Ok(GradedMap { kind: MorphismKind::Norm, ring, weights })
}

/// Divided powers `((e^a)_0)^k / k!` on the weight-`n` h-basis, each
/// asserted integral.
pub fn divided_power_columns(va: &LatticeVA, root: &[i64], n: usize) -> Result<Vec<IntColumns>> {
    if va.lattice().norm(root) != 2 {
        return Err(Error::InvalidArgument(format!("{root:?} is not a root")));
    }
    let e = va.exp_elem(root);
    let basis = va.basis(n)?;
    let idx = va.basis_index(n)?;
    let mut terms: Vec<IntColumns> = Vec::new();
    for (j, b) in basis.iter().enumerate() {
        let mut v = h_mono(va, b);
        let mut k = 0usize;
        while !v.is_zero() {
            if terms.len() <= k {
                terms.push(vec![BTreeMap::new(); basis.len()]);
            }
            for (m, c) in to_h_integral(va, &v).map_err(|_| Error::NonIntegral(format!("divided power {k} of (e^{root:?})_0 on {b:?}")))? {
                terms[k][j].insert(idx[&m], c);
            }
            k += 1;
            if k > 4 * va.wmax() + 4 {
                return Err(Error::CheckFailed { check: "zero_mode_nilpotent".into(), witness: format!("{root:?}") });
            }
            v = va.product(&e, 0, &v)?.scale(&Q::new(BigInt::one(), BigInt::from(k)));
        }
    }
    Ok(terms)
}

/// `exp(t (e^a)_0)` on weights `0..=wmax`.
pub fn va_generator_action(va: &LatticeVA, root: &[i64], t: &Scalar, wmax: usize) -> Result<GradedMap> {
    let ring = t.ring();
    let mut weights = BTreeMap::new();
    for n in 0..=wmax {
        let terms = divided_power_columns(va, root, n)?;
        let dim = va.basis(n)?.len();
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim];
        if terms.is_empty() {
            weights.insert(n, LieMap::new(ring, Vec::new()));
            continue;
        }
        for (k, term) in terms.iter().enumerate() {
            let tk = t.pow(k as u64);
            for (j, col) in term.iter().enumerate() {
                for (i, c) in col {
                    cols[j].push((*i, &tk * &Scalar::from_bigint(ring, c)));
                }
            }
        }
        weights.insert(n, LieMap::new(ring, cols.into_iter().map(|e| FVec::from_entries(ring, e)).collect()));
    }
    Ok(GradedMap { kind: MorphismKind::ChevalleyGenerator, ring, weights })
}

/// A random element of weight `n` with small integer coefficients.
pub fn random_element<R: Rng>(va: &LatticeVA, ring: Ring, n: usize, density: usize, rng: &mut R) -> Result<RElem> {
    let dim = va.basis(n)?.len();
    let mut e = Vec::new();
    for _ in 0..density.max(1) {
        e.push((rng.gen_range(0..dim), Scalar::from_i64(ring, rng.gen_range(-3..=3))));
    }
    Ok(RElem { weight: n, coords: FVec::from_entries(ring, e) })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ProductCheck {
    pub pairs: usize,
    pub failures: Vec<String>,
}

impl ProductCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `phi(u_m v) = phi(u)_m phi(v)` on random pairs with all weights within
/// the map's range.
pub fn check_preserves_products<R: Rng>(va: &LatticeVA, phi: &GradedMap, samples: usize, rng: &mut R) -> Result<ProductCheck> {
    let top = phi.top();
    let mut failures = Vec::new();
    let mut pairs = 0;
    while pairs < samples {
        let wu = rng.gen_range(0..=top);
        let wv = rng.gen_range(0..=top);
        let out = rng.gen_range(0..=top) as i64;
        let m = wu as i64 + wv as i64 - 1 - out;
        let u = random_element(va, phi.ring, wu, 2, rng)?;
        let v = random_element(va, phi.ring, wv, 2, rng)?;
        let lhs = phi.apply(&ring_product(va, &u, m, &v)?)?;
        let rhs = ring_product(va, &phi.apply(&u)?, m, &phi.apply(&v)?)?;
        if lhs.coords != rhs.coords {
            failures.push(format!("weights ({wu},{wv}) mode {m}"));
        }
        pairs += 1;
    }
    Ok(ProductCheck { pairs, failures })
}

/// Weight-one identification with the Chevalley basis: `h_i <-> a_i(-1)`,
/// `e_b <-> e^b`. Entry `k` is the VA basis position of Lie basis vector `k`.
pub fn weight_one_to_lie(va: &LatticeVA) -> Result<Vec<usize>> {
    let idx = va.basis_index(1)?;
    let r = va.rank();
    let mut out = Vec::with_capacity(r + va.lattice().roots().len());
    for i in 0..r {
        out.push(idx[&Mono::heisenberg(r, i, 1)]);
    }
    for a in va.lattice().roots() {
        out.push(idx[&Mono::exp(a)]);
    }
    Ok(out)
}

/// Weight-one block of a graded map, re-indexed by the Chevalley basis.
pub fn weight_one_in_lie_basis(va: &LatticeVA, phi: &GradedMap) -> Result<LieMap> {
    let pos = weight_one_to_lie(va)?;
    let inv: BTreeMap<usize, usize> = pos.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let m = phi.at(1)?;
    let images = pos
        .iter()
        .map(|p| FVec::from_entries(phi.ring, m.images()[*p].entries.iter().map(|(i, c)| (inv[i], c.clone()))))
        .collect();
    Ok(LieMap::new(phi.ring, images))
}

/// `gamma` lift on the weight-`n` h-basis as a signed permutation:
/// entry `j` is `(i, s)` with `gamma(b_j) = s b_i`. Signs are the `eta`
/// corrections, or all `+1` when `char2` is set.
pub fn gamma_signed_perm(va: &LatticeVA, gamma: &GraphAut, n: usize, char2: bool) -> Result<Vec<(usize, i64)>> {
    if !char2 && !gamma.has_lift() {
        return Err(Error::NoLift(gamma.order()));
    }
    let basis = va.basis(n)?;
    let idx = va.basis_index(n)?;
    let perm = gamma.perm();
    basis
        .iter()
        .map(|b| {
            let parts = b.parts.iter().map(|(c, d)| (perm[*c as usize] as u8, *d)).collect();
            let beta = b.lattice_i64();
            let img = Mono::new(parts, gamma.apply(&beta).iter().map(|v| *v as i16).collect());
            let s = if char2 { 1 } else { gamma.eta(&beta) };
            idx.get(&img).map(|i| (*i, s)).ok_or_else(|| Error::Dimension(format!("{img:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{chevalley_generator, LieAlgebra};
    use crate::roots::graph_automorphism;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn theta_is_an_involutive_automorphism() {
        let va = LatticeVA::build("A2", 2).unwrap();
        let t = theta_map(&va, Ring::Int, 2).unwrap();
        assert!(t.pow(2).is_identity());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(check_preserves_products(&va, &t, 60, &mut rng).unwrap().passed());
    }

    #[test]
    fn gamma_lift_has_order_three_on_d4() {
        let va = LatticeVA::build("D4", 2).unwrap();
        let g = graph_automorphism(va.lattice(), 3).unwrap();
        let m = gamma_lift(&va, &g, Ring::Int, 2).unwrap();
        assert!(m.pow(3).is_identity());
        assert!(!m.is_identity());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(check_preserves_products(&va, &m, 40, &mut rng).unwrap().passed());
    }

    #[test]
    fn generator_restricts_to_lie_generator() {
        let va = LatticeVA::build("A2", 2).unwrap();
        for ring in [Ring::Int, Ring::PrimeField(2), Ring::PrimeField(3)] {
            let g = LieAlgebra::new(va.lattice_arc(), ring);
            for root in va.lattice().roots() {
                let t = Scalar::from_i64(ring, 2);
                let phi = va_generator_action(&va, root, &t, 2).unwrap();
                let lie = chevalley_generator(&g, root, &t).unwrap();
                assert_eq!(weight_one_in_lie_basis(&va, &phi).unwrap().images(), lie.images(), "{root:?} {ring}");
            }
        }
    }

    #[test]
    fn generator_at_zero_is_identity() {
        let va = LatticeVA::build("A1", 3).unwrap();
        let phi = va_generator_action(&va, &[1], &Scalar::zero(Ring::Int), 3).unwrap();
        assert!(phi.is_identity());
    }
}
