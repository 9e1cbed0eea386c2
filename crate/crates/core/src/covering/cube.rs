//! Tensor cube `W (x) W (x) W` of a truncated lattice VA with the cyclic
//! permutation `g`, and the diagonal map `eta(x) = x (x) x (x) x`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{FVec, FieldMatrix, Subspace};
use crate::scalar::{Ring, Scalar};
use crate::va::integral::{fock_to_h, h_mono};
use crate::va::mono::Mono;
use crate::va::symfun::Q;
use crate::va::{LatticeVA, QElem};

pub type Triple = (Mono, Mono, Mono);

/// Cube element over `Q`, Fock basis in each factor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CubeElem(pub BTreeMap<Triple, Q>);

impl CubeElem {
    pub fn zero() -> CubeElem {
        CubeElem(BTreeMap::new())
    }

    pub fn add_term(&mut self, t: Triple, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(t.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&t);
        }
    }

    pub fn add_scaled(&mut self, c: &Q, o: &CubeElem) {
        for (t, x) in &o.0 {
            self.add_term(t.clone(), c * x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tensor(a: &QElem, b: &QElem, c: &QElem) -> CubeElem {
        let mut out = CubeElem::zero();
        for (x, p) in a.terms() {
            for (y, q) in b.terms() {
                let pq = p * q;
                for (z, r) in c.terms() {
                    out.add_term((x.clone(), y.clone(), z.clone()), &pq * r);
                }
            }
        }
        out
    }

    /// `g(x (x) y (x) z) = z (x) x (x) y`.
    pub fn rotate(&self) -> CubeElem {
        CubeElem(self.0.iter().map(|((x, y, z), c)| ((z.clone(), x.clone(), y.clone()), c.clone())).collect())
    }
}

pub fn eta(a: &QElem) -> CubeElem {
    CubeElem::tensor(a, a, a)
}

/// The cube truncated at total weight `va.wmax()`.
pub struct Cube<'a> {
    pub va: &'a LatticeVA,
}

impl<'a> Cube<'a> {
    pub fn new(va: &'a LatticeVA) -> Cube<'a> {
        Cube { va }
    }

    pub fn vacuum(&self) -> CubeElem {
        let v = self.va.vacuum_elem();
        CubeElem::tensor(&v, &v, &v)
    }

    pub fn triple_weight(&self, t: &Triple) -> i64 {
        self.va.weight(&t.0) + self.va.weight(&t.1) + self.va.weight(&t.2)
    }

    /// `(a (x) b (x) c)_n (a' (x) b' (x) c') = sum_(i+j+k = n-2) a_i a' (x) b_j b' (x) c_k c'`.
    pub fn product(&self, x: &CubeElem, n: i64, y: &CubeElem) -> Result<CubeElem> {
        let w = self.va.wmax() as i64;
        let mut out = CubeElem::zero();
        for (s, p) in &x.0 {
            for (t, q) in &y.0 {
                let total = self.triple_weight(s) + self.triple_weight(t) - n - 1;
                if total < 0 {
                    continue;
                }
                if total > w {
                    return Err(Error::Truncation { requested: total, max: w });
                }
                let pq = p * q;
                let pair = |u: &Mono, v: &Mono| self.va.weight(u) + self.va.weight(v) - 1;
                let (ta, tb, tc) = (pair(&s.0, &t.0), pair(&s.1, &t.1), pair(&s.2, &t.2));
                for i in (ta - w).max(n - 2 - tb - tc)..=ta {
                    let ai = self.va.product_mono(&s.0, i, &t.0)?;
                    if ai.is_empty() {
                        continue;
                    }
                    for j in (tb - w).max(n - 2 - i - tc)..=tb {
                        let k = n - 2 - i - j;
                        if k > tc {
                            continue;
                        }
                        let bj = self.va.product_mono(&s.1, j, &t.1)?;
                        if bj.is_empty() {
                            continue;
                        }
                        let ck = self.va.product_mono(&s.2, k, &t.2)?;
                        for (m1, c1) in ai.iter() {
                            for (m2, c2) in bj.iter() {
                                let c12 = &pq * c1 * c2;
                                for (m3, c3) in ck.iter() {
                                    out.add_term((m1.clone(), m2.clone(), m3.clone()), &c12 * c3);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// h-coordinates in every factor, reduced into `ring`.
    pub fn reduce(&self, x: &CubeElem, ring: Ring) -> Result<BTreeMap<Triple, Scalar>> {
        let mut acc: BTreeMap<Triple, Q> = BTreeMap::new();
        let mut cache: BTreeMap<Mono, Vec<(Mono, BigInt)>> = BTreeMap::new();
        let mut h = |m: &Mono| cache.entry(m.clone()).or_insert_with(|| fock_to_h(self.va, m)).clone();
        for ((a, b, c), x) in &x.0 {
            let (ha, hb, hc) = (h(a), h(b), h(c));
            for (p, u) in &ha {
                for (q, v) in &hb {
                    let uv = Q::from_integer(u * v) * x;
                    for (r, w) in &hc {
                        *acc.entry((p.clone(), q.clone(), r.clone())).or_insert_with(Q::zero) += &uv * Q::from_integer(w.clone());
                    }
                }
            }
        }
        let mut out = BTreeMap::new();
        for (t, c) in acc {
            let s = Scalar::from_rational(ring, &c)?;
            if !s.is_zero() {
                out.insert(t, s);
            }
        }
        Ok(out)
    }
}

/// Membership in `nu(cube)` over `F_3`: zero on diagonal triples and constant
/// along each cyclic orbit.
pub fn in_cyclic_norm(x: &BTreeMap<Triple, Scalar>) -> bool {
    x.iter().all(|((a, b, c), s)| {
        if a == b && b == c {
            return false;
        }
        let rot = (c.clone(), a.clone(), b.clone());
        x.get(&rot) == Some(s)
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ModeSupportReport {
    pub lattice: String,
    pub pairs: usize,
    pub modes_checked: usize,
    pub off_support_failures: Vec<String>,
    pub eta_failures: Vec<String>,
}

impl ModeSupportReport {
    pub fn passed(&self) -> bool {
        self.off_support_failures.is_empty() && self.eta_failures.is_empty()
    }
}

/// For all h-basis `a, b` of weight `<= wmax_base` and every mode with
/// admissible output weight: `eta(a)_m eta(b)` lies in the norm unless
/// `m = 3l + 2`, where it is `eta(a_l b)` modulo the norm, over `F_3`.
pub fn eta_mode_check(va: &LatticeVA, wmax_base: usize) -> Result<ModeSupportReport> {
    let cube = Cube::new(va);
    let f3 = Ring::PrimeField(3);
    let mut elems = Vec::new();
    for w in 0..=wmax_base {
        for m in va.basis(w)?.iter() {
            elems.push((w as i64, m.clone(), h_mono(va, m)));
        }
    }
    let top = 3 * wmax_base as i64;
    let (mut pairs, mut modes) = (0, 0);
    let mut off = Vec::new();
    let mut bad = Vec::new();
    for (wa, ma, a) in &elems {
        let ea = eta(a);
        for (wb, mb, b) in &elems {
            let eb = eta(b);
            pairs += 1;
            for m in (3 * (wa + wb) - 1 - top)..=(3 * (wa + wb) - 1) {
                let p = cube.product(&ea, m, &eb)?;
                let mut d = p;
                if (m - 2).rem_euclid(3) == 0 {
                    let l = (m - 2).div_euclid(3);
                    d.add_scaled(&-Q::from_integer(1.into()), &eta(&va.product(a, l, b)?));
                }
                modes += 1;
                if !in_cyclic_norm(&cube.reduce(&d, f3)?) {
                    let msg = format!("{ma:?} mode {m} {mb:?}");
                    if (m - 2).rem_euclid(3) == 0 {
                        bad.push(msg);
                    } else {
                        off.push(msg);
                    }
                }
            }
        }
    }
    Ok(ModeSupportReport { lattice: va.lattice().name(), pairs, modes_checked: modes, off_support_failures: off, eta_failures: bad })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TransversalReport {
    pub cube_weight: usize,
    pub ambient: usize,
    pub fixed: usize,
    pub norm: usize,
    pub eta_image: usize,
    pub covers: bool,
    pub eta_additive_samples: usize,
    pub eta_additive_failures: usize,
}

/// h-basis triples of total weight `n`.
fn cube_basis(va: &LatticeVA, n: usize) -> Result<Vec<Triple>> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            let c = n - a - b;
            for x in va.basis(a)?.iter() {
                for y in va.basis(b)?.iter() {
                    for z in va.basis(c)?.iter() {
                        out.push((x.clone(), y.clone(), z.clone()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Over `F_3` at cube weight `3w`: fixed points of `g` equal `Im(eta) + nu(cube)`,
/// and `eta(x + y) - eta(x) - eta(y)` lies in the norm for random `x, y`.
pub fn eta_transversal_check<R: Rng>(va: &LatticeVA, w: usize, samples: usize, rng: &mut R) -> Result<TransversalReport> {
    let f3 = Ring::PrimeField(3);
    let basis = cube_basis(va, 3 * w)?;
    let dim = basis.len();
    let idx: BTreeMap<&Triple, usize> = basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let rot = |t: &Triple| (t.2.clone(), t.0.clone(), t.1.clone());
    // g - 1 as rows: (g x)_i = x_(g^-1 i)
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim];
    for (j, t) in basis.iter().enumerate() {
        rows[idx[&rot(t)]].push((j, Scalar::one(f3)));
        rows[j].push((j, Scalar::from_i64(f3, -1)));
    }
    let m = FieldMatrix::new(f3, dim, rows.into_iter().map(|e| FVec::from_entries(f3, e)).collect());
    let fixed = Subspace::spanned(f3, dim, m.kernel()?)?;
    let norm = Subspace::spanned(
        f3,
        dim,
        basis.iter().map(|t| {
            let (t1, t2) = (rot(t), rot(&rot(t)));
            FVec::from_entries(f3, [(idx[t], Scalar::one(f3)), (idx[&t1], Scalar::one(f3)), (idx[&t2], Scalar::one(f3))])
        }),
    )?;
    let cube = Cube::new(va);
    let to_vec = |x: &BTreeMap<Triple, Scalar>| FVec::from_entries(f3, x.iter().map(|(t, s)| (idx[t], s.clone())));
    let wbasis = va.basis(w)?;
    let mut image = Subspace::new(f3, dim)?;
    for b in wbasis.iter() {
        image.insert(to_vec(&cube.reduce(&eta(&h_mono(va, b)), f3)?));
    }
    let covers = image.sum(&norm) == fixed;
    let mut failures = 0;
    for _ in 0..samples {
        let mut pick = || {
            let mut x = QElem::zero();
            for _ in 0..3 {
                let b = &wbasis[rng.gen_range(0..wbasis.len())];
                x.add_scaled(&Q::from_integer(rng.gen_range(-2i64..=2).into()), &h_mono(va, b));
            }
            x
        };
        let (x, y) = (pick(), pick());
        let mut d = eta(&(&x + &y));
        d.add_scaled(&-Q::from_integer(1.into()), &eta(&x));
        d.add_scaled(&-Q::from_integer(1.into()), &eta(&y));
        if !in_cyclic_norm(&cube.reduce(&d, f3)?) {
            failures += 1;
        }
    }
    Ok(TransversalReport {
        cube_weight: 3 * w,
        ambient: dim,
        fixed: fixed.rank(),
        norm: norm.rank(),
        eta_image: image.rank(),
        covers,
        eta_additive_samples: samples,
        eta_additive_failures: failures,
    })
}

/// Quotient dimension `fixed / nu` of the cube over `F_3` at cube weight `n`,
/// by counting cyclic orbits of basis triples: only diagonal triples survive.
pub fn cube_quotient_dim(dims: &[u64], n: usize) -> u64 {
    if n.is_multiple_of(3) {
        dims[n / 3]
    } else {
        0
    }
}

/// Orbit counts `(triples, fixed, norm)` at cube weight `n` from graded dimensions.
pub fn cube_orbit_counts(dims: &[u64], n: usize) -> (u128, u128, u128) {
    let mut total: u128 = 0;
    for a in 0..=n {
        for b in 0..=n - a {
            total += dims[a] as u128 * dims[b] as u128 * dims[n - a - b] as u128;
        }
    }
    let diag = cube_quotient_dim(dims, n) as u128;
    let free = (total - diag) / 3;
    (total, free + diag, free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vacuum_and_rotation() {
        let va = LatticeVA::build("A1", 3).unwrap();
        let cube = Cube::new(&va);
        let x = va.heisenberg(0, 1);
        assert_eq!(eta(&x).rotate(), eta(&x));
        assert_eq!(cube.vacuum(), eta(&va.vacuum_elem()));
        let y = CubeElem::tensor(&x, &va.vacuum_elem(), &va.vacuum_elem());
        assert_eq!(cube.product(&cube.vacuum(), -1, &y).unwrap(), y);
        assert!(cube.product(&cube.vacuum(), 0, &y).unwrap().is_zero());
    }

    #[test]
    fn a1_mode_support_to_weight_one() {
        let va = LatticeVA::build("A1", 3).unwrap();
        let r = eta_mode_check(&va, 1).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn a1_transversal_weight_one() {
        let va = LatticeVA::build("A1", 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = eta_transversal_check(&va, 1, 20, &mut rng).unwrap();
        assert!(r.covers && r.eta_additive_failures == 0, "{r:?}");
        assert_eq!(r.fixed, r.norm + 3);
    }

    #[test]
    fn e8_cube_quotient_at_three() {
        let dims = [1u64, 248, 4124, 34752];
        assert_eq!(cube_quotient_dim(&dims, 3), 248);
        let (t, f, n) = cube_orbit_counts(&dims, 3);
        assert_eq!(f - n, 248);
        assert_eq!((t - 248) % 3, 0);
    }
}
