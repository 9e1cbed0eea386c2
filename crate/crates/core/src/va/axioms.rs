//! Vertex algebra identities as computable defects.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use rand::Rng;
use serde::Serialize;

use super::engine::{LatticeVA, QElem};
use super::integral::{ring_product, RElem};
use super::morphism::random_element;
use super::symfun::Q;
use crate::error::{Error, Result};
use crate::linalg::FVec;
use crate::scalar::{Ring, Scalar};

pub fn binom_signed(n: i64, k: i64) -> Q {
    // C(n, k) for any integer n and k >= 0
    if k < 0 {
        return Q::from_integer(BigInt::from(0));
    }
    if n >= 0 {
        return Q::from_integer(BigInt::from(if k > n { 0 } else { binomial(n, k) }));
    }
    let v = binomial(-n + k - 1, k);
    Q::from_integer(BigInt::from(if k % 2 == 0 { v } else { -v }))
}

/// Largest mode `k` with `a_k b` possibly nonzero for weights `wa`, `wb`.
fn top_mode(wa: i64, wb: i64) -> i64 {
    wa + wb - 1
}

/// `LHS - RHS` of the Borcherds identity for homogeneous `a, b, c`:
/// `sum_i C(m,i) (a_(q+i) b)_(m+n-i) c
///  = sum_i (-1)^i C(q,i) (a_(q+m-i) (b_(n+i) c) - (-1)^q b_(n+q-i) (a_(m+i) c))`.
pub fn borcherds_defect(va: &LatticeVA, a: &QElem, b: &QElem, c: &QElem, m: i64, n: i64, q: i64) -> Result<QElem> {
    let wa = va.weight_of(a).unwrap_or(0);
    let wb = va.weight_of(b).unwrap_or(0);
    let wc = va.weight_of(c).unwrap_or(0);
    let mut lhs = QElem::zero();
    for i in 0..=(top_mode(wa, wb) - q).max(-1) {
        let coef = binom_signed(m, i);
        if coef == Q::from_integer(BigInt::from(0)) {
            continue;
        }
        let ab = va.product(a, q + i, b)?;
        if ab.is_zero() {
            continue;
        }
        lhs.add_scaled(&coef, &va.product(&ab, m + n - i, c)?);
    }
    let mut rhs = QElem::zero();
    let imax = (top_mode(wb, wc) - n).max(top_mode(wa, wc) - m).max(-1);
    let qsign = if q.rem_euclid(2) == 0 { Q::from_integer(BigInt::from(1)) } else { Q::from_integer(BigInt::from(-1)) };
    for i in 0..=imax {
        let coef = binom_signed(q, i);
        if coef == Q::from_integer(BigInt::from(0)) {
            continue;
        }
        let coef = if i % 2 == 0 { coef } else { -coef };
        let bc = va.product(b, n + i, c)?;
        if !bc.is_zero() {
            rhs.add_scaled(&coef, &va.product(a, q + m - i, &bc)?);
        }
        let ac = va.product(a, m + i, c)?;
        if !ac.is_zero() {
            rhs.add_scaled(&-(&coef * &qsign), &va.product(b, n + q - i, &ac)?);
        }
    }
    Ok(&lhs - &rhs)
}

/// `(T a)_n - (-n) a_(n-1)` applied to `b`.
pub fn translation_defect(va: &LatticeVA, a: &QElem, b: &QElem, n: i64) -> Result<QElem> {
    let ta = va.translate(a)?;
    let lhs = va.product(&ta, n, b)?;
    let rhs = va.product(a, n - 1, b)?.scale(&Q::from_integer(BigInt::from(-n)));
    Ok(&lhs - &rhs)
}

/// Output weight of `(a_(q) b)_(m+n) c`-type terms in the identity.
pub fn borcherds_weight(wa: i64, wb: i64, wc: i64, m: i64, n: i64, q: i64) -> i64 {
    wa + wb + wc - m - n - q - 2
}

/// Borcherds defect for homogeneous elements of `R (x) IV_L`, with every
/// product taken in `R`.
pub fn borcherds_defect_ring(va: &LatticeVA, a: &RElem, b: &RElem, c: &RElem, m: i64, n: i64, q: i64) -> Result<RElem> {
    let ring = a.ring();
    let (wa, wb, wc) = (a.weight as i64, b.weight as i64, c.weight as i64);
    let out = borcherds_weight(wa, wb, wc, m, n, q);
    let sc = |x: &Q| Scalar::from_rational(ring, x);
    let mut acc = FVec::zero(ring);
    if out < 0 {
        return Ok(RElem { weight: 0, coords: acc });
    }
    for i in 0..=(top_mode(wa, wb) - q).max(-1) {
        let coef = sc(&binom_signed(m, i))?;
        if coef.is_zero() {
            continue;
        }
        let ab = ring_product(va, a, q + i, b)?;
        if ab.is_zero() {
            continue;
        }
        acc = acc.axpy(&coef, &ring_product(va, &ab, m + n - i, c)?.coords);
    }
    let imax = (top_mode(wb, wc) - n).max(top_mode(wa, wc) - m).max(-1);
    for i in 0..=imax {
        let mut coef = binom_signed(q, i);
        if i % 2 == 1 {
            coef = -coef;
        }
        if coef.is_zero() {
            continue;
        }
        let bc = ring_product(va, b, n + i, c)?;
        if !bc.is_zero() {
            acc = acc.axpy(&-sc(&coef)?, &ring_product(va, a, q + m - i, &bc)?.coords);
        }
        let ac = ring_product(va, a, m + i, c)?;
        if !ac.is_zero() {
            let s = if q.rem_euclid(2) == 0 { coef } else { -coef };
            acc = acc.axpy(&sc(&s)?, &ring_product(va, b, n + q - i, &ac)?.coords);
        }
    }
    Ok(RElem { weight: out as usize, coords: acc })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BorcherdsReport {
    pub lattice: String,
    pub ring: String,
    pub triples: usize,
    pub rejected: usize,
    pub failures: Vec<String>,
}

/// Random homogeneous triples of weight `<= max_weight` and modes in
/// `[-3, 3]`; samples whose intermediate weights leave the truncation are
/// redrawn and counted as rejected.
pub fn borcherds_suite<R: Rng>(va: &LatticeVA, ring: Ring, max_weight: usize, triples: usize, rng: &mut R) -> Result<BorcherdsReport> {
    let mut done = 0;
    let mut rejected = 0;
    let mut failures = Vec::new();
    while done < triples {
        let w = [rng.gen_range(0..=max_weight), rng.gen_range(0..=max_weight), rng.gen_range(0..=max_weight)];
        let (m, n, q) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let a = random_element(va, ring, w[0], 2, rng)?;
        let b = random_element(va, ring, w[1], 2, rng)?;
        let c = random_element(va, ring, w[2], 2, rng)?;
        match borcherds_defect_ring(va, &a, &b, &c, m, n, q) {
            Ok(d) => {
                done += 1;
                if !d.is_zero() {
                    failures.push(format!("weights {w:?} modes ({m},{n},{q})"));
                }
            }
            Err(Error::Truncation { .. }) => rejected += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(BorcherdsReport { lattice: va.lattice().name(), ring: ring.to_string(), triples: done, rejected, failures })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomReport {
    pub lattice: String,
    pub elements: usize,
    pub vacuum_failures: Vec<String>,
    pub creation_failures: Vec<String>,
    pub translation_failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.vacuum_failures.is_empty() && self.creation_failures.is_empty() && self.translation_failures.is_empty()
    }
}

/// Vacuum and creation on every basis monomial of weight `< wmax`, and
/// translation against every weight-one monomial.
pub fn basic_axioms(va: &LatticeVA) -> Result<AxiomReport> {
    let vac = va.vacuum_elem();
    let top = va.wmax().saturating_sub(1);
    let ones: Vec<QElem> = if va.wmax() >= 2 { va.basis(1)?.iter().map(|m| QElem::mono(m.clone())).collect() } else { Vec::new() };
    let (mut vf, mut cf, mut tf) = (Vec::new(), Vec::new(), Vec::new());
    let mut count = 0;
    for w in 0..=top {
        for m in va.basis(w)?.iter() {
            count += 1;
            let a = QElem::mono(m.clone());
            let wi = w as i64;
            for n in -2..=wi {
                let v = va.product(&vac, n, &a)?;
                if (n == -1 && v != a) || (n != -1 && !v.is_zero()) {
                    vf.push(format!("1_({n}) {m:?}"));
                }
            }
            if va.product(&a, -1, &vac)? != a {
                cf.push(format!("{m:?}_(-1) 1"));
            }
            for n in 0..=wi {
                if !va.product(&a, n, &vac)?.is_zero() {
                    cf.push(format!("{m:?}_({n}) 1"));
                }
            }
            if w + 1 < va.wmax() {
                for b in &ones {
                    for n in -1..=(wi + 1) {
                        if !translation_defect(va, &a, b, n)?.is_zero() {
                            tf.push(format!("T {m:?} mode {n}"));
                        }
                    }
                }
            }
        }
    }
    Ok(AxiomReport { lattice: va.lattice().name(), elements: count, vacuum_failures: vf, creation_failures: cf, translation_failures: tf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::va::integral::h_mono;

    #[test]
    fn borcherds_on_a1_small() {
        let va = LatticeVA::build("A1", 8).unwrap();
        let b1 = va.basis(1).unwrap().to_vec();
        let b2 = va.basis(2).unwrap().to_vec();
        let elems: Vec<QElem> = b1.iter().chain(b2.iter()).map(|m| h_mono(&va, m)).collect();
        let mut count = 0;
        for a in &elems {
            for b in &elems {
                for c in elems.iter().take(4) {
                    for (m, n, q) in [(0, 0, 0), (1, -1, 0), (-1, 0, 1), (0, 1, -1), (2, -2, 1), (-1, -1, 2)] {
                        let (wa, wb, wc) = (va.weight_of(a).unwrap(), va.weight_of(b).unwrap(), va.weight_of(c).unwrap());
                        if borcherds_weight(wa, wb, wc, m, n, q) > 8 {
                            continue;
                        }
                        let d = borcherds_defect(&va, a, b, c, m, n, q).unwrap();
                        assert!(d.is_zero(), "{a:?} {b:?} {c:?} {m} {n} {q}: {d:?}");
                        count += 1;
                    }
                }
            }
        }
        assert!(count > 100);
    }

    #[test]
    fn ring_suite_over_z_and_f3() {
        use rand::SeedableRng;
        let va = LatticeVA::build("A2", 5).unwrap();
        for ring in [Ring::Int, Ring::PrimeField(3)] {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
            let r = borcherds_suite(&va, ring, 2, 40, &mut rng).unwrap();
            assert!(r.failures.is_empty(), "{r:?}");
        }
    }

    #[test]
    fn vacuum_creation_translation_on_a1() {
        let va = LatticeVA::build("A1", 4).unwrap();
        let r = basic_axioms(&va).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn translation_on_a2() {
        let va = LatticeVA::build("A2", 6).unwrap();
        for a in va.basis(1).unwrap().iter().chain(va.basis(2).unwrap().iter()).step_by(3) {
            for b in va.basis(1).unwrap().iter().step_by(2) {
                for n in -2..=2 {
                    let d = translation_defect(&va, &h_mono(&va, a), &h_mono(&va, b), n).unwrap();
                    assert!(d.is_zero(), "{a:?} {b:?} {n}");
                }
            }
        }
    }
}
