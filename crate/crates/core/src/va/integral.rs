//! The standard integral form `IV_L` and its specializations.
//!
//! A weight space of `IV_L` has the `Z`-basis of monomials
//! `s_(a_c1, n1) ... s_(a_ck, nk) (x) e^beta` in the simple-root colours; its
//! coordinates are the "h-coordinates" used throughout. Conversions go
//! through the symmetric-function tables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::engine::{LatticeVA, QElem};
use super::mono::{Mono, Parts};
use super::symfun::{combine_colours, complete_series_power, split_colours, Q};
use crate::error::{Error, Result};
use crate::linalg::{FVec, ZLattice, ZVec};
use crate::scalar::{Ring, Scalar};

/// Fock monomial `-> ` integral combination of h-monomials.
pub fn fock_to_h(va: &LatticeVA, m: &Mono) -> Vec<(Mono, BigInt)> {
    let factors = split_colours(&m.parts).into_iter().map(|(c, lam)| (c, va.sym().power_to_complete(&lam))).collect();
    combine_colours(factors).into_iter().map(|(p, x)| (Mono { parts: p, lattice: m.lattice.clone() }, x)).collect()
}

/// h-monomial `->` rational combination of Fock monomials.
pub fn h_to_fock(va: &LatticeVA, m: &Mono) -> Vec<(Mono, Q)> {
    let factors = split_colours(&m.parts).into_iter().map(|(c, lam)| (c, va.sym().complete_to_power(&lam))).collect();
    combine_colours(factors).into_iter().map(|(p, x)| (Mono { parts: p, lattice: m.lattice.clone() }, x)).collect()
}

/// Rational h-coordinates of a Fock element.
pub fn to_h(va: &LatticeVA, a: &QElem) -> BTreeMap<Mono, Q> {
    let mut out: BTreeMap<Mono, Q> = BTreeMap::new();
    for (m, x) in a.terms() {
        for (h, c) in fock_to_h(va, m) {
            *out.entry(h).or_insert_with(Q::zero) += x * Q::from_integer(c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Integral h-coordinates, or an error naming the offending coefficient.
pub fn to_h_integral(va: &LatticeVA, a: &QElem) -> Result<BTreeMap<Mono, BigInt>> {
    to_h(va, a)
        .into_iter()
        .map(|(m, c)| if c.is_integer() { Ok((m, c.to_integer())) } else { Err(Error::NonIntegral(format!("{c} at {m:?}"))) })
        .collect()
}

pub fn from_h<'a>(va: &LatticeVA, coords: impl IntoIterator<Item = (&'a Mono, Q)>) -> QElem {
    let mut out = QElem::zero();
    for (m, x) in coords {
        for (f, c) in h_to_fock(va, m) {
            out.add_term(f, &x * &c);
        }
    }
    out
}

pub fn h_mono(va: &LatticeVA, m: &Mono) -> QElem {
    from_h(va, [(m, Q::one())])
}

pub fn is_in_integral_form(va: &LatticeVA, a: &QElem) -> bool {
    to_h(va, a).values().all(|c| c.is_integer())
}

/// `s_(beta, n)` in h-coordinates: coefficient of `z^n` in `prod_i H_i(z)^(beta_i)`.
pub fn s_poly_h(rank: usize, beta: &[i64], n: usize) -> Vec<(Parts, BigInt)> {
    let mut acc: Vec<BTreeMap<Parts, BigInt>> =
        (0..=n).map(|k| if k == 0 { [(Parts::new(), BigInt::one())].into_iter().collect() } else { BTreeMap::new() }).collect();
    for (i, &b) in beta.iter().enumerate().take(rank) {
        if b == 0 {
            continue;
        }
        let series = complete_series_power(b, n);
        let mut next: Vec<BTreeMap<Parts, BigInt>> = vec![BTreeMap::new(); n + 1];
        for d in 0..=n {
            for (p, x) in &acc[d] {
                for (k, terms) in series.iter().enumerate().take(n - d + 1) {
                    for (lam, y) in terms {
                        let mut q: Parts = p.clone();
                        q.extend(lam.iter().map(|k| (i as u8, *k)));
                        q.sort_unstable();
                        *next[d + k].entry(q).or_insert_with(BigInt::zero) += x * y;
                    }
                }
            }
        }
        acc = next;
    }
    acc.swap_remove(n).into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// A `Z`-lattice inside a weight space, in h-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedZModule {
    pub weight: usize,
    pub lattice: ZLattice,
}

impl GradedZModule {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn contains(&self, va: &LatticeVA, a: &QElem) -> Result<bool> {
        Ok(match coords_z(va, a, self.weight) {
            Ok(v) => self.lattice.contains_vec(&v),
            Err(Error::NonIntegral(_)) => false,
            Err(e) => return Err(e),
        })
    }
}

/// `(IV_L)_n`: all of `Z^dim` in h-coordinates.
pub fn integral_form_basis(va: &LatticeVA, n: usize) -> Result<GradedZModule> {
    let dim = va.basis(n)?.len();
    Ok(GradedZModule { weight: n, lattice: ZLattice::full(dim) })
}

/// Integral h-coordinate vector of a weight-`n` element.
pub fn coords_z(va: &LatticeVA, a: &QElem, n: usize) -> Result<ZVec> {
    let idx = va.basis_index(n)?;
    let h = to_h_integral(va, a)?;
    let mut e = Vec::with_capacity(h.len());
    for (m, c) in h {
        let i = *idx.get(&m).ok_or_else(|| Error::Dimension(format!("{m:?} is not of weight {n}")))?;
        e.push((i, c));
    }
    Ok(ZVec::from_entries(e))
}

/// Rational h-coordinates as a dense map from basis index.
pub fn coords_q(va: &LatticeVA, a: &QElem, n: usize) -> Result<BTreeMap<usize, Q>> {
    let idx = va.basis_index(n)?;
    to_h(va, a)
        .into_iter()
        .map(|(m, c)| idx.get(&m).map(|i| (*i, c)).ok_or_else(|| Error::Dimension(format!("{m:?} is not of weight {n}"))))
        .collect()
}

/// Element from integral h-coordinates.
pub fn from_coords_z(va: &LatticeVA, v: &ZVec, n: usize) -> Result<QElem> {
    let b = va.basis(n)?;
    Ok(from_h(va, v.0.iter().map(|(i, c)| (&b[*i], Q::from_integer(c.clone())))))
}

/// Splits a scalar into rational real and imaginary parts of a lift.
pub fn lift_parts(x: &Scalar) -> (Q, Q) {
    if let Some(p) = x.parts() {
        return p;
    }
    if let Some(r) = x.residue() {
        return (Q::from_integer(BigInt::from(r)), Q::zero());
    }
    let (a, b) = x.f9_parts().expect("scalar kinds are exhaustive");
    (Q::from_integer(BigInt::from(a)), Q::from_integer(BigInt::from(b)))
}

/// Homogeneous element of `R (x) IV_L`, in h-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RElem {
    pub weight: usize,
    pub coords: FVec,
}

impl RElem {
    pub fn ring(&self) -> Ring {
        self.coords.ring()
    }

    pub fn basis(ring: Ring, weight: usize, i: usize) -> RElem {
        RElem { weight, coords: FVec::unit(ring, i) }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

/// Real and imaginary Fock parts of a lifted ring element.
fn lift(va: &LatticeVA, a: &RElem) -> Result<(QElem, QElem)> {
    let b = va.basis(a.weight)?;
    let mut re = Vec::new();
    let mut im = Vec::new();
    for (i, x) in &a.coords.entries {
        let (r, s) = lift_parts(x);
        if !r.is_zero() {
            re.push((&b[*i], r));
        }
        if !s.is_zero() {
            im.push((&b[*i], s));
        }
    }
    Ok((from_h(va, re), from_h(va, im)))
}

fn specialize_parts(va: &LatticeVA, ring: Ring, re: &QElem, im: &QElem, n: usize) -> Result<RElem> {
    let r = coords_q(va, re, n)?;
    let i = coords_q(va, im, n)?;
    let keys: std::collections::BTreeSet<usize> = r.keys().chain(i.keys()).copied().collect();
    let mut e = Vec::with_capacity(keys.len());
    for k in keys {
        let a = r.get(&k).cloned().unwrap_or_else(Q::zero);
        let b = i.get(&k).cloned().unwrap_or_else(Q::zero);
        e.push((k, Scalar::gauss(ring, &a, &b)?));
    }
    Ok(RElem { weight: n, coords: FVec::from_entries(ring, e) })
}

/// Image of a rational element in `R (x) IV_L`; fails if the coordinates are
/// not in `R`.
pub fn specialize(va: &LatticeVA, ring: Ring, a: &QElem, n: usize) -> Result<RElem> {
    specialize_parts(va, ring, a, &QElem::zero(), n)
}

/// `u_m v` in `R (x) IV_L`, computed on lifts over `Q` and reduced.
pub fn ring_product(va: &LatticeVA, u: &RElem, m: i64, v: &RElem) -> Result<RElem> {
    let ring = u.ring();
    let n = u.weight as i64 + v.weight as i64 - m - 1;
    if n < 0 {
        return Ok(RElem { weight: 0, coords: FVec::zero(ring) });
    }
    let (ur, ui) = lift(va, u)?;
    let (vr, vi) = lift(va, v)?;
    let rr = va.product(&ur, m, &vr)?;
    let ii = va.product(&ui, m, &vi)?;
    let ri = va.product(&ur, m, &vi)?;
    let ir = va.product(&ui, m, &vr)?;
    specialize_parts(va, ring, &(&rr - &ii), &(&ri + &ir), n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_s_polynomials() {
        let va = LatticeVA::build("A2", 3).unwrap();
        let a = [1i64, 0];
        assert!(va.s_poly(&a, 0).iter().all(|(m, c)| m.is_vacuum() && c.is_one()));
        assert_eq!(QElem::from_terms(va.s_poly(&a, 1).iter().cloned()), va.heisenberg(0, 1));
        // s_{a,2} = (a(-1)^2 + a(-2)) / 2 lies in IV_L and is s-monomial h_2
        let s2 = QElem::from_terms(va.s_poly(&a, 2).iter().cloned());
        let h = to_h_integral(&va, &s2).unwrap();
        assert_eq!(h.len(), 1);
        // recursion n s_n = sum_k a(-k) s_(n-k), via products with the vacuum field
        let beta = [1i64, 1];
        for n in 1..=3usize {
            let lhs = QElem::from_terms(va.s_poly(&beta, n).iter().cloned()).scale(&Q::from_integer(BigInt::from(n)));
            let mut rhs = QElem::zero();
            for k in 1..=n {
                let sk = QElem::from_terms(va.s_poly(&beta, n - k).iter().cloned());
                let ak = va.heisenberg_vec(&beta, k as u8);
                rhs = &rhs + &va.product(&ak, -1, &sk).unwrap();
            }
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn s_poly_h_agrees_with_fock_expansion() {
        let va = LatticeVA::build("A2", 4).unwrap();
        for beta in [[1i64, 1], [2, -1], [-1, 0], [0, 3]] {
            for n in 0..=3 {
                let fock = QElem::from_terms(va.s_poly(&beta, n).iter().cloned());
                let h: Vec<(Mono, BigInt)> = s_poly_h(2, &beta, n)
                    .into_iter()
                    .map(|(p, c)| (Mono { parts: p, lattice: [0i16, 0].into_iter().collect() }, c))
                    .collect();
                let back = from_h(&va, h.iter().map(|(m, c)| (m, Q::from_integer(c.clone()))));
                assert_eq!(fock, back, "{beta:?} {n}");
            }
        }
    }

    #[test]
    fn products_of_integral_basis_are_integral() {
        let va = LatticeVA::build("A2", 4).unwrap();
        for wa in 0..=2 {
            for wb in 0..=2 {
                let ba = va.basis(wa).unwrap();
                let bb = va.basis(wb).unwrap();
                for a in ba.iter().step_by(3) {
                    for b in bb.iter().step_by(2) {
                        let (ea, eb) = (h_mono(&va, a), h_mono(&va, b));
                        for m in -1..=(wa + wb) as i64 - 1 {
                            if (wa + wb) as i64 - m - 1 > 4 {
                                continue;
                            }
                            let p = va.product(&ea, m, &eb).unwrap();
                            assert!(is_in_integral_form(&va, &p), "{a:?} {m} {b:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ring_product_reduces_integral_product() {
        let va = LatticeVA::build("A1", 3).unwrap();
        let r = Ring::PrimeField(3);
        let a = RElem::basis(r, 1, 0);
        let b = RElem::basis(r, 1, 2);
        let p = ring_product(&va, &a, 0, &b).unwrap();
        let ea = h_mono(&va, &va.basis(1).unwrap()[0]);
        let eb = h_mono(&va, &va.basis(1).unwrap()[2]);
        let want = specialize(&va, r, &va.product(&ea, 0, &eb).unwrap(), 1).unwrap();
        assert_eq!(p, want);
    }
}
