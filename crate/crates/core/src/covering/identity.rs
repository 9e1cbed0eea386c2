//! Fixed points, norm image and the sub-form `IV_(X^gamma)` in one weight.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{FVec, FieldMatrix, Subspace, ZLattice, ZVec};
use crate::roots::{graph_automorphism, GraphAut};
use crate::scalar::{Ring, Scalar};
use crate::va::integral::s_poly_h;
use crate::va::mono::{coloured_partitions, Mono, Parts};
use crate::va::morphism::gamma_signed_perm;
use crate::va::subva::signed_perm_fixed;
use crate::va::LatticeVA;

/// `nu(b_j) = sum_k gamma^k b_j` for each basis vector.
pub fn norm_images(perm: &[(usize, i64)], p: u32) -> Vec<BTreeMap<usize, i64>> {
    (0..perm.len())
        .map(|j| {
            let mut v: BTreeMap<usize, i64> = BTreeMap::new();
            let (mut i, mut s) = (j, 1i64);
            for _ in 0..p {
                *v.entry(i).or_insert(0) += s;
                let (k, t) = perm[i];
                s *= t;
                i = k;
            }
            v.retain(|_, x| *x != 0);
            v
        })
        .collect()
}

fn zvec(v: &BTreeMap<usize, i64>) -> ZVec {
    ZVec::from_entries(v.iter().map(|(i, x)| (*i, BigInt::from(*x))))
}

/// h-coordinates of the standard integral form of the fixed sublattice.
pub fn fixed_sublattice_form(va: &LatticeVA, gamma: &GraphAut, n: usize) -> Result<ZLattice> {
    let r = va.rank();
    let idx = va.basis_index(n)?;
    let fixed: Vec<Vec<i64>> = gamma
        .fixed_sublattice()
        .basis()
        .iter()
        .map(|v| v.to_dense(r).iter().map(|x| i64::try_from(x).expect("small lattice entries")).collect())
        .collect();
    let k = fixed.len();
    let mut gens = Vec::new();
    for beta in va.lattice().vectors_up_to(2 * n as i64) {
        if gamma.apply(&beta) != beta {
            continue;
        }
        let half = (va.lattice().norm(&beta) / 2) as usize;
        for shape in coloured_partitions(k, n - half) {
            let mut poly: BTreeMap<Parts, BigInt> = [(Parts::new(), BigInt::one())].into_iter().collect();
            for (c, d) in &shape {
                let factor = s_poly_h(r, &fixed[*c as usize], *d as usize);
                let mut next: BTreeMap<Parts, BigInt> = BTreeMap::new();
                for (p, x) in &poly {
                    for (q, y) in &factor {
                        let mut m: Parts = p.iter().chain(q.iter()).copied().collect();
                        m.sort_unstable();
                        *next.entry(m).or_insert_with(BigInt::zero) += x * y;
                    }
                }
                next.retain(|_, c| !c.is_zero());
                poly = next;
            }
            let lat: crate::va::mono::Point = beta.iter().map(|x| *x as i16).collect();
            let mut e = Vec::with_capacity(poly.len());
            for (parts, c) in poly {
                let m = Mono { parts, lattice: lat.clone() };
                e.push((*idx.get(&m).ok_or_else(|| Error::Dimension(format!("{m:?}")))?, c));
            }
            gens.push(ZVec::from_entries(e));
        }
    }
    Ok(ZLattice::from_generators(idx.len(), gens))
}

/// The three lattices of the covering identity in one weight.
#[derive(Clone, Debug)]
pub struct CoveringLattices {
    pub fixed: ZLattice,
    pub norm: ZLattice,
    pub sub: ZLattice,
}

pub fn covering_lattices(va: &LatticeVA, gamma: &GraphAut, n: usize) -> Result<CoveringLattices> {
    let perm = gamma_signed_perm(va, gamma, n, false)?;
    let dim = perm.len();
    Ok(CoveringLattices {
        fixed: signed_perm_fixed(&perm),
        norm: ZLattice::from_generators(dim, norm_images(&perm, gamma.order()).iter().map(zvec)),
        sub: fixed_sublattice_form(va, gamma, n)?,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoveringReport {
    pub lattice: String,
    pub order: u32,
    pub weight: usize,
    pub ambient_dim: usize,
    pub fixed_rank: usize,
    pub norm_rank: usize,
    pub sub_rank: usize,
    pub equal: bool,
    pub witness: Option<String>,
}

/// `(IV_X)^gamma = IV_(X^gamma) + nu(IV_X)` as an exact lattice identity.
pub fn check_covering(lattice: &str, order: u32, n: usize) -> Result<CoveringReport> {
    let va = LatticeVA::build(lattice, n)?;
    let gamma = graph_automorphism(va.lattice(), order)?;
    check_covering_in(&va, &gamma, n)
}

pub fn check_covering_in(va: &LatticeVA, gamma: &GraphAut, n: usize) -> Result<CoveringReport> {
    let l = covering_lattices(va, gamma, n)?;
    let sum = l.sub.sum(&l.norm)?;
    let equal = sum == l.fixed;
    let witness = if equal {
        None
    } else if let Some(v) = l.fixed.basis().iter().find(|v| !sum.contains_vec(v)) {
        Some(format!("fixed vector {:?} not in sub + norm", v.0))
    } else {
        sum.basis().iter().find(|v| !l.fixed.contains_vec(v)).map(|v| format!("{:?} in sub + norm is not fixed", v.0))
    };
    Ok(CoveringReport {
        lattice: va.lattice().name(),
        order: gamma.order(),
        weight: n,
        ambient_dim: l.fixed.dim(),
        fixed_rank: l.fixed.rank(),
        norm_rank: l.norm.rank(),
        sub_rank: l.sub.rank(),
        equal,
        witness,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoprimeReport {
    pub lattice: String,
    pub order: u32,
    pub ring: String,
    pub weight: usize,
    pub fixed_dim: usize,
    pub norm_dim: usize,
    pub equal: bool,
}

/// Signed permutation as a matrix over a field, minus `shift` times the identity.
fn perm_rows(ring: Ring, perm: &[(usize, i64)], shift: i64) -> FieldMatrix {
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); perm.len()];
    for (j, (i, s)) in perm.iter().enumerate() {
        rows[*i].push((j, Scalar::from_i64(ring, *s)));
    }
    for (i, r) in rows.iter_mut().enumerate() {
        r.push((i, Scalar::from_i64(ring, -shift)));
    }
    FieldMatrix::new(ring, perm.len(), rows.into_iter().map(|e| FVec::from_entries(ring, e)).collect())
}

/// Fixed space (kernel of `gamma - 1`) and norm image over a field.
pub fn field_fixed_and_norm(va: &LatticeVA, gamma: &GraphAut, ring: Ring, n: usize) -> Result<(Subspace, Subspace)> {
    let perm = gamma_signed_perm(va, gamma, n, ring.characteristic() == 2)?;
    let dim = perm.len();
    let fixed = Subspace::spanned(ring, dim, perm_rows(ring, &perm, 1).kernel()?)?;
    let norm = Subspace::spanned(
        ring,
        dim,
        norm_images(&perm, gamma.order())
            .iter()
            .map(|v| FVec::from_entries(ring, v.iter().map(|(i, x)| (*i, Scalar::from_i64(ring, *x))))),
    )?;
    Ok((fixed, norm))
}

/// `nu(R (x) IV_X) = (R (x) IV_X)^gamma` when `char R` is prime to the order.
pub fn check_coprime_collapse(lattice: &str, order: u32, ring: Ring, n: usize) -> Result<CoprimeReport> {
    let c = ring.characteristic();
    if c != 0 && c.is_multiple_of(order as u64) {
        return Err(Error::InvalidArgument(format!("characteristic {c} divides {order}")));
    }
    let va = LatticeVA::build(lattice, n)?;
    let gamma = graph_automorphism(va.lattice(), order)?;
    let (fixed, norm) = field_fixed_and_norm(&va, &gamma, ring, n)?;
    Ok(CoprimeReport {
        lattice: va.lattice().name(),
        order,
        ring: ring.to_string(),
        weight: n,
        fixed_dim: fixed.rank(),
        norm_dim: norm.rank(),
        equal: fixed == norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{left_kernel, IntMatrix};

    #[test]
    fn orbit_sums_agree_with_integer_kernel() {
        let va = LatticeVA::build("A3", 2).unwrap();
        let g = graph_automorphism(va.lattice(), 2).unwrap();
        for n in 0..=2 {
            let perm = gamma_signed_perm(&va, &g, n, false).unwrap();
            let dim = perm.len();
            let rows: Vec<ZVec> = perm
                .iter()
                .enumerate()
                .map(|(j, (i, s))| {
                    let mut e = vec![(*i, BigInt::from(*s))];
                    e.push((j, BigInt::from(-1)));
                    ZVec::from_entries(e)
                })
                .collect();
            let k = left_kernel(&IntMatrix::from_rows(dim, rows));
            assert_eq!(k, signed_perm_fixed(&perm), "weight {n}");
        }
    }

    #[test]
    fn small_weights_of_d4() {
        let r0 = check_covering("D4", 3, 0).unwrap();
        assert!(r0.equal && r0.fixed_rank == 1);
        let r1 = check_covering("D4", 3, 1).unwrap();
        assert!(r1.equal, "{r1:?}");
        assert_eq!((r1.fixed_rank, r1.sub_rank), (14, 8));
    }

    #[test]
    fn coprime_collapse_small() {
        assert!(check_coprime_collapse("D4", 3, Ring::PrimeField(2), 1).unwrap().equal);
        assert!(check_coprime_collapse("A3", 2, Ring::Rat, 1).unwrap().equal);
        assert!(check_coprime_collapse("A3", 2, Ring::PrimeField(2), 1).is_err());
    }
}
