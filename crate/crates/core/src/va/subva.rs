//! Sub vertex algebras of `IV_L` generated by a weight-one lattice.

use std::collections::BTreeMap;

use serde::Serialize;

use super::engine::LatticeVA;
use super::integral::{coords_z, from_coords_z};
use crate::error::Result;
use crate::linalg::{ZLattice, ZVec};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GeneratedRanks {
    pub ranks: Vec<usize>,
    pub rounds: usize,
}

/// Closure of `Z 1 (+) S` under all products, weight by weight up to `wmax`.
/// Returns the lattice in each weight.
pub fn generated_lattices(va: &LatticeVA, s: &ZLattice, wmax: usize) -> Result<Vec<ZLattice>> {
    let mut pieces: Vec<ZLattice> = Vec::with_capacity(wmax + 1);
    for n in 0..=wmax {
        let dim = va.basis(n)?.len();
        pieces.push(match n {
            0 => ZLattice::full(1),
            1 => s.clone(),
            _ => ZLattice::zero(dim),
        });
    }
    loop {
        let mut changed = false;
        for out in 2..=wmax {
            let mut gens: Vec<ZVec> = pieces[out].basis().to_vec();
            for i in 1..=out {
                for j in i..=out {
                    let m = i as i64 + j as i64 - 1 - out as i64;
                    let ai: Vec<_> = pieces[i].basis().iter().map(|v| from_coords_z(va, v, i)).collect::<Result<_>>()?;
                    let bj: Vec<_> = pieces[j].basis().iter().map(|v| from_coords_z(va, v, j)).collect::<Result<_>>()?;
                    for a in &ai {
                        for b in &bj {
                            let p = va.product(a, m, b)?;
                            if !p.is_zero() {
                                gens.push(coords_z(va, &p, out)?);
                            }
                            if i != j {
                                let q = va.product(b, m, a)?;
                                if !q.is_zero() {
                                    gens.push(coords_z(va, &q, out)?);
                                }
                            }
                        }
                    }
                }
            }
            let next = ZLattice::from_generators(pieces[out].dim(), gens);
            if next != pieces[out] {
                pieces[out] = next;
                changed = true;
            }
        }
        if !changed {
            return Ok(pieces);
        }
    }
}

pub fn generated_ranks(va: &LatticeVA, s: &ZLattice, wmax: usize) -> Result<Vec<usize>> {
    Ok(generated_lattices(va, s, wmax)?.iter().map(|l| l.rank()).collect())
}

/// Fixed lattice of a signed permutation: one orbit sum per orbit that
/// returns to its start with sign `+1`.
pub fn signed_perm_fixed(perm: &[(usize, i64)]) -> ZLattice {
    let mut seen = vec![false; perm.len()];
    let mut gens = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut v: BTreeMap<usize, i64> = BTreeMap::new();
        let (mut i, mut s) = (start, 1i64);
        loop {
            seen[i] = true;
            v.insert(i, s);
            let (j, t) = perm[i];
            s *= t;
            i = j;
            if i == start {
                break;
            }
        }
        if s == 1 {
            gens.push(ZVec::from_entries(v.into_iter().map(|(k, x)| (k, x.into()))));
        }
    }
    ZLattice::from_generators(perm.len(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::va::morphism::gamma_signed_perm;
    use crate::roots::graph_automorphism;

    #[test]
    fn fixed_point_algebras_have_folded_dimensions() {
        for (name, p, want) in [("D4", 3, 14), ("E6", 2, 52), ("A3", 2, 10), ("D5", 2, 36)] {
            let va = LatticeVA::build(name, 1).unwrap();
            let g = graph_automorphism(va.lattice(), p).unwrap();
            let fixed = signed_perm_fixed(&gamma_signed_perm(&va, &g, 1, false).unwrap());
            assert_eq!(fixed.rank(), want, "{name}");
        }
    }

    #[test]
    fn generated_weight_one_is_the_generating_set() {
        let va = LatticeVA::build("D4", 2).unwrap();
        let g = graph_automorphism(va.lattice(), 3).unwrap();
        let fixed = signed_perm_fixed(&gamma_signed_perm(&va, &g, 1, false).unwrap());
        let pieces = generated_lattices(&va, &fixed, 2).unwrap();
        assert_eq!(pieces[1], fixed);
        assert_eq!(pieces[0].rank(), 1);
        assert!(pieces[2].rank() > 0);
    }
}
