//! Tate quotients `(R (x) IV_X)^gamma / nu(R (x) IV_X)` over `F_p`, `p = |gamma|`.

use rand::Rng;
use serde::Serialize;

use super::identity::field_fixed_and_norm;
use crate::error::{Error, Result};
use crate::lie::{LieMap, Quotient, ReducedAlgebra};
use crate::linalg::{FVec, Subspace};
use crate::roots::{graph_automorphism, GraphAut};
use crate::scalar::{Ring, Scalar};
use crate::va::integral::{ring_product, RElem};
use crate::va::morphism::{gamma_lift, va_generator_action, weight_one_to_lie, GradedMap};
use crate::va::LatticeVA;

#[derive(Clone, Debug)]
pub struct TatePiece {
    pub weight: usize,
    pub fixed: Subspace,
    pub norm: Subspace,
    pub quotient: Quotient,
}

#[derive(Debug)]
pub struct TateQuotient {
    pub va: LatticeVA,
    pub gamma: GraphAut,
    pub ring: Ring,
    pub pieces: Vec<TatePiece>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TateDims {
    pub weight: usize,
    pub ambient: usize,
    pub fixed: usize,
    pub norm: usize,
    pub quotient: usize,
}

impl TateQuotient {
    pub fn build(lattice: &str, order: u32, wmax: usize) -> Result<TateQuotient> {
        let va = LatticeVA::build(lattice, wmax)?;
        let gamma = graph_automorphism(va.lattice(), order)?;
        let ring = Ring::prime_field(order as u64)?;
        let mut pieces = Vec::with_capacity(wmax + 1);
        for n in 0..=wmax {
            let (fixed, norm) = field_fixed_and_norm(&va, &gamma, ring, n)?;
            if !fixed.contains_space(&norm) {
                return Err(Error::CheckFailed { check: "norm_inside_fixed".into(), witness: format!("weight {n}") });
            }
            let reps = fixed.complement_of(&norm);
            let quotient = Quotient::new(ring, fixed.ambient_dim(), reps, &norm)?;
            pieces.push(TatePiece { weight: n, fixed, norm, quotient });
        }
        Ok(TateQuotient { va, gamma, ring, pieces })
    }

    pub fn dims(&self) -> Vec<TateDims> {
        self.pieces
            .iter()
            .map(|p| TateDims {
                weight: p.weight,
                ambient: p.fixed.ambient_dim(),
                fixed: p.fixed.rank(),
                norm: p.norm.rank(),
                quotient: p.quotient.len(),
            })
            .collect()
    }

    /// Projection after the section is the identity on each quotient.
    pub fn section_is_split(&self) -> Result<bool> {
        for p in &self.pieces {
            for i in 0..p.quotient.len() {
                let e = FVec::unit(self.ring, i);
                if p.quotient.project(&p.quotient.lift(&e))? != e {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn random_in<R: Rng>(&self, s: &Subspace, rng: &mut R) -> FVec {
        let mut acc = FVec::zero(self.ring);
        for b in s.basis() {
            let c = Scalar::from_i64(self.ring, rng.gen_range(0..self.ring.characteristic() as i64));
            acc = acc.axpy(&c, &b);
        }
        acc
    }

    /// For fixed `u, v` and norm `x, y`: `u_m v` is fixed and
    /// `(u+x)_m (v+y) - u_m v` lies in the norm. Returns failing samples.
    pub fn product_well_defined<R: Rng>(&self, samples: usize, rng: &mut R) -> Result<Vec<String>> {
        let top = self.pieces.len() - 1;
        let mut bad = Vec::new();
        for _ in 0..samples {
            let (wu, wv, wo) = (rng.gen_range(0..=top), rng.gen_range(0..=top), rng.gen_range(0..=top));
            let m = wu as i64 + wv as i64 - 1 - wo as i64;
            let (pu, pv, po) = (&self.pieces[wu], &self.pieces[wv], &self.pieces[wo]);
            let u = RElem { weight: wu, coords: self.random_in(&pu.fixed, rng) };
            let v = RElem { weight: wv, coords: self.random_in(&pv.fixed, rng) };
            let x = RElem { weight: wu, coords: self.random_in(&pu.norm, rng) };
            let y = RElem { weight: wv, coords: self.random_in(&pv.norm, rng) };
            let uv = ring_product(&self.va, &u, m, &v)?;
            let shifted = ring_product(
                &self.va,
                &RElem { weight: wu, coords: u.coords.add(&x.coords) },
                m,
                &RElem { weight: wv, coords: v.coords.add(&y.coords) },
            )?;
            if !uv.is_zero() && !po.fixed.contains(&uv.coords) {
                bad.push(format!("product of fixed elements leaves the fixed space: ({wu},{wv}) mode {m}"));
            }
            let d = shifted.coords.sub(&uv.coords);
            if !d.is_zero() && !po.norm.contains(&d) {
                bad.push(format!("norm perturbation changes the class: ({wu},{wv}) mode {m}"));
            }
        }
        Ok(bad)
    }

    /// Structure constants of the weight-one quotient under `a_0 b`.
    pub fn weight_one_table(&self) -> Result<Vec<Vec<FVec>>> {
        let p = &self.pieces[1];
        let reps = &p.quotient.reps;
        let mut t = Vec::with_capacity(reps.len());
        for a in reps {
            let mut row = Vec::with_capacity(reps.len());
            for b in reps {
                let c = ring_product(&self.va, &RElem { weight: 1, coords: a.clone() }, 0, &RElem { weight: 1, coords: b.clone() })?;
                row.push(p.quotient.project(&c.coords)?);
            }
            t.push(row);
        }
        Ok(t)
    }

    /// The weight-one quotient, carried into the Chevalley basis, against the
    /// reduced Lie algebra of the same pair: dimensions agree and brackets of
    /// representatives project to the images of the zero-mode products.
    pub fn matches_reduced_lie(&self, lie: &ReducedAlgebra) -> Result<bool> {
        let pos = weight_one_to_lie(&self.va)?;
        let inv: std::collections::BTreeMap<usize, usize> = pos.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let to_lie = |v: &FVec| FVec::from_entries(self.ring, v.entries.iter().map(|(i, c)| (inv[i], c.clone())));
        let p = &self.pieces[1];
        if p.quotient.len() != lie.quotient.len() {
            return Ok(false);
        }
        let g = &lie.data.alg;
        for a in &p.quotient.reps {
            for b in &p.quotient.reps {
                let c = ring_product(&self.va, &RElem { weight: 1, coords: a.clone() }, 0, &RElem { weight: 1, coords: b.clone() })?;
                let br = g.bracket(&to_lie(a), &to_lie(b));
                if lie.quotient.project(&br)? != lie.quotient.project(&to_lie(&c.coords))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Weight-one block of the lifted automorphism against the Lie graph action.
    pub fn gamma_matches_lie(&self, lie_sigma: &LieMap) -> Result<bool> {
        let g = gamma_lift(&self.va, &self.gamma, self.ring, 1)?;
        Ok(crate::va::morphism::weight_one_in_lie_basis(&self.va, &g)?.images() == lie_sigma.images())
    }
}

/// `prod_j x_(gamma^j b)(c_j t)` on the vertex algebra, for an orthogonal orbit.
pub fn va_orbit_generator(va: &LatticeVA, gamma: &GraphAut, root: &[i64], t: &Scalar, wmax: usize) -> Result<GradedMap> {
    let ring = t.ring();
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
            if va.lattice().inner(a, b) != 0 {
                return Err(Error::InvalidArgument(format!("orbit of {root:?} is not orthogonal")));
            }
        }
    }
    let mut acc: Option<GradedMap> = None;
    let mut c = Scalar::one(ring);
    for a in &orbit {
        let x = va_generator_action(va, a, &(&c * t), wmax)?;
        acc = Some(match acc {
            None => x,
            Some(prev) => x.compose(&prev),
        });
        if ring.characteristic() != 2 {
            c = &c * &Scalar::from_i64(ring, gamma.eta(a));
        }
    }
    Ok(acc.expect("orbit is nonempty"))
}

/// Commutes with the lifted `gamma` and preserves the fixed and norm spaces.
pub fn generator_descends(tq: &TateQuotient, phi: &GradedMap) -> Result<bool> {
    let g = gamma_lift(&tq.va, &tq.gamma, tq.ring, phi.top())?;
    for p in &tq.pieces[..=phi.top()] {
        let m = phi.at(p.weight)?;
        let gm = g.at(p.weight)?;
        if m.compose(gm).images() != gm.compose(m).images() || !m.preserves(&p.fixed) || !m.preserves(&p.norm) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::ReducedAlgebra;
    use crate::va::morphism::check_preserves_products;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn d4_order_three_quotient() {
        let tq = TateQuotient::build("D4", 3, 2).unwrap();
        let d = tq.dims();
        assert_eq!((d[0].quotient, d[1].fixed, d[1].norm, d[1].quotient), (1, 14, 7, 7));
        assert!(tq.section_is_split().unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(tq.product_well_defined(60, &mut rng).unwrap().is_empty());
        let lie = ReducedAlgebra::build("A2", 3).unwrap();
        assert!(tq.gamma_matches_lie(&lie.data.sigma).unwrap());
        assert!(tq.matches_reduced_lie(&lie).unwrap());
    }

    #[test]
    fn orbit_generator_descends_and_preserves_products() {
        let tq = TateQuotient::build("D4", 3, 2).unwrap();
        let root = tq.va.lattice().simple_root(0);
        let t = Scalar::one(tq.ring);
        let phi = va_orbit_generator(&tq.va, &tq.gamma, &root, &t, 2).unwrap();
        assert!(generator_descends(&tq, &phi).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(check_preserves_products(&tq.va, &phi, 40, &mut rng).unwrap().passed());
    }
}
