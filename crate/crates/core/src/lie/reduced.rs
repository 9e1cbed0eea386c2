//! Fixed subalgebras under a graph automorphism, norm ideals, reduced
//! algebras of the exceptional pairs and the automorphisms they inherit.

use serde::Serialize;

use super::algebra::LieAlgebra;
use super::generator::{chevalley_generator, graph_action, norm_map, orbit_generator, LieMap};
use super::structure::{Coordinatizer, Quotient, StructAlg};
use crate::error::{Error, Result};
use crate::linalg::{FVec, FieldMatrix, Subspace};
use crate::roots::{GraphAut, RootLattice};
use crate::scalar::{Ring, Scalar};

/// `(X, gamma)` from which an exceptional pair `(X', p)` arises.
pub fn ancestor(xprime: &str, p: u32) -> Result<(RootLattice, GraphAut)> {
    let bad = || Error::NotExceptional(xprime.to_string(), p);
    let xp = RootLattice::parse(xprime).map_err(|_| bad())?;
    let name = match (xp.name().as_str(), p) {
        ("A2", 3) => "D4",
        ("A1", 2) => "A2",
        ("D4", 2) => "E6",
        ("A3", 2) => "D4",
        ("D5", 2) => "D6",
        ("D6", 2) => "D7",
        ("D7", 2) => "D8",
        _ => return Err(bad()),
    };
    let l = RootLattice::parse(name)?;
    let gamma = if name == "A2" { GraphAut::diagram_flip(&l)? } else { GraphAut::new(&l, p)? };
    Ok((l, gamma))
}

pub const EXCEPTIONAL_PAIRS: [(&str, u32); 7] =
    [("A2", 3), ("A1", 2), ("D4", 2), ("A3", 2), ("D5", 2), ("D6", 2), ("D7", 2)];

/// Fixed subalgebra `C = ker(gamma - 1)` and `N = Im(nu) ∩ C` inside a
/// Chevalley algebra over a field.
#[derive(Clone, Debug)]
pub struct FixedData {
    pub g: LieAlgebra,
    pub gamma: GraphAut,
    pub sigma: LieMap,
    pub alg: StructAlg,
    pub fixed: Subspace,
    pub norm: Subspace,
}

impl FixedData {
    pub fn new(g: LieAlgebra, gamma: GraphAut) -> Result<FixedData> {
        let alg = StructAlg::from_lie(&g)?;
        let sigma = graph_action(&g, &gamma)?;
        let fixed = sigma.fixed_space()?;
        let norm = norm_map(&g, &gamma)?.image()?.intersection(&fixed);
        Ok(FixedData { g, gamma, sigma, alg, fixed, norm })
    }

    /// `[C, N] ⊆ N`.
    pub fn norm_is_ideal(&self) -> bool {
        let nb = self.norm.basis();
        self.fixed.basis().iter().all(|c| nb.iter().all(|n| self.norm.contains(&self.alg.bracket(c, n))))
    }

    pub fn fixed_algebra(&self) -> Result<StructAlg> {
        self.alg.subalgebra(&self.fixed.basis())
    }

    /// Whether `N` lies in the center of `C`.
    pub fn norm_is_central(&self) -> bool {
        let cb = self.fixed.basis();
        self.norm.basis().iter().all(|n| cb.iter().all(|c| self.alg.bracket(c, n).is_zero()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedDims {
    pub fixed: usize,
    pub norm_ideal: usize,
    pub quotient: usize,
    pub center: usize,
    pub cover: usize,
    pub cover_kernel: usize,
}

/// Reduced algebra `C/N` of an exceptional pair together with the covering
/// subalgebra `g'` of type `X'`.
#[derive(Clone, Debug)]
pub struct ReducedAlgebra {
    pub pair: (String, u32),
    pub ancestor: String,
    pub data: FixedData,
    pub quotient: Quotient,
    pub cover: Vec<FVec>,
    pub cover_kernel: Subspace,
}

impl ReducedAlgebra {
    pub fn build(xprime: &str, p: u32) -> Result<ReducedAlgebra> {
        let (l, gamma) = ancestor(xprime, p)?;
        let name = l.name();
        let g = LieAlgebra::build(&name, Ring::prime_field(p as u64)?)?;
        let data = FixedData::new(g, gamma)?;
        let fail = |check: &str, witness: String| Error::CheckFailed { check: check.into(), witness };
        if !data.fixed.contains_space(&data.norm) || !data.norm_is_ideal() {
            return Err(fail("norm_ideal", name.clone()));
        }
        let quotient = data.alg.quotient(&data.fixed, &data.norm)?;
        let cover = cover_basis(&data);
        let cover_space = Subspace::spanned(data.g.ring(), data.g.dim(), cover.iter().cloned())?;
        if !data.alg.is_subalgebra(&cover_space) {
            return Err(fail("cover_subalgebra", name.clone()));
        }
        if cover_space.sum(&data.norm) != data.fixed {
            return Err(fail("cover_onto_quotient", name.clone()));
        }
        let cover_kernel = cover_space.intersection(&data.norm);
        let central = cover_kernel.basis().iter().all(|k| cover.iter().all(|c| data.alg.bracket(c, k).is_zero()));
        if !central {
            return Err(fail("cover_kernel_central", name.clone()));
        }
        Ok(ReducedAlgebra { pair: (xprime.to_string(), p), ancestor: name, data, quotient, cover, cover_kernel })
    }

    pub fn dims(&self) -> Result<ReducedDims> {
        Ok(ReducedDims {
            fixed: self.data.fixed.rank(),
            norm_ideal: self.data.norm.rank(),
            quotient: self.quotient.len(),
            center: self.quotient.algebra().center()?.rank(),
            cover: self.cover.len(),
            cover_kernel: self.cover_kernel.rank(),
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.quotient.algebra().is_zero_bracket()
    }

    /// Map induced on `C/N` by an automorphism commuting with `gamma`.
    pub fn descend(&self, phi: &LieMap) -> Result<LieMap> {
        let fail = |c: &str| Error::CheckFailed { check: c.into(), witness: self.ancestor.clone() };
        if phi.compose(&self.data.sigma) != self.data.sigma.compose(phi) {
            return Err(fail("generator_commutes_with_gamma"));
        }
        if !phi.preserves(&self.data.norm) {
            return Err(fail("generator_normalizes_norm_ideal"));
        }
        let ring = phi.ring();
        let images = self.quotient.reps.iter().map(|r| self.quotient.project(&phi.apply(r))).collect::<Result<Vec<_>>>()?;
        Ok(LieMap::new(ring, images))
    }

    /// Whether an automorphism of `C/N = g'/K` comes from one of `g'`:
    /// solves for a correction `g' -> K` making a lift bracket-preserving.
    pub fn lifts_to_cover(&self, phi_q: &LieMap) -> Result<bool> {
        let ring = phi_q.ring();
        let n = self.data.g.dim();
        let m = self.cover.len();
        let kb = self.cover_kernel.basis();
        let d = kb.len();
        if d == 0 {
            return Ok(true);
        }
        let pi: Vec<FVec> = self.cover.iter().map(|b| self.quotient.project(b)).collect::<Result<_>>()?;
        // section of pi through a subset of the cover basis
        let mut chosen = Vec::new();
        let mut span = Subspace::new(ring, self.quotient.len())?;
        for (i, v) in pi.iter().enumerate() {
            if span.insert(v.clone()) {
                chosen.push(i);
            }
        }
        let sec = Coordinatizer::new(ring, self.quotient.len(), &chosen.iter().map(|&i| pi[i].clone()).collect::<Vec<_>>())?;
        let section = |q: &FVec| -> FVec {
            let c = sec.coords(q).expect("pi onto");
            let mut acc = FVec::zero(ring);
            for (j, x) in &c.entries {
                acc = acc.axpy(x, &self.cover[chosen[*j]]);
            }
            acc
        };
        let u: Vec<FVec> = pi.iter().map(|q| section(&phi_q.apply(q))).collect();
        let sub = self.data.alg.subalgebra(&self.cover)?;
        let kco = Coordinatizer::new(ring, n, &kb)?;
        // unknown (k, l) is the K_l-coefficient of lambda(b_k); equation (i<j, l)
        let npairs = m * (m - 1) / 2;
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); m * d];
        let mut rhs: Vec<(usize, Scalar)> = Vec::new();
        let mut row = 0;
        for i in 0..m {
            for j in i + 1..m {
                let c = &sub.table()[i][j];
                let mut r = self.data.alg.bracket(&u[i], &u[j]);
                for (k, x) in &c.entries {
                    r = r.axpy(&-x.clone(), &u[*k]);
                }
                let rk = kco.coords(&r).ok_or_else(|| Error::CheckFailed { check: "lift_defect_in_kernel".into(), witness: format!("{i} {j}") })?;
                for l in 0..d {
                    let x = rk.get(l);
                    if !x.is_zero() {
                        rhs.push((row * d + l, x));
                    }
                    for (k, ck) in &c.entries {
                        cols[k * d + l].push((row * d + l, ck.clone()));
                    }
                }
                row += 1;
            }
        }
        debug_assert_eq!(row, npairs);
        let colspace = Subspace::spanned(ring, npairs * d, cols.into_iter().map(|e| FVec::from_entries(ring, e)))?;
        Ok(colspace.contains(&FVec::from_entries(ring, rhs)))
    }
}

/// `h_b` for the fixed simple roots and `e_a` for every fixed root.
fn cover_basis(data: &FixedData) -> Vec<FVec> {
    let g = &data.g;
    let mut out: Vec<FVec> = data.gamma.fixed_basis().iter().map(|b| g.coroot(b)).collect();
    for a in g.lattice().roots() {
        if data.gamma.apply(a) == *a {
            out.push(g.basis_vector(g.root_basis_index(a).unwrap()));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub generator: String,
    pub descends: bool,
    pub preserves_bracket: bool,
    pub invertible: bool,
    pub lifts_to_cover: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub pair: String,
    pub ancestor: String,
    pub dims: ReducedDims,
    pub generator_checks: Vec<GeneratorCheck>,
    /// some generator induces an automorphism not coming from `g'`
    pub beyond_cover: bool,
    pub passed: bool,
}

/// Root-group generators of the fixed group of the ancestor at parameter
/// `t`: `x_a(t)` for fixed roots and orbit products for moved ones.
pub fn fixed_group_generators(r: &ReducedAlgebra, t: i64) -> Result<Vec<(String, LieMap)>> {
    let g = &r.data.g;
    let gamma = &r.data.gamma;
    let ts = Scalar::from_i64(g.ring(), t);
    let mut seen: Vec<Vec<i64>> = Vec::new();
    let mut out = Vec::new();
    for a in g.lattice().roots() {
        if seen.contains(a) {
            continue;
        }
        let ga = gamma.apply(a);
        if ga == *a {
            out.push((format!("x{a:?}({t})"), chevalley_generator(g, a, &ts)?));
            continue;
        }
        let mut b = a.clone();
        let mut orthogonal = true;
        loop {
            seen.push(b.clone());
            let nb = gamma.apply(&b);
            if g.lattice().inner(a, &nb) != 0 && nb != *a {
                orthogonal = false;
            }
            if nb == *a {
                break;
            }
            b = nb;
        }
        if orthogonal {
            out.push((format!("orbit{a:?}({t})"), orbit_generator(g, gamma, a, &ts)?));
        }
    }
    Ok(out)
}

fn is_invertible(f: &LieMap) -> Result<bool> {
    let m = FieldMatrix::new(f.ring(), f.dim(), f.images().to_vec());
    Ok(m.rank()? == f.dim())
}

pub fn exceptional_action_check(xprime: &str, p: u32, t: i64) -> Result<ActionReport> {
    let r = ReducedAlgebra::build(xprime, p)?;
    let mut checks = Vec::new();
    for (name, phi) in fixed_group_generators(&r, t)? {
        let (descends, q) = match r.descend(&phi) {
            Ok(q) => (true, Some(q)),
            Err(Error::CheckFailed { .. }) => (false, None),
            Err(e) => return Err(e),
        };
        let (pres, inv, lifts) = match &q {
            Some(q) => (q.preserves_bracket_of(r.quotient.algebra()), is_invertible(q)?, r.lifts_to_cover(q)?),
            None => (false, false, false),
        };
        checks.push(GeneratorCheck { generator: name, descends, preserves_bracket: pres, invertible: inv, lifts_to_cover: lifts });
    }
    let passed = checks.iter().all(|c| c.descends && c.preserves_bracket && c.invertible);
    Ok(ActionReport {
        pair: format!("({xprime},{p})"),
        ancestor: r.ancestor.clone(),
        dims: r.dims()?,
        beyond_cover: checks.iter().any(|c| c.descends && !c.lifts_to_cover),
        generator_checks: checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_mod_3_dimensions() {
        let r = ReducedAlgebra::build("A2", 3).unwrap();
        let d = r.dims().unwrap();
        assert_eq!((d.fixed, d.norm_ideal, d.quotient, d.cover, d.cover_kernel), (14, 7, 7, 8, 1));
    }

    #[test]
    fn a1_mod_2_is_abelian_plane() {
        let r = ReducedAlgebra::build("A1", 2).unwrap();
        let d = r.dims().unwrap();
        assert_eq!((d.fixed, d.norm_ideal, d.quotient), (5, 3, 2));
        assert!(r.is_abelian());
    }

    #[test]
    fn non_exceptional_pairs_are_rejected() {
        assert!(matches!(ReducedAlgebra::build("E8", 2), Err(Error::NotExceptional(..))));
        assert!(matches!(ReducedAlgebra::build("A2", 2), Err(Error::NotExceptional(..))));
    }

    #[test]
    fn g2_in_char_3_has_non_central_norm_ideal() {
        let l = RootLattice::parse("D4").unwrap();
        let gamma = GraphAut::new(&l, 3).unwrap();
        let d = FixedData::new(LieAlgebra::new(l.into(), Ring::PrimeField(3)), gamma).unwrap();
        assert!(d.norm_is_ideal());
        assert!(!d.norm_is_central());
        assert!(d.norm.rank() > 0 && d.norm.rank() < d.fixed.rank());
    }

    #[test]
    fn g2_in_char_2_is_centerless_and_norm_is_everything() {
        let l = RootLattice::parse("D4").unwrap();
        let gamma = GraphAut::new(&l, 3).unwrap();
        let d = FixedData::new(LieAlgebra::new(l.into(), Ring::PrimeField(2)), gamma).unwrap();
        assert_eq!(d.fixed.rank(), 14);
        assert_eq!(d.fixed_algebra().unwrap().center().unwrap().rank(), 0);
        assert_eq!(d.norm, d.fixed);
    }

    #[test]
    fn a2_mod_3_generators_descend() {
        let rep = exceptional_action_check("A2", 3, 1).unwrap();
        assert_eq!(rep.generator_checks.len(), 12);
        assert!(rep.passed);
        assert!(rep.beyond_cover);
        // long-root generators come from the cover itself
        assert!(rep.generator_checks.iter().filter(|c| c.generator.starts_with('x')).all(|c| c.lifts_to_cover));
        let id = exceptional_action_check("A2", 3, 0).unwrap();
        assert!(id.generator_checks.iter().all(|c| c.lifts_to_cover));
    }
}
