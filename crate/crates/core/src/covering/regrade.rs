//! The regraded vertex algebra over `F_3`: weights tripled, and the only
//! nonzero modes are `u_(3l+2)`, acting as the base mode `u_l`. On the cube
//! quotient this is the `eta` image; [`super::cube::eta_mode_check`] checks
//! the identification there.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, StructAlg};
use crate::linalg::FVec;
use crate::scalar::{Ring, Scalar};
use crate::va::axioms::binom_signed;
use crate::va::integral::{ring_product, RElem};
use crate::va::morphism::weight_one_to_lie;
use crate::va::LatticeVA;

pub struct RegradedVA {
    pub base: LatticeVA,
    pub ring: Ring,
}

impl RegradedVA {
    pub fn new(base: LatticeVA) -> RegradedVA {
        RegradedVA { base, ring: Ring::PrimeField(3) }
    }

    pub fn build(lattice: &str, wmax: usize) -> Result<RegradedVA> {
        Ok(RegradedVA::new(LatticeVA::build(lattice, wmax)?))
    }

    /// Regraded weight of a base element.
    pub fn weight(&self, a: &RElem) -> usize {
        3 * a.weight
    }

    /// Dimension of the regraded weight-`n` piece.
    pub fn dim(&self, n: usize) -> Result<usize> {
        if !n.is_multiple_of(3) {
            return Ok(0);
        }
        Ok(self.base.basis(n / 3)?.len())
    }

    pub fn element(&self, new_weight: usize, i: usize) -> Result<RElem> {
        if !new_weight.is_multiple_of(3) {
            return Err(Error::CheckFailed { check: "regraded_support".into(), witness: format!("weight {new_weight}") });
        }
        Ok(RElem::basis(self.ring, new_weight / 3, i))
    }

    /// `a_k b` in regraded indexing.
    pub fn product(&self, a: &RElem, k: i64, b: &RElem) -> Result<RElem> {
        if (k - 2).rem_euclid(3) != 0 {
            let w = (3 * (a.weight + b.weight) as i64 - k - 1).max(0) as usize;
            return Ok(RElem { weight: w / 3, coords: FVec::zero(self.ring) });
        }
        ring_product(&self.base, a, (k - 2).div_euclid(3), b)
    }
}

/// Lie algebra on regraded weight 3 with `[a, b] = a_2 b` and
/// `(a|b) 1 = a_5 b`.
pub struct Weight3Lie {
    pub alg: StructAlg,
    pub form: Vec<Vec<Scalar>>,
}

pub fn weight3_lie(rv: &RegradedVA) -> Result<Weight3Lie> {
    let n = rv.dim(3)?;
    let ring = rv.ring;
    let basis: Vec<RElem> = (0..n).map(|i| rv.element(3, i)).collect::<Result<_>>()?;
    let mut table = vec![vec![FVec::zero(ring); n]; n];
    let mut form = vec![vec![Scalar::zero(ring); n]; n];
    for i in 0..n {
        for j in 0..n {
            let br = rv.product(&basis[i], 2, &basis[j])?;
            if !br.is_zero() && 3 * br.weight != 3 {
                return Err(Error::CheckFailed { check: "bracket_weight".into(), witness: format!("{i} {j}") });
            }
            table[i][j] = br.coords;
            let f = rv.product(&basis[i], 5, &basis[j])?;
            form[i][j] = f.coords.get(0);
        }
    }
    Ok(Weight3Lie { alg: StructAlg::from_table(ring, table), form })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Weight3Report {
    pub lattice: String,
    pub dim: usize,
    pub antisymmetric: bool,
    pub jacobi_triples: usize,
    pub jacobi_failures: usize,
    pub form_symmetric: bool,
    pub form_invariant: bool,
    pub form_nondegenerate: bool,
    pub matches_chevalley: bool,
}

impl Weight3Report {
    pub fn passed(&self) -> bool {
        self.antisymmetric
            && self.jacobi_failures == 0
            && self.form_symmetric
            && self.form_invariant
            && self.matches_chevalley
    }
}

impl Weight3Lie {
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let t = self.alg.table();
        (0..self.dim()).all(|i| t[i][i].is_zero() && (0..i).all(|j| t[i][j].add(&t[j][i]).is_zero()))
    }

    pub fn form_is_symmetric(&self) -> bool {
        (0..self.dim()).all(|i| (0..i).all(|j| self.form[i][j] == self.form[j][i]))
    }

    /// `(a | [b, c]) = ([a, b] | c)` on all basis triples.
    pub fn form_is_invariant(&self) -> bool {
        let n = self.dim();
        let t = self.alg.table();
        // nonzero form entries per row
        let support: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|j| !self.form[i][*j].is_zero()).collect()).collect();
        for a in 0..n {
            for b in 0..n {
                let ab = &t[a][b];
                for c in 0..n {
                    let lhs: Scalar = support[a]
                        .iter()
                        .map(|k| &self.form[a][*k] * &t[b][c].get(*k))
                        .fold(Scalar::zero(self.alg.ring()), |s, x| &s + &x);
                    let rhs = ab.entries.iter().fold(Scalar::zero(self.alg.ring()), |s, (k, x)| &s + &(x * &self.form[*k][c]));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn form_is_nondegenerate(&self) -> Result<bool> {
        let ring = self.alg.ring();
        let rows: Vec<FVec> = self.form.iter().map(|r| FVec::from_dense(ring, r)).collect();
        Ok(crate::linalg::FieldMatrix::new(ring, self.dim(), rows).rank()? == self.dim())
    }

    /// Jacobi identity on `samples` random basis triples, or all of them
    /// when `samples` is `None`.
    pub fn jacobi_failures<R: Rng>(&self, samples: Option<usize>, rng: &mut R) -> (usize, usize) {
        let n = self.dim();
        let ring = self.alg.ring();
        let e = |i: usize| FVec::unit(ring, i);
        let mut bad = 0;
        let mut count = 0;
        let mut check = |i: usize, j: usize, k: usize| {
            count += 1;
            if !self.alg.jacobiator(&e(i), &e(j), &e(k)).is_zero() {
                bad += 1;
            }
        };
        match samples {
            None => {
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            check(i, j, k);
                        }
                    }
                }
            }
            Some(s) => {
                for _ in 0..s {
                    check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                }
            }
        }
        (count, bad)
    }

    /// Bracket table against the Chevalley algebra over `F_3` under
    /// `h_i <-> a_i(-1)`, `e_b <-> e^b`.
    pub fn matches_chevalley(&self, va: &LatticeVA) -> Result<bool> {
        let g = LieAlgebra::new(va.lattice_arc(), self.alg.ring());
        let pos = weight_one_to_lie(va)?;
        if pos.len() != self.dim() {
            return Ok(false);
        }
        let t = self.alg.table();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let want = g.from_ints(g.bracket_basis(i, j));
                let mapped = FVec::from_entries(g.ring(), want.entries.iter().map(|(k, c)| (pos[*k], c.clone())));
                if mapped != t[pos[i]][pos[j]] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn weight3_report<R: Rng>(rv: &RegradedVA, jacobi_samples: Option<usize>, rng: &mut R) -> Result<Weight3Report> {
    let lie = weight3_lie(rv)?;
    let (triples, fails) = lie.jacobi_failures(jacobi_samples, rng);
    Ok(Weight3Report {
        lattice: rv.base.lattice().name(),
        dim: lie.dim(),
        antisymmetric: lie.is_antisymmetric(),
        jacobi_triples: triples,
        jacobi_failures: fails,
        form_symmetric: lie.form_is_symmetric(),
        form_invariant: lie.form_is_invariant(),
        form_nondegenerate: lie.form_is_nondegenerate()?,
        matches_chevalley: lie.matches_chevalley(&rv.base)?,
    })
}

/// `C(3m+2, 2) = 1` and `C(3m+2, 5) = m` mod 3.
pub fn binomial_facts(range: i64) -> Vec<i64> {
    let three = num_bigint::BigInt::from(3);
    let mut bad = Vec::new();
    for m in -range..=range {
        let c2 = binom_signed(3 * m + 2, 2).to_integer();
        let c5 = binom_signed(3 * m + 2, 5).to_integer();
        let ok2 = ((c2 - 1) % &three) == 0.into();
        let ok5 = ((c5 - m) % &three) == 0.into();
        if !(ok2 && ok5) {
            bad.push(m);
        }
    }
    bad
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AffineReport {
    pub lattice: String,
    pub range: i64,
    pub checked: usize,
    pub failures: Vec<String>,
}

/// `[a_(3m+2), b_(3n+2)] = [a,b]_(3(m+n)+2) + m (a|b) delta_(m+n,0)` on every
/// basis state whose intermediate weights stay within the truncation.
pub fn affine_commutator_check(rv: &RegradedVA, range: i64) -> Result<AffineReport> {
    let lie = weight3_lie(rv)?;
    let n = lie.dim();
    let wmax = rv.base.wmax() as i64;
    let ring = rv.ring;
    let mut checked = 0;
    let mut failures = Vec::new();
    let ones: Vec<RElem> = (0..n).map(|i| rv.element(3, i)).collect::<Result<_>>()?;
    for w in 0..=wmax as usize {
        let states: Vec<RElem> = (0..rv.base.basis(w)?.len()).map(|i| rv.element(3 * w, i)).collect::<Result<_>>()?;
        for m in -range..=range {
            for k in -range..=range {
                let wi = w as i64;
                if [wi - k, wi - m, wi - m - k].iter().any(|x| *x < 0 || *x > wmax) {
                    continue;
                }
                for (i, a) in ones.iter().enumerate() {
                    for (j, b) in ones.iter().enumerate() {
                        let bracket = RElem { weight: 1, coords: lie.alg.table()[i][j].clone() };
                        for v in &states {
                            let am = 3 * m + 2;
                            let bk = 3 * k + 2;
                            let lhs = rv
                                .product(a, am, &rv.product(b, bk, v)?)?
                                .coords
                                .sub(&rv.product(b, bk, &rv.product(a, am, v)?)?.coords);
                            let mut rhs = rv.product(&bracket, 3 * (m + k) + 2, v)?.coords;
                            if m + k == 0 {
                                rhs = rhs.axpy(&(&Scalar::from_i64(ring, m) * &lie.form[i][j]), &v.coords);
                            }
                            checked += 1;
                            if lhs != rhs {
                                failures.push(format!("m={m} n={k} a={i} b={j} weight {w}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(AffineReport { lattice: rv.base.lattice().name(), range, checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_regradings() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for name in ["A1", "A2"] {
            let rv = RegradedVA::build(name, 2).unwrap();
            let r = weight3_report(&rv, None, &mut rng).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(affine_commutator_check(&rv, 2).unwrap().failures.is_empty());
        }
        // the A2 form has a radical mod 3, the A1 form does not vanish
        let rv = RegradedVA::build("A2", 1).unwrap();
        assert!(!weight3_lie(&rv).unwrap().form_is_nondegenerate().unwrap());
    }

    #[test]
    fn support_and_binomials() {
        let rv = RegradedVA::build("A1", 2).unwrap();
        assert_eq!(rv.dim(4).unwrap(), 0);
        assert_eq!(rv.dim(0).unwrap(), 1);
        let a = rv.element(3, 0).unwrap();
        assert!(rv.product(&a, 1, &a).unwrap().is_zero());
        assert!(binomial_facts(6).is_empty());
    }
}
