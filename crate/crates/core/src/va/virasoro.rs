//! Conformal vector `omega = 1/2 sum G^-1_ij a_i(-1) a_j(-1)` and the
//! Virasoro relations it generates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::engine::{LatticeVA, QElem};
use super::integral::to_h;
use super::mono::{Mono, Parts};
use super::symfun::Q;
use crate::error::{Error, Result};

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Inverse of the Gram matrix over `Q`.
pub fn gram_inverse(g: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = g.len();
    let mut a: Vec<Vec<Q>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|x| q(*x)).chain((0..n).map(|j| if i == j { Q::one() } else { Q::zero() })).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|r| !a[*r][c].is_zero()).expect("Gram matrix is nonsingular");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// The conformal vector.
pub fn omega(va: &LatticeVA) -> QElem {
    let gi = gram_inverse(va.lattice().gram());
    let r = va.rank();
    let zero = Mono::vacuum(r).lattice;
    let mut out = QElem::zero();
    for (i, row) in gi.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let mut parts = Parts::new();
            parts.push((i as u8, 1));
            parts.push((j as u8, 1));
            out.add_term(Mono::new(parts, zero.clone()), x / q(2));
        }
    }
    out
}

/// Smallest `s > 0` with `s omega` in the integral form.
pub fn minimal_integral_multiple(va: &LatticeVA) -> BigInt {
    to_h(va, &omega(va)).values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// `L(n) a = omega_(n+1) a`.
pub fn virasoro_mode(va: &LatticeVA, n: i64, a: &QElem) -> Result<QElem> {
    va.product(&omega(va), n + 1, a)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VirasoroReport {
    pub central_charge: i64,
    pub minimal_multiple: String,
    pub grading_ok: bool,
    pub translation_ok: bool,
    pub vacuum_killed: bool,
    pub relations_checked: usize,
    pub relation_failures: Vec<String>,
}

impl VirasoroReport {
    pub fn passed(&self) -> bool {
        self.grading_ok && self.translation_ok && self.vacuum_killed && self.relation_failures.is_empty()
    }
}

fn fits(va: &LatticeVA, w: i64) -> bool {
    w >= 0 && w <= va.wmax() as i64
}

/// `[L(m), L(n)] v = (m - n) L(m+n) v + (m^3 - m)/12 delta c v` on every basis
/// monomial `v` whose intermediate weights stay within the truncation.
pub fn virasoro_check(va: &LatticeVA, range: i64) -> Result<VirasoroReport> {
    let c = va.rank() as i64;
    let om = omega(va);
    let mut grading_ok = true;
    let mut translation_ok = true;
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for w in 0..=va.wmax() {
        for v in va.basis(w)?.iter() {
            let ve = QElem::mono(v.clone());
            if va.product(&om, 1, &ve)? != ve.scale(&q(w as i64)) {
                grading_ok = false;
            }
            if w < va.wmax() && va.product(&om, 0, &ve)? != va.translate(&ve)? {
                translation_ok = false;
            }
            for m in -range..=range {
                for n in -range..=range {
                    let wi = w as i64;
                    if !(fits(va, wi - n) && fits(va, wi - m) && fits(va, wi - m - n)) {
                        continue;
                    }
                    let l = |k: i64, x: &QElem| va.product(&om, k + 1, x);
                    let lhs = &l(m, &l(n, &ve)?)? - &l(n, &l(m, &ve)?)?;
                    let mut rhs = l(m + n, &ve)?.scale(&q(m - n));
                    if m + n == 0 {
                        rhs.add_scaled(&(q((m * m * m - m) * c) / q(12)), &ve);
                    }
                    checked += 1;
                    if lhs != rhs {
                        failures.push(format!("L({m}),L({n}) on {v}"));
                    }
                }
            }
        }
    }
    let vacuum_killed = va.product(&om, 0, &va.vacuum_elem())?.is_zero();
    Ok(VirasoroReport {
        central_charge: c,
        minimal_multiple: minimal_integral_multiple(va).to_string(),
        grading_ok,
        translation_ok,
        vacuum_killed,
        relations_checked: checked,
        relation_failures: failures,
    })
}

/// Membership of `omega` in `(IV_L)_2`, as an error if it fails.
pub fn omega_is_integral(va: &LatticeVA) -> Result<bool> {
    let s = minimal_integral_multiple(va);
    if !s.is_positive() {
        return Err(Error::NonIntegral("omega".into()));
    }
    Ok(s.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_multiples() {
        assert_eq!(minimal_integral_multiple(&LatticeVA::build("E8", 2).unwrap()), BigInt::from(1));
        assert_eq!(minimal_integral_multiple(&LatticeVA::build("A1", 2).unwrap()), BigInt::from(4));
    }

    #[test]
    fn virasoro_on_a2() {
        let va = LatticeVA::build("A2", 3).unwrap();
        let r = virasoro_check(&va, 2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.relations_checked > 50);
    }

    #[test]
    fn grading_on_e8_weight_two() {
        let va = LatticeVA::build("E8", 2).unwrap();
        for v in va.basis(2).unwrap().iter().step_by(37) {
            let ve = QElem::mono(v.clone());
            assert_eq!(virasoro_mode(&va, 0, &ve).unwrap(), ve.scale(&q(2)));
        }
    }
}
