//! Bilinear forms on `V_L`.
//!
//! The positive form makes the Fock monomials orthogonal, with `a(n)` adjoint
//! to `a(-n)` and `<e^a, e^b> = delta`. The invariant form is
//! `(u, v) = <u, theta v>`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::engine::{LatticeVA, QElem};
use super::mono::Mono;
use super::symfun::Q;
use crate::error::{Error, Result};

/// Sum over depth-preserving bijections of `prod n G[c][d]`.
fn matched(va: &LatticeVA, a: &[(u8, u8)], b: &[(u8, u8)]) -> i64 {
    if a.is_empty() {
        return 1;
    }
    let (c, n) = a[0];
    let mut total = 0;
    for (j, &(d, m)) in b.iter().enumerate() {
        if m != n {
            continue;
        }
        let g = va.gram_entry(c as usize, d as usize);
        if g == 0 {
            continue;
        }
        let rest: Vec<(u8, u8)> = b.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect();
        total += n as i64 * g * matched(va, &a[1..], &rest);
    }
    total
}

pub fn positive_mono(va: &LatticeVA, u: &Mono, v: &Mono) -> i64 {
    if u.lattice != v.lattice || u.parts.len() != v.parts.len() {
        return 0;
    }
    let du: Vec<u8> = u.parts.iter().map(|p| p.1).collect();
    let mut dv: Vec<u8> = v.parts.iter().map(|p| p.1).collect();
    let mut du = du;
    du.sort_unstable();
    dv.sort_unstable();
    if du != dv {
        return 0;
    }
    matched(va, &u.parts, &v.parts)
}

fn check_same_weight(va: &LatticeVA, a: &QElem, b: &QElem) -> Result<()> {
    match (va.weight_of(a), va.weight_of(b)) {
        (Some(x), Some(y)) if x != y => Err(Error::InvalidArgument(format!("form across weights {x} and {y}"))),
        (None, _) if !a.is_zero() => Err(Error::InvalidArgument("mixed-weight element".into())),
        (_, None) if !b.is_zero() => Err(Error::InvalidArgument("mixed-weight element".into())),
        _ => Ok(()),
    }
}

pub fn positive_form(va: &LatticeVA, a: &QElem, b: &QElem) -> Result<Q> {
    check_same_weight(va, a, b)?;
    let mut s = Q::zero();
    for (u, x) in a.terms() {
        for (v, y) in b.terms() {
            let g = positive_mono(va, u, v);
            if g != 0 {
                s += x * y * Q::from_integer(BigInt::from(g));
            }
        }
    }
    Ok(s)
}

/// `theta(a(-n1)...a(-nk) e^b) = (-1)^k a(-n1)...a(-nk) e^-b`.
pub fn theta(a: &QElem) -> QElem {
    QElem::from_terms(a.terms().map(|(m, x)| {
        let lat = m.lattice.iter().map(|v| -v).collect();
        let c = if m.parts.len() % 2 == 0 { x.clone() } else { -x.clone() };
        (Mono { parts: m.parts.clone(), lattice: lat }, c)
    }))
}

pub fn invariant_form(va: &LatticeVA, a: &QElem, b: &QElem) -> Result<Q> {
    positive_form(va, a, &theta(b))
}

/// Positive-form Gram matrix of a list of elements.
pub fn gram_matrix(va: &LatticeVA, elems: &[QElem]) -> Result<Vec<Vec<Q>>> {
    let mut g = vec![vec![Q::zero(); elems.len()]; elems.len()];
    for i in 0..elems.len() {
        for j in i..elems.len() {
            let x = positive_form(va, &elems[i], &elems[j])?;
            g[j][i] = x.clone();
            g[i][j] = x;
        }
    }
    Ok(g)
}

/// Leading principal minors of a symmetric rational matrix, by elimination.
pub fn leading_minors(m: &[Vec<Q>]) -> Vec<Q> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut out = Vec::with_capacity(n);
    let mut det = Q::one();
    for k in 0..n {
        let p = a[k][k].clone();
        det = &det * &p;
        out.push(det.clone());
        if p.is_zero() {
            // later minors need pivoting; the test only asks for positivity
            out.extend(std::iter::repeat_n(Q::zero(), n - k - 1));
            return out;
        }
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &p;
            let pivot = a[k].clone();
            for (x, y) in a[r].iter_mut().zip(pivot).skip(k) {
                *x -= &f * y;
            }
        }
    }
    out
}

pub fn is_positive_definite(m: &[Vec<Q>]) -> bool {
    leading_minors(m).iter().all(|d| d.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisations() {
        let va = LatticeVA::build("A2", 3).unwrap();
        let v = va.vacuum_elem();
        assert_eq!(positive_form(&va, &v, &v).unwrap(), Q::one());
        for c in 0..2 {
            for d in 0..2 {
                let x = positive_form(&va, &va.heisenberg(c, 1), &va.heisenberg(d, 1)).unwrap();
                assert_eq!(x, Q::from_integer(BigInt::from(va.gram_entry(c, d))));
            }
        }
        let e = va.exp_elem(&[1, 1]);
        assert_eq!(positive_form(&va, &e, &e).unwrap(), Q::one());
        assert!(positive_form(&va, &va.heisenberg(0, 1), &v).is_err());
    }

    #[test]
    fn weight_one_e8_gram_is_positive() {
        let va = LatticeVA::build("E8", 1).unwrap();
        let b: Vec<QElem> = va.basis(1).unwrap().iter().map(|m| QElem::mono(m.clone())).collect();
        assert!(is_positive_definite(&gram_matrix(&va, &b).unwrap()));
    }

    #[test]
    fn invariance_for_weight_one_fields() {
        let va = LatticeVA::build("A2", 3).unwrap();
        let ones: Vec<QElem> = va.basis(1).unwrap().iter().map(|m| QElem::mono(m.clone())).collect();
        for w in 1..=2usize {
            let us: Vec<QElem> = va.basis(w).unwrap().iter().map(|m| QElem::mono(m.clone())).collect();
            for a in &ones {
                for n in -1..=1i64 {
                    let wv = w as i64 - n;
                    if !(0..=3).contains(&wv) {
                        continue;
                    }
                    let vs: Vec<QElem> = va.basis(wv as usize).unwrap().iter().map(|m| QElem::mono(m.clone())).collect();
                    for u in &us {
                        for v in &vs {
                            let l = invariant_form(&va, &va.product(a, n, u).unwrap(), v).unwrap();
                            let r = invariant_form(&va, u, &va.product(a, -n, v).unwrap()).unwrap();
                            assert_eq!(l, -r, "{a:?} {n} {u:?} {v:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn minors() {
        let q = |x: i64| Q::from_integer(BigInt::from(x));
        assert!(is_positive_definite(&[vec![q(2), q(-1)], vec![q(-1), q(2)]]));
        assert!(!is_positive_definite(&[vec![q(1), q(2)], vec![q(2), q(1)]]));
    }
}
