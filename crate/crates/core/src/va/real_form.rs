//! The `theta`-twisted real form over `Z[1/2]`: fixed points of
//! `theta` composed with complex conjugation, i.e. `V+ (+) i V-`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::engine::{LatticeVA, QElem};
use super::form::{invariant_form, is_positive_definite, theta};
use super::integral::{from_coords_z, h_mono, to_h};
use super::symfun::Q;
use crate::error::{Error, Result};
use crate::linalg::{ZLattice, ZVec};

/// `re + i im` with rational Fock coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CElem {
    pub re: QElem,
    pub im: QElem,
}

impl CElem {
    pub fn real(re: QElem) -> CElem {
        CElem { re, im: QElem::zero() }
    }

    pub fn imag(im: QElem) -> CElem {
        CElem { re: QElem::zero(), im }
    }

    pub fn add(&self, o: &CElem) -> CElem {
        CElem { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn scale(&self, c: &Q) -> CElem {
        CElem { re: self.re.scale(c), im: self.im.scale(c) }
    }

    pub fn neg(&self) -> CElem {
        CElem { re: -&self.re, im: -&self.im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

pub fn c_product(va: &LatticeVA, a: &CElem, m: i64, b: &CElem) -> Result<CElem> {
    let rr = va.product(&a.re, m, &b.re)?;
    let ii = va.product(&a.im, m, &b.im)?;
    let ri = va.product(&a.re, m, &b.im)?;
    let ir = va.product(&a.im, m, &b.re)?;
    Ok(CElem { re: &rr - &ii, im: &ri + &ir })
}

/// Complex-bilinear extension of the invariant form; returns `(re, im)`.
pub fn c_form(va: &LatticeVA, a: &CElem, b: &CElem) -> Result<(Q, Q)> {
    let f = |x: &QElem, y: &QElem| invariant_form(va, x, y);
    Ok((f(&a.re, &b.re)? - f(&a.im, &b.im)?, f(&a.re, &b.im)? + f(&a.im, &b.re)?))
}

/// Is `theta(conj a) = a`?
pub fn is_twist_fixed(a: &CElem) -> bool {
    theta(&a.re) == a.re && theta(&a.im) == -&a.im
}

/// The two eigenlattices in h-coordinates at weight `n`:
/// spans of `(1 + theta) b` and `(1 - theta) b` over the integral basis.
#[derive(Clone, Debug)]
pub struct RealFormPiece {
    pub weight: usize,
    pub plus: ZLattice,
    pub minus: ZLattice,
}

fn h_vector(va: &LatticeVA, a: &QElem, n: usize) -> Result<ZVec> {
    let idx = va.basis_index(n)?;
    let mut e = Vec::new();
    for (m, c) in to_h(va, a) {
        if !c.is_integer() {
            return Err(Error::NonIntegral(format!("{c} at {m:?}")));
        }
        e.push((idx[&m], c.to_integer()));
    }
    Ok(ZVec::from_entries(e))
}

pub fn real_form_piece(va: &LatticeVA, n: usize) -> Result<RealFormPiece> {
    let basis = va.basis(n)?;
    let dim = basis.len();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for b in basis.iter() {
        let x = h_mono(va, b);
        let t = theta(&x);
        plus.push(h_vector(va, &(&x + &t), n)?);
        minus.push(h_vector(va, &(&x - &t), n)?);
    }
    Ok(RealFormPiece { weight: n, plus: ZLattice::from_generators(dim, plus), minus: ZLattice::from_generators(dim, minus) })
}

impl RealFormPiece {
    pub fn rank(&self) -> usize {
        self.plus.rank() + self.minus.rank()
    }

    /// `V+` basis as real elements followed by `i V-` basis.
    pub fn basis(&self, va: &LatticeVA) -> Result<Vec<CElem>> {
        let mut out = Vec::new();
        for v in self.plus.basis() {
            out.push(CElem::real(from_coords_z(va, v, self.weight)?));
        }
        for v in self.minus.basis() {
            out.push(CElem::imag(from_coords_z(va, v, self.weight)?));
        }
        Ok(out)
    }

    /// Membership over `Z[1/2]`.
    pub fn contains(&self, va: &LatticeVA, a: &CElem) -> Result<bool> {
        Ok(in_half_lattice(&self.plus, &rational_h(va, &a.re, self.weight)?)
            && in_half_lattice(&self.minus, &rational_h(va, &a.im, self.weight)?))
    }
}

fn rational_h(va: &LatticeVA, a: &QElem, n: usize) -> Result<Vec<(usize, Q)>> {
    let idx = va.basis_index(n)?;
    to_h(va, a).into_iter().map(|(m, c)| idx.get(&m).map(|i| (*i, c)).ok_or_else(|| Error::Dimension(format!("{m:?}")))).collect()
}

fn in_half_lattice(l: &ZLattice, v: &[(usize, Q)]) -> bool {
    let mut den = BigInt::one();
    for (_, c) in v {
        den = den.lcm(c.denom());
    }
    let mut d = den.clone();
    while d.is_even() {
        d /= 2;
    }
    if !d.is_one() {
        return false;
    }
    let mut scaled = ZVec::from_entries(v.iter().map(|(i, c)| (*i, (c * Q::from_integer(den.clone())).to_integer())));
    // allow further powers of two in the lattice index
    for _ in 0..16 {
        if l.contains_vec(&scaled) {
            return true;
        }
        scaled = scaled.scale(&BigInt::from(2));
    }
    false
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RealFormReport {
    pub lattice: String,
    pub weight: usize,
    pub rank: usize,
    pub positive_definite: bool,
    pub twist_fixed: bool,
}

/// Gram positivity of the real-form basis at weight `n`.
pub fn real_form_gram_check(va: &LatticeVA, n: usize) -> Result<RealFormReport> {
    let piece = real_form_piece(va, n)?;
    let b = piece.basis(va)?;
    let mut g = vec![vec![Q::zero(); b.len()]; b.len()];
    let mut real = true;
    for i in 0..b.len() {
        for j in i..b.len() {
            let (re, im) = c_form(va, &b[i], &b[j])?;
            real &= im.is_zero();
            g[i][j] = re.clone();
            g[j][i] = re;
        }
    }
    Ok(RealFormReport {
        lattice: va.lattice().name(),
        weight: n,
        rank: piece.rank(),
        positive_definite: real && piece.rank() == va.basis(n)?.len() && is_positive_definite(&g),
        twist_fixed: b.iter().all(is_twist_fixed),
    })
}

/// Weight-one generators `H_a = i a(-1)`, `X+_a = e^a + e^-a`, `X-_a = i(e^a - e^-a)`.
pub fn h_gen(va: &LatticeVA, a: &[i64]) -> CElem {
    CElem::imag(va.heisenberg_vec(a, 1))
}

pub fn x_plus(va: &LatticeVA, a: &[i64]) -> CElem {
    let m: Vec<i64> = a.iter().map(|x| -x).collect();
    CElem::real(&va.exp_elem(a) + &va.exp_elem(&m))
}

pub fn x_minus(va: &LatticeVA, a: &[i64]) -> CElem {
    let m: Vec<i64> = a.iter().map(|x| -x).collect();
    CElem::imag(&va.exp_elem(a) - &va.exp_elem(&m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    H(usize),
    Plus(usize),
    Minus(usize),
}

/// Predicted bracket `[x, y] = x_0 y` in the `H, X+, X-` basis.
pub fn predicted_bracket(va: &LatticeVA, x: Gen, y: Gen) -> CElem {
    let l = va.lattice();
    let roots = l.roots();
    let eps = |a: &[i64], b: &[i64]| Q::from_integer(BigInt::from(va.cocycle().sign(a, b)));
    let q = |n: i64| Q::from_integer(BigInt::from(n));
    let sum = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>();
    let diff = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<i64>>();
    let zero = CElem::real(QElem::zero());
    match (x, y) {
        (Gen::H(_), Gen::H(_)) => zero,
        (Gen::H(i), Gen::Plus(j)) => x_minus(va, &roots[j]).scale(&q(l.inner(&roots[i], &roots[j]))),
        (Gen::H(i), Gen::Minus(j)) => x_plus(va, &roots[j]).scale(&q(-l.inner(&roots[i], &roots[j]))),
        (Gen::Plus(_) | Gen::Minus(_), Gen::H(_)) => predicted_bracket(va, y, x).neg(),
        (Gen::Plus(i), Gen::Plus(j)) => {
            let (a, b) = (&roots[i], &roots[j]);
            match l.inner(a, b) {
                -1 => x_plus(va, &sum(a, b)).scale(&eps(a, b)),
                1 => x_plus(va, &diff(a, b)).scale(&eps(a, b)),
                _ => zero,
            }
        }
        (Gen::Minus(i), Gen::Minus(j)) => {
            let (a, b) = (&roots[i], &roots[j]);
            match l.inner(a, b) {
                -1 => x_plus(va, &sum(a, b)).scale(&-eps(a, b)),
                1 => x_plus(va, &diff(a, b)).scale(&eps(a, b)),
                _ => zero,
            }
        }
        (Gen::Plus(i), Gen::Minus(j)) => {
            let (a, b) = (&roots[i], &roots[j]);
            match l.inner(a, b) {
                -1 => x_minus(va, &sum(a, b)).scale(&eps(a, b)),
                1 => x_minus(va, &diff(a, b)).scale(&-eps(a, b)),
                2 => h_gen(va, a).scale(&q(2)),
                -2 => h_gen(va, a).scale(&q(-2)),
                _ => zero,
            }
        }
        (Gen::Minus(_), Gen::Plus(_)) => predicted_bracket(va, y, x).neg(),
    }
}

pub fn gen_elem(va: &LatticeVA, g: Gen) -> CElem {
    let roots = va.lattice().roots();
    match g {
        Gen::H(i) => h_gen(va, &roots[i]),
        Gen::Plus(i) => x_plus(va, &roots[i]),
        Gen::Minus(i) => x_minus(va, &roots[i]),
    }
}

/// Compares every bracket of the generators with the predicted table and
/// returns the mismatches.
pub fn bracket_table_mismatches(va: &LatticeVA) -> Result<Vec<String>> {
    let n = va.lattice().roots().len();
    let gens: Vec<Gen> = (0..n).flat_map(|i| [Gen::H(i), Gen::Plus(i), Gen::Minus(i)]).collect();
    let elems: Vec<CElem> = gens.iter().map(|g| gen_elem(va, *g)).collect();
    let mut bad = Vec::new();
    for (x, ex) in gens.iter().zip(&elems) {
        for (y, ey) in gens.iter().zip(&elems) {
            if c_product(va, ex, 0, ey)? != predicted_bracket(va, *x, *y) {
                bad.push(format!("{x:?} {y:?}"));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_real_form_is_positive_at_weights_one_and_two() {
        let va = LatticeVA::build("A1", 2).unwrap();
        for n in 1..=2 {
            let r = real_form_gram_check(&va, n).unwrap();
            assert!(r.positive_definite && r.twist_fixed, "{r:?}");
        }
    }

    #[test]
    fn real_form_closed_under_products_on_a2() {
        let va = LatticeVA::build("A2", 2).unwrap();
        let pieces: Vec<RealFormPiece> = (0..=2).map(|n| real_form_piece(&va, n).unwrap()).collect();
        for wa in 0..=2usize {
            for wb in 0..=2usize {
                let ba = pieces[wa].basis(&va).unwrap();
                let bb = pieces[wb].basis(&va).unwrap();
                for a in ba.iter().step_by(2) {
                    for b in bb.iter().step_by(3) {
                        for out in 0..=2i64 {
                            let m = (wa + wb) as i64 - 1 - out;
                            let p = c_product(&va, a, m, b).unwrap();
                            assert!(is_twist_fixed(&p));
                            assert!(pieces[out as usize].contains(&va, &p).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_table_on_a2() {
        let va = LatticeVA::build("A2", 1).unwrap();
        assert_eq!(bracket_table_mismatches(&va).unwrap(), Vec::<String>::new());
    }
}
