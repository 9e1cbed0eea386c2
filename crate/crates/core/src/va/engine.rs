//! Lattice vertex algebra `V_L` in the Fock basis over `Q`, with memoized
//! mode products `u_m v`.
//!
//! `Y(u, z)` for `u = a_(c1)(-n1)...a_(ck)(-nk) e^beta` is the normally
//! ordered product of the derivative fields with `E^-(-beta,z) E^+(-beta,z)
//! e_beta z^beta`; annihilation modes (including `a(0)`) act first, then
//! `E^+`, then `e_beta z^beta`, then creation modes and `E^-`.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::mono::{coloured_partition_counts, weight_basis, Mono, Parts, Point};
use super::symfun::{exp_coefficient, SymTables, Q};
use crate::error::{Error, Result};
use crate::roots::{Cocycle, RootLattice};

/// Element of `V_L` over `Q`, in the Fock basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QElem(pub BTreeMap<Mono, Q>);

impl QElem {
    pub fn zero() -> QElem {
        QElem(BTreeMap::new())
    }

    pub fn mono(m: Mono) -> QElem {
        QElem([(m, Q::one())].into_iter().collect())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Q)>) -> QElem {
        let mut e = QElem::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &QElem) {
        for (m, x) in &other.0 {
            self.add_term(m.clone(), c * x);
        }
    }

    pub fn scale(&self, c: &Q) -> QElem {
        if c.is_zero() {
            return QElem::zero();
        }
        QElem(self.0.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.0.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.0.iter()
    }
}

impl Add for &QElem {
    type Output = QElem;
    fn add(self, o: &QElem) -> QElem {
        let mut r = self.clone();
        r.add_scaled(&Q::one(), o);
        r
    }
}

impl Sub for &QElem {
    type Output = QElem;
    fn sub(self, o: &QElem) -> QElem {
        let mut r = self.clone();
        r.add_scaled(&-Q::one(), o);
        r
    }
}

impl Neg for &QElem {
    type Output = QElem;
    fn neg(self) -> QElem {
        self.scale(&-Q::one())
    }
}

type Comb = Arc<Vec<(Mono, Q)>>;
type Key = (Mono, i64, Mono);

/// Truncated lattice VA with product and basis caches.
#[derive(Debug)]
pub struct LatticeVA {
    lattice: Arc<RootLattice>,
    eps: Cocycle,
    wmax: usize,
    sym: SymTables,
    products: RwLock<HashMap<Key, Comb>>,
    s_series: RwLock<HashMap<(Point, usize), Comb>>,
    bases: RwLock<HashMap<usize, Arc<Vec<Mono>>>>,
}

fn sign_q(s: i64) -> Q {
    Q::from_integer(BigInt::from(s))
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        0
    } else {
        binomial(n, k)
    }
}

fn merge(a: &Parts, b: &Parts) -> Parts {
    let mut p: Parts = a.iter().chain(b.iter()).copied().collect();
    p.sort_unstable();
    p
}

/// Intermediate state: remaining Heisenberg parts, accumulated power of `z`.
struct State {
    parts: Parts,
    exp: i64,
    coeff: Q,
}

impl LatticeVA {
    pub fn new(lattice: Arc<RootLattice>, wmax: usize) -> LatticeVA {
        let eps = Cocycle::new(&lattice);
        LatticeVA {
            lattice,
            eps,
            wmax,
            sym: SymTables::default(),
            products: RwLock::new(HashMap::new()),
            s_series: RwLock::new(HashMap::new()),
            bases: RwLock::new(HashMap::new()),
        }
    }

    pub fn build(name: &str, wmax: usize) -> Result<LatticeVA> {
        Ok(LatticeVA::new(Arc::new(RootLattice::parse(name)?), wmax))
    }

    pub fn lattice(&self) -> &RootLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> Arc<RootLattice> {
        self.lattice.clone()
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.eps
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn wmax(&self) -> usize {
        self.wmax
    }

    pub fn sym(&self) -> &SymTables {
        &self.sym
    }

    pub fn cached_products(&self) -> usize {
        self.products.read().unwrap().len()
    }

    pub fn vacuum(&self) -> Mono {
        Mono::vacuum(self.rank())
    }

    pub fn weight(&self, m: &Mono) -> i64 {
        m.weight(&self.lattice)
    }

    fn check_weight(&self, n: i64) -> Result<()> {
        if n > self.wmax as i64 {
            return Err(Error::Truncation { requested: n, max: self.wmax as i64 });
        }
        Ok(())
    }

    /// Monomials of weight `n`, in the fixed deterministic order.
    pub fn basis(&self, n: usize) -> Result<Arc<Vec<Mono>>> {
        self.check_weight(n as i64)?;
        if let Some(b) = self.bases.read().unwrap().get(&n) {
            return Ok(b.clone());
        }
        let pts: Vec<(Vec<i64>, i64)> =
            self.lattice.vectors_up_to(2 * n as i64).into_iter().map(|v| { let m = self.lattice.norm(&v); (v, m) }).collect();
        let b = Arc::new(weight_basis(self.rank(), &pts, n));
        self.bases.write().unwrap().insert(n, b.clone());
        Ok(b)
    }

    /// Position of each monomial in [`LatticeVA::basis`].
    pub fn basis_index(&self, n: usize) -> Result<HashMap<Mono, usize>> {
        Ok(self.basis(n)?.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
    }

    /// Dimension of the weight-`n` space from the theta series and the
    /// partition function, without enumerating monomials.
    pub fn graded_dimension(&self, n: usize) -> u64 {
        let theta = self.lattice.theta_coefficients(n);
        let parts = coloured_partition_counts(self.rank(), n);
        (0..=n).map(|k| theta[k] * parts[n - k]).sum()
    }

    /// `s_(beta, n)` in the Fock basis (lattice part zero).
    pub fn s_poly(&self, beta: &[i64], n: usize) -> Comb {
        let key: (Point, usize) = (beta.iter().map(|x| *x as i16).collect(), n);
        if let Some(c) = self.s_series.read().unwrap().get(&key) {
            return c.clone();
        }
        let r = self.rank();
        // expand colour by colour: beta(-k) = sum_i beta_i a_i(-k)
        let mut acc: Vec<BTreeMap<Parts, Q>> = (0..=n).map(|k| if k == 0 { [(Parts::new(), Q::one())].into_iter().collect() } else { BTreeMap::new() }).collect();
        for (i, &b) in beta.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let series: Vec<Vec<(Parts, Q)>> = (0..=n)
                .map(|k| exp_coefficient(b, k).into_iter().map(|(lam, c)| (lam.iter().map(|d| (i as u8, *d)).collect(), c)).collect())
                .collect();
            let mut next: Vec<BTreeMap<Parts, Q>> = vec![BTreeMap::new(); n + 1];
            for d in 0..=n {
                for (p, x) in &acc[d] {
                    for (k, terms) in series.iter().enumerate().take(n - d + 1) {
                        for (q, y) in terms {
                            *next[d + k].entry(merge(p, q)).or_insert_with(Q::zero) += x * y;
                        }
                    }
                }
            }
            acc = next;
        }
        let zero = Point::from_elem(0, r);
        let out: Comb = Arc::new(
            acc.swap_remove(n).into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (Mono { parts: p, lattice: zero.clone() }, c)).collect(),
        );
        self.s_series.write().unwrap().insert(key, out.clone());
        out
    }

    /// `u_m v` for monomials.
    pub fn product_mono(&self, u: &Mono, m: i64, v: &Mono) -> Result<Comb> {
        let w = self.weight(u) + self.weight(v) - m - 1;
        if w < 0 {
            return Ok(Arc::new(Vec::new()));
        }
        self.check_weight(w)?;
        let key = (u.clone(), m, v.clone());
        if let Some(c) = self.products.read().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let out = Arc::new(self.compute_product(u, m, v));
        self.products.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn compute_product(&self, u: &Mono, m: i64, v: &Mono) -> Vec<(Mono, Q)> {
        let g = self.lattice.gram();
        let r = self.rank();
        let beta = u.lattice_i64();
        let gamma = v.lattice_i64();
        let beta_dot: Vec<i64> = (0..r).map(|i| (0..r).map(|j| beta[j] * g[j][i]).sum()).collect();
        let gamma_dot: Vec<i64> = (0..r).map(|i| (0..r).map(|j| gamma[j] * g[j][i]).sum()).collect();
        let bg: i64 = beta.iter().zip(&gamma_dot).map(|(a, b)| a * b).sum();
        let eps = self.eps.sign(&beta, &gamma);
        let target = -m - 1;
        let new_lattice: Point = beta.iter().zip(&gamma).map(|(a, b)| (a + b) as i16).collect();
        let factors: Vec<(u8, u8)> = u.parts.to_vec();
        let k = factors.len();
        let mut out: HashMap<Parts, Q> = HashMap::new();
        for mask in 0u32..(1 << k) {
            // bit set: factor used as creation part
            let mut states = vec![State { parts: v.parts.clone(), exp: 0, coeff: Q::one() }];
            for (f, &(c, n)) in factors.iter().enumerate() {
                if mask >> f & 1 == 1 {
                    continue;
                }
                let n = n as i64;
                let sgn = if (n - 1) % 2 == 0 { 1 } else { -1 };
                let mut next = Vec::new();
                for s in &states {
                    // a_c(0) on e^gamma
                    let z0 = gamma_dot[c as usize];
                    if z0 != 0 {
                        next.push(State { parts: s.parts.clone(), exp: s.exp - n, coeff: &s.coeff * sign_q(sgn * z0) });
                    }
                    // a_c(k), k >= 1: contraction with one occurrence of each distinct part
                    let mut i = 0;
                    while i < s.parts.len() {
                        let (d, depth) = s.parts[i];
                        let mut mult = 1;
                        while i + mult < s.parts.len() && s.parts[i + mult] == (d, depth) {
                            mult += 1;
                        }
                        let kk = depth as i64;
                        let c2 = sgn * binom(kk + n - 1, n - 1) * kk * g[c as usize][d as usize] * mult as i64;
                        if c2 != 0 {
                            let mut p = s.parts.clone();
                            p.remove(i);
                            next.push(State { parts: p, exp: s.exp - kk - n, coeff: &s.coeff * sign_q(c2) });
                        }
                        i += mult;
                    }
                }
                states = next;
                if states.is_empty() {
                    break;
                }
            }
            if states.is_empty() {
                continue;
            }
            let creators: Vec<(u8, u8)> = factors.iter().enumerate().filter(|(f, _)| mask >> f & 1 == 1).map(|(_, p)| *p).collect();
            for s in states {
                // E^+: each part a_d(-k) -> a_d(-k) - <beta, a_d> z^(-k)
                let len = s.parts.len();
                for sub in 0u32..(1 << len) {
                    let mut coeff = s.coeff.clone();
                    let mut exp = s.exp;
                    let mut kept = Parts::new();
                    let mut dead = false;
                    for (i, &(d, depth)) in s.parts.iter().enumerate() {
                        if sub >> i & 1 == 1 {
                            let x = -beta_dot[d as usize];
                            if x == 0 {
                                dead = true;
                                break;
                            }
                            coeff *= sign_q(x);
                            exp -= depth as i64;
                        } else {
                            kept.push((d, depth));
                        }
                    }
                    if dead {
                        continue;
                    }
                    exp += bg;
                    if eps < 0 {
                        coeff = -coeff;
                    }
                    let budget = target - exp;
                    if budget < 0 {
                        continue;
                    }
                    self.distribute(&beta, &creators, budget as usize, &kept, &coeff, &mut out);
                }
            }
        }
        let mut res: Vec<(Mono, Q)> =
            out.into_iter().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (Mono { parts: p, lattice: new_lattice.clone() }, c)).collect();
        res.sort_by(|a, b| a.0.cmp(&b.0));
        res
    }

    /// Spreads `budget` powers of `z` over `E^-` and the creation factors.
    fn distribute(&self, beta: &[i64], creators: &[(u8, u8)], budget: usize, kept: &Parts, coeff: &Q, out: &mut HashMap<Parts, Q>) {
        fn rec(
            va: &LatticeVA,
            beta: &[i64],
            creators: &[(u8, u8)],
            left: usize,
            acc: &mut Parts,
            c: i64,
            base: &Q,
            out: &mut HashMap<Parts, Q>,
        ) {
            if let Some((&(col, n), rest)) = creators.split_first() {
                // a_col(-j) z^(j-n) with coefficient C(j-1, n-1)
                for extra in 0..=left {
                    let j = n as i64 + extra as i64;
                    let b = binom(j - 1, n as i64 - 1);
                    acc.push((col, j as u8));
                    rec(va, beta, rest, left - extra, acc, c * b, base, out);
                    acc.pop();
                }
                return;
            }
            let s = va.s_poly(beta, left);
            let k = &(base * sign_q(c));
            for (mono, x) in s.iter() {
                let p = merge(acc, &mono.parts);
                let e = out.entry(p).or_insert_with(Q::zero);
                *e += k * x;
            }
        }
        let mut acc = kept.clone();
        rec(self, beta, creators, budget, &mut acc, 1, coeff, out);
    }

    /// `u_m v` extended bilinearly.
    pub fn product(&self, u: &QElem, m: i64, v: &QElem) -> Result<QElem> {
        let mut acc = QElem::zero();
        for (a, x) in u.terms() {
            for (b, y) in v.terms() {
                let xy = x * y;
                for (c, z) in self.product_mono(a, m, b)?.iter() {
                    acc.add_term(c.clone(), &xy * z);
                }
            }
        }
        Ok(acc)
    }

    pub fn vacuum_elem(&self) -> QElem {
        QElem::mono(self.vacuum())
    }

    /// `a_c(-n)` as an element.
    pub fn heisenberg(&self, colour: usize, depth: u8) -> QElem {
        QElem::mono(Mono::heisenberg(self.rank(), colour, depth))
    }

    /// `x(-n)` for a lattice vector `x`.
    pub fn heisenberg_vec(&self, x: &[i64], depth: u8) -> QElem {
        QElem::from_terms(x.iter().enumerate().map(|(i, c)| (Mono::heisenberg(self.rank(), i, depth), Q::from_integer(BigInt::from(*c)))))
    }

    pub fn exp_elem(&self, beta: &[i64]) -> QElem {
        QElem::mono(Mono::exp(beta))
    }

    /// Translation `T a = a_(-2) 1`.
    pub fn translate(&self, a: &QElem) -> Result<QElem> {
        self.product(a, -2, &self.vacuum_elem())
    }

    pub fn weight_of(&self, a: &QElem) -> Option<i64> {
        let mut it = a.terms().map(|(m, _)| self.weight(m));
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    /// Fock-basis inner product of `a(-n)` parts: `<a_c, a_d>`.
    pub fn gram_entry(&self, c: usize, d: usize) -> i64 {
        self.lattice.gram()[c][d]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    #[test]
    fn e8_dimensions_by_enumeration_and_series() {
        let va = LatticeVA::build("E8", 2).unwrap();
        for (n, d) in [(0, 1), (1, 248), (2, 4124)] {
            assert_eq!(va.basis(n).unwrap().len(), d);
            assert_eq!(va.graded_dimension(n), d as u64);
        }
        assert!(matches!(va.basis(3), Err(Error::Truncation { .. })));
    }

    #[test]
    fn a1_dimensions() {
        let va = LatticeVA::build("A1", 6).unwrap();
        let dims: Vec<usize> = (0..=6).map(|n| va.basis(n).unwrap().len()).collect();
        assert_eq!(dims, vec![1, 3, 4, 7, 13, 19, 29]);
    }

    #[test]
    fn vacuum_and_creation() {
        let va = LatticeVA::build("A2", 4).unwrap();
        let vac = va.vacuum_elem();
        for n in 0..=2 {
            for b in va.basis(n).unwrap().iter() {
                let b = QElem::mono(b.clone());
                assert_eq!(va.product(&vac, -1, &b).unwrap(), b);
                for k in [-3, -2, 0, 1, 2] {
                    assert!(va.product(&vac, k, &b).unwrap().is_zero());
                }
                assert_eq!(va.product(&b, -1, &vac).unwrap(), b);
                for k in 0..3 {
                    assert!(va.product(&b, k, &vac).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn root_products_match_chevalley_relations() {
        let va = LatticeVA::build("A2", 3).unwrap();
        let l = va.lattice().clone();
        for a in l.roots() {
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            let s = va.cocycle().sign(a, &neg);
            let p0 = va.product(&va.exp_elem(a), 0, &va.exp_elem(&neg)).unwrap();
            assert_eq!(p0, va.heisenberg_vec(a, 1).scale(&q(s)));
            let p1 = va.product(&va.exp_elem(a), 1, &va.exp_elem(&neg)).unwrap();
            assert_eq!(p1, va.vacuum_elem().scale(&q(s)));
            // e^a_{-1} e^{-a} has weight 2: (a(-1)^2 + a(-2)) / 2 up to sign
            let pm = va.product(&va.exp_elem(a), -1, &va.exp_elem(&neg)).unwrap();
            let s2 = va.s_poly(a, 2);
            assert_eq!(pm, QElem::from_terms(s2.iter().map(|(m, c)| (m.clone(), c * q(s)))));
        }
    }

    #[test]
    fn heisenberg_commutator() {
        let va = LatticeVA::build("A2", 3).unwrap();
        let h = va.heisenberg(0, 1);
        let h2 = va.heisenberg(1, 1);
        // a_1(-1)_1 a_2(-1) = <a1, a2> vacuum
        assert_eq!(va.product(&h, 1, &h2).unwrap(), va.vacuum_elem().scale(&q(-1)));
        assert!(va.product(&h, 0, &h2).unwrap().is_zero());
    }
}
