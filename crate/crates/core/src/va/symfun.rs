//! Change of basis between Heisenberg monomials (power sums `p_n <-> a(-n)`)
//! and the integral generators (complete symmetric functions
//! `h_n <-> s_(a, n)`), colour by colour, plus the Schur-like elements
//! `s_(beta, n)` for arbitrary lattice vectors.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::mono::Parts;

pub type Partition = SmallVec<[u8; 8]>;
pub type Q = BigRational;

/// Polynomial in one colour's variables, keyed by ascending partitions.
type Poly<T> = BTreeMap<Partition, T>;

fn mul_part(a: &Partition, b: &Partition) -> Partition {
    let mut v: Partition = a.iter().chain(b.iter()).copied().collect();
    v.sort_unstable();
    v
}

fn poly_mul<T>(a: &Poly<T>, b: &Poly<T>) -> Poly<T>
where
    T: Clone + Zero + for<'x> std::ops::Mul<&'x T, Output = T> + std::ops::AddAssign,
{
    let mut out: Poly<T> = BTreeMap::new();
    for (pa, ca) in a {
        for (pb, cb) in b {
            let e = out.entry(mul_part(pa, pb)).or_insert_with(T::zero);
            *e += ca.clone() * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn single<T: One>(n: u8) -> Poly<T> {
    let mut p = Partition::new();
    if n > 0 {
        p.push(n);
    }
    [(p, T::one())].into_iter().collect()
}

/// Memoized per-colour conversions.
#[derive(Default, Debug)]
pub struct SymTables {
    p_in_h: RwLock<Vec<Arc<Poly<BigInt>>>>,
    h_in_p: RwLock<Vec<Arc<Poly<Q>>>>,
    part_p_to_h: RwLock<HashMap<Partition, Arc<Vec<(Partition, BigInt)>>>>,
    part_h_to_p: RwLock<HashMap<Partition, Arc<Vec<(Partition, Q)>>>>,
}

impl SymTables {
    /// `p_n` in terms of `h`: `p_n = n h_n - sum_{k<n} p_k h_(n-k)`.
    fn p_in_h(&self, n: usize) -> Arc<Poly<BigInt>> {
        if let Some(p) = self.p_in_h.read().unwrap().get(n) {
            return p.clone();
        }
        let mut tab = self.p_in_h.write().unwrap();
        if tab.is_empty() {
            tab.push(Arc::new(single(0)));
        }
        while tab.len() <= n {
            let m = tab.len();
            let mut acc: Poly<BigInt> = single::<BigInt>(m as u8).into_keys().map(|k| (k, BigInt::from(m))).collect();
            for k in 1..m {
                for (part, c) in poly_mul(&tab[k], &single((m - k) as u8)) {
                    let e = acc.entry(part).or_insert_with(BigInt::zero);
                    *e -= c;
                }
            }
            acc.retain(|_, c| !c.is_zero());
            tab.push(Arc::new(acc));
        }
        tab[n].clone()
    }

    /// `h_n` in terms of `p`: `n h_n = sum_k p_k h_(n-k)`.
    fn h_in_p(&self, n: usize) -> Arc<Poly<Q>> {
        if let Some(p) = self.h_in_p.read().unwrap().get(n) {
            return p.clone();
        }
        let mut tab = self.h_in_p.write().unwrap();
        if tab.is_empty() {
            tab.push(Arc::new(single(0)));
        }
        while tab.len() <= n {
            let m = tab.len();
            let mut acc: Poly<Q> = BTreeMap::new();
            for k in 1..=m {
                for (part, c) in poly_mul(&single::<Q>(k as u8), &tab[m - k]) {
                    let e = acc.entry(part).or_insert_with(Q::zero);
                    *e += c;
                }
            }
            let inv = Q::new(BigInt::one(), BigInt::from(m));
            let acc = acc.into_iter().map(|(k, c)| (k, c * &inv)).filter(|(_, c)| !c.is_zero()).collect();
            tab.push(Arc::new(acc));
        }
        tab[n].clone()
    }

    /// `p_lambda` as an integral combination of `h_mu`.
    pub fn power_to_complete(&self, lambda: &Partition) -> Arc<Vec<(Partition, BigInt)>> {
        if let Some(v) = self.part_p_to_h.read().unwrap().get(lambda) {
            return v.clone();
        }
        let mut acc: Poly<BigInt> = single(0);
        for &n in lambda {
            acc = poly_mul(&acc, &self.p_in_h(n as usize));
        }
        let v = Arc::new(acc.into_iter().collect::<Vec<_>>());
        self.part_p_to_h.write().unwrap().insert(lambda.clone(), v.clone());
        v
    }

    /// `h_lambda` as a rational combination of `p_mu`.
    pub fn complete_to_power(&self, lambda: &Partition) -> Arc<Vec<(Partition, Q)>> {
        if let Some(v) = self.part_h_to_p.read().unwrap().get(lambda) {
            return v.clone();
        }
        let mut acc: Poly<Q> = single(0);
        for &n in lambda {
            acc = poly_mul(&acc, &self.h_in_p(n as usize));
        }
        let v = Arc::new(acc.into_iter().collect::<Vec<_>>());
        self.part_h_to_p.write().unwrap().insert(lambda.clone(), v.clone());
        v
    }
}

/// Splits sorted parts into per-colour partitions.
pub fn split_colours(parts: &Parts) -> Vec<(u8, Partition)> {
    let mut out: Vec<(u8, Partition)> = Vec::new();
    for &(c, n) in parts {
        match out.last_mut() {
            Some((d, p)) if *d == c => p.push(n),
            _ => out.push((c, [n].into_iter().collect())),
        }
    }
    out
}

/// Tensor product over colours of per-colour expansions.
pub fn combine_colours<T>(factors: Vec<(u8, Arc<Vec<(Partition, T)>>)>) -> Vec<(Parts, T)>
where
    T: Clone + One + for<'x> std::ops::Mul<&'x T, Output = T>,
{
    let mut acc: Vec<(Parts, T)> = vec![(Parts::new(), T::one())];
    for (c, exp) in factors {
        let mut next = Vec::with_capacity(acc.len() * exp.len());
        for (p, x) in &acc {
            for (lam, y) in exp.iter() {
                let mut q = p.clone();
                q.extend(lam.iter().map(|n| (c, *n)));
                next.push((q, x.clone() * y));
            }
        }
        acc = next;
    }
    // colours arrive in increasing order and each partition is ascending
    acc
}

/// Coefficient of `z^n` in `exp(c * sum_k p_k z^k / k)`: `sum c^len p_l / z_l`.
pub fn exp_coefficient(c: i64, n: usize) -> Vec<(Partition, Q)> {
    let mut out = Vec::new();
    for lam in partitions(n) {
        let mut z = BigInt::one();
        let mut mult: BTreeMap<u8, u32> = BTreeMap::new();
        for &k in &lam {
            *mult.entry(k).or_default() += 1;
        }
        for (k, m) in &mult {
            z *= BigInt::from(*k).pow(*m);
            for i in 1..=*m {
                z *= i;
            }
        }
        let num = BigInt::from(c).pow(lam.len() as u32);
        if !num.is_zero() || lam.is_empty() {
            out.push((lam, Q::new(num, z)));
        }
    }
    out
}

/// Ascending partitions of `n`.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    fn rec(left: usize, min: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in min..=left {
            cur.push(k as u8);
            rec(left - k, k, cur, out);
            cur.pop();
        }
    }
    rec(n, 1, &mut Partition::new(), &mut out);
    out
}

/// Coefficients `[z^0 .. z^n]` of `H(z)^c` in the `h` variables of one
/// colour, with `H(z) = sum h_k z^k`; negative `c` uses the inverse series.
pub fn complete_series_power(c: i64, n: usize) -> Vec<Poly<BigInt>> {
    let h: Vec<Poly<BigInt>> = (0..=n).map(|k| single(k as u8)).collect();
    let base: Vec<Poly<BigInt>> = if c >= 0 {
        h
    } else {
        // inv_0 = 1, inv_m = -sum_{k=1..m} h_k inv_(m-k)
        let mut inv: Vec<Poly<BigInt>> = vec![single(0)];
        for m in 1..=n {
            let mut acc: Poly<BigInt> = BTreeMap::new();
            for k in 1..=m {
                for (p, x) in poly_mul(&h[k], &inv[m - k]) {
                    let e = acc.entry(p).or_insert_with(BigInt::zero);
                    *e -= x;
                }
            }
            acc.retain(|_, x| !x.is_zero());
            inv.push(acc);
        }
        inv
    };
    let mut acc: Vec<Poly<BigInt>> = (0..=n).map(|k| if k == 0 { single(0) } else { BTreeMap::new() }).collect();
    for _ in 0..c.abs() {
        let mut next: Vec<Poly<BigInt>> = vec![BTreeMap::new(); n + 1];
        for i in 0..=n {
            for j in 0..=n - i {
                for (p, x) in poly_mul(&acc[i], &base[j]) {
                    let e = next[i + j].entry(p).or_insert_with(BigInt::zero);
                    *e += x;
                }
            }
        }
        for v in next.iter_mut() {
            v.retain(|_, x| !x.is_zero());
        }
        acc = next;
    }
    acc
}

pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one() || x.denom().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u8]) -> Partition {
        v.iter().copied().collect()
    }

    #[test]
    fn newton_identities() {
        let t = SymTables::default();
        // p_2 = 2 h_2 - h_1^2
        let p2 = t.power_to_complete(&part(&[2]));
        assert_eq!(p2.as_slice(), &[(part(&[1, 1]), BigInt::from(-1)), (part(&[2]), BigInt::from(2))]);
        // h_2 = (p_1^2 + p_2) / 2
        let h2 = t.complete_to_power(&part(&[2]));
        let half = Q::new(1.into(), 2.into());
        assert_eq!(h2.as_slice(), &[(part(&[1, 1]), half.clone()), (part(&[2]), half)]);
    }

    #[test]
    fn conversions_are_inverse() {
        let t = SymTables::default();
        for n in 1..=6 {
            for lam in partitions(n) {
                // h_lam -> p -> h must return h_lam
                let mut acc: BTreeMap<Partition, Q> = BTreeMap::new();
                for (mu, c) in t.complete_to_power(&lam).iter() {
                    for (nu, d) in t.power_to_complete(mu).iter() {
                        *acc.entry(nu.clone()).or_insert_with(Q::zero) += c * Q::from_integer(d.clone());
                    }
                }
                acc.retain(|_, c| !c.is_zero());
                assert_eq!(acc.len(), 1);
                assert_eq!(acc.get(&lam), Some(&Q::one()));
            }
        }
    }

    #[test]
    fn exp_series_matches_complete_functions() {
        // exp(sum p_k z^k / k) has z^n coefficient h_n
        let t = SymTables::default();
        for n in 0..=5 {
            let mut a: Vec<(Partition, Q)> = exp_coefficient(1, n);
            a.sort();
            let mut b = t.complete_to_power(&[n as u8].into_iter().filter(|x| *x > 0).collect()).to_vec();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn inverse_series() {
        let s = complete_series_power(-1, 3);
        let d = complete_series_power(1, 3);
        // H * H^-1 = 1
        for m in 0..=3 {
            let mut acc: Poly<BigInt> = BTreeMap::new();
            for k in 0..=m {
                for (p, x) in poly_mul(&d[k], &s[m - k]) {
                    *acc.entry(p).or_insert_with(BigInt::zero) += x;
                }
            }
            acc.retain(|_, x| !x.is_zero());
            if m == 0 {
                assert_eq!(acc.len(), 1);
            } else {
                assert!(acc.is_empty());
            }
        }
    }
}
