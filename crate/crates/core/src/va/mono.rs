//! Monomial keys `a_(c1)(-n1) ... a_(ck)(-nk) (x) e^beta` and weight-space
//! enumeration.
//!
//! The same key shape indexes two bases of a weight space: the Fock basis,
//! where `(c, n)` stands for `alpha_c(-n)`, and the integral basis, where it
//! stands for `s_(alpha_c, n)`.

use std::fmt;

use smallvec::SmallVec;

use crate::roots::RootLattice;

pub type Parts = SmallVec<[(u8, u8); 6]>;
pub type Point = SmallVec<[i16; 8]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    /// `(colour, depth)` sorted ascending
    pub parts: Parts,
    pub lattice: Point,
}

impl Mono {
    pub fn vacuum(rank: usize) -> Mono {
        Mono { parts: Parts::new(), lattice: Point::from_elem(0, rank) }
    }

    pub fn new(mut parts: Parts, lattice: Point) -> Mono {
        parts.sort_unstable();
        Mono { parts, lattice }
    }

    pub fn exp(beta: &[i64]) -> Mono {
        Mono { parts: Parts::new(), lattice: beta.iter().map(|x| *x as i16).collect() }
    }

    pub fn heisenberg(rank: usize, colour: usize, depth: u8) -> Mono {
        let mut parts = Parts::new();
        parts.push((colour as u8, depth));
        Mono { parts, lattice: Point::from_elem(0, rank) }
    }

    pub fn lattice_i64(&self) -> Vec<i64> {
        self.lattice.iter().map(|x| *x as i64).collect()
    }

    pub fn depth(&self) -> i64 {
        self.parts.iter().map(|(_, n)| *n as i64).sum()
    }

    pub fn weight(&self, l: &RootLattice) -> i64 {
        self.depth() + l.norm(&self.lattice_i64()) / 2
    }

    pub fn is_vacuum(&self) -> bool {
        self.parts.is_empty() && self.lattice.iter().all(|x| *x == 0)
    }

    /// Parts of colour `c` as an ascending partition.
    pub fn colour_partition(&self, c: u8) -> SmallVec<[u8; 8]> {
        self.parts.iter().filter(|(d, _)| *d == c).map(|(_, n)| *n).collect()
    }

    pub fn with_parts(&self, parts: Parts) -> Mono {
        Mono::new(parts, self.lattice.clone())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, n) in &self.parts {
            write!(f, "a{}(-{}) ", c + 1, n)?;
        }
        write!(f, "e{:?}", self.lattice.as_slice())
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Multisets of `(colour, depth)` with depths summing to `k`, each sorted.
pub fn coloured_partitions(colours: usize, k: usize) -> Vec<Parts> {
    let mut out = Vec::new();
    let items: Vec<(u8, u8)> = (1..=k).flat_map(|n| (0..colours).map(move |c| (c as u8, n as u8))).collect();
    let mut cur = Parts::new();
    fn rec(items: &[(u8, u8)], start: usize, left: usize, cur: &mut Parts, out: &mut Vec<Parts>) {
        if left == 0 {
            let mut p = cur.clone();
            p.sort_unstable();
            out.push(p);
            return;
        }
        for i in start..items.len() {
            let n = items[i].1 as usize;
            if n <= left {
                cur.push(items[i]);
                rec(items, i, left - n, cur, out);
                cur.pop();
            }
        }
    }
    rec(&items, 0, k, &mut cur, &mut out);
    out
}

/// Number of coloured partitions of each `k <= max`.
pub fn coloured_partition_counts(colours: usize, max: usize) -> Vec<u64> {
    // prod_n (1 - q^n)^(-colours)
    let mut c = vec![0u64; max + 1];
    c[0] = 1;
    for n in 1..=max {
        for _ in 0..colours {
            for k in n..=max {
                c[k] += c[k - n];
            }
        }
    }
    c
}

/// All monomials of weight `n` for a positive definite Gram matrix whose
/// lattice vectors of norm `<= 2n` are `points` (with their norms).
pub fn weight_basis(colours: usize, points: &[(Vec<i64>, i64)], n: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    for (p, norm) in points {
        let half = (*norm / 2) as usize;
        if half > n {
            continue;
        }
        for parts in coloured_partitions(colours, n - half) {
            out.push(Mono { parts, lattice: p.iter().map(|x| *x as i16).collect() });
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts_match_enumeration() {
        let counts = coloured_partition_counts(3, 6);
        for (k, c) in counts.iter().enumerate() {
            assert_eq!(coloured_partitions(3, k).len() as u64, *c);
        }
        assert_eq!(coloured_partition_counts(1, 6), vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(coloured_partition_counts(8, 2), vec![1, 8, 44]);
    }
}
