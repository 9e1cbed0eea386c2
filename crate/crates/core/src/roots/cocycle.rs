//! Bimultiplicative sign cocycle on a root lattice.

use super::lattice::RootLattice;

/// `eps(a, b) = (-1)^(a^T B b)` with `B_ii = 1`, `B_ij = <a_i, a_j> mod 2`
/// below the diagonal and `0` above it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    bits: Vec<Vec<u8>>,
}

impl Cocycle {
    pub fn new(l: &RootLattice) -> Cocycle {
        let n = l.rank();
        let g = l.gram();
        let bits = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => 1,
                        std::cmp::Ordering::Greater => g[i][j].rem_euclid(2) as u8,
                        std::cmp::Ordering::Less => 0,
                    })
                    .collect()
            })
            .collect();
        Cocycle { bits }
    }

    pub fn bits(&self) -> &[Vec<u8>] {
        &self.bits
    }

    pub fn parity(&self, a: &[i64], b: &[i64]) -> u8 {
        let mut s = 0i64;
        for (i, x) in a.iter().enumerate() {
            if x & 1 == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.bits[i][j] == 1 {
                    s += y;
                }
            }
        }
        s.rem_euclid(2) as u8
    }

    /// `+1` or `-1`.
    pub fn sign(&self, a: &[i64], b: &[i64]) -> i64 {
        if self.parity(a, b) == 0 {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_on_all_root_pairs() {
        for name in ["A1", "A3", "D4", "E6", "E8"] {
            let l = RootLattice::parse(name).unwrap();
            let eps = Cocycle::new(&l);
            let zero = vec![0; l.rank()];
            for a in l.roots() {
                assert_eq!(eps.sign(a, a), -1);
                assert_eq!(eps.sign(&zero, a), 1);
                assert_eq!(eps.sign(a, &zero), 1);
                for b in l.roots() {
                    let want = if l.inner(a, b).rem_euclid(2) == 0 { 1 } else { -1 };
                    assert_eq!(eps.sign(a, b) * eps.sign(b, a), want);
                }
            }
        }
    }
}
