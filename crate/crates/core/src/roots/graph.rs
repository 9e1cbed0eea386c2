//! Diagram automorphisms, their fixed sublattices, folding metadata, and the
//! sign correction that lifts them to lattice vertex algebras.

use num_rational::Ratio;
use serde::Serialize;

use super::cocycle::Cocycle;
use super::lattice::{classify_cartan, inner_with, Coords, RootLattice, RootType};
use crate::error::{Error, Result};
use crate::linalg::{snf_diag, IntMatrix, ZLattice, ZVec};

/// Folded (non-simply-laced) type attached to a graph automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Folding {
    pub folded_type: String,
    pub lie_dim: u32,
    pub dual_coxeter: u32,
    pub level: u32,
    /// central charge of the full fixed-point VA, as (num, den)
    pub fixed_central_charge: (i64, i64),
    /// central charge of the VA generated in degree one, as (num, den)
    pub generated_central_charge: (i64, i64),
}

impl Folding {
    /// `k dim / (k + h)`.
    pub fn sugawara_charge(&self) -> Ratio<i64> {
        let k = self.level as i64;
        Ratio::new(k * self.lie_dim as i64, k + self.dual_coxeter as i64)
    }
}

#[derive(Clone, Debug)]
pub struct GraphAut {
    kind: RootType,
    perm: Vec<usize>,
    order: u32,
    fixed_basis: Vec<Coords>,
    fixed_type: String,
    folding: Option<Folding>,
    /// symmetric correction form `S` and linear term `l` of the sign function
    corr: Vec<Vec<u8>>,
    linear: Option<Vec<u8>>,
}

fn table_perm(kind: RootType, order: u32) -> Option<Vec<usize>> {
    let n = kind.rank();
    let mut p: Vec<usize> = (0..n).collect();
    match (kind, order) {
        (RootType::D(m), 2) if m >= 4 => {
            p.swap(m - 2, m - 1);
        }
        (RootType::D(4), 3) => {
            // 1 -> 3 -> 4 -> 1
            p[0] = 2;
            p[2] = 3;
            p[3] = 0;
        }
        (RootType::A(m), 2) if m % 2 == 1 && m >= 3 => {
            for (i, x) in p.iter_mut().enumerate() {
                *x = m - 1 - i;
            }
        }
        (RootType::E(6), 2) => {
            p.swap(0, 5);
            p.swap(2, 4);
        }
        _ => return None,
    }
    Some(p)
}

fn folding(kind: RootType, order: u32) -> Option<Folding> {
    let mk = |folded_type: String, lie_dim: u32, dual_coxeter: u32, fixed: (i64, i64), generated: (i64, i64)| Folding {
        folded_type,
        lie_dim,
        dual_coxeter,
        level: 1,
        fixed_central_charge: fixed,
        generated_central_charge: generated,
    };
    match (kind, order) {
        (RootType::D(m), 2) => {
            let n = (m - 1) as i64;
            Some(mk(format!("B{n}"), (n * (2 * n + 1)) as u32, (2 * n - 1) as u32, (n + 1, 1), (2 * n + 1, 2)))
        }
        (RootType::A(m), 2) => {
            let n = m.div_ceil(2) as i64;
            // 2n - 3n/(n+2)
            let r = Ratio::new(2 * n * (n + 2) - 3 * n, n + 2);
            Some(mk(format!("C{n}"), (n * (2 * n + 1)) as u32, (n + 1) as u32, (2 * n - 1, 1), (*r.numer(), *r.denom())))
        }
        (RootType::D(4), 3) => Some(mk("G2".into(), 14, 4, (4, 1), (14, 5))),
        (RootType::E(6), 2) => Some(mk("F4".into(), 52, 9, (6, 1), (26, 5))),
        _ => None,
    }
}

impl GraphAut {
    /// The tabled automorphisms: `(D_{n+1}, 2)`, `(A_{2n-1}, 2)`, `(D_4, 3)`, `(E_6, 2)`.
    pub fn new(l: &RootLattice, order: u32) -> Result<GraphAut> {
        let perm = table_perm(l.kind(), order).ok_or_else(|| Error::NotInTable { lattice: l.name(), order })?;
        let g = GraphAut::from_perm(l, perm, order)?;
        if g.linear.is_none() {
            return Err(Error::NoLift(order));
        }
        Ok(g)
    }

    /// Reversal of an `A_n` diagram (any `n >= 2`). For even `n` no sign
    /// correction makes the lift both of order 2 and trivial on the fixed
    /// sublattice; such automorphisms are only used where signs vanish.
    pub fn diagram_flip(l: &RootLattice) -> Result<GraphAut> {
        let RootType::A(n) = l.kind() else {
            return Err(Error::NotInTable { lattice: l.name(), order: 2 });
        };
        if n < 2 {
            return Err(Error::NotInTable { lattice: l.name(), order: 2 });
        }
        GraphAut::from_perm(l, (0..n).rev().collect(), 2)
    }

    fn from_perm(l: &RootLattice, perm: Vec<usize>, order: u32) -> Result<GraphAut> {
        let n = l.rank();
        let kind = l.kind();
        // isometry of exact order
        let c = l.gram();
        for i in 0..n {
            for j in 0..n {
                if c[perm[i]][perm[j]] != c[i][j] {
                    return Err(Error::NotInTable { lattice: l.name(), order });
                }
            }
        }
        let mut probe: Vec<usize> = (0..n).collect();
        for k in 1..=order {
            probe = probe.iter().map(|&i| perm[i]).collect();
            let id = probe.iter().enumerate().all(|(i, &x)| i == x);
            if id != (k == order) {
                return Err(Error::NotInTable { lattice: l.name(), order });
            }
        }
        let mut g = GraphAut {
            kind,
            perm,
            order,
            fixed_basis: Vec::new(),
            fixed_type: String::new(),
            folding: folding(kind, order),
            corr: Vec::new(),
            linear: None,
        };
        // simple system of the fixed root subsystem
        let fixed_pos: Vec<Coords> = l.positive_roots().iter().filter(|r| g.apply(r) == **r).cloned().collect();
        let decomposable = |r: &Coords| {
            fixed_pos.iter().any(|a| {
                let d: Coords = r.iter().zip(a).map(|(x, y)| x - y).collect();
                d.iter().all(|x| *x >= 0) && d.iter().any(|x| *x > 0) && fixed_pos.contains(&d)
            })
        };
        g.fixed_basis = fixed_pos.iter().filter(|r| !decomposable(r)).cloned().collect();
        let sub_gram: Vec<Vec<i64>> =
            g.fixed_basis.iter().map(|a| g.fixed_basis.iter().map(|b| inner_with(c, a, b)).collect()).collect();
        g.fixed_type = classify_cartan(&sub_gram);

        let eps = Cocycle::new(l);
        let b = eps.bits();
        g.corr = (0..n).map(|i| (0..n).map(|j| (b[i][j] + b[g.perm[i]][g.perm[j]]) % 2).collect()).collect();
        g.linear = g.search_linear(l);
        Ok(g)
    }

    fn search_linear(&self, l: &RootLattice) -> Option<Vec<u8>> {
        let n = l.rank();
        'outer: for mask in 0u32..(1 << n) {
            let lin: Vec<u8> = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
            for i in 0..n {
                let mut a = l.simple_root(i);
                let mut par = 0;
                for _ in 0..self.order {
                    par ^= self.q(&lin, &a);
                    a = self.apply(&a);
                }
                if par != 0 {
                    continue 'outer;
                }
            }
            if self.fixed_basis.iter().any(|f| self.q(&lin, f) != 0) {
                continue;
            }
            return Some(lin);
        }
        None
    }

    fn q(&self, lin: &[u8], a: &[i64]) -> u8 {
        let n = a.len();
        let mut s = 0i64;
        for i in 0..n {
            if lin[i] == 1 {
                s += a[i];
            }
            for j in i + 1..n {
                if self.corr[i][j] == 1 {
                    s += a[i] * a[j];
                }
            }
        }
        s.rem_euclid(2) as u8
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Image of simple root `i` is simple root `perm()[i]`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, a: &[i64]) -> Coords {
        let mut out = vec![0; a.len()];
        for (i, x) in a.iter().enumerate() {
            out[self.perm[i]] = *x;
        }
        out
    }

    /// Basis of the fixed sublattice: simple roots of the fixed root subsystem.
    pub fn fixed_basis(&self) -> &[Coords] {
        &self.fixed_basis
    }

    pub fn fixed_type(&self) -> &str {
        &self.fixed_type
    }

    pub fn folding(&self) -> Option<&Folding> {
        self.folding.as_ref()
    }

    pub fn has_lift(&self) -> bool {
        self.linear.is_some()
    }

    /// Correction sign `eta(a)` of the lift `u (x) e^a -> gamma(u) (x) eta(a) e^(gamma a)`.
    pub fn eta(&self, a: &[i64]) -> i64 {
        let lin = self.linear.as_ref().expect("lift exists");
        if self.q(lin, a) == 0 {
            1
        } else {
            -1
        }
    }

    /// Fixed sublattice from orbit sums of simple roots.
    pub fn fixed_sublattice(&self) -> ZLattice {
        let n = self.perm.len();
        let mut gens = Vec::new();
        for i in 0..n {
            let mut v = vec![0i64; n];
            let mut j = i;
            loop {
                v[j] = 1;
                j = self.perm[j];
                if j == i {
                    break;
                }
            }
            gens.push(ZVec::from_i64(&v));
        }
        ZLattice::from_generators(n, gens)
    }

    /// Whether the fixed-root simple system spans the full fixed sublattice.
    pub fn fixed_basis_spans(&self) -> bool {
        let n = self.perm.len();
        ZLattice::from_generators(n, self.fixed_basis.iter().map(|v| ZVec::from_i64(v))) == self.fixed_sublattice()
    }

    /// Elementary divisors of `L / X^gamma`; all ones iff it is torsion free.
    pub fn quotient_divisors(&self) -> Vec<num_bigint::BigInt> {
        let fixed = self.fixed_sublattice();
        snf_diag(&IntMatrix::from_rows(self.perm.len(), fixed.basis().to_vec()))
    }
}

/// `graph_automorphism(L, p)` for the tabled pairs.
pub fn graph_automorphism(l: &RootLattice, order: u32) -> Result<GraphAut> {
    GraphAut::new(l, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aut(name: &str, p: u32) -> GraphAut {
        GraphAut::new(&RootLattice::parse(name).unwrap(), p).unwrap()
    }

    #[test]
    fn table_rows() {
        let g = aut("D4", 3);
        assert_eq!(g.fixed_type(), "A2");
        assert_eq!(g.folding().unwrap().folded_type, "G2");
        let g = aut("E6", 2);
        assert_eq!(g.fixed_type(), "D4");
        assert_eq!(g.folding().unwrap().folded_type, "F4");
        let g = aut("A3", 2);
        assert_eq!(g.fixed_type(), "A1+A1");
        assert_eq!(g.folding().unwrap().folded_type, "C2");
        for n in 4..=8 {
            let g = aut(&format!("D{n}"), 2);
            assert_eq!(g.fixed_type(), format!("D{}", n - 1).replace("D3", "A3"));
        }
    }

    #[test]
    fn not_in_table() {
        let a2 = RootLattice::parse("A2").unwrap();
        assert!(matches!(GraphAut::new(&a2, 2), Err(Error::NotInTable { .. })));
        let e7 = RootLattice::parse("E7").unwrap();
        assert!(GraphAut::new(&e7, 2).is_err());
        let d5 = RootLattice::parse("D5").unwrap();
        assert!(GraphAut::new(&d5, 3).is_err());
    }

    #[test]
    fn fixed_sublattice_is_root_sublattice_and_summand() {
        for (name, p) in [("D4", 3), ("D4", 2), ("E6", 2), ("A3", 2), ("A5", 2), ("D5", 2), ("D6", 2)] {
            let g = aut(name, p);
            assert!(g.fixed_basis_spans(), "{name}");
            assert!(g.quotient_divisors().iter().all(|d| *d == 1.into()), "{name}");
        }
    }

    #[test]
    fn central_charges_match_table() {
        for name in ["D4", "D5", "D6", "A3", "A5", "A7", "E6"] {
            let g = aut(name, 2);
            let f = g.folding().unwrap();
            let (a, b) = f.generated_central_charge;
            assert_eq!(f.sugawara_charge(), Ratio::new(a, b), "{name}");
        }
        let f = aut("D4", 3).folding().unwrap().clone();
        assert_eq!(f.sugawara_charge(), Ratio::new(14, 5));
    }

    #[test]
    fn lift_signs_are_trivial_on_fixed_lattice() {
        for (name, p) in [("D4", 3), ("E6", 2), ("A3", 2), ("D5", 2)] {
            let g = aut(name, p);
            for f in g.fixed_basis() {
                assert_eq!(g.eta(f), 1);
            }
        }
    }

    #[test]
    fn even_flip_has_no_lift() {
        let a2 = RootLattice::parse("A2").unwrap();
        let g = GraphAut::diagram_flip(&a2).unwrap();
        assert!(!g.has_lift());
        assert_eq!(g.fixed_type(), "A1");
    }
}
