//! ADE root lattices in simple-root coordinates with the Cartan Gram form.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Coords = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A(usize),
    D(usize),
    E(usize),
}

impl RootType {
    pub fn rank(self) -> usize {
        match self {
            RootType::A(n) | RootType::D(n) | RootType::E(n) => n,
        }
    }

    fn validate(self) -> Result<()> {
        let ok = match self {
            RootType::A(n) => (1..=8).contains(&n),
            RootType::D(n) => (3..=8).contains(&n),
            RootType::E(n) => (6..=8).contains(&n),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedType(self.to_string()))
        }
    }

    /// Bourbaki-numbered Dynkin edges, 0-based.
    fn edges(self) -> Vec<(usize, usize)> {
        match self {
            RootType::A(n) => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            RootType::D(n) => {
                let mut e: Vec<_> = (0..n - 3).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            RootType::E(n) => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::A(n) => write!(f, "A{n}"),
            RootType::D(n) => write!(f, "D{n}"),
            RootType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<RootType> {
        let bad = || Error::UnsupportedType(s.to_string());
        let t = s.trim().replace('_', "");
        let mut ch = t.chars();
        let head = ch.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = ch.as_str().parse().map_err(|_| bad())?;
        let ty = match head {
            'A' => RootType::A(n),
            'D' => RootType::D(n),
            'E' => RootType::E(n),
            _ => return Err(bad()),
        };
        ty.validate()?;
        Ok(ty)
    }
}

#[derive(Clone, Debug)]
pub struct RootLattice {
    kind: RootType,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Coords>,
    roots: Vec<Coords>,
    index: HashMap<Coords, usize>,
}

pub fn inner_with(gram: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            s += x * gram[i][j] * y;
        }
    }
    s
}

impl RootLattice {
    pub fn build(kind: RootType) -> Result<RootLattice> {
        kind.validate()?;
        let n = kind.rank();
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in kind.edges() {
            cartan[i][j] = -1;
            cartan[j][i] = -1;
        }
        // positive roots: close the simple roots under adding alpha_i when <b, alpha_i> = -1
        let mut positive: Vec<Coords> = (0..n).map(|i| unit(n, i)).collect();
        let mut seen: std::collections::HashSet<Coords> = positive.iter().cloned().collect();
        let mut k = 0;
        while k < positive.len() {
            let b = positive[k].clone();
            for i in 0..n {
                let ip: i64 = (0..n).map(|j| b[j] * cartan[j][i]).sum();
                if ip == -1 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if seen.insert(c.clone()) {
                        positive.push(c);
                    }
                }
            }
            k += 1;
        }
        positive.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| r.iter().map(|x| -x).collect::<Coords>()));
        let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(RootLattice { kind, cartan, positive, roots, index })
    }

    pub fn parse(name: &str) -> Result<RootLattice> {
        RootLattice::build(name.parse()?)
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        inner_with(&self.cartan, a, b)
    }

    pub fn norm(&self, a: &[i64]) -> i64 {
        self.inner(a, a)
    }

    pub fn simple_root(&self, i: usize) -> Coords {
        unit(self.rank(), i)
    }

    /// Positive roots by height, then reverse-lex.
    pub fn positive_roots(&self) -> &[Coords] {
        &self.positive
    }

    /// Positive roots followed by their negatives in the same order.
    pub fn roots(&self) -> &[Coords] {
        &self.roots
    }

    pub fn root_index(&self, a: &[i64]) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn is_root(&self, a: &[i64]) -> bool {
        self.index.contains_key(a)
    }

    pub fn highest_root(&self) -> &Coords {
        self.positive.last().unwrap()
    }

    /// All lattice vectors with `<v,v> <= max_norm`, sorted by norm then lex.
    pub fn vectors_up_to(&self, max_norm: i64) -> Vec<Coords> {
        let mut out = short_vectors(&self.cartan, max_norm);
        out.sort_by(|a, b| self.norm(a).cmp(&self.norm(b)).then_with(|| a.cmp(b)));
        out
    }

    /// Number of lattice vectors of each norm `0, 2, ..., 2*max_half`.
    pub fn theta_coefficients(&self, max_half: usize) -> Vec<u64> {
        let mut out = vec![0u64; max_half + 1];
        for v in short_vectors(&self.cartan, 2 * max_half as i64) {
            out[(self.norm(&v) / 2) as usize] += 1;
        }
        out
    }
}

pub fn unit(n: usize, i: usize) -> Coords {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn height(a: &[i64]) -> i64 {
    a.iter().sum()
}

type Q = Ratio<i128>;

/// Exact Fincke-Pohst enumeration of `{x : x^T G x <= bound}` for a positive
/// definite integral Gram matrix `G`.
pub fn short_vectors(gram: &[Vec<i64>], bound: i64) -> Vec<Coords> {
    let n = gram.len();
    let mut q: Vec<Vec<Q>> = gram.iter().map(|r| r.iter().map(|x| Q::from(*x as i128)).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let d = q[k][i] * q[i][l];
                q[k][l] -= d;
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    if n == 0 {
        return vec![vec![]];
    }
    enumerate(&q, n - 1, Q::from(bound as i128), &mut x, &mut out);
    out
}

fn enumerate(q: &[Vec<Q>], i: usize, rem: Q, x: &mut Coords, out: &mut Vec<Coords>) {
    let n = q.len();
    let mut c = Q::from(0);
    for j in i + 1..n {
        c -= q[i][j] * Q::from(x[j] as i128);
    }
    let r = rem / q[i][i];
    let ok = |v: i64| {
        let d = Q::from(v as i128) - c;
        d * d <= r
    };
    let start = c.floor().to_integer() as i64;
    let mut vals = Vec::new();
    let mut v = start;
    while ok(v) {
        vals.push(v);
        v -= 1;
    }
    let mut v = start + 1;
    while ok(v) {
        vals.push(v);
        v += 1;
    }
    for v in vals {
        x[i] = v;
        let d = Q::from(v as i128) - c;
        let left = rem - q[i][i] * d * d;
        if i == 0 {
            out.push(x.clone());
        } else {
            enumerate(q, i - 1, left, x, out);
        }
    }
    x[i] = 0;
}

/// Dynkin type of a simply-laced Cartan matrix, components joined by `+`.
pub fn classify_cartan(c: &[Vec<i64>]) -> String {
    let n = c.len();
    if n == 0 {
        return "0".into();
    }
    let mut comp = vec![usize::MAX; n];
    let mut names = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut nodes = vec![s];
        comp[s] = s;
        let mut k = 0;
        while k < nodes.len() {
            let u = nodes[k];
            for v in 0..n {
                if v != u && c[u][v] != 0 && comp[v] == usize::MAX {
                    comp[v] = s;
                    nodes.push(v);
                }
            }
            k += 1;
        }
        let deg = |u: usize| nodes.iter().filter(|&&v| v != u && c[u][v] != 0).count();
        let m = nodes.len();
        let branch = nodes.iter().copied().find(|&u| deg(u) == 3);
        let name = match branch {
            None => format!("A{m}"),
            Some(b) => {
                let mut arms: Vec<usize> = nodes
                    .iter()
                    .copied()
                    .filter(|&v| v != b && c[b][v] != 0)
                    .map(|start| {
                        let (mut prev, mut cur, mut len) = (b, start, 1);
                        while let Some(nx) = nodes.iter().copied().find(|&w| w != prev && w != cur && c[cur][w] != 0) {
                            prev = cur;
                            cur = nx;
                            len += 1;
                        }
                        len
                    })
                    .collect();
                arms.sort();
                match arms[..] {
                    [1, 1, _] => format!("D{m}"),
                    [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => format!("E{m}"),
                    _ => format!("?{m}"),
                }
            }
        };
        names.push(name);
    }
    names.sort();
    names.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (name, count) in [("A1", 2), ("A2", 6), ("A3", 12), ("D4", 24), ("D5", 40), ("E6", 72), ("E7", 126), ("E8", 240)] {
            assert_eq!(RootLattice::parse(name).unwrap().roots().len(), count, "{name}");
        }
    }

    #[test]
    fn bad_names() {
        assert!(RootLattice::parse("E9").is_err());
        assert!(RootLattice::parse("B3").is_err());
        assert!(RootLattice::parse("A0").is_err());
    }

    #[test]
    fn highest_root_e8() {
        let e8 = RootLattice::parse("E8").unwrap();
        assert_eq!(e8.highest_root(), &vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn enumeration_agrees_with_roots() {
        for name in ["A2", "D4", "E6"] {
            let l = RootLattice::parse(name).unwrap();
            let v = l.vectors_up_to(2);
            assert_eq!(v.len(), l.roots().len() + 1);
            assert!(v.iter().skip(1).all(|x| l.is_root(x)));
        }
    }

    #[test]
    fn classification() {
        for name in ["A1", "A5", "D4", "D7", "E6", "E7", "E8"] {
            let l = RootLattice::parse(name).unwrap();
            assert_eq!(classify_cartan(l.gram()), name);
        }
        assert_eq!(classify_cartan(&[vec![2, 0], vec![0, 2]]), "A1+A1");
    }
}
