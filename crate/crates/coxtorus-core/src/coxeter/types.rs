//! Coxeter matrices and recognition of finite types.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Entry value standing for an infinite label.
pub const INFINITY: u64 = u64::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    pub n: usize,
    entries: Vec<u64>,
}

impl CoxeterMatrix {
    pub fn new(n: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidInput("coxeter matrix has wrong size".into()));
        }
        for i in 0..n {
            if entries[i * n + i] != 1 {
                return Err(Error::InvalidInput("diagonal entries must be 1".into()));
            }
            for j in 0..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(Error::InvalidInput("coxeter matrix must be symmetric".into()));
                }
                if i != j && entries[i * n + j] < 2 {
                    return Err(Error::InvalidInput("off-diagonal entries must be >= 2".into()));
                }
            }
        }
        Ok(CoxeterMatrix { n, entries })
    }

    /// Matrix with all off-diagonal entries 2 except those listed.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut e = vec![2u64; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        for &(i, j, m) in edges {
            e[i * n + j] = m;
            e[j * n + i] = m;
        }
        Self::new(n, e)
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Principal submatrix on the listed indices, in that order.
    pub fn restrict(&self, idx: &[usize]) -> CoxeterMatrix {
        let k = idx.len();
        let mut e = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                e.push(self.get(i, j));
            }
        }
        CoxeterMatrix { n: k, entries: e }
    }

    /// Apply a vertex relabeling: new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterMatrix {
        self.restrict(perm)
    }

    /// Edges `(i, j, m)` with `i < j` and `m != 2`.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let m = self.get(i, j);
                if m != 2 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for w in 0..self.n {
                    if !seen[w] && w != v && self.get(v, w) != 2 {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Canonical form under vertex relabeling: colour refinement, then brute force inside colour classes.
    pub fn canonical_form(&self) -> Vec<u64> {
        let n = self.n;
        let mut color: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row: Vec<u64> = (0..n).filter(|&j| j != i).map(|j| self.get(i, j)).collect();
                row.sort_unstable();
                row
            })
            .collect();
        let mut ids = compress(&color);
        loop {
            color = (0..n)
                .map(|i| {
                    let mut sig: Vec<u64> = Vec::new();
                    let mut nb: Vec<(u64, u64)> = (0..n)
                        .filter(|&j| j != i)
                        .map(|j| (self.get(i, j), ids[j] as u64))
                        .collect();
                    nb.sort_unstable();
                    sig.push(ids[i] as u64);
                    for (a, b) in nb {
                        sig.push(a);
                        sig.push(b);
                    }
                    sig
                })
                .collect();
            let next = compress(&color);
            let classes = |v: &[usize]| {
                let mut u = v.to_vec();
                u.sort_unstable();
                u.dedup();
                u.len()
            };
            if classes(&next) == classes(&ids) {
                ids = next;
                break;
            }
            ids = next;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (ids[i], i));
        let mut blocks: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for k in 1..=n {
            if k == n || ids[order[k]] != ids[order[start]] {
                blocks.push((start, k));
                start = k;
            }
        }
        let mut best: Option<Vec<u64>> = None;
        let mut perm = order.clone();
        block_permute(&mut perm, &blocks, 0, 0, &mut |p| {
            let e = self.restrict(p).entries;
            if best.as_ref().map_or(true, |b| e < *b) {
                best = Some(e);
            }
        });
        let mut out = best.unwrap_or_default();
        let mut sizes: Vec<u64> = Vec::new();
        for &(a, b) in &blocks {
            sizes.push(ids[order[a]] as u64);
            sizes.push((b - a) as u64);
        }
        out.extend(sizes);
        out
    }

    pub fn is_isomorphic(&self, other: &CoxeterMatrix) -> bool {
        self.n == other.n && self.canonical_form() == other.canonical_form()
    }
}

fn compress(sigs: &[Vec<u64>]) -> Vec<usize> {
    let mut sorted: Vec<&Vec<u64>> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(&s).unwrap()).collect()
}

fn block_permute(
    p: &mut Vec<usize>,
    blocks: &[(usize, usize)],
    b: usize,
    k: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if b == blocks.len() {
        f(p);
        return;
    }
    let (start, end) = blocks[b];
    let pos = start + k;
    if pos == end {
        block_permute(p, blocks, b + 1, 0, f);
        return;
    }
    for i in pos..end {
        p.swap(pos, i);
        block_permute(p, blocks, b, k + 1, f);
        p.swap(pos, i);
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                let m = self.get(i, j);
                if m == INFINITY {
                    write!(f, "inf")?;
                } else {
                    write!(f, "{}", m)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Irreducible finite Coxeter types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteKind {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H3,
    H4,
    I2(u64),
}

impl FiniteKind {
    pub fn degrees(&self) -> Vec<u64> {
        match *self {
            FiniteKind::A(n) => (2..=n as u64 + 1).collect(),
            FiniteKind::B(n) => (1..=n as u64).map(|i| 2 * i).collect(),
            FiniteKind::D(n) => {
                let mut d: Vec<u64> = (1..n as u64).map(|i| 2 * i).collect();
                d.push(n as u64);
                d.sort_unstable();
                d
            }
            FiniteKind::E(6) => vec![2, 5, 6, 8, 9, 12],
            FiniteKind::E(7) => vec![2, 6, 8, 10, 12, 14, 18],
            FiniteKind::E(_) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            FiniteKind::F4 => vec![2, 6, 8, 12],
            FiniteKind::H3 => vec![2, 6, 10],
            FiniteKind::H4 => vec![2, 12, 20, 30],
            FiniteKind::I2(m) => vec![2, m],
        }
    }

    pub fn order(&self) -> u64 {
        self.degrees().iter().product()
    }

    pub fn name(&self) -> String {
        match *self {
            FiniteKind::A(n) => format!("A{}", n),
            FiniteKind::B(n) => format!("B{}", n),
            FiniteKind::D(n) => format!("D{}", n),
            FiniteKind::E(n) => format!("E{}", n),
            FiniteKind::F4 => "F4".into(),
            FiniteKind::H3 => "H3".into(),
            FiniteKind::H4 => "H4".into(),
            FiniteKind::I2(m) => format!("I2({})", m),
        }
    }
}

/// Classify one connected component; `None` when it is not of finite type.
fn identify_component(m: &CoxeterMatrix, comp: &[usize]) -> Option<FiniteKind> {
    let k = comp.len();
    if k == 1 {
        return Some(FiniteKind::A(1));
    }
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let l = m.get(comp[a], comp[b]);
            if l == INFINITY {
                return None;
            }
            if l != 2 {
                edges.push((a, b, l));
            }
        }
    }
    if edges.len() != k - 1 {
        return None;
    }
    if k == 2 {
        let l = edges[0].2;
        return Some(match l {
            3 => FiniteKind::A(2),
            4 => FiniteKind::B(2),
            _ => FiniteKind::I2(l),
        });
    }
    let mut deg = vec![0usize; k];
    for &(a, b, _) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let heavy: Vec<&(usize, usize, u64)> = edges.iter().filter(|e| e.2 > 3).collect();
    let branch: Vec<usize> = (0..k).filter(|&v| deg[v] >= 3).collect();
    if branch.is_empty() {
        match heavy.len() {
            0 => Some(FiniteKind::A(k)),
            1 => {
                let &(a, b, l) = heavy[0];
                let at_end = deg[a] == 1 || deg[b] == 1;
                match l {
                    4 if at_end => Some(FiniteKind::B(k)),
                    4 if k == 4 => Some(FiniteKind::F4),
                    5 if at_end && k == 3 => Some(FiniteKind::H3),
                    5 if at_end && k == 4 => Some(FiniteKind::H4),
                    _ => None,
                }
            }
            _ => None,
        }
    } else {
        if branch.len() != 1 || !heavy.is_empty() || deg[branch[0]] != 3 {
            return None;
        }
        let c = branch[0];
        let adj = |v: usize| -> Vec<usize> {
            edges
                .iter()
                .filter_map(|&(a, b, _)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
                .collect()
        };
        let mut arms = Vec::new();
        for start in adj(c) {
            let mut len = 1;
            let mut prev = c;
            let mut cur = start;
            loop {
                let next: Vec<usize> = adj(cur).into_iter().filter(|&x| x != prev).collect();
                if next.is_empty() {
                    break;
                }
                prev = cur;
                cur = next[0];
                len += 1;
            }
            arms.push(len);
        }
        arms.sort_unstable();
        match (arms[0], arms[1], arms[2]) {
            (1, 1, _) => Some(FiniteKind::D(k)),
            (1, 2, 2) => Some(FiniteKind::E(6)),
            (1, 2, 3) => Some(FiniteKind::E(7)),
            (1, 2, 4) => Some(FiniteKind::E(8)),
            _ => None,
        }
    }
}

/// Finite irreducible components with their vertex sets, or an error when some component is infinite.
pub fn identify_finite_type(m: &CoxeterMatrix) -> Result<Vec<(FiniteKind, Vec<usize>)>> {
    let mut out = Vec::new();
    for comp in m.components() {
        match identify_component(m, &comp) {
            Some(k) => out.push((k, comp)),
            None => {
                return Err(Error::FiniteTypeRequired(format!(
                    "component {:?} is not of finite type",
                    comp
                )))
            }
        }
    }
    Ok(out)
}

pub fn is_finite_type(m: &CoxeterMatrix) -> bool {
    identify_finite_type(m).is_ok()
}

/// Group order of a finite-type Coxeter matrix (1 for the empty matrix).
pub fn finite_order(m: &CoxeterMatrix) -> Result<u64> {
    Ok(identify_finite_type(m)?.iter().map(|(k, _)| k.order()).product())
}

/// Human readable type such as `A1xH3` or `I2(5)xI2(5)`.
pub fn type_name(m: &CoxeterMatrix) -> Result<String> {
    let mut names: Vec<String> = identify_finite_type(m)?.iter().map(|(k, _)| k.name()).collect();
    if names.is_empty() {
        return Ok("trivial".into());
    }
    names.sort();
    Ok(names.join("x"))
}
