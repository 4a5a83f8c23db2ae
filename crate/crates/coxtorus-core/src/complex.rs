//! Equivariant cell complexes and their deflation to chain complexes of `Z[W]`-modules.
//!
//! A complex is first described orbit by orbit: each orbit of cells has a
//! stabilizer, given by generators in the finite group, and boundary terms
//! `coeff * g . e'`. Deflation turns an orbit with stabilizer `H` into the
//! permutation module on `W/H`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::coxeter::{CosetSpace, CoxeterSystem, GroupTable, Side};
use crate::error::{Error, Result};
use crate::extension::{distinguished_reflection, extended_matrix, parabolic_order, HatGroup};
use crate::homology::SparseIntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CellLabel {
    /// Subset `I` of the extended generating set (torus cells `wH_I`).
    Subset(Vec<usize>),
    /// Chain `Z_0 < ... < Z_d` of vertex sets of alcove faces.
    Flag(Vec<Vec<usize>>),
}

impl core::fmt::Display for CellLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        fn set(f: &mut core::fmt::Formatter<'_>, s: &[usize]) -> core::fmt::Result {
            write!(f, "{{")?;
            for (i, x) in s.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "}}")
        }
        match self {
            CellLabel::Subset(s) => set(f, s),
            CellLabel::Flag(z) => {
                write!(f, "(")?;
                for (i, s) in z.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    set(f, s)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitCell {
    pub label: CellLabel,
    /// Stabilizer generators as indices into the group table.
    pub stabilizer: Vec<usize>,
    pub expected_order: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitTerm {
    pub target: usize,
    pub coeff: i64,
    /// Table index of the group element `g` in `coeff * g . e'`.
    pub twist: usize,
}

#[derive(Clone, Debug)]
pub struct OrbitComplex {
    pub dim: usize,
    pub cells: Vec<Vec<OrbitCell>>,
    /// `boundary[k][c]`; empty in degree 0.
    pub boundary: Vec<Vec<Vec<OrbitTerm>>>,
}

/// One permutation module `Z[W/H]` of a chain group.
#[derive(Clone, Debug)]
pub struct Block {
    pub label: CellLabel,
    pub cosets: CosetSpace,
}

impl Block {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub name: String,
    pub dim: usize,
    pub table: Arc<GroupTable>,
    pub blocks: Vec<Vec<Block>>,
    /// `boundaries[k]` maps `C_k` to `C_{k-1}`; `boundaries[0]` has no rows.
    pub boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    pub fn rank(&self, k: usize) -> usize {
        self.blocks.get(k).map_or(0, |b| b.iter().map(|x| x.len()).sum())
    }

    pub fn offsets(&self, k: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.blocks[k].len() + 1);
        let mut acc = 0;
        out.push(0);
        for b in &self.blocks[k] {
            acc += b.len();
            out.push(acc);
        }
        out
    }

    /// Block and coset index of a basis element.
    pub fn locate(&self, k: usize, idx: usize) -> (usize, usize) {
        let mut rest = idx;
        for (b, blk) in self.blocks[k].iter().enumerate() {
            if rest < blk.len() {
                return (b, rest);
            }
            rest -= blk.len();
        }
        panic!("basis index {} out of range in degree {}", idx, k);
    }

    /// Label and ShortLex word of the coset representative.
    pub fn cell(&self, k: usize, idx: usize) -> (&CellLabel, &[u8]) {
        let (b, i) = self.locate(k, idx);
        let blk = &self.blocks[k][b];
        (&blk.label, self.table.word(blk.cosets.reps[i]))
    }

    /// Permutation of the degree-`k` basis induced by left multiplication with `s` (0-based).
    pub fn action(&self, k: usize, s: usize) -> Vec<usize> {
        let off = self.offsets(k);
        let mut out = Vec::with_capacity(self.rank(k));
        for (b, blk) in self.blocks[k].iter().enumerate() {
            for &w in &blk.cosets.reps {
                out.push(off[b] + blk.cosets.index_of(self.table.gen_mul(s, w)));
            }
        }
        out
    }

    /// `s . boundary(e) = boundary(s . e)` for every generator and cell.
    pub fn check_equivariance(&self) -> bool {
        for k in 1..=self.dim {
            let m = &self.boundaries[k];
            for s in 0..self.table.rank {
                let top = self.action(k, s);
                let bot = self.action(k - 1, s);
                for (c, col) in m.columns.iter().enumerate() {
                    let mut lhs: Vec<(u32, i64)> = col.iter().map(|&(r, v)| (bot[r as usize] as u32, v)).collect();
                    lhs.sort_unstable();
                    let rhs = &m.columns[top[c]];
                    if lhs != *rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Replace each orbit with stabilizer `H` by `Z[W/H]` and push the boundary down.
pub fn deflate(name: &str, oc: &OrbitComplex, table: &Arc<GroupTable>) -> Result<ChainComplex> {
    let mut blocks: Vec<Vec<Block>> = Vec::with_capacity(oc.dim + 1);
    for cells in &oc.cells {
        let mut row = Vec::with_capacity(cells.len());
        for cell in cells {
            let h = table.closure(&cell.stabilizer);
            if let Some(e) = cell.expected_order {
                if h.order() as u64 != e {
                    return Err(Error::Inconsistent(format!(
                        "stabilizer image of {} has order {} instead of {}",
                        cell.label,
                        h.order(),
                        e
                    )));
                }
            }
            row.push(Block { label: cell.label.clone(), cosets: table.cosets(&h, Side::Left) });
        }
        blocks.push(row);
    }
    let mut cx = ChainComplex {
        name: name.into(),
        dim: oc.dim,
        table: table.clone(),
        blocks,
        boundaries: Vec::with_capacity(oc.dim + 1),
    };
    cx.boundaries.push(SparseIntMatrix::zero(0, cx.rank(0)));
    for k in 1..=oc.dim {
        let rows = cx.rank(k - 1);
        let cols = cx.rank(k);
        let lower = cx.offsets(k - 1);
        let mut m = SparseIntMatrix::zero(rows, cols);
        let mut c = 0;
        for (b, blk) in cx.blocks[k].iter().enumerate() {
            for &w in &blk.cosets.reps {
                let mut col: Vec<(u32, i64)> = Vec::new();
                for t in &oc.boundary[k][b] {
                    let tgt = &cx.blocks[k - 1][t.target];
                    let r = lower[t.target] + tgt.cosets.index_of(table.mul(w, t.twist));
                    col.push((r as u32, t.coeff));
                }
                col.sort_unstable_by_key(|e| e.0);
                let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
                for (r, v) in col {
                    match merged.last_mut() {
                        Some(l) if l.0 == r => l.1 += v,
                        _ => merged.push((r, v)),
                    }
                }
                merged.retain(|e| e.1 != 0);
                m.columns[c] = merged;
                c += 1;
            }
        }
        cx.boundaries.push(m);
    }
    Ok(cx)
}

/// Subsets of `{0..m}` of size `k` in lexicographic order.
pub fn lex_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < m - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Orbit data of the torus complex: cells `wH_I` with `I` a proper subset of the extended generators.
pub fn torus_orbit_complex(h: &HatGroup, table: &GroupTable) -> OrbitComplex {
    let n = h.n();
    let top = n + 1;
    let mut cells = Vec::with_capacity(n + 1);
    let mut index: Vec<BTreeMap<Vec<usize>, usize>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let subs = lex_subsets(top, n - k);
        let mut map = BTreeMap::new();
        let mut row = Vec::with_capacity(subs.len());
        for (i, s) in subs.into_iter().enumerate() {
            map.insert(s.clone(), i);
            row.push(OrbitCell {
                stabilizer: h.parabolic_image_gens(table, &s),
                expected_order: parabolic_order(&h.matrix, &s),
                label: CellLabel::Subset(s),
            });
        }
        cells.push(row);
        index.push(map);
    }
    let mut boundary = vec![Vec::new()];
    for k in 1..=n {
        let mut bk = Vec::with_capacity(cells[k].len());
        for cell in &cells[k] {
            let i = match &cell.label {
                CellLabel::Subset(s) => s,
                _ => unreachable!(),
            };
            let comp: Vec<usize> = (0..top).filter(|j| !i.contains(j)).collect();
            let terms = comp
                .iter()
                .enumerate()
                .map(|(u, &j)| {
                    let mut jset = i.clone();
                    jset.push(j);
                    jset.sort_unstable();
                    OrbitTerm {
                        target: index[k - 1][&jset],
                        coeff: if (u + 1) % 2 == 0 { 1 } else { -1 },
                        twist: table.identity(),
                    }
                })
                .collect();
            bk.push(terms);
        }
        boundary.push(bk);
    }
    OrbitComplex { dim: n, cells, boundary }
}

/// Cellular chain complex of `T(W)` over `Z[W]`.
pub fn torus_complex(h: &HatGroup, table: &Arc<GroupTable>) -> Result<ChainComplex> {
    let oc = torus_orbit_complex(h, table);
    deflate(&format!("T({})", h.base.name()), &oc, table)
}

/// Coxeter complex of a finite group: cells `wW_I` for proper `I`, a sphere of dimension `n - 1`.
pub fn coxeter_complex(sys: &CoxeterSystem, table: &Arc<GroupTable>) -> Result<ChainComplex> {
    let n = sys.rank();
    if n == 0 {
        return Err(Error::InvalidInput("rank zero".into()));
    }
    let mut cells = Vec::new();
    let mut index: Vec<BTreeMap<Vec<usize>, usize>> = Vec::new();
    for k in 0..n {
        let subs = lex_subsets(n, n - 1 - k);
        let mut map = BTreeMap::new();
        let mut row = Vec::new();
        for (i, s) in subs.into_iter().enumerate() {
            map.insert(s.clone(), i);
            row.push(OrbitCell {
                stabilizer: s.iter().map(|&j| table.index_of_word(&[j as u8 + 1])).collect(),
                expected_order: parabolic_order(&sys.matrix, &s),
                label: CellLabel::Subset(s),
            });
        }
        cells.push(row);
        index.push(map);
    }
    let mut boundary = vec![Vec::new()];
    for k in 1..n {
        let bk = cells[k]
            .iter()
            .map(|cell| {
                let i = match &cell.label {
                    CellLabel::Subset(s) => s.clone(),
                    _ => unreachable!(),
                };
                (0..n)
                    .filter(|j| !i.contains(j))
                    .enumerate()
                    .map(|(u, j)| {
                        let mut jset = i.clone();
                        jset.push(j);
                        jset.sort_unstable();
                        OrbitTerm { target: index[k - 1][&jset], coeff: if u % 2 == 0 { 1 } else { -1 }, twist: 0 }
                    })
                    .collect()
            })
            .collect();
        boundary.push(bk);
    }
    deflate(&format!("Sigma({})", sys.name()), &OrbitComplex { dim: n - 1, cells, boundary }, table)
}

// ---------------------------------------------------------------------------
// cochains and cup product on the torus complex

pub struct CochainAlgebra<'a> {
    pub complex: &'a ChainComplex,
    /// `d[p]` maps `C^p` to `C^{p+1}`.
    pub d: Vec<SparseIntMatrix>,
    subset_index: Vec<BTreeMap<Vec<usize>, usize>>,
}

pub fn cochain_algebra(c: &ChainComplex) -> Result<CochainAlgebra<'_>> {
    let mut subset_index = Vec::with_capacity(c.dim + 1);
    for k in 0..=c.dim {
        let mut map = BTreeMap::new();
        for (b, blk) in c.blocks[k].iter().enumerate() {
            match &blk.label {
                CellLabel::Subset(s) => {
                    map.insert(s.clone(), b);
                }
                _ => return Err(Error::NotApplicable("cup products need the torus complex".into())),
            }
        }
        subset_index.push(map);
    }
    let d = (0..c.dim).map(|p| c.boundaries[p + 1].transpose().scaled(-1)).collect();
    Ok(CochainAlgebra { complex: c, d, subset_index })
}

impl<'a> CochainAlgebra<'a> {
    pub fn dim(&self, p: usize) -> usize {
        self.complex.rank(p)
    }

    pub fn coboundary(&self, p: usize, a: &[i64]) -> Vec<i64> {
        if p >= self.complex.dim {
            return Vec::new();
        }
        self.d[p].apply(a)
    }

    /// Cup product of two dual basis cochains, as a sparse list of basis indices with coefficient 1.
    pub fn basis_cup(&self, p: usize, a: usize, q: usize, b: usize) -> Vec<usize> {
        let c = self.complex;
        let n = c.dim;
        if p + q > n {
            return Vec::new();
        }
        let (ba, ia) = c.locate(p, a);
        let (bb, ib) = c.locate(q, b);
        let sa = match &c.blocks[p][ba].label {
            CellLabel::Subset(s) => s,
            _ => unreachable!(),
        };
        let sb = match &c.blocks[q][bb].label {
            CellLabel::Subset(s) => s,
            _ => unreachable!(),
        };
        let fa: Vec<usize> = (0..=n).filter(|j| !sa.contains(j)).collect();
        let fb: Vec<usize> = (0..=n).filter(|j| !sb.contains(j)).collect();
        if fa.last() != fb.first() {
            return Vec::new();
        }
        let k: Vec<usize> = sa.iter().copied().filter(|x| sb.contains(x)).collect();
        let bk = self.subset_index[p + q][&k];
        let off = c.offsets(p + q)[bk];
        let ca = &c.blocks[p][ba].cosets;
        let cb = &c.blocks[q][bb].cosets;
        let ck = &c.blocks[p + q][bk].cosets;
        let x = ca.reps[ia];
        let mut out: Vec<usize> = Vec::new();
        for &h in &ca.subgroup.elements {
            let w = c.table.mul(x, h);
            if cb.index_of(w) == ib {
                out.push(off + ck.index_of(w));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Bilinear extension of [`basis_cup`](Self::basis_cup) to dense cochains.
    pub fn cup(&self, p: usize, a: &[i64], q: usize, b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim(p + q)];
        if p + q > self.complex.dim {
            return out;
        }
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                for t in self.basis_cup(p, i, q, j) {
                    out[t] += x * y;
                }
            }
        }
        out
    }

    /// The dual basis element of `wH_I` as the right coset `H_I w^-1`: subset and a word for `w^-1`.
    pub fn right_coset_label(&self, p: usize, idx: usize) -> (Vec<usize>, Vec<u8>) {
        let c = self.complex;
        let (b, i) = c.locate(p, idx);
        let blk = &c.blocks[p][b];
        let s = match &blk.label {
            CellLabel::Subset(s) => s.clone(),
            _ => unreachable!(),
        };
        let w = blk.cosets.reps[i];
        (s, c.table.word(c.table.inv(w)).to_vec())
    }
}

// ---------------------------------------------------------------------------
// the group of alcove automorphisms and the barycentric complex

/// An automorphism of the fundamental alcove: its permutation of the affine
/// nodes `0..=n` and its image in `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    pub perm: Vec<usize>,
    pub w_perm: Vec<u16>,
    pub w_word: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct OmegaAction {
    /// Minuscule nodes (1-based) and the element attached to each.
    pub generators: Vec<(usize, OmegaElement)>,
    pub elements: Vec<OmegaElement>,
}

fn act_word(a: &[Vec<i64>], word: &[u8], x: &[i64]) -> Vec<i64> {
    let mut v = x.to_vec();
    for &s in word.iter().rev() {
        let k = s as usize - 1;
        let c = v[k];
        if c != 0 {
            for (l, vl) in v.iter_mut().enumerate() {
                *vl -= c * a[k][l];
            }
        }
    }
    v
}

/// Word of the element taking `x` (regular for the allowed nodes) to its antidominant image.
fn antidominant_word(a: &[Vec<i64>], x: &[i64], allowed: &[bool]) -> Vec<u8> {
    let mut v = x.to_vec();
    let mut pushed = Vec::new();
    while let Some(k) = (0..v.len()).find(|&k| allowed[k] && v[k] > 0) {
        let c = v[k];
        for (l, vl) in v.iter_mut().enumerate() {
            *vl -= c * a[k][l];
        }
        pushed.push(k as u8 + 1);
    }
    pushed.reverse();
    pushed
}

impl OmegaElement {
    pub fn compose(&self, sys: &CoxeterSystem, o: &OmegaElement) -> OmegaElement {
        let perm = o.perm.iter().map(|&j| self.perm[j]).collect();
        let w_perm = sys.compose(&self.w_perm, &o.w_perm);
        let w_word = sys.shortlex_word(&w_perm);
        OmegaElement { perm, w_perm, w_word }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Generators `omega_i = t_{varpi_i^vee} w_0^{(i)} w_0` for the minuscule nodes and the group they generate.
pub fn omega_action(sys: &CoxeterSystem) -> Result<OmegaAction> {
    let a = sys.cartan.as_ref().ok_or_else(|| Error::NotApplicable("alcove automorphisms need a Weyl group".into()))?;
    if sys.matrix.components().len() != 1 {
        return Err(Error::Reducible);
    }
    let n = sys.rank();
    let theta = sys.int_root(sys.highest_root().unwrap()).unwrap();
    let l = theta.iter().fold(1i64, |acc, &x| num_integer::lcm(acc, x));
    // scaled vertices of the fundamental alcove in coweight coordinates
    let verts: Vec<Vec<i64>> = (0..=n)
        .map(|j| {
            let mut v = vec![0i64; n];
            if j > 0 {
                v[j - 1] = l / theta[j - 1];
            }
            v
        })
        .collect();
    let all = vec![true; n];
    let w0 = antidominant_word(a, &vec![1; n], &all);
    let mut generators = Vec::new();
    for i in 1..=n {
        if theta[i - 1] != 1 {
            continue;
        }
        let mut x = vec![1i64; n];
        x[i - 1] = 0;
        let mut allowed = all.clone();
        allowed[i - 1] = false;
        let mut word = antidominant_word(a, &x, &allowed);
        word.extend_from_slice(&w0);
        let mut perm = Vec::with_capacity(n + 1);
        for v in &verts {
            let mut img = act_word(a, &word, v);
            img[i - 1] += l;
            let j = verts
                .iter()
                .position(|u| *u == img)
                .ok_or_else(|| Error::Inconsistent(format!("omega_{} does not preserve the alcove", i)))?;
            perm.push(j);
        }
        let w_perm = sys.perm_of_word(&word);
        let w_word = sys.shortlex_word(&w_perm);
        generators.push((i, OmegaElement { perm, w_perm, w_word }));
    }
    let gens: Vec<OmegaElement> = generators.iter().map(|g| g.1.clone()).collect();
    let elements = omega_closure(sys, &gens);
    Ok(OmegaAction { generators, elements })
}

/// Subgroup generated by some alcove automorphisms, identity first.
pub fn omega_closure(sys: &CoxeterSystem, gens: &[OmegaElement]) -> Vec<OmegaElement> {
    let id = OmegaElement {
        perm: (0..=sys.rank()).collect(),
        w_perm: sys.identity_perm(),
        w_word: Vec::new(),
    };
    let mut out = vec![id];
    let mut q = 0;
    while q < out.len() {
        for g in gens {
            let x = g.compose(sys, &out[q]);
            if !out.contains(&x) {
                out.push(x);
            }
        }
        q += 1;
    }
    out
}

impl OmegaAction {
    /// Subgroup generated by the elements attached to the given minuscule nodes.
    pub fn subgroup(&self, sys: &CoxeterSystem, nodes: &[usize]) -> Result<Vec<OmegaElement>> {
        let mut gens = Vec::new();
        for &i in nodes {
            let g = self
                .generators
                .iter()
                .find(|g| g.0 == i)
                .ok_or_else(|| Error::InvalidInput(format!("node {} is not minuscule", i)))?;
            gens.push(g.1.clone());
        }
        Ok(omega_closure(sys, &gens))
    }
}

fn subset_key(mask: u32) -> (u32, Vec<usize>) {
    (mask.count_ones(), (0..32).filter(|&i| mask >> i & 1 == 1).collect())
}

fn chain_key(chain: &[u32]) -> Vec<(u32, Vec<usize>)> {
    chain.iter().map(|&m| subset_key(m)).collect()
}

fn apply_perm_mask(perm: &[usize], mask: u32) -> u32 {
    let mut out = 0u32;
    for (i, &j) in perm.iter().enumerate() {
        if mask >> i & 1 == 1 {
            out |= 1 << j;
        }
    }
    out
}

fn apply_chain(perm: &[usize], chain: &[u32]) -> Vec<u32> {
    chain.iter().map(|&m| apply_perm_mask(perm, m)).collect()
}

/// Smallest image of `chain` under `omega` and the index of an element reaching it.
fn orbit_min(omega: &[OmegaElement], chain: &[u32]) -> (Vec<u32>, usize) {
    let mut best = (chain.to_vec(), 0usize);
    let mut best_key = chain_key(chain);
    for (k, o) in omega.iter().enumerate().skip(1) {
        let img = apply_chain(&o.perm, chain);
        let key = chain_key(&img);
        if key < best_key {
            best_key = key;
            best = (img, k);
        }
    }
    best
}

/// Orbit data of the barycentric subdivision of the alcove, modulo the alcove automorphisms in `omega`.
///
/// `omega` must be closed under composition and start with the identity.
pub fn barycentric_orbit_complex(sys: &CoxeterSystem, table: &GroupTable, omega: &[OmegaElement]) -> Result<OrbitComplex> {
    let n = sys.rank();
    let top = n + 1;
    let r = distinguished_reflection(sys)?;
    let affine = extended_matrix(sys, &r)?;
    let r_idx = table.index_of(&r);
    let full: u32 = (1u32 << top) - 1;
    // all chains of nonempty subsets, by length
    let mut chains: Vec<Vec<Vec<u32>>> = vec![Vec::new(); top];
    let mut stack: Vec<Vec<u32>> = (1..=full).map(|m| vec![m]).collect();
    while let Some(ch) = stack.pop() {
        let last = *ch.last().unwrap();
        for m in 1..=full {
            if m != last && m & last == last {
                let mut c2 = ch.clone();
                c2.push(m);
                stack.push(c2);
            }
        }
        let d = ch.len() - 1;
        chains[d].push(ch);
    }
    let w_index: Vec<usize> = omega
        .iter()
        .map(|o| table.index_of_perm(&o.w_perm).ok_or_else(|| Error::CorruptTable("omega image missing".into())))
        .collect::<Result<_>>()?;
    let mut reps: Vec<Vec<Vec<u32>>> = Vec::with_capacity(top);
    let mut rep_index: Vec<BTreeMap<Vec<u32>, usize>> = Vec::with_capacity(top);
    let mut cells: Vec<Vec<OrbitCell>> = Vec::with_capacity(top);
    for d in 0..top {
        let mut rs: Vec<Vec<u32>> = chains[d].iter().filter(|c| orbit_min(omega, c).0 == **c).cloned().collect();
        rs.sort_by_key(|c| chain_key(c));
        let mut map = BTreeMap::new();
        let mut row = Vec::with_capacity(rs.len());
        for (i, c) in rs.iter().enumerate() {
            map.insert(c.clone(), i);
            let zd = *c.last().unwrap();
            let comp: Vec<usize> = (0..top).filter(|j| zd >> j & 1 == 0).collect();
            let mut stab: Vec<usize> =
                comp.iter().map(|&j| if j == 0 { r_idx } else { table.index_of_word(&[j as u8]) }).collect();
            let mut nomega = 0u64;
            for (k, o) in omega.iter().enumerate() {
                if apply_chain(&o.perm, c) == *c {
                    nomega += 1;
                    if k > 0 {
                        stab.push(w_index[k]);
                    }
                }
            }
            let expected = parabolic_order(&affine, &comp).map(|x| x * nomega);
            let label = CellLabel::Flag(c.iter().map(|&m| subset_key(m).1).collect());
            row.push(OrbitCell { label, stabilizer: stab, expected_order: expected });
        }
        reps.push(rs);
        rep_index.push(map);
        cells.push(row);
    }
    let mut boundary = vec![Vec::new()];
    for d in 1..top {
        let mut bd = Vec::with_capacity(reps[d].len());
        for c in &reps[d] {
            let mut terms = Vec::with_capacity(d + 1);
            for p in 0..=d {
                let mut face = c.clone();
                face.remove(p);
                let (rep, k) = orbit_min(omega, &face);
                let target = *rep_index[d - 1]
                    .get(&rep)
                    .ok_or_else(|| Error::Inconsistent("face orbit representative not found".into()))?;
                terms.push(OrbitTerm {
                    target,
                    coeff: if p % 2 == 0 { 1 } else { -1 },
                    twist: table.inv(w_index[k]),
                });
            }
            bd.push(terms);
        }
        boundary.push(bd);
    }
    Ok(OrbitComplex { dim: n, cells, boundary })
}

/// Chain complex of the torus `V*/Y` from the barycentric subdivision, for the lattice between
/// the coroot and coweight lattices that corresponds to `omega`.
pub fn barycentric_complex(sys: &CoxeterSystem, table: &Arc<GroupTable>, omega: &[OmegaElement]) -> Result<ChainComplex> {
    let oc = barycentric_orbit_complex(sys, table, omega)?;
    deflate(&format!("Sd({}, |Omega|={})", sys.name(), omega.len()), &oc, table)
}
