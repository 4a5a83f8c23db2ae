//! Ranks, Smith normal forms and homology of integer chain complexes.
//!
//! Sparse elimination first pivots on unit entries only. Over `Z` such steps
//! are unimodular, so they preserve the Smith form; what is left is finished
//! densely with big integers.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::exactnum::Q;
use crate::extension::{DiagramClass, HatGroup};

/// Sparse integer matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `columns[c]` lists `(row, value)`, sorted by row, no zeros.
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Build from triplets; duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, trip: &[(usize, usize, i64)]) -> Self {
        let mut m = Self::zero(rows, cols);
        for &(r, c, v) in trip {
            m.columns[c].push((r as u32, v));
        }
        for col in m.columns.iter_mut() {
            normalize(col);
        }
        m
    }

    pub fn from_dense(a: &[Vec<i64>]) -> Self {
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let mut trip = Vec::new();
        for (i, row) in a.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    trip.push((i, j, v));
                }
            }
        }
        Self::from_triplets(rows, cols, &trip)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                a[r as usize][c] = v;
            }
        }
        a
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    /// `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out.push((r as usize, c, v));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                t.columns[r as usize].push((c as u32, v));
            }
        }
        t
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut m = self.clone();
        for col in m.columns.iter_mut() {
            for e in col.iter_mut() {
                e.1 *= k;
            }
            col.retain(|e| e.1 != 0);
        }
        m
    }

    /// `self * v` for a dense vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if v[c] == 0 {
                continue;
            }
            for &(r, x) in col {
                out[r as usize] += x * v[c];
            }
        }
        out
    }

    /// `self * other`, or `None` when the shapes do not match.
    pub fn mul(&self, other: &SparseIntMatrix) -> Option<SparseIntMatrix> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = Self::zero(self.rows, other.cols);
        for (c, col) in other.columns.iter().enumerate() {
            let mut acc: Vec<(u32, i64)> = Vec::new();
            for &(k, v) in col {
                for &(r, x) in &self.columns[k as usize] {
                    acc.push((r, x * v));
                }
            }
            normalize(&mut acc);
            out.columns[c] = acc;
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }
}

fn normalize(col: &mut Vec<(u32, i64)>) {
    col.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for &(r, v) in col.iter() {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    *col = out;
}

// ---------------------------------------------------------------------------
// sparse elimination

trait Scalar: Clone {
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// Inverse of a unit.
    fn unit_inv(&self) -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
}

impl Scalar for i64 {
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn unit_inv(&self) -> Self {
        *self
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
}

impl Scalar for BigInt {
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn unit_inv(&self) -> Self {
        self.clone()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    fn new(x: i64, p: u64) -> Self {
        Fp { v: x.rem_euclid(p as i64) as u64, p }
    }
}

impl Scalar for Fp {
    fn is_nil(&self) -> bool {
        self.v == 0
    }
    fn is_unit(&self) -> bool {
        self.v != 0
    }
    fn unit_inv(&self) -> Self {
        // Fermat
        let mut acc = 1u64;
        let mut b = self.v;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        Fp { v: acc, p: self.p }
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(Fp { v: self.v * o.v % self.p, p: self.p })
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(Fp { v: (self.v + self.p - o.v) % self.p, p: self.p })
    }
}

struct Overflow;

/// Result of unit-pivot elimination: number of pivots and the leftover vectors.
struct Reduced<T> {
    pivots: usize,
    rest: Vec<Vec<(u32, T)>>,
}

fn find<T>(v: &[(u32, T)], r: u32) -> Option<usize> {
    v.binary_search_by_key(&r, |e| e.0).ok()
}

fn axpy<T: Scalar>(v: &[(u32, T)], f: &T, p: &[(u32, T)]) -> core::result::Result<Vec<(u32, T)>, Overflow> {
    // v - f * p
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        if j >= p.len() || (i < v.len() && v[i].0 < p[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i >= v.len() || p[j].0 < v[i].0 {
            let t = f.mul(&p[j].1).ok_or(Overflow)?;
            let z = zero_like(&t).sub(&t).ok_or(Overflow)?;
            out.push((p[j].0, z));
            j += 1;
        } else {
            let t = f.mul(&p[j].1).ok_or(Overflow)?;
            let z = v[i].1.sub(&t).ok_or(Overflow)?;
            if !z.is_nil() {
                out.push((v[i].0, z));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

fn zero_like<T: Scalar>(t: &T) -> T {
    t.sub(t).expect("x - x")
}

/// Pivot on unit entries of the vectors (columns) as long as possible.
///
/// Markowitz-style order: the shortest live vector is taken first and
/// pivots on its unit entry whose index occurs in the fewest vectors.
fn unit_eliminate<T: Scalar>(mut vecs: Vec<Vec<(u32, T)>>, nindex: usize) -> core::result::Result<Reduced<T>, Overflow> {
    let nv = vecs.len();
    let mut alive: Vec<bool> = vecs.iter().map(|v| !v.is_empty()).collect();
    let mut occ: Vec<Vec<u32>> = vec![Vec::new(); nindex];
    for (k, v) in vecs.iter().enumerate() {
        for e in v {
            occ[e.0 as usize].push(k as u32);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..nv).filter(|&k| alive[k]).map(|k| Reverse((vecs[k].len(), k as u32))).collect();
    let mut pivots = 0usize;
    let mut parked = vec![false; nv];
    while let Some(Reverse((len, k))) = heap.pop() {
        let ku = k as usize;
        if !alive[ku] || parked[ku] {
            continue;
        }
        if vecs[ku].len() != len {
            heap.push(Reverse((vecs[ku].len(), k)));
            continue;
        }
        // choose the unit entry with the fewest occurrences
        let mut best: Option<(usize, u32)> = None;
        for e in &vecs[ku] {
            if !e.1.is_unit() {
                continue;
            }
            let r = e.0 as usize;
            let list = &mut occ[r];
            list.sort_unstable();
            list.dedup();
            list.retain(|&j| alive[j as usize] && find(&vecs[j as usize], e.0).is_some());
            if best.map_or(true, |(c, _)| list.len() < c) {
                best = Some((list.len(), e.0));
                if list.len() == 1 {
                    break;
                }
            }
        }
        let r = match best {
            Some((_, r)) => r,
            None => {
                parked[ku] = true;
                continue;
            }
        };
        let pv = core::mem::take(&mut vecs[ku]);
        alive[ku] = false;
        let pinv = pv[find(&pv, r).unwrap()].1.unit_inv();
        let list = core::mem::take(&mut occ[r as usize]);
        for &j in &list {
            let j = j as usize;
            if j == ku {
                continue;
            }
            let a = &vecs[j][find(&vecs[j], r).unwrap()].1;
            let f = a.mul(&pinv).ok_or(Overflow)?;
            let nvj = axpy(&vecs[j], &f, &pv)?;
            for e in &nvj {
                if find(&vecs[j], e.0).is_none() {
                    occ[e.0 as usize].push(j as u32);
                }
            }
            vecs[j] = nvj;
            if vecs[j].is_empty() {
                alive[j] = false;
            } else {
                parked[j] = false;
                heap.push(Reverse((vecs[j].len(), j as u32)));
            }
        }
        pivots += 1;
    }
    let rest = vecs.into_iter().enumerate().filter(|(k, v)| alive[*k] && !v.is_empty()).map(|(_, v)| v).collect();
    Ok(Reduced { pivots, rest })
}

fn to_dense_big(rest: &[Vec<(u32, BigInt)>]) -> Vec<Vec<BigInt>> {
    let mut idx: Vec<u32> = rest.iter().flat_map(|v| v.iter().map(|e| e.0)).collect();
    idx.sort_unstable();
    idx.dedup();
    rest.iter()
        .map(|v| {
            let mut row = vec![BigInt::zero(); idx.len()];
            for e in v {
                let j = idx.binary_search(&e.0).unwrap();
                row[j] = e.1.clone();
            }
            row
        })
        .collect()
}

fn big_columns(m: &SparseIntMatrix) -> Vec<Vec<(u32, BigInt)>> {
    m.columns.iter().map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect()).collect()
}

/// Pivot count and dense leftover, trying `i64` first.
fn reduce_integer(m: &SparseIntMatrix) -> (usize, Vec<Vec<BigInt>>) {
    // eliminate along the shorter side: fewer vectors, less fill-in
    if m.cols > m.rows {
        return reduce_integer(&m.transpose());
    }
    match unit_eliminate(m.columns.clone(), m.rows) {
        Ok(red) => {
            let rest: Vec<Vec<(u32, BigInt)>> =
                red.rest.into_iter().map(|v| v.into_iter().map(|(r, x)| (r, BigInt::from(x))).collect()).collect();
            (red.pivots, to_dense_big(&rest))
        }
        Err(Overflow) => match unit_eliminate(big_columns(m), m.rows) {
            Ok(red) => (red.pivots, to_dense_big(&red.rest)),
            Err(Overflow) => unreachable!("big integers do not overflow"),
        },
    }
}

/// Rank of a dense big-integer matrix by fraction-free elimination.
pub fn dense_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let p = match (rank..rows).find(|&r| !a[r][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Nonzero invariant factors of a dense matrix, in divisibility order.
pub fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the lower-right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let (bi, bj) = match best {
            Some(b) => b,
            None => break,
        };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let v = &a[i][j] - &q * &a[t][j];
                        a[i][j] = v;
                    }
                    if !a[i][t].is_zero() {
                        changed = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..rows {
                        let v = &a[i][j] - &q * &a[i][t];
                        a[i][j] = v;
                    }
                    if !a[t][j].is_zero() {
                        changed = true;
                    }
                }
            }
            if !changed {
                // divisibility of the rest by the pivot
                let mut bad = None;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..cols {
                            let v = &a[t][j] + &a[i][j];
                            a[t][j] = v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the corner
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Invariant factors (nonzero, divisibility chain) of a sparse integer matrix.
pub fn smith_normal_form(m: &SparseIntMatrix) -> Vec<BigInt> {
    let (pivots, rest) = reduce_integer(m);
    let mut out: Vec<BigInt> = vec![BigInt::one(); pivots];
    out.extend(dense_snf(rest));
    out
}

pub fn rank_rational(m: &SparseIntMatrix) -> usize {
    let (pivots, rest) = reduce_integer(m);
    pivots + dense_rank(rest)
}

/// Rank over `F_p`; `p` must be prime and below `2^31`.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    if m.cols > m.rows {
        return rank_mod_p(&m.transpose(), p);
    }
    let cols: Vec<Vec<(u32, Fp)>> = m
        .columns
        .iter()
        .map(|c| c.iter().map(|&(r, v)| (r, Fp::new(v, p))).filter(|e| e.1.v != 0).collect())
        .collect();
    match unit_eliminate(cols, m.rows) {
        Ok(red) => {
            debug_assert!(red.rest.is_empty());
            red.pivots
        }
        Err(Overflow) => unreachable!("modular arithmetic does not overflow"),
    }
}

// ---------------------------------------------------------------------------
// homology

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Integral,
    Modular(Vec<u64>),
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    FullSnf,
    /// Rational ranks plus the listed primes.
    ModularOnly(Vec<u64>),
    RationalOnly,
}

#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub betti: Vec<usize>,
    /// Torsion invariant factors per degree (only with a full Smith form).
    pub torsion: Vec<Vec<BigInt>>,
    pub certification: Certification,
    /// Betti numbers over each prime field that was used.
    pub modular_betti: Vec<(u64, Vec<usize>)>,
    pub euler: i64,
    pub f_vector: Vec<usize>,
}

impl HomologyReport {
    pub fn torsion_free_evidence(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty()) && self.modular_betti.iter().all(|(_, b)| *b == self.betti)
    }
}

#[derive(Clone, Debug)]
pub struct HomologyOptions {
    /// Above this `nnz * rows` a full Smith form is replaced by modular ranks.
    pub snf_threshold: u64,
    pub fallback_primes: Vec<u64>,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions { snf_threshold: 5_000_000_000, fallback_primes: vec![2, 3, 5, 7, 11] }
    }
}

pub fn check_complex(c: &ChainComplex) -> Result<()> {
    for k in 1..c.dim {
        let a = &c.boundaries[k];
        let b = &c.boundaries[k + 1];
        let prod = a.mul(b).ok_or_else(|| Error::NotAComplex(alloc::format!("shape mismatch at degree {}", k)))?;
        if !prod.is_zero() {
            return Err(Error::NotAComplex(alloc::format!("boundary squared is nonzero at degree {}", k + 1)));
        }
    }
    Ok(())
}

pub fn euler_and_fvector(c: &ChainComplex) -> (i64, Vec<usize>) {
    let f: Vec<usize> = (0..=c.dim).map(|k| c.rank(k)).collect();
    let chi = f.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
    (chi, f)
}

fn betti_from_ranks(f: &[usize], ranks: &[usize]) -> Vec<usize> {
    // ranks[k] = rank of boundary C_k -> C_{k-1}, ranks[0] = 0
    let n = f.len() - 1;
    (0..=n).map(|k| f[k] - ranks[k] - if k < n { ranks[k + 1] } else { 0 }).collect()
}

pub fn homology(c: &ChainComplex, mode: &Mode) -> Result<HomologyReport> {
    homology_with(c, mode, &HomologyOptions::default())
}

pub fn homology_with(c: &ChainComplex, mode: &Mode, opts: &HomologyOptions) -> Result<HomologyReport> {
    check_complex(c)?;
    let (euler, f) = euler_and_fvector(c);
    let n = c.dim;
    let mut report = HomologyReport {
        betti: Vec::new(),
        torsion: vec![Vec::new(); n + 1],
        certification: Certification::RationalOnly,
        modular_betti: Vec::new(),
        euler,
        f_vector: f.clone(),
    };
    let rational = || -> Vec<usize> {
        let mut ranks = vec![0usize; n + 1];
        for k in 1..=n {
            ranks[k] = rank_rational(&c.boundaries[k]);
        }
        ranks
    };
    let modular = |primes: &[u64]| -> Vec<(u64, Vec<usize>)> {
        primes
            .iter()
            .map(|&p| {
                let mut ranks = vec![0usize; n + 1];
                for k in 1..=n {
                    ranks[k] = rank_mod_p(&c.boundaries[k], p);
                }
                (p, betti_from_ranks(&f, &ranks))
            })
            .collect()
    };
    match mode {
        Mode::Integral => {
            let too_big = (1..=n).any(|k| (c.boundaries[k].nnz() as u64).saturating_mul(c.boundaries[k].rows as u64) > opts.snf_threshold);
            if too_big {
                report.betti = betti_from_ranks(&f, &rational());
                report.modular_betti = modular(&opts.fallback_primes);
                report.certification = Certification::ModularOnly(opts.fallback_primes.clone());
            } else {
                let mut ranks = vec![0usize; n + 1];
                for k in 1..=n {
                    let snf = smith_normal_form(&c.boundaries[k]);
                    ranks[k] = snf.len();
                    // torsion of H_{k-1}
                    report.torsion[k - 1] = snf.into_iter().filter(|d| !d.is_one()).collect();
                }
                report.betti = betti_from_ranks(&f, &ranks);
                report.certification = Certification::FullSnf;
            }
        }
        Mode::Rational => {
            report.betti = betti_from_ranks(&f, &rational());
        }
        Mode::Modular(primes) => {
            report.betti = betti_from_ranks(&f, &rational());
            report.modular_betti = modular(primes);
            report.certification = Certification::ModularOnly(primes.clone());
        }
    }
    Ok(report)
}

/// Orbit-sum subcomplex `C^G` for a subgroup `G` (table indices) acting on the left.
pub fn invariant_complex(c: &ChainComplex, group: &[usize]) -> Vec<SparseIntMatrix> {
    let t = &c.table;
    let n = c.dim;
    // orbit id per cell, and whether the cell is the orbit's first member
    let mut orbit: Vec<Vec<u32>> = Vec::with_capacity(n + 1);
    let mut members: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let off = c.offsets(k);
        let mut id = vec![u32::MAX; c.rank(k)];
        let mut mem: Vec<Vec<u32>> = Vec::new();
        for (b, blk) in c.blocks[k].iter().enumerate() {
            for (i, &w) in blk.cosets.reps.iter().enumerate() {
                if id[off[b] + i] != u32::MAX {
                    continue;
                }
                let o = mem.len() as u32;
                let mut cells = Vec::new();
                for &g in group {
                    let j = off[b] + blk.cosets.index_of(t.mul(g, w));
                    if id[j] == u32::MAX {
                        id[j] = o;
                        cells.push(j as u32);
                    }
                }
                mem.push(cells);
            }
        }
        orbit.push(id);
        members.push(mem);
    }
    let mut out = vec![SparseIntMatrix::zero(0, members[0].len())];
    for k in 1..=n {
        let rows = members[k - 1].len();
        let rep: Vec<u32> = members[k - 1].iter().map(|m| m[0]).collect();
        let mut trip = Vec::new();
        for (o, cells) in members[k].iter().enumerate() {
            let mut acc: alloc::collections::BTreeMap<u32, i64> = alloc::collections::BTreeMap::new();
            for &cell in cells {
                for &(r, v) in &c.boundaries[k].columns[cell as usize] {
                    let ro = orbit[k - 1][r as usize];
                    if rep[ro as usize] == r {
                        *acc.entry(ro).or_insert(0) += v;
                    }
                }
            }
            trip.extend(acc.into_iter().filter(|e| e.1 != 0).map(|(r, v)| (r as usize, o, v)));
        }
        out.push(SparseIntMatrix::from_triplets(rows, members[k].len(), &trip));
    }
    out
}

/// `dim H_k(C; Q)^G` for every `k`, computed as the homology of the orbit-sum subcomplex.
pub fn invariant_betti(c: &ChainComplex, group: &[usize]) -> Vec<usize> {
    let d = invariant_complex(c, group);
    let f: Vec<usize> = d.iter().map(|m| m.cols).collect();
    let ranks: Vec<usize> = d.iter().enumerate().map(|(k, m)| if k == 0 { 0 } else { rank_rational(m) }).collect();
    betti_from_ranks(&f, &ranks)
}

/// `W(1) * sum over finite standard parabolics W^_I of (-1)^|I| / |W^_I|`, the value at `q = 1`
/// of `W(q) / W^(q)`.
pub fn poincare_series_check(h: &HatGroup) -> Q {
    let m = &h.matrix;
    let r = m.n;
    let mut acc = Q::zero();
    for mask in 0u32..(1 << r) {
        let subset: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
        if let Some(ord) = crate::extension::parabolic_order(m, &subset) {
            let term = Q::new(BigInt::one(), BigInt::from(ord));
            if subset.len() % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    acc * Q::from_integer(BigInt::from(h.base.order))
}

/// Evaluate `1 / W^(q)` at a rational `q > 0` from the finite parabolics.
pub fn hat_poincare_inverse(h: &HatGroup, q: &Q) -> Q {
    let m = &h.matrix;
    let r = m.n;
    let qinv = q.recip();
    let mut acc = Q::zero();
    for mask in 0u32..(1 << r) {
        let subset: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
        let sub = m.restrict(&subset);
        if let Ok(kinds) = crate::coxeter::identify_finite_type(&sub) {
            let mut val = Q::one();
            for (k, _) in kinds {
                for d in k.degrees() {
                    // [d]_x = 1 + x + ... + x^{d-1}
                    let mut s = Q::zero();
                    let mut p = Q::one();
                    for _ in 0..d {
                        s += &p;
                        p *= &qinv;
                    }
                    val *= s;
                }
            }
            if subset.len() % 2 == 0 {
                acc += val.recip();
            } else {
                acc -= val.recip();
            }
        }
    }
    acc
}

/// Gauss-Bonnet constant: area as a multiple of `pi` in dimension 2, volume as a multiple of `pi^2` in dimension 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricReport {
    pub dim: usize,
    pub coefficient: Q,
    pub pi_power: u32,
}

pub fn geometric_report(h: &HatGroup, euler: i64) -> Result<GeometricReport> {
    let dim = h.n();
    let chi = Q::from_integer(BigInt::from(euler));
    let flat = h.class == DiagramClass::Affine;
    match dim {
        2 => Ok(GeometricReport {
            dim,
            coefficient: if flat { Q::zero() } else { -chi * Q::from_integer(BigInt::from(2)) },
            pi_power: 1,
        }),
        4 => Ok(GeometricReport {
            dim,
            coefficient: if flat { Q::zero() } else { chi * Q::new(BigInt::from(4), BigInt::from(3)) },
            pi_power: 2,
        }),
        _ => Err(Error::NotApplicable(alloc::format!("no Gauss-Bonnet constant stored for dimension {}", dim))),
    }
}

/// Decimal value of a Gauss-Bonnet constant as a rational approximation of `coefficient * pi^k`.
pub fn approx_f64_free(r: &GeometricReport) -> (i64, i64) {
    (r.coefficient.numer().to_i64().unwrap_or(0), r.coefficient.denom().to_i64().unwrap_or(1))
}
