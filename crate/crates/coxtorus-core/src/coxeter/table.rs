//! Enumerated groups: element tables, subgroups, cosets and conjugacy classes.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{CoxeterSystem, Element};
use crate::error::{Error, Result};

/// Largest group we are willing to tabulate.
pub const TABLE_LIMIT: u64 = 600_000;

/// All elements of `W` in ShortLex order of their reduced words.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub rank: usize,
    pub nroots: usize,
    pub nplus: usize,
    perms: Vec<u16>,
    words: Vec<Vec<u8>>,
    index: HashMap<u128, u32>,
    right_gen: Vec<Vec<u32>>,
    left_gen: Vec<Vec<u32>>,
    inverse: Vec<u32>,
}

fn key_of(perm: &[u16], n: usize) -> u128 {
    let mut k = 0u128;
    for &x in &perm[..n] {
        k = (k << 16) | x as u128;
    }
    k
}

impl GroupTable {
    pub fn enumerate(sys: &CoxeterSystem) -> Result<Self> {
        if sys.order > TABLE_LIMIT {
            return Err(Error::TooLarge(sys.order));
        }
        let n = sys.rank();
        let r = sys.nroots();
        let order = sys.order as usize;
        let mut perms: Vec<u16> = Vec::with_capacity(order * r);
        let mut words: Vec<Vec<u8>> = Vec::with_capacity(order);
        let mut index: HashMap<u128, u32> = HashMap::with_capacity(order);
        let id = sys.identity_perm();
        index.insert(key_of(&id, n), 0);
        perms.extend_from_slice(&id);
        words.push(Vec::new());
        let mut right_gen = vec![vec![0u32; order]; n];
        let mut k = 0;
        while k < words.len() {
            for s in 0..n {
                // (w s)(x) = w(s(x))
                let g = &sys.gens[s];
                let base = k * r;
                let img: Vec<u16> = g.iter().map(|&x| perms[base + x as usize]).collect();
                let key = key_of(&img, n);
                let j = match index.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = words.len() as u32;
                        index.insert(key, j);
                        perms.extend_from_slice(&img);
                        let mut w = words[k].clone();
                        w.push(s as u8 + 1);
                        words.push(w);
                        j
                    }
                };
                right_gen[s][k] = j;
            }
            k += 1;
        }
        if words.len() != order {
            return Err(Error::InvalidInput("enumeration does not match group order".into()));
        }
        let mut t = GroupTable {
            rank: n,
            nroots: r,
            nplus: sys.nplus,
            perms,
            words,
            index,
            right_gen,
            left_gen: Vec::new(),
            inverse: Vec::new(),
        };
        let mut inverse = vec![0u32; order];
        for i in 0..order {
            let p = t.perm(i);
            let mut inv = vec![0u16; n];
            // inverse images of simple roots
            for (x, &y) in p.iter().enumerate() {
                if (y as usize) < n {
                    inv[y as usize] = x as u16;
                }
            }
            inverse[i] = t.index[&key_of(&inv, n)];
        }
        t.inverse = inverse;
        let left_gen = (0..n)
            .map(|s| (0..order).map(|i| t.inverse[t.right_gen[s][t.inverse[i] as usize] as usize]).collect())
            .collect();
        t.left_gen = left_gen;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn perm(&self, i: usize) -> &[u16] {
        &self.perms[i * self.nroots..(i + 1) * self.nroots]
    }

    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.words[i].len()
    }

    pub fn element(&self, i: usize) -> Element {
        Element { perm: self.perm(i).to_vec(), word: self.words[i].clone() }
    }

    pub fn index_of_perm(&self, p: &[u16]) -> Option<usize> {
        self.index.get(&key_of(p, self.rank)).map(|&j| j as usize)
    }

    pub fn index_of(&self, e: &Element) -> usize {
        self.index_of_perm(&e.perm).expect("element of this group")
    }

    pub fn index_of_word(&self, w: &[u8]) -> usize {
        let mut i = 0usize;
        for &s in w {
            i = self.right_gen[s as usize - 1][i] as usize;
        }
        i
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let pa = self.perm(a);
        let pb = self.perm(b);
        let mut k = 0u128;
        for &x in &pb[..self.rank] {
            k = (k << 16) | pa[x as usize] as u128;
        }
        self.index[&k] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `a * s` for a simple reflection `s` in `0..rank`.
    pub fn mul_gen(&self, a: usize, s: usize) -> usize {
        self.right_gen[s][a] as usize
    }

    /// `s * a`.
    pub fn gen_mul(&self, s: usize, a: usize) -> usize {
        self.left_gen[s][a] as usize
    }

    /// `l(a s) > l(a)`.
    pub fn is_right_ascent(&self, a: usize, s: usize) -> bool {
        (self.perm(a)[s] as usize) < self.nplus
    }

    /// `l(s a) > l(a)`.
    pub fn is_left_ascent(&self, s: usize, a: usize) -> bool {
        self.is_right_ascent(self.inv(a), s)
    }

    pub fn conjugate(&self, x: usize, y: usize) -> usize {
        self.mul(self.inv(y), self.mul(x, y))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != 0 {
            p = self.mul(p, a);
            k += 1;
        }
        k
    }

    /// Letters used by the reduced word, as a bitmask over `0..rank`.
    pub fn support(&self, a: usize) -> u32 {
        self.words[a].iter().fold(0u32, |m, &s| m | 1 << (s - 1))
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Standard parabolic subgroup; `subset` lists generators in `0..rank`.
    pub fn parabolic(&self, subset: &[usize]) -> Subgroup {
        let gens: Vec<usize> = subset.iter().map(|&s| self.index_of_word(&[s as u8 + 1])).collect();
        self.closure(&gens)
    }

    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        let mut elements = vec![0usize];
        seen[0] = true;
        let mut k = 0;
        while k < elements.len() {
            for &g in gens {
                let x = self.mul(elements[k], g);
                if !seen[x] {
                    seen[x] = true;
                    elements.push(x);
                }
            }
            k += 1;
        }
        elements.sort_unstable();
        Subgroup { gens: gens.to_vec(), elements, member: seen }
    }

    pub fn cosets(&self, h: &Subgroup, side: Side) -> CosetSpace {
        let order = self.order();
        let mut coset_of = vec![u32::MAX; order];
        let mut reps = Vec::new();
        for w in 0..order {
            if coset_of[w] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(w);
            for &x in &h.elements {
                let y = match side {
                    Side::Left => self.mul(w, x),
                    Side::Right => self.mul(x, w),
                };
                coset_of[y] = c;
            }
        }
        CosetSpace { side, subgroup: h.clone(), reps, coset_of }
    }

    pub fn parabolic_cosets(&self, subset: &[usize], side: Side) -> CosetSpace {
        self.cosets(&self.parabolic(subset), side)
    }

    /// Minimal coset representatives: `W^I` on the left side, `^I W` on the right.
    pub fn min_coset_reps(&self, subset: &[usize], side: Side) -> Vec<usize> {
        (0..self.order())
            .filter(|&w| {
                subset.iter().all(|&s| match side {
                    Side::Left => self.is_right_ascent(w, s),
                    Side::Right => self.is_left_ascent(s, w),
                })
            })
            .collect()
    }

    /// Minimal representatives of `W_I \ W / W_J`.
    pub fn double_cosets(&self, i: &[usize], j: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&w| i.iter().all(|&s| self.is_left_ascent(s, w)) && j.iter().all(|&s| self.is_right_ascent(w, s)))
            .collect()
    }

    /// Minimal element of `W_I x W_J`.
    pub fn double_coset_min(&self, x: usize, i: &[usize], j: &[usize]) -> usize {
        let mut y = x;
        'outer: loop {
            for &s in i {
                if !self.is_left_ascent(s, y) {
                    y = self.gen_mul(s, y);
                    continue 'outer;
                }
            }
            for &s in j {
                if !self.is_right_ascent(y, s) {
                    y = self.mul_gen(y, s);
                    continue 'outer;
                }
            }
            return y;
        }
    }

    /// `x = u d v` with `d` minimal in `W_I x W_J`, `v` in `W_J` and `u`
    /// minimal in `u W_K`, `K = I ∩ d J d^-1`.
    pub fn pq_factorize(&self, x: usize, i: &[usize], j: &[usize]) -> (usize, usize, usize) {
        let d = self.double_coset_min(x, i, j);
        let dinv = self.inv(d);
        let jmask = j.iter().fold(0u32, |m, &s| m | 1 << s);
        let k: Vec<usize> = i
            .iter()
            .copied()
            .filter(|&s| {
                let c = self.mul(dinv, self.gen_mul(s, d));
                self.length(c) == 1 && jmask & self.support(c) != 0
            })
            .collect();
        let wi = self.parabolic(i);
        for &u in &wi.elements {
            if !k.iter().all(|&s| self.is_right_ascent(u, s)) {
                continue;
            }
            let v = self.mul(dinv, self.mul(self.inv(u), x));
            if self.support(v) & !jmask == 0 {
                return (u, d, v);
            }
        }
        unreachable!("double coset factorization always exists")
    }

    /// Conjugacy classes as `(representative, size)`, representatives least in ShortLex.
    pub fn conjugacy_classes(&self) -> Vec<(usize, usize)> {
        let order = self.order();
        let mut parent: Vec<u32> = (0..order as u32).collect();
        fn find(p: &mut [u32], mut x: usize) -> usize {
            while p[x] as usize != x {
                p[x] = p[p[x] as usize];
                x = p[x] as usize;
            }
            x
        }
        for w in 0..order {
            for s in 0..self.rank {
                let c = self.gen_mul(s, self.mul_gen(w, s));
                let (a, b) = (find(&mut parent, w), find(&mut parent, c));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo as u32;
                }
            }
        }
        let mut size: HashMap<usize, usize> = HashMap::new();
        for w in 0..order {
            *size.entry(find(&mut parent, w)).or_insert(0) += 1;
        }
        let mut out: Vec<(usize, usize)> = size.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Class number of every element, classes in the order of [`Self::conjugacy_classes`].
    pub fn class_map(&self, classes: &[(usize, usize)]) -> Vec<u32> {
        let order = self.order();
        let mut map = vec![u32::MAX; order];
        for (c, &(rep, _)) in classes.iter().enumerate() {
            let mut stack = vec![rep];
            map[rep] = c as u32;
            while let Some(w) = stack.pop() {
                for s in 0..self.rank {
                    let y = self.gen_mul(s, self.mul_gen(w, s));
                    if map[y] == u32::MAX {
                        map[y] = c as u32;
                        stack.push(y);
                    }
                }
            }
        }
        map
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Cosets `wH`.
    Left,
    /// Cosets `Hw`.
    Right,
}

/// A subgroup of a tabulated group; elements are table indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub gens: Vec<usize>,
    pub elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: usize) -> bool {
        self.member[w]
    }
}

/// Cosets of a subgroup with ShortLex-least shortest representatives.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub side: Side,
    pub subgroup: Subgroup,
    pub reps: Vec<usize>,
    coset_of: Vec<u32>,
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn index_of(&self, w: usize) -> usize {
        self.coset_of[w] as usize
    }
}

impl CoxeterSystem {
    /// Reflections as table indices, in root order.
    pub fn reflection_indices(&self, t: &GroupTable) -> Vec<usize> {
        (0..self.nplus).map(|k| t.index_of_perm(&self.reflection_perm(k)).unwrap()).collect()
    }

    /// `N(w)`: positive roots `b` with `w^-1 b < 0`.
    pub fn inversion_roots(&self, p: &[u16]) -> Vec<usize> {
        let inv = self.invert_perm(p);
        (0..self.nplus).filter(|&k| (inv[k] as usize) >= self.nplus).collect()
    }

    /// Canonical Coxeter generators `D(H) = { r in R ∩ H : N(r) ∩ H = {r} }`.
    pub fn dyer_generators(&self, t: &GroupTable, h: &Subgroup) -> Result<Vec<usize>> {
        let refl = self.reflection_indices(t);
        let in_h: Vec<usize> = (0..self.nplus).filter(|&k| h.contains(refl[k])).collect();
        let gen_by_refl = t.closure(&in_h.iter().map(|&k| refl[k]).collect::<Vec<_>>());
        if gen_by_refl.order() != h.order() {
            return Err(Error::NotReflectionSubgroup);
        }
        let mut out = Vec::new();
        for &k in &in_h {
            let n = self.inversion_roots(t.perm(refl[k]));
            if n.iter().all(|&b| b == k || !h.contains(refl[b])) {
                out.push(refl[k]);
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}
