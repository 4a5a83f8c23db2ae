//! Presentations of `pi_1(T(W)) = Q` from side pairings and ridge cycles.
//!
//! Letters are signed 1-based generator indices: `k` is `g_k`, `-k` its inverse.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::coxeter::{GroupTable, Side, Subgroup};
use crate::error::{Error, Result};
use crate::extension::{DiagramClass, HatGroup};
use crate::homology::{smith_normal_form, SparseIntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelatorTag {
    Side,
    Cycle,
    Commutator,
}

impl RelatorTag {
    pub fn tag(&self) -> &'static str {
        match self {
            RelatorTag::Side => "SIDE",
            RelatorTag::Cycle => "CYCLE",
            RelatorTag::Commutator => "COMMUTATOR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub word: Vec<i32>,
    pub tag: RelatorTag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    /// Word in the generators `0..=n` of `W^` (0 is `s^_0`); `None` when no image is recorded.
    pub image: Option<Vec<u8>>,
}

/// `label := word`, the word written with labels of generators alive at that point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub label: String,
    pub word: Vec<(String, i32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Relator>,
    pub substitutions: Vec<Substitution>,
}

impl Presentation {
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(|r| r.word.len()).sum()
    }

    /// Histogram of relator lengths.
    pub fn length_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for r in &self.relators {
            *m.entry(r.word.len()).or_insert(0) += 1;
        }
        m
    }

    /// Generator line, then one relator per line as signed indices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let labels: Vec<&str> = self.generators.iter().map(|g| g.label.as_str()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
        for r in &self.relators {
            let w: Vec<String> = r.word.iter().map(|x| format!("{}", x)).collect();
            out.push_str(&w.join(" "));
            out.push('\n');
        }
        out
    }

    /// Exponent sum of every generator in every relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generators.len()];
                for &x in &r.word {
                    row[x.unsigned_abs() as usize - 1] += x.signum() as i64;
                }
                row
            })
            .collect()
    }
}

/// Free and cyclic reduction.
pub fn reduce_word(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo] == -out[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    out[lo..hi].to_vec()
}

pub fn invert_word(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|x| -x).collect()
}

fn letter_key(x: i32) -> (u32, bool) {
    (x.unsigned_abs(), x < 0)
}

/// ShortLex-least among the cyclic rotations of a relator and of its inverse.
pub fn canonical_relator(w: &[i32]) -> Vec<i32> {
    let w = reduce_word(w);
    let inv = invert_word(&w);
    let mut best: Option<Vec<i32>> = None;
    for base in [&w, &inv] {
        for k in 0..base.len().max(1) {
            let mut rot = base[k..].to_vec();
            rot.extend_from_slice(&base[..k]);
            let better = match &best {
                None => true,
                Some(b) => rot.iter().map(|&x| letter_key(x)).lt(b.iter().map(|&x| letter_key(x))),
            };
            if better {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// `C_W(q0)`: the standard parabolic on the simple reflections commuting with `s^_0`.
pub fn centralizer_of_q0(h: &HatGroup, t: &GroupTable) -> Subgroup {
    t.parabolic(&centralizer_generators(h))
}

/// 0-based generators of `C_W(q0)`.
fn centralizer_generators(h: &HatGroup) -> Vec<usize> {
    (1..h.rank()).filter(|&s| h.matrix.get(0, s) == 2).map(|s| s - 1).collect()
}

fn word_label(prefix: &str, w: &[u8]) -> String {
    if w.is_empty() {
        format!("{}_e", prefix)
    } else {
        let s: String = w.iter().map(|&x| char::from(b'0' + x)).collect();
        format!("{}_{}", prefix, s)
    }
}

/// Generators `q_u = u q0 u^-1` for the minimal coset representatives `u` of `W / C_W(q0)`,
/// with side relators `q_u q_v` and the cycle relators of every ridge.
pub fn pi1_presentation(h: &HatGroup, t: &GroupTable) -> Result<Presentation> {
    match h.class {
        DiagramClass::Affine => return Ok(abelian_presentation(h.n())),
        DiagramClass::CompactHyperbolic => {}
        other => return Err(Error::UnsupportedExtension(format!("{} extension", other.tag()))),
    }
    let cgens = centralizer_generators(h);
    let cosets = t.cosets(&t.parabolic(&cgens), Side::Left);
    let r = t.index_of(&h.r);
    let generators: Vec<Generator> = cosets
        .reps
        .iter()
        .map(|&u| {
            let w = t.word(u);
            Generator { label: word_label("q", w), image: Some(h.conjugate_q0_word(w)) }
        })
        .collect();
    let letter = |x: usize| cosets.index_of(x) as i32 + 1;
    let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
    let mut relators = Vec::new();
    let mut push = |word: Vec<i32>, tag: RelatorTag, relators: &mut Vec<Relator>| {
        let c = canonical_relator(&word);
        if !c.is_empty() && seen.insert(c.clone()) {
            relators.push(Relator { word: c, tag });
        }
    };
    // q_u q_{u r} = 1
    for &u in &cosets.reps {
        push(vec![letter(u), letter(t.mul(u, r))], RelatorTag::Side, &mut relators);
    }
    // ridges of type {s^_0, b}: the walk x -> x r b crosses the s^_0 wall m(0, b) times
    for b in 1..h.rank() {
        let m = h.matrix.get(0, b);
        if m <= 2 {
            continue;
        }
        let rb = t.mul_gen(r, b - 1);
        for w in 0..t.order() {
            let mut x = w;
            let mut word = Vec::with_capacity(m as usize);
            for _ in 0..m {
                word.push(letter(x));
                x = t.mul(x, rb);
            }
            debug_assert_eq!(x, w);
            push(word, RelatorTag::Cycle, &mut relators);
        }
    }
    Ok(Presentation { generators, relators, substitutions: Vec::new() })
}

/// `Z^n` as `<t_1..t_n | [t_i, t_j]>`, the coroot lattice in the crystallographic case.
pub fn abelian_presentation(n: usize) -> Presentation {
    let generators = (1..=n).map(|i| Generator { label: format!("t_{}", i), image: None }).collect();
    let mut relators = Vec::new();
    for i in 1..=n as i32 {
        for j in i + 1..=n as i32 {
            relators.push(Relator { word: vec![i, j, -i, -j], tag: RelatorTag::Commutator });
        }
    }
    Presentation { generators, relators, substitutions: Vec::new() }
}

/// Use the side relators `q_u q_v` to replace the later generator by the inverse of the earlier one.
pub fn pair_sides(p: &Presentation) -> Presentation {
    let mut q = p.clone();
    loop {
        let pick = q.relators.iter().position(|r| r.tag == RelatorTag::Side && r.word.len() == 2 && r.word[0] != -r.word[1]);
        let Some(i) = pick else { break };
        let w = q.relators[i].word.clone();
        let (keep, drop) = if w[0].abs() < w[1].abs() { (w[0], w[1]) } else { (w[1], w[0]) };
        // drop = keep^-1
        let repl = if drop > 0 { vec![-keep] } else { vec![keep] };
        substitute(&mut q, drop.unsigned_abs() as usize - 1, &repl, i);
    }
    q
}

fn occurrences(w: &[i32], g: i32) -> usize {
    w.iter().filter(|x| x.abs() == g).count()
}

/// Tietze elimination: repeatedly remove a generator occurring exactly once in some relator,
/// choosing the move that leaves the smallest total relator length.
pub fn eliminate_generators(p: &Presentation) -> Presentation {
    let mut q = p.clone();
    loop {
        let mut best: Option<(usize, usize, usize, Vec<i32>)> = None; // (cost, relator, generator, replacement)
        let counts: Vec<usize> = (1..=q.generators.len() as i32).map(|g| q.relators.iter().map(|r| occurrences(&r.word, g)).sum()).collect();
        let total = q.total_length();
        for (ri, r) in q.relators.iter().enumerate() {
            for (pos, &x) in r.word.iter().enumerate() {
                let g = x.abs();
                if occurrences(&r.word, g) != 1 {
                    continue;
                }
                // r = A x B  =>  x = A^-1 B^-1
                let mut rot = r.word[pos + 1..].to_vec();
                rot.extend_from_slice(&r.word[..pos]);
                let rest = invert_word(&rot);
                let repl = if x > 0 { rest } else { invert_word(&rest) };
                let other = counts[g as usize - 1] - 1;
                let cost = other * repl.len() + total - r.word.len() - other;
                let cand = (cost, ri, g as usize - 1, repl);
                if best.as_ref().map_or(true, |b| (cand.0, cand.2) < (b.0, b.2)) {
                    best = Some(cand);
                }
            }
        }
        let Some((_, ri, g, repl)) = best else { break };
        substitute(&mut q, g, &repl, ri);
    }
    q
}

/// Replace generator `g` (0-based) by `repl`, drop relator `used`, and renumber.
fn substitute(p: &mut Presentation, g: usize, repl: &[i32], used: usize) {
    let gi = g as i32 + 1;
    let inv = invert_word(repl);
    p.substitutions.push(Substitution {
        label: p.generators[g].label.clone(),
        word: repl.iter().map(|&x| (p.generators[x.unsigned_abs() as usize - 1].label.clone(), x.signum())).collect(),
    });
    let renum = |x: i32| -> i32 {
        let a = x.unsigned_abs() as usize - 1;
        let a = if a > g { a - 1 } else { a } as i32 + 1;
        a * x.signum()
    };
    let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
    let mut out = Vec::with_capacity(p.relators.len());
    for (k, r) in p.relators.iter().enumerate() {
        if k == used {
            continue;
        }
        let mut w = Vec::with_capacity(r.word.len());
        for &x in &r.word {
            if x == gi {
                w.extend(repl.iter().map(|&y| renum(y)));
            } else if x == -gi {
                w.extend(inv.iter().map(|&y| renum(y)));
            } else {
                w.push(renum(x));
            }
        }
        let c = canonical_relator(&w);
        if !c.is_empty() && seen.insert(c.clone()) {
            out.push(Relator { word: c, tag: r.tag });
        }
    }
    p.relators = out;
    p.generators.remove(g);
}

/// Free rank and torsion invariant factors of `P^ab`.
pub fn abelianization(p: &Presentation) -> (usize, Vec<BigInt>) {
    let m = p.exponent_matrix();
    let n = p.generators.len();
    let mut trip = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                trip.push((i, j, v));
            }
        }
    }
    let snf = smith_normal_form(&SparseIntMatrix::from_triplets(m.len(), n, &trip));
    let torsion = snf.iter().filter(|d| !d.is_one()).cloned().collect();
    (n - snf.len(), torsion)
}

/// Check that every relator maps to the identity of `W^` under the recorded generator images.
pub fn verify_relators(h: &HatGroup, p: &Presentation) -> Result<bool> {
    let mut mats = Vec::with_capacity(p.generators.len());
    for g in &p.generators {
        let img = g.image.as_ref().ok_or_else(|| Error::NotApplicable(format!("generator {} has no image in W^", g.label)))?;
        let rev: Vec<u8> = img.iter().rev().copied().collect();
        mats.push((h.matrix_of(img), h.matrix_of(&rev)));
    }
    let id = h.identity_matrix();
    for r in &p.relators {
        let mut m = id.clone();
        for &x in &r.word {
            let (fwd, inv) = &mats[x.unsigned_abs() as usize - 1];
            m = h.mat_mul(&m, if x > 0 { fwd } else { inv });
        }
        if m != id {
            return Ok(false);
        }
    }
    Ok(true)
}
