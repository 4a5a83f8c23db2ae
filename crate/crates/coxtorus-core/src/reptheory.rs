//! Class functions, character tables and the decomposition of `H_*(T(W))`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::complex::ChainComplex;
use crate::coxeter::{geometric_pairing, CoxeterSystem, GroupTable, Subgroup};
use crate::error::{Error, Result};
use crate::exactnum::{real_cyclotomic_field, Field, FieldElem, Q};
use crate::extension::HatGroup;
use crate::homology::invariant_betti;

const H3_DATA: &str = include_str!("../data/h3.txt");
const H4_DATA: &str = include_str!("../data/h4.txt");

/// Conjugacy classes of a finite group table; class 0 is the identity.
#[derive(Clone, Debug)]
pub struct Classes {
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    pub class_of: Vec<u32>,
    pub group_order: usize,
}

impl Classes {
    pub fn new(t: &GroupTable) -> Self {
        let cc = t.conjugacy_classes();
        let class_of = t.class_map(&cc);
        Classes {
            reps: cc.iter().map(|c| c.0).collect(),
            sizes: cc.iter().map(|c| c.1).collect(),
            class_of,
            group_order: t.order(),
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Values on the conjugacy classes, in the order of [`Classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<FieldElem>,
}

impl ClassFunction {
    pub fn zero(k: usize) -> Self {
        ClassFunction { values: vec![FieldElem::zero(); k] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        ClassFunction { values: v.iter().map(|&x| FieldElem::from_int(x)).collect() }
    }

    pub fn add(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|a| a.neg()).collect() }
    }

    pub fn scale(&self, k: i64) -> ClassFunction {
        let c = Q::from_integer(BigInt::from(k));
        ClassFunction { values: self.values.iter().map(|a| a.scale(&c)).collect() }
    }

    pub fn tensor(&self, f: &Field, o: &ClassFunction) -> ClassFunction {
        ClassFunction { values: self.values.iter().zip(&o.values).map(|(a, b)| f.mul(a, b)).collect() }
    }

    /// Value at the identity.
    pub fn degree(&self) -> FieldElem {
        self.values[0].clone()
    }

    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.values.iter().map(|v| v.as_integer().and_then(|b| b.to_i64())).collect()
    }
}

#[derive(Clone, Debug)]
pub struct CharTable {
    pub name: String,
    pub field: Field,
    pub classes: Classes,
    pub labels: Vec<String>,
    pub chars: Vec<ClassFunction>,
}

impl CharTable {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// `(1/|W|) sum_c |c| a(c) b(c)`; all characters of Coxeter groups are real.
    pub fn inner_field(&self, a: &ClassFunction, b: &ClassFunction) -> FieldElem {
        let mut acc = FieldElem::zero();
        for (k, size) in self.classes.sizes.iter().enumerate() {
            let v = self.field.mul(&a.values[k], &b.values[k]);
            acc = acc.add(&v.scale(&Q::from_integer(BigInt::from(*size))));
        }
        acc.scale(&Q::new(BigInt::one(), BigInt::from(self.classes.group_order)))
    }

    pub fn inner(&self, a: &ClassFunction, b: &ClassFunction) -> Result<Q> {
        self.inner_field(a, b)
            .as_rational()
            .ok_or_else(|| Error::InvalidInput("inner product is irrational; arguments are not class functions of this table".into()))
    }

    /// Multiplicities of the irreducibles in a virtual character.
    pub fn multiplicities(&self, f: &ClassFunction) -> Result<Vec<i64>> {
        self.chars
            .iter()
            .map(|c| {
                let q = self.inner(f, c)?;
                if !q.is_integer() {
                    return Err(Error::InvalidInput(format!("non-integral multiplicity {}", q)));
                }
                q.to_integer().to_i64().ok_or_else(|| Error::InvalidInput("multiplicity overflow".into()))
            })
            .collect()
    }

    pub fn compose(&self, mult: &[i64]) -> ClassFunction {
        let mut acc = ClassFunction::zero(self.classes.len());
        for (c, &m) in self.chars.iter().zip(mult) {
            if m != 0 {
                acc = acc.add(&c.scale(m));
            }
        }
        acc
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn character(&self, label: &str) -> Option<&ClassFunction> {
        self.index(label).map(|i| &self.chars[i])
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.chars[i].degree().as_integer().and_then(|b| b.to_i64()).unwrap_or(0)
    }

    /// Sign character values `(-1)^l(w)` on class representatives.
    pub fn sign_function(&self, t: &GroupTable) -> ClassFunction {
        ClassFunction::from_ints(&self.classes.reps.iter().map(|&r| if t.length(r) % 2 == 0 { 1 } else { -1 }).collect::<Vec<_>>())
    }

    pub fn trivial_index(&self) -> usize {
        self.chars.iter().position(|c| c.values.iter().all(|v| v.is_one())).expect("trivial character present")
    }

    pub fn sign_index(&self, t: &GroupTable) -> usize {
        let s = self.sign_function(t);
        self.chars.iter().position(|c| *c == s).expect("sign character present")
    }

    /// `eps_map[i] = j` when `chi_i (x) eps = chi_j`.
    pub fn epsilon_map(&self, t: &GroupTable) -> Vec<usize> {
        let s = self.sign_function(t);
        self.chars
            .iter()
            .map(|c| {
                let tw = c.tensor(&self.field, &s);
                self.chars.iter().position(|d| *d == tw).expect("table closed under the sign twist")
            })
            .collect()
    }

    /// Text form such as `4_t + bar4_t + 16'_r` or `eps - 1 - 3_s`.
    pub fn describe(&self, mult: &[i64]) -> String {
        let mut out = String::new();
        for (i, &m) in mult.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let term = if m.abs() == 1 { self.labels[i].clone() } else { format!("{}*{}", m.abs(), self.labels[i]) };
            if out.is_empty() {
                if m < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if m < 0 { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Row orthogonality, completeness and `sum deg^2 = |W|`.
    pub fn validate(&self) -> Result<()> {
        if self.chars.len() != self.classes.len() {
            return Err(Error::CorruptTable(format!("{} characters for {} classes", self.chars.len(), self.classes.len())));
        }
        let mut sum = 0i64;
        for i in 0..self.len() {
            sum += self.degree(i) * self.degree(i);
            for j in i..self.len() {
                let v = self.inner_field(&self.chars[i], &self.chars[j]);
                let want = if i == j { FieldElem::from_int(1) } else { FieldElem::zero() };
                if v != want {
                    return Err(Error::CorruptTable(format!("<{}, {}> = {}", self.labels[i], self.labels[j], v)));
                }
            }
        }
        if sum != self.classes.group_order as i64 {
            return Err(Error::CorruptTable(format!("sum of squared degrees {} != {}", sum, self.classes.group_order)));
        }
        Ok(())
    }
}

/// Number of cosets of `W/H` fixed by each class representative.
pub fn permutation_character(classes: &Classes, h: &Subgroup) -> ClassFunction {
    let mut meet = vec![0usize; classes.len()];
    for &x in &h.elements {
        meet[classes.class_of[x] as usize] += 1;
    }
    let vals: Vec<i64> = (0..classes.len())
        .map(|c| {
            // |C_W(g)| * |g^W meet H| / |H|
            let cent = classes.group_order / classes.sizes[c];
            (cent * meet[c] / h.order()) as i64
        })
        .collect();
    ClassFunction::from_ints(&vals)
}

/// Trace of the geometric representation, computed in `field`.
pub fn geometric_character(sys: &CoxeterSystem, t: &GroupTable, classes: &Classes, field: &Field) -> Result<ClassFunction> {
    let n = sys.rank();
    let p = geometric_pairing(field, &sys.matrix)?;
    let mut values = Vec::with_capacity(classes.len());
    for &r in &classes.reps {
        // columns are images of the simple roots
        let mut m: Vec<Vec<FieldElem>> = (0..n).map(|i| (0..n).map(|j| FieldElem::from_int((i == j) as i64)).collect()).collect();
        for &s in t.word(r) {
            let s = s as usize - 1;
            // M <- M * S with S e_j = e_j - p[s][j] e_s
            for j in 0..n {
                if p[s][j].is_zero() || j == s {
                    continue;
                }
                for row in m.iter_mut() {
                    let x = field.mul(&p[s][j], &row[s]);
                    row[j] = row[j].sub(&x);
                }
            }
            for row in m.iter_mut() {
                row[s] = row[s].neg();
            }
        }
        let mut tr = FieldElem::zero();
        for (i, row) in m.iter().enumerate() {
            tr = tr.add(&row[i]);
        }
        values.push(tr);
    }
    Ok(ClassFunction { values })
}

/// Characters of `I2(m)` with generators `s = 1`, `t = 2` and rotation `a = st`.
pub fn dihedral_char_table(m: u64, t: &GroupTable) -> Result<CharTable> {
    if m < 3 || t.order() as u64 != 2 * m {
        return Err(Error::InvalidInput(format!("dihedral table needs m >= 3 and a group of order 2m, got m = {}", m)));
    }
    let field = real_cyclotomic_field(m)?;
    let classes = Classes::new(t);
    let words: Vec<&[u8]> = classes.reps.iter().map(|&r| t.word(r)).collect();
    let count = |w: &[u8], g: u8| w.iter().filter(|&&x| x == g).count();
    let one_dim = |f: &dyn Fn(&[u8]) -> i64| ClassFunction::from_ints(&words.iter().map(|w| f(w)).collect::<Vec<_>>());
    let parity = |k: usize| if k % 2 == 0 { 1 } else { -1 };
    let mut labels = vec!["1".to_string(), "eps".to_string()];
    let mut chars = vec![one_dim(&|_| 1), one_dim(&|w| parity(w.len()))];
    if m % 2 == 0 {
        labels.push("eps_s".into());
        chars.push(one_dim(&|w| parity(count(w, 2))));
        labels.push("eps_t".into());
        chars.push(one_dim(&|w| parity(count(w, 1))));
    }
    for j in 1..=((m - 1) / 2) as i64 {
        let values = words
            .iter()
            .map(|w| {
                if w.len() % 2 == 1 {
                    return FieldElem::zero();
                }
                let half = (w.len() / 2) as i64;
                let i = if w.first() == Some(&2) { -half } else { half };
                // 2cos(2 pi i j / m)
                field.two_cos_multiple(2 * i * j)
            })
            .collect();
        labels.push(format!("chi_{}", j));
        chars.push(ClassFunction { values });
    }
    let ct = CharTable { name: format!("I2({})", m), field, classes, labels, chars };
    ct.validate()?;
    Ok(ct)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedded {
    H3,
    H4,
}

/// Load an embedded table. `t` must be the table of the matching group in the standard numbering.
pub fn load_char_table(which: Embedded, t: &GroupTable) -> Result<CharTable> {
    let (name, text) = match which {
        Embedded::H3 => ("H3", H3_DATA),
        Embedded::H4 => ("H4", H4_DATA),
    };
    parse_char_table(name, text, t)
}

/// Parse the data format: `classes; w; ...`, `sizes; n; ...`, then `label; degree; (a,b); ...` with `a + b*sqrt5`.
pub fn parse_char_table(name: &str, text: &str, t: &GroupTable) -> Result<CharTable> {
    let corrupt = |msg: String| Error::CorruptTable(format!("{}: {}", name, msg));
    let field = real_cyclotomic_field(5)?;
    let classes = Classes::new(t);
    let mut perm: Option<Vec<usize>> = None;
    let mut labels = Vec::new();
    let mut chars = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        match fields[0] {
            "classes" => {
                let mut p = Vec::new();
                for w in &fields[1..] {
                    let word: Vec<u8> = if *w == "e" {
                        Vec::new()
                    } else {
                        w.split_whitespace()
                            .map(|x| x.parse::<u8>().ok().filter(|&s| s >= 1 && (s as usize) <= t.rank))
                            .collect::<Option<_>>()
                            .ok_or_else(|| corrupt(format!("bad class word {:?}", w)))?
                    };
                    p.push(classes.class_of[t.index_of_word(&word)] as usize);
                }
                let mut seen = p.clone();
                seen.sort_unstable();
                seen.dedup();
                if seen.len() != classes.len() || p.len() != classes.len() {
                    return Err(corrupt("class words do not hit every class once".into()));
                }
                perm = Some(p);
            }
            "sizes" => {
                let p = perm.as_ref().ok_or_else(|| corrupt("sizes before classes".into()))?;
                for (k, s) in fields[1..].iter().enumerate() {
                    let s: usize = s.parse().map_err(|_| corrupt(format!("bad size {:?}", s)))?;
                    if p.get(k).map(|&c| classes.sizes[c]) != Some(s) {
                        return Err(corrupt(format!("class {} has size {} in the data", k, s)));
                    }
                }
            }
            label => {
                let p = perm.as_ref().ok_or_else(|| corrupt("character before classes".into()))?;
                if fields.len() != p.len() + 2 {
                    return Err(corrupt(format!("{}: expected {} values", label, p.len())));
                }
                let mut values = vec![FieldElem::zero(); p.len()];
                for (k, v) in fields[2..].iter().enumerate() {
                    values[p[k]] = parse_sqrt5(&field, v).ok_or_else(|| corrupt(format!("bad value {:?}", v)))?;
                }
                let deg: i64 = fields[1].parse().map_err(|_| corrupt(format!("bad degree {:?}", fields[1])))?;
                if values[0] != FieldElem::from_int(deg) {
                    return Err(corrupt(format!("{}: degree {} does not match the identity value", label, deg)));
                }
                labels.push(label.to_string());
                chars.push(ClassFunction { values });
            }
        }
    }
    let ct = CharTable { name: name.to_string(), field, classes, labels, chars };
    ct.validate()?;
    Ok(ct)
}

/// `(a,b)` with rational `a, b` meaning `a + b*sqrt5`, as an element of `Q(2cos(pi/5))`.
fn parse_sqrt5(f: &Field, s: &str) -> Option<FieldElem> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    let parse = |x: &str| -> Option<Q> {
        let x = x.trim();
        match x.split_once('/') {
            Some((n, d)) => Some(Q::new(n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?)),
            None => Some(Q::from_integer(x.parse::<BigInt>().ok()?)),
        }
    };
    let (a, b) = (parse(a)?, parse(b)?);
    // sqrt5 = 2*phi - 1 with phi = 2cos(pi/5)
    let g = f.generator();
    Some(FieldElem::from_q(&a - &b).add(&g.scale(&(b * Q::from_integer(BigInt::from(2))))))
}

/// `sum over proper I of (-1)^|I| 1 induced from pi(W^_I)`.
pub fn hopf_virtual_character(h: &HatGroup, t: &GroupTable, classes: &Classes) -> Result<ClassFunction> {
    let r = h.rank();
    let mut acc = ClassFunction::zero(classes.len());
    for mask in 0u32..(1 << r) - 1 {
        let subset: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
        let pc = permutation_character(classes, &h.parabolic_image(t, &subset)?);
        acc = if subset.len() % 2 == 0 { acc.add(&pc) } else { acc.sub(&pc) };
    }
    Ok(acc)
}

/// Characters of the cellular chain modules: `C_k` sums the permutation characters over `|I| = n - k`.
pub fn cell_characters(h: &HatGroup, t: &GroupTable, classes: &Classes) -> Result<Vec<ClassFunction>> {
    let n = h.n();
    let r = h.rank();
    let mut out = vec![ClassFunction::zero(classes.len()); n + 1];
    for mask in 0u32..(1 << r) - 1 {
        let subset: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
        let k = n - subset.len();
        out[k] = out[k].add(&permutation_character(classes, &h.parabolic_image(t, &subset)?));
    }
    Ok(out)
}

/// `dim H_k(T; Q)^<g>` for each `k`, computed from the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointEvidence {
    pub element: usize,
    pub invariant_betti: Vec<usize>,
}

pub fn fixed_point_evidence(c: &ChainComplex, element: usize) -> FixedPointEvidence {
    let t = &c.table;
    let mut group = vec![t.identity()];
    let mut x = element;
    while x != t.identity() {
        group.push(x);
        x = t.mul(x, element);
    }
    FixedPointEvidence { element, invariant_betti: invariant_betti(c, &group) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Each solution lists, per degree, the multiplicity of every irreducible.
    pub solutions: Vec<Vec<Vec<i64>>>,
    pub ambiguous: bool,
    /// Elements whose fixed-point data was used.
    pub evidence_used: Vec<usize>,
}

impl Decomposition {
    pub fn unique(&self) -> Option<&Vec<Vec<i64>>> {
        if self.solutions.len() == 1 {
            self.solutions.first()
        } else {
            None
        }
    }
}

struct Solver {
    n: usize,
    deg: Vec<i64>,
    eps: Vec<usize>,
    triv: usize,
    sign: usize,
    cells: Vec<Vec<i64>>,
    /// `sum_i (-1)^i H_i` in the irreducible basis.
    alt: Vec<i64>,
    betti: Vec<usize>,
    /// `fixed[e][c]`: dimension of the `<g_e>`-fixed space of irreducible `c`.
    fixed: Vec<Vec<i64>>,
    evidence: Vec<Vec<usize>>,
}

impl Solver {
    fn twist(&self, v: &[i64]) -> Vec<i64> {
        (0..v.len()).map(|c| v[self.eps[c]]).collect()
    }

    fn complete(&self, h1: &[i64]) -> Option<Vec<Vec<i64>>> {
        let k = self.deg.len();
        let unit = |i: usize| -> Vec<i64> { (0..k).map(|c| (c == i) as i64).collect() };
        let mut hs = vec![unit(self.triv)];
        match self.n {
            2 => {
                hs.push(h1.to_vec());
            }
            3 => {
                hs.push(h1.to_vec());
                hs.push(self.twist(h1));
            }
            4 => {
                let h3 = self.twist(h1);
                let h2: Vec<i64> =
                    (0..k).map(|c| self.alt[c] - (c == self.triv) as i64 - (c == self.sign) as i64 + h1[c] + h3[c]).collect();
                hs.push(h1.to_vec());
                hs.push(h2);
                hs.push(h3);
            }
            _ => return None,
        }
        hs.push(unit(self.sign));
        Some(hs)
    }

    fn accept(&self, hs: &[Vec<i64>]) -> bool {
        let k = self.deg.len();
        // Hopf identity
        for c in 0..k {
            let s: i64 = hs.iter().enumerate().map(|(i, h)| if i % 2 == 0 { h[c] } else { -h[c] }).sum();
            if s != self.alt[c] {
                return false;
            }
        }
        for (i, h) in hs.iter().enumerate() {
            if h.iter().any(|&x| x < 0) {
                return false;
            }
            if h.iter().zip(&self.deg).map(|(a, b)| a * b).sum::<i64>() != self.betti[i] as i64 {
                return false;
            }
            if (0..k).any(|c| h[c] > self.cells[i][c]) {
                return false;
            }
            // duality
            if *h != self.twist(&hs[self.n - i]) {
                return false;
            }
        }
        // cycles and boundaries are genuine subrepresentations
        let mut b = vec![0i64; k];
        for i in 0..=self.n {
            let z: Vec<i64> = (0..k).map(|c| self.cells[i][c] - b[c]).collect();
            b = (0..k).map(|c| z[c] - hs[i][c]).collect();
            if z.iter().chain(&b).any(|&x| x < 0) {
                return false;
            }
        }
        for (e, obs) in self.evidence.iter().enumerate() {
            for (i, h) in hs.iter().enumerate() {
                let d: i64 = (0..k).map(|c| h[c] * self.fixed[e][c]).sum();
                if d != obs[i] as i64 {
                    return false;
                }
            }
        }
        true
    }

    fn search(&self) -> Vec<Vec<Vec<i64>>> {
        let k = self.deg.len();
        let target = self.betti[1] as i64;
        let upper: Vec<i64> = (0..k)
            .map(|c| {
                let mut u = self.cells[1][c].min(target / self.deg[c]);
                if self.n >= 3 {
                    u = u.min(self.cells[self.n - 1][self.eps[c]]);
                }
                u
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; k];
        self.dfs(0, target, &upper, &mut cur, &mut out);
        out
    }

    fn dfs(&self, c: usize, rest: i64, upper: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<Vec<i64>>>) {
        if rest == 0 {
            if let Some(hs) = self.complete(cur) {
                if self.accept(&hs) {
                    out.push(hs);
                }
            }
            return;
        }
        if c == cur.len() {
            return;
        }
        let mut m = 0;
        while m <= upper[c] && m * self.deg[c] <= rest {
            cur[c] = m;
            self.dfs(c + 1, rest - m * self.deg[c], upper, cur, out);
            m += 1;
        }
        cur[c] = 0;
    }
}

/// Dimension of the `<g>`-fixed space of each irreducible.
fn fixed_dimensions(ct: &CharTable, t: &GroupTable, g: usize) -> Result<Vec<i64>> {
    let mut powers = vec![t.identity()];
    let mut x = g;
    while x != t.identity() {
        powers.push(x);
        x = t.mul(x, g);
    }
    let o = powers.len() as i64;
    ct.chars
        .iter()
        .map(|ch| {
            let mut acc = FieldElem::zero();
            for &p in &powers {
                acc = acc.add(&ch.values[ct.classes.class_of[p] as usize]);
            }
            let q = acc.as_rational().ok_or_else(|| Error::Inconsistent("irrational fixed-point dimension".into()))?;
            let q = q / Q::from_integer(BigInt::from(o));
            if !q.is_integer() {
                return Err(Error::Inconsistent("non-integral fixed-point dimension".into()));
            }
            Ok(q.to_integer().to_i64().unwrap_or(0))
        })
        .collect()
}

/// Solve for the characters of `H_i(T(W); Q)` from
/// `H_0 = 1`, `H_n = eps`, duality, the Hopf identity, Betti numbers, sub-quotient bounds
/// and any fixed-point evidence.
pub fn decompose_homology(
    h: &HatGroup,
    t: &GroupTable,
    ct: &CharTable,
    betti: &[usize],
    evidence: &[FixedPointEvidence],
) -> Result<Decomposition> {
    let n = h.n();
    if !(2..=4).contains(&n) {
        return Err(Error::NotApplicable(format!("decomposition is implemented for rank 2 to 4, got {}", n)));
    }
    if betti.len() != n + 1 {
        return Err(Error::InvalidInput(format!("expected {} Betti numbers", n + 1)));
    }
    let hopf = hopf_virtual_character(h, t, &ct.classes)?;
    let mut alt = ct.multiplicities(&hopf)?;
    if n % 2 == 1 {
        alt.iter_mut().for_each(|x| *x = -*x);
    }
    let cells = cell_characters(h, t, &ct.classes)?
        .iter()
        .map(|c| ct.multiplicities(c))
        .collect::<Result<Vec<_>>>()?;
    let fixed = evidence.iter().map(|e| fixed_dimensions(ct, t, e.element)).collect::<Result<Vec<_>>>()?;
    let solver = Solver {
        n,
        deg: (0..ct.len()).map(|i| ct.degree(i)).collect(),
        eps: ct.epsilon_map(t),
        triv: ct.trivial_index(),
        sign: ct.sign_index(t),
        cells,
        alt,
        betti: betti.to_vec(),
        fixed,
        evidence: evidence.iter().map(|e| e.invariant_betti.clone()).collect(),
    };
    let solutions = solver.search();
    if solutions.is_empty() {
        return Err(Error::Inconsistent("no assignment of characters satisfies the constraints".into()));
    }
    Ok(Decomposition {
        ambiguous: solutions.len() > 1,
        solutions,
        evidence_used: evidence.iter().map(|e| e.element).collect(),
    })
}

/// [`decompose_homology`], adding fixed-point evidence for class representatives while the answer is ambiguous.
pub fn decompose_torus(h: &HatGroup, c: &ChainComplex, ct: &CharTable, betti: &[usize]) -> Result<Decomposition> {
    let t = &c.table;
    let mut evidence = Vec::new();
    let mut d = decompose_homology(h, t, ct, betti, &evidence)?;
    let mut reps: Vec<usize> = ct.classes.reps.iter().copied().filter(|&r| r != t.identity()).collect();
    reps.sort_by_key(|&r| (t.element_order(r), t.length(r)));
    for r in reps {
        if !d.ambiguous {
            break;
        }
        evidence.push(fixed_point_evidence(c, r));
        d = decompose_homology(h, t, ct, betti, &evidence)?;
    }
    Ok(d)
}

/// Multiplicity of `chi` in a class function, as an integer when it is one.
pub fn multiplicity(ct: &CharTable, f: &ClassFunction, chi: &ClassFunction) -> Result<i64> {
    let q = ct.inner(f, chi)?;
    if q.is_integer() {
        Ok(q.to_integer().to_i64().unwrap_or(0))
    } else {
        Err(Error::InvalidInput(format!("non-integral multiplicity {}", q)))
    }
}
