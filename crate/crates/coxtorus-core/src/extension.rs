//! One-point extensions `W^ = <s0, s1, ..., sn>` of a finite Coxeter group by a reflection.
//!
//! The extra generator is numbered 0, so words over `S^` use letters `0..=n`
//! and the letters `1..=n` agree with words in the base group.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::coxeter::table::{GroupTable, Subgroup};
use crate::coxeter::types::{finite_order, is_finite_type};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, CoxeterType, Element, INFINITY};
use crate::error::{Error, Result};
use crate::exactnum::{field_parameter_for_labels, real_cyclotomic_field, two_cos_pi_over, Field, FieldElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagramClass {
    Finite,
    Affine,
    CompactHyperbolic,
    NoncompactHyperbolic,
    Other,
}

impl DiagramClass {
    pub fn tag(&self) -> &'static str {
        match self {
            DiagramClass::Finite => "FINITE",
            DiagramClass::Affine => "AFFINE",
            DiagramClass::CompactHyperbolic => "COMPACT_HYPERBOLIC",
            DiagramClass::NoncompactHyperbolic => "NONCOMPACT_HYPERBOLIC",
            DiagramClass::Other => "OTHER",
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, DiagramClass::CompactHyperbolic | DiagramClass::NoncompactHyperbolic)
    }
}

/// Inertia of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

pub fn field_for_matrix(m: &CoxeterMatrix) -> Result<Field> {
    let n = m.n;
    let labels = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m.get(i, j)).filter(|&x| x != INFINITY);
    real_cyclotomic_field(field_parameter_for_labels(labels))
}

/// `2B` with `B(a_i, a_j) = -cos(pi/m_ij)`, and `-1` for infinite labels.
pub fn tits_matrix(f: &Field, m: &CoxeterMatrix) -> Result<Vec<Vec<FieldElem>>> {
    let n = m.n;
    let mut b = vec![vec![FieldElem::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let l = m.get(i, j);
            b[i][j] = if i == j {
                FieldElem::from_int(2)
            } else if l == INFINITY {
                FieldElem::from_int(-2)
            } else {
                two_cos_pi_over(f, l)
                    .ok_or_else(|| Error::InvalidInput(format!("label {} outside the field", l)))?
                    .neg()
            };
        }
    }
    Ok(b)
}

/// Signature by congruence diagonalization.
pub fn signature(f: &Field, mat: &[Vec<FieldElem>]) -> Signature {
    let mut s: Vec<Vec<FieldElem>> = mat.to_vec();
    let mut n = s.len();
    let mut sig = Signature { pos: 0, neg: 0, zero: 0 };
    while n > 0 {
        let piv = (0..n).find(|&k| !s[k][k].is_zero());
        let k = match piv {
            Some(k) => k,
            None => {
                let off = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| a != b && !s[a][b].is_zero());
                match off {
                    None => {
                        sig.zero += n;
                        break;
                    }
                    Some((a, b)) => {
                        // row/col a += row/col b
                        for j in 0..n {
                            let t = s[b][j].clone();
                            s[a][j] = s[a][j].add(&t);
                        }
                        for i in 0..n {
                            let t = s[i][b].clone();
                            s[i][a] = s[i][a].add(&t);
                        }
                        a
                    }
                }
            }
        };
        let p = s[k][k].clone();
        if f.sign_of(&p) > 0 {
            sig.pos += 1;
        } else {
            sig.neg += 1;
        }
        let pinv = f.inv(&p).expect("nonzero pivot");
        let mut next = Vec::with_capacity(n - 1);
        for i in (0..n).filter(|&i| i != k) {
            let c = f.mul(&s[i][k], &pinv);
            let row: Vec<FieldElem> = (0..n)
                .filter(|&j| j != k)
                .map(|j| if c.is_zero() { s[i][j].clone() } else { s[i][j].sub(&f.mul(&c, &s[k][j])) })
                .collect();
            next.push(row);
        }
        s = next;
        n -= 1;
    }
    sig
}

pub fn classify_diagram_in(f: &Field, m: &CoxeterMatrix) -> Result<DiagramClass> {
    let b = tits_matrix(f, m)?;
    let sig = signature(f, &b);
    if sig.neg == 0 && sig.zero == 0 {
        return Ok(DiagramClass::Finite);
    }
    if sig.neg == 0 {
        return Ok(DiagramClass::Affine);
    }
    if sig.neg != 1 || sig.zero != 0 {
        return Ok(DiagramClass::Other);
    }
    let n = m.n;
    let mut compact = true;
    for v in 0..n {
        let idx: Vec<usize> = (0..n).filter(|&i| i != v).collect();
        let sub: Vec<Vec<FieldElem>> = idx.iter().map(|&i| idx.iter().map(|&j| b[i][j].clone()).collect()).collect();
        let s = signature(f, &sub);
        if s.neg > 0 {
            return Ok(DiagramClass::Other);
        }
        if s.zero > 0 {
            compact = false;
        }
    }
    Ok(if compact { DiagramClass::CompactHyperbolic } else { DiagramClass::NoncompactHyperbolic })
}

pub fn classify_diagram(m: &CoxeterMatrix) -> Result<DiagramClass> {
    classify_diagram_in(&field_for_matrix(m)?, m)
}

fn require_irreducible(sys: &CoxeterSystem) -> Result<()> {
    if sys.matrix.components().len() != 1 {
        return Err(Error::Reducible);
    }
    Ok(())
}

fn conj_word(x: &[u8], y: &[u8]) -> Vec<u8> {
    // x^y = y^-1 x y
    let mut w: Vec<u8> = y.iter().rev().copied().collect();
    w.extend_from_slice(x);
    w.extend_from_slice(y);
    w
}

fn repeat(w: &[u8], k: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(w.len() * k);
    for _ in 0..k {
        out.extend_from_slice(w);
    }
    out
}

/// The reflection used to extend `W`: the highest-root reflection for Weyl
/// groups, fixed words for `I2(m)`, `H3` and `H4`.
pub fn distinguished_reflection(sys: &CoxeterSystem) -> Result<Element> {
    require_irreducible(sys)?;
    let named = sys.named_type().or_else(|| named_from_matrix(&sys.matrix));
    let word: Vec<u8> = match named {
        Some(CoxeterType::I2(m)) => {
            let mut w = repeat(&[1, 2], ((m - 1) / 2) as usize);
            w.push(1);
            w
        }
        Some(CoxeterType::H3) => conj_word(&[3], &repeat(&[2, 1], 2)),
        Some(CoxeterType::H4) => {
            let mut y = conj_word(&[1], &[2, 3]);
            y.extend_from_slice(&[1, 2, 1, 2, 3, 4]);
            conj_word(&[4], &repeat(&y, 2))
        }
        _ => {
            let k = sys
                .highest_root()
                .ok_or_else(|| Error::InvalidInput("no distinguished reflection for this matrix".into()))?;
            return Ok(sys.element_from_perm(sys.reflection_perm(k)));
        }
    };
    sys.element_from_word(&word)
}

/// Named non-crystallographic type of a matrix given in standard numbering.
fn named_from_matrix(m: &CoxeterMatrix) -> Option<CoxeterType> {
    let n = m.n;
    for t in [CoxeterType::H3, CoxeterType::H4] {
        if t.rank() == n && t.coxeter_matrix() == *m {
            return Some(t);
        }
    }
    if n == 2 && m.get(0, 1) != INFINITY && m.get(0, 1) >= 3 {
        return Some(CoxeterType::I2(m.get(0, 1)));
    }
    None
}

/// Order of `r s_i` for each simple `s_i`; infinity when `r = s_i`.
pub fn extension_labels(sys: &CoxeterSystem, r: &Element) -> Result<Vec<u64>> {
    if sys.compose(&r.perm, &r.perm) != sys.identity_perm() || r.word.is_empty() {
        return Err(Error::NotInvolution);
    }
    let id = sys.identity_perm();
    Ok((0..sys.rank())
        .map(|i| {
            let g = &sys.gens[i];
            if r.perm == *g {
                return INFINITY;
            }
            let p = sys.compose(&r.perm, g);
            let mut k = 1u64;
            let mut q = p.clone();
            while q != id {
                q = sys.compose(&p, &q);
                k += 1;
            }
            k
        })
        .collect())
}

pub fn extended_matrix(sys: &CoxeterSystem, r: &Element) -> Result<CoxeterMatrix> {
    let labels = extension_labels(sys, r)?;
    let n = sys.rank();
    let mut e = vec![1u64; (n + 1) * (n + 1)];
    for i in 0..n {
        e[(i + 1) * (n + 1)] = labels[i];
        e[i + 1] = labels[i];
        for j in 0..n {
            e[(i + 1) * (n + 1) + j + 1] = sys.matrix.get(i, j);
        }
    }
    CoxeterMatrix::new(n + 1, e)
}

/// An element of `W^` with its ShortLex normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatElement {
    /// Row-major matrix in the geometric representation, basis `a_0..a_n`.
    pub mat: Vec<FieldElem>,
    pub word: Vec<u8>,
}

impl HatElement {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// The extension `W^` of a finite irreducible Coxeter group.
#[derive(Clone, Debug)]
pub struct HatGroup {
    pub matrix: CoxeterMatrix,
    pub base: CoxeterSystem,
    pub field: Field,
    /// `2B^` for the extended matrix.
    pub tits_form: Vec<Vec<FieldElem>>,
    pub gen_matrices: Vec<Vec<FieldElem>>,
    pub r: Element,
    pub r_word: Vec<u8>,
    pub class: DiagramClass,
}

pub fn hat_group(sys: &CoxeterSystem, r: &Element) -> Result<HatGroup> {
    require_irreducible(sys)?;
    let matrix = extended_matrix(sys, r)?;
    let field = field_for_matrix(&matrix)?;
    let class = classify_diagram_in(&field, &matrix)?;
    if !matches!(class, DiagramClass::Affine | DiagramClass::CompactHyperbolic) {
        return Err(Error::UnsupportedExtension(format!("{} extension of {}", class.tag(), sys.name())));
    }
    let tits_form = tits_matrix(&field, &matrix)?;
    let n1 = matrix.n;
    let gen_matrices = (0..n1)
        .map(|i| {
            let mut m = identity_mat(n1);
            for j in 0..n1 {
                m[i * n1 + j] = m[i * n1 + j].sub(&tits_form[i][j]);
            }
            m
        })
        .collect();
    Ok(HatGroup { matrix, base: sys.clone(), field, tits_form, gen_matrices, r: r.clone(), r_word: r.word.clone(), class })
}

/// The extension by the distinguished reflection.
pub fn standard_hat_group(sys: &CoxeterSystem) -> Result<HatGroup> {
    let r = distinguished_reflection(sys)?;
    hat_group(sys, &r)
}

fn identity_mat(n: usize) -> Vec<FieldElem> {
    let mut m = vec![FieldElem::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = FieldElem::from_int(1);
    }
    m
}

impl HatGroup {
    pub fn rank(&self) -> usize {
        self.matrix.n
    }

    /// Rank of the base group `W`; also the dimension of `T(W)`.
    pub fn n(&self) -> usize {
        self.base.rank()
    }

    pub fn mat_mul(&self, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
        let n = self.rank();
        let f = &self.field;
        let mut out = vec![FieldElem::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = &a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &b[k * n + j];
                    if !y.is_zero() {
                        out[i * n + j] = out[i * n + j].add(&f.mul(x, y));
                    }
                }
            }
        }
        out
    }

    pub fn identity_matrix(&self) -> Vec<FieldElem> {
        identity_mat(self.rank())
    }

    pub fn matrix_of(&self, word: &[u8]) -> Vec<FieldElem> {
        let mut m = self.identity_matrix();
        for &s in word {
            m = self.right_mul_gen(&m, s as usize);
        }
        m
    }

    /// `A * M_s`: column `j` becomes `A_j - 2B(a_s, a_j) A_s`.
    fn right_mul_gen(&self, a: &[FieldElem], s: usize) -> Vec<FieldElem> {
        let n = self.rank();
        let f = &self.field;
        let mut out = a.to_vec();
        for j in 0..n {
            let c = &self.tits_form[s][j];
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let x = &a[i * n + s];
                if !x.is_zero() {
                    out[i * n + j] = out[i * n + j].sub(&f.mul(c, x));
                }
            }
        }
        out
    }

    /// `M_s * A`: row `s` becomes `A_s - sum_j 2B(a_s, a_j) A_j`.
    fn left_mul_gen(&self, s: usize, a: &[FieldElem]) -> Vec<FieldElem> {
        let n = self.rank();
        let f = &self.field;
        let mut out = a.to_vec();
        for j in 0..n {
            let c = &self.tits_form[s][j];
            if c.is_zero() {
                continue;
            }
            for k in 0..n {
                let x = &a[j * n + k];
                if !x.is_zero() {
                    out[s * n + k] = out[s * n + k].sub(&f.mul(c, x));
                }
            }
        }
        out
    }

    fn column_is_negative(&self, a: &[FieldElem], col: usize) -> bool {
        let n = self.rank();
        for i in 0..n {
            let x = &a[i * n + col];
            if !x.is_zero() {
                return self.field.sign_of(x) < 0;
            }
        }
        false
    }

    /// ShortLex normal form by stripping the smallest left descent.
    pub fn normal_form(&self, word: &[u8]) -> Result<HatElement> {
        let n = self.rank();
        if word.iter().any(|&s| s as usize >= n) {
            return Err(Error::InvalidInput(format!("letters must lie in 0..{}", n)));
        }
        // inverse matrix: w^-1 = s_k ... s_1
        let mut inv = self.identity_matrix();
        for &s in word {
            inv = self.left_mul_gen(s as usize, &inv);
        }
        let mut nf = Vec::new();
        loop {
            match (0..n).find(|&i| self.column_is_negative(&inv, i)) {
                None => break,
                Some(i) => {
                    nf.push(i as u8);
                    inv = self.right_mul_gen(&inv, i);
                }
            }
        }
        let mat = self.matrix_of(&nf);
        Ok(HatElement { mat, word: nf })
    }

    /// Word of `q0 = s0 r^_W`.
    pub fn q0_word(&self) -> Vec<u8> {
        let mut w = vec![0u8];
        w.extend_from_slice(&self.r_word);
        w
    }

    /// Word of `u q0 u^-1` for a word `u` in the base group.
    pub fn conjugate_q0_word(&self, u: &[u8]) -> Vec<u8> {
        let mut w = u.to_vec();
        w.extend(self.q0_word());
        w.extend(u.iter().rev());
        w
    }

    /// Generators of `pi(W^_I)` in the base table.
    pub fn parabolic_image_gens(&self, t: &GroupTable, subset: &[usize]) -> Vec<usize> {
        let r = t.index_of(&self.r);
        subset.iter().map(|&i| if i == 0 { r } else { t.index_of_word(&[i as u8]) }).collect()
    }

    /// `pi(W^_I)` for a proper subset `I` of `{0..n}`, checked against `|W^_I|`.
    pub fn parabolic_image(&self, t: &GroupTable, subset: &[usize]) -> Result<Subgroup> {
        if subset.len() >= self.rank() {
            return Err(Error::InvalidInput("the full parabolic subgroup is infinite".into()));
        }
        let h = t.closure(&self.parabolic_image_gens(t, subset));
        let sub = self.matrix.restrict(subset);
        let expected = finite_order(&sub)?;
        if h.order() as u64 != expected {
            return Err(Error::Inconsistent(format!(
                "image of parabolic {:?} has order {} but the parabolic has order {}",
                subset,
                h.order(),
                expected
            )));
        }
        Ok(h)
    }

    /// Trace of `q0` in the geometric representation.
    pub fn q0_trace(&self) -> Result<FieldElem> {
        if self.rank() != 3 {
            return Err(Error::NotApplicable("trace check needs a dihedral base group".into()));
        }
        let m = self.matrix_of(&self.q0_word());
        Ok(m[0].add(&m[4]).add(&m[8]))
    }

    /// Image in `Aff(V*)` for Weyl groups: `(linear part, translation)` in simple-coroot coordinates,
    /// with `s0` acting as `t_{theta^vee} s_theta`.
    pub fn affine_image(&self, word: &[u8]) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
        let sys = &self.base;
        let a = sys.cartan.as_ref().ok_or_else(|| Error::NotApplicable("affine realization needs a Weyl group".into()))?;
        let n = sys.rank();
        let theta = sys.highest_root().unwrap();
        let theta_v = sys.int_coroot(theta).unwrap();
        let theta_r = sys.int_root(theta).unwrap();
        // linear maps on coroot coordinates: s(x) = x - <x, alpha> alpha^vee
        let refl = |root: &[i64], coroot: &[i64]| -> Vec<Vec<i64>> {
            let mut m = vec![vec![0i64; n]; n];
            for j in 0..n {
                // image of alpha_j^vee
                let pair: i64 = (0..n).map(|k| a[j][k] * root[k]).sum();
                for i in 0..n {
                    m[i][j] = if i == j { 1 } else { 0 } - pair * coroot[i];
                }
            }
            m
        };
        let mut lin: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let mut tr = vec![0i64; n];
        for &s in word.iter().rev() {
            let (m, t): (Vec<Vec<i64>>, Vec<i64>) = if s == 0 {
                (refl(&theta_r, &theta_v), theta_v.clone())
            } else {
                let i = s as usize - 1;
                let mut e = vec![0i64; n];
                e[i] = 1;
                let mut ev = vec![0i64; n];
                ev[i] = 1;
                (refl(&e, &ev), vec![0; n])
            };
            // (m, t) o (lin, tr)
            let newlin: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| m[i][k] * lin[k][j]).sum()).collect()).collect();
            let newtr: Vec<i64> = (0..n).map(|i| (0..n).map(|k| m[i][k] * tr[k]).sum::<i64>() + t[i]).collect();
            lin = newlin;
            tr = newtr;
        }
        Ok((lin, tr))
    }
}

/// One isomorphism class of extended diagrams found by [`scan_reflection_extensions`].
#[derive(Clone, Debug)]
pub struct ScanEntry {
    /// ShortLex word of the first reflection giving this diagram.
    pub reflection: Vec<u8>,
    pub root_index: usize,
    pub count: usize,
    /// The reflection is simple, so some `r s_i` is trivial and the matrix carries an infinite label instead.
    pub degenerate: bool,
    pub class: DiagramClass,
    pub matrix: CoxeterMatrix,
}

/// Extend `W` by every reflection and group the resulting diagrams up to isomorphism.
pub fn scan_reflection_extensions(sys: &CoxeterSystem) -> Result<Vec<ScanEntry>> {
    require_irreducible(sys)?;
    let mut out: Vec<ScanEntry> = Vec::new();
    let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut fields: HashMap<u64, Field> = HashMap::new();
    for k in 0..sys.nplus {
        let r = sys.element_from_perm(sys.reflection_perm(k));
        let m = extended_matrix(sys, &r)?;
        let key = m.canonical_form();
        if let Some(&pos) = seen.get(&key) {
            out[pos].count += 1;
            continue;
        }
        let n = m.n;
        let l = field_parameter_for_labels(
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m.get(i, j)).filter(|&x| x != INFINITY),
        );
        let f = match fields.get(&l) {
            Some(f) => f.clone(),
            None => {
                let f = real_cyclotomic_field(l)?;
                fields.insert(l, f.clone());
                f
            }
        };
        let degenerate = k < sys.rank();
        let class = if degenerate { DiagramClass::Other } else { classify_diagram_in(&f, &m)? };
        seen.insert(key, out.len());
        out.push(ScanEntry { reflection: r.word.clone(), root_index: k, count: 1, degenerate, class, matrix: m });
    }
    Ok(out)
}

/// Order of the standard parabolic `W^_I` when finite.
pub fn parabolic_order(m: &CoxeterMatrix, subset: &[usize]) -> Option<u64> {
    let sub = m.restrict(subset);
    if is_finite_type(&sub) {
        finite_order(&sub).ok()
    } else {
        None
    }
}

pub fn describe(h: &HatGroup) -> String {
    format!("{} extension of {} ({})", h.class.tag(), h.base.name(), h.matrix)
}
