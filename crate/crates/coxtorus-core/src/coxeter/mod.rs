//! Finite Coxeter groups acting on their root systems.
//!
//! Generators are numbered `1..=n` in words. An element is the permutation it
//! induces on the root list; the first `n` roots are the simple roots and
//! root `i + N` is the negative of root `i`, where `N` is the number of
//! positive roots.

pub mod table;
pub mod types;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::exactnum::{field_parameter_for_labels, real_cyclotomic_field, two_cos_pi_over, Field, FieldElem};
pub use table::{CosetSpace, GroupTable, Side, Subgroup};
pub use types::{identify_finite_type, CoxeterMatrix, FiniteKind, INFINITY};

/// Named finite irreducible types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
    H3,
    H4,
    I2(u64),
}

impl CoxeterType {
    pub fn rank(&self) -> usize {
        match *self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::C(n) | CoxeterType::D(n) | CoxeterType::E(n) => n,
            CoxeterType::F4 | CoxeterType::H4 => 4,
            CoxeterType::H3 => 3,
            CoxeterType::G2 | CoxeterType::I2(_) => 2,
        }
    }

    pub fn is_crystallographic(&self) -> bool {
        !matches!(self, CoxeterType::H3 | CoxeterType::H4 | CoxeterType::I2(_))
    }

    pub fn name(&self) -> String {
        match *self {
            CoxeterType::A(n) => format!("A{}", n),
            CoxeterType::B(n) => format!("B{}", n),
            CoxeterType::C(n) => format!("C{}", n),
            CoxeterType::D(n) => format!("D{}", n),
            CoxeterType::E(n) => format!("E{}", n),
            CoxeterType::F4 => "F4".into(),
            CoxeterType::G2 => "G2".into(),
            CoxeterType::H3 => "H3".into(),
            CoxeterType::H4 => "H4".into(),
            CoxeterType::I2(m) => format!("I2({})", m),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            CoxeterType::A(n) => n >= 1,
            CoxeterType::B(n) => n >= 2,
            CoxeterType::C(n) => n >= 2,
            CoxeterType::D(n) => n >= 4,
            CoxeterType::E(n) => (6..=8).contains(&n),
            CoxeterType::I2(m) => m >= 3,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("no finite Coxeter type {}", self.name())))
        }
    }

    /// Cartan matrix `a_ij = <alpha_i^vee, alpha_j>` in Bourbaki numbering.
    pub fn cartan(&self) -> Option<Vec<Vec<i64>>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i - 1][j - 1] = aij;
            a[j - 1][i - 1] = aji;
        };
        match *self {
            CoxeterType::A(n) => (1..n).for_each(|i| link(i, i + 1, -1, -1)),
            CoxeterType::B(n) => {
                (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 1, n, -1, -2);
            }
            CoxeterType::C(n) => {
                (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 1, n, -2, -1);
            }
            CoxeterType::D(n) => {
                (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n, -1, -1);
            }
            CoxeterType::E(_) => {
                link(1, 3, -1, -1);
                link(2, 4, -1, -1);
                (3..n).for_each(|i| link(i, i + 1, -1, -1));
            }
            CoxeterType::F4 => {
                link(1, 2, -1, -1);
                link(2, 3, -1, -2);
                link(3, 4, -1, -1);
            }
            CoxeterType::G2 => link(1, 2, -3, -1),
            _ => return None,
        }
        Some(a)
    }

    pub fn coxeter_matrix(&self) -> CoxeterMatrix {
        let n = self.rank();
        if let Some(a) = self.cartan() {
            let mut e = vec![2u64; n * n];
            for i in 0..n {
                for j in 0..n {
                    e[i * n + j] = if i == j {
                        1
                    } else {
                        match a[i][j] * a[j][i] {
                            0 => 2,
                            1 => 3,
                            2 => 4,
                            _ => 6,
                        }
                    };
                }
            }
            return CoxeterMatrix::new(n, e).expect("valid matrix");
        }
        match *self {
            CoxeterType::H3 => CoxeterMatrix::from_edges(3, &[(0, 1, 5), (1, 2, 3)]),
            CoxeterType::H4 => CoxeterMatrix::from_edges(4, &[(0, 1, 5), (1, 2, 3), (2, 3, 3)]),
            CoxeterType::I2(m) => CoxeterMatrix::from_edges(2, &[(0, 1, m)]),
            _ => unreachable!(),
        }
        .expect("valid matrix")
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    /// Parses `A3`, `B2`, `E8`, `H4`, `I2(7)` or `I2_7`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("cannot parse Coxeter type '{}'", s));
        if s.len() < 2 {
            return Err(bad());
        }
        let (head, tail) = s.split_at(1);
        let head = head.to_ascii_uppercase();
        if head == "I" {
            let rest = tail.strip_prefix('2').ok_or_else(bad)?;
            let digits: String = rest.chars().filter(|c| c.is_ascii_digit()).collect();
            let m: u64 = digits.parse().map_err(|_| bad())?;
            let t = CoxeterType::I2(m);
            t.validate()?;
            return Ok(t);
        }
        let n: usize = tail.parse().map_err(|_| bad())?;
        let t = match head.as_str() {
            "A" => CoxeterType::A(n),
            "B" => CoxeterType::B(n),
            "C" => CoxeterType::C(n),
            "D" => CoxeterType::D(n),
            "E" => CoxeterType::E(n),
            "F" if n == 4 => CoxeterType::F4,
            "G" if n == 2 => CoxeterType::G2,
            "H" if n == 3 => CoxeterType::H3,
            "H" if n == 4 => CoxeterType::H4,
            _ => return Err(bad()),
        };
        t.validate()?;
        Ok(t)
    }
}

/// How a system was specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemSpec {
    Named(CoxeterType),
    Matrix(CoxeterMatrix),
}

/// A finite Coxeter group with its enumerated root system.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    pub spec: SystemSpec,
    pub matrix: CoxeterMatrix,
    pub field: Field,
    /// `pairing[i][j] = <alpha_i^vee, alpha_j>`, so `s_i(v) = v - (pairing v)_i alpha_i`.
    pub pairing: Vec<Vec<FieldElem>>,
    /// Integer Cartan matrix for crystallographic named types.
    pub cartan: Option<Vec<Vec<i64>>>,
    /// Root coordinates in the simple-root basis.
    pub roots: Vec<Vec<FieldElem>>,
    pub nplus: usize,
    /// Permutation of root indices induced by each simple reflection.
    pub gens: Vec<Vec<u16>>,
    /// For positive root `k > n`: a pair `(i, k')` with `root k = s_i(root k')`.
    root_parent: Vec<(usize, usize)>,
    pub order: u64,
}

/// An element of a finite Coxeter group.
#[derive(Clone, Debug)]
pub struct Element {
    pub perm: Vec<u16>,
    /// ShortLex-minimal reduced word, letters in `1..=n`.
    pub word: Vec<u8>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}
impl Eq for Element {}
impl core::hash::Hash for Element {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.perm.hash(state)
    }
}

pub fn coxeter_system(t: CoxeterType) -> Result<CoxeterSystem> {
    t.validate()?;
    let matrix = t.coxeter_matrix();
    match t.cartan() {
        Some(a) => {
            let field = real_cyclotomic_field(2)?;
            let pairing = a
                .iter()
                .map(|row| row.iter().map(|&x| FieldElem::from_int(x)).collect())
                .collect();
            CoxeterSystem::build(SystemSpec::Named(t), matrix, field, pairing, Some(a))
        }
        None => CoxeterSystem::from_matrix_with_spec(SystemSpec::Named(t), matrix),
    }
}

pub fn coxeter_system_from_matrix(m: CoxeterMatrix) -> Result<CoxeterSystem> {
    CoxeterSystem::from_matrix_with_spec(SystemSpec::Matrix(m.clone()), m)
}

/// Generic geometric realization `pairing = 2B` with `B(a_i, a_j) = -cos(pi/m_ij)`.
pub fn geometric_pairing(f: &Field, m: &CoxeterMatrix) -> Result<Vec<Vec<FieldElem>>> {
    let n = m.n;
    let mut p = vec![vec![FieldElem::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            p[i][j] = if i == j {
                FieldElem::from_int(2)
            } else if m.get(i, j) == INFINITY {
                FieldElem::from_int(-2)
            } else {
                two_cos_pi_over(f, m.get(i, j))
                    .ok_or_else(|| Error::InvalidInput("label outside coefficient field".into()))?
                    .neg()
            };
        }
    }
    Ok(p)
}

impl CoxeterSystem {
    fn from_matrix_with_spec(spec: SystemSpec, matrix: CoxeterMatrix) -> Result<Self> {
        identify_finite_type(&matrix)?;
        let l = field_parameter_for_labels((0..matrix.n).flat_map(|i| (0..matrix.n).map(move |j| (i, j))).map(|(i, j)| matrix.get(i, j)));
        let field = real_cyclotomic_field(l)?;
        let pairing = geometric_pairing(&field, &matrix)?;
        Self::build(spec, matrix, field, pairing, None)
    }

    fn build(
        spec: SystemSpec,
        matrix: CoxeterMatrix,
        field: Field,
        pairing: Vec<Vec<FieldElem>>,
        cartan: Option<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        let n = matrix.n;
        let reflect = |i: usize, v: &[FieldElem]| -> Vec<FieldElem> {
            let mut c = FieldElem::zero();
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() && !pairing[i][j].is_zero() {
                    c = c.add(&field.mul(&pairing[i][j], x));
                }
            }
            let mut out = v.to_vec();
            out[i] = out[i].sub(&c);
            out
        };
        let mut roots: Vec<Vec<FieldElem>> = Vec::new();
        let mut index: HashMap<Vec<FieldElem>, usize> = HashMap::new();
        let mut parent = Vec::new();
        for i in 0..n {
            let mut v = vec![FieldElem::zero(); n];
            v[i] = FieldElem::from_int(1);
            index.insert(v.clone(), i);
            roots.push(v);
            parent.push((i, i));
        }
        let mut k = 0;
        while k < roots.len() {
            for i in 0..n {
                if k == i {
                    continue;
                }
                let w = reflect(i, &roots[k]);
                if !index.contains_key(&w) {
                    index.insert(w.clone(), roots.len());
                    roots.push(w);
                    parent.push((i, k));
                }
            }
            k += 1;
            if roots.len() > 4096 {
                return Err(Error::FiniteTypeRequired("root system does not close".into()));
            }
        }
        let nplus = roots.len();
        for k in 0..nplus {
            let neg: Vec<FieldElem> = roots[k].iter().map(|x| x.neg()).collect();
            index.insert(neg.clone(), nplus + k);
            roots.push(neg);
        }
        let total = roots.len();
        let mut gens = Vec::with_capacity(n);
        for i in 0..n {
            let mut perm = vec![0u16; total];
            for k in 0..nplus {
                let img = if k == i { nplus + i } else { index[&reflect(i, &roots[k])] };
                perm[k] = img as u16;
                perm[k + nplus] = ((img + nplus) % total) as u16;
            }
            gens.push(perm);
        }
        let mut sys = CoxeterSystem {
            spec,
            matrix,
            field,
            pairing,
            cartan,
            roots,
            nplus,
            gens,
            root_parent: parent,
            order: 0,
        };
        sys.order = sys.compute_order()?;
        Ok(sys)
    }

    pub fn rank(&self) -> usize {
        self.matrix.n
    }

    pub fn nroots(&self) -> usize {
        self.roots.len()
    }

    pub fn name(&self) -> String {
        match &self.spec {
            SystemSpec::Named(t) => t.name(),
            SystemSpec::Matrix(m) => types::type_name(m).unwrap_or_else(|_| "matrix".into()),
        }
    }

    pub fn named_type(&self) -> Option<CoxeterType> {
        match self.spec {
            SystemSpec::Named(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_crystallographic(&self) -> bool {
        self.cartan.is_some()
    }

    fn reflect_vec(&self, i: usize, v: &[FieldElem]) -> Vec<FieldElem> {
        let mut c = FieldElem::zero();
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() && !self.pairing[i][j].is_zero() {
                c = c.add(&self.field.mul(&self.pairing[i][j], x));
            }
        }
        let mut out = v.to_vec();
        out[i] = out[i].sub(&c);
        out
    }

    /// Group order as a product of orbit sizes along the flag of parabolics `W_{1..k}`.
    fn compute_order(&self) -> Result<u64> {
        let n = self.rank();
        let f = &self.field;
        let mut order = 1u64;
        for k in 0..n {
            // vector w with <alpha_i^vee, w> = delta_{ik} for i <= k, inside span(alpha_0..alpha_k)
            let size = k + 1;
            let mut a: Vec<Vec<FieldElem>> = (0..size)
                .map(|i| {
                    let mut row: Vec<FieldElem> = (0..size).map(|j| self.pairing[i][j].clone()).collect();
                    row.push(if i == k { FieldElem::from_int(1) } else { FieldElem::zero() });
                    row
                })
                .collect();
            let sol = solve_square(f, &mut a)?;
            let mut w = vec![FieldElem::zero(); n];
            w[..size].clone_from_slice(&sol);
            let mut seen: HashMap<Vec<FieldElem>, ()> = HashMap::new();
            seen.insert(w.clone(), ());
            let mut queue = vec![w];
            let mut q = 0;
            while q < queue.len() {
                for i in 0..=k {
                    let v = self.reflect_vec(i, &queue[q]);
                    if !seen.contains_key(&v) {
                        seen.insert(v.clone(), ());
                        queue.push(v);
                    }
                }
                q += 1;
            }
            order = order
                .checked_mul(queue.len() as u64)
                .ok_or(Error::TooLarge(u64::MAX))?;
        }
        Ok(order)
    }

    pub fn is_positive_root(&self, k: usize) -> bool {
        k < self.nplus
    }

    pub fn negate_root(&self, k: usize) -> usize {
        (k + self.nplus) % self.roots.len()
    }

    pub fn identity_perm(&self) -> Vec<u16> {
        (0..self.roots.len() as u16).collect()
    }

    /// `a * b` as maps on roots: `(a b)(x) = a(b(x))`.
    pub fn compose(&self, a: &[u16], b: &[u16]) -> Vec<u16> {
        b.iter().map(|&x| a[x as usize]).collect()
    }

    pub fn invert_perm(&self, a: &[u16]) -> Vec<u16> {
        let mut inv = vec![0u16; a.len()];
        for (i, &x) in a.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        inv
    }

    pub fn perm_of_word(&self, word: &[u8]) -> Vec<u16> {
        let mut p = self.identity_perm();
        for &s in word.iter().rev() {
            p = self.compose(&self.gens[s as usize - 1], &p);
        }
        p
    }

    /// Number of positive roots sent to negative roots.
    pub fn perm_length(&self, p: &[u16]) -> usize {
        p[..self.nplus].iter().filter(|&&x| (x as usize) >= self.nplus).count()
    }

    /// ShortLex-minimal reduced word, by repeatedly stripping the smallest left descent.
    pub fn shortlex_word(&self, p: &[u16]) -> Vec<u8> {
        let mut cur = p.to_vec();
        let mut word = Vec::new();
        loop {
            let inv = self.invert_perm(&cur);
            let s = (0..self.rank()).find(|&s| (inv[s] as usize) >= self.nplus);
            match s {
                None => return word,
                Some(s) => {
                    word.push(s as u8 + 1);
                    cur = self.compose(&self.gens[s], &cur);
                }
            }
        }
    }

    pub fn element_from_perm(&self, perm: Vec<u16>) -> Element {
        let word = self.shortlex_word(&perm);
        Element { perm, word }
    }

    pub fn element_from_word(&self, word: &[u8]) -> Result<Element> {
        if word.iter().any(|&s| s == 0 || s as usize > self.rank()) {
            return Err(Error::InvalidInput(format!("word letters must lie in 1..={}", self.rank())));
        }
        Ok(self.element_from_perm(self.perm_of_word(word)))
    }

    pub fn identity(&self) -> Element {
        Element { perm: self.identity_perm(), word: Vec::new() }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.element_from_perm(self.compose(&a.perm, &b.perm))
    }

    pub fn inverse(&self, a: &Element) -> Element {
        self.element_from_perm(self.invert_perm(&a.perm))
    }

    pub fn length(&self, a: &Element) -> usize {
        self.perm_length(&a.perm)
    }

    pub fn simple(&self, s: usize) -> Element {
        Element { perm: self.gens[s - 1].clone(), word: vec![s as u8] }
    }

    /// `x^y = y^-1 x y`.
    pub fn conjugate(&self, x: &Element, y: &Element) -> Element {
        let yi = self.invert_perm(&y.perm);
        self.element_from_perm(self.compose(&yi, &self.compose(&x.perm, &y.perm)))
    }

    pub fn order_of(&self, a: &Element) -> usize {
        let id = self.identity_perm();
        let mut p = a.perm.clone();
        let mut k = 1;
        while p != id {
            p = self.compose(&a.perm, &p);
            k += 1;
        }
        k
    }

    /// Permutation of the reflection in the root with index `k`.
    pub fn reflection_perm(&self, k: usize) -> Vec<u16> {
        let k = if k >= self.nplus { k - self.nplus } else { k };
        if k < self.rank() {
            return self.gens[k].clone();
        }
        let (i, kp) = self.root_parent[k];
        let inner = self.reflection_perm(kp);
        let g = &self.gens[i];
        self.compose(g, &self.compose(&inner, g))
    }

    pub fn reflections(&self) -> Vec<Element> {
        (0..self.nplus).map(|k| self.element_from_perm(self.reflection_perm(k))).collect()
    }

    /// Index of the positive root whose reflection is `e`, if `e` is a reflection.
    pub fn reflection_root(&self, e: &Element) -> Option<usize> {
        (0..self.nplus).find(|&k| self.reflection_perm(k) == e.perm)
    }

    pub fn root_height(&self, k: usize) -> Option<i64> {
        let mut h = 0i64;
        for c in &self.roots[k] {
            let z = c.as_integer()?;
            h += i64::try_from(&z).ok()?;
        }
        Some(h)
    }

    /// Highest root for crystallographic systems: the positive root of maximal height.
    pub fn highest_root(&self) -> Option<usize> {
        if !self.is_crystallographic() {
            return None;
        }
        (0..self.nplus).max_by_key(|&k| self.root_height(k).unwrap_or(0))
    }

    /// Integer coordinates of a root (crystallographic case).
    pub fn int_root(&self, k: usize) -> Option<Vec<i64>> {
        self.roots[k]
            .iter()
            .map(|c| c.as_integer().and_then(|z| i64::try_from(&z).ok()))
            .collect()
    }

    /// Coroot of a root in simple-coroot coordinates (crystallographic case).
    pub fn int_coroot(&self, k: usize) -> Option<Vec<i64>> {
        // beta^vee = sum_j b_j (|alpha_j|^2/|beta|^2) alpha_j^vee with lengths from the symmetrizer
        let d = self.symmetrizer()?;
        let b = self.int_root(k)?;
        // |beta|^2 / 2 = sum_ij b_i b_j d_i a_ij / 2 where (alpha_i, alpha_j) = d_i a_ij
        let a = self.cartan.as_ref()?;
        let n = self.rank();
        let mut norm2 = 0i64;
        for i in 0..n {
            for j in 0..n {
                norm2 += b[i] * b[j] * d[i] * a[i][j];
            }
        }
        // (alpha_j, alpha_j) = 2 d_j
        Some((0..n).map(|j| 2 * b[j] * d[j] / norm2).collect())
    }

    /// Positive integers `d_i` with `d_i a_ij = d_j a_ji`.
    pub fn symmetrizer(&self) -> Option<Vec<i64>> {
        let a = self.cartan.as_ref()?;
        let n = self.rank();
        let mut d = vec![0i64; n];
        d[0] = 1;
        let mut stack = vec![0usize];
        let mut num = vec![(1i64, 1i64); n];
        let mut seen = vec![false; n];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && a[i][j] != 0 {
                    // d_j = d_i a_ij / a_ji
                    num[j] = (num[i].0 * a[i][j], num[i].1 * a[j][i]);
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        let lcm = num.iter().fold(1i64, |acc, &(_, q)| num_integer::lcm(acc, q.abs()));
        for i in 0..n {
            d[i] = num[i].0 * lcm / num[i].1;
        }
        let g = d.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
        Some(d.into_iter().map(|x| x / g).collect())
    }

    /// Full enumeration by breadth-first search in ShortLex order.
    pub fn table(&self) -> Result<GroupTable> {
        GroupTable::enumerate(self)
    }
}

/// Solve `A x = b` for a nonsingular square system given as augmented rows.
pub fn solve_square(f: &Field, a: &mut [Vec<FieldElem>]) -> Result<Vec<FieldElem>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !a[r][c].is_zero())
            .ok_or_else(|| Error::InvalidInput("singular system".into()))?;
        a.swap(c, p);
        let inv = f.inv(&a[c][c])?;
        for x in a[c].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let factor = a[r][c].clone();
                for k in c..=n {
                    let t = f.mul(&factor, &a[c][k]);
                    a[r][k] = a[r][k].sub(&t);
                }
            }
        }
    }
    Ok(a.iter().map(|row| row[n].clone()).collect())
}
