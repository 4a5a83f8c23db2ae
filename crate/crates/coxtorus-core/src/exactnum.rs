//! Exact arithmetic in the real cyclotomic fields `Q(2cos(pi/m))`.
//!
//! An element is a polynomial in the generator `x = 2cos(pi/m)` reduced
//! modulo the minimal polynomial. Signs are decided by rational interval
//! arithmetic around an isolating interval of the real embedding.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

// ---------------------------------------------------------------------------
// dense rational polynomials, coefficients low to high

fn trim(p: &mut Vec<Q>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_eval(p: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Q::zero);
        let y = b.get(i).cloned().unwrap_or_else(Q::zero);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
fn poly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r: Vec<Q> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut qt = vec![Q::zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1].clone() / &lead;
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        qt[k] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut qt);
    (qt, r)
}

fn poly_derivative(p: &[Q]) -> Vec<Q> {
    let mut out: Vec<Q> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * q(i as i64))
        .collect();
    trim(&mut out);
    out
}

fn sign_of_q(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sturm_chain(p: &[Q]) -> Vec<Vec<Q>> {
    let mut chain = vec![p.to_vec(), poly_derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let (_, r) = poly_divrem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn sign_changes(chain: &[Vec<Q>], x: &Q) -> usize {
    let mut last = 0;
    let mut count = 0;
    for p in chain {
        let s = sign_of_q(&poly_eval(p, x));
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn int_poly_divexact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut out = vec![BigInt::zero(); a.len() - db];
    for k in (0..out.len()).rev() {
        let c = &r[k + db] / &b[db];
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        out[k] = c;
    }
    out
}

/// The cyclotomic polynomial `Phi_n` as integer coefficients, low to high.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = int_poly_divexact(&num, &cyclotomic(d));
        }
    }
    num
}

/// Minimal polynomial of `2cos(pi/m)` over the rationals.
pub fn minpoly_two_cos(m: u64) -> Vec<Q> {
    let n = 2 * m;
    let phi = cyclotomic(n);
    let d = (phi.len() - 1) / 2;
    // symmetric Laurent coefficients c_{-d..d}; since phi is palindromic only c_0..c_d matter
    let mut c: Vec<BigInt> = phi[d..].to_vec();
    let mut out = vec![BigInt::zero(); d + 1];
    for k in (0..=d).rev() {
        let coef = c[k].clone();
        if coef.is_zero() {
            continue;
        }
        out[k] = coef.clone();
        // subtract coef * (z + 1/z)^k, keeping nonnegative exponents
        let mut binom = BigInt::one();
        for i in 0..=k {
            let e = k as i64 - 2 * i as i64;
            if e >= 0 {
                c[e as usize] -= &coef * &binom;
            }
            binom = binom * BigInt::from((k - i) as u64) / BigInt::from((i + 1) as u64);
        }
    }
    out.into_iter().map(Q::from_integer).collect()
}

// ---------------------------------------------------------------------------

/// Descriptor of `Q(2cos(pi/m))` with its real embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub m: u64,
    pub minpoly: Vec<Q>,
    pub degree: usize,
    /// Isolating interval `[lo, hi]` for `2cos(pi/m)`; degenerate when the degree is 1.
    pub embedding_anchor: (Q, Q),
}

pub type Field = Arc<FieldDescriptor>;

pub fn real_cyclotomic_field(m: u64) -> Result<Field> {
    if m < 2 {
        return Err(Error::InvalidInput(alloc::format!("field parameter m={} < 2", m)));
    }
    let minpoly = minpoly_two_cos(m);
    let degree = minpoly.len() - 1;
    let anchor = if degree == 1 {
        let r = -minpoly[0].clone() / &minpoly[1];
        (r.clone(), r)
    } else {
        let chain = sturm_chain(&minpoly);
        let count = |a: &Q, b: &Q| sign_changes(&chain, a) - sign_changes(&chain, b);
        let mut lo = q(-2);
        let mut hi = q(2);
        while count(&lo, &hi) > 1 {
            let mid = (&lo + &hi) / q(2);
            if count(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut iv = (lo, hi);
        refine(&minpoly, &mut iv, 40);
        iv
    };
    Ok(Arc::new(FieldDescriptor {
        m,
        minpoly,
        degree,
        embedding_anchor: anchor,
    }))
}

/// Bisect an isolating interval `steps` times.
fn refine(minpoly: &[Q], iv: &mut (Q, Q), steps: usize) {
    let slo = sign_of_q(&poly_eval(minpoly, &iv.0));
    for _ in 0..steps {
        let mid = (&iv.0 + &iv.1) / q(2);
        let s = sign_of_q(&poly_eval(minpoly, &mid));
        if s == 0 {
            *iv = (mid.clone(), mid);
            return;
        }
        if s == slo {
            iv.0 = mid;
        } else {
            iv.1 = mid;
        }
    }
}

/// Exact element of a real cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FieldElem {
    pub coeffs: Vec<Q>,
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem { coeffs: Vec::new() }
    }

    pub fn from_q(c: Q) -> Self {
        let mut coeffs = vec![c];
        trim(&mut coeffs);
        FieldElem { coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(q(n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The rational value when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Integer value when the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn add(&self, o: &FieldElem) -> FieldElem {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
            if let Some(d) = o.coeffs.get(i) {
                c += d;
            }
            coeffs.push(c);
        }
        trim(&mut coeffs);
        FieldElem { coeffs }
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, o: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: poly_sub(&self.coeffs, &o.coeffs),
        }
    }

    pub fn scale(&self, c: &Q) -> FieldElem {
        if c.is_zero() {
            return FieldElem::zero();
        }
        FieldElem {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})*x", c)?,
                _ => write!(f, "({})*x^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl FieldDescriptor {
    pub fn zero(&self) -> FieldElem {
        FieldElem::zero()
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::from_int(1)
    }

    /// The generator `2cos(pi/m)`.
    pub fn generator(&self) -> FieldElem {
        self.reduce(vec![Q::zero(), Q::one()])
    }

    fn reduce(&self, mut p: Vec<Q>) -> FieldElem {
        trim(&mut p);
        if p.len() > self.degree {
            p = poly_divrem(&p, &self.minpoly).1;
        }
        FieldElem { coeffs: p }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.reduce(poly_mul(&a.coeffs, &b.coeffs))
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::InvalidInput("inverse of zero".into()));
        }
        // extended Euclid: s*a + t*minpoly = g
        let mut r0 = self.minpoly.clone();
        let mut r1 = a.coeffs.clone();
        let mut s0: Vec<Q> = Vec::new();
        let mut s1: Vec<Q> = vec![Q::one()];
        while !r1.is_empty() {
            let (qt, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&qt, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant since minpoly is irreducible
        let c = r0[0].clone();
        Ok(self.reduce(s0.into_iter().map(|x| x / &c).collect()))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElem, mut e: u32) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `2cos(j*pi/m)` for any integer `j`, via the Chebyshev-type recursion.
    pub fn two_cos_multiple(&self, j: i64) -> FieldElem {
        let period = 2 * self.m as i64;
        let mut j = j.rem_euclid(period);
        if j > self.m as i64 {
            j = period - j;
        }
        let x = self.generator();
        let mut prev = FieldElem::from_int(2);
        if j == 0 {
            return prev;
        }
        let mut cur = x.clone();
        for _ in 1..j {
            let next = self.mul(&x, &cur).sub(&prev);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// `2cos(num*pi/den)` when it lies in this field by the divisibility `den | num*m`.
    pub fn two_cos_ratio(&self, num: i64, den: i64) -> Option<FieldElem> {
        let top = num * self.m as i64;
        if top % den != 0 {
            return None;
        }
        Some(self.two_cos_multiple(top / den))
    }

    /// Interval `[lo, hi]` containing the image of `e` under the embedding, using an anchor interval.
    fn eval_interval(&self, e: &FieldElem, anchor: &(Q, Q)) -> (Q, Q) {
        // anchor is assumed inside (0, infinity) when the degree exceeds 1
        let (lo, hi) = anchor;
        let mut a = Q::zero();
        let mut b = Q::zero();
        let mut plo = Q::one();
        let mut phi = Q::one();
        for c in &e.coeffs {
            let x = c * &plo;
            let y = c * &phi;
            if x <= y {
                a += x;
                b += y;
            } else {
                a += y;
                b += x;
            }
            plo = &plo * lo;
            phi = &phi * hi;
        }
        (a, b)
    }

    fn positive_anchor(&self) -> (Q, Q) {
        let mut iv = self.embedding_anchor.clone();
        while !iv.0.is_positive() {
            refine(&self.minpoly, &mut iv, 4);
        }
        iv
    }

    /// Exact sign of the embedding of `e`.
    pub fn sign_of(&self, e: &FieldElem) -> i32 {
        if e.is_zero() {
            return 0;
        }
        if let Some(r) = e.as_rational() {
            return sign_of_q(&r);
        }
        let mut iv = self.positive_anchor();
        let mut steps = 8;
        loop {
            let (a, b) = self.eval_interval(e, &iv);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            refine(&self.minpoly, &mut iv, steps);
            steps *= 2;
        }
    }

    pub fn cmp(&self, a: &FieldElem, b: &FieldElem) -> Ordering {
        match self.sign_of(&a.sub(b)) {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Decimal approximation rounded to `digits` places after the point.
    pub fn approximate(&self, e: &FieldElem, digits: usize) -> String {
        let scale = Q::from_integer(BigInt::from(10u32).pow(digits as u32));
        if let Some(r) = e.as_rational() {
            return format_scaled(&round_half_away(&(r * &scale)), digits);
        }
        let mut iv = self.positive_anchor();
        let mut steps = 16;
        loop {
            let (a, b) = self.eval_interval(e, &iv);
            let ra = round_half_away(&(a * &scale));
            let rb = round_half_away(&(b * &scale));
            if ra == rb {
                return format_scaled(&ra, digits);
            }
            refine(&self.minpoly, &mut iv, steps);
            steps *= 2;
        }
    }

    /// A value of the embedding within `2^-bits` of the truth, as a rational.
    pub fn rational_approx(&self, e: &FieldElem, bits: usize) -> Q {
        if let Some(r) = e.as_rational() {
            return r;
        }
        let tol = Q::new(BigInt::one(), BigInt::one() << bits);
        let mut iv = self.positive_anchor();
        loop {
            let (a, b) = self.eval_interval(e, &iv);
            if &b - &a < tol {
                return (a + b) / q(2);
            }
            refine(&self.minpoly, &mut iv, 16);
        }
    }
}

fn round_half_away(x: &Q) -> BigInt {
    let half = q_frac(1, 2);
    if x.is_negative() {
        -((-x) + half).floor().to_integer()
    } else {
        (x + half).floor().to_integer()
    }
}

fn format_scaled(n: &BigInt, digits: usize) -> String {
    let neg = n.is_negative();
    let abs = n.abs();
    let ten = BigInt::from(10u32).pow(digits as u32);
    let (ip, fp) = abs.div_rem(&ten);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&alloc::format!("{}", ip));
    if digits > 0 {
        let f = alloc::format!("{}", fp);
        s.push('.');
        for _ in f.len()..digits {
            s.push('0');
        }
        s.push_str(&f);
    }
    s
}

/// Least common multiple of the labels that need an irrational field (labels 1, 2, 3 are rational).
pub fn field_parameter_for_labels<I: IntoIterator<Item = u64>>(labels: I) -> u64 {
    let mut l = 2u64;
    for m in labels {
        if m > 3 {
            l = l.lcm(&m);
        }
    }
    l
}

/// `2cos(pi/label)` inside `f`; `None` when the field does not contain it.
pub fn two_cos_pi_over(f: &FieldDescriptor, label: u64) -> Option<FieldElem> {
    match label {
        1 => Some(FieldElem::from_int(-2)),
        2 => Some(FieldElem::zero()),
        3 => Some(FieldElem::from_int(1)),
        _ => f.two_cos_ratio(1, label as i64),
    }
}
