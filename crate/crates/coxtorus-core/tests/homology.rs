use std::sync::Arc;

use coxtorus_core::complex::torus_complex;
use coxtorus_core::coxeter::*;
use coxtorus_core::exactnum::{q, q_frac};
use coxtorus_core::extension::*;
use coxtorus_core::homology::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn snf_examples() {
    let id = SparseIntMatrix::from_dense(&[vec![1, 0], vec![0, 1]]);
    assert_eq!(smith_normal_form(&id), big(&[1, 1]));
    let m = SparseIntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
    assert_eq!(smith_normal_form(&m), big(&[2, 4]));
    let z = SparseIntMatrix::zero(3, 2);
    assert!(smith_normal_form(&z).is_empty());
    let tor = SparseIntMatrix::from_dense(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 0]]);
    assert_eq!(smith_normal_form(&tor), big(&[1, 6]));
}

fn det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            a[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = &a[0][j] * det(&minor);
        if j % 2 == 0 {
            total += t;
        } else {
            total -= t;
        }
    }
    total
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combos(n - 1, k);
    for mut c in combos(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Invariant factors from determinantal divisors: d_1...d_k = gcd of the k x k minors.
fn snf_by_minors(a: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a[0].len();
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in combos(rows, k) {
            for cs in combos(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| BigInt::from(a[r][c])).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn rank_mod_naive(a: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = (1..p).find(|x| x * m[rank][c] % p == 1).unwrap();
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % p;
                for k in 0..cols {
                    m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
}

proptest! {
    #[test]
    fn snf_agrees_with_determinantal_divisors(a in small_matrix()) {
        let m = SparseIntMatrix::from_dense(&a);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(&snf, &snf_by_minors(&a));
        for w in snf.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(snf.iter().all(|d| d.is_positive()));
        prop_assert_eq!(rank_rational(&m), snf.len());
        prop_assert_eq!(smith_normal_form(&m.transpose()), snf);
    }

    #[test]
    fn modular_rank_matches_naive(a in small_matrix(), pi in 0usize..5) {
        let p = [2u64, 3, 5, 7, 11][pi];
        let m = SparseIntMatrix::from_dense(&a);
        prop_assert_eq!(rank_mod_p(&m, p), rank_mod_naive(&a, p as i64));
    }

    #[test]
    fn sparse_round_trip(a in small_matrix()) {
        let m = SparseIntMatrix::from_dense(&a);
        prop_assert_eq!(m.to_dense(), a.clone());
        let t = SparseIntMatrix::from_triplets(m.rows, m.cols, &m.triplets());
        prop_assert_eq!(t, m);
    }
}

#[test]
fn dense_snf_handles_large_entries() {
    // Hermite-unfriendly matrix with a big gcd structure
    let a = vec![vec![12, 18, 30], vec![8, 20, 28], vec![4, 6, 10]];
    assert_eq!(smith_normal_form(&SparseIntMatrix::from_dense(&a)), snf_by_minors(&a));
}

fn torus(name: &str) -> (HatGroup, coxtorus_core::complex::ChainComplex) {
    let sys = coxeter_system(name.parse().unwrap()).unwrap();
    let table = Arc::new(sys.table().unwrap());
    let h = standard_hat_group(&sys).unwrap();
    let c = torus_complex(&h, &table).unwrap();
    (h, c)
}

#[test]
fn torus_homology_small_types() {
    let (_, c) = torus("A2");
    let r = homology(&c, &Mode::Integral).unwrap();
    assert_eq!(r.betti, vec![1, 2, 1]);
    assert_eq!(r.certification, Certification::FullSnf);
    assert!(r.torsion_free_evidence());
    let (_, c) = torus("H3");
    let r = homology(&c, &Mode::Integral).unwrap();
    assert_eq!(r.betti, vec![1, 11, 11, 1]);
    assert!(r.torsion.iter().all(|t| t.is_empty()));
    let m = homology(&c, &Mode::Modular(vec![2, 3, 5])).unwrap();
    assert!(m.modular_betti.iter().all(|(_, b)| *b == m.betti));
}

#[test]
fn surfaces_have_the_case_formula_euler_characteristic() {
    for m in [5u64, 7, 8, 9, 10, 12] {
        let (h, c) = torus(&format!("I2({})", m));
        let r = homology(&c, &Mode::Integral).unwrap();
        let chi = match m % 4 {
            0 => 2 - (m as i64) / 2,
            2 => 3 - (m as i64) / 2,
            _ => 3 - m as i64,
        };
        assert_eq!(r.euler, chi, "m = {}", m);
        assert_eq!(r.betti[1] as i64, 2 - chi);
        assert_eq!(poincare_series_check(&h), q(chi));
        let g = geometric_report(&h, r.euler).unwrap();
        assert_eq!(g.coefficient, q(-2 * chi));
    }
}

#[test]
fn modular_fallback_above_threshold() {
    let (_, c) = torus("B2");
    let opts = HomologyOptions { snf_threshold: 0, fallback_primes: vec![2, 3] };
    let r = homology_with(&c, &Mode::Integral, &opts).unwrap();
    assert_eq!(r.certification, Certification::ModularOnly(vec![2, 3]));
    assert_eq!(r.betti, vec![1, 2, 1]);
}

#[test]
fn broken_complex_is_rejected() {
    let (_, mut c) = torus("A2");
    c.boundaries[2].columns[0][0].1 *= 2;
    assert!(matches!(homology(&c, &Mode::Rational), Err(coxtorus_core::Error::NotAComplex(_))));
}

#[test]
fn poincare_quotient_equals_euler_characteristic() {
    for t in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "H3", "I2(5)", "I2(7)"] {
        let (h, c) = torus(t);
        let (chi, _) = euler_and_fvector(&c);
        assert_eq!(poincare_series_check(&h), q(chi), "{}", t);
    }
    // H4 without building the complex
    let sys = coxeter_system("H4".parse().unwrap()).unwrap();
    let h = standard_hat_group(&sys).unwrap();
    assert_eq!(poincare_series_check(&h), q(26));
    let g = geometric_report(&h, 26).unwrap();
    assert_eq!(g.coefficient, q_frac(104, 3));
    assert_eq!(g.pi_power, 2);
}

#[test]
fn hat_poincare_inverse_at_one_matches_the_sum() {
    let sys = coxeter_system("I2(5)".parse().unwrap()).unwrap();
    let h = standard_hat_group(&sys).unwrap();
    let v = hat_poincare_inverse(&h, &q(1));
    assert_eq!(v * q(10), poincare_series_check(&h));
}
