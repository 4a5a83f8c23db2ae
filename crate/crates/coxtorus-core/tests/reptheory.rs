use std::collections::BTreeMap;
use std::sync::Arc;

use coxtorus_core::complex::torus_complex;
use coxtorus_core::coxeter::*;
use coxtorus_core::exactnum::{FieldElem, Q};
use coxtorus_core::extension::*;
use coxtorus_core::reptheory::*;
use coxtorus_core::Error;
use num_bigint::BigInt;

fn setup(name: &str) -> (CoxeterSystem, Arc<GroupTable>, HatGroup) {
    let sys = coxeter_system(name.parse().unwrap()).unwrap();
    let t = Arc::new(sys.table().unwrap());
    let h = standard_hat_group(&sys).unwrap();
    (sys, t, h)
}

fn mult_of(ct: &CharTable, labels: &[&str]) -> Vec<i64> {
    let mut v = vec![0; ct.len()];
    for l in labels {
        let (sign, l) = match l.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, *l),
        };
        v[ct.index(l).unwrap_or_else(|| panic!("no character {}", l))] += sign;
    }
    v
}

/// Dihedral group as pairs (reflection?, i) with rotation a = st acting by i -> i + 1 mod m.
fn dihedral_class_sizes(m: i64) -> Vec<usize> {
    let mul = |x: (bool, i64), y: (bool, i64)| -> (bool, i64) {
        // elements a^i and s a^i, with s a s = a^-1
        match (x.0, y.0) {
            (false, false) => (false, (x.1 + y.1).rem_euclid(m)),
            (false, true) => (true, (y.1 - x.1).rem_euclid(m)),
            (true, false) => (true, (x.1 + y.1).rem_euclid(m)),
            (true, true) => (false, (y.1 - x.1).rem_euclid(m)),
        }
    };
    let all: Vec<(bool, i64)> = (0..m).flat_map(|i| [(false, i), (true, i)]).collect();
    let inv = |x: (bool, i64)| *all.iter().find(|&&y| mul(x, y) == (false, 0)).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    let mut sizes = Vec::new();
    for &x in &all {
        if seen.contains(&x) {
            continue;
        }
        let class: std::collections::BTreeSet<_> = all.iter().map(|&g| mul(mul(inv(g), x), g)).collect();
        sizes.push(class.len());
        seen.extend(class);
    }
    sizes.sort_unstable();
    sizes
}

#[test]
fn dihedral_classes_match_brute_force() {
    for m in 3..=12u64 {
        let (_, t, _) = setup(&format!("I2({})", m));
        let cl = Classes::new(&t);
        let mut sizes = cl.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, dihedral_class_sizes(m as i64), "m = {}", m);
        if m % 4 == 0 {
            // the non-identity central class is the rotation a^{m/2}, a word of length m
            let c = (1..cl.len()).find(|&c| cl.sizes[c] == 1).unwrap();
            assert_eq!(t.length(cl.reps[c]), m as usize);
        }
    }
}

#[test]
fn dihedral_tables() {
    for m in 3..=12u64 {
        let (sys, t, _) = setup(&format!("I2({})", m));
        let ct = dihedral_char_table(m, &t).unwrap();
        let mut degs: Vec<i64> = (0..ct.len()).map(|i| ct.degree(i)).collect();
        degs.sort_unstable();
        let ones = if m % 2 == 0 { 4 } else { 2 };
        let mut want = vec![1; ones];
        want.extend(vec![2; ((m - 1) / 2) as usize]);
        assert_eq!(degs, want);
        // chi_j vanishes on reflections
        for j in 1..=(m - 1) / 2 {
            let chi = ct.character(&format!("chi_{}", j)).unwrap();
            for (c, &r) in ct.classes.reps.iter().enumerate() {
                if t.length(r) % 2 == 1 {
                    assert!(chi.values[c].is_zero());
                }
            }
        }
        // the geometric representation is chi_1
        let geo = geometric_character(&sys, &t, &ct.classes, &ct.field).unwrap();
        assert_eq!(&geo, ct.character("chi_1").unwrap(), "m = {}", m);
    }
    let (_, t, _) = setup("I2(5)");
    let ct = dihedral_char_table(5, &t).unwrap();
    assert_eq!(ct.labels, ["1", "eps", "chi_1", "chi_2"]);
}

#[test]
fn permutation_characters() {
    let (_, t, _) = setup("I2(8)");
    let ct = dihedral_char_table(8, &t).unwrap();
    let whole = t.closure(&[t.index_of_word(&[1]), t.index_of_word(&[2])]);
    assert_eq!(permutation_character(&ct.classes, &whole), ct.chars[ct.trivial_index()]);
    // 1 induced from <s> = 1 + eps_s + sum_j chi_j
    let ind = permutation_character(&ct.classes, &t.parabolic(&[0]));
    assert_eq!(ct.multiplicities(&ind).unwrap(), mult_of(&ct, &["1", "eps_s", "chi_1", "chi_2", "chi_3"]));
    // m = 4g: 1 induced from <t, r> = 1 + eps_t + sum_{j even} chi_j
    for m in [4u64, 8, 12] {
        let (_, t, h) = setup(&format!("I2({})", m));
        let ct = dihedral_char_table(m, &t).unwrap();
        let sub = t.closure(&[t.index_of_word(&[2]), t.index_of(&h.r)]);
        assert_eq!(sub.order(), 4);
        let ind = permutation_character(&ct.classes, &sub);
        let mut want = vec!["1", "eps_t"];
        let names: Vec<String> = (1..=(m - 1) / 2).filter(|j| j % 2 == 0).map(|j| format!("chi_{}", j)).collect();
        want.extend(names.iter().map(|s| s.as_str()));
        assert_eq!(ct.multiplicities(&ind).unwrap(), mult_of(&ct, &want), "m = {}", m);
    }
}

/// `<Ind 1, chi> = (1/|H|) sum_{h in H} chi(h)` for every parabolic image of the extension.
fn check_frobenius(ct: &CharTable, t: &GroupTable, h: &HatGroup) {
    let r = h.rank();
    for mask in 0u32..(1 << r) - 1 {
        let subset: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
        let sub = h.parabolic_image(t, &subset).unwrap();
        let ind = permutation_character(&ct.classes, &sub);
        let ints = ind.as_integers().unwrap();
        assert!(ints.iter().all(|&v| v >= 0));
        assert_eq!(ints[0] as usize, t.order() / sub.order());
        assert_eq!(ct.inner(&ind, &ct.chars[ct.trivial_index()]).unwrap(), Q::from_integer(BigInt::from(1)));
        for chi in &ct.chars {
            let mut acc = FieldElem::zero();
            for &x in &sub.elements {
                acc = acc.add(&chi.values[ct.classes.class_of[x] as usize]);
            }
            let restricted = acc.scale(&Q::new(BigInt::from(1), BigInt::from(sub.order())));
            assert_eq!(FieldElem::from_q(ct.inner(&ind, chi).unwrap()), restricted);
        }
    }
}

#[test]
fn frobenius_reciprocity() {
    let (_, t, h) = setup("I2(7)");
    check_frobenius(&dihedral_char_table(7, &t).unwrap(), &t, &h);
    let (_, t, h) = setup("I2(10)");
    check_frobenius(&dihedral_char_table(10, &t).unwrap(), &t, &h);
    let (_, t, h) = setup("H3");
    check_frobenius(&load_char_table(Embedded::H3, &t).unwrap(), &t, &h);
}

#[test]
fn embedded_tables_load_and_validate() {
    for (name, which, n, want) in [
        ("H3", Embedded::H3, 10usize, vec![1i64, 1, 3, 3, 3, 3, 4, 4, 5, 5]),
        ("H4", Embedded::H4, 34, vec![]),
    ] {
        let (sys, t, _) = setup(name);
        let ct = load_char_table(which, &t).unwrap();
        assert_eq!(ct.len(), n);
        let mut degs: Vec<i64> = (0..n).map(|i| ct.degree(i)).collect();
        degs.sort_unstable();
        if !want.is_empty() {
            assert_eq!(degs, want);
        }
        assert_eq!(degs.iter().map(|d| d * d).sum::<i64>(), t.order() as i64);
        // sign character is (-1)^l on every representative
        let eps = &ct.chars[ct.sign_index(&t)];
        for (c, &r) in ct.classes.reps.iter().enumerate() {
            assert_eq!(eps.values[c], FieldElem::from_int(if t.length(r) % 2 == 0 { 1 } else { -1 }));
        }
        // the reflection representation, from matrices
        let geo = geometric_character(&sys, &t, &ct.classes, &ct.field).unwrap();
        let label = if name == "H3" { "3'_s" } else { "4_t" };
        assert_eq!(&geo, ct.character(label).unwrap());
    }
}

#[test]
fn h4_degrees() {
    let (_, t, _) = setup("H4");
    let ct = load_char_table(Embedded::H4, &t).unwrap();
    let mut hist: BTreeMap<i64, usize> = BTreeMap::new();
    for i in 0..ct.len() {
        *hist.entry(ct.degree(i)).or_default() += 1;
    }
    let want: BTreeMap<i64, usize> =
        [(1, 2), (4, 4), (6, 2), (8, 2), (9, 4), (10, 1), (16, 6), (18, 1), (24, 4), (25, 2), (30, 2), (36, 2), (40, 1), (48, 1)]
            .into_iter()
            .collect();
    assert_eq!(hist, want);
}

#[test]
fn corrupt_tables_are_rejected() {
    let (_, t, _) = setup("H3");
    let text = include_str!("../data/h3.txt");
    // perturb one value of the last character
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let last = lines.last_mut().unwrap();
    let pos = last.rfind("(").unwrap();
    last.replace_range(pos.., "(7,0)");
    let bad = lines.join("\n");
    assert!(matches!(parse_char_table("H3", &bad, &t), Err(Error::CorruptTable(_))));
    // drop a character
    let short: Vec<&str> = text.lines().take(text.lines().count() - 1).collect();
    assert!(matches!(parse_char_table("H3", &short.join("\n"), &t), Err(Error::CorruptTable(_))));
    assert!(parse_char_table("H3", text, &t).is_ok());
}

#[test]
fn hopf_character_h3() {
    let (_, t, h) = setup("H3");
    let ct = load_char_table(Embedded::H3, &t).unwrap();
    let chi = hopf_virtual_character(&h, &t, &ct.classes).unwrap();
    let want = ct.compose(&mult_of(&ct, &["1_r'", "-1_r", "-3_s", "-bar3_s", "3'_s", "bar3'_s", "5_r", "-5'_r"]));
    assert_eq!(chi, want);
}

#[test]
fn hopf_character_degrees() {
    // the degree is the Euler characteristic of T(W)
    for (name, chi) in [("A2", 0i64), ("B2", 0), ("G2", 0), ("H3", 0), ("H4", 26), ("I2(5)", -2), ("I2(8)", -2), ("I2(12)", -4)] {
        let (_, t, h) = setup(name);
        let cl = Classes::new(&t);
        let v = hopf_virtual_character(&h, &t, &cl).unwrap();
        let sign = if h.n() % 2 == 0 { 1 } else { -1 };
        assert_eq!(v.degree(), FieldElem::from_int(sign * chi), "{}", name);
    }
}

fn check_solution(ct: &CharTable, t: &GroupTable, h: &HatGroup, sol: &[Vec<i64>]) {
    // Hopf identity classwise
    let mut alt = coxtorus_core::reptheory::ClassFunction::zero(ct.classes.len());
    for (i, m) in sol.iter().enumerate() {
        let f = ct.compose(m);
        alt = if i % 2 == 0 { alt.add(&f) } else { alt.sub(&f) };
    }
    let hopf = hopf_virtual_character(h, t, &ct.classes).unwrap();
    assert_eq!(if h.n() % 2 == 0 { alt } else { alt.neg() }, hopf);
}

#[test]
fn dihedral_homology_representation() {
    for m in [5u64, 7, 8, 9, 10, 12] {
        let (sys, t, h) = setup(&format!("I2({})", m));
        let ct = dihedral_char_table(m, &t).unwrap();
        let js: Vec<u64> = if m % 2 == 1 { (1..=(m - 1) / 2).collect() } else { (1..m / 2).filter(|j| j % 2 == 1).collect() };
        let b1 = 2 * js.len();
        let d = decompose_homology(&h, &t, &ct, &[1, b1, 1], &[]).unwrap();
        assert!(!d.ambiguous);
        let sol = d.unique().unwrap();
        let names: Vec<String> = js.iter().map(|j| format!("chi_{}", j)).collect();
        let want = mult_of(&ct, &names.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        assert_eq!(sol[1], want, "m = {}", m);
        check_solution(&ct, &t, &h, sol);
        let geo = geometric_character(&sys, &t, &ct.classes, &ct.field).unwrap();
        assert!(multiplicity(&ct, &ct.compose(&sol[1]), &geo).unwrap() >= 1);
    }
}

#[test]
fn h3_homology_representation() {
    let (sys, t, h) = setup("H3");
    let ct = load_char_table(Embedded::H3, &t).unwrap();
    let d = decompose_homology(&h, &t, &ct, &[1, 11, 11, 1], &[]).unwrap();
    assert!(!d.ambiguous);
    let sol = d.unique().unwrap();
    assert_eq!(sol[1], mult_of(&ct, &["3'_s", "bar3'_s", "5_r"]));
    assert_eq!(sol[2], mult_of(&ct, &["3_s", "bar3_s", "5'_r"]));
    assert_eq!(ct.describe(&sol[1]), "3'_s + bar3'_s + 5_r");
    check_solution(&ct, &t, &h, sol);
    let geo = geometric_character(&sys, &t, &ct.classes, &ct.field).unwrap();
    assert_eq!(multiplicity(&ct, &ct.compose(&sol[1]), &geo).unwrap(), 1);
}

#[test]
fn h4_homology_representation() {
    let (_, t, h) = setup("H4");
    let ct = load_char_table(Embedded::H4, &t).unwrap();
    let betti = [1, 24, 72, 24, 1];
    // the multiplicity bounds leave the rational 16-dimensional pair undecided
    let d = decompose_homology(&h, &t, &ct, &betti, &[]).unwrap();
    assert!(d.ambiguous);
    assert_eq!(d.solutions.len(), 2);
    let c = torus_complex(&h, &t).unwrap();
    let d = decompose_torus(&h, &c, &ct, &betti).unwrap();
    assert!(!d.ambiguous);
    let sol = d.unique().unwrap();
    assert_eq!(sol[1], mult_of(&ct, &["4_t", "bar4_t", "16'_r"]));
    assert_eq!(sol[2], mult_of(&ct, &["6_s", "bar6_s", "30_s", "bar30_s"]));
    assert_eq!(sol[3], mult_of(&ct, &["4'_t", "bar4'_t", "16_r"]));
    check_solution(&ct, &t, &h, sol);
    let hopf = hopf_virtual_character(&h, &t, &ct.classes).unwrap();
    assert_eq!(
        ct.multiplicities(&hopf).unwrap(),
        mult_of(&ct, &["1_r", "1_r'", "-4_t", "-bar4_t", "-4'_t", "-bar4'_t", "6_s", "bar6_s", "-16_r", "-16'_r", "30_s", "bar30_s"])
    );
}
