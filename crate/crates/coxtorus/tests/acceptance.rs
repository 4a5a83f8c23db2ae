//! One line per acceptance criterion. Exact checks; the time budgets are pinned below.

use std::sync::Arc;
use std::time::{Duration, Instant};

use coxtorus_core::complex::{barycentric_complex, barycentric_orbit_complex, cochain_algebra, omega_action, torus_complex, ChainComplex};
use coxtorus_core::coxeter::*;
use coxtorus_core::exactnum::{q, q_frac, two_cos_pi_over, FieldElem};
use coxtorus_core::extension::*;
use coxtorus_core::fungroup::*;
use coxtorus_core::homology::*;
use coxtorus_core::reptheory::*;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const BUDGET: [u64; 10] = [120, 5, 30, 120, 1800, 300, 600, 600, 5, 300];

fn setup(name: &str) -> (CoxeterSystem, Arc<GroupTable>, HatGroup) {
    let sys = coxeter_system(name.parse().unwrap()).unwrap();
    let t = Arc::new(sys.table().unwrap());
    let h = standard_hat_group(&sys).unwrap();
    (sys, t, h)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn hom(c: &ChainComplex, mode: Mode) -> Result<HomologyReport, String> {
    homology(c, &mode).map_err(|e| e.to_string())
}

fn c1_exterior_algebra() -> Check {
    for name in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
        let (_, t, h) = setup(name);
        let c = torus_complex(&h, &t).map_err(|e| e.to_string())?;
        let r = hom(&c, Mode::Integral)?;
        let n = h.n();
        let want: Vec<usize> = (0..=n).map(|k| binomial(n, k)).collect();
        ensure!(r.betti == want, "{}: betti {:?}", name, r.betti);
        ensure!(r.certification == Certification::FullSnf, "{}: not certified by a full Smith form", name);
        ensure!(r.torsion.iter().all(|x| x.is_empty()), "{}: torsion {:?}", name, r.torsion);
    }
    Ok("7 types, binomial Betti numbers, no torsion".into())
}

fn c2_a2_barycentric() -> Check {
    let (sys, t, _) = setup("A2");
    let om = omega_action(&sys).map_err(|e| e.to_string())?;
    let oc = barycentric_orbit_complex(&sys, &t, &om.elements).map_err(|e| e.to_string())?;
    let orbits: Vec<usize> = oc.cells.iter().map(|c| c.len()).collect();
    ensure!(orbits == vec![3, 4, 2], "orbit counts {:?}", orbits);
    let c = barycentric_complex(&sys, &t, &om.elements).map_err(|e| e.to_string())?;
    let r = hom(&c, Mode::Integral)?;
    ensure!(r.betti == vec![1, 2, 1], "betti {:?}", r.betti);
    Ok(format!("orbits {:?}, betti {:?}", orbits, r.betti))
}

fn surface_euler(m: u64) -> i64 {
    match m % 4 {
        0 => 2 - (m as i64) / 2,
        2 => 3 - (m as i64) / 2,
        _ => 3 - m as i64,
    }
}

fn c3_surfaces() -> Check {
    let mut genera = Vec::new();
    for m in [5u64, 7, 8, 9, 10, 12] {
        let (_, t, h) = setup(&format!("I2({})", m));
        let c = torus_complex(&h, &t).map_err(|e| e.to_string())?;
        let r = hom(&c, Mode::Integral)?;
        ensure!(r.euler == surface_euler(m), "m = {}: euler {}", m, r.euler);
        let g = (2 - r.euler) / 2;
        ensure!(r.betti[1] as i64 == 2 * g, "m = {}: b1 {} vs genus {}", m, r.betti[1], g);
        genera.push(g);
    }
    Ok(format!("genera {:?}", genera))
}

fn c4_h3() -> Check {
    let (_, t, h) = setup("H3");
    let c = torus_complex(&h, &t).map_err(|e| e.to_string())?;
    let r = hom(&c, Mode::Integral)?;
    ensure!(r.f_vector == vec![4, 124, 240, 120], "f-vector {:?}", r.f_vector);
    ensure!(r.euler == 0, "euler {}", r.euler);
    ensure!(r.betti == vec![1, 11, 11, 1], "betti {:?}", r.betti);
    ensure!(r.certification == Certification::FullSnf && r.torsion.iter().all(|x| x.is_empty()), "torsion or uncertified");
    Ok("Z, Z^11, Z^11, Z".into())
}

fn c5_h4() -> Check {
    let (_, t, h) = setup("H4");
    let c = torus_complex(&h, &t).map_err(|e| e.to_string())?;
    let r = hom(&c, Mode::Rational)?;
    ensure!(r.f_vector == vec![266, 7920, 29280, 36000, 14400], "f-vector {:?}", r.f_vector);
    ensure!(r.euler == 26, "euler {}", r.euler);
    ensure!(r.betti == vec![1, 24, 72, 24, 1], "betti {:?}", r.betti);
    let m = hom(&c, Mode::Modular(vec![2, 3, 5, 7, 11]))?;
    for (p, b) in &m.modular_betti {
        ensure!(*b == r.betti, "p = {}: {:?}", p, b);
    }
    ensure!(m.modular_betti.len() == 5, "only {} primes", m.modular_betti.len());
    Ok("betti (1,24,72,24,1) over Q and F_2..F_11".into())
}

fn mult_of(ct: &CharTable, labels: &[&str]) -> Vec<i64> {
    let mut v = vec![0; ct.len()];
    for l in labels {
        let (sign, l) = match l.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, *l),
        };
        v[ct.index(l).expect("label")] += sign;
    }
    v
}

fn alternating(ct: &CharTable, h: &HatGroup, sol: &[Vec<i64>]) -> ClassFunction {
    let mut alt = ClassFunction::zero(ct.classes.len());
    for (i, m) in sol.iter().enumerate() {
        let f = ct.compose(m);
        alt = if i % 2 == 0 { alt.add(&f) } else { alt.sub(&f) };
    }
    if h.n() % 2 == 0 {
        alt
    } else {
        alt.neg()
    }
}

fn c6_decompositions() -> Check {
    for m in [5u64, 7, 8, 10] {
        let (_, t, h) = setup(&format!("I2({})", m));
        let ct = dihedral_char_table(m, &t).map_err(|e| e.to_string())?;
        let js: Vec<u64> = if m % 2 == 1 { (1..=(m - 1) / 2).collect() } else { (1..m / 2).filter(|j| j % 2 == 1).collect() };
        let d = decompose_homology(&h, &t, &ct, &[1, 2 * js.len(), 1], &[]).map_err(|e| e.to_string())?;
        let sol = d.unique().ok_or(format!("I2({}) ambiguous", m))?;
        let names: Vec<String> = js.iter().map(|j| format!("chi_{}", j)).collect();
        let want = mult_of(&ct, &names.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        ensure!(sol[1] == want, "I2({}): H1 = {}", m, ct.describe(&sol[1]));
    }
    let (_, t, h) = setup("H3");
    let ct = load_char_table(Embedded::H3, &t).map_err(|e| e.to_string())?;
    let d = decompose_homology(&h, &t, &ct, &[1, 11, 11, 1], &[]).map_err(|e| e.to_string())?;
    let sol = d.unique().ok_or("H3 ambiguous")?;
    ensure!(sol[1] == mult_of(&ct, &["3'_s", "bar3'_s", "5_r"]), "H3: H1 = {}", ct.describe(&sol[1]));
    let chi_h = ct.compose(&mult_of(&ct, &["1_r'", "-1_r", "-3_s", "-bar3_s", "3'_s", "bar3'_s", "5_r", "-5'_r"]));
    ensure!(hopf_virtual_character(&h, &t, &ct.classes).map_err(|e| e.to_string())? == chi_h, "H3: Hopf character differs classwise");
    ensure!(alternating(&ct, &h, sol) == chi_h, "H3: alternating sum differs classwise");
    let h3 = ct.describe(&sol[1]);

    let (_, t, h) = setup("H4");
    let ct = load_char_table(Embedded::H4, &t).map_err(|e| e.to_string())?;
    let c = torus_complex(&h, &t).map_err(|e| e.to_string())?;
    let d = decompose_torus(&h, &c, &ct, &[1, 24, 72, 24, 1]).map_err(|e| e.to_string())?;
    let sol = d.unique().ok_or("H4 ambiguous")?;
    ensure!(sol[1] == mult_of(&ct, &["4_t", "bar4_t", "16'_r"]), "H4: H1 = {}", ct.describe(&sol[1]));
    Ok(format!("H3: {}; H4: {}", h3, ct.describe(&sol[1])))
}

fn c7_pi1() -> Check {
    let (_, t, h) = setup("H3");
    let p = pair_sides(&pi1_presentation(&h, &t).map_err(|e| e.to_string())?);
    ensure!(p.generators.len() == 30, "H3: {} generators", p.generators.len());
    let prof: Vec<(usize, usize)> = p.length_profile().into_iter().collect();
    ensure!(prof == vec![(3, 20), (5, 12)], "H3: relator lengths {:?}", prof);
    ensure!(abelianization(&p) == (11, vec![]), "H3: abelianization {:?}", abelianization(&p));
    ensure!(eliminate_generators(&p).generators.len() == 11, "H3: reduction");

    let (_, t, h) = setup("H4");
    let p = pair_sides(&pi1_presentation(&h, &t).map_err(|e| e.to_string())?);
    ensure!(p.generators.len() == 60, "H4: {} generators", p.generators.len());
    let prof: Vec<(usize, usize)> = p.length_profile().into_iter().collect();
    ensure!(prof == vec![(5, 144)], "H4: relator lengths {:?}", prof);
    ensure!(abelianization(&p) == (24, vec![]), "H4: abelianization {:?}", abelianization(&p));
    ensure!(eliminate_generators(&p).generators.len() == 24, "H4: reduction");

    for m in [5u64, 7, 8, 9, 10, 12] {
        let (_, t, h) = setup(&format!("I2({})", m));
        let p = pi1_presentation(&h, &t).map_err(|e| e.to_string())?;
        let c = torus_complex(&h, &t).map_err(|e| e.to_string())?;
        let b1 = hom(&c, Mode::Integral)?.betti[1];
        let g = (2 - surface_euler(m)) / 2;
        ensure!(abelianization(&p) == (2 * g as usize, vec![]), "I2({}): {:?}", m, abelianization(&p));
        ensure!(b1 == 2 * g as usize, "I2({}): b1 {}", m, b1);
    }
    Ok("H3 Z^11, H4 Z^24, I2(m) Z^2g".into())
}

fn same_diagram(m: &CoxeterMatrix, n: usize, edges: &[(usize, usize, u64)]) -> bool {
    m.canonical_form() == CoxeterMatrix::from_edges(n, edges).unwrap().canonical_form()
}

fn edges3(list: &[(usize, usize)]) -> Vec<(usize, usize, u64)> {
    list.iter().map(|&(a, b)| (a, b, 3)).collect()
}

fn c8_scan() -> Check {
    let table: Vec<(&str, Vec<(usize, usize, u64)>, bool)> = vec![
        ("A3", edges3(&[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]), false),
        ("C3", vec![(0, 1, 3), (0, 3, 4), (1, 2, 3), (2, 3, 4)], false),
        ("C4", vec![(0, 1, 3), (0, 3, 3), (1, 2, 3), (2, 3, 3), (3, 4, 4)], false),
        ("D4", edges3(&[(0, 1), (0, 3), (0, 4), (1, 2), (2, 3), (2, 4)]), false),
        ("F4", vec![(0, 1, 3), (0, 4, 4), (1, 2, 3), (2, 3, 4), (3, 4, 3)], false),
        ("G2", vec![(0, 1, 3), (0, 2, 6), (1, 2, 6)], true),
        ("E8", edges3(&[(0, 1), (0, 8), (1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)]), false),
    ];
    for (name, edges, compact) in table {
        let sys = coxeter_system(name.parse().unwrap()).unwrap();
        let scan = scan_reflection_extensions(&sys).map_err(|e| e.to_string())?;
        let hit = scan.iter().find(|e| same_diagram(&e.matrix, sys.rank() + 1, &edges)).ok_or(format!("{}: diagram missing", name))?;
        ensure!(hit.class.is_hyperbolic(), "{}: {}", name, hit.class.tag());
        ensure!((hit.class == DiagramClass::CompactHyperbolic) == compact, "{}: compact flag", name);
    }
    for (name, nref) in [("H3", 15usize), ("H4", 60)] {
        let sys = coxeter_system(name.parse().unwrap()).unwrap();
        let scan = scan_reflection_extensions(&sys).map_err(|e| e.to_string())?;
        ensure!(scan.iter().map(|e| e.count).sum::<usize>() == nref, "{}: reflection count", name);
        let compact: Vec<_> = scan.iter().filter(|e| e.class == DiagramClass::CompactHyperbolic).collect();
        ensure!(compact.len() == 1 && compact[0].count == 1, "{}: {} compact extensions", name, compact.len());
    }
    Ok("7 Weyl types, H3 and H4 unique compact".into())
}

fn c9_traces() -> Check {
    for g in 1..=3u64 {
        for (m, odd) in [(2 * g + 1, true), (4 * g, false)] {
            let h = standard_hat_group(&coxeter_system(CoxeterType::I2(m)).unwrap()).unwrap();
            let f = Arc::clone(&h.field);
            let x = two_cos_pi_over(&f, m).unwrap();
            let x2 = f.mul(&x, &x);
            // cot^2(pi/m) = x^2 / (4 - x^2), cos(pi/m) = x/2
            let cot2 = f.div(&x2, &FieldElem::from_int(4).sub(&x2)).unwrap();
            let want = if odd {
                let c = FieldElem::from_int(1).add(&x.scale(&q_frac(1, 2)));
                f.mul(&FieldElem::from_int(8), &f.mul(&c, &cot2)).sub(&FieldElem::from_int(1))
            } else {
                f.mul(&FieldElem::from_int(4), &cot2).sub(&FieldElem::from_int(1))
            };
            let got = h.q0_trace().map_err(|e| e.to_string())?;
            ensure!(got == want, "m = {}: trace {}", m, f.approximate(&got, 6));
        }
    }
    Ok("g = 1, 2, 3 for m = 2g+1 and 4g".into())
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn c10_properties() -> Check {
    let types = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "H3", "H4", "I2(5)", "I2(7)", "I2(8)", "I2(12)"];
    for name in types {
        let (_, t, h) = setup(name);
        let c = torus_complex(&h, &t).map_err(|e| e.to_string())?;
        for k in 2..=c.dim {
            let z = c.boundaries[k - 1].mul(&c.boundaries[k]).ok_or("overflow")?;
            ensure!(z.is_zero(), "{}: boundary squared nonzero in degree {}", name, k);
        }
        ensure!(c.check_equivariance(), "{}: boundaries not W-equivariant", name);
        let r = hom(&c, Mode::Rational)?;
        let mut rev = r.betti.clone();
        rev.reverse();
        ensure!(rev == r.betti, "{}: betti not palindromic {:?}", name, r.betti);
        ensure!(r.betti[0] == 1 && r.betti[c.dim] == 1, "{}: b0/bn", name);
        ensure!(poincare_series_check(&h) == q(r.euler), "{}: Poincare quotient", name);
    }
    for name in ["A1", "A2", "B2"] {
        let (_, t, h) = setup(name);
        let c = torus_complex(&h, &t).map_err(|e| e.to_string())?;
        let alg = cochain_algebra(&c).map_err(|e| e.to_string())?;
        let n = c.dim;
        for p in 0..n.saturating_sub(1) {
            ensure!(alg.d[p + 1].mul(&alg.d[p]).ok_or("overflow")?.is_zero(), "{}: d^2 in degree {}", name, p);
        }
        for p in 0..n {
            for q in 0..n - p {
                let sign = if p % 2 == 0 { 1 } else { -1 };
                for i in 0..alg.dim(p) {
                    for j in 0..alg.dim(q) {
                        let (a, b) = (unit(alg.dim(p), i), unit(alg.dim(q), j));
                        let lhs = alg.coboundary(p + q, &alg.cup(p, &a, q, &b));
                        let r1 = alg.cup(p + 1, &alg.coboundary(p, &a), q, &b);
                        let r2 = alg.cup(p, &a, q + 1, &alg.coboundary(q, &b));
                        let ok = lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (x, y))| *l == x + sign * y);
                        ensure!(ok, "{}: Leibniz fails at p={} q={}", name, p, q);
                    }
                }
            }
        }
    }
    let mut tables = Vec::new();
    for m in [5u64, 7, 8, 12] {
        let (_, t, _) = setup(&format!("I2({})", m));
        tables.push(dihedral_char_table(m, &t).map_err(|e| e.to_string())?);
    }
    for (name, which) in [("H3", Embedded::H3), ("H4", Embedded::H4)] {
        let (_, t, _) = setup(name);
        tables.push(load_char_table(which, &t).map_err(|e| e.to_string())?);
    }
    for ct in &tables {
        for i in 0..ct.len() {
            for j in 0..ct.len() {
                let ip = ct.inner(&ct.chars[i], &ct.chars[j]).map_err(|e| e.to_string())?;
                ensure!(ip == q((i == j) as i64), "{}: <{}, {}> = {}", ct.name, ct.labels[i], ct.labels[j], ip);
            }
        }
    }
    Ok(format!("{} complexes, 3 cochain algebras, {} character tables", types.len(), tables.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("exterior algebra (crystallographic)", c1_exterior_algebra),
        ("A2 barycentric complex with full Omega", c2_a2_barycentric),
        ("dihedral surfaces", c3_surfaces),
        ("H3 integral homology", c4_h3),
        ("H4 Betti numbers", c5_h4),
        ("homology representations", c6_decompositions),
        ("fundamental group presentations", c7_pi1),
        ("hyperbolic extension scan", c8_scan),
        ("q0 trace formulas", c9_traces),
        ("property suites", c10_properties),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let dt = start.elapsed();
        let budget = Duration::from_secs(BUDGET[k]);
        let (ok, detail) = match res {
            Ok(d) if dt <= budget => (true, d),
            Ok(d) => (false, format!("{} but over budget", d)),
            Err(e) => (false, e),
        };
        println!("[{}] {:>2}. {}: {} ({:.1}s / {}s)", if ok { "PASS" } else { "FAIL" }, k + 1, name, detail, dt.as_secs_f64(), BUDGET[k]);
        if !ok {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
