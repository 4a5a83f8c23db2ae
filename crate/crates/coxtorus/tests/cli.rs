use std::process::Command;

use coxtorus::commands::{run, Context};
use coxtorus::json::ComplexFile;
use coxtorus::spec::{Job, JobSpec, Lattice};
use coxtorus::svg;
use coxtorus_core::coxeter::CoxeterType;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coxtorus"))
}

fn job(t: CoxeterType, job: Job) -> String {
    let spec = JobSpec { system: t, job };
    spec.validate().unwrap();
    run(&spec).unwrap().main
}

fn strings(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().parse().unwrap()).collect()
}

#[test]
fn h3_complex_json() {
    let text = job(CoxeterType::H3, Job::Complex { lattice: Lattice::SimplyConnected });
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(strings(&v["f_vector"]), vec![4, 124, 240, 120]);
    assert_eq!(v["type"], "H3");
    assert_eq!(v["rank"], "3");
    // every integer is a string
    assert!(v["boundaries"][0]["triplets"][0][2].is_string());
    let f = ComplexFile::from_json(&text).unwrap();
    assert_eq!(f.to_json(), text);
    let d = f.boundary_matrices().unwrap();
    for k in 2..d.len() {
        assert!(d[k - 1].mul(&d[k]).unwrap().is_zero());
    }
    let sizes: u64 = f.degrees[1].coset_sizes.iter().map(|x| x.parse::<u64>().unwrap()).sum();
    assert_eq!(sizes, 124);
}

#[test]
fn dihedral_complex_uses_m() {
    let text = job(CoxeterType::I2(7), Job::Complex { lattice: Lattice::SimplyConnected });
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["m"], "7");
    assert!(v.get("rank").is_none());
    assert_eq!(v["euler"], "-4");
}

#[test]
fn adjoint_a2_homology() {
    let text = job(
        CoxeterType::A(2),
        Job::Homology { lattice: Lattice::Full, mode: coxtorus::spec::HomologyMode::Integral, primes: vec![], snf_threshold: None },
    );
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(strings(&v["betti"]), vec![1, 2, 1]);
    assert_eq!(v["certification"], "full_snf");
}

#[test]
fn outputs_are_deterministic() {
    for (t, j) in [
        (CoxeterType::B(3), Job::Complex { lattice: Lattice::SimplyConnected }),
        (CoxeterType::I2(5), Job::Tessellate { depth: 5, dessin: None }),
        (CoxeterType::H3, Job::Pi1 { reduce: true, verify: false, format: coxtorus::spec::Pi1Format::Json }),
        (CoxeterType::A(3), Job::Scan),
    ] {
        let a = job(t, j.clone());
        let b = job(t, j);
        assert_eq!(a, b, "{}", t);
    }
}

#[test]
fn pi1_text_format() {
    let text = job(CoxeterType::H3, Job::Pi1 { reduce: false, verify: true, format: coxtorus::spec::Pi1Format::Text });
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap().split(' ').count(), 30);
    assert_eq!(lines.count(), 32);
    let json = job(CoxeterType::H4, Job::Pi1 { reduce: true, verify: false, format: coxtorus::spec::Pi1Format::Json });
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["generators"].as_array().unwrap().len(), 24);
    assert_eq!(v["abelianization"]["free_rank"], "24");
    // 60 side pairings, then 36 Tietze moves
    assert_eq!(v["substitutions"].as_array().unwrap().len(), 96);
}

#[test]
fn tessellation_q_orbit() {
    let cx = Context::new(CoxeterType::I2(5)).unwrap();
    let tiles = svg::tiles(&cx.hat, &cx.table, 6).unwrap();
    assert!(tiles[0].word.is_empty() && tiles[0].in_q);
    // Q sits in the rotation subgroup and acts freely, so its tiles are even and distinct
    let q: Vec<_> = tiles.iter().filter(|t| t.in_q).collect();
    assert!(q.iter().all(|t| t.word.len() % 2 == 0));
    let mut words: Vec<&Vec<u8>> = tiles.iter().map(|t| &t.word).collect();
    words.sort();
    words.dedup();
    assert_eq!(words.len(), tiles.len());
    // corners lie on the upper sheet of the hyperboloid
    assert!(tiles.iter().flat_map(|t| t.corners.iter()).all(|c| c.iter().any(|x| x.is_finite())));
    let svg = job(CoxeterType::I2(5), Job::Tessellate { depth: 6, dessin: None });
    assert_eq!(svg.matches("<path").count(), tiles.len());
    assert!(svg.contains("#2e9e44"));
    // each vertex of the base triangle is shared by 2m = 10 tiles once the depth is large enough
    let base = tiles[0].corners[0];
    let around = tiles.iter().filter(|t| t.corners.iter().any(|c| (0..3).all(|i| (c[i] - base[i]).abs() < 1e-9))).count();
    assert_eq!(around, 10);
}

#[test]
fn dessin_is_the_one_skeleton() {
    let cx = Context::new(CoxeterType::I2(5)).unwrap();
    let v = coxtorus::commands::dessin_json(&cx).unwrap();
    let nv = v["vertices"].as_array().unwrap().len();
    let ne = v["edges"].as_array().unwrap().len();
    // one face per element of W: chi = V - E + 10 = -2
    assert_eq!(nv as i64 - ne as i64 + 10, -2);
    assert!(v["edges"].as_array().unwrap().iter().all(|e| e["ends"].as_array().unwrap().len() == 2));
}

#[test]
fn report_elliptic_constants() {
    let b2: Value = serde_json::from_str(&job(CoxeterType::B(2), Job::Report)).unwrap();
    assert_eq!(b2["elliptic"]["j"], "1728");
    assert_eq!(b2["elliptic"]["tau"], "i");
    let a2: Value = serde_json::from_str(&job(CoxeterType::A(2), Job::Report)).unwrap();
    assert_eq!(a2["elliptic"]["j"], "0");
    let h3: Value = serde_json::from_str(&job(CoxeterType::H3, Job::Report)).unwrap();
    assert_eq!(h3["centralizer_order"], "2");
    assert_eq!(strings(&h3["homology"]["betti"]), vec![1, 11, 11, 1]);
    assert!(h3["elliptic"].is_null());
}

#[test]
fn scan_and_lattice() {
    let v: Value = serde_json::from_str(&job(CoxeterType::H3, Job::Scan)).unwrap();
    let compact = v["diagrams"].as_array().unwrap().iter().filter(|d| d["compact"] == true).count();
    assert_eq!(compact, 1);
    let l: Value = serde_json::from_str(&job(CoxeterType::A(3), Job::Lattice)).unwrap();
    assert_eq!(l["omega_order"], "4");
    // Z/4 has three subgroups
    assert_eq!(l["lattices"].as_array().unwrap().len(), 3);
}

#[test]
fn decompose_dihedral() {
    let v: Value = serde_json::from_str(&job(CoxeterType::I2(7), Job::Decompose)).unwrap();
    assert_eq!(v["ambiguous"], false);
    assert_eq!(v["solutions"][0]["degrees"][1]["description"], "chi_1 + chi_2 + chi_3");
}

#[test]
fn binary_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h3.json");
    let st = bin().args(["complex", "--type", "H3", "--out"]).arg(&out).status().unwrap();
    assert!(st.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(strings(&v["f_vector"]), vec![4, 124, 240, 120]);

    let svg = dir.path().join("t.svg");
    let dessin = dir.path().join("d.json");
    let st = bin()
        .args(["tessellate", "--type", "I2", "--m", "5", "--depth", "6", "--out"])
        .arg(&svg)
        .arg("--dessin")
        .arg(&dessin)
        .status()
        .unwrap();
    assert!(st.success());
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    assert!(dessin.exists());
}

#[test]
fn unsupported_combinations_fail_with_one_line() {
    for args in [
        vec!["tessellate", "--type", "A2"],
        vec!["decompose", "--type", "B3"],
        vec!["homology", "--type", "H3", "--lattice", "full"],
        vec!["homology", "--type", "A2", "--mode", "modular"],
        vec!["complex", "--type", "I2"],
        vec!["complex", "--type", "X9"],
        vec!["lattice", "--type", "H4"],
        vec!["pi1", "--type", "B2", "--verify"],
    ] {
        let o = bin().args(&args).output().unwrap();
        assert_eq!(o.status.code(), Some(2), "{:?}", args);
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{:?}: {}", args, err);
        assert!(err.starts_with("error: "));
    }
}
