use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{bail, Result};
use coxtorus_core::complex::{barycentric_complex, cochain_algebra, omega_action, omega_closure, torus_complex, ChainComplex};
use coxtorus_core::coxeter::{coxeter_system, CoxeterSystem, CoxeterType, GroupTable, INFINITY};
use coxtorus_core::extension::{scan_reflection_extensions, standard_hat_group, DiagramClass, HatGroup};
use coxtorus_core::fungroup::{abelianization, centralizer_of_q0, eliminate_generators, pair_sides, pi1_presentation, verify_relators, Presentation};
use coxtorus_core::homology::{geometric_report, homology_with, poincare_series_check, Certification, HomologyOptions, HomologyReport, Mode};
use coxtorus_core::reptheory::{decompose_torus, dihedral_char_table, load_char_table, CharTable, Embedded};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::json::{s, strs, ComplexFile};
use crate::spec::{HomologyMode, Job, JobSpec, Lattice, Pi1Format};
use crate::svg;

/// What a job produced: the main document and any side files.
#[derive(Debug, Default)]
pub struct Artifacts {
    pub main: String,
    pub side: Vec<(std::path::PathBuf, String)>,
    /// Diagnostics for stderr.
    pub notes: Vec<String>,
}

pub struct Context {
    pub ty: CoxeterType,
    pub sys: CoxeterSystem,
    pub table: Arc<GroupTable>,
    pub hat: HatGroup,
}

impl Context {
    pub fn new(ty: CoxeterType) -> Result<Self> {
        let sys = coxeter_system(ty)?;
        let table = Arc::new(sys.table()?);
        let hat = standard_hat_group(&sys)?;
        Ok(Context { ty, sys, table, hat })
    }

    pub fn complex(&self, lattice: &Lattice) -> Result<ChainComplex> {
        Ok(match lattice {
            Lattice::SimplyConnected => torus_complex(&self.hat, &self.table)?,
            Lattice::Barycentric => barycentric_complex(&self.sys, &self.table, &omega_closure(&self.sys, &[]))?,
            Lattice::Full => barycentric_complex(&self.sys, &self.table, &omega_action(&self.sys)?.elements)?,
            Lattice::Nodes(v) => barycentric_complex(&self.sys, &self.table, &omega_action(&self.sys)?.subgroup(&self.sys, v)?)?,
        })
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("serializable");
    out.push('\n');
    out
}

pub fn run(spec: &JobSpec) -> Result<Artifacts> {
    let cx = Context::new(spec.system)?;
    match &spec.job {
        Job::Complex { lattice } => {
            let c = cx.complex(lattice)?;
            Ok(Artifacts { main: ComplexFile::new(cx.ty, &lattice.tag(), &c).to_json(), ..Default::default() })
        }
        Job::Homology { lattice, mode, primes, snf_threshold } => {
            let c = cx.complex(lattice)?;
            let mut opts = HomologyOptions::default();
            if let Some(t) = snf_threshold {
                opts.snf_threshold = *t;
            }
            if !primes.is_empty() {
                opts.fallback_primes = primes.clone();
            }
            let m = match mode {
                HomologyMode::Integral => Mode::Integral,
                HomologyMode::Rational => Mode::Rational,
                HomologyMode::Modular => Mode::Modular(primes.clone()),
            };
            let r = homology_with(&c, &m, &opts)?;
            Ok(Artifacts { main: pretty(&homology_json(&cx, &lattice.tag(), &r)), ..Default::default() })
        }
        Job::Cupring { max_pairs } => cupring(&cx, *max_pairs),
        Job::Pi1 { reduce, verify, format } => pi1(&cx, *reduce, *verify, *format),
        Job::Decompose => decompose(&cx),
        Job::Scan => scan(&cx),
        Job::Lattice => lattice(&cx),
        Job::Tessellate { depth, dessin } => tessellate(&cx, *depth, dessin.as_deref()),
        Job::Report => report(&cx),
    }
}

fn certification_tag(c: &Certification) -> String {
    match c {
        Certification::FullSnf => "full_snf".into(),
        Certification::RationalOnly => "rational_only".into(),
        Certification::ModularOnly(p) => format!("modular_only({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
    }
}

pub fn homology_json(cx: &Context, lattice: &str, r: &HomologyReport) -> Value {
    json!({
        "type": cx.ty.name(),
        "lattice": lattice,
        "f_vector": strs(&r.f_vector),
        "euler": s(r.euler),
        "betti": strs(&r.betti),
        "torsion": r.torsion.iter().map(|t| strs(t)).collect::<Vec<_>>(),
        "certification": certification_tag(&r.certification),
        "modular_betti": r.modular_betti.iter().map(|(p, b)| json!({"prime": s(p), "betti": strs(b)})).collect::<Vec<_>>(),
        "torsion_free_evidence": r.torsion_free_evidence(),
    })
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn cupring(cx: &Context, max_pairs: usize) -> Result<Artifacts> {
    let c = torus_complex(&cx.hat, &cx.table)?;
    let alg = cochain_algebra(&c)?;
    let n = c.dim;
    let dims: Vec<usize> = (0..=n).map(|p| alg.dim(p)).collect();
    let mut d_squared_zero = true;
    for p in 0..n.saturating_sub(1) {
        match alg.d[p + 1].mul(&alg.d[p]) {
            Some(m) => d_squared_zero &= m.is_zero(),
            None => bail!("overflow while composing coboundaries in degree {}", p),
        }
    }
    let mut leibniz = Vec::new();
    let mut products = Vec::new();
    for p in 0..=n {
        for q in 0..=n - p {
            let pairs: Vec<(usize, usize)> = (0..dims[p]).flat_map(|i| (0..dims[q]).map(move |j| (i, j))).take(max_pairs).collect();
            let nonzero = pairs.par_iter().filter(|&&(i, j)| !alg.basis_cup(p, i, q, j).is_empty()).count();
            products.push(json!({"p": s(p), "q": s(q), "pairs": s(pairs.len()), "nonzero": s(nonzero)}));
            if p + q + 1 > n {
                continue;
            }
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let failures = pairs
                .par_iter()
                .filter(|&&(i, j)| {
                    let a = unit(dims[p], i);
                    let b = unit(dims[q], j);
                    let lhs = alg.coboundary(p + q, &alg.cup(p, &a, q, &b));
                    let r1 = alg.cup(p + 1, &alg.coboundary(p, &a), q, &b);
                    let r2 = alg.cup(p, &a, q + 1, &alg.coboundary(q, &b));
                    lhs.iter().zip(r1.iter().zip(&r2)).any(|(l, (x, y))| *l != x + sign * y)
                })
                .count();
            leibniz.push(json!({"p": s(p), "q": s(q), "pairs": s(pairs.len()), "failures": s(failures)}));
        }
    }
    let v = json!({
        "type": cx.ty.name(),
        "cochain_dims": strs(&dims),
        "d_squared_zero": d_squared_zero,
        "leibniz": leibniz,
        "products": products,
    });
    Ok(Artifacts { main: pretty(&v), ..Default::default() })
}

/// Relator check split across threads.
pub fn verify_parallel(h: &HatGroup, p: &Presentation) -> Result<bool> {
    let results: Vec<Result<bool>> = p
        .relators
        .par_chunks(4)
        .map(|chunk| {
            let part = Presentation { generators: p.generators.clone(), relators: chunk.to_vec(), substitutions: Vec::new() };
            Ok(verify_relators(h, &part)?)
        })
        .collect();
    let mut ok = true;
    for r in results {
        ok &= r?;
    }
    Ok(ok)
}

pub fn presentation(cx: &Context, reduce: bool) -> Result<Presentation> {
    let mut p = pi1_presentation(&cx.hat, &cx.table)?;
    if cx.hat.class == DiagramClass::CompactHyperbolic {
        p = pair_sides(&p);
        if reduce {
            p = eliminate_generators(&p);
        }
    }
    Ok(p)
}

fn pi1(cx: &Context, reduce: bool, verify: bool, format: Pi1Format) -> Result<Artifacts> {
    let p = presentation(cx, reduce)?;
    let mut notes = Vec::new();
    let verified = if verify {
        if cx.hat.class != DiagramClass::CompactHyperbolic {
            bail!("relator verification needs images in the extended group; {} is crystallographic", cx.ty);
        }
        let ok = verify_parallel(&cx.hat, &p)?;
        notes.push(format!("{} relators {}", p.relators.len(), if ok { "verified" } else { "FAILED verification" }));
        Some(ok)
    } else {
        None
    };
    let main = match format {
        Pi1Format::Text => p.to_text(),
        Pi1Format::Json => {
            let (rank, torsion) = abelianization(&p);
            pretty(&json!({
                "type": cx.ty.name(),
                "generators": p.generators.iter().map(|g| g.label.clone()).collect::<Vec<_>>(),
                "relators": p.relators.iter().map(|r| json!({"tag": r.tag.tag(), "word": strs(&r.word)})).collect::<Vec<_>>(),
                "substitutions": p.substitutions.iter().map(|sub| json!({
                    "label": sub.label,
                    "word": sub.word.iter().map(|(l, e)| [l.clone(), s(e)]).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "length_profile": p.length_profile().iter().map(|(l, c)| [s(l), s(c)]).collect::<Vec<_>>(),
                "abelianization": {"free_rank": s(rank), "torsion": strs(&torsion)},
                "verified": verified,
            }))
        }
    };
    Ok(Artifacts { main, side: Vec::new(), notes })
}

pub fn char_table(cx: &Context) -> Result<CharTable> {
    Ok(match cx.ty {
        CoxeterType::I2(m) => dihedral_char_table(m, &cx.table)?,
        CoxeterType::H3 => load_char_table(Embedded::H3, &cx.table)?,
        CoxeterType::H4 => load_char_table(Embedded::H4, &cx.table)?,
        other => bail!("no character table for {}", other),
    })
}

fn decompose(cx: &Context) -> Result<Artifacts> {
    let ct = char_table(cx)?;
    let c = torus_complex(&cx.hat, &cx.table)?;
    let r = homology_with(&c, &Mode::Rational, &HomologyOptions::default())?;
    let d = decompose_torus(&cx.hat, &c, &ct, &r.betti)?;
    let solutions: Vec<Value> = d
        .solutions
        .iter()
        .map(|sol| {
            let degrees: Vec<Value> = sol
                .iter()
                .enumerate()
                .map(|(k, mult)| {
                    let m: BTreeMap<String, String> =
                        ct.labels.iter().zip(mult).filter(|(_, &x)| x != 0).map(|(l, x)| (l.clone(), s(x))).collect();
                    json!({"degree": s(k), "description": ct.describe(mult), "multiplicities": m})
                })
                .collect();
            json!({"degrees": degrees})
        })
        .collect();
    let v = json!({
        "type": cx.ty.name(),
        "betti": strs(&r.betti),
        "ambiguous": d.ambiguous,
        "evidence_used": d.evidence_used.iter().map(|&e| strs(cx.table.word(e))).collect::<Vec<_>>(),
        "solutions": solutions,
    });
    Ok(Artifacts { main: pretty(&v), ..Default::default() })
}

fn matrix_rows(m: &coxtorus_core::coxeter::CoxeterMatrix) -> Vec<Vec<String>> {
    (0..m.n).map(|i| (0..m.n).map(|j| if m.get(i, j) == INFINITY { "inf".to_string() } else { s(m.get(i, j)) }).collect()).collect()
}

fn scan(cx: &Context) -> Result<Artifacts> {
    let entries = scan_reflection_extensions(&cx.sys)?;
    let list: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "reflection": strs(&e.reflection),
                "root_index": s(e.root_index),
                "count": s(e.count),
                "degenerate": e.degenerate,
                "class": e.class.tag(),
                "compact": e.class == DiagramClass::CompactHyperbolic,
                "matrix": matrix_rows(&e.matrix),
            })
        })
        .collect();
    let v = json!({
        "type": cx.ty.name(),
        "reflections": s(cx.sys.nplus),
        "diagrams": list,
    });
    Ok(Artifacts { main: pretty(&v), ..Default::default() })
}

fn lattice(cx: &Context) -> Result<Artifacts> {
    let om = omega_action(&cx.sys)?;
    let nodes: Vec<usize> = om.generators.iter().map(|g| g.0).collect();
    let mut seen: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut lattices = Vec::new();
    for mask in 0u32..(1 << nodes.len()) {
        let pick: Vec<usize> = (0..nodes.len()).filter(|&i| mask >> i & 1 == 1).map(|i| nodes[i]).collect();
        let sub = om.subgroup(&cx.sys, &pick)?;
        let mut key: Vec<Vec<usize>> = sub.iter().map(|o| o.perm.clone()).collect();
        key.sort();
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        lattices.push(json!({
            "nodes": strs(&pick),
            "order": s(sub.len()),
            "option": if pick.is_empty() { "bary".to_string() } else { pick.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",") },
        }));
    }
    let v = json!({
        "type": cx.ty.name(),
        "omega_order": s(om.elements.len()),
        "generators": om.generators.iter().map(|(i, o)| json!({"node": s(i), "perm": strs(&o.perm), "w_word": strs(&o.w_word)})).collect::<Vec<_>>(),
        "lattices": lattices,
    });
    Ok(Artifacts { main: pretty(&v), ..Default::default() })
}

fn tessellate(cx: &Context, depth: usize, dessin: Option<&std::path::Path>) -> Result<Artifacts> {
    let tiles = svg::tiles(&cx.hat, &cx.table, depth)?;
    let title = format!("{} depth {}", cx.ty.name(), depth);
    let main = svg::render(&cx.hat, &tiles, &title);
    let mut side = Vec::new();
    if let Some(path) = dessin {
        side.push((path.to_path_buf(), pretty(&dessin_json(cx)?)));
    }
    let notes = vec![format!("{} tiles, {} in the Q-orbit of the base triangle", tiles.len(), tiles.iter().filter(|t| t.in_q).count())];
    Ok(Artifacts { main, side, notes })
}

/// Vertices and edges of the quotient surface, vertices tagged by their cell type.
pub fn dessin_json(cx: &Context) -> Result<Value> {
    let c = torus_complex(&cx.hat, &cx.table)?;
    let mut vertices = Vec::new();
    for i in 0..c.rank(0) {
        let (label, _) = c.cell(0, i);
        vertices.push(json!({"id": s(i), "kind": label.to_string()}));
    }
    let b = &c.boundaries[1];
    let mut edges = Vec::new();
    for (e, col) in b.columns.iter().enumerate() {
        let ends: Vec<String> = col.iter().map(|(r, _)| s(r)).collect();
        edges.push(json!({"id": s(e), "ends": ends}));
    }
    Ok(json!({"type": cx.ty.name(), "vertices": vertices, "edges": edges}))
}

/// Stored `j`-invariants of the flat 2-dimensional tori.
pub fn elliptic_j(t: CoxeterType) -> Option<(&'static str, &'static str)> {
    match t {
        CoxeterType::A(2) | CoxeterType::G2 => Some(("exp(2 pi i/3)", "0")),
        CoxeterType::B(2) | CoxeterType::C(2) => Some(("i", "1728")),
        _ => None,
    }
}

fn report(cx: &Context) -> Result<Artifacts> {
    let c = torus_complex(&cx.hat, &cx.table)?;
    let f: Vec<usize> = (0..=c.dim).map(|k| c.rank(k)).collect();
    let euler: i64 = f.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
    let cells: usize = f.iter().sum();
    let homology = if cells <= 20_000 {
        Some(homology_json(cx, "sc", &homology_with(&c, &Mode::Integral, &HomologyOptions::default())?))
    } else {
        None
    };
    let gb = geometric_report(&cx.hat, euler).ok().map(|g| json!({"coefficient": g.coefficient.to_string(), "pi_power": s(g.pi_power)}));
    let trace = cx.hat.q0_trace().ok().map(|x| cx.hat.field.approximate(&x, 12));
    let centralizer = (cx.hat.class == DiagramClass::CompactHyperbolic).then(|| s(centralizer_of_q0(&cx.hat, &cx.table).order()));
    let v = json!({
        "type": cx.ty.name(),
        "order": s(cx.sys.order),
        "extension": {"class": cx.hat.class.tag(), "matrix": matrix_rows(&cx.hat.matrix), "r_word": strs(&cx.hat.r_word)},
        "f_vector": strs(&f),
        "euler": s(euler),
        "poincare_quotient": poincare_series_check(&cx.hat).to_string(),
        "homology": homology,
        "gauss_bonnet": gb,
        "q0_trace": trace,
        "centralizer_order": centralizer,
        "elliptic": elliptic_j(cx.ty).map(|(tau, j)| json!({"tau": tau, "j": j})),
    });
    Ok(Artifacts { main: pretty(&v), ..Default::default() })
}
