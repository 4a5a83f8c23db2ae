//! JSON schemas. All integers are written as decimal strings.

use anyhow::{bail, Context, Result};
use coxtorus_core::complex::ChainComplex;
use coxtorus_core::coxeter::CoxeterType;
use coxtorus_core::homology::SparseIntMatrix;
use serde::{Deserialize, Serialize};

pub fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

pub fn strs<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct DegreeEntry {
    pub degree: String,
    /// One label per block of the chain group.
    pub subsets: Vec<String>,
    /// Number of cells in each block.
    pub coset_sizes: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BoundaryEntry {
    pub degree: String,
    pub rows: String,
    pub cols: String,
    pub triplets: Vec<[String; 3]>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ComplexFile {
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<String>,
    pub lattice: String,
    pub name: String,
    pub f_vector: Vec<String>,
    pub euler: String,
    pub degrees: Vec<DegreeEntry>,
    pub boundaries: Vec<BoundaryEntry>,
    /// Names of the generators of the extended group.
    pub labels: Vec<String>,
}

impl ComplexFile {
    pub fn new(t: CoxeterType, lattice: &str, c: &ChainComplex) -> Self {
        let (rank, m) = match t {
            CoxeterType::I2(m) => (None, Some(s(m))),
            _ => (Some(s(t.rank())), None),
        };
        let f: Vec<usize> = (0..=c.dim).map(|k| c.rank(k)).collect();
        let euler: i64 = f.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        let degrees = (0..=c.dim)
            .map(|k| DegreeEntry {
                degree: s(k),
                subsets: c.blocks[k].iter().map(|b| b.label.to_string()).collect(),
                coset_sizes: c.blocks[k].iter().map(|b| s(b.len())).collect(),
            })
            .collect();
        let boundaries = (1..=c.dim)
            .map(|k| {
                let b = &c.boundaries[k];
                BoundaryEntry {
                    degree: s(k),
                    rows: s(b.rows),
                    cols: s(b.cols),
                    triplets: b.triplets().into_iter().map(|(r, c, v)| [s(r), s(c), s(v)]).collect(),
                }
            })
            .collect();
        ComplexFile {
            ty: t.name(),
            rank,
            m,
            lattice: lattice.to_string(),
            name: c.name.clone(),
            f_vector: strs(&f),
            euler: s(euler),
            degrees,
            boundaries,
            labels: (0..=t.rank()).map(|i| format!("s{}", i)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("not a complex file")
    }

    /// Boundary matrices indexed by degree (`0` is the empty map).
    pub fn boundary_matrices(&self) -> Result<Vec<SparseIntMatrix>> {
        let f: Vec<usize> = self.f_vector.iter().map(|x| x.parse()).collect::<std::result::Result<_, _>>()?;
        let mut out = vec![SparseIntMatrix::zero(0, f.first().copied().unwrap_or(0))];
        for (k, b) in self.boundaries.iter().enumerate() {
            let rows: usize = b.rows.parse()?;
            let cols: usize = b.cols.parse()?;
            if rows != f[k] || cols != f[k + 1] {
                bail!("boundary {} has shape {}x{}, expected {}x{}", k + 1, rows, cols, f[k], f[k + 1]);
            }
            let mut trip = Vec::with_capacity(b.triplets.len());
            for [r, c, v] in &b.triplets {
                trip.push((r.parse()?, c.parse()?, v.parse()?));
            }
            out.push(SparseIntMatrix::from_triplets(rows, cols, &trip));
        }
        Ok(out)
    }
}
