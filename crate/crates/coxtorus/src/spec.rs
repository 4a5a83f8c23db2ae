//! Command line grammar and job validation.

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coxtorus_core::coxeter::CoxeterType;

#[derive(Parser, Debug)]
#[command(name = "coxtorus", version, about = "Homology and fundamental groups of Coxeter tori")]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, env = "COXTORUS_THREADS", global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct TypeArgs {
    /// Coxeter type: `A3`, `H4`, `I2(7)`, or `I2` together with `--m`.
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long)]
    pub m: Option<u64>,
}

impl TypeArgs {
    pub fn resolve(&self) -> Result<CoxeterType> {
        let s = match (self.ty.trim(), self.m) {
            (t, Some(m)) if t.eq_ignore_ascii_case("I2") => format!("I2({})", m),
            (t, None) if t.eq_ignore_ascii_case("I2") => bail!("type I2 needs --m"),
            (_, Some(_)) => bail!("--m only applies to type I2"),
            (t, None) => t.to_string(),
        };
        Ok(s.parse::<CoxeterType>()?)
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum HomologyMode {
    Integral,
    Rational,
    Modular,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pi1Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Chain complex as JSON.
    Complex {
        #[command(flatten)]
        ty: TypeArgs,
        /// `sc`, `full`, `bary` or a comma list of minuscule nodes.
        #[arg(long, default_value = "sc")]
        lattice: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Integral, rational or modular homology.
    Homology {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, default_value = "sc")]
        lattice: String,
        #[arg(long, value_enum, default_value_t = HomologyMode::Integral)]
        mode: HomologyMode,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        /// Above this `nnz * rows` the Smith form is replaced by modular ranks.
        #[arg(long)]
        snf_threshold: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Cochain algebra checks and cup product counts.
    Cupring {
        #[command(flatten)]
        ty: TypeArgs,
        /// Cap on the basis pairs tested for the Leibniz rule in each bidegree.
        #[arg(long, default_value_t = 4000)]
        max_pairs: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Presentation of the fundamental group.
    Pi1 {
        #[command(flatten)]
        ty: TypeArgs,
        /// Run Tietze elimination after side pairing.
        #[arg(long)]
        reduce: bool,
        /// Check every relator in the extended group.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Pi1Format::Text)]
        format: Pi1Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Homology as representations of W.
    Decompose {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Extensions of W by each reflection.
    Scan {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Alcove automorphisms and the lattices between coroots and coweights.
    Lattice {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// SVG of the triangle tessellation of the Poincare disk.
    Tessellate {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Also write the 1-skeleton of the quotient as JSON.
        #[arg(long)]
        dessin: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Summary of invariants.
    Report {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lattice {
    SimplyConnected,
    Barycentric,
    Full,
    Nodes(Vec<usize>),
}

impl Lattice {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "sc" => Lattice::SimplyConnected,
            "bary" => Lattice::Barycentric,
            "full" => Lattice::Full,
            other => {
                let nodes: std::result::Result<Vec<usize>, _> = other.split(',').map(|x| x.trim().parse()).collect();
                match nodes {
                    Ok(v) if !v.is_empty() => Lattice::Nodes(v),
                    _ => bail!("bad lattice '{}': expected sc, bary, full or a node list", other),
                }
            }
        })
    }

    pub fn tag(&self) -> String {
        match self {
            Lattice::SimplyConnected => "sc".into(),
            Lattice::Barycentric => "bary".into(),
            Lattice::Full => "full".into(),
            Lattice::Nodes(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        }
    }
}

/// A validated job.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub system: CoxeterType,
    pub job: Job,
}

#[derive(Clone, Debug)]
pub enum Job {
    Complex { lattice: Lattice },
    Homology { lattice: Lattice, mode: HomologyMode, primes: Vec<u64>, snf_threshold: Option<u64> },
    Cupring { max_pairs: usize },
    Pi1 { reduce: bool, verify: bool, format: Pi1Format },
    Decompose,
    Scan,
    Lattice,
    Tessellate { depth: usize, dessin: Option<PathBuf> },
    Report,
}

impl JobSpec {
    pub fn from_command(cmd: &Command) -> Result<(JobSpec, Option<PathBuf>)> {
        let (ty, out, job) = match cmd {
            Command::Complex { ty, lattice, out } => (ty, out, Job::Complex { lattice: Lattice::parse(lattice)? }),
            Command::Homology { ty, lattice, mode, primes, snf_threshold, out } => (
                ty,
                out,
                Job::Homology { lattice: Lattice::parse(lattice)?, mode: *mode, primes: primes.clone(), snf_threshold: *snf_threshold },
            ),
            Command::Cupring { ty, max_pairs, out } => (ty, out, Job::Cupring { max_pairs: *max_pairs }),
            Command::Pi1 { ty, reduce, verify, format, out } => (ty, out, Job::Pi1 { reduce: *reduce, verify: *verify, format: *format }),
            Command::Decompose { ty, out } => (ty, out, Job::Decompose),
            Command::Scan { ty, out } => (ty, out, Job::Scan),
            Command::Lattice { ty, out } => (ty, out, Job::Lattice),
            Command::Tessellate { ty, depth, dessin, out } => (ty, out, Job::Tessellate { depth: *depth, dessin: dessin.clone() }),
            Command::Report { ty, out } => (ty, out, Job::Report),
        };
        let spec = JobSpec { system: ty.resolve()?, job };
        spec.validate()?;
        Ok((spec, out.out.clone()))
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.system;
        let cryst = t.is_crystallographic();
        match &self.job {
            Job::Complex { lattice } | Job::Homology { lattice, .. } => {
                if *lattice != Lattice::SimplyConnected && !cryst {
                    bail!("lattice '{}' needs a Weyl group; {} is not crystallographic", lattice.tag(), t);
                }
            }
            Job::Lattice if !cryst => bail!("lattice needs a Weyl group; {} is not crystallographic", t),
            Job::Decompose if cryst => bail!("decompose supports I2(m), H3 and H4, not {}", t),
            Job::Tessellate { depth, .. } => {
                if !matches!(t, CoxeterType::I2(_)) {
                    bail!("tessellate supports I2(m) only, not {}", t);
                }
                if *depth > 14 {
                    bail!("tessellate depth {} is above the limit 14", depth);
                }
            }
            _ => {}
        }
        if let Job::Homology { mode: HomologyMode::Modular, primes, .. } = &self.job {
            if primes.is_empty() {
                bail!("modular homology needs --primes");
            }
        }
        Ok(())
    }
}
