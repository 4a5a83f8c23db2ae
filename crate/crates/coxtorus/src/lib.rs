//! Command line front end for `coxtorus-core`: job specs, JSON and SVG output.

pub mod commands;
pub mod json;
pub mod spec;
pub mod svg;

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context as _, Result};

pub use commands::{run, Artifacts};
pub use spec::{Cli, JobSpec};

/// Write the artifacts of a job: the main document to `out` or stdout, side files to their paths.
pub fn emit(a: &Artifacts, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, &a.main).with_context(|| format!("cannot write {}", p.display()))?,
        None => std::io::stdout().write_all(a.main.as_bytes())?,
    }
    for (p, text) in &a.side {
        fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?;
    }
    for n in &a.notes {
        eprintln!("{}", n);
    }
    Ok(())
}
