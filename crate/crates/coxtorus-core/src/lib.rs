//! Exact computations for torus-like manifolds built from finite Coxeter groups.
//!
//! Everything here is `no_std` with `alloc`; IO, rendering and threading live
//! in the `coxtorus` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod complex;
pub mod coxeter;
pub mod error;
pub mod exactnum;
pub mod extension;
pub mod fungroup;
pub mod homology;
pub mod reptheory;

pub use error::{Error, Result};
