//! Finite category theory and finite simplicial sets, with brute-force
//! verification of the finite instances of orbit-axiom lemmas for diagram
//! categories.

pub mod diagram;
pub mod dwyer;
pub mod equivariant;
pub mod error;
pub mod fincat;
pub mod harness;
pub mod simplicial;

pub use error::{Error, Result};
