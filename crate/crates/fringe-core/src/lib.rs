//! Simulation of n-path quantum interference with controllable decoherence.
//!
//! The quanton state in the path basis is a density matrix; a path detector
//! (or any ancilla) is described by the Gram matrix of its states, and
//! decoherence is the entrywise product of the two. On top of that model the
//! crate computes the three wave-nature quantifiers (traditional fringe
//! visibility, the normalized l1 coherence and the coherence-valued "new"
//! visibility), pure-state path distinguishability, and the associated
//! wave-particle duality relations.
//!
//! The crate is `no_std` (alloc only); all IO lives in the companion CLI
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod criteria;
pub mod duality;
pub mod engine;
pub mod error;
pub(crate) mod matrix;
pub mod measures;
pub mod model;
pub mod sample;

pub use engine::{ExtremaResult, IntensityPattern};
pub use error::Error;
pub use model::{DensityMatrix, GramMatrix, PhaseModel, Scenario};
