//! Command-line companion to `fringe-core`: scenario files, CSV patterns,
//! measure/duality reports, the pairwise blocking protocol and the built-in
//! reproduction suite.

pub mod pairwise;
pub mod pattern;
pub mod report;
pub mod scenario;
pub mod suite;

pub use fringe_core;
