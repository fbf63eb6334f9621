//! Command-line companion to the core verifiers.
//!
//! The binary reads JSON case files describing finite ring extensions or
//! coalgebra morphisms, runs the requested verification, and emits a
//! deterministic report (JSON or text) under a fixed exit-code contract. A
//! bundled selftest matrix pins the headline claims to frozen small-case
//! values. Everything lives in the library so integration tests can drive
//! the pipeline in-process as well as through the binary.

pub mod cases;
pub mod cli;
pub mod report;
pub mod run;
pub mod selftest;
pub mod spec;
