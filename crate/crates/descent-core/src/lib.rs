//! Exact computational algebra over finite commutative rings, driven entirely by
//! operation tables: Smith normal form and integer linear algebra, audited rings
//! and groups, modules with tensor products, unit-group cochain complexes with
//! their cohomology, descent data with the attendant exact sequences, and the
//! coalgebra mirrors of those constructions.
//!
//! Every structure is finite and explicit, and every construction is certified:
//! axiom audits on the tables, independent cross-checks on the invariants, and
//! hard bounds instead of silent truncation. The crate is `no_std` (with
//! `alloc`); IO, serialization, and the command line interface live in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod amitsur;
pub mod coalg;
pub mod decomp;
pub mod descent;
pub mod error;
pub mod group;
pub mod linalg;
pub mod module;
pub mod ring;
pub mod tensor;

pub use error::Error;

/// Largest carrier for which full operation tables are built.
pub const TABLE_BOUND: usize = 4096;

/// Largest carrier materialized as a table-backed structure when a coordinate
/// presentation would do; bigger carriers stay in coordinate form.
pub const MATERIALIZE_BOUND: usize = 1024;

/// Orders up to this get exhaustive axiom audits; larger ones are sampled.
pub const FULL_AUDIT_BOUND: usize = 256;

/// Number of seeded random triples checked per law when sampling an audit.
pub const AUDIT_SAMPLES: usize = 10_000;
