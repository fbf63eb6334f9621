//! Shared error type. Every bound, audit, and precondition failure in the engine
//! reports through this enum so callers can match on structure, not strings.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A construction would exceed a documented enumeration or memory bound.
    BoundExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    /// A structural axiom failed during a table audit; `law` names the axiom.
    AxiomFailed { law: &'static str },
    /// A supplied element table does not preserve the stated structure.
    NotAHom { law: &'static str },
    NotCommutative,
    NotCocommutative,
    NotAField,
    NotPrime,
    NotIrreducible,
    NotInvertible,
    /// An element map required to be injective is not.
    NotInjective,
    /// Alias used by the five-term sequence verifier for its unit-map precondition.
    NotMono,
    NoSolution,
    NotAbelian,
    NotNormal,
    NotComposable,
    /// Matrix or vector dimensions do not line up.
    ShapeMismatch,
    /// Two operands were built over different rings or carriers.
    RingMismatch,
    /// A coalgebra-side dimension bound was exceeded.
    DimensionBound,
    /// A theorem hypothesis could not be certified; the payload says which.
    HypothesisUnverified(&'static str),
    /// A randomized property suite found a counterexample (message has details).
    PropertyFailed(String),
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BoundExceeded { what, limit, got } => {
                write!(f, "bound exceeded for {what}: limit {limit}, got {got}")
            }
            Error::AxiomFailed { law } => write!(f, "axiom failed: {law}"),
            Error::NotAHom { law } => write!(f, "not a homomorphism: {law}"),
            Error::NotCommutative => write!(f, "ring is not commutative"),
            Error::NotCocommutative => write!(f, "coalgebra is not cocommutative"),
            Error::NotAField => write!(f, "ring is not a field"),
            Error::NotPrime => write!(f, "not a prime"),
            Error::NotIrreducible => write!(f, "polynomial is not irreducible"),
            Error::NotInvertible => write!(f, "element is not invertible"),
            Error::NotInjective => write!(f, "map is not injective"),
            Error::NotMono => write!(f, "unit map is not injective"),
            Error::NoSolution => write!(f, "linear system has no solution"),
            Error::NotAbelian => write!(f, "group is not abelian"),
            Error::NotNormal => write!(f, "subgroup is not normal"),
            Error::NotComposable => write!(f, "maps are not composable"),
            Error::ShapeMismatch => write!(f, "dimension mismatch"),
            Error::RingMismatch => write!(f, "operands live over different carriers"),
            Error::DimensionBound => write!(f, "coalgebra dimension bound exceeded"),
            Error::HypothesisUnverified(h) => write!(f, "hypothesis unverified: {h}"),
            Error::PropertyFailed(msg) => write!(f, "property failed: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
