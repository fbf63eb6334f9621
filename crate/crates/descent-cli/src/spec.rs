//! Input schemas for case files and their builders.
//!
//! A case file is a single JSON object describing one verification job: what
//! kind of check to run, the ring extension or coalgebra morphism it applies
//! to, optional size bounds, and optional expected values. Builders here turn
//! the parsed schema into audited engine objects; every constructor from the
//! engine re-runs its own axiom audits, so a spec that builds successfully is
//! already known to describe lawful structures.

use std::rc::Rc;

use serde::{Deserialize, Serialize};

use descent_core::coalg::{
    grouplike_coalgebra, grouplike_morphism, CoalgRef, CoalgebraMorphism, FiniteCoalgebra,
};
use descent_core::ring::{mk_galois_field, mk_product, mk_zmod, FiniteRing, RingHom, RingRef};
use descent_core::Error;

/// Finite commutative ring, by construction recipe.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingSpec {
    /// The integers modulo `n`.
    Zmod { n: usize },
    /// Galois field `GF(p^d)` presented by a monic irreducible `poly` over
    /// `F_p`, coefficients listed constant term first.
    Gf { p: usize, poly: Vec<usize> },
    /// Direct product of two or more factors, combined left to right.
    Product { factors: Vec<RingSpec> },
    /// Explicit row-major addition and multiplication tables.
    Tables {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    },
}

pub fn build_ring(spec: &RingSpec) -> Result<RingRef, Error> {
    match spec {
        RingSpec::Zmod { n } => Ok(Rc::new(mk_zmod(*n)?)),
        RingSpec::Gf { p, poly } => Ok(Rc::new(mk_galois_field(*p, poly)?)),
        RingSpec::Product { factors } => {
            if factors.len() < 2 {
                return Err(Error::InvalidInput(String::from(
                    "product ring needs at least two factors",
                )));
            }
            let mut acc = build_ring(&factors[0])?;
            for f in &factors[1..] {
                let next = build_ring(f)?;
                acc = mk_product(&acc, &next)?.ring;
            }
            Ok(acc)
        }
        RingSpec::Tables { add, mul } => Ok(Rc::new(FiniteRing::from_tables(add, mul)?)),
    }
}

/// Ring homomorphism given by its full value table on the domain carrier.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingHomSpec {
    pub dom: RingSpec,
    pub cod: RingSpec,
    /// `values[x]` is the codomain index of the image of domain element `x`.
    pub values: Vec<usize>,
}

pub fn build_hom(spec: &RingHomSpec) -> Result<RingHom, Error> {
    let dom = build_ring(&spec.dom)?;
    let cod = build_ring(&spec.cod)?;
    RingHom::new(&dom, &cod, spec.values.clone())
}

/// Coefficient field for a coalgebra: prime field `F_p` when `poly` is
/// absent, otherwise the Galois field presented by `poly`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<usize>>,
}

pub fn build_field(spec: &FieldSpec) -> Result<RingRef, Error> {
    match &spec.poly {
        Some(poly) => Ok(Rc::new(mk_galois_field(spec.p, poly)?)),
        None => Ok(Rc::new(mk_zmod(spec.p)?)),
    }
}

/// Finite cocommutative coalgebra: either the group-like coalgebra on `n`
/// points, or explicit structure tables. The `delta` table is row-major with
/// `dim` rows of `dim * dim` entries, first tensor factor major.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoalgebraSpec {
    Grouplike {
        kind: String,
        n: usize,
        field: FieldSpec,
    },
    Explicit {
        field: FieldSpec,
        dim: usize,
        delta: Vec<Vec<usize>>,
        counit: Vec<usize>,
    },
}

pub fn build_coalgebra(spec: &CoalgebraSpec) -> Result<CoalgRef, Error> {
    match spec {
        CoalgebraSpec::Grouplike { kind, n, field } => {
            if kind != "grouplike" {
                return Err(Error::InvalidInput(format!(
                    "unknown coalgebra kind {kind:?}; expected \"grouplike\""
                )));
            }
            let k = build_field(field)?;
            Ok(Rc::new(grouplike_coalgebra(*n, &k)?))
        }
        CoalgebraSpec::Explicit {
            field,
            dim,
            delta,
            counit,
        } => {
            let k = build_field(field)?;
            let c = FiniteCoalgebra::new(&k, delta.clone(), counit.clone())?;
            if c.dim != *dim {
                return Err(Error::InvalidInput(format!(
                    "declared dim {} does not match table dimension {}",
                    dim, c.dim
                )));
            }
            Ok(Rc::new(c))
        }
    }
}

/// Coalgebra morphism: `map` sends basis points of a group-like source to
/// basis points of a group-like target; `matrix` is a full row-major linear
/// map for the general case. Exactly one of the two must be present.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoalgMorphismSpec {
    pub source: CoalgebraSpec,
    pub target: CoalgebraSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<usize>>>,
}

pub fn build_coalg_morphism(spec: &CoalgMorphismSpec) -> Result<CoalgebraMorphism, Error> {
    let source = build_coalgebra(&spec.source)?;
    let target = build_coalgebra(&spec.target)?;
    match (&spec.map, &spec.matrix) {
        (Some(map), None) => grouplike_morphism(&source, &target, map),
        (None, Some(matrix)) => CoalgebraMorphism::new(&source, &target, matrix.clone()),
        _ => Err(Error::InvalidInput(String::from(
            "give exactly one of \"map\" or \"matrix\"",
        ))),
    }
}

/// The checks a case can request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    /// Five-object unit/Picard sequence of a ring extension.
    Seq5,
    /// Unit groups against invertible submodules of the extension.
    InvertibleSeq,
    /// Bimodule automorphisms against ring automorphisms.
    DualSeq,
    /// Amitsur complex of the extension with degree-one cohomology.
    AmitsurH1,
    /// Kernel of the Picard base-change map against cocycle classes.
    PicKernel,
    /// Descent-data versus comonad-coalgebra correspondence on a module family.
    Brb,
    /// Additive Hilbert 90 for a coalgebra surjection.
    Hilbert90,
}

impl CaseKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseKind::Seq5 => "seq5",
            CaseKind::InvertibleSeq => "invertible_seq",
            CaseKind::DualSeq => "dual_seq",
            CaseKind::AmitsurH1 => "amitsur_h1",
            CaseKind::PicKernel => "pic_kernel",
            CaseKind::Brb => "brb",
            CaseKind::Hilbert90 => "hilbert90",
        }
    }

    /// Whether the kind consumes a ring homomorphism (as opposed to a
    /// coalgebra morphism).
    pub fn wants_ring_hom(self) -> bool {
        !matches!(self, CaseKind::Hilbert90)
    }
}

/// Optional size limits for a case.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Bounds {
    /// Cardinality cap for enumerated module families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    /// Number of face stages to build in an Amitsur complex.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

/// Optional expected values; a mismatch turns the case into a failure.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Expect {
    /// Expected order of the degree-one cohomology group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1_order: Option<usize>,
    /// Expected group orders along the reported sequence, in order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<usize>>,
}

/// One verification job.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseSpec {
    /// Stable identifier; reports are sorted by it.
    pub id: String,
    pub kind: CaseKind,
    /// Ring extension input, for all ring-side kinds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom: Option<RingHomSpec>,
    /// Coalgebra morphism input, for `hilbert90`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<CoalgMorphismSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    /// Random seed echoed into the report. The bundled case kinds are all
    /// exhaustive, so the seed never changes a verdict; it exists so that
    /// randomized future kinds keep the same schema.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

impl CaseSpec {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
