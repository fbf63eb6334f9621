//! Cosimplicial tensor levels of a commutative ring extension and their
//! unit-group cohomology.
//!
//! [`build_amitsur`] stacks the tensor powers B, B⊗B, B⊗B⊗B, ... over the
//! base of a ring map A → B, wires up the unit-insertion faces and the
//! slot-merging degeneracies, and certifies the cosimplicial identities.
//! On top sit the alternating coboundary maps ([`delta`]), the cocycle and
//! cohomology computations in low degrees ([`z1`], [`h0`], [`h1`],
//! [`hn_abelian`]), and the coring structure carried by the first level
//! ([`coring_of`], [`coring_automorphisms`], [`kappa`]).

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::decomp::AbelianDecomp;
use crate::error::Error;
use crate::group::{
    invariant_factors, quotient_abelian, subgroup_from_elems, FiniteGroup, GroupHom, HypStatus,
    Subgroup,
};
use crate::ring::{units, units_functor_on_hom, RingHom, RingRef, UnitsGroup};
use crate::tensor::{tensor_ring, RingTensor};
use crate::{FULL_AUDIT_BOUND, MATERIALIZE_BOUND};

fn add_digits(factors: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    factors
        .iter()
        .zip(a.iter().zip(b))
        .map(|(&f, (&x, &y))| (x + y) % f)
        .collect()
}

fn scale_digits(factors: &[u64], a: &[u64], k: u128) -> Vec<u64> {
    factors
        .iter()
        .zip(a)
        .map(|(&f, &x)| ((x as u128 * k) % f as u128) as u64)
        .collect()
}

fn indicator(len: usize, j: usize) -> Vec<u64> {
    let mut v = vec![0u64; len];
    v[j] = 1;
    v
}

/// An additive map between two levels, stored as images of the domain basis
/// in codomain coordinates. Levels too large to enumerate are still reachable
/// through these maps because application is coordinatewise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    pub dom_factors: Vec<u64>,
    pub cod_factors: Vec<u64>,
    pub images: Vec<Vec<u64>>,
}

impl LinearMap {
    pub fn new(dom_factors: Vec<u64>, cod_factors: Vec<u64>, images: Vec<Vec<u64>>) -> Self {
        assert_eq!(images.len(), dom_factors.len());
        for (j, img) in images.iter().enumerate() {
            let killed = scale_digits(&cod_factors, img, dom_factors[j] as u128);
            assert!(
                killed.iter().all(|&d| d == 0),
                "basis image not annihilated by the basis order"
            );
        }
        LinearMap {
            dom_factors,
            cod_factors,
            images,
        }
    }

    pub fn identity(factors: &[u64]) -> Self {
        let images = (0..factors.len()).map(|j| indicator(factors.len(), j)).collect();
        LinearMap {
            dom_factors: factors.to_vec(),
            cod_factors: factors.to_vec(),
            images,
        }
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; self.cod_factors.len()];
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0 {
                continue;
            }
            let term = scale_digits(&self.cod_factors, &self.images[j], xj as u128);
            acc = add_digits(&self.cod_factors, &acc, &term);
        }
        acc
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.cod_factors, other.dom_factors, "maps not composable");
        let images = self.images.iter().map(|img| other.apply(img)).collect();
        LinearMap {
            dom_factors: self.dom_factors.clone(),
            cod_factors: other.cod_factors.clone(),
            images,
        }
    }
}

enum LevelKind {
    /// Level 0 is the extension ring itself.
    Base { decomp: AbelianDecomp },
    /// Level n >= 1 is (level n-1) ⊗_A B.
    Tensor { tensor: RingTensor },
}

/// One tensor level of the complex. Small levels carry a materialized ring
/// with element tables; large levels exist only through coordinates and basis
/// multiplication.
pub struct Level {
    /// number of tensor slots, so level n has n+1 slots
    pub slots: usize,
    pub factors: Vec<u64>,
    pub order: u64,
    pub one_coords: Vec<u64>,
    pub ring: Option<RingRef>,
    kind: LevelKind,
}

impl Level {
    pub fn is_materialized(&self) -> bool {
        self.ring.is_some()
    }

    /// Coordinates of a carrier element. Meaningful on materialized levels only.
    pub fn coords_of(&self, elem: usize) -> Vec<u64> {
        match &self.kind {
            LevelKind::Base { decomp } => decomp.coords(elem),
            LevelKind::Tensor { tensor } => tensor.result.presentation.coords_of_rank(elem),
        }
    }

    pub fn elem_of(&self, coords: &[u64]) -> usize {
        match &self.kind {
            LevelKind::Base { decomp } => decomp.elem_at(coords),
            LevelKind::Tensor { tensor } => tensor.result.presentation.rank_of_coords(coords),
        }
    }

    pub fn mul_coords(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        match &self.kind {
            LevelKind::Base { .. } => {
                let r = self.ring.as_ref().expect("base level is materialized");
                self.coords_of(r.mul(self.elem_of(x), self.elem_of(y)))
            }
            LevelKind::Tensor { tensor } => tensor.mul_coords(x, y),
        }
    }

    pub fn tensor(&self) -> Option<&RingTensor> {
        match &self.kind {
            LevelKind::Tensor { tensor } => Some(tensor),
            LevelKind::Base { .. } => None,
        }
    }
}

/// The cosimplicial ring attached to a commutative ring map: levels
/// B, B⊗_A B, ..., faces inserting the unit, degeneracies multiplying
/// adjacent slots. Faces and degeneracies are certified on all pure tensors
/// at construction, and the full cosimplicial identity schema is checked.
pub struct AmitsurComplex {
    pub iota: RingHom,
    /// levels[n] = B ⊗_A ... ⊗_A B with n+1 slots
    pub levels: Vec<Level>,
    /// faces[n][i] : levels[n] -> levels[n+1]; face i inserts the unit so that
    /// face 0 is x ↦ x⊗1 and the top face is x ↦ 1⊗x
    pub faces: Vec<Vec<LinearMap>>,
    /// degens[n][j] : levels[n+1] -> levels[n]; degeneracy 0 merges the last
    /// two slots
    pub degens: Vec<Vec<LinearMap>>,
    /// carrier-level face tables on the materialized prefix, as audited ring maps
    pub face_homs: Vec<Vec<RingHom>>,
    pub degen_homs: Vec<Vec<RingHom>>,
}

impl AmitsurComplex {
    /// Number of face stages built; levels run 0..=depth().
    pub fn depth(&self) -> usize {
        self.faces.len()
    }

    /// Face as a carrier-element map. Valid on the materialized prefix.
    pub fn face_elem(&self, n: usize, i: usize, x: usize) -> usize {
        self.face_homs[n][i].apply(x)
    }

    /// Degeneracy as a carrier-element map. Valid on the materialized prefix.
    pub fn degen_elem(&self, n: usize, j: usize, x: usize) -> usize {
        self.degen_homs[n][j].apply(x)
    }

    /// Unit group of a materialized level.
    pub fn units_at(&self, n: usize) -> Result<UnitsGroup, Error> {
        let level = self
            .levels
            .get(n)
            .ok_or(Error::InvalidInput(String::from("level not built")))?;
        let Some(r) = level.ring.as_ref() else {
            return Err(Error::BoundExceeded {
                what: "unit enumeration level",
                limit: MATERIALIZE_BOUND,
                got: level.order as usize,
            });
        };
        units(r)
    }

    /// Checks every instance of the cosimplicial identity schema between the
    /// built levels, as equalities of basis-image tables.
    pub fn verify_simplicial(&self) -> Result<(), Error> {
        let depth = self.depth();
        for n in 0..depth.saturating_sub(1) {
            for j in 1..=(n + 2) {
                for i in 0..j {
                    let lhs = self.faces[n][i].then(&self.faces[n + 1][j]);
                    let rhs = self.faces[n][j - 1].then(&self.faces[n + 1][i]);
                    if lhs != rhs {
                        return Err(Error::AxiomFailed {
                            law: "cosimplicial face identity",
                        });
                    }
                }
            }
        }
        for n in 0..depth {
            for j in 0..=n {
                for i in 0..=(n + 1) {
                    let comp = self.faces[n][i].then(&self.degens[n][j]);
                    let want = if i == j || i == j + 1 {
                        LinearMap::identity(&self.levels[n].factors)
                    } else if i < j {
                        self.degens[n - 1][j - 1].then(&self.faces[n - 1][i])
                    } else {
                        self.degens[n - 1][j].then(&self.faces[n - 1][i - 1])
                    };
                    if comp != want {
                        return Err(Error::AxiomFailed {
                            law: "cosimplicial face-degeneracy identity",
                        });
                    }
                }
            }
        }
        for n in 0..depth.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.degens[n + 1][i].then(&self.degens[n][j]);
                    let rhs = self.degens[n + 1][j + 1].then(&self.degens[n][i]);
                    if lhs != rhs {
                        return Err(Error::AxiomFailed {
                            law: "cosimplicial degeneracy identity",
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds the complex of `iota` up to `n_max` tensor stages (so levels
/// 0..=n_max). Levels whose order stays within the materialization bound get
/// full ring tables; at most the top level may exceed it, in which case it is
/// kept at the coordinate layer. Depths beyond 3 are not supported.
pub fn build_amitsur(iota: &RingHom, n_max: usize) -> Result<AmitsurComplex, Error> {
    if !iota.dom.commutative || !iota.cod.commutative {
        return Err(Error::NotCommutative);
    }
    if n_max < 2 {
        return Err(Error::InvalidInput(String::from(
            "complex depth must be at least 2",
        )));
    }
    if n_max > 3 {
        return Err(Error::BoundExceeded {
            what: "complex depth",
            limit: 3,
            got: n_max,
        });
    }
    let a = &iota.dom;
    let b = &iota.cod;
    let decomp = AbelianDecomp::compute(&**b)?;
    let mut levels = vec![Level {
        slots: 1,
        factors: decomp.orders.clone(),
        order: b.order as u64,
        one_coords: decomp.coords(b.one),
        ring: Some(b.clone()),
        kind: LevelKind::Base { decomp },
    }];
    // A -> (current top level), threaded through the left slot
    let mut unit_embed = iota.clone();
    for n in 1..=n_max {
        if !levels[n - 1].is_materialized() {
            return Err(Error::BoundExceeded {
                what: "level materialization",
                limit: MATERIALIZE_BOUND,
                got: levels[n - 1].order as usize,
            });
        }
        let rt = tensor_ring(a, &unit_embed, iota)?;
        let p = &rt.result.presentation;
        let level = Level {
            slots: n + 1,
            factors: p.factors.clone(),
            order: p.order,
            one_coords: rt.one_coords.clone(),
            ring: rt.ring.clone(),
            kind: LevelKind::Tensor { tensor: rt },
        };
        if let Some(tensor) = level.tensor() {
            if let Some(incl) = tensor.left_inclusion.as_ref() {
                unit_embed = unit_embed.then(incl)?;
            }
        }
        levels.push(level);
    }

    let depth = n_max;
    let b_one = b.one;

    // Faces, one stage at a time. The recursion over the last tensor slot:
    // face 0 of an element x is the pure tensor x⊗1, and face i >= 1 on a
    // pure w⊗b is (face i-1 of w)⊗b one level down.
    let mut faces: Vec<Vec<LinearMap>> = Vec::new();
    let mut face_tables: Vec<Vec<Vec<usize>>> = Vec::new();
    for n in 0..depth {
        let cod_factors = levels[n + 1].factors.clone();
        let pc_dim = cod_factors.len();
        let mut maps = Vec::new();
        if n == 0 {
            let base_basis: Vec<usize> = match &levels[0].kind {
                LevelKind::Base { decomp } => decomp.basis.clone(),
                LevelKind::Tensor { .. } => unreachable!(),
            };
            let p1 = &levels[1].tensor().expect("level 1 is a tensor").result.presentation;
            for i in 0..=1usize {
                let images: Vec<Vec<u64>> = base_basis
                    .iter()
                    .map(|&g| {
                        if i == 0 {
                            p1.pure_coords(g, b_one)
                        } else {
                            p1.pure_coords(b_one, g)
                        }
                    })
                    .collect();
                maps.push(LinearMap::new(
                    levels[0].factors.clone(),
                    cod_factors.clone(),
                    images,
                ));
            }
        } else {
            let pd = &levels[n].tensor().expect("tensor level").result.presentation;
            let pc = &levels[n + 1].tensor().expect("tensor level").result.presentation;
            let dim = pd.dim();
            for i in 0..=(n + 1) {
                let mut images = Vec::with_capacity(dim);
                for j in 0..dim {
                    if i == 0 {
                        let basis_elem = levels[n].elem_of(&indicator(dim, j));
                        images.push(pc.pure_coords(basis_elem, b_one));
                    } else {
                        let prev = &face_tables[n - 1][i - 1];
                        let mut acc = vec![0u64; pc_dim];
                        for &(c, w, bb) in pd.basis_pure(j) {
                            let term = pc.pure_coords(prev[w], bb);
                            acc = add_digits(
                                &cod_factors,
                                &acc,
                                &scale_digits(&cod_factors, &term, c as u128),
                            );
                        }
                        images.push(acc);
                    }
                }
                maps.push(LinearMap::new(
                    levels[n].factors.clone(),
                    cod_factors.clone(),
                    images,
                ));
            }
        }
        if levels[n + 1].is_materialized() {
            let tables: Vec<Vec<usize>> = maps
                .iter()
                .map(|f| {
                    (0..levels[n].order as usize)
                        .map(|x| levels[n + 1].elem_of(&f.apply(&levels[n].coords_of(x))))
                        .collect()
                })
                .collect();
            face_tables.push(tables);
        }
        faces.push(maps);
    }

    // Degeneracies. Degeneracy 0 multiplies the last slot into its neighbour;
    // degeneracy j >= 1 on a pure w⊗b is (degeneracy j-1 of w)⊗b.
    let mut degens: Vec<Vec<LinearMap>> = Vec::new();
    let mut degen_tables: Vec<Vec<Vec<usize>>> = Vec::new();
    for n in 0..depth {
        let pd = &levels[n + 1].tensor().expect("tensor level").result.presentation;
        let dim = pd.dim();
        let cod_factors = levels[n].factors.clone();
        let mut maps = Vec::new();
        for j in 0..=n {
            let mut images = Vec::with_capacity(dim);
            for jj in 0..dim {
                let mut acc = vec![0u64; cod_factors.len()];
                for &(c, w, bb) in pd.basis_pure(jj) {
                    let img = if n == 0 {
                        levels[0].coords_of(b.mul(w, bb))
                    } else if j == 0 {
                        let rn = levels[n].ring.as_ref().expect("codomain materialized");
                        let incl = levels[n]
                            .tensor()
                            .expect("tensor level")
                            .right_inclusion
                            .as_ref()
                            .expect("materialized tensor has inclusions");
                        levels[n].coords_of(rn.mul(w, incl.apply(bb)))
                    } else {
                        let pn = &levels[n].tensor().expect("tensor level").result.presentation;
                        pn.pure_coords(degen_tables[n - 1][j - 1][w], bb)
                    };
                    acc = add_digits(
                        &cod_factors,
                        &acc,
                        &scale_digits(&cod_factors, &img, c as u128),
                    );
                }
                images.push(acc);
            }
            maps.push(LinearMap::new(
                levels[n + 1].factors.clone(),
                cod_factors.clone(),
                images,
            ));
        }
        if levels[n + 1].is_materialized() {
            let tables: Vec<Vec<usize>> = maps
                .iter()
                .map(|s| {
                    (0..levels[n + 1].order as usize)
                        .map(|x| levels[n].elem_of(&s.apply(&levels[n + 1].coords_of(x))))
                        .collect()
                })
                .collect();
            degen_tables.push(tables);
        }
        degens.push(maps);
    }

    audit_pure_formulas(&levels, &faces, &degens, b_one)?;

    // Ring-map wrappers on the materialized prefix; RingHom construction
    // re-audits additivity and multiplicativity of every table.
    let mut face_homs = Vec::new();
    let mut degen_homs = Vec::new();
    for n in 0..depth {
        if !levels[n + 1].is_materialized() {
            break;
        }
        let dom_r = levels[n].ring.clone().expect("prefix is materialized");
        let cod_r = levels[n + 1].ring.clone().expect("checked above");
        let fh: Result<Vec<RingHom>, Error> = face_tables[n]
            .iter()
            .map(|t| RingHom::new(&dom_r, &cod_r, t.clone()))
            .collect();
        let dh: Result<Vec<RingHom>, Error> = degen_tables[n]
            .iter()
            .map(|t| RingHom::new(&cod_r, &dom_r, t.clone()))
            .collect();
        face_homs.push(fh?);
        degen_homs.push(dh?);
    }

    let cx = AmitsurComplex {
        iota: iota.clone(),
        levels,
        faces,
        degens,
        face_homs,
        degen_homs,
    };
    cx.verify_simplicial()?;
    Ok(cx)
}

/// Re-derives every face and degeneracy on every pure tensor of every stage
/// and compares against the built linear maps. This certifies the linear
/// extensions independently of the basis bookkeeping.
fn audit_pure_formulas(
    levels: &[Level],
    faces: &[Vec<LinearMap>],
    degens: &[Vec<LinearMap>],
    b_one: usize,
) -> Result<(), Error> {
    let depth = faces.len();
    for n in 0..depth {
        let pc = &levels[n + 1].tensor().expect("tensor level").result.presentation;
        // Faces evaluated on pures of the domain level.
        if n == 0 {
            for x in 0..levels[0].order as usize {
                let xc = levels[0].coords_of(x);
                if faces[0][0].apply(&xc) != pc.pure_coords(x, b_one)
                    || faces[0][1].apply(&xc) != pc.pure_coords(b_one, x)
                {
                    return Err(Error::AxiomFailed {
                        law: "face pure formula",
                    });
                }
            }
        } else {
            let pd = &levels[n].tensor().expect("tensor level").result.presentation;
            for w in 0..levels[n - 1].order as usize {
                for bb in 0..levels[0].order as usize {
                    let x = levels[n].elem_of(&pd.pure_coords(w, bb));
                    let xc = levels[n].coords_of(x);
                    for (i, face) in faces[n].iter().enumerate() {
                        let want = if i == 0 {
                            pc.pure_coords(x, b_one)
                        } else {
                            let wc = levels[n - 1].coords_of(w);
                            let moved = levels[n].elem_of(&faces[n - 1][i - 1].apply(&wc));
                            pc.pure_coords(moved, bb)
                        };
                        if face.apply(&xc) != want {
                            return Err(Error::AxiomFailed {
                                law: "face pure formula",
                            });
                        }
                    }
                }
            }
        }
        // Degeneracies evaluated on pures of level n+1.
        for w in 0..levels[n].order as usize {
            for bb in 0..levels[0].order as usize {
                let xc = pc.pure_coords(w, bb);
                for (j, degen) in degens[n].iter().enumerate() {
                    let want = if n == 0 {
                        let r0 = levels[0].ring.as_ref().expect("base materialized");
                        levels[0].coords_of(r0.mul(w, bb))
                    } else if j == 0 {
                        let rn = levels[n].ring.as_ref().expect("prefix materialized");
                        let incl = levels[n]
                            .tensor()
                            .expect("tensor level")
                            .right_inclusion
                            .as_ref()
                            .expect("materialized tensor has inclusions");
                        levels[n].coords_of(rn.mul(w, incl.apply(bb)))
                    } else {
                        let pn = &levels[n].tensor().expect("tensor level").result.presentation;
                        let wc = levels[n].coords_of(w);
                        let merged = levels[n - 1].elem_of(&degens[n - 1][j - 1].apply(&wc));
                        pn.pure_coords(merged, bb)
                    };
                    if degen.apply(&xc) != want {
                        return Err(Error::AxiomFailed {
                            law: "degeneracy pure formula",
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Unit groups of the materialized levels together with the group maps the
/// faces and degeneracies induce on them. Functoriality of the units functor
/// is checked on all composable face pairs.
pub struct UnitsCosimplicial {
    pub groups: Vec<UnitsGroup>,
    pub faces: Vec<Vec<GroupHom>>,
    pub degens: Vec<Vec<GroupHom>>,
}

pub fn units_cosimplicial(cx: &AmitsurComplex) -> Result<UnitsCosimplicial, Error> {
    let stages = cx.face_homs.len();
    let groups: Vec<UnitsGroup> = (0..=stages).map(|n| cx.units_at(n)).collect::<Result<_, _>>()?;
    for u in &groups {
        if !u.group.abelian {
            return Err(Error::NotAbelian);
        }
    }
    let mut faces = Vec::new();
    let mut degens = Vec::new();
    for n in 0..stages {
        let f: Result<Vec<GroupHom>, Error> = cx.face_homs[n]
            .iter()
            .map(|h| units_functor_on_hom(h, &groups[n], &groups[n + 1]))
            .collect();
        let d: Result<Vec<GroupHom>, Error> = cx.degen_homs[n]
            .iter()
            .map(|h| units_functor_on_hom(h, &groups[n + 1], &groups[n]))
            .collect();
        faces.push(f?);
        degens.push(d?);
    }
    // functoriality: the units functor respects face composition
    for n in 0..stages.saturating_sub(1) {
        for (i, fi) in cx.face_homs[n].iter().enumerate() {
            for (j, fj) in cx.face_homs[n + 1].iter().enumerate() {
                let composite = fi.then(fj)?;
                let via_rings = units_functor_on_hom(&composite, &groups[n], &groups[n + 2])?;
                let via_groups = faces[n][i].then(&faces[n + 1][j])?;
                if via_rings.values() != via_groups.values() {
                    return Err(Error::AxiomFailed {
                        law: "units functoriality",
                    });
                }
            }
        }
    }
    Ok(UnitsCosimplicial {
        groups,
        faces,
        degens,
    })
}

/// The coboundary U(level n-1) -> U(level n): the alternating product of the
/// faces, x ↦ ∂₀(x)·∂₁(x)⁻¹·∂₂(x)··· , using caller-supplied unit groups.
pub fn delta_with(
    cx: &AmitsurComplex,
    n: usize,
    u_dom: &UnitsGroup,
    u_cod: &UnitsGroup,
) -> Result<GroupHom, Error> {
    if n == 0 || n > cx.face_homs.len() {
        return Err(Error::InvalidInput(String::from(
            "coboundary stage outside the materialized prefix",
        )));
    }
    let rn = cx.levels[n].ring.as_ref().expect("prefix materialized");
    let mut map = Vec::with_capacity(u_dom.embed.len());
    for &x in &u_dom.embed {
        let mut acc = rn.one;
        for i in 0..=n {
            let mut t = cx.face_homs[n - 1][i].apply(x);
            if i % 2 == 1 {
                t = rn.inverse(t).ok_or(Error::NotInvertible)?;
            }
            acc = rn.mul(acc, t);
        }
        map.push(u_cod.index_of[acc].ok_or(Error::NotInvertible)?);
    }
    GroupHom::new(&u_dom.group, &u_cod.group, map)
}

/// The coboundary with freshly enumerated unit groups.
pub fn delta(cx: &AmitsurComplex, n: usize) -> Result<GroupHom, Error> {
    let u_dom = cx.units_at(n - 1)?;
    let u_cod = cx.units_at(n)?;
    delta_with(cx, n, &u_dom, &u_cod)
}

/// A certified degree-1 cocycle: a unit of level 1 whose middle face is the
/// product of the two outer faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cocycle1 {
    pub elem: usize,
}

impl Cocycle1 {
    pub fn validate(cx: &AmitsurComplex, elem: usize) -> Result<Self, Error> {
        let r1 = cx.levels[1].ring.as_ref().ok_or(Error::BoundExceeded {
            what: "unit enumeration level",
            limit: MATERIALIZE_BOUND,
            got: cx.levels[1].order as usize,
        })?;
        if !r1.is_unit(elem) {
            return Err(Error::NotInvertible);
        }
        if !face_cocycle_holds(cx, elem) {
            return Err(Error::PropertyFailed(String::from(
                "face cocycle relation fails",
            )));
        }
        Ok(Cocycle1 { elem })
    }
}

fn face_cocycle_holds(cx: &AmitsurComplex, x: usize) -> bool {
    let xc = cx.levels[1].coords_of(x);
    let d0 = cx.faces[1][0].apply(&xc);
    let d1 = cx.faces[1][1].apply(&xc);
    let d2 = cx.faces[1][2].apply(&xc);
    cx.levels[2].mul_coords(&d2, &d0) == d1
}

/// All units of level 1 satisfying the cocycle relation, ascending.
pub fn z1(cx: &AmitsurComplex) -> Result<Vec<usize>, Error> {
    if cx.depth() < 2 {
        return Err(Error::InvalidInput(String::from("complex depth below 2")));
    }
    let u1 = cx.units_at(1)?;
    Ok(u1
        .embed
        .iter()
        .copied()
        .filter(|&x| face_cocycle_holds(cx, x))
        .collect())
}

/// Degree-0 cohomology: the equalizer of the two faces on the units of the
/// extension ring, as a subgroup of those units.
pub fn h0(cx: &AmitsurComplex) -> Result<Subgroup, Error> {
    let u0 = cx.units_at(0)?;
    let idx: Vec<usize> = (0..u0.group.order)
        .filter(|&i| {
            let xc = cx.levels[0].coords_of(u0.embed[i]);
            cx.faces[0][0].apply(&xc) == cx.faces[0][1].apply(&xc)
        })
        .collect();
    subgroup_from_elems(&u0.group, &idx)
}

/// A cohomology group in a fixed degree: the class group plus the cocycle and
/// coboundary carriers it came from, all as elements of the cocycle level.
pub struct CohomologySet {
    pub group: FiniteGroup,
    pub invariant_factors: Vec<u64>,
    pub class_reps: Vec<usize>,
    pub cocycles: Vec<usize>,
    pub coboundaries: Vec<usize>,
}

/// ker Δ_{n+1} / im Δ_n on the unit groups. Degree 0 is the face equalizer.
/// The kernel test at the top stage is inversion-free (even face product
/// against odd face product), so the level above the cocycle level may be
/// coordinate-only.
pub fn hn_abelian(cx: &AmitsurComplex, n: usize) -> Result<CohomologySet, Error> {
    if n == 0 {
        let eq = h0(cx)?;
        let u0 = cx.units_at(0)?;
        let factors = invariant_factors(&eq.group)?;
        let elems: Vec<usize> = eq.embed.iter().map(|&i| u0.embed[i]).collect();
        let one = cx.levels[0].ring.as_ref().expect("base materialized").one;
        return Ok(CohomologySet {
            group: eq.group,
            invariant_factors: factors,
            class_reps: elems.clone(),
            cocycles: elems,
            coboundaries: vec![one],
        });
    }
    if n + 1 > cx.depth() {
        return Err(Error::BoundExceeded {
            what: "complex depth",
            limit: cx.depth(),
            got: n + 1,
        });
    }
    let u_prev = cx.units_at(n - 1)?;
    let u_n = cx.units_at(n)?;
    let top = &cx.levels[n + 1];
    let z: Vec<usize> = u_n
        .embed
        .iter()
        .copied()
        .filter(|&x| {
            let xc = cx.levels[n].coords_of(x);
            let mut even = top.one_coords.clone();
            let mut odd = top.one_coords.clone();
            for (i, face) in cx.faces[n].iter().enumerate() {
                let fc = face.apply(&xc);
                if i % 2 == 0 {
                    even = top.mul_coords(&even, &fc);
                } else {
                    odd = top.mul_coords(&odd, &fc);
                }
            }
            even == odd
        })
        .collect();
    let d = delta_with(cx, n, &u_prev, &u_n)?;
    let z_idx: Vec<usize> = z.iter().map(|&x| u_n.index_of[x].expect("cocycles are units")).collect();
    let zs = subgroup_from_elems(&u_n.group, &z_idx)?;
    let b_in_z: Vec<usize> = d
        .image_elems()
        .iter()
        .map(|&ui| {
            zs.embed
                .binary_search(&ui)
                .map_err(|_| Error::AxiomFailed {
                    law: "coboundaries are cocycles",
                })
        })
        .collect::<Result<_, _>>()?;
    let q = quotient_abelian(&zs.group, &b_in_z)?;
    let factors = invariant_factors(&q.group)?;
    let class_reps: Vec<usize> = q.reps.iter().map(|&zi| u_n.embed[zs.embed[zi]]).collect();
    let coboundaries: Vec<usize> = d.image_elems().iter().map(|&ui| u_n.embed[ui]).collect();
    if q.group.order * coboundaries.len() != z.len() {
        return Err(Error::PropertyFailed(String::from(
            "class count times coboundary count misses the cocycle count",
        )));
    }
    Ok(CohomologySet {
        group: q.group,
        invariant_factors: factors,
        class_reps,
        cocycles: z,
        coboundaries,
    })
}

/// Degree-1 cohomology. Beyond the kernel-modulo-image computation this
/// partitions the cocycles into twist orbits x ↦ ∂₁(y)·x·∂₀(y)⁻¹ directly and
/// checks that the orbit count matches the class count.
pub fn h1(cx: &AmitsurComplex) -> Result<CohomologySet, Error> {
    let out = hn_abelian(cx, 1)?;
    let u0 = cx.units_at(0)?;
    let r1 = cx.levels[1].ring.as_ref().expect("prefix materialized");
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut orbits = 0usize;
    for &x in &out.cocycles {
        if seen.contains(&x) {
            continue;
        }
        orbits += 1;
        for &y in &u0.embed {
            let f1y = cx.face_elem(0, 1, y);
            let f0y = cx.face_elem(0, 0, y);
            let f0y_inv = r1.inverse(f0y).ok_or(Error::NotInvertible)?;
            let moved = r1.mul(r1.mul(f1y, x), f0y_inv);
            seen.insert(moved);
        }
    }
    if orbits != out.group.order {
        return Err(Error::PropertyFailed(String::from(
            "twist orbits disagree with the quotient class count",
        )));
    }
    Ok(out)
}

/// True when multiplication by `c` preserves the counit and intertwines the
/// comultiplication of the level-1 coring, i.e. the merged product of `c` is 1
/// and `c` satisfies the face cocycle relation (units not required).
fn is_coring_multiplier(cx: &AmitsurComplex, c: usize) -> bool {
    let one0 = cx.levels[0].ring.as_ref().expect("base materialized").one;
    cx.degen_elem(0, 0, c) == one0 && face_cocycle_holds(cx, c)
}

/// The twist of the first level induced by an automorphism of the extension
/// ring as a module over the base: a⊗a' ↦ λ(a)⊗λ⁻¹(a'). Returned as an
/// element table on level 1; certified to be multiplication by the coboundary
/// value of λ(1) and a coring automorphism.
pub fn kappa(cx: &AmitsurComplex, lam: &[usize]) -> Result<Vec<usize>, Error> {
    let r0 = cx.levels[0].ring.as_ref().expect("base materialized").clone();
    if lam.len() != r0.order {
        return Err(Error::ShapeMismatch);
    }
    let u = lam[r0.one];
    let u_inv = r0.inverse(u).ok_or(Error::NotInvertible)?;
    for x in 0..r0.order {
        if lam[x] != r0.mul(u, x) {
            return Err(Error::NotAHom {
                law: "module automorphism is unit multiplication",
            });
        }
    }
    let r1 = cx.levels[1].ring.as_ref().ok_or(Error::BoundExceeded {
        what: "coring carrier",
        limit: MATERIALIZE_BOUND,
        got: cx.levels[1].order as usize,
    })?;
    let f0u = cx.face_elem(0, 0, u);
    let f1u_inv = r1.inverse(cx.face_elem(0, 1, u)).ok_or(Error::NotInvertible)?;
    let d = r1.mul(f0u, f1u_inv);
    let table: Vec<usize> = (0..r1.order).map(|x| r1.mul(d, x)).collect();
    // independent check of the two-sided twist formula on all pure tensors
    let p1 = &cx.levels[1].tensor().expect("level 1 is a tensor").result.presentation;
    for a in 0..r0.order {
        for a2 in 0..r0.order {
            let src = cx.levels[1].elem_of(&p1.pure_coords(a, a2));
            let dst = cx.levels[1].elem_of(&p1.pure_coords(lam[a], r0.mul(u_inv, a2)));
            if table[src] != dst {
                return Err(Error::AxiomFailed {
                    law: "two-sided twist formula",
                });
            }
        }
    }
    if !is_coring_multiplier(cx, d) || !r1.is_unit(d) {
        return Err(Error::AxiomFailed {
            law: "twist is a coring automorphism",
        });
    }
    Ok(table)
}

/// The canonical coring on the first tensor level of a ring map: carrier
/// A⊗A, comultiplication inserting the unit in the middle slot, counit the
/// multiplication. Counit laws are always certified; coassociativity needs
/// the third level and is reported unverified when that level is out of
/// bounds.
pub struct Coring {
    pub complex: AmitsurComplex,
    pub coassociativity: HypStatus,
}

pub fn coring_of(e: &RingHom) -> Result<Coring, Error> {
    let complex = match build_amitsur(e, 3) {
        Ok(cx) => cx,
        Err(Error::BoundExceeded { .. }) => build_amitsur(e, 2)?,
        Err(other) => return Err(other),
    };
    if complex.levels[1].ring.is_none() {
        return Err(Error::BoundExceeded {
            what: "coring carrier",
            limit: MATERIALIZE_BOUND,
            got: complex.levels[1].order as usize,
        });
    }
    let comult = &complex.faces[1][1];
    let id1 = LinearMap::identity(&complex.levels[1].factors);
    if comult.then(&complex.degens[1][1]) != id1 || comult.then(&complex.degens[1][0]) != id1 {
        return Err(Error::AxiomFailed {
            law: "coring counit law",
        });
    }
    let coassociativity = if complex.depth() >= 3 {
        let lhs = comult.then(&complex.faces[2][2]);
        let rhs = comult.then(&complex.faces[2][1]);
        if lhs != rhs {
            return Err(Error::AxiomFailed {
                law: "coring coassociativity",
            });
        }
        HypStatus::Verified
    } else {
        HypStatus::Unverified
    };
    Ok(Coring {
        complex,
        coassociativity,
    })
}

impl Coring {
    pub fn carrier(&self) -> &RingRef {
        self.complex.levels[1].ring.as_ref().expect("carrier materialized")
    }

    pub fn comultiplication(&self) -> &LinearMap {
        &self.complex.faces[1][1]
    }

    pub fn counit(&self) -> &LinearMap {
        &self.complex.degens[0][0]
    }
}

/// The automorphisms of a coring, each of them multiplication by a carrier
/// element, under composition. Both-sided module endomorphisms of the carrier
/// are exactly the multiplications (the carrier is cyclic over itself and the
/// two slot embeddings generate the whole ring action), so the search space
/// is the carrier.
pub struct CoringAutGroup {
    pub group: FiniteGroup,
    /// automorphism i is multiplication by multipliers[i], ascending
    pub multipliers: Vec<usize>,
    /// index of the identity automorphism
    pub identity: usize,
    pub endomorphism_count: usize,
    /// whether every coring endomorphism found was already invertible
    pub all_endos_invertible: bool,
}

impl CoringAutGroup {
    pub fn index_of_multiplier(&self, c: usize) -> Option<usize> {
        self.multipliers.binary_search(&c).ok()
    }
}

pub fn coring_automorphisms(cor: &Coring) -> Result<CoringAutGroup, Error> {
    let cx = &cor.complex;
    let r1 = cor.carrier().clone();
    if r1.order > FULL_AUDIT_BOUND {
        return Err(Error::BoundExceeded {
            what: "coring carrier",
            limit: FULL_AUDIT_BOUND,
            got: r1.order,
        });
    }
    let endos: Vec<usize> = (0..r1.order).filter(|&c| is_coring_multiplier(cx, c)).collect();
    // elementwise re-verification: counit fixed and comultiplication
    // intertwined by the twisted diagonal, on every carrier element
    for &c in &endos {
        let ccoords = cx.levels[1].coords_of(c);
        let d0c = cx.faces[1][0].apply(&ccoords);
        let d2c = cx.faces[1][2].apply(&ccoords);
        let twist = cx.levels[2].mul_coords(&d0c, &d2c);
        for x in 0..r1.order {
            let moved = r1.mul(c, x);
            if cx.degen_elem(0, 0, moved) != cx.degen_elem(0, 0, x) {
                return Err(Error::AxiomFailed {
                    law: "coring counit compatibility",
                });
            }
            let lhs = cx.faces[1][1].apply(&cx.levels[1].coords_of(moved));
            let rhs = cx
                .levels[2]
                .mul_coords(&twist, &cx.faces[1][1].apply(&cx.levels[1].coords_of(x)));
            if lhs != rhs {
                return Err(Error::AxiomFailed {
                    law: "coring comultiplication compatibility",
                });
            }
        }
    }
    let multipliers: Vec<usize> = endos.iter().copied().filter(|&c| r1.is_unit(c)).collect();
    let all_endos_invertible = multipliers.len() == endos.len();
    let op: Vec<Vec<usize>> = multipliers
        .iter()
        .map(|&c| {
            multipliers
                .iter()
                .map(|&c2| {
                    multipliers
                        .binary_search(&r1.mul(c, c2))
                        .expect("closed under composition")
                })
                .collect()
        })
        .collect();
    let mut group = FiniteGroup::from_table(&op)?;
    group.labels = multipliers.iter().map(|&c| r1.label(c).to_string()).collect();
    let identity = multipliers
        .binary_search(&r1.one)
        .map_err(|_| Error::AxiomFailed {
            law: "identity is a coring automorphism",
        })?;
    Ok(CoringAutGroup {
        group,
        multipliers,
        identity,
        endomorphism_count: endos.len(),
        all_endos_invertible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::are_isomorphic;
    use crate::module::{aut_group, bimodule_via_left, hom_enumerate, FiniteModule};
    use crate::ring::{local_decomposition, mk_galois_field, mk_product, mk_zmod, FiniteRing};
    use alloc::rc::Rc;

    fn rc(r: FiniteRing) -> RingRef {
        Rc::new(r)
    }

    fn f2_to_f4() -> RingHom {
        let f2 = rc(mk_zmod(2).unwrap());
        let f4 = rc(mk_galois_field(2, &[1, 1, 1]).unwrap());
        RingHom::new(&f2, &f4, vec![0, 1]).unwrap()
    }

    fn f3_to_f9() -> RingHom {
        let f3 = rc(mk_zmod(3).unwrap());
        let f9 = rc(mk_galois_field(3, &[1, 0, 1]).unwrap());
        let minus_one = f9.neg(f9.one);
        RingHom::new(&f3, &f9, vec![0, 1, minus_one]).unwrap()
    }

    fn z2_diagonal() -> RingHom {
        let z2 = rc(mk_zmod(2).unwrap());
        let prod = mk_product(&z2, &z2).unwrap();
        prod.diagonal.unwrap()
    }

    #[test]
    fn level_tower_for_the_quartic_field() {
        let cx = build_amitsur(&f2_to_f4(), 3).unwrap();
        let orders: Vec<u64> = cx.levels.iter().map(|l| l.order).collect();
        assert_eq!(orders, vec![4, 16, 256, 65536]);
        let slots: Vec<usize> = cx.levels.iter().map(|l| l.slots).collect();
        assert_eq!(slots, vec![1, 2, 3, 4]);
        let mats: Vec<bool> = cx.levels.iter().map(|l| l.is_materialized()).collect();
        assert_eq!(mats, vec![true, true, true, false]);
        assert_eq!(cx.faces.iter().map(|f| f.len()).collect::<Vec<_>>(), vec![2, 3, 4]);
        assert_eq!(cx.degens.iter().map(|d| d.len()).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(cx.face_homs.len(), 2);
        cx.verify_simplicial().unwrap();
    }

    #[test]
    fn first_level_splits_into_two_quartic_fields() {
        let cx = build_amitsur(&f2_to_f4(), 2).unwrap();
        let r1 = cx.levels[1].ring.clone().unwrap();
        let dec = local_decomposition(&r1).unwrap();
        assert_eq!(dec.factors.len(), 2);
        for f in &dec.factors {
            assert_eq!(f.ring.order, 4);
            assert_eq!(units(&f.ring).unwrap().group.order, 3);
        }
        assert_eq!(cx.units_at(1).unwrap().group.order, 9);
    }

    #[test]
    fn identity_extension_has_equal_faces_and_full_h0() {
        let f4 = rc(mk_galois_field(2, &[1, 1, 1]).unwrap());
        let cx = build_amitsur(&RingHom::identity(&f4), 2).unwrap();
        for level in &cx.levels {
            assert_eq!(level.order, 4);
        }
        assert_eq!(cx.faces[0][0], cx.faces[0][1]);
        let eq = h0(&cx).unwrap();
        assert_eq!(eq.group.order, 3);
        assert_eq!(invariant_factors(&eq.group).unwrap(), vec![3]);
        assert_eq!(h1(&cx).unwrap().group.order, 1);
    }

    #[test]
    fn diagonal_extension_levels_and_units() {
        let cx = build_amitsur(&z2_diagonal(), 3).unwrap();
        let orders: Vec<u64> = cx.levels.iter().map(|l| l.order).collect();
        assert_eq!(orders, vec![4, 16, 256, 65536]);
        assert!(cx.levels[..3].iter().all(|l| l.is_materialized()));
        assert!(!cx.levels[3].is_materialized());
        // the unit group of (Z/2)^4 is trivial
        assert_eq!(cx.units_at(1).unwrap().group.order, 1);
        assert_eq!(z1(&cx).unwrap().len(), 1);
        assert_eq!(h1(&cx).unwrap().group.order, 1);
    }

    #[test]
    fn simplicial_identities_hold_in_all_three_towers() {
        build_amitsur(&f2_to_f4(), 3).unwrap().verify_simplicial().unwrap();
        build_amitsur(&f3_to_f9(), 2).unwrap().verify_simplicial().unwrap();
        build_amitsur(&z2_diagonal(), 3).unwrap().verify_simplicial().unwrap();
    }

    #[test]
    fn degeneracy_collapses_both_unit_insertions() {
        let cx = build_amitsur(&f2_to_f4(), 2).unwrap();
        let id0 = LinearMap::identity(&cx.levels[0].factors);
        assert_eq!(cx.faces[0][0].then(&cx.degens[0][0]), id0);
        assert_eq!(cx.faces[0][1].then(&cx.degens[0][0]), id0);
    }

    #[test]
    fn build_rejects_noncommutative_extensions() {
        // upper triangular 2x2 matrices over F2, elements (a, b, d) = a*4 + b*2 + d
        let unpack = |x: usize| (x >> 2 & 1, x >> 1 & 1, x & 1);
        let pack = |a: usize, b: usize, d: usize| (a << 2) | (b << 1) | d;
        let mut add = vec![vec![0usize; 8]; 8];
        let mut mul = vec![vec![0usize; 8]; 8];
        for x in 0..8 {
            for y in 0..8 {
                let (a, b, d) = unpack(x);
                let (a2, b2, d2) = unpack(y);
                add[x][y] = pack(a ^ a2, b ^ b2, d ^ d2);
                mul[x][y] = pack(a & a2, (a & b2) ^ (b & d2), d & d2);
            }
        }
        let tri = rc(FiniteRing::from_tables(&add, &mul).unwrap());
        assert!(!tri.commutative);
        let z2 = rc(mk_zmod(2).unwrap());
        let incl = RingHom::new(&z2, &tri, vec![0, pack(1, 0, 1)]).unwrap();
        assert!(matches!(
            build_amitsur(&incl, 2),
            Err(Error::NotCommutative)
        ));
    }

    #[test]
    fn build_depth_bounds() {
        let iota = f2_to_f4();
        assert!(matches!(build_amitsur(&iota, 1), Err(Error::InvalidInput(_))));
        assert!(matches!(
            build_amitsur(&iota, 4),
            Err(Error::BoundExceeded { .. })
        ));
        // the 6561-element fourth level of the cubic tower exceeds the pair bound
        assert!(matches!(
            build_amitsur(&f3_to_f9(), 3),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn delta_one_is_the_two_sided_unit_comparison() {
        let cx = build_amitsur(&f2_to_f4(), 2).unwrap();
        let u0 = cx.units_at(0).unwrap();
        let u1 = cx.units_at(1).unwrap();
        let d1 = delta_with(&cx, 1, &u0, &u1).unwrap();
        let r0 = cx.levels[0].ring.clone().unwrap();
        let p1 = &cx.levels[1].tensor().unwrap().result.presentation;
        for &u in &u0.embed {
            let want = cx.levels[1].elem_of(&p1.pure_coords(u, r0.inverse(u).unwrap()));
            let got = u1.embed[d1.apply(u0.index_of[u].unwrap())];
            assert_eq!(got, want);
        }
    }

    #[test]
    fn composite_coboundaries_vanish() {
        // the cubic tower's third level is coordinate-only, so the composite
        // is checkable only where two unit-group stages materialize
        for iota in [f2_to_f4(), z2_diagonal()] {
            let cx = build_amitsur(&iota, 2).unwrap();
            let uc = units_cosimplicial(&cx).unwrap();
            let d1 = delta_with(&cx, 1, &uc.groups[0], &uc.groups[1]).unwrap();
            let d2 = delta_with(&cx, 2, &uc.groups[1], &uc.groups[2]).unwrap();
            let comp = d1.then(&d2).unwrap();
            assert!(comp.values().iter().all(|&v| v == uc.groups[2].group.identity));
        }
    }

    #[test]
    fn cocycle_counts_for_the_three_extensions() {
        let cx4 = build_amitsur(&f2_to_f4(), 2).unwrap();
        assert_eq!(z1(&cx4).unwrap().len(), 3);
        let cx9 = build_amitsur(&f3_to_f9(), 2).unwrap();
        assert_eq!(z1(&cx9).unwrap().len(), 4);
        let cxd = build_amitsur(&z2_diagonal(), 2).unwrap();
        assert_eq!(z1(&cxd).unwrap().len(), 1);
    }

    #[test]
    fn degree_one_cohomology_is_trivial_for_all_three() {
        for iota in [f2_to_f4(), f3_to_f9(), z2_diagonal()] {
            let cx = build_amitsur(&iota, 2).unwrap();
            let h = h1(&cx).unwrap();
            assert_eq!(h.group.order, 1);
            assert_eq!(h.invariant_factors, Vec::<u64>::new());
            // class count times coboundary count covers the cocycles
            assert_eq!(h.coboundaries.len(), h.cocycles.len());
        }
    }

    #[test]
    fn degree_zero_values() {
        let cx4 = build_amitsur(&f2_to_f4(), 2).unwrap();
        assert_eq!(h0(&cx4).unwrap().group.order, 1);
        let cx9 = build_amitsur(&f3_to_f9(), 2).unwrap();
        assert_eq!(h0(&cx9).unwrap().group.order, 2);
        let cxd = build_amitsur(&z2_diagonal(), 2).unwrap();
        assert_eq!(h0(&cxd).unwrap().group.order, 1);
    }

    #[test]
    fn general_degree_agrees_and_degree_two_vanishes() {
        let cx = build_amitsur(&f2_to_f4(), 3).unwrap();
        let h_one = hn_abelian(&cx, 1).unwrap();
        assert_eq!(h_one.group.order, h1(&cx).unwrap().group.order);
        assert_eq!(hn_abelian(&cx, 0).unwrap().group.order, 1);
        // the norm map of the quartic field is onto the base units, so degree
        // two must vanish as well
        let h_two = hn_abelian(&cx, 2).unwrap();
        assert_eq!(h_two.group.order, 1);
        // the cubic tower stops at depth 2, so degree two is out of reach
        let cx9 = build_amitsur(&f3_to_f9(), 2).unwrap();
        assert!(matches!(
            hn_abelian(&cx9, 2),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn cocycle_validation_accepts_and_rejects() {
        let cx = build_amitsur(&f2_to_f4(), 2).unwrap();
        let zs = z1(&cx).unwrap();
        for &x in &zs {
            assert_eq!(Cocycle1::validate(&cx, x).unwrap().elem, x);
        }
        let u1 = cx.units_at(1).unwrap();
        let non_cocycle = u1
            .embed
            .iter()
            .copied()
            .find(|x| !zs.contains(x))
            .expect("nine units, three cocycles");
        assert!(matches!(
            Cocycle1::validate(&cx, non_cocycle),
            Err(Error::PropertyFailed(_))
        ));
        let r1 = cx.levels[1].ring.clone().unwrap();
        assert!(matches!(
            Cocycle1::validate(&cx, r1.zero),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn units_cosimplicial_functoriality_and_orders() {
        let cx = build_amitsur(&f2_to_f4(), 3).unwrap();
        let uc = units_cosimplicial(&cx).unwrap();
        let orders: Vec<usize> = uc.groups.iter().map(|u| u.group.order).collect();
        assert_eq!(orders, vec![3, 9, 81]);
        assert_eq!(uc.faces[0].len(), 2);
        assert_eq!(uc.degens[1].len(), 2);
    }

    #[test]
    fn twist_matches_the_coboundary_on_every_module_automorphism() {
        let e = f2_to_f4();
        let cx = build_amitsur(&e, 2).unwrap();
        let module = bimodule_via_left(&e.cod, &e).unwrap();
        let (auts, maps) = aut_group(&module).unwrap();
        assert_eq!(auts.order, 3);
        let u0 = cx.units_at(0).unwrap();
        let u1 = cx.units_at(1).unwrap();
        let d1 = delta_with(&cx, 1, &u0, &u1).unwrap();
        let r1 = cx.levels[1].ring.clone().unwrap();
        for mm in &maps {
            let k = kappa(&cx, &mm.map).unwrap();
            let lam_one = mm.map[e.cod.one];
            let d = u1.embed[d1.apply(u0.index_of[lam_one].unwrap())];
            let mult_table: Vec<usize> = (0..r1.order).map(|x| r1.mul(d, x)).collect();
            assert_eq!(k, mult_table);
        }
        // multiplicativity of the twist across all automorphism pairs
        for ma in &maps {
            for mb in &maps {
                let composed: Vec<usize> = (0..module.order).map(|x| mb.map[ma.map[x]]).collect();
                let lhs = kappa(&cx, &composed).unwrap();
                let ka = kappa(&cx, &ma.map).unwrap();
                let kb = kappa(&cx, &mb.map).unwrap();
                let rhs: Vec<usize> = (0..r1.order).map(|x| kb[ka[x]]).collect();
                assert_eq!(lhs, rhs);
            }
        }
        // the twist by multiplication-by-generator has order three
        let gen_map = maps
            .iter()
            .find(|mm| mm.map[e.cod.one] == 2)
            .expect("multiplication by the generator is an automorphism");
        let k = kappa(&cx, &gen_map.map).unwrap();
        let k2: Vec<usize> = (0..r1.order).map(|x| k[k[x]]).collect();
        let k3: Vec<usize> = (0..r1.order).map(|x| k[k2[x]]).collect();
        let id: Vec<usize> = (0..r1.order).collect();
        assert_ne!(k, id);
        assert_ne!(k2, id);
        assert_eq!(k3, id);
    }

    #[test]
    fn coring_certification_and_coassociativity_status() {
        let quartic = coring_of(&f2_to_f4()).unwrap();
        assert_eq!(quartic.coassociativity, HypStatus::Verified);
        assert_eq!(quartic.carrier().order, 16);
        // the cubic coring cannot reach the third level, so coassociativity
        // stays an unverified hypothesis there
        let cubic = coring_of(&f3_to_f9()).unwrap();
        assert_eq!(cubic.coassociativity, HypStatus::Unverified);
        assert_eq!(cubic.carrier().order, 81);
        let diag = coring_of(&z2_diagonal()).unwrap();
        assert_eq!(diag.coassociativity, HypStatus::Verified);
    }

    #[test]
    fn coring_automorphism_groups() {
        let quartic = coring_automorphisms(&coring_of(&f2_to_f4()).unwrap()).unwrap();
        assert_eq!(quartic.group.order, 3);
        assert_eq!(quartic.endomorphism_count, 3);
        assert!(quartic.all_endos_invertible);
        assert_eq!(invariant_factors(&quartic.group).unwrap(), vec![3]);
        let cubic = coring_automorphisms(&coring_of(&f3_to_f9()).unwrap()).unwrap();
        assert_eq!(cubic.group.order, 4);
        assert!(cubic.all_endos_invertible);
        assert_eq!(invariant_factors(&cubic.group).unwrap(), vec![4]);
        let diag = coring_automorphisms(&coring_of(&z2_diagonal()).unwrap()).unwrap();
        assert_eq!(diag.group.order, 1);
        // degenerate base: the coring of an identity map is trivial
        let f2 = rc(mk_zmod(2).unwrap());
        let trivial = coring_automorphisms(&coring_of(&RingHom::identity(&f2)).unwrap()).unwrap();
        assert_eq!(trivial.group.order, 1);
        assert_eq!(trivial.endomorphism_count, 1);
    }

    #[test]
    fn the_twist_lands_in_the_coring_automorphisms_onto() {
        let e = f3_to_f9();
        let cor = coring_of(&e).unwrap();
        let auts = coring_automorphisms(&cor).unwrap();
        let cx = &cor.complex;
        let module = bimodule_via_left(&e.cod, &e).unwrap();
        let (_, maps) = aut_group(&module).unwrap();
        assert_eq!(maps.len(), 8);
        let mut hit: BTreeSet<usize> = BTreeSet::new();
        for mm in &maps {
            let k = kappa(cx, &mm.map).unwrap();
            let c = k[cor.carrier().one];
            let idx = auts.index_of_multiplier(c).expect("twist is an automorphism");
            hit.insert(idx);
        }
        // kernel {1, -1} of the twist leaves an image of order four: the whole group
        assert_eq!(hit.len(), 4);
        assert_eq!(auts.group.order, 4);
    }

    #[test]
    fn carrier_bimodule_endomorphisms_are_multiplications() {
        let e = f2_to_f4();
        let cor = coring_of(&e).unwrap();
        let cx = &cor.complex;
        let r1 = cor.carrier().clone();
        let a = e.cod.clone();
        let add: Vec<Vec<usize>> = (0..r1.order)
            .map(|x| (0..r1.order).map(|y| r1.add(x, y)).collect())
            .collect();
        let left: Vec<Vec<usize>> = (0..a.order)
            .map(|s| (0..r1.order).map(|x| r1.mul(cx.face_elem(0, 0, s), x)).collect())
            .collect();
        let right: Vec<Vec<usize>> = (0..a.order)
            .map(|s| (0..r1.order).map(|x| r1.mul(cx.face_elem(0, 1, s), x)).collect())
            .collect();
        let m = FiniteModule::from_parts(&add, Some((a.clone(), left)), Some((a, right)), None)
            .unwrap();
        let homs = hom_enumerate(&m, &m).unwrap();
        assert_eq!(homs.len(), 16);
        for h in &homs {
            let c = h.map[r1.one];
            let mult: Vec<usize> = (0..r1.order).map(|x| r1.mul(c, x)).collect();
            assert_eq!(h.map, mult);
        }
    }

    #[test]
    fn quartic_and_cubic_coring_groups_are_cyclic() {
        let quartic = coring_automorphisms(&coring_of(&f2_to_f4()).unwrap()).unwrap();
        let c3 = FiniteGroup::cyclic(3);
        assert!(are_isomorphic(&quartic.group, &c3).unwrap().is_some());
        let cubic = coring_automorphisms(&coring_of(&f3_to_f9()).unwrap()).unwrap();
        let c4 = FiniteGroup::cyclic(4);
        assert!(are_isomorphic(&cubic.group, &c4).unwrap().is_some());
    }
}
