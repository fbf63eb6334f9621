//! Finite-dimensional cocommutative coalgebras over table-described fields,
//! their comodules and cotensor products, the simplicial tower of a coalgebra
//! morphism with the induced maps on comodule automorphism groups, degree-one
//! cohomology, and the resulting Hilbert 90 verdict.
//!
//! Linear maps are stored row-per-domain-basis-vector, so composing "f then g"
//! is the ordinary matrix product f * g. Subspaces carry a basis together with
//! extraction columns, one column per basis vector where only that vector is
//! nonzero, which turns coordinate computations into lookups.

use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::{FiniteGroup, HypStatus, Hypothesis};
use crate::linalg::kernel_basis_field;
use crate::ring::{FiniteRing, RingRef};
use crate::TABLE_BOUND;

/// Enumeration cap for solution spaces of linear constraint systems.
const ENUM_BOUND: usize = 1 << 16;
/// Ambient dimension cap for tower levels.
const LEVEL_BOUND: usize = 256;

pub type CoalgRef = Rc<FiniteCoalgebra>;

fn check_field(ring: &FiniteRing) -> Result<(), Error> {
    if !ring.commutative || ring.order < 2 {
        return Err(Error::NotAField);
    }
    for x in 0..ring.order {
        if x != ring.zero && ring.inverse(x).is_none() {
            return Err(Error::NotAField);
        }
    }
    Ok(())
}

fn mat_identity(f: &FiniteRing, n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| {
            let mut row = vec![f.zero; n];
            row[i] = f.one;
            row
        })
        .collect()
}

fn mat_mul(f: &FiniteRing, a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![f.zero; cols];
            for (j, &v) in row.iter().enumerate() {
                if v == f.zero {
                    continue;
                }
                for (k, &w) in b[j].iter().enumerate() {
                    if w != f.zero {
                        out[k] = f.add(out[k], f.mul(v, w));
                    }
                }
            }
            out
        })
        .collect()
}

fn mat_invert(f: &FiniteRing, a: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = a.len();
    let mut work: Vec<Vec<usize>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one } else { f.zero }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| work[i][col] != f.zero)?;
        work.swap(col, piv);
        let inv = f.inverse(work[col][col])?;
        for j in 0..2 * n {
            work[col][j] = f.mul(inv, work[col][j]);
        }
        for i in 0..n {
            if i == col || work[i][col] == f.zero {
                continue;
            }
            let factor = work[i][col];
            for j in 0..2 * n {
                let sub = f.mul(factor, work[col][j]);
                work[i][j] = f.add(work[i][j], f.neg(sub));
            }
        }
    }
    Some(work.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Per basis vector, a column where it is one and every other basis vector is
/// zero. The kernel bases produced by elimination always have this shape.
fn extraction_columns(f: &FiniteRing, basis: &[Vec<usize>]) -> Result<Vec<usize>, Error> {
    let mut out = Vec::with_capacity(basis.len());
    for (k, b) in basis.iter().enumerate() {
        let col = (0..b.len())
            .find(|&c| {
                b[c] == f.one
                    && basis
                        .iter()
                        .enumerate()
                        .all(|(j, other)| j == k || other[c] == f.zero)
            })
            .ok_or(Error::AxiomFailed {
                law: "subspace basis extraction",
            })?;
        out.push(col);
    }
    Ok(out)
}

fn express(
    f: &FiniteRing,
    basis: &[Vec<usize>],
    ext: &[usize],
    w: &[usize],
) -> Option<Vec<usize>> {
    let coords: Vec<usize> = ext.iter().map(|&c| w[c]).collect();
    let mut recon = vec![f.zero; w.len()];
    for (k, &c) in coords.iter().enumerate() {
        if c == f.zero {
            continue;
        }
        for (i, &b) in basis[k].iter().enumerate() {
            if b != f.zero {
                recon[i] = f.add(recon[i], f.mul(c, b));
            }
        }
    }
    (recon == w).then_some(coords)
}

/// Solves the inhomogeneous system "x * rows = rhs-shaped constraints" given as
/// equation rows over the unknowns; returns a particular solution and a basis
/// of the homogeneous space.
fn solve_affine(
    f: &FiniteRing,
    equations: &[Vec<usize>],
    rhs: &[usize],
) -> Result<Option<(Vec<usize>, Vec<Vec<usize>>)>, Error> {
    let unknowns = equations.first().map_or(0, Vec::len);
    let augmented: Vec<Vec<usize>> = equations
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(f.neg(b));
            r
        })
        .collect();
    let kernel = kernel_basis_field(f, &augmented)?;
    let mut particular = None;
    let mut homogeneous = Vec::new();
    for v in kernel {
        let t = v[unknowns];
        if t == f.zero {
            homogeneous.push(v[..unknowns].to_vec());
        } else if particular.is_none() {
            let scale = f.inverse(t).ok_or(Error::NotAField)?;
            particular = Some(v[..unknowns].iter().map(|&e| f.mul(scale, e)).collect());
        } else {
            // fold extra affine directions back into the homogeneous part
            let scale = f.inverse(t).ok_or(Error::NotAField)?;
            let scaled: Vec<usize> = v[..unknowns].iter().map(|&e| f.mul(scale, e)).collect();
            let part: &Vec<usize> = particular.as_ref().expect("set above");
            let diff: Vec<usize> = scaled
                .iter()
                .zip(part)
                .map(|(&a, &b)| f.add(a, f.neg(b)))
                .collect();
            homogeneous.push(diff);
        }
    }
    if rhs.iter().all(|&b| b == f.zero) && particular.is_none() {
        particular = Some(vec![f.zero; unknowns]);
    }
    Ok(particular.map(|p| (p, homogeneous)))
}

fn enumerate_span(
    f: &FiniteRing,
    particular: &[usize],
    basis: &[Vec<usize>],
    cap: usize,
) -> Result<Vec<Vec<usize>>, Error> {
    let count = (f.order as u128).checked_pow(basis.len() as u32);
    match count {
        Some(c) if c <= cap as u128 => {}
        _ => {
            return Err(Error::BoundExceeded {
                what: "solution space enumeration",
                limit: cap,
                got: count.map_or(usize::MAX, |c| c.min(usize::MAX as u128) as usize),
            })
        }
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; basis.len()];
    loop {
        let mut v = particular.to_vec();
        for (k, &c) in pick.iter().enumerate() {
            if c == f.zero {
                continue;
            }
            for (i, &b) in basis[k].iter().enumerate() {
                if b != f.zero {
                    v[i] = f.add(v[i], f.mul(c, b));
                }
            }
        }
        out.push(v);
        let mut pos = pick.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < f.order {
                break;
            }
            pick[pos] = 0;
        }
    }
}

/// A coassociative counital coalgebra over a finite field, stored as dense
/// tables: `delta` has one row per basis vector giving the coordinates of its
/// comultiplication in the tensor-square basis (first factor major), `counit`
/// is the row of counit values. The cocommutativity flag is computed, never
/// trusted from input.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteCoalgebra {
    pub field: RingRef,
    pub dim: usize,
    pub delta: Vec<Vec<usize>>,
    pub counit: Vec<usize>,
    pub cocommutative: bool,
}

impl FiniteCoalgebra {
    pub fn new(field: &RingRef, delta: Vec<Vec<usize>>, counit: Vec<usize>) -> Result<Self, Error> {
        check_field(field)?;
        let d = delta.len();
        if counit.len() != d || delta.iter().any(|r| r.len() != d * d) {
            return Err(Error::ShapeMismatch);
        }
        let f = &**field;
        // coassociativity, computed sparsely into a reusable buffer
        let mut left = vec![f.zero; d * d * d];
        let mut right = vec![f.zero; d * d * d];
        for x in 0..d {
            for e in &mut left {
                *e = f.zero;
            }
            for e in &mut right {
                *e = f.zero;
            }
            for a in 0..d {
                for b in 0..d {
                    let c = delta[x][a * d + b];
                    if c == f.zero {
                        continue;
                    }
                    for u in 0..d {
                        for v in 0..d {
                            let da = delta[a][u * d + v];
                            if da != f.zero {
                                let idx = (u * d + v) * d + b;
                                left[idx] = f.add(left[idx], f.mul(c, da));
                            }
                            let db = delta[b][u * d + v];
                            if db != f.zero {
                                let idx = (a * d + u) * d + v;
                                right[idx] = f.add(right[idx], f.mul(c, db));
                            }
                        }
                    }
                }
            }
            if left != right {
                return Err(Error::AxiomFailed {
                    law: "coassociativity",
                });
            }
            // counit laws on the same row
            let mut lhs = vec![f.zero; d];
            let mut rhs = vec![f.zero; d];
            for a in 0..d {
                for b in 0..d {
                    let c = delta[x][a * d + b];
                    if c == f.zero {
                        continue;
                    }
                    lhs[b] = f.add(lhs[b], f.mul(c, counit[a]));
                    rhs[a] = f.add(rhs[a], f.mul(c, counit[b]));
                }
            }
            let mut unit = vec![f.zero; d];
            unit[x] = f.one;
            if lhs != unit || rhs != unit {
                return Err(Error::AxiomFailed { law: "counit law" });
            }
        }
        let cocommutative = (0..d).all(|x| {
            (0..d).all(|a| (0..d).all(|b| delta[x][a * d + b] == delta[x][b * d + a]))
        });
        Ok(FiniteCoalgebra {
            field: field.clone(),
            dim: d,
            delta,
            counit,
            cocommutative,
        })
    }

    /// True when every basis vector is group-like: delta duplicates it and the
    /// counit sends it to one.
    pub fn is_grouplike(&self) -> bool {
        let f = &*self.field;
        (0..self.dim).all(|x| {
            self.counit[x] == f.one
                && (0..self.dim).all(|a| {
                    (0..self.dim).all(|b| {
                        let expect = if a == x && b == x { f.one } else { f.zero };
                        self.delta[x][a * self.dim + b] == expect
                    })
                })
        })
    }
}

/// The coalgebra spanned by a finite set of group-like elements.
pub fn grouplike_coalgebra(n: usize, field: &RingRef) -> Result<FiniteCoalgebra, Error> {
    if n.saturating_mul(field.order) > TABLE_BOUND {
        return Err(Error::BoundExceeded {
            what: "group-like carrier",
            limit: TABLE_BOUND,
            got: n.saturating_mul(field.order),
        });
    }
    let f = &**field;
    let delta = (0..n)
        .map(|x| {
            let mut row = vec![f.zero; n * n];
            row[x * n + x] = f.one;
            row
        })
        .collect();
    FiniteCoalgebra::new(field, delta, vec![f.one; n])
}

/// A linear map between coalgebras compatible with comultiplication and
/// counit, audited at construction.
#[derive(Debug, Clone)]
pub struct CoalgebraMorphism {
    pub source: CoalgRef,
    pub target: CoalgRef,
    pub matrix: Vec<Vec<usize>>,
}

impl CoalgebraMorphism {
    pub fn new(
        source: &CoalgRef,
        target: &CoalgRef,
        matrix: Vec<Vec<usize>>,
    ) -> Result<Self, Error> {
        if *source.field != *target.field {
            return Err(Error::RingMismatch);
        }
        let f = &*source.field;
        let (ds, dt) = (source.dim, target.dim);
        if matrix.len() != ds || matrix.iter().any(|r| r.len() != dt) {
            return Err(Error::ShapeMismatch);
        }
        for x in 0..ds {
            // (phi (x) phi) . delta_source versus delta_target . phi
            let mut lhs = vec![f.zero; dt * dt];
            for a in 0..ds {
                for b in 0..ds {
                    let c = source.delta[x][a * ds + b];
                    if c == f.zero {
                        continue;
                    }
                    for u in 0..dt {
                        if matrix[a][u] == f.zero {
                            continue;
                        }
                        let cu = f.mul(c, matrix[a][u]);
                        for v in 0..dt {
                            if matrix[b][v] != f.zero {
                                lhs[u * dt + v] = f.add(lhs[u * dt + v], f.mul(cu, matrix[b][v]));
                            }
                        }
                    }
                }
            }
            let mut rhs = vec![f.zero; dt * dt];
            for y in 0..dt {
                let c = matrix[x][y];
                if c == f.zero {
                    continue;
                }
                for idx in 0..dt * dt {
                    if target.delta[y][idx] != f.zero {
                        rhs[idx] = f.add(rhs[idx], f.mul(c, target.delta[y][idx]));
                    }
                }
            }
            if lhs != rhs {
                return Err(Error::NotAHom {
                    law: "comultiplication compatibility",
                });
            }
            let mut eps = f.zero;
            for y in 0..dt {
                eps = f.add(eps, f.mul(matrix[x][y], target.counit[y]));
            }
            if eps != source.counit[x] {
                return Err(Error::NotAHom {
                    law: "counit compatibility",
                });
            }
        }
        Ok(CoalgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix,
        })
    }

    pub fn identity(c: &CoalgRef) -> Self {
        CoalgebraMorphism {
            source: c.clone(),
            target: c.clone(),
            matrix: mat_identity(&c.field, c.dim),
        }
    }

    /// Applies `self` first, then `other`.
    pub fn then(&self, other: &CoalgebraMorphism) -> Result<CoalgebraMorphism, Error> {
        if *self.target != *other.source {
            return Err(Error::NotComposable);
        }
        CoalgebraMorphism::new(
            &self.source,
            &other.target,
            mat_mul(&self.source.field, &self.matrix, &other.matrix),
        )
    }

    pub fn is_surjective(&self) -> bool {
        crate::linalg::rank_field(&self.source.field, &self.matrix)
            .map_or(false, |r| r == self.target.dim)
    }

    pub fn is_injective(&self) -> bool {
        crate::linalg::rank_field(&self.source.field, &self.matrix)
            .map_or(false, |r| r == self.source.dim)
    }
}

/// The morphism of group-like coalgebras induced by a map of their defining
/// sets.
pub fn grouplike_morphism(
    source: &CoalgRef,
    target: &CoalgRef,
    map: &[usize],
) -> Result<CoalgebraMorphism, Error> {
    if map.len() != source.dim || map.iter().any(|&y| y >= target.dim) {
        return Err(Error::ShapeMismatch);
    }
    let f = &*source.field;
    let matrix = map
        .iter()
        .map(|&y| {
            let mut row = vec![f.zero; target.dim];
            row[y] = f.one;
            row
        })
        .collect();
    CoalgebraMorphism::new(source, target, matrix)
}

/// A right comodule: a space with a coaction into itself tensor the
/// coalgebra, audited for the comodule laws.
#[derive(Debug, Clone)]
pub struct Comodule {
    pub coalgebra: CoalgRef,
    pub dim: usize,
    /// one row per basis vector, columns indexed (space, coalgebra)
    pub coaction: Vec<Vec<usize>>,
}

impl Comodule {
    pub fn new(coalgebra: &CoalgRef, coaction: Vec<Vec<usize>>) -> Result<Self, Error> {
        let d = coalgebra.dim;
        let f = &*coalgebra.field;
        let n = coaction.len();
        if coaction.iter().any(|r| r.len() != n * d) {
            return Err(Error::ShapeMismatch);
        }
        for x in 0..n {
            // comodule coassociativity into (space, coalgebra, coalgebra)
            let mut lhs = vec![f.zero; n * d * d];
            let mut rhs = vec![f.zero; n * d * d];
            for v in 0..n {
                for c in 0..d {
                    let co = coaction[x][v * d + c];
                    if co == f.zero {
                        continue;
                    }
                    for a in 0..d {
                        for b in 0..d {
                            let dc = coalgebra.delta[c][a * d + b];
                            if dc != f.zero {
                                let idx = (v * d + a) * d + b;
                                rhs[idx] = f.add(rhs[idx], f.mul(co, dc));
                            }
                        }
                    }
                    for w in 0..n {
                        for a in 0..d {
                            let cv = coaction[v][w * d + a];
                            if cv != f.zero {
                                let idx = (w * d + a) * d + c;
                                lhs[idx] = f.add(lhs[idx], f.mul(co, cv));
                            }
                        }
                    }
                }
            }
            if lhs != rhs {
                return Err(Error::AxiomFailed {
                    law: "comodule coassociativity",
                });
            }
            let mut unit = vec![f.zero; n];
            for v in 0..n {
                for c in 0..d {
                    let co = coaction[x][v * d + c];
                    if co != f.zero {
                        unit[v] = f.add(unit[v], f.mul(co, coalgebra.counit[c]));
                    }
                }
            }
            let mut expect = vec![f.zero; n];
            expect[x] = f.one;
            if unit != expect {
                return Err(Error::AxiomFailed {
                    law: "comodule counit law",
                });
            }
        }
        Ok(Comodule {
            coalgebra: coalgebra.clone(),
            dim: n,
            coaction,
        })
    }

    /// The coalgebra coacting on itself by comultiplication.
    pub fn regular(c: &CoalgRef) -> Self {
        Comodule {
            coalgebra: c.clone(),
            dim: c.dim,
            coaction: c.delta.clone(),
        }
    }

    pub fn zero(c: &CoalgRef) -> Self {
        Comodule {
            coalgebra: c.clone(),
            dim: 0,
            coaction: Vec::new(),
        }
    }
}

/// The comodule over a group-like coalgebra whose k-th basis vector sits in
/// the grade named by `grades[k]`.
pub fn graded_comodule(c: &CoalgRef, grades: &[usize]) -> Result<Comodule, Error> {
    if !c.is_grouplike() {
        return Err(Error::InvalidInput(String::from(
            "grades require a group-like coalgebra",
        )));
    }
    if grades.iter().any(|&g| g >= c.dim) {
        return Err(Error::ShapeMismatch);
    }
    let f = &*c.field;
    let n = grades.len();
    let coaction = (0..n)
        .map(|k| {
            let mut row = vec![f.zero; n * c.dim];
            row[k * c.dim + grades[k]] = f.one;
            row
        })
        .collect();
    Comodule::new(c, coaction)
}

/// Reads a comodule along a morphism: the same space, coacting through the
/// morphism on the target coalgebra.
pub fn corestrict(phi: &CoalgebraMorphism, x: &Comodule) -> Result<Comodule, Error> {
    if *x.coalgebra != *phi.source {
        return Err(Error::ShapeMismatch);
    }
    let f = &*phi.source.field;
    let (ds, dt) = (phi.source.dim, phi.target.dim);
    let coaction = x
        .coaction
        .iter()
        .map(|row| {
            let mut out = vec![f.zero; x.dim * dt];
            for v in 0..x.dim {
                for j in 0..ds {
                    let c = row[v * ds + j];
                    if c == f.zero {
                        continue;
                    }
                    for (y, &m) in phi.matrix[j].iter().enumerate() {
                        if m != f.zero {
                            out[v * dt + y] = f.add(out[v * dt + y], f.mul(c, m));
                        }
                    }
                }
            }
            out
        })
        .collect();
    Comodule::new(&phi.target, coaction)
}

/// A subspace of a tensor product cut out as the kernel of the coaction
/// comparison, with extraction columns for coordinate lookups.
#[derive(Debug, Clone)]
pub struct CotensorSpace {
    pub dim: usize,
    /// basis vectors in the ambient tensor product, left factor major
    pub basis: Vec<Vec<usize>>,
    pub extraction: Vec<usize>,
    pub left_dim: usize,
    pub right_dim: usize,
}

/// The cotensor product of two comodules over the same cocommutative
/// coalgebra: the kernel of right-coaction-minus-left-coaction, computed by
/// field elimination. The second comodule enters through its left coaction,
/// obtained from the right one by the symmetry.
pub fn cotensor(x: &Comodule, y: &Comodule) -> Result<CotensorSpace, Error> {
    if *x.coalgebra != *y.coalgebra {
        return Err(Error::ShapeMismatch);
    }
    if !x.coalgebra.cocommutative {
        return Err(Error::NotCocommutative);
    }
    if x.dim * y.dim > TABLE_BOUND {
        return Err(Error::DimensionBound);
    }
    let f = &*x.coalgebra.field;
    let d = x.coalgebra.dim;
    let unknowns = x.dim * y.dim;
    let mut equations = vec![vec![f.zero; unknowns]; x.dim * d * y.dim];
    for xi in 0..x.dim {
        for yj in 0..y.dim {
            let col = xi * y.dim + yj;
            for v in 0..x.dim {
                for c in 0..d {
                    let co = x.coaction[xi][v * d + c];
                    if co != f.zero {
                        let row = (v * d + c) * y.dim + yj;
                        equations[row][col] = f.add(equations[row][col], co);
                    }
                }
            }
            for w in 0..y.dim {
                for c in 0..d {
                    let co = y.coaction[yj][w * d + c];
                    if co != f.zero {
                        let row = (xi * d + c) * y.dim + w;
                        equations[row][col] = f.add(equations[row][col], f.neg(co));
                    }
                }
            }
        }
    }
    let basis = kernel_basis_field(f, &equations)?;
    let extraction = extraction_columns(f, &basis)?;
    Ok(CotensorSpace {
        dim: basis.len(),
        basis,
        extraction,
        left_dim: x.dim,
        right_dim: y.dim,
    })
}

/// A comodule pulled along a morphism, keeping the subspace presentation of
/// its carrier inside the ambient tensor product.
#[derive(Debug, Clone)]
pub struct CobaseChange {
    pub comodule: Comodule,
    pub space: CotensorSpace,
}

/// The change-of-cobase functor on one comodule: cotensor with the source of
/// the morphism, coacting through the source comultiplication.
pub fn change_of_cobase(phi: &CoalgebraMorphism, x: &Comodule) -> Result<CobaseChange, Error> {
    if *x.coalgebra != *phi.target {
        return Err(Error::ShapeMismatch);
    }
    let f = &*phi.source.field;
    let d = phi.source.dim;
    let dc = phi.target.dim;
    if x.dim * d > TABLE_BOUND {
        return Err(Error::DimensionBound);
    }
    // equalizer of the coaction of x against the left coaction of the source
    let unknowns = x.dim * d;
    let mut equations = vec![vec![f.zero; unknowns]; x.dim * dc * d];
    for xi in 0..x.dim {
        for j in 0..d {
            let col = xi * d + j;
            for v in 0..x.dim {
                for c in 0..dc {
                    let co = x.coaction[xi][v * dc + c];
                    if co != f.zero {
                        let row = (v * dc + c) * d + j;
                        equations[row][col] = f.add(equations[row][col], co);
                    }
                }
            }
            for a in 0..d {
                for b in 0..d {
                    let de = phi.source.delta[j][a * d + b];
                    if de == f.zero {
                        continue;
                    }
                    for (c, &m) in phi.matrix[a].iter().enumerate() {
                        if m != f.zero {
                            let row = (xi * dc + c) * d + b;
                            equations[row][col] =
                                f.add(equations[row][col], f.neg(f.mul(de, m)));
                        }
                    }
                }
            }
        }
    }
    let basis = kernel_basis_field(f, &equations)?;
    let extraction = extraction_columns(f, &basis)?;
    let space = CotensorSpace {
        dim: basis.len(),
        basis,
        extraction,
        left_dim: x.dim,
        right_dim: d,
    };
    // coaction: comultiply the source factor, then read off in basis (x) source
    let mut coaction = Vec::with_capacity(space.dim);
    for b in &space.basis {
        let mut ambient = vec![f.zero; x.dim * d * d];
        for xi in 0..x.dim {
            for j in 0..d {
                let c = b[xi * d + j];
                if c == f.zero {
                    continue;
                }
                for a in 0..d {
                    for b2 in 0..d {
                        let de = phi.source.delta[j][a * d + b2];
                        if de != f.zero {
                            let idx = (xi * d + a) * d + b2;
                            ambient[idx] = f.add(ambient[idx], f.mul(c, de));
                        }
                    }
                }
            }
        }
        let mut row = vec![f.zero; space.dim * d];
        for (k, &e) in space.extraction.iter().enumerate() {
            for j in 0..d {
                row[k * d + j] = ambient[e * d + j];
            }
        }
        // verify the readoff reproduces the ambient vector exactly
        let mut recon = vec![f.zero; x.dim * d * d];
        for k in 0..space.dim {
            for j in 0..d {
                let c = row[k * d + j];
                if c == f.zero {
                    continue;
                }
                for (i, &bv) in space.basis[k].iter().enumerate() {
                    if bv != f.zero {
                        recon[i * d + j] = f.add(recon[i * d + j], f.mul(c, bv));
                    }
                }
            }
        }
        if recon != ambient {
            return Err(Error::AxiomFailed {
                law: "cotensor coaction closure",
            });
        }
        coaction.push(row);
    }
    let comodule = Comodule::new(&phi.source, coaction)?;
    Ok(CobaseChange { comodule, space })
}

/// Basis of the space of comodule endomorphisms, each flattened row-major.
pub fn comodule_endo_space(x: &Comodule) -> Result<Vec<Vec<usize>>, Error> {
    let f = &*x.coalgebra.field;
    let d = x.coalgebra.dim;
    let n = x.dim;
    let unknowns = n * n;
    let mut equations = vec![vec![f.zero; unknowns]; n * n * d];
    for r in 0..n {
        for s in 0..n {
            let col = r * n + s;
            // theta(sigma(e_r)) side
            for v in 0..n {
                for c in 0..d {
                    let co = x.coaction[s][v * d + c];
                    if co != f.zero {
                        let row = (r * n + v) * d + c;
                        equations[row][col] = f.add(equations[row][col], co);
                    }
                }
            }
        }
    }
    // (sigma tensor identity)(theta(e_r)) side, with a minus sign
    for r in 0..n {
        for u in 0..n {
            for c in 0..d {
                let co = x.coaction[r][u * d + c];
                if co == f.zero {
                    continue;
                }
                for s in 0..n {
                    let row = (r * n + s) * d + c;
                    let col = u * n + s;
                    equations[row][col] = f.add(equations[row][col], f.neg(co));
                }
            }
        }
    }
    kernel_basis_field(f, &equations)
}

/// All invertible comodule endomorphisms, as matrices sorted by entries.
pub fn comodule_aut_elements(x: &Comodule) -> Result<Vec<Vec<Vec<usize>>>, Error> {
    let f = &*x.coalgebra.field;
    let n = x.dim;
    let space = comodule_endo_space(x)?;
    let zero = vec![f.zero; n * n];
    let all = enumerate_span(f, &zero, &space, ENUM_BOUND)?;
    let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
    for flat in all {
        let mat: Vec<Vec<usize>> = (0..n).map(|r| flat[r * n..(r + 1) * n].to_vec()).collect();
        if mat_invert(f, &mat).is_some() {
            out.push(mat);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The group of comodule automorphisms under composition.
pub fn comodule_aut_group(x: &Comodule) -> Result<(FiniteGroup, Vec<Vec<Vec<usize>>>), Error> {
    let f = &*x.coalgebra.field;
    let elements = comodule_aut_elements(x)?;
    if elements.len() > TABLE_BOUND {
        return Err(Error::BoundExceeded {
            what: "automorphism table",
            limit: TABLE_BOUND,
            got: elements.len(),
        });
    }
    let mut table = vec![vec![0usize; elements.len()]; elements.len()];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let prod = mat_mul(f, a, b);
            table[i][j] = elements
                .binary_search(&prod)
                .map_err(|_| Error::AxiomFailed {
                    law: "automorphism composition closure",
                })?;
        }
    }
    Ok((FiniteGroup::from_table(&table)?, elements))
}

/// The induced map on regular-comodule endomorphisms along a coalgebra
/// morphism: counit out the image of the twisted comultiplication. Applied to
/// an endomorphism of the target, it yields one of the source.
pub fn aut_along(f: &CoalgebraMorphism, sigma: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let field = &*f.source.field;
    let (ds, dt) = (f.source.dim, f.target.dim);
    // weight per target basis vector: sigma then counit
    let mut weight = vec![field.zero; dt];
    for w in 0..dt {
        for z in 0..dt {
            let s = sigma[w][z];
            if s != field.zero {
                weight[w] = field.add(weight[w], field.mul(s, f.target.counit[z]));
            }
        }
    }
    // pull through the morphism per source basis vector
    let mut col = vec![field.zero; ds];
    for (u, item) in col.iter_mut().enumerate() {
        for w in 0..dt {
            let m = f.matrix[u][w];
            if m != field.zero {
                *item = field.add(*item, field.mul(m, weight[w]));
            }
        }
    }
    (0..ds)
        .map(|x| {
            let mut row = vec![field.zero; ds];
            for u in 0..ds {
                if col[u] == field.zero {
                    continue;
                }
                for (v, item) in row.iter_mut().enumerate() {
                    let de = f.source.delta[x][u * ds + v];
                    if de != field.zero {
                        *item = field.add(*item, field.mul(de, col[u]));
                    }
                }
            }
            row
        })
        .collect()
}

/// One level of the tower: the iterated cotensor as a coalgebra, with its
/// basis inside the plain tensor power of the bottom coalgebra.
#[derive(Debug, Clone)]
pub struct CoalgLevel {
    pub coalgebra: CoalgRef,
    pub basis: Vec<Vec<usize>>,
    extraction: Vec<usize>,
}

/// The simplicial tower of a morphism: levels are iterated cotensors of the
/// source over the target, faces counit out one slot, degeneracies duplicate
/// one slot. Faces and degeneracies are audited coalgebra morphisms.
pub struct CoalgAmitsurComplex {
    pub phi: CoalgebraMorphism,
    pub levels: Vec<CoalgLevel>,
    /// faces[k][i]: level k+1 down to level k
    pub faces: Vec<Vec<CoalgebraMorphism>>,
    /// degens[k][j]: level k up to level k+1
    pub degens: Vec<Vec<CoalgebraMorphism>>,
}

fn digits_of(mut idx: usize, d: usize, slots: usize) -> Vec<usize> {
    let mut out = vec![0usize; slots];
    for j in (0..slots).rev() {
        out[j] = idx % d;
        idx /= d;
    }
    out
}

fn pack_digits(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

fn level_kernel(
    phi: &CoalgebraMorphism,
    slots: usize,
) -> Result<(Vec<Vec<usize>>, Vec<usize>), Error> {
    let f = &*phi.source.field;
    let d = phi.source.dim;
    let dc = phi.target.dim;
    let ambient = d.pow(slots as u32);
    if slots == 1 {
        let basis = mat_identity(f, d);
        let extraction = (0..d).collect();
        return Ok((basis, extraction));
    }
    let block = ambient * dc;
    let mut equations = vec![vec![f.zero; ambient]; (slots - 1) * block];
    for col in 0..ambient {
        let digits = digits_of(col, d, slots);
        for pair in 0..slots - 1 {
            // right coaction on slot `pair`: comultiply, push the second leg
            // through the morphism, keep it between the two slots
            let xi = digits[pair];
            for a in 0..d {
                for b in 0..d {
                    let de = phi.source.delta[xi][a * d + b];
                    if de == f.zero {
                        continue;
                    }
                    for (c, &m) in phi.matrix[b].iter().enumerate() {
                        if m == f.zero {
                            continue;
                        }
                        let mut digs = digits.clone();
                        digs[pair] = a;
                        let row = pair * block + pack_digits(&digs, d) * dc + c;
                        equations[row][col] = f.add(equations[row][col], f.mul(de, m));
                    }
                }
            }
            // left coaction on slot pair+1, with a minus sign
            let xj = digits[pair + 1];
            for a in 0..d {
                for b in 0..d {
                    let de = phi.source.delta[xj][a * d + b];
                    if de == f.zero {
                        continue;
                    }
                    for (c, &m) in phi.matrix[a].iter().enumerate() {
                        if m == f.zero {
                            continue;
                        }
                        let mut digs = digits.clone();
                        digs[pair + 1] = b;
                        let row = pair * block + pack_digits(&digs, d) * dc + c;
                        equations[row][col] =
                            f.add(equations[row][col], f.neg(f.mul(de, m)));
                    }
                }
            }
        }
    }
    let basis = kernel_basis_field(f, &equations)?;
    let extraction = extraction_columns(f, &basis)?;
    Ok((basis, extraction))
}

fn level_coalgebra(
    phi: &CoalgebraMorphism,
    basis: &[Vec<usize>],
    extraction: &[usize],
    slots: usize,
) -> Result<FiniteCoalgebra, Error> {
    let f = &*phi.source.field;
    let field = phi.source.field.clone();
    let d = phi.source.dim;
    let ambient = d.pow(slots as u32);
    let k = basis.len();
    let mut delta = Vec::with_capacity(k);
    let mut counit = Vec::with_capacity(k);
    for b in basis {
        let mut pair = vec![f.zero; ambient * ambient];
        let mut eps = f.zero;
        for (idx, &coeff) in b.iter().enumerate() {
            if coeff == f.zero {
                continue;
            }
            let digits = digits_of(idx, d, slots);
            // comultiply every slot and interleave the two legs
            let mut stack: Vec<(usize, usize, usize)> = vec![(0, 0, coeff)];
            for &g in &digits {
                let mut next = Vec::new();
                for &(left, right, c) in &stack {
                    for a in 0..d {
                        for b2 in 0..d {
                            let de = phi.source.delta[g][a * d + b2];
                            if de != f.zero {
                                next.push((left * d + a, right * d + b2, f.mul(c, de)));
                            }
                        }
                    }
                }
                stack = next;
            }
            for (left, right, c) in stack {
                let p = left * ambient + right;
                pair[p] = f.add(pair[p], c);
            }
            let mut e = coeff;
            for &g in &digits {
                e = f.mul(e, phi.source.counit[g]);
            }
            eps = f.add(eps, e);
        }
        // read off coordinates in the basis tensor square and verify
        let mut row = vec![f.zero; k * k];
        for (r, &er) in extraction.iter().enumerate() {
            for (t, &et) in extraction.iter().enumerate() {
                row[r * k + t] = pair[er * ambient + et];
            }
        }
        let mut recon = vec![f.zero; ambient * ambient];
        for r in 0..k {
            for t in 0..k {
                let c = row[r * k + t];
                if c == f.zero {
                    continue;
                }
                for (i, &br) in basis[r].iter().enumerate() {
                    if br == f.zero {
                        continue;
                    }
                    let cb = f.mul(c, br);
                    for (j, &bt) in basis[t].iter().enumerate() {
                        if bt != f.zero {
                            let p = i * ambient + j;
                            recon[p] = f.add(recon[p], f.mul(cb, bt));
                        }
                    }
                }
            }
        }
        if recon != pair {
            return Err(Error::AxiomFailed {
                law: "cotensor subcoalgebra closure",
            });
        }
        delta.push(row);
        counit.push(eps);
    }
    FiniteCoalgebra::new(&field, delta, counit)
}

impl CoalgAmitsurComplex {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// The automorphism group of the regular comodule at one level.
    pub fn aut_group_at(&self, n: usize) -> Result<(FiniteGroup, Vec<Vec<Vec<usize>>>), Error> {
        comodule_aut_group(&Comodule::regular(&self.levels[n].coalgebra))
    }

    pub fn aut_elements_at(&self, n: usize) -> Result<Vec<Vec<Vec<usize>>>, Error> {
        comodule_aut_elements(&Comodule::regular(&self.levels[n].coalgebra))
    }

    /// The alternating product of the face-induced maps, carrying a level
    /// n-1 endomorphism to a level n endomorphism.
    pub fn delta_map(&self, n: usize, sigma: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, Error> {
        if n == 0 || n > self.depth() {
            return Err(Error::InvalidInput(String::from(
                "coboundary index out of range",
            )));
        }
        let f = &*self.phi.source.field;
        let dim = self.levels[n].coalgebra.dim;
        let mut acc = mat_identity(f, dim);
        for (i, face) in self.faces[n - 1].iter().enumerate() {
            let part = aut_along(face, sigma);
            let factor = if i % 2 == 0 {
                part
            } else {
                mat_invert(f, &part).ok_or(Error::NotInvertible)?
            };
            acc = mat_mul(f, &acc, &factor);
        }
        Ok(acc)
    }

    /// Checks every face and degeneracy identity as a matrix equality, plus
    /// compatibility of the bottom faces with the augmentation.
    pub fn verify_simplicial(&self) -> Result<(), Error> {
        let f = &*self.phi.source.field;
        let check = |ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(Error::AxiomFailed {
                    law: "simplicial identity",
                })
            }
        };
        for k in 0..self.faces.len().saturating_sub(1) {
            let hi = &self.faces[k + 1];
            let lo = &self.faces[k];
            for j in 0..hi.len() {
                for i in 0..j {
                    let a = mat_mul(f, &hi[j].matrix, &lo[i].matrix);
                    let b = mat_mul(f, &hi[i].matrix, &lo[j - 1].matrix);
                    check(a == b)?;
                }
            }
        }
        for k in 0..self.degens.len() {
            let down = &self.faces[k];
            for (j, s) in self.degens[k].iter().enumerate() {
                for (i, del) in down.iter().enumerate() {
                    let comp = mat_mul(f, &s.matrix, &del.matrix);
                    if i == j || i == j + 1 {
                        check(comp == mat_identity(f, self.levels[k].coalgebra.dim))?;
                    } else if i < j {
                        let other =
                            mat_mul(f, &self.faces[k - 1][i].matrix, &self.degens[k - 1][j - 1].matrix);
                        check(comp == other)?;
                    } else {
                        let other =
                            mat_mul(f, &self.faces[k - 1][i - 1].matrix, &self.degens[k - 1][j].matrix);
                        check(comp == other)?;
                    }
                }
            }
        }
        for k in 0..self.degens.len().saturating_sub(1) {
            for j in 0..self.degens[k].len() {
                for i in 0..=j {
                    let a = mat_mul(f, &self.degens[k][j].matrix, &self.degens[k + 1][i].matrix);
                    let b = mat_mul(f, &self.degens[k][i].matrix, &self.degens[k + 1][j + 1].matrix);
                    check(a == b)?;
                }
            }
        }
        let aug0 = mat_mul(f, &self.faces[0][0].matrix, &self.phi.matrix);
        let aug1 = mat_mul(f, &self.faces[0][1].matrix, &self.phi.matrix);
        check(aug0 == aug1)
    }
}

/// Builds the tower of a morphism of cocommutative coalgebras up to the given
/// level, with faces and degeneracies audited as coalgebra morphisms and the
/// simplicial identities verified.
pub fn coalg_amitsur(
    phi: &CoalgebraMorphism,
    n_max: usize,
) -> Result<CoalgAmitsurComplex, Error> {
    if !phi.source.cocommutative || !phi.target.cocommutative {
        return Err(Error::NotCocommutative);
    }
    if n_max < 1 {
        return Err(Error::InvalidInput(String::from(
            "the tower needs at least one cotensor level",
        )));
    }
    let d = phi.source.dim;
    if d.checked_pow(n_max as u32 + 1).map_or(true, |a| a > LEVEL_BOUND) {
        return Err(Error::DimensionBound);
    }
    let f = &*phi.source.field;
    let mut levels = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let slots = n + 1;
        let (basis, extraction) = level_kernel(phi, slots)?;
        let coalgebra = if n == 0 {
            phi.source.clone()
        } else {
            Rc::new(level_coalgebra(phi, &basis, &extraction, slots)?)
        };
        levels.push(CoalgLevel {
            coalgebra,
            basis,
            extraction,
        });
    }
    let mut faces = Vec::new();
    for k in 0..n_max {
        let hi = &levels[k + 1];
        let lo = &levels[k];
        let slots = k + 2;
        let lo_ambient = d.pow(slots as u32 - 1);
        let mut stage = Vec::new();
        for i in 0..slots {
            let mut matrix = Vec::with_capacity(hi.coalgebra.dim);
            for b in &hi.basis {
                let mut ambient = vec![f.zero; lo_ambient];
                for (idx, &coeff) in b.iter().enumerate() {
                    if coeff == f.zero {
                        continue;
                    }
                    let mut digits = digits_of(idx, d, slots);
                    let dropped = digits.remove(i);
                    let c = f.mul(coeff, phi.source.counit[dropped]);
                    if c != f.zero {
                        let p = pack_digits(&digits, d);
                        ambient[p] = f.add(ambient[p], c);
                    }
                }
                let row = express(f, &lo.basis, &lo.extraction, &ambient).ok_or(
                    Error::AxiomFailed {
                        law: "face lands in the lower level",
                    },
                )?;
                matrix.push(row);
            }
            stage.push(CoalgebraMorphism::new(&hi.coalgebra, &lo.coalgebra, matrix)?);
        }
        faces.push(stage);
    }
    let mut degens = Vec::new();
    for k in 0..n_max {
        let lo = &levels[k];
        let hi = &levels[k + 1];
        let slots = k + 1;
        let hi_ambient = d.pow(slots as u32 + 1);
        let mut stage = Vec::new();
        for j in 0..slots {
            let mut matrix = Vec::with_capacity(lo.coalgebra.dim);
            for b in &lo.basis {
                let mut ambient = vec![f.zero; hi_ambient];
                for (idx, &coeff) in b.iter().enumerate() {
                    if coeff == f.zero {
                        continue;
                    }
                    let digits = digits_of(idx, d, slots);
                    for a in 0..d {
                        for b2 in 0..d {
                            let de = phi.source.delta[digits[j]][a * d + b2];
                            if de == f.zero {
                                continue;
                            }
                            let mut digs = digits.clone();
                            digs[j] = a;
                            digs.insert(j + 1, b2);
                            let p = pack_digits(&digs, d);
                            ambient[p] = f.add(ambient[p], f.mul(coeff, de));
                        }
                    }
                }
                let row = express(f, &hi.basis, &hi.extraction, &ambient).ok_or(
                    Error::AxiomFailed {
                        law: "degeneracy lands in the upper level",
                    },
                )?;
                matrix.push(row);
            }
            stage.push(CoalgebraMorphism::new(&lo.coalgebra, &hi.coalgebra, matrix)?);
        }
        degens.push(stage);
    }
    let complex = CoalgAmitsurComplex {
        phi: phi.clone(),
        levels,
        faces,
        degens,
    };
    complex.verify_simplicial()?;
    Ok(complex)
}

fn h1_data(
    phi: &CoalgebraMorphism,
) -> Result<(FiniteGroup, Vec<Vec<Vec<usize>>>, Vec<Vec<Vec<usize>>>), Error> {
    let cx = coalg_amitsur(phi, 2)?;
    let f = &*phi.source.field;
    let a0 = cx.aut_elements_at(0)?;
    let a1 = cx.aut_elements_at(1)?;
    let id2 = mat_identity(f, cx.levels[2].coalgebra.dim);
    let mut kernel: Vec<Vec<Vec<usize>>> = Vec::new();
    for sigma in &a1 {
        if cx.delta_map(2, sigma)? == id2 {
            kernel.push(sigma.clone());
        }
    }
    kernel.sort_unstable();
    let mut image: Vec<Vec<Vec<usize>>> = Vec::new();
    for sigma in &a0 {
        let b = cx.delta_map(1, sigma)?;
        if kernel.binary_search(&b).is_err() {
            return Err(Error::AxiomFailed {
                law: "coboundaries are cocycles",
            });
        }
        image.push(b);
    }
    image.sort_unstable();
    image.dedup();
    let mut table = vec![vec![0usize; kernel.len()]; kernel.len()];
    for (i, a) in kernel.iter().enumerate() {
        for (j, b) in kernel.iter().enumerate() {
            table[i][j] = kernel
                .binary_search(&mat_mul(f, a, b))
                .map_err(|_| Error::AxiomFailed {
                    law: "cocycles closed under product",
                })?;
        }
    }
    let ker_group = FiniteGroup::from_table(&table)?;
    let image_indices: Vec<usize> = image
        .iter()
        .map(|m| kernel.binary_search(m).expect("checked above"))
        .collect();
    let quotient = crate::group::quotient_abelian(&ker_group, &image_indices)?;
    Ok((quotient.group, kernel, image))
}

/// Degree-one cohomology of the tower: cocycles at level one modulo the
/// coboundaries arriving from level zero.
pub fn h1_coalg(phi: &CoalgebraMorphism) -> Result<FiniteGroup, Error> {
    h1_data(phi).map(|t| t.0)
}

// ---- monad comparison machinery ----

struct MonadValue {
    tx: CobaseChange,
    eta: Vec<Vec<usize>>,
}

fn monad_value(phi: &CoalgebraMorphism, x: &Comodule) -> Result<MonadValue, Error> {
    let f = &*phi.source.field;
    let down = corestrict(phi, x)?;
    let tx = change_of_cobase(phi, &down)?;
    let mut eta = Vec::with_capacity(x.dim);
    for row in &x.coaction {
        let coords = express(f, &tx.space.basis, &tx.space.extraction, row).ok_or(
            Error::AxiomFailed {
                law: "unit lands in the pullback",
            },
        )?;
        eta.push(coords);
    }
    Ok(MonadValue { tx, eta })
}

/// The counit matrix of a pullback: collapse the source factor with its
/// counit, landing back in the pulled comodule's carrier.
fn pullback_counit(phi: &CoalgebraMorphism, cc: &CobaseChange) -> Vec<Vec<usize>> {
    let f = &*phi.source.field;
    let d = phi.source.dim;
    let z_dim = cc.space.left_dim;
    cc.space
        .basis
        .iter()
        .map(|b| {
            let mut out = vec![f.zero; z_dim];
            for zi in 0..z_dim {
                for j in 0..d {
                    let c = b[zi * d + j];
                    if c != f.zero {
                        out[zi] = f.add(out[zi], f.mul(c, phi.source.counit[j]));
                    }
                }
            }
            out
        })
        .collect()
}

/// Pushes a linear map under the pullback: ambient action on the left factor,
/// read off in the target pullback basis.
fn pullback_on_map(
    phi: &CoalgebraMorphism,
    src: &CobaseChange,
    dst: &CobaseChange,
    map: &[Vec<usize>],
) -> Result<Vec<Vec<usize>>, Error> {
    let f = &*phi.source.field;
    let d = phi.source.dim;
    let dst_left = dst.space.left_dim;
    let mut out = Vec::with_capacity(src.space.dim);
    for b in &src.space.basis {
        let mut ambient = vec![f.zero; dst_left * d];
        for xi in 0..src.space.left_dim {
            for j in 0..d {
                let c = b[xi * d + j];
                if c == f.zero {
                    continue;
                }
                for (yi, &m) in map[xi].iter().enumerate() {
                    if m != f.zero {
                        let idx = yi * d + j;
                        ambient[idx] = f.add(ambient[idx], f.mul(c, m));
                    }
                }
            }
        }
        let row = express(f, &dst.space.basis, &dst.space.extraction, &ambient).ok_or(
            Error::AxiomFailed {
                law: "pulled map lands in the pullback",
            },
        )?;
        out.push(row);
    }
    Ok(out)
}

/// Basis of the space of comodule homomorphisms between two comodules over
/// the same coalgebra, each flattened row-major.
pub fn comodule_hom_space(x: &Comodule, y: &Comodule) -> Result<Vec<Vec<usize>>, Error> {
    if *x.coalgebra != *y.coalgebra {
        return Err(Error::ShapeMismatch);
    }
    let f = &*x.coalgebra.field;
    let d = x.coalgebra.dim;
    let (n, m) = (x.dim, y.dim);
    let unknowns = n * m;
    let mut equations = vec![vec![f.zero; unknowns]; n * m * d];
    for r in 0..n {
        for s in 0..m {
            let col = r * m + s;
            for v in 0..m {
                for c in 0..d {
                    let co = y.coaction[s][v * d + c];
                    if co != f.zero {
                        equations[(r * m + v) * d + c][col] =
                            f.add(equations[(r * m + v) * d + c][col], co);
                    }
                }
            }
        }
    }
    for r in 0..n {
        for u in 0..n {
            for c in 0..d {
                let co = x.coaction[r][u * d + c];
                if co == f.zero {
                    continue;
                }
                for s in 0..m {
                    let row = (r * m + s) * d + c;
                    let col = u * m + s;
                    equations[row][col] = f.add(equations[row][col], f.neg(co));
                }
            }
        }
    }
    kernel_basis_field(f, &equations)
}

/// Every lawful algebra structure over the change-of-cobase monad on one
/// comodule: comodule maps from the monad value back to the carrier that
/// split the unit and associate over the multiplication.
pub fn t_algebra_structures(
    phi: &CoalgebraMorphism,
    x: &Comodule,
) -> Result<Vec<Vec<Vec<usize>>>, Error> {
    let f = &*phi.source.field;
    let mv = monad_value(phi, x)?;
    let t_dim = mv.tx.comodule.dim;
    let n = x.dim;
    // mu: T(T(X)) -> T(X) collapses the inner pullback with its counit
    let m2 = monad_value(phi, &mv.tx.comodule)?;
    let eps_inner = pullback_counit(phi, &mv.tx);
    let mu: Vec<Vec<usize>> = {
        let d = phi.source.dim;
        let mut out = Vec::with_capacity(m2.tx.space.dim);
        for b in &m2.tx.space.basis {
            let mut ambient = vec![f.zero; n * d];
            for u in 0..t_dim {
                for j in 0..d {
                    let c = b[u * d + j];
                    if c == f.zero {
                        continue;
                    }
                    for (xi, &e) in eps_inner[u].iter().enumerate() {
                        if e != f.zero {
                            let idx = xi * d + j;
                            ambient[idx] = f.add(ambient[idx], f.mul(c, e));
                        }
                    }
                }
            }
            let row = express(f, &mv.tx.space.basis, &mv.tx.space.extraction, &ambient).ok_or(
                Error::AxiomFailed {
                    law: "multiplication lands in the pullback",
                },
            )?;
            out.push(row);
        }
        out
    };
    // linear part: comodule maps T(X) -> X, solved inside the hom space so
    // the comodule law is built in, with the unit law as affine constraints
    let hom = comodule_hom_space(&mv.tx.comodule, x)?;
    let unknowns = t_dim * n;
    let mut equations: Vec<Vec<usize>> = Vec::new();
    let mut rhs: Vec<usize> = Vec::new();
    let k = hom.len();
    for r in 0..n {
        for s in 0..n {
            let mut row = vec![f.zero; k];
            for (kk, h) in hom.iter().enumerate() {
                let mut acc = f.zero;
                for u in 0..t_dim {
                    let e = mv.eta[r][u];
                    if e != f.zero {
                        acc = f.add(acc, f.mul(e, h[u * n + s]));
                    }
                }
                row[kk] = acc;
            }
            equations.push(row);
            rhs.push(if r == s { f.one } else { f.zero });
        }
    }
    let Some((particular, homogeneous)) = solve_affine(f, &equations, &rhs)? else {
        return Ok(Vec::new());
    };
    let coeff_sets = enumerate_span(f, &particular, &homogeneous, ENUM_BOUND)?;
    let mut out = Vec::new();
    for coeffs in coeff_sets {
        let mut flat = vec![f.zero; unknowns];
        for (kk, &c) in coeffs.iter().enumerate() {
            if c == f.zero {
                continue;
            }
            for (i, &h) in hom[kk].iter().enumerate() {
                if h != f.zero {
                    flat[i] = f.add(flat[i], f.mul(c, h));
                }
            }
        }
        let a: Vec<Vec<usize>> = (0..t_dim).map(|r| flat[r * n..(r + 1) * n].to_vec()).collect();
        // associativity: collapse then act versus act inside then act
        let ta = pullback_on_map(phi, &m2.tx, &mv.tx, &a)?;
        if mat_mul(f, &mu, &a) == mat_mul(f, &ta, &a) {
            out.push(a);
        }
    }
    Ok(out)
}

fn set_map_of(phi: &CoalgebraMorphism) -> Option<Vec<usize>> {
    if !phi.source.is_grouplike() || !phi.target.is_grouplike() {
        return None;
    }
    let f = &*phi.source.field;
    let mut map = Vec::with_capacity(phi.source.dim);
    for row in &phi.matrix {
        let mut hit = None;
        for (y, &v) in row.iter().enumerate() {
            if v == f.one && hit.is_none() {
                hit = Some(y);
            } else if v != f.zero {
                return None;
            }
        }
        map.push(hit?);
    }
    Some(map)
}

fn essential_surjectivity(phi: &CoalgebraMorphism) -> Result<HypStatus, Error> {
    let Some(set_map) = set_map_of(phi) else {
        return Ok(HypStatus::Unverified);
    };
    let f = &*phi.source.field;
    let s_points = phi.source.dim;
    // every grade tuple of total dimension at most three
    let mut tuples = vec![vec![0usize; s_points]];
    for _ in 0..3 {
        let mut next = Vec::new();
        for t in &tuples {
            for i in 0..s_points {
                let mut u = t.clone();
                u[i] += 1;
                if !next.contains(&u) {
                    next.push(u);
                }
            }
        }
        tuples.extend(next.iter().cloned());
    }
    tuples.sort_unstable();
    tuples.dedup();
    for dims in &tuples {
        let grades: Vec<usize> = dims
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| core::iter::repeat(i).take(c))
            .collect();
        let x = graded_comodule(&phi.source, &grades)?;
        let algebras = match t_algebra_structures(phi, &x) {
            Ok(a) => a,
            Err(Error::BoundExceeded { .. }) => return Ok(HypStatus::Unverified),
            Err(e) => return Err(e),
        };
        if algebras.is_empty() {
            continue;
        }
        // the only possible preimage has the fiberwise grades pushed down
        let mut down = vec![0usize; phi.target.dim];
        let mut consistent = true;
        let mut seen = vec![false; phi.target.dim];
        for (s, &c) in set_map.iter().enumerate() {
            if seen[c] {
                if down[c] != dims[s] {
                    consistent = false;
                }
            } else {
                seen[c] = true;
                down[c] = dims[s];
            }
        }
        if !consistent {
            return Ok(HypStatus::Failed);
        }
        let y_grades: Vec<usize> = down
            .iter()
            .enumerate()
            .flat_map(|(c, &k)| core::iter::repeat(c).take(k))
            .collect();
        let y = graded_comodule(&phi.target, &y_grades)?;
        let p = change_of_cobase(phi, &y)?;
        if p.comodule.dim != x.dim {
            return Ok(HypStatus::Failed);
        }
        let eps_y = pullback_counit(phi, &p);
        let tp = monad_value(phi, &p.comodule)?;
        let a_can: Vec<Vec<usize>> = {
            let d = phi.source.dim;
            let mut out = Vec::with_capacity(tp.tx.space.dim);
            for b in &tp.tx.space.basis {
                let mut ambient = vec![f.zero; y.dim * d];
                for u in 0..p.comodule.dim {
                    for j in 0..d {
                        let c = b[u * d + j];
                        if c == f.zero {
                            continue;
                        }
                        for (yi, &e) in eps_y[u].iter().enumerate() {
                            if e != f.zero {
                                let idx = yi * d + j;
                                ambient[idx] = f.add(ambient[idx], f.mul(c, e));
                            }
                        }
                    }
                }
                let row = express(f, &p.space.basis, &p.space.extraction, &ambient).ok_or(
                    Error::AxiomFailed {
                        law: "canonical action lands in the pullback",
                    },
                )?;
                out.push(row);
            }
            out
        };
        let tx = monad_value(phi, &x)?;
        let homs = comodule_hom_space(&p.comodule, &x)?;
        let zero = vec![f.zero; p.comodule.dim * x.dim];
        let candidates = match enumerate_span(f, &zero, &homs, ENUM_BOUND) {
            Ok(c) => c,
            Err(Error::BoundExceeded { .. }) => return Ok(HypStatus::Unverified),
            Err(e) => return Err(e),
        };
        for a in &algebras {
            let mut hit = false;
            for flat in &candidates {
                let h: Vec<Vec<usize>> = (0..p.comodule.dim)
                    .map(|r| flat[r * x.dim..(r + 1) * x.dim].to_vec())
                    .collect();
                if mat_invert(f, &h).is_none() {
                    continue;
                }
                let th = pullback_on_map(phi, &tp.tx, &tx.tx, &h)?;
                if mat_mul(f, &a_can, &h) == mat_mul(f, &th, a) {
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Ok(HypStatus::Failed);
            }
        }
    }
    Ok(HypStatus::Verified)
}

/// The verdict of the coalgebra Hilbert 90 theorem for one morphism: the
/// monadicity hypothesis is certified by a surrogate (surjectivity plus
/// essential surjectivity of the comparison on comodules of dimension at
/// most three), then degree-one cohomology is computed and must vanish.
#[derive(Debug, Clone)]
pub struct Hilbert90Report {
    pub hypotheses: Vec<Hypothesis>,
    pub h1_order: usize,
    pub holds: bool,
    /// a cocycle outside the coboundaries, when the theorem instance fails
    pub counterexample: Option<Vec<Vec<usize>>>,
    pub advisory: bool,
}

pub fn hilbert90_check(phi: &CoalgebraMorphism) -> Result<Hilbert90Report, Error> {
    let status = if !phi.is_surjective() {
        HypStatus::Unverified
    } else {
        match essential_surjectivity(phi) {
            Ok(s) => s,
            Err(Error::BoundExceeded { .. }) | Err(Error::DimensionBound) => {
                HypStatus::Unverified
            }
            Err(e) => return Err(e),
        }
    };
    let (quotient, kernel, image) = h1_data(phi)?;
    let holds = quotient.order == 1;
    let counterexample = if holds {
        None
    } else {
        kernel
            .iter()
            .find(|m| image.binary_search(m).is_err())
            .cloned()
    };
    Ok(Hilbert90Report {
        hypotheses: vec![Hypothesis {
            name: String::from(
                "monadic change of cobase (surjective + comparison image to dimension 3)",
            ),
            status,
        }],
        h1_order: quotient.order,
        holds,
        counterexample,
        advisory: status != HypStatus::Verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::mk_zmod;

    fn f2() -> RingRef {
        Rc::new(mk_zmod(2).unwrap())
    }

    fn f3() -> RingRef {
        Rc::new(mk_zmod(3).unwrap())
    }

    fn points(n: usize, field: &RingRef) -> CoalgRef {
        Rc::new(grouplike_coalgebra(n, field).unwrap())
    }

    fn collapse(n: usize, field: &RingRef) -> CoalgebraMorphism {
        let d = points(n, field);
        let c = points(1, field);
        grouplike_morphism(&d, &c, &vec![0; n]).unwrap()
    }

    #[test]
    fn grouplike_axioms_and_bounds() {
        let c1 = grouplike_coalgebra(1, &f2()).unwrap();
        assert_eq!(c1.dim, 1);
        assert!(c1.cocommutative);
        assert!(c1.is_grouplike());
        let c2 = grouplike_coalgebra(2, &f2()).unwrap();
        assert!(c2.cocommutative);
        let z4: RingRef = Rc::new(mk_zmod(4).unwrap());
        assert!(matches!(
            grouplike_coalgebra(2, &z4),
            Err(Error::NotAField)
        ));
        assert!(matches!(
            grouplike_coalgebra(5000, &f2()),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn path_coalgebra_is_not_cocommutative() {
        // two group-likes with an arrow between them
        let field = f2();
        let f = &*field;
        let mut delta = vec![vec![f.zero; 9]; 3];
        delta[0][0 * 3 + 0] = f.one;
        delta[1][1 * 3 + 1] = f.one;
        delta[2][0 * 3 + 2] = f.one;
        delta[2][2 * 3 + 1] = f.one;
        let counit = vec![f.one, f.one, f.zero];
        let path = FiniteCoalgebra::new(&field, delta, counit).unwrap();
        assert!(!path.cocommutative);
        let pr = Rc::new(path);
        let id = CoalgebraMorphism::identity(&pr);
        assert!(matches!(coalg_amitsur(&id, 2), Err(Error::NotCocommutative)));
    }

    #[test]
    fn coalgebra_audits_reject_broken_tables() {
        let field = f2();
        let f = &*field;
        // delta sending the basis vector to zero breaks the counit law
        let delta = vec![vec![f.zero; 1]];
        assert!(matches!(
            FiniteCoalgebra::new(&field, delta, vec![f.one]),
            Err(Error::AxiomFailed { .. })
        ));
    }

    #[test]
    fn set_maps_give_morphisms() {
        let field = f3();
        let d = points(2, &field);
        let c = points(1, &field);
        let phi = grouplike_morphism(&d, &c, &[0, 0]).unwrap();
        assert!(phi.is_surjective());
        assert!(!phi.is_injective());
        let id = CoalgebraMorphism::identity(&d);
        assert!(id.is_surjective() && id.is_injective());
        let comp = id.then(&phi).unwrap();
        assert_eq!(comp.matrix, phi.matrix);
        // a matrix that merges group-likes additively is not a morphism
        let f = &*field;
        let bad = vec![vec![f.one], vec![f.add(f.one, f.one)]];
        assert!(matches!(
            CoalgebraMorphism::new(&d, &c, bad),
            Err(Error::NotAHom { .. })
        ));
    }

    #[test]
    fn cotensor_with_the_regular_comodule_keeps_the_dimension() {
        let field = f3();
        let c = points(2, &field);
        for grades in [vec![0], vec![1, 1], vec![0, 1, 0]] {
            let x = graded_comodule(&c, &grades).unwrap();
            let t = cotensor(&x, &Comodule::regular(&c)).unwrap();
            assert_eq!(t.dim, x.dim);
        }
    }

    #[test]
    fn cotensor_follows_the_graded_pairing() {
        let field = f3();
        let c = points(2, &field);
        let x = graded_comodule(&c, &[0, 0, 1]).unwrap();
        let y = graded_comodule(&c, &[0, 1, 1, 1]).unwrap();
        let t = cotensor(&x, &y).unwrap();
        // grades (2,1) against (1,3) pair to 2*1 + 1*3
        assert_eq!(t.dim, 5);
        // every basis vector is supported on matched grade pairs only
        for b in &t.basis {
            for xi in 0..3 {
                for yj in 0..4 {
                    let gx = if xi < 2 { 0 } else { 1 };
                    let gy = if yj < 1 { 0 } else { 1 };
                    if gx != gy {
                        assert_eq!(b[xi * 4 + yj], field.zero);
                    }
                }
            }
        }
        // over a one-point coalgebra the dimensions multiply
        let c1 = points(1, &field);
        let x1 = graded_comodule(&c1, &[0, 0]).unwrap();
        let y1 = graded_comodule(&c1, &[0, 0, 0]).unwrap();
        assert_eq!(cotensor(&x1, &y1).unwrap().dim, 6);
    }

    #[test]
    fn double_cotensor_of_the_two_point_collapse_has_dimension_four() {
        let field = f2();
        let phi = collapse(2, &field);
        // the source as a comodule over the one-point target
        let down = corestrict(&phi, &Comodule::regular(&phi.source)).unwrap();
        let t = cotensor(&down, &down).unwrap();
        assert_eq!(t.dim, 4);
    }

    #[test]
    fn change_of_cobase_examples() {
        let field = f2();
        let phi = collapse(2, &field);
        let one_dim = graded_comodule(&phi.target, &[0]).unwrap();
        let pulled = change_of_cobase(&phi, &one_dim).unwrap();
        assert_eq!(pulled.comodule.dim, 2);
        let z = Comodule::zero(&phi.target);
        assert_eq!(change_of_cobase(&phi, &z).unwrap().comodule.dim, 0);
        let d = points(2, &field);
        let id = CoalgebraMorphism::identity(&d);
        let x = graded_comodule(&d, &[0, 1, 1]).unwrap();
        assert_eq!(change_of_cobase(&id, &x).unwrap().comodule.dim, 3);
    }

    #[test]
    fn automorphisms_of_regular_comodules_are_diagonal_scalars() {
        let c2 = points(2, &f2());
        let (g, _) = comodule_aut_group(&Comodule::regular(&c2)).unwrap();
        assert_eq!(g.order, 1);
        let c3 = points(2, &f3());
        let (g, els) = comodule_aut_group(&Comodule::regular(&c3)).unwrap();
        assert_eq!(g.order, 4);
        assert!(g.abelian);
        assert_eq!(crate::group::invariant_factors(&g).unwrap(), vec![2, 2]);
        for m in &els {
            assert_eq!(m[0][1], 0);
            assert_eq!(m[1][0], 0);
        }
        let (g, _) = comodule_aut_group(&Comodule::zero(&c3)).unwrap();
        assert_eq!(g.order, 1);
    }

    #[test]
    fn endomorphism_space_of_grouplike_regular_is_the_diagonal() {
        for n in 1..4 {
            let c = points(n, &f3());
            let space = comodule_endo_space(&Comodule::regular(&c)).unwrap();
            assert_eq!(space.len(), n);
        }
    }

    #[test]
    fn induced_maps_are_contravariantly_functorial() {
        let field = f3();
        let d3 = points(3, &field);
        let d2 = points(2, &field);
        let d1 = points(1, &field);
        let g = grouplike_morphism(&d3, &d2, &[0, 0, 1]).unwrap();
        let f = grouplike_morphism(&d2, &d1, &[0, 0]).unwrap();
        let comp = g.then(&f).unwrap();
        for sigma in comodule_aut_elements(&Comodule::regular(&d1)).unwrap() {
            let direct = aut_along(&comp, &sigma);
            let staged = aut_along(&g, &aut_along(&f, &sigma));
            assert_eq!(direct, staged);
        }
        // the identity morphism induces the identity on endomorphisms
        let id = CoalgebraMorphism::identity(&d2);
        for sigma in comodule_aut_elements(&Comodule::regular(&d2)).unwrap() {
            assert_eq!(aut_along(&id, &sigma), sigma);
        }
    }

    #[test]
    fn tower_levels_for_the_collapse_morphisms() {
        let cx = coalg_amitsur(&collapse(2, &f2()), 2).unwrap();
        let dims: Vec<usize> = cx.levels.iter().map(|l| l.coalgebra.dim).collect();
        assert_eq!(dims, vec![2, 4, 8]);
        assert!(cx.levels.iter().all(|l| l.coalgebra.is_grouplike()));
        let cx = coalg_amitsur(&collapse(3, &f3()), 2).unwrap();
        let dims: Vec<usize> = cx.levels.iter().map(|l| l.coalgebra.dim).collect();
        assert_eq!(dims, vec![3, 9, 27]);
        // a partial merge keeps only fiberwise matched tuples
        let field = f3();
        let d3 = points(3, &field);
        let d2 = points(2, &field);
        let phi = grouplike_morphism(&d3, &d2, &[0, 0, 1]).unwrap();
        let cx = coalg_amitsur(&phi, 2).unwrap();
        let dims: Vec<usize> = cx.levels.iter().map(|l| l.coalgebra.dim).collect();
        assert_eq!(dims, vec![3, 5, 9]);
    }

    #[test]
    fn identity_tower_is_constant_with_equal_faces() {
        let field = f2();
        let d = points(2, &field);
        let id = CoalgebraMorphism::identity(&d);
        let cx = coalg_amitsur(&id, 2).unwrap();
        let dims: Vec<usize> = cx.levels.iter().map(|l| l.coalgebra.dim).collect();
        assert_eq!(dims, vec![2, 2, 2]);
        assert_eq!(cx.faces[0][0].matrix, cx.faces[0][1].matrix);
        assert_eq!(cx.faces[1][0].matrix, cx.faces[1][2].matrix);
    }

    #[test]
    fn simplicial_identities_hold_in_matrix_form() {
        let field3 = f3();
        let d3 = points(3, &field3);
        let d2 = points(2, &field3);
        let partial = grouplike_morphism(&d3, &d2, &[0, 1, 1]).unwrap();
        for phi in [
            collapse(2, &f2()),
            collapse(3, &field3),
            partial,
            CoalgebraMorphism::identity(&d2),
        ] {
            let cx = coalg_amitsur(&phi, 2).unwrap();
            assert!(cx.verify_simplicial().is_ok());
        }
    }

    #[test]
    fn coboundaries_compose_to_the_identity() {
        let field = f3();
        let cx = coalg_amitsur(&collapse(2, &field), 2).unwrap();
        let f = &*field;
        let id2 = mat_identity(f, cx.levels[2].coalgebra.dim);
        for sigma in cx.aut_elements_at(0).unwrap() {
            let b = cx.delta_map(1, &sigma).unwrap();
            assert_eq!(cx.delta_map(2, &b).unwrap(), id2);
        }
        // pulling a target automorphism up the augmentation kills the first
        // coboundary as well
        let target_auts =
            comodule_aut_elements(&Comodule::regular(&cx.phi.target)).unwrap();
        let id1 = mat_identity(f, cx.levels[1].coalgebra.dim);
        for tau in target_auts {
            let lifted = aut_along(&cx.phi, &tau);
            assert_eq!(cx.delta_map(1, &lifted).unwrap(), id1);
        }
    }

    #[test]
    fn first_cohomology_vanishes_for_group_like_surjections() {
        let field2 = f2();
        let field3 = f3();
        let d2 = points(2, &field2);
        assert_eq!(h1_coalg(&CoalgebraMorphism::identity(&d2)).unwrap().order, 1);
        assert_eq!(h1_coalg(&collapse(2, &field2)).unwrap().order, 1);
        assert_eq!(h1_coalg(&collapse(2, &field3)).unwrap().order, 1);
        assert_eq!(h1_coalg(&collapse(3, &field3)).unwrap().order, 1);
    }

    #[test]
    fn cocycle_and_coboundary_counts_match_the_pair_model() {
        // independent count for the three-point collapse over F3: a cocycle
        // assigns a unit to every pair with b(x,z) = b(x,y) b(y,z), so it is
        // determined by its values against a base point
        let field = f3();
        let phi = collapse(3, &field);
        let (quotient, kernel, image) = h1_data(&phi).unwrap();
        let mut combinatorial = 0usize;
        for bits in 0..1usize << 9 {
            let val = |i: usize, j: usize| -> usize {
                if bits >> (i * 3 + j) & 1 == 1 {
                    2
                } else {
                    1
                }
            };
            let mut ok = true;
            'outer: for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        if field.mul(val(i, j), val(j, k)) != val(i, k) {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                combinatorial += 1;
            }
        }
        assert_eq!(kernel.len(), combinatorial);
        assert_eq!(kernel.len(), 4);
        assert_eq!(image.len(), 4);
        assert_eq!(quotient.order, 1);
    }

    #[test]
    fn algebra_structure_counts_follow_the_fiber_rule() {
        let field3 = f3();
        let phi = collapse(2, &field3);
        let even = graded_comodule(&phi.source, &[0, 1]).unwrap();
        assert_eq!(t_algebra_structures(&phi, &even).unwrap().len(), 2);
        let lopsided = graded_comodule(&phi.source, &[0]).unwrap();
        assert_eq!(t_algebra_structures(&phi, &lopsided).unwrap().len(), 0);
        let field2 = f2();
        let phi2 = collapse(2, &field2);
        let even2 = graded_comodule(&phi2.source, &[0, 1]).unwrap();
        assert_eq!(t_algebra_structures(&phi2, &even2).unwrap().len(), 1);
        // along the identity every comodule carries exactly one structure
        let d = points(2, &field3);
        let id = CoalgebraMorphism::identity(&d);
        let x = graded_comodule(&d, &[0, 1, 1]).unwrap();
        assert_eq!(t_algebra_structures(&id, &x).unwrap().len(), 1);
    }

    #[test]
    fn hilbert90_passes_for_small_group_like_surjections() {
        let field2 = f2();
        let field3 = f3();
        let d2 = points(2, &field2);
        for phi in [
            CoalgebraMorphism::identity(&d2),
            collapse(2, &field2),
            collapse(3, &field3),
        ] {
            let report = hilbert90_check(&phi).unwrap();
            assert!(report.holds);
            assert!(!report.advisory);
            assert_eq!(report.h1_order, 1);
            assert!(report.counterexample.is_none());
            assert!(report
                .hypotheses
                .iter()
                .all(|h| h.status == HypStatus::Verified));
        }
    }

    #[test]
    fn non_surjective_morphisms_get_advisory_verdicts() {
        let field = f3();
        let d1 = points(1, &field);
        let d2 = points(2, &field);
        let incl = grouplike_morphism(&d1, &d2, &[0]).unwrap();
        assert!(!incl.is_surjective());
        let report = hilbert90_check(&incl).unwrap();
        assert!(report.advisory);
        assert_eq!(report.hypotheses[0].status, HypStatus::Unverified);
        assert!(report.holds);
    }

    #[test]
    fn dimension_bounds_are_enforced() {
        let field = f2();
        let c = points(2, &field);
        let big = graded_comodule(&c, &vec![0; 70]).unwrap();
        assert!(matches!(
            cotensor(&big, &big),
            Err(Error::DimensionBound)
        ));
        let phi = collapse(2, &field);
        assert!(matches!(coalg_amitsur(&phi, 8), Err(Error::DimensionBound)));
        assert!(matches!(
            coalg_amitsur(&phi, 0),
            Err(Error::InvalidInput(_))
        ));
    }
}
