//! Tensor products of finite modules over a finite base ring. The product is
//! held as a presentation: invariant factors, a coordinate map for pure tensors,
//! and expansions of the canonical basis back into pures. Small products are
//! additionally materialized as honest modules with a full pure-tensor witness
//! table; large ones stay at the coordinate layer, which is all the cohomology
//! computations need.


use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::decomp::{multiple, AbelianDecomp};
use crate::error::Error;
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::module::{bimodule_via_left, bimodule_via_right, FiniteModule};
use crate::ring::{FiniteRing, RingHom, RingRef};
use crate::{MATERIALIZE_BOUND, TABLE_BOUND};

/// Presentation of M (x)_R N: generators are basis pairs of the two factors,
/// relations are the additive orders plus balancing rows for ring generators.
/// Everything else is derived from the Smith form of that relation lattice.
#[derive(Debug, Clone)]
pub struct TensorPresentation {
    m_decomp: AbelianDecomp,
    n_decomp: AbelianDecomp,
    v: IntMatrix,
    /// columns of the Smith form kept as basis coordinates (diagonal > 1)
    keep: Vec<usize>,
    /// invariant factors of the product, matching `keep`
    pub factors: Vec<u64>,
    factors_big: Vec<BigInt>,
    pub order: u64,
    basis_pures: Vec<Vec<(u64, usize, usize)>>,
}

impl TensorPresentation {
    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn zero_coords(&self) -> Vec<u64> {
        vec![0; self.factors.len()]
    }

    pub fn add_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect()
    }

    pub fn neg_coords(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (d - x) % d)
            .collect()
    }

    pub fn scale_coords(&self, a: &[u64], k: u128) -> Vec<u64> {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| ((x as u128 * (k % d as u128)) % d as u128) as u64)
            .collect()
    }

    /// Coordinates of the pure tensor of two carrier elements.
    pub fn pure_coords(&self, m_elem: usize, n_elem: usize) -> Vec<u64> {
        let a = self.m_decomp.coords(m_elem);
        let b = self.n_decomp.coords(n_elem);
        let tn = self.n_decomp.dim();
        let mut out = Vec::with_capacity(self.keep.len());
        for (pos, &col) in self.keep.iter().enumerate() {
            let mut acc = BigInt::from(0);
            for (i, &ai) in a.iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                for (k, &bk) in b.iter().enumerate() {
                    if bk == 0 {
                        continue;
                    }
                    acc += BigInt::from(ai * bk) * self.v.at(i * tn + k, col);
                }
            }
            let d = &self.factors_big[pos];
            let r = ((acc % d) + d) % d;
            out.push(r.to_u64().expect("coordinate fits"));
        }
        out
    }

    /// Expansion of one basis element of the product as a combination of pure
    /// tensors: (coefficient, element of M, element of N) triples.
    pub fn basis_pure(&self, j: usize) -> &[(u64, usize, usize)] {
        &self.basis_pures[j]
    }

    /// First-coordinate-major rank of a coordinate vector.
    pub fn rank_of_coords(&self, z: &[u64]) -> usize {
        let mut rank = 0u64;
        for (i, &d) in self.factors.iter().enumerate() {
            debug_assert!(z[i] < d);
            rank = rank * d + z[i];
        }
        rank as usize
    }

    pub fn coords_of_rank(&self, rank: usize) -> Vec<u64> {
        let mut rank = rank as u64;
        let mut out = vec![0u64; self.factors.len()];
        for (i, &d) in self.factors.iter().enumerate().rev() {
            out[i] = rank % d;
            rank /= d;
        }
        out
    }
}

/// A computed tensor product: the presentation always, plus a materialized
/// module and the full pure-tensor table q(m, n) when the order is small.
#[derive(Debug, Clone)]
pub struct TensorResult {
    pub presentation: TensorPresentation,
    pub module: Option<FiniteModule>,
    /// witness[q] at index m * |N| + n is the carrier index of the pure tensor
    pub witness: Option<Vec<usize>>,
}

/// M (x)_R N for a right module M and a left module N over the same base. Outer
/// actions (a left action on M, a right action on N) carry over to the product.
/// The pure pair count |M| * |N| is bounded; the product order itself may be
/// far larger and then only the presentation is returned.
pub fn tensor_over(
    r: &RingRef,
    m: &FiniteModule,
    n: &FiniteModule,
) -> Result<TensorResult, Error> {
    match m.right_ring() {
        Some(rr) if **rr == **r => {}
        _ => return Err(Error::RingMismatch),
    }
    match n.left_ring() {
        Some(lr) if **lr == **r => {}
        _ => return Err(Error::RingMismatch),
    }
    let pairs = m.order.checked_mul(n.order).unwrap_or(usize::MAX);
    if pairs > TABLE_BOUND {
        return Err(Error::BoundExceeded {
            what: "tensor pure pair count",
            limit: TABLE_BOUND,
            got: pairs,
        });
    }
    let md = AbelianDecomp::compute(m)?;
    let nd = AbelianDecomp::compute(n)?;
    let s = md.dim();
    let tn = nd.dim();
    let st = s * tn;
    let gens = crate::module::ring_generators(r);
    // Relation rows over the basis pairs e_(i,k).
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..s {
        for k in 0..tn {
            let mut row = vec![0i64; st];
            row[i * tn + k] = md.orders[i] as i64;
            rows.push(row);
            let mut row = vec![0i64; st];
            row[i * tn + k] = nd.orders[k] as i64;
            rows.push(row);
        }
    }
    for &rho in &gens {
        for i in 0..s {
            for k in 0..tn {
                // (m_i . rho) (x) n_k  -  m_i (x) (rho . n_k)
                let alpha = md.coords(m.act_right(md.basis[i], rho));
                let beta = nd.coords(n.act_left(rho, nd.basis[k]));
                let mut row = vec![0i64; st];
                for (i2, &a) in alpha.iter().enumerate() {
                    row[i2 * tn + k] += a as i64;
                }
                for (k2, &b) in beta.iter().enumerate() {
                    row[i * tn + k2] -= b as i64;
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![0i64; st]);
    }
    let rel = IntMatrix::from_rows(&rows);
    let snf = smith_normal_form(&rel);
    let mut keep = Vec::new();
    let mut factors = Vec::new();
    for (j, d) in snf.diag.iter().enumerate() {
        if d.is_zero() {
            return Err(Error::PropertyFailed(String::from(
                "tensor relation lattice not of full rank",
            )));
        }
        let d = d
            .to_u64()
            .ok_or_else(|| Error::PropertyFailed(String::from("tensor factor overflow")))?;
        if d > 1 {
            keep.push(j);
            factors.push(d);
        }
    }
    if snf.diag.len() < st {
        return Err(Error::PropertyFailed(String::from(
            "tensor relation lattice not of full rank",
        )));
    }
    let order: u64 = factors.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d)).ok_or(
        Error::PropertyFailed(String::from("tensor order overflow")),
    )?;
    // Pure-tensor order bound per generator column: the gcd of the two factor
    // orders annihilates the pure, so coefficients reduce mod it.
    let pure_ord = |col: usize| -> u64 {
        let a = md.orders[col / tn];
        let b = nd.orders[col % tn];
        gcd_u64(a, b)
    };
    let mut basis_pures = Vec::with_capacity(keep.len());
    for &j in &keep {
        let mut expansion = Vec::new();
        for col in 0..st {
            let o = BigInt::from(pure_ord(col));
            let c = ((snf.v_inv.at(j, col) % &o) + &o) % &o;
            let c = c.to_u64().expect("reduced coefficient fits");
            if c != 0 {
                expansion.push((c, md.basis[col / tn], nd.basis[col % tn]));
            }
        }
        basis_pures.push(expansion);
    }
    let presentation = TensorPresentation {
        m_decomp: md,
        n_decomp: nd,
        v: snf.v,
        keep,
        factors_big: factors.iter().map(|&d| BigInt::from(d)).collect(),
        factors,
        order,
        basis_pures,
    };
    certify_presentation(&presentation, r, m, n, &gens)?;
    let (module, witness) = if order <= MATERIALIZE_BOUND as u64 {
        let (module, witness) = materialize(&presentation, m, n)?;
        (Some(module), Some(witness))
    } else {
        (None, None)
    };
    Ok(TensorResult {
        presentation,
        module,
        witness,
    })
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Two cheap invariants of the construction: each basis element round-trips
/// through its pure expansion, and pure coordinates respect the balancing
/// relations at generator level.
fn certify_presentation(
    p: &TensorPresentation,
    _r: &RingRef,
    m: &FiniteModule,
    n: &FiniteModule,
    gens: &[usize],
) -> Result<(), Error> {
    for j in 0..p.dim() {
        let mut acc = p.zero_coords();
        for &(c, me, ne) in p.basis_pure(j) {
            acc = p.add_coords(&acc, &p.scale_coords(&p.pure_coords(me, ne), c as u128));
        }
        let mut expect = p.zero_coords();
        expect[j] = 1 % p.factors[j];
        if acc != expect {
            return Err(Error::PropertyFailed(String::from(
                "basis expansion does not round-trip",
            )));
        }
    }
    for &rho in gens {
        for &me in &p.m_decomp.basis {
            for &ne in &p.n_decomp.basis {
                let lhs = p.pure_coords(m.act_right(me, rho), ne);
                let rhs = p.pure_coords(me, n.act_left(rho, ne));
                if lhs != rhs {
                    return Err(Error::PropertyFailed(String::from(
                        "pure coordinates are not balanced",
                    )));
                }
            }
        }
    }
    Ok(())
}

fn coords_label(z: &[u64]) -> String {
    if z.is_empty() {
        return String::from("0");
    }
    let parts: Vec<String> = z.iter().map(|d| d.to_string()).collect();
    parts.join(".")
}

/// Builds the honest module for a small product: digitwise addition on the
/// coordinate vectors, outer actions extended linearly from basis images, and
/// the full pure-tensor witness table.
fn materialize(
    p: &TensorPresentation,
    m: &FiniteModule,
    n: &FiniteModule,
) -> Result<(FiniteModule, Vec<usize>), Error> {
    let total = p.order as usize;
    let dim = p.dim();
    let all_coords: Vec<Vec<u64>> = (0..total).map(|r| p.coords_of_rank(r)).collect();
    let add: Vec<Vec<usize>> = (0..total)
        .map(|a| {
            (0..total)
                .map(|b| p.rank_of_coords(&p.add_coords(&all_coords[a], &all_coords[b])))
                .collect()
        })
        .collect();
    // Linear extension of an action from images of the product basis.
    let extend = |basis_imgs: &[Vec<u64>]| -> Result<Vec<usize>, Error> {
        for (j, img) in basis_imgs.iter().enumerate() {
            let killed = p.scale_coords(img, p.factors[j] as u128);
            if killed.iter().any(|&x| x != 0) {
                return Err(Error::PropertyFailed(String::from(
                    "action image not annihilated by the basis order",
                )));
            }
        }
        Ok((0..total)
            .map(|r| {
                let z = &all_coords[r];
                let mut acc = p.zero_coords();
                for j in 0..dim {
                    acc = p.add_coords(&acc, &p.scale_coords(&basis_imgs[j], z[j] as u128));
                }
                p.rank_of_coords(&acc)
            })
            .collect())
    };
    let left = match m.left_ring() {
        Some(q) => {
            let q = q.clone();
            let mut t = Vec::with_capacity(q.order);
            for r in 0..q.order {
                let imgs: Vec<Vec<u64>> = (0..dim)
                    .map(|j| {
                        let mut acc = p.zero_coords();
                        for &(c, me, ne) in p.basis_pure(j) {
                            let moved = p.pure_coords(m.act_left(r, me), ne);
                            acc = p.add_coords(&acc, &p.scale_coords(&moved, c as u128));
                        }
                        acc
                    })
                    .collect();
                t.push(extend(&imgs)?);
            }
            Some((q, t))
        }
        None => None,
    };
    let right = match n.right_ring() {
        Some(q) => {
            let q = q.clone();
            let mut t = Vec::with_capacity(q.order);
            for r in 0..q.order {
                let imgs: Vec<Vec<u64>> = (0..dim)
                    .map(|j| {
                        let mut acc = p.zero_coords();
                        for &(c, me, ne) in p.basis_pure(j) {
                            let moved = p.pure_coords(me, n.act_right(ne, r));
                            acc = p.add_coords(&acc, &p.scale_coords(&moved, c as u128));
                        }
                        acc
                    })
                    .collect();
                t.push(extend(&imgs)?);
            }
            Some((q, t))
        }
        None => None,
    };
    let labels: Vec<String> = all_coords.iter().map(|z| coords_label(z)).collect();
    let module = FiniteModule::from_parts(&add, left, right, Some(labels))?;
    let mut witness = vec![0usize; m.order * n.order];
    for me in 0..m.order {
        for ne in 0..n.order {
            witness[me * n.order + ne] = p.rank_of_coords(&p.pure_coords(me, ne));
        }
    }
    // The witness must be biadditive; spot check both slots fully.
    for me in 0..m.order {
        for me2 in 0..m.order {
            for ne in 0..n.order {
                let lhs = witness[m.add(me, me2) * n.order + ne];
                let rhs = module.add(witness[me * n.order + ne], witness[me2 * n.order + ne]);
                if lhs != rhs {
                    return Err(Error::PropertyFailed(String::from(
                        "pure tensor table is not additive in the first slot",
                    )));
                }
            }
        }
    }
    for ne in 0..n.order {
        for ne2 in 0..n.order {
            for me in 0..m.order {
                let lhs = witness[me * n.order + n.add(ne, ne2)];
                let rhs = module.add(witness[me * n.order + ne], witness[me * n.order + ne2]);
                if lhs != rhs {
                    return Err(Error::PropertyFailed(String::from(
                        "pure tensor table is not additive in the second slot",
                    )));
                }
            }
        }
    }
    Ok((module, witness))
}

/// S (x)_R M along a homomorphism R -> S, for a left R-module M: the standard
/// base change, returned with its left S-structure.
pub fn base_change(f: &RingHom, m: &FiniteModule) -> Result<TensorResult, Error> {
    let s_mod = bimodule_via_right(&f.cod, f)?;
    tensor_over(&f.dom, &s_mod, m)
}

/// Universal property on a materialized product: any balanced biadditive map
/// into a small abelian carrier factors uniquely through the pure tensor table.
pub fn universal_property_check(
    r: &RingRef,
    m: &FiniteModule,
    n: &FiniteModule,
    t: &TensorResult,
    phi: &dyn Fn(usize, usize) -> usize,
    target: &FiniteModule,
) -> Result<(), Error> {
    let (Some(module), Some(witness)) = (&t.module, &t.witness) else {
        return Err(Error::BoundExceeded {
            what: "universal property needs a materialized product",
            limit: MATERIALIZE_BOUND,
            got: t.presentation.order as usize,
        });
    };
    if target.order > 64 {
        return Err(Error::BoundExceeded {
            what: "universal property target",
            limit: 64,
            got: target.order,
        });
    }
    // The given map must be biadditive and balanced; that is the caller's claim
    // and it is cheap to verify outright.
    for a in 0..m.order {
        for a2 in 0..m.order {
            for b in 0..n.order {
                if phi(m.add(a, a2), b) != target.add(phi(a, b), phi(a2, b)) {
                    return Err(Error::InvalidInput(String::from(
                        "map is not additive in the first slot",
                    )));
                }
            }
        }
    }
    for b in 0..n.order {
        for b2 in 0..n.order {
            for a in 0..m.order {
                if phi(a, n.add(b, b2)) != target.add(phi(a, b), phi(a, b2)) {
                    return Err(Error::InvalidInput(String::from(
                        "map is not additive in the second slot",
                    )));
                }
            }
        }
    }
    for rho in 0..r.order {
        for a in 0..m.order {
            for b in 0..n.order {
                if phi(m.act_right(a, rho), b) != phi(a, n.act_left(rho, b)) {
                    return Err(Error::InvalidInput(String::from("map is not balanced")));
                }
            }
        }
    }
    // Existence: linear extension from the basis expansions.
    let p = &t.presentation;
    let imgs: Vec<usize> = (0..p.dim())
        .map(|j| {
            p.basis_pure(j).iter().fold(target.zero, |acc, &(c, me, ne)| {
                target.add(acc, multiple(target, phi(me, ne), c))
            })
        })
        .collect();
    for (j, &img) in imgs.iter().enumerate() {
        if multiple(target, img, p.factors[j]) != target.zero {
            return Err(Error::PropertyFailed(String::from(
                "factorization is not annihilated by the basis orders",
            )));
        }
    }
    let h: Vec<usize> = (0..module.order)
        .map(|rank| {
            let z = p.coords_of_rank(rank);
            (0..p.dim()).fold(target.zero, |acc, j| {
                target.add(acc, multiple(target, imgs[j], z[j]))
            })
        })
        .collect();
    for a in 0..m.order {
        for b in 0..n.order {
            if h[witness[a * n.order + b]] != phi(a, b) {
                return Err(Error::PropertyFailed(String::from(
                    "factorization does not reproduce the map on pures",
                )));
            }
        }
    }
    // Uniqueness: pure tensors generate the product additively, so any two
    // factorizations agreeing on pures agree everywhere.
    let mut span = vec![false; module.order];
    span[module.zero] = true;
    let mut list = vec![module.zero];
    for &w in witness.iter() {
        if span[w] {
            continue;
        }
        let mut wave = vec![w];
        while let Some(y) = wave.pop() {
            if span[y] {
                continue;
            }
            span[y] = true;
            list.push(y);
            for i in 0..list.len() {
                let z = module.add(list[i], y);
                if !span[z] {
                    wave.push(z);
                }
            }
        }
    }
    if list.len() != module.order {
        return Err(Error::PropertyFailed(String::from(
            "pure tensors do not generate the product",
        )));
    }
    Ok(())
}

/// Tensor product of two commutative algebras over a base ring, with the ring
/// structure carried on basis products. Small results are materialized as table
/// rings with both canonical inclusions.
#[derive(Debug, Clone)]
pub struct RingTensor {
    pub result: TensorResult,
    /// basis_mul[a][b] = coordinates of e_a * e_b
    pub basis_mul: Vec<Vec<Vec<u64>>>,
    pub one_coords: Vec<u64>,
    pub ring: Option<RingRef>,
    pub left_inclusion: Option<RingHom>,
    pub right_inclusion: Option<RingHom>,
}

impl RingTensor {
    pub fn mul_coords(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = &self.result.presentation;
        let mut acc = p.zero_coords();
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let scaled = p.scale_coords(&self.basis_mul[a][b], xa as u128 * yb as u128);
                acc = p.add_coords(&acc, &scaled);
            }
        }
        acc
    }
}

/// L (x)_A B for two commutative A-algebras given by their structure maps.
pub fn tensor_ring(a: &RingRef, to_left: &RingHom, to_right: &RingHom) -> Result<RingTensor, Error> {
    if **a != *to_left.dom || **a != *to_right.dom {
        return Err(Error::RingMismatch);
    }
    let l = &to_left.cod;
    let b = &to_right.cod;
    if !l.commutative || !b.commutative || !a.commutative {
        return Err(Error::NotCommutative);
    }
    let m = bimodule_via_right(l, to_left)?;
    let n = bimodule_via_left(b, to_right)?;
    let result = tensor_over(a, &m, &n)?;
    let p = &result.presentation;
    let dim = p.dim();
    let mut basis_mul = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = p.zero_coords();
            for &(c, lp, bp) in p.basis_pure(i) {
                for &(c2, lq, bq) in p.basis_pure(j) {
                    let prod = p.pure_coords(l.mul(lp, lq), b.mul(bp, bq));
                    acc = p.add_coords(&acc, &p.scale_coords(&prod, c as u128 * c2 as u128));
                }
            }
            basis_mul[i][j] = acc;
        }
    }
    let one_coords = p.pure_coords(l.one, b.one);
    let rt = RingTensor {
        basis_mul,
        one_coords,
        ring: None,
        left_inclusion: None,
        right_inclusion: None,
        result,
    };
    audit_ring_tensor(&rt)?;
    let mut rt = rt;
    if let Some(module) = &rt.result.module {
        let p = &rt.result.presentation;
        let total = module.order;
        let coords: Vec<Vec<u64>> = (0..total).map(|r| p.coords_of_rank(r)).collect();
        let add: Vec<Vec<usize>> = (0..total)
            .map(|x| (0..total).map(|y| module.add(x, y)).collect())
            .collect();
        // e_j * y rows first, then every product by distributing over the first
        // slot's coordinates.
        let gen_rows: Vec<Vec<Vec<u64>>> = (0..p.dim())
            .map(|j| {
                (0..total)
                    .map(|y| {
                        let z = &coords[y];
                        let mut acc = p.zero_coords();
                        for (k, &zk) in z.iter().enumerate() {
                            if zk != 0 {
                                acc = p.add_coords(
                                    &acc,
                                    &p.scale_coords(&rt.basis_mul[j][k], zk as u128),
                                );
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let mul: Vec<Vec<usize>> = (0..total)
            .map(|x| {
                let zx = &coords[x];
                (0..total)
                    .map(|y| {
                        let mut acc = p.zero_coords();
                        for (j, &zj) in zx.iter().enumerate() {
                            if zj != 0 {
                                acc = p.add_coords(
                                    &acc,
                                    &p.scale_coords(&gen_rows[j][y], zj as u128),
                                );
                            }
                        }
                        p.rank_of_coords(&acc)
                    })
                    .collect()
            })
            .collect();
        let mut ring = FiniteRing::from_tables(&add, &mul)?;
        ring.labels = module.labels.clone();
        let ring = alloc::rc::Rc::new(ring);
        let left_map: Vec<usize> = (0..l.order)
            .map(|x| p.rank_of_coords(&p.pure_coords(x, b.one)))
            .collect();
        let right_map: Vec<usize> = (0..b.order)
            .map(|x| p.rank_of_coords(&p.pure_coords(l.one, x)))
            .collect();
        rt.left_inclusion = Some(RingHom::new(l, &ring, left_map)?);
        rt.right_inclusion = Some(RingHom::new(b, &ring, right_map)?);
        rt.ring = Some(ring);
    }
    Ok(rt)
}

/// Basis-level ring laws; bilinearity of the product extends them to the whole
/// carrier.
fn audit_ring_tensor(rt: &RingTensor) -> Result<(), Error> {
    let p = &rt.result.presentation;
    let dim = p.dim();
    let e = |j: usize| -> Vec<u64> {
        let mut z = p.zero_coords();
        z[j] = 1 % p.factors[j];
        z
    };
    for i in 0..dim {
        for j in 0..dim {
            if rt.basis_mul[i][j] != rt.basis_mul[j][i] {
                return Err(Error::NotCommutative);
            }
        }
    }
    for j in 0..dim {
        if rt.mul_coords(&rt.one_coords, &e(j)) != e(j) {
            return Err(Error::AxiomFailed {
                law: "multiplicative identity",
            });
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let lhs = rt.mul_coords(&rt.basis_mul[i][j], &e(k));
                let rhs = rt.mul_coords(&e(i), &rt.basis_mul[j][k]);
                if lhs != rhs {
                    return Err(Error::AxiomFailed {
                        law: "associativity of multiplication",
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::regular;
    use crate::ring::{local_decomposition, mk_galois_field, mk_zmod, units};
    use alloc::rc::Rc;

    fn rc(r: FiniteRing) -> RingRef {
        Rc::new(r)
    }

    fn mod_hom(n: usize, d: usize) -> (RingRef, RingRef, RingHom) {
        let zn = rc(mk_zmod(n).unwrap());
        let zd = rc(mk_zmod(d).unwrap());
        let h = RingHom::new(&zn, &zd, (0..n).map(|i| i % d).collect()).unwrap();
        (zn, zd, h)
    }

    #[test]
    fn z4_tensor_z6_collapses_to_z2() {
        let (z12, z4, h4) = mod_hom(12, 4);
        let (_, z6, h6) = mod_hom(12, 6);
        let m = bimodule_via_right(&z4, &h4).unwrap();
        let n = bimodule_via_left(&z6, &h6).unwrap();
        let t = tensor_over(&z12, &m, &n).unwrap();
        assert_eq!(t.presentation.factors, vec![2]);
        let q = t.witness.as_ref().unwrap();
        let module = t.module.as_ref().unwrap();
        // 1 (x) 1 generates; 2 (x) 3 dies; 1 (x) 3 equals 3 * (1 (x) 1).
        assert_ne!(q[1 * 6 + 1], module.zero);
        assert_eq!(q[2 * 6 + 3], module.zero);
        assert_eq!(q[1 * 6 + 3], q[1 * 6 + 1]);
        drop(z12);
    }

    #[test]
    fn universal_property_on_the_z2_quotient() {
        let (z12, z4, h4) = mod_hom(12, 4);
        let (_, z6, h6) = mod_hom(12, 6);
        let m = bimodule_via_right(&z4, &h4).unwrap();
        let n = bimodule_via_left(&z6, &h6).unwrap();
        let t = tensor_over(&z12, &m, &n).unwrap();
        let z2 = rc(mk_zmod(2).unwrap());
        let target = regular(&z2);
        let phi = |a: usize, b: usize| (a * b) % 2;
        universal_property_check(&z12, &m, &n, &t, &phi, &target).unwrap();
        // A non-balanced map is rejected as input, not misreported.
        let bad = |a: usize, _b: usize| a % 2;
        assert!(matches!(
            universal_property_check(&z12, &m, &n, &t, &bad, &target),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn f4_tensor_f4_is_a_product_of_two_copies() {
        let f2 = rc(mk_zmod(2).unwrap());
        let f4 = rc(mk_galois_field(2, &[1, 1, 1]).unwrap());
        let incl = RingHom::new(&f2, &f4, vec![0, 1]).unwrap();
        let rt = tensor_ring(&f2, &incl, &incl).unwrap();
        let ring = rt.ring.clone().unwrap();
        assert_eq!(ring.order, 16);
        assert_eq!(rt.result.presentation.factors, vec![2, 2, 2, 2]);
        let dec = local_decomposition(&ring).unwrap();
        assert_eq!(dec.factors.len(), 2);
        for f in &dec.factors {
            assert_eq!(f.ring.order, 4);
            // each factor is the field with four elements: three units forming
            // a cyclic group
            let u = units(&f.ring).unwrap();
            assert_eq!(u.group.order, 3);
        }
    }

    #[test]
    fn inclusions_into_a_ring_tensor_commute_with_the_base() {
        let f2 = rc(mk_zmod(2).unwrap());
        let f4 = rc(mk_galois_field(2, &[1, 1, 1]).unwrap());
        let incl = RingHom::new(&f2, &f4, vec![0, 1]).unwrap();
        let rt = tensor_ring(&f2, &incl, &incl).unwrap();
        let li = rt.left_inclusion.as_ref().unwrap();
        let ri = rt.right_inclusion.as_ref().unwrap();
        // both inclusions agree on the image of the base field
        for x in 0..2 {
            assert_eq!(li.apply(incl.apply(x)), ri.apply(incl.apply(x)));
        }
        // and differ somewhere off it
        assert_ne!(li.values(), ri.values());
    }

    #[test]
    fn pair_count_bound_is_enforced() {
        let z128 = rc(mk_zmod(128).unwrap());
        let m = regular(&z128);
        assert!(matches!(
            tensor_over(&z128, &m, &m),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn large_elementary_abelian_tensor_stays_at_the_coordinate_layer() {
        let z2 = rc(mk_zmod(2).unwrap());
        let line = regular(&z2);
        let mut big = line.clone();
        for _ in 1..6 {
            big = crate::module::direct_sum(&big, &line).unwrap();
        }
        assert_eq!(big.order, 64);
        let t = tensor_over(&z2, &big, &big).unwrap();
        assert_eq!(t.presentation.dim(), 36);
        assert!(t.presentation.factors.iter().all(|&d| d == 2));
        assert!(t.module.is_none());
        // pure of two basis vectors is a basis-sized coordinate vector with a
        // single nonzero entry
        let md = AbelianDecomp::compute(&big).unwrap();
        let z = t.presentation.pure_coords(md.basis[0], md.basis[1]);
        assert_eq!(z.iter().filter(|&&x| x != 0).count(), 1);
    }

    #[test]
    fn tensor_with_the_zero_module_is_trivial() {
        let z4 = rc(mk_zmod(4).unwrap());
        let m = regular(&z4);
        let (zero_mod, _) = crate::module::submodule_on(&m, &[0]).unwrap();
        let t = tensor_over(&z4, &m, &zero_mod).unwrap();
        assert_eq!(t.presentation.order, 1);
        assert_eq!(t.module.as_ref().unwrap().order, 1);
    }

    #[test]
    fn base_change_of_a_line_gives_the_plane_over_the_bigger_field() {
        let f2 = rc(mk_zmod(2).unwrap());
        let f4 = rc(mk_galois_field(2, &[1, 1, 1]).unwrap());
        let incl = RingHom::new(&f2, &f4, vec![0, 1]).unwrap();
        let line = regular(&f2);
        let t = base_change(&incl, &line).unwrap();
        let module = t.module.as_ref().unwrap();
        assert_eq!(module.order, 4);
        // left action by g permutes the three nonzero elements in one orbit
        assert_eq!(module.left_ring().map(|r| r.order), Some(4));
    }
}
