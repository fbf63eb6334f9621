//! Finite groups as operation tables, homomorphisms with audits, subgroups,
//! quotients, invariant factors, and exactness checking for sequences of
//! homomorphisms. The exactness report produced here is the common currency the
//! descent verifiers hand back to callers.

use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::decomp::{AbelianDecomp, AddView};
use crate::error::Error;
use crate::{AUDIT_SAMPLES, FULL_AUDIT_BOUND};

pub type GroupRef = Rc<FiniteGroup>;

/// A finite group given by its full operation table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    pub order: usize,
    pub identity: usize,
    pub abelian: bool,
    pub labels: Vec<String>,
    op_t: Vec<u16>,
    inv_t: Vec<u16>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.identity == other.identity
            && self.op_t == other.op_t
    }
}

impl Eq for FiniteGroup {}

impl AddView for FiniteGroup {
    fn order(&self) -> usize {
        self.order
    }
    fn zero(&self) -> usize {
        self.identity
    }
    fn add(&self, a: usize, b: usize) -> usize {
        self.op(a, b)
    }
    fn neg(&self, a: usize) -> usize {
        self.inv(a)
    }
}

impl FiniteGroup {
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op_t[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv_t[a] as usize
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.identity;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.op(acc, base);
            }
            base = self.op(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1u64;
        let mut acc = a;
        while acc != self.identity {
            acc = self.op(acc, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, a| lcm(acc, self.element_order(a)))
    }

    pub fn label(&self, a: usize) -> &str {
        self.labels.get(a).map_or("?", String::as_str)
    }

    /// Builds a group from a nested operation table, locating the identity and
    /// inverses and auditing associativity.
    pub fn from_table(op: &[Vec<usize>]) -> Result<Self, Error> {
        let n = op.len();
        if n == 0 {
            return Err(Error::InvalidInput(String::from("empty operation table")));
        }
        if n > u16::MAX as usize {
            return Err(Error::BoundExceeded {
                what: "group order",
                limit: u16::MAX as usize,
                got: n,
            });
        }
        if op.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch);
        }
        if op.iter().any(|row| row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidInput(String::from(
                "table entry out of carrier range",
            )));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| op[e][x] == x && op[x][e] == x))
            .ok_or(Error::AxiomFailed { law: "identity" })?;
        let mut inv_t = vec![0u16; n];
        for x in 0..n {
            let ix = (0..n)
                .find(|&y| op[x][y] == identity && op[y][x] == identity)
                .ok_or(Error::AxiomFailed { law: "inverses" })?;
            inv_t[x] = ix as u16;
        }
        let abelian = (0..n).all(|a| (0..n).all(|b| op[a][b] == op[b][a]));
        let g = FiniteGroup {
            order: n,
            identity,
            abelian,
            labels: (0..n).map(|i| i.to_string()).collect(),
            op_t: op
                .iter()
                .flat_map(|row| row.iter().map(|&x| x as u16))
                .collect(),
            inv_t,
        };
        g.audit()?;
        Ok(g)
    }

    pub fn from_flat(order: usize, flat: &[usize]) -> Result<Self, Error> {
        if flat.len() != order * order {
            return Err(Error::ShapeMismatch);
        }
        let nested: Vec<Vec<usize>> = flat.chunks(order).map(<[usize]>::to_vec).collect();
        Self::from_table(&nested)
    }

    /// Associativity audit: full up to the audit bound, seeded samples beyond.
    pub fn audit(&self) -> Result<(), Error> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<(), Error> {
            if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)) {
                return Err(Error::AxiomFailed { law: "associativity" });
            }
            Ok(())
        };
        if n <= FULL_AUDIT_BOUND {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xA1335 ^ n as u64);
            for _ in 0..AUDIT_SAMPLES {
                let a = (rng.next_u64() % n as u64) as usize;
                let b = (rng.next_u64() % n as u64) as usize;
                let c = (rng.next_u64() % n as u64) as usize;
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            identity: 0,
            abelian: true,
            labels: vec![String::from("1")],
            op_t: vec![0],
            inv_t: vec![0],
        }
    }

    pub fn cyclic(n: usize) -> Self {
        let op: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(&op).expect("cyclic table is a group")
    }

    /// True when `elems` (sorted, deduplicated by the caller or not) forms a
    /// subgroup of this group.
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in elems {
            if x >= self.order {
                return false;
            }
            member[x] = true;
        }
        if !member[self.identity] {
            return false;
        }
        elems.iter().all(|&x| {
            member[self.inv(x)] && elems.iter().all(|&y| member[self.op(x, y)])
        })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A subgroup repackaged as a group of its own, with the carrier embedding.
pub struct Subgroup {
    pub group: FiniteGroup,
    /// subgroup element index -> ambient element index, ascending
    pub embed: Vec<usize>,
}

/// Forms the subgroup on the given ambient elements, auditing closure.
pub fn subgroup_from_elems(g: &FiniteGroup, elems: &[usize]) -> Result<Subgroup, Error> {
    let mut embed: Vec<usize> = elems.to_vec();
    embed.sort_unstable();
    embed.dedup();
    if !g.is_subgroup(&embed) {
        return Err(Error::AxiomFailed { law: "subgroup closure" });
    }
    let mut index_of = vec![usize::MAX; g.order];
    for (i, &x) in embed.iter().enumerate() {
        index_of[x] = i;
    }
    let k = embed.len();
    let op: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| index_of[g.op(embed[i], embed[j])]).collect())
        .collect();
    let mut group = FiniteGroup::from_table(&op)?;
    group.labels = embed.iter().map(|&x| g.label(x).to_string()).collect();
    Ok(Subgroup { group, embed })
}

/// A group homomorphism given by its value table, audited on construction.
#[derive(Debug, Clone)]
pub struct GroupHom {
    pub dom: GroupRef,
    pub cod: GroupRef,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(dom: &GroupRef, cod: &GroupRef, map: Vec<usize>) -> Result<Self, Error> {
        if map.len() != dom.order {
            return Err(Error::ShapeMismatch);
        }
        if map.iter().any(|&y| y >= cod.order) {
            return Err(Error::InvalidInput(String::from(
                "homomorphism value out of range",
            )));
        }
        if map[dom.identity] != cod.identity {
            return Err(Error::NotAHom { law: "identity" });
        }
        let check = |a: usize, b: usize| -> Result<(), Error> {
            if map[dom.op(a, b)] != cod.op(map[a], map[b]) {
                return Err(Error::NotAHom { law: "operation" });
            }
            Ok(())
        };
        let n = dom.order;
        if n <= FULL_AUDIT_BOUND {
            for a in 0..n {
                for b in 0..n {
                    check(a, b)?;
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xA1335 ^ n as u64);
            for _ in 0..AUDIT_SAMPLES {
                let a = (rng.next_u64() % n as u64) as usize;
                let b = (rng.next_u64() % n as u64) as usize;
                check(a, b)?;
            }
        }
        Ok(GroupHom {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
    }

    pub fn identity_on(g: &GroupRef) -> Self {
        GroupHom {
            dom: g.clone(),
            cod: g.clone(),
            map: (0..g.order).collect(),
        }
    }

    /// The unique map from the trivial group.
    pub fn from_trivial(cod: &GroupRef) -> Self {
        GroupHom {
            dom: Rc::new(FiniteGroup::trivial()),
            cod: cod.clone(),
            map: vec![cod.identity],
        }
    }

    /// The unique map to the trivial group.
    pub fn to_trivial(dom: &GroupRef) -> Self {
        GroupHom {
            dom: dom.clone(),
            cod: Rc::new(FiniteGroup::trivial()),
            map: vec![0; dom.order],
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }

    /// Composite `other . self` (apply self first).
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, Error> {
        if *self.cod != *other.dom {
            return Err(Error::NotComposable);
        }
        Ok(GroupHom {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.order];
        self.map.iter().all(|&y| !core::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.order];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.iter().all(|&b| b)
    }

    pub fn image_elems(&self) -> Vec<usize> {
        let mut out = self.map.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn kernel_elems(&self) -> Vec<usize> {
        (0..self.dom.order)
            .filter(|&x| self.map[x] == self.cod.identity)
            .collect()
    }
}

pub fn kernel(f: &GroupHom) -> Result<Subgroup, Error> {
    subgroup_from_elems(&f.dom, &f.kernel_elems())
}

pub fn image(f: &GroupHom) -> Result<Subgroup, Error> {
    subgroup_from_elems(&f.cod, &f.image_elems())
}

/// Status of a side hypothesis attached to an exactness verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypStatus {
    Verified,
    Failed,
    Unverified,
}

#[derive(Debug, Clone)]
pub struct Hypothesis {
    pub name: String,
    pub status: HypStatus,
}

#[derive(Debug, Clone)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    /// Present for abelian objects; `None` for nonabelian groups or pointed sets.
    pub invariant_factors: Option<Vec<u64>>,
}

#[derive(Debug, Clone)]
pub struct PositionReport {
    /// Index of the object (within the sequence) at which exactness is measured.
    pub at: usize,
    pub image_order: usize,
    pub kernel_order: usize,
    pub exact: bool,
}

/// Verdict for a whole sequence: objects, per-position exactness, and any side
/// hypotheses the caller checked along the way.
#[derive(Debug, Clone)]
pub struct ExactnessReport {
    pub sequence: Vec<String>,
    pub groups: Vec<GroupSummary>,
    pub positions: Vec<PositionReport>,
    pub hypotheses: Vec<Hypothesis>,
    /// Pointed-set semantics: kernels are basepoint preimages rather than
    /// group-theoretic kernels. For homomorphisms the two coincide.
    pub pointed: bool,
}

impl ExactnessReport {
    pub fn exact_everywhere(&self) -> bool {
        self.positions.iter().all(|p| p.exact)
    }

    pub fn rename(&mut self, names: &[&str]) {
        for (i, name) in names.iter().enumerate() {
            if let Some(s) = self.sequence.get_mut(i) {
                *s = String::from(*name);
            }
            if let Some(g) = self.groups.get_mut(i) {
                g.name = String::from(*name);
            }
        }
    }
}

/// Checks exactness of a composable sequence of homomorphisms at every interior
/// object: image of the incoming map equals kernel of the outgoing one. A
/// leading map from the trivial group makes the first real object interior, so
/// injectivity claims are expressed that way.
pub fn is_exact(seq: &[GroupHom], pointed: bool) -> Result<ExactnessReport, Error> {
    if seq.is_empty() {
        return Err(Error::InvalidInput(String::from("empty sequence")));
    }
    for win in seq.windows(2) {
        if *win[0].cod != *win[1].dom {
            return Err(Error::NotComposable);
        }
    }
    let mut objects: Vec<GroupRef> = vec![seq[0].dom.clone()];
    for f in seq {
        objects.push(f.cod.clone());
    }
    let groups = objects
        .iter()
        .enumerate()
        .map(|(i, g)| GroupSummary {
            name: format!("G{i}"),
            order: g.order,
            invariant_factors: invariant_factors(g).ok(),
        })
        .collect();
    let mut positions = Vec::new();
    for i in 1..seq.len() {
        let im = seq[i - 1].image_elems();
        let ker = seq[i].kernel_elems();
        positions.push(PositionReport {
            at: i,
            image_order: im.len(),
            kernel_order: ker.len(),
            exact: im == ker,
        });
    }
    Ok(ExactnessReport {
        sequence: (0..objects.len()).map(|i| format!("G{i}")).collect(),
        groups,
        positions,
        hypotheses: vec![],
        pointed,
    })
}

/// Cosets of a normal subgroup, with minimal-index representatives, as a group.
pub struct Quotient {
    pub group: FiniteGroup,
    /// coset index -> minimal ambient representative, ascending
    pub reps: Vec<usize>,
    /// ambient element -> coset index
    pub proj: Vec<usize>,
}

pub fn quotient_abelian(g: &FiniteGroup, sub: &[usize]) -> Result<Quotient, Error> {
    let mut sub: Vec<usize> = sub.to_vec();
    sub.sort_unstable();
    sub.dedup();
    if !g.is_subgroup(&sub) {
        return Err(Error::AxiomFailed { law: "subgroup closure" });
    }
    for x in 0..g.order {
        for &s in &sub {
            let conj = g.op(g.op(x, s), g.inv(x));
            if sub.binary_search(&conj).is_err() {
                return Err(Error::NotNormal);
            }
        }
    }
    let mut coset_of = vec![usize::MAX; g.order];
    let mut reps = Vec::new();
    for x in 0..g.order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &s in &sub {
            coset_of[g.op(x, s)] = idx;
        }
    }
    let k = reps.len();
    let op: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| coset_of[g.op(reps[i], reps[j])]).collect())
        .collect();
    let mut group = FiniteGroup::from_table(&op)?;
    group.labels = reps.iter().map(|&x| format!("[{}]", g.label(x))).collect();
    Ok(Quotient {
        group,
        reps,
        proj: coset_of,
    })
}

/// Invariant factors d_1 | d_2 | ... of a finite abelian group.
pub fn invariant_factors(g: &FiniteGroup) -> Result<Vec<u64>, Error> {
    if !g.abelian {
        return Err(Error::NotAbelian);
    }
    let d = AbelianDecomp::compute(g)?;
    Ok(d.orders)
}

/// Isomorphism test with explicit witness. Abelian pairs are decided by
/// invariant factors and the witness is assembled coordinatewise. Nonabelian
/// pairs run a generator-image backtracking search, admitted up to order 64.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Vec<usize>>, Error> {
    if g.order != h.order || g.abelian != h.abelian {
        return Ok(None);
    }
    if g.abelian {
        let dg = AbelianDecomp::compute(g)?;
        let dh = AbelianDecomp::compute(h)?;
        if dg.orders != dh.orders {
            return Ok(None);
        }
        let map: Vec<usize> = (0..g.order).map(|x| dh.elem_at(&dg.coords(x))).collect();
        verify_iso(g, h, &map)?;
        return Ok(Some(map));
    }
    if g.order > 64 {
        return Err(Error::BoundExceeded {
            what: "nonabelian isomorphism search",
            limit: 64,
            got: g.order,
        });
    }
    let g_orders: Vec<u64> = (0..g.order).map(|x| g.element_order(x)).collect();
    let h_orders: Vec<u64> = (0..h.order).map(|x| h.element_order(x)).collect();
    let g_stats = {
        let mut s = g_orders.clone();
        s.sort_unstable();
        s
    };
    let h_stats = {
        let mut s = h_orders.clone();
        s.sort_unstable();
        s
    };
    if g_stats != h_stats {
        return Ok(None);
    }
    // Greedy generating sequence for g.
    let mut gens = Vec::new();
    let mut closed = closure(g, &[]);
    while closed.iter().filter(|&&b| b).count() < g.order {
        let x = (0..g.order).find(|&x| !closed[x]).expect("not yet generated");
        gens.push(x);
        closed = closure(g, &gens);
    }
    let mut images = vec![0usize; gens.len()];
    if backtrack(g, h, &gens, &g_orders, &h_orders, 0, &mut images) {
        let map = extend_by_generators(g, h, &gens, &images).expect("search verified extension");
        return Ok(Some(map));
    }
    Ok(None)
}

fn verify_iso(g: &FiniteGroup, h: &FiniteGroup, map: &[usize]) -> Result<(), Error> {
    let mut seen = vec![false; h.order];
    for &y in map {
        if core::mem::replace(&mut seen[y], true) {
            return Err(Error::PropertyFailed(String::from("witness not injective")));
        }
    }
    for a in 0..g.order {
        for b in 0..g.order {
            if map[g.op(a, b)] != h.op(map[a], map[b]) {
                return Err(Error::PropertyFailed(String::from(
                    "witness not a homomorphism",
                )));
            }
        }
    }
    Ok(())
}

fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<bool> {
    let mut member = vec![false; g.order];
    member[g.identity] = true;
    let mut stack = vec![g.identity];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.op(x, s);
            if !member[y] {
                member[y] = true;
                stack.push(y);
            }
        }
    }
    member
}

fn backtrack(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    g_orders: &[u64],
    h_orders: &[u64],
    pos: usize,
    images: &mut Vec<usize>,
) -> bool {
    if pos == gens.len() {
        return extend_by_generators(g, h, gens, images).is_some();
    }
    for y in 0..h.order {
        if h_orders[y] != g_orders[gens[pos]] {
            continue;
        }
        images[pos] = y;
        // Partial consistency: the prefix must already extend coherently.
        if extend_by_generators(g, h, &gens[..=pos], &images[..=pos]).is_some()
            && backtrack(g, h, gens, g_orders, h_orders, pos + 1, images)
        {
            return true;
        }
    }
    false
}

/// Tries to extend gens -> images to a full homomorphism by closing products.
/// Returns the total map when the extension is consistent, injective, and a
/// homomorphism on the generated subgroup; for a full generating set that means
/// an isomorphism witness.
fn extend_by_generators(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order];
    map[g.identity] = h.identity;
    let mut stack = vec![g.identity];
    while let Some(x) = stack.pop() {
        for (i, &s) in gens.iter().enumerate() {
            let gx = g.op(x, s);
            let hx = h.op(map[x], images[i]);
            if map[gx] == usize::MAX {
                map[gx] = hx;
                stack.push(gx);
            } else if map[gx] != hx {
                return None;
            }
        }
    }
    // Check the hom property on everything defined so far.
    let defined: Vec<usize> = (0..g.order).filter(|&x| map[x] != usize::MAX).collect();
    let mut seen = vec![false; h.order];
    for &x in &defined {
        if core::mem::replace(&mut seen[map[x]], true) {
            return None;
        }
    }
    for &a in &defined {
        for &b in &defined {
            let ab = g.op(a, b);
            if map[ab] == usize::MAX || map[ab] != h.op(map[a], map[b]) {
                return None;
            }
        }
    }
    if defined.len() == g.order {
        Some(map)
    } else {
        // Proper subgroup: fine for prefix consistency checks, not a witness.
        Some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteGroup {
        let op = vec![
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ];
        FiniteGroup::from_table(&op).unwrap()
    }

    fn sym3() -> FiniteGroup {
        // All permutations of three points, composed left to right.
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let index = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
        let op: Vec<Vec<usize>> = (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| {
                        let composed = [
                            perms[j][perms[i][0]],
                            perms[j][perms[i][1]],
                            perms[j][perms[i][2]],
                        ];
                        index(&composed)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&op).unwrap()
    }

    #[test]
    fn cyclic_group_basics() {
        let c6 = FiniteGroup::cyclic(6);
        assert!(c6.abelian);
        assert_eq!(c6.element_order(1), 6);
        assert_eq!(c6.element_order(2), 3);
        assert_eq!(c6.exponent(), 6);
        assert_eq!(invariant_factors(&c6).unwrap(), vec![6]);
    }

    #[test]
    fn klein_group_invariants() {
        let v = klein();
        assert!(v.abelian);
        assert_eq!(invariant_factors(&v).unwrap(), vec![2, 2]);
        assert_eq!(v.exponent(), 2);
    }

    #[test]
    fn sym3_is_nonabelian() {
        let s3 = sym3();
        assert!(!s3.abelian);
        assert_eq!(s3.order, 6);
        assert!(matches!(invariant_factors(&s3), Err(Error::NotAbelian)));
        let mut orders: Vec<u64> = (0..6).map(|x| s3.element_order(x)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
    }

    #[test]
    fn kernel_and_image_of_reduction() {
        let c6 = Rc::new(FiniteGroup::cyclic(6));
        let c3 = Rc::new(FiniteGroup::cyclic(3));
        let f = GroupHom::new(&c6, &c3, vec![0, 1, 2, 0, 1, 2]).unwrap();
        let k = kernel(&f).unwrap();
        assert_eq!(k.embed, vec![0, 3]);
        assert_eq!(k.group.order, 2);
        let im = image(&f).unwrap();
        assert_eq!(im.group.order, 3);
        assert!(f.is_surjective());
        assert!(!f.is_injective());
    }

    #[test]
    fn short_exact_sequence_verifies() {
        let c2 = Rc::new(FiniteGroup::cyclic(2));
        let c6 = Rc::new(FiniteGroup::cyclic(6));
        let c3 = Rc::new(FiniteGroup::cyclic(3));
        let seq = vec![
            GroupHom::from_trivial(&c2),
            GroupHom::new(&c2, &c6, vec![0, 3]).unwrap(),
            GroupHom::new(&c6, &c3, vec![0, 1, 2, 0, 1, 2]).unwrap(),
            GroupHom::to_trivial(&c3),
        ];
        let report = is_exact(&seq, false).unwrap();
        assert!(report.exact_everywhere());
        assert_eq!(report.positions.len(), 3);
        assert_eq!(report.groups[1].invariant_factors, Some(vec![2]));
    }

    #[test]
    fn exactness_failure_is_detected() {
        // Twice the kernel: C2 -> C6 composed with C6 -> C2 reduction is zero,
        // but the image {0,3} is smaller than the kernel {0,2,4}.
        let c2 = Rc::new(FiniteGroup::cyclic(2));
        let c6 = Rc::new(FiniteGroup::cyclic(6));
        let seq = vec![
            GroupHom::new(&c2, &c6, vec![0, 3]).unwrap(),
            GroupHom::new(&c6, &c2, vec![0, 1, 0, 1, 0, 1]).unwrap(),
        ];
        let report = is_exact(&seq, false).unwrap();
        assert!(!report.positions[0].exact);
        assert_eq!(report.positions[0].image_order, 2);
        assert_eq!(report.positions[0].kernel_order, 3);
    }

    #[test]
    fn non_composable_sequences_are_rejected() {
        let c2 = Rc::new(FiniteGroup::cyclic(2));
        let c3 = Rc::new(FiniteGroup::cyclic(3));
        let seq = vec![GroupHom::identity_on(&c2), GroupHom::identity_on(&c3)];
        assert!(matches!(is_exact(&seq, false), Err(Error::NotComposable)));
    }

    #[test]
    fn quotient_of_cyclic_by_subgroup() {
        let c6 = FiniteGroup::cyclic(6);
        let q = quotient_abelian(&c6, &[0, 3]).unwrap();
        assert_eq!(q.group.order, 3);
        assert_eq!(q.reps, vec![0, 1, 2]);
        assert_eq!(q.proj, vec![0, 1, 2, 0, 1, 2]);
    }

    #[test]
    fn quotient_rejects_non_normal_subgroup() {
        let s3 = sym3();
        // {identity, a transposition} is not normal in S3.
        let transposition = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        assert!(matches!(
            quotient_abelian(&s3, &[s3.identity, transposition]),
            Err(Error::NotNormal)
        ));
    }

    #[test]
    fn quotient_rejects_non_subgroup() {
        let c6 = FiniteGroup::cyclic(6);
        assert!(quotient_abelian(&c6, &[0, 1]).is_err());
    }

    #[test]
    fn abelian_isomorphism_by_invariants() {
        let v = klein();
        let c4 = FiniteGroup::cyclic(4);
        assert_eq!(are_isomorphic(&v, &c4).unwrap(), None);

        // C6 in a shuffled presentation: mixed-radix (Z/2) x (Z/3).
        let c6 = FiniteGroup::cyclic(6);
        let op: Vec<Vec<usize>> = (0..6)
            .map(|a| {
                (0..6)
                    .map(|b| {
                        let (a2, a3) = (a / 3, a % 3);
                        let (b2, b3) = (b / 3, b % 3);
                        ((a2 + b2) % 2) * 3 + (a3 + b3) % 3
                    })
                    .collect()
            })
            .collect();
        let mixed = FiniteGroup::from_table(&op).unwrap();
        let w = are_isomorphic(&c6, &mixed).unwrap().expect("isomorphic");
        verify_iso(&c6, &mixed, &w).unwrap();
    }

    #[test]
    fn nonabelian_isomorphism_search() {
        let s3 = sym3();
        let w = are_isomorphic(&s3, &s3).unwrap().expect("identity candidates");
        verify_iso(&s3, &s3, &w).unwrap();

        // Same order, different structure: no witness.
        let c6 = FiniteGroup::cyclic(6);
        assert_eq!(are_isomorphic(&s3, &c6).unwrap(), None);
    }

    #[test]
    fn nonabelian_bound_is_enforced() {
        // Dihedral group of order 72: rotations and reflections of a 36-gon.
        let n = 36;
        let order = 2 * n;
        let op: Vec<Vec<usize>> = (0..order)
            .map(|a| {
                (0..order)
                    .map(|b| {
                        let (ra, fa) = (a % n, a / n);
                        let (rb, fb) = (b % n, b / n);
                        // (r^ra f^fa)(r^rb f^fb): flip conjugates rotation
                        let r = if fa == 0 { (ra + rb) % n } else { (ra + n - rb) % n };
                        let f = (fa + fb) % 2;
                        f * n + r
                    })
                    .collect()
            })
            .collect();
        let d36 = FiniteGroup::from_table(&op).unwrap();
        assert!(!d36.abelian);
        assert!(matches!(
            are_isomorphic(&d36, &d36),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn subgroup_closure_is_audited() {
        let c6 = FiniteGroup::cyclic(6);
        assert!(subgroup_from_elems(&c6, &[0, 2, 4]).is_ok());
        assert!(subgroup_from_elems(&c6, &[0, 2]).is_err());
    }
}
