//! Finite modules over table rings: one-sided and two-sided actions with full
//! audits, homomorphism enumeration, automorphism groups, submodule lattices,
//! and the multiplication maps that decide when a sub-bimodule of a ring
//! extension is invertible.

use alloc::collections::BTreeMap;
use alloc::format;

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::decomp::{multiple, AbelianDecomp, AddView};
use crate::error::Error;
use crate::ring::{FiniteRing, RingHom, RingRef};
use crate::{AUDIT_SAMPLES, FULL_AUDIT_BOUND, TABLE_BOUND};

/// One ring action on a module carrier, as a full value table.
#[derive(Debug, Clone)]
pub struct Action {
    pub ring: RingRef,
    /// act[r * module_order + m]
    act: Vec<u16>,
}

/// A finite module with optional left and right ring actions. With both present
/// the audit also checks the bimodule compatibility law.
#[derive(Debug, Clone)]
pub struct FiniteModule {
    pub order: usize,
    pub zero: usize,
    pub labels: Vec<String>,
    add_t: Vec<u16>,
    neg_t: Vec<u16>,
    pub left: Option<Action>,
    pub right: Option<Action>,
}

impl AddView for FiniteModule {
    fn order(&self) -> usize {
        self.order
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn add(&self, a: usize, b: usize) -> usize {
        FiniteModule::add(self, a, b)
    }
    fn neg(&self, a: usize) -> usize {
        FiniteModule::neg(self, a)
    }
}

impl FiniteModule {
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add_t[a * self.order + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg_t[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn act_left(&self, r: usize, m: usize) -> usize {
        let a = self.left.as_ref().expect("module has no left action");
        a.act[r * self.order + m] as usize
    }

    pub fn act_right(&self, m: usize, r: usize) -> usize {
        let a = self.right.as_ref().expect("module has no right action");
        a.act[r * self.order + m] as usize
    }

    pub fn left_ring(&self) -> Option<&RingRef> {
        self.left.as_ref().map(|a| &a.ring)
    }

    pub fn right_ring(&self) -> Option<&RingRef> {
        self.right.as_ref().map(|a| &a.ring)
    }

    /// Builds a module from nested tables and audits it. Either action may be
    /// absent; the additive part is always required.
    pub fn from_parts(
        add: &[Vec<usize>],
        left: Option<(RingRef, Vec<Vec<usize>>)>,
        right: Option<(RingRef, Vec<Vec<usize>>)>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, Error> {
        let n = add.len();
        if n == 0 || n > TABLE_BOUND {
            return Err(Error::BoundExceeded {
                what: "module order",
                limit: TABLE_BOUND,
                got: n,
            });
        }
        if add.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch);
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| add[z][x] == x && add[x][z] == x))
            .ok_or(Error::AxiomFailed { law: "additive identity" })?;
        let mut neg_t = vec![0u16; n];
        for x in 0..n {
            let nx = (0..n).find(|&y| add[x][y] == zero).ok_or(Error::AxiomFailed {
                law: "additive inverses",
            })?;
            neg_t[x] = nx as u16;
        }
        let pack_action = |ring: RingRef, t: Vec<Vec<usize>>| -> Result<Action, Error> {
            if t.len() != ring.order || t.iter().any(|row| row.len() != n) {
                return Err(Error::ShapeMismatch);
            }
            Ok(Action {
                ring,
                act: t
                    .iter()
                    .flat_map(|row| row.iter().map(|&x| x as u16))
                    .collect(),
            })
        };
        let m = FiniteModule {
            order: n,
            zero,
            labels: labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect()),
            add_t: add
                .iter()
                .flat_map(|row| row.iter().map(|&x| x as u16))
                .collect(),
            neg_t,
            left: left.map(|(r, t)| pack_action(r, t)).transpose()?,
            right: right.map(|(r, t)| pack_action(r, t)).transpose()?,
        };
        m.audit()?;
        Ok(m)
    }

    /// Module axioms: abelian additive structure, both action laws, and the
    /// bimodule compatibility when two actions are present. Small carriers get
    /// full loops, large ones seeded samples.
    pub fn audit(&self) -> Result<(), Error> {
        let n = self.order;
        for x in 0..n {
            if self.add(self.zero, x) != x {
                return Err(Error::AxiomFailed { law: "additive identity" });
            }
            if self.add(x, self.neg(x)) != self.zero {
                return Err(Error::AxiomFailed { law: "additive inverses" });
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return Err(Error::AxiomFailed {
                        law: "commutativity of addition",
                    });
                }
            }
        }
        let assoc = |a: usize, b: usize, c: usize| -> bool {
            self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
        };
        if n <= FULL_AUDIT_BOUND {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::AxiomFailed {
                                law: "associativity of addition",
                            });
                        }
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xA1335 ^ n as u64);
            for _ in 0..AUDIT_SAMPLES {
                let a = (rng.next_u64() % n as u64) as usize;
                let b = (rng.next_u64() % n as u64) as usize;
                let c = (rng.next_u64() % n as u64) as usize;
                if !assoc(a, b, c) {
                    return Err(Error::AxiomFailed {
                        law: "associativity of addition",
                    });
                }
            }
        }
        if let Some(a) = &self.left {
            self.audit_side(&a.ring.clone(), true)?;
        }
        if let Some(a) = &self.right {
            self.audit_side(&a.ring.clone(), false)?;
        }
        if self.left.is_some() && self.right.is_some() {
            let lr = self.left.as_ref().unwrap().ring.order;
            let rr = self.right.as_ref().unwrap().ring.order;
            let full = lr <= FULL_AUDIT_BOUND && rr <= FULL_AUDIT_BOUND && n <= FULL_AUDIT_BOUND;
            let check = |r: usize, m: usize, s: usize| -> bool {
                self.act_right(self.act_left(r, m), s) == self.act_left(r, self.act_right(m, s))
            };
            if full {
                for r in 0..lr {
                    for m in 0..n {
                        for s in 0..rr {
                            if !check(r, m, s) {
                                return Err(Error::AxiomFailed {
                                    law: "bimodule compatibility",
                                });
                            }
                        }
                    }
                }
            } else {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xA1335 ^ n as u64);
                for _ in 0..AUDIT_SAMPLES {
                    let r = (rng.next_u64() % lr as u64) as usize;
                    let m = (rng.next_u64() % n as u64) as usize;
                    let s = (rng.next_u64() % rr as u64) as usize;
                    if !check(r, m, s) {
                        return Err(Error::AxiomFailed {
                            law: "bimodule compatibility",
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn audit_side(&self, ring: &RingRef, left_side: bool) -> Result<(), Error> {
        let n = self.order;
        let act = |r: usize, m: usize| -> usize {
            if left_side {
                self.act_left(r, m)
            } else {
                self.act_right(m, r)
            }
        };
        let law = |name: &'static str| Error::AxiomFailed { law: name };
        for m in 0..n {
            if act(ring.one, m) != m {
                return Err(law("unit action"));
            }
        }
        let check = |r: usize, s: usize, m: usize, m2: usize| -> Option<&'static str> {
            if act(ring.add(r, s), m) != self.add(act(r, m), act(s, m)) {
                return Some("action distributes over ring addition");
            }
            let rs = if left_side { ring.mul(r, s) } else { ring.mul(s, r) };
            if act(rs, m) != act(r, act(s, m)) {
                return Some("action is associative over ring multiplication");
            }
            if act(r, self.add(m, m2)) != self.add(act(r, m), act(r, m2)) {
                return Some("action distributes over module addition");
            }
            None
        };
        let ro = ring.order;
        if ro <= FULL_AUDIT_BOUND && n <= FULL_AUDIT_BOUND && ro * ro * n <= 1 << 24 {
            for r in 0..ro {
                for s in 0..ro {
                    for m in 0..n {
                        if let Some(name) = check(r, s, m, (m + 1) % n) {
                            return Err(law(name));
                        }
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xA1335 ^ (n as u64) ^ ro as u64);
            for _ in 0..AUDIT_SAMPLES {
                let r = (rng.next_u64() % ro as u64) as usize;
                let s = (rng.next_u64() % ro as u64) as usize;
                let m = (rng.next_u64() % n as u64) as usize;
                let m2 = (rng.next_u64() % n as u64) as usize;
                if let Some(name) = check(r, s, m, m2) {
                    return Err(law(name));
                }
            }
        }
        Ok(())
    }

    pub fn forget_left(&self) -> FiniteModule {
        let mut m = self.clone();
        m.left = None;
        m
    }

    pub fn forget_right(&self) -> FiniteModule {
        let mut m = self.clone();
        m.right = None;
        m
    }
}

fn action_table(ring: &RingRef, order: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    (0..ring.order)
        .map(|r| (0..order).map(|m| f(r, m)).collect())
        .collect()
}

/// R as a bimodule over itself by multiplication.
pub fn regular(r: &RingRef) -> FiniteModule {
    let add: Vec<Vec<usize>> = (0..r.order)
        .map(|a| (0..r.order).map(|b| r.add(a, b)).collect())
        .collect();
    let left = action_table(r, r.order, |x, m| r.mul(x, m));
    let right = action_table(r, r.order, |x, m| r.mul(m, x));
    FiniteModule::from_parts(
        &add,
        Some((r.clone(), left)),
        Some((r.clone(), right)),
        Some(r.labels.clone()),
    )
    .expect("regular module over an audited ring")
}

/// S as an (S, R)-bimodule: left multiplication, right action through a
/// homomorphism R -> S.
pub fn bimodule_via_right(s: &RingRef, hom: &RingHom) -> Result<FiniteModule, Error> {
    if *hom.cod != **s {
        return Err(Error::RingMismatch);
    }
    let add: Vec<Vec<usize>> = (0..s.order)
        .map(|a| (0..s.order).map(|b| s.add(a, b)).collect())
        .collect();
    let left = action_table(s, s.order, |x, m| s.mul(x, m));
    let right = action_table(&hom.dom, s.order, |x, m| s.mul(m, hom.apply(x)));
    FiniteModule::from_parts(
        &add,
        Some((s.clone(), left)),
        Some((hom.dom.clone(), right)),
        Some(s.labels.clone()),
    )
}

/// S as an (R, S)-bimodule: left action through a homomorphism R -> S, right
/// multiplication.
pub fn bimodule_via_left(s: &RingRef, hom: &RingHom) -> Result<FiniteModule, Error> {
    if *hom.cod != **s {
        return Err(Error::RingMismatch);
    }
    let add: Vec<Vec<usize>> = (0..s.order)
        .map(|a| (0..s.order).map(|b| s.add(a, b)).collect())
        .collect();
    let left = action_table(&hom.dom, s.order, |x, m| s.mul(hom.apply(x), m));
    let right = action_table(s, s.order, |x, m| s.mul(m, x));
    FiniteModule::from_parts(
        &add,
        Some((hom.dom.clone(), left)),
        Some((s.clone(), right)),
        Some(s.labels.clone()),
    )
}

/// S as an (R, R)-bimodule, both actions through a homomorphism R -> S.
pub fn restricted_bimodule(hom: &RingHom) -> Result<FiniteModule, Error> {
    let s = &hom.cod;
    let add: Vec<Vec<usize>> = (0..s.order)
        .map(|a| (0..s.order).map(|b| s.add(a, b)).collect())
        .collect();
    let left = action_table(&hom.dom, s.order, |x, m| s.mul(hom.apply(x), m));
    let right = action_table(&hom.dom, s.order, |x, m| s.mul(m, hom.apply(x)));
    FiniteModule::from_parts(
        &add,
        Some((hom.dom.clone(), left)),
        Some((hom.dom.clone(), right)),
        Some(s.labels.clone()),
    )
}

/// Direct sum with first-summand-major indexing: (a, b) at a * |N| + b.
pub fn direct_sum(m: &FiniteModule, n: &FiniteModule) -> Result<FiniteModule, Error> {
    if !same_signature(m, n) {
        return Err(Error::RingMismatch);
    }
    let total = m
        .order
        .checked_mul(n.order)
        .filter(|&t| t <= TABLE_BOUND)
        .ok_or(Error::BoundExceeded {
            what: "direct sum order",
            limit: TABLE_BOUND,
            got: usize::MAX,
        })?;
    let no = n.order;
    let add: Vec<Vec<usize>> = (0..total)
        .map(|a| {
            (0..total)
                .map(|b| m.add(a / no, b / no) * no + n.add(a % no, b % no))
                .collect()
        })
        .collect();
    let left = m.left.as_ref().map(|act| {
        (
            act.ring.clone(),
            action_table(&act.ring, total, |r, x| {
                m.act_left(r, x / no) * no + n.act_left(r, x % no)
            }),
        )
    });
    let right = m.right.as_ref().map(|act| {
        (
            act.ring.clone(),
            action_table(&act.ring, total, |r, x| {
                m.act_right(x / no, r) * no + n.act_right(x % no, r)
            }),
        )
    });
    let labels = (0..total)
        .map(|i| format!("({},{})", m.labels[i / no], n.labels[i % no]))
        .collect();
    FiniteModule::from_parts(&add, left, right, Some(labels))
}

/// The right action replaced by its twist along a ring endomorphism `alpha`:
/// the new action of x is the old action of alpha(x).
pub fn twist_right(m: &FiniteModule, alpha: &RingHom) -> Result<FiniteModule, Error> {
    let Some(act) = &m.right else {
        return Err(Error::RingMismatch);
    };
    if *alpha.dom != *act.ring || *alpha.cod != *act.ring {
        return Err(Error::RingMismatch);
    }
    let add: Vec<Vec<usize>> = (0..m.order)
        .map(|a| (0..m.order).map(|b| m.add(a, b)).collect())
        .collect();
    let left = m.left.as_ref().map(|a| {
        (
            a.ring.clone(),
            action_table(&a.ring, m.order, |r, x| m.act_left(r, x)),
        )
    });
    let right = action_table(&act.ring, m.order, |r, x| m.act_right(x, alpha.apply(r)));
    FiniteModule::from_parts(
        &add,
        left,
        Some((act.ring.clone(), right)),
        Some(m.labels.clone()),
    )
}

/// Do two modules carry actions by the same rings on the same sides?
pub fn same_signature(m: &FiniteModule, n: &FiniteModule) -> bool {
    let left_ok = match (&m.left, &n.left) {
        (None, None) => true,
        (Some(a), Some(b)) => *a.ring == *b.ring,
        _ => false,
    };
    let right_ok = match (&m.right, &n.right) {
        (None, None) => true,
        (Some(a), Some(b)) => *a.ring == *b.ring,
        _ => false,
    };
    left_ok && right_ok
}

/// Smallest submodule containing the seed elements: closure under addition and
/// whichever actions the module carries.
pub fn closure_submodule(m: &FiniteModule, seed: &[usize]) -> Vec<usize> {
    let mut member = vec![false; m.order];
    member[m.zero] = true;
    let mut list = vec![m.zero];
    let mut queue: Vec<usize> = seed.to_vec();
    while let Some(x) = queue.pop() {
        if member[x] {
            continue;
        }
        // adding x: close under sums with everything present, then actions
        let mut wave = vec![x];
        while let Some(y) = wave.pop() {
            if member[y] {
                continue;
            }
            member[y] = true;
            list.push(y);
            for i in 0..list.len() {
                let s = m.add(list[i], y);
                if !member[s] {
                    wave.push(s);
                }
            }
            if m.left.is_some() {
                let ro = m.left.as_ref().unwrap().ring.order;
                for r in 0..ro {
                    let ry = m.act_left(r, y);
                    if !member[ry] {
                        wave.push(ry);
                    }
                }
            }
            if m.right.is_some() {
                let ro = m.right.as_ref().unwrap().ring.order;
                for r in 0..ro {
                    let yr = m.act_right(y, r);
                    if !member[yr] {
                        wave.push(yr);
                    }
                }
            }
        }
    }
    list.sort_unstable();
    list
}

/// All submodules, as sorted carriers. Walks the lattice by closing one extra
/// element at a time, so it reaches every submodule.
pub fn submodules(m: &FiniteModule) -> Result<Vec<Vec<usize>>, Error> {
    if m.order > FULL_AUDIT_BOUND {
        return Err(Error::BoundExceeded {
            what: "submodule enumeration",
            limit: FULL_AUDIT_BOUND,
            got: m.order,
        });
    }
    let mut seen: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    let bottom = closure_submodule(m, &[]);
    let mut queue = vec![bottom.clone()];
    seen.insert(bottom, ());
    while let Some(s) = queue.pop() {
        for x in 0..m.order {
            if s.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = s.clone();
            seed.push(x);
            let t = closure_submodule(m, &seed);
            if !seen.contains_key(&t) {
                seen.insert(t.clone(), ());
                queue.push(t);
            }
        }
    }
    Ok(seen.into_keys().collect())
}

/// The sub-carrier as a module of its own, with the embedding. Errors when the
/// given elements are not closed.
pub fn submodule_on(m: &FiniteModule, elems: &[usize]) -> Result<(FiniteModule, Vec<usize>), Error> {
    let mut embed: Vec<usize> = elems.to_vec();
    embed.sort_unstable();
    embed.dedup();
    let closed = closure_submodule(m, &embed);
    if closed != embed {
        return Err(Error::AxiomFailed { law: "submodule closure" });
    }
    let mut index_of = vec![usize::MAX; m.order];
    for (i, &x) in embed.iter().enumerate() {
        index_of[x] = i;
    }
    let k = embed.len();
    let add: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| index_of[m.add(embed[i], embed[j])]).collect())
        .collect();
    let left = m.left.as_ref().map(|a| {
        (
            a.ring.clone(),
            (0..a.ring.order)
                .map(|r| (0..k).map(|i| index_of[m.act_left(r, embed[i])]).collect())
                .collect::<Vec<Vec<usize>>>(),
        )
    });
    let right = m.right.as_ref().map(|a| {
        (
            a.ring.clone(),
            (0..a.ring.order)
                .map(|r| (0..k).map(|i| index_of[m.act_right(embed[i], r)]).collect())
                .collect::<Vec<Vec<usize>>>(),
        )
    });
    let labels = embed.iter().map(|&x| m.labels[x].clone()).collect();
    let sub = FiniteModule::from_parts(&add, left, right, Some(labels))?;
    Ok((sub, embed))
}

/// Greedy generating set of a ring under addition and multiplication, beyond
/// the subring generated by 0 and 1.
pub fn ring_generators(r: &FiniteRing) -> Vec<usize> {
    let closure = |seed: &[usize]| -> Vec<bool> {
        let mut member = vec![false; r.order];
        let mut list = Vec::new();
        let mut queue = vec![r.zero, r.one];
        queue.extend_from_slice(seed);
        while let Some(x) = queue.pop() {
            if member[x] {
                continue;
            }
            member[x] = true;
            list.push(x);
            for i in 0..list.len() {
                let y: usize = list[i];
                for z in [r.add(x, y), r.mul(x, y)] {
                    if !member[z] {
                        queue.push(z);
                    }
                }
            }
            let nx = r.neg(x);
            if !member[nx] {
                queue.push(nx);
            }
        }
        member
    };
    let mut gens = Vec::new();
    let mut member = closure(&gens);
    while member.iter().any(|&b| !b) {
        let x = (0..r.order).find(|&x| !member[x]).expect("element missing");
        gens.push(x);
        member = closure(&gens);
    }
    gens
}

/// Greedy generating set of a module under its actions.
pub fn module_generators(m: &FiniteModule) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = closure_submodule(m, &gens);
    while span.len() < m.order {
        let x = (0..m.order)
            .find(|x| span.binary_search(x).is_err())
            .expect("element missing");
        gens.push(x);
        span = closure_submodule(m, &gens);
    }
    gens
}

/// A module homomorphism as a plain value table. Enumerators audit before
/// returning, so held values are verified homomorphisms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModuleMap {
    pub map: Vec<usize>,
}

impl ModuleMap {
    pub fn identity(n: usize) -> Self {
        ModuleMap {
            map: (0..n).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Composite `other . self` (apply self first).
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }

    pub fn is_bijective(&self, cod_order: usize) -> bool {
        let mut seen = vec![false; cod_order];
        self.map.iter().all(|&y| !core::mem::replace(&mut seen[y], true))
            && self.map.len() == cod_order
    }
}

/// Full audit of a claimed homomorphism: additivity on all pairs and
/// equivariance for every ring element of each shared action.
pub fn audit_module_hom(m: &FiniteModule, n: &FiniteModule, f: &[usize]) -> Result<(), Error> {
    if f.len() != m.order || f.iter().any(|&y| y >= n.order) {
        return Err(Error::ShapeMismatch);
    }
    for a in 0..m.order {
        for b in 0..m.order {
            if f[m.add(a, b)] != n.add(f[a], f[b]) {
                return Err(Error::NotAHom { law: "addition" });
            }
        }
    }
    if let Some(act) = &m.left {
        for r in 0..act.ring.order {
            for x in 0..m.order {
                if f[m.act_left(r, x)] != n.act_left(r, f[x]) {
                    return Err(Error::NotAHom { law: "left action" });
                }
            }
        }
    }
    if let Some(act) = &m.right {
        for r in 0..act.ring.order {
            for x in 0..m.order {
                if f[m.act_right(x, r)] != n.act_right(f[x], r) {
                    return Err(Error::NotAHom { law: "right action" });
                }
            }
        }
    }
    Ok(())
}

const HOM_CANDIDATE_CAP: u128 = 1 << 20;

/// Enumerates all homomorphisms between modules with the same action signature.
/// Two strategies with the same answer: images of a small generating set closed
/// under the operations, or images of an additive basis filtered by equivariance
/// against ring generators. The cheaper feasible one runs.
pub fn hom_enumerate(m: &FiniteModule, n: &FiniteModule) -> Result<Vec<ModuleMap>, Error> {
    if !same_signature(m, n) {
        return Err(Error::RingMismatch);
    }
    if m.order > FULL_AUDIT_BOUND {
        return Err(Error::BoundExceeded {
            what: "homomorphism enumeration domain",
            limit: FULL_AUDIT_BOUND,
            got: m.order,
        });
    }
    let md = AbelianDecomp::compute(m)?;
    // Candidate images per additive basis element: anything annihilated by the
    // basis order.
    let cands: Vec<Vec<usize>> = md
        .orders
        .iter()
        .map(|&d| {
            (0..n.order)
                .filter(|&y| multiple(n, y, d) == n.zero)
                .collect()
        })
        .collect();
    let count_b: u128 = cands.iter().map(|c| c.len() as u128).product();
    let gens = module_generators(m);
    let count_a: u128 = (n.order as u128)
        .checked_pow(gens.len() as u32)
        .unwrap_or(u128::MAX);
    if count_a.min(count_b) > HOM_CANDIDATE_CAP {
        return Err(Error::BoundExceeded {
            what: "homomorphism candidate space",
            limit: HOM_CANDIDATE_CAP as usize,
            got: usize::MAX,
        });
    }
    if count_b <= count_a {
        hom_by_basis(m, n, &md, &cands)
    } else {
        hom_by_generators(m, n, &md, &gens)
    }
}

/// Ring generators of each acting ring, for the sufficient equivariance filter:
/// additivity plus equivariance at these elements forces equivariance everywhere,
/// because the equivariant set of a fixed additive map is a subring.
fn action_gens(m: &FiniteModule) -> (Vec<usize>, Vec<usize>) {
    let lg = m
        .left
        .as_ref()
        .map(|a| ring_generators(&a.ring))
        .unwrap_or_default();
    let rg = m
        .right
        .as_ref()
        .map(|a| ring_generators(&a.ring))
        .unwrap_or_default();
    (lg, rg)
}

fn linear_map_from_basis(
    m: &FiniteModule,
    n: &FiniteModule,
    md: &AbelianDecomp,
    images: &[usize],
) -> Vec<usize> {
    // Walk the carrier in coordinate order, maintaining partial sums, exactly
    // like the decomposition enumeration itself.
    let k = md.orders.len();
    let mut out = vec![0usize; m.order];
    let mut coords = vec![0u64; k];
    let mut partial = vec![n.zero; k + 1];
    loop {
        out[md.elem_at(&coords)] = partial[0];
        let mut i = k;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            coords[i] += 1;
            if coords[i] < md.orders[i] {
                for j in (0..=i).rev() {
                    partial[j] = n.add(partial[j + 1], multiple(n, images[j], coords[j]));
                }
                break;
            }
            coords[i] = 0;
            partial[i] = partial[i + 1];
        }
        if coords.iter().all(|&c| c == 0) {
            break;
        }
    }
    out
}

fn equivariant_on_basis(
    m: &FiniteModule,
    n: &FiniteModule,
    md: &AbelianDecomp,
    f: &[usize],
    left_gens: &[usize],
    right_gens: &[usize],
) -> bool {
    for &h in &md.basis {
        for &r in left_gens {
            if f[m.act_left(r, h)] != n.act_left(r, f[h]) {
                return false;
            }
        }
        for &r in right_gens {
            if f[m.act_right(h, r)] != n.act_right(f[h], r) {
                return false;
            }
        }
    }
    true
}

fn hom_by_basis(
    m: &FiniteModule,
    n: &FiniteModule,
    md: &AbelianDecomp,
    cands: &[Vec<usize>],
) -> Result<Vec<ModuleMap>, Error> {
    let (lg, rg) = action_gens(m);
    let k = cands.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let images: Vec<usize> = idx.iter().enumerate().map(|(j, &i)| cands[j][i]).collect();
        let f = linear_map_from_basis(m, n, md, &images);
        if equivariant_on_basis(m, n, md, &f, &lg, &rg) {
            out.push(ModuleMap { map: f });
        }
        // advance
        let mut j = k;
        loop {
            if j == 0 {
                return Ok(finish_homs(out));
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < cands[j].len() {
                break;
            }
            idx[j] = 0;
            if j == 0 {
                return Ok(finish_homs(out));
            }
        }
        if k == 0 {
            return Ok(finish_homs(out));
        }
    }
}

fn hom_by_generators(
    m: &FiniteModule,
    n: &FiniteModule,
    md: &AbelianDecomp,
    gens: &[usize],
) -> Result<Vec<ModuleMap>, Error> {
    let (lg, rg) = action_gens(m);
    let t = gens.len();
    let mut out = Vec::new();
    let mut images = vec![0usize; t];
    loop {
        if let Some(f) = extend_from_generators(m, n, gens, &images) {
            // Validate like a basis candidate: linear reconstruction agrees and
            // generator equivariance holds.
            let basis_images: Vec<usize> = md.basis.iter().map(|&h| f[h]).collect();
            let ok = basis_images
                .iter()
                .zip(&md.orders)
                .all(|(&y, &d)| multiple(n, y, d) == n.zero)
                && linear_map_from_basis(m, n, md, &basis_images) == f
                && equivariant_on_basis(m, n, md, &f, &lg, &rg);
            if ok {
                out.push(ModuleMap { map: f });
            }
        }
        if t == 0 {
            return Ok(finish_homs(out));
        }
        let mut j = t;
        loop {
            if j == 0 {
                return Ok(finish_homs(out));
            }
            j -= 1;
            images[j] += 1;
            if images[j] < n.order {
                break;
            }
            images[j] = 0;
            if j == 0 {
                return Ok(finish_homs(out));
            }
        }
    }
}

fn finish_homs(mut out: Vec<ModuleMap>) -> Vec<ModuleMap> {
    out.sort();
    out.dedup();
    out
}

/// BFS extension of generator images along addition and actions. `None` on
/// conflict; a total map otherwise.
fn extend_from_generators(
    m: &FiniteModule,
    n: &FiniteModule,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; m.order];
    map[m.zero] = n.zero;
    let mut stack = vec![m.zero];
    let assign = |map: &mut Vec<usize>, stack: &mut Vec<usize>, x: usize, y: usize| -> bool {
        if map[x] == usize::MAX {
            map[x] = y;
            stack.push(x);
            true
        } else {
            map[x] == y
        }
    };
    while let Some(x) = stack.pop() {
        let y = map[x];
        for (i, &g) in gens.iter().enumerate() {
            if !assign(&mut map, &mut stack, m.add(x, g), n.add(y, images[i])) {
                return None;
            }
        }
        if let Some(a) = &m.left {
            for r in 0..a.ring.order {
                if !assign(&mut map, &mut stack, m.act_left(r, x), n.act_left(r, y)) {
                    return None;
                }
            }
        }
        if let Some(a) = &m.right {
            for r in 0..a.ring.order {
                if !assign(&mut map, &mut stack, m.act_right(x, r), n.act_right(y, r)) {
                    return None;
                }
            }
        }
    }
    if map.iter().any(|&y| y == usize::MAX) {
        return None;
    }
    Some(map)
}

/// Automorphism group of a module: bijective self-homomorphisms under
/// composition, with the witnessing maps.
pub fn aut_group(m: &FiniteModule) -> Result<(crate::group::FiniteGroup, Vec<ModuleMap>), Error> {
    let homs = hom_enumerate(m, m)?;
    let auts: Vec<ModuleMap> = homs
        .into_iter()
        .filter(|f| f.is_bijective(m.order))
        .collect();
    if auts.len() > TABLE_BOUND {
        return Err(Error::BoundExceeded {
            what: "automorphism group order",
            limit: TABLE_BOUND,
            got: auts.len(),
        });
    }
    let index: BTreeMap<&ModuleMap, usize> = auts.iter().zip(0..).collect();
    let k = auts.len();
    let mut op = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            let comp = auts[i].then(&auts[j]);
            let Some(&idx) = index.get(&comp) else {
                return Err(Error::PropertyFailed(String::from(
                    "automorphisms not closed under composition",
                )));
            };
            op[i][j] = idx;
        }
    }
    let group = crate::group::FiniteGroup::from_table(&op)?;
    Ok((group, auts))
}

/// Isomorphism test: additive invariants prune, then honest search through the
/// homomorphism space for a bijection.
pub fn is_isomorphic_modules(
    m: &FiniteModule,
    n: &FiniteModule,
) -> Result<Option<ModuleMap>, Error> {
    if !same_signature(m, n) {
        return Err(Error::RingMismatch);
    }
    if m.order != n.order {
        return Ok(None);
    }
    let md = AbelianDecomp::compute(m)?;
    let nd = AbelianDecomp::compute(n)?;
    if md.orders != nd.orders {
        return Ok(None);
    }
    let homs = hom_enumerate(m, n)?;
    Ok(homs.into_iter().find(|f| f.is_bijective(n.order)))
}

/// Verdict of one multiplication map S (x) J -> S or J (x) S -> S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiReport {
    pub tensor_order: u64,
    pub image_order: usize,
    pub bijective: bool,
}

fn j_as_bimodule(iota: &RingHom, j_elems: &[usize]) -> Result<(FiniteModule, Vec<usize>), Error> {
    let ambient = restricted_bimodule(iota)?;
    submodule_on(&ambient, j_elems)
}

fn xi_verdict(
    iota: &RingHom,
    t: &crate::tensor::TensorResult,
    basis_images: &[usize],
) -> XiReport {
    let s = &iota.cod;
    // Additive span of the basis images inside S.
    let mut member = vec![false; s.order];
    member[s.zero] = true;
    let mut list = vec![s.zero];
    for &img in basis_images {
        if member[img] {
            continue;
        }
        let mut wave = vec![img];
        while let Some(y) = wave.pop() {
            if member[y] {
                continue;
            }
            member[y] = true;
            list.push(y);
            for i in 0..list.len() {
                let z = s.add(list[i], y);
                if !member[z] {
                    wave.push(z);
                }
            }
        }
    }
    let image_order = list.len();
    XiReport {
        tensor_order: t.presentation.order,
        image_order,
        bijective: t.presentation.order == s.order as u64 && image_order == s.order,
    }
}

/// The left multiplication map S (x)_R J -> S for a sub-bimodule J of S along
/// iota: R -> S: bijectivity decided by comparing the tensor order with |S| and
/// checking surjectivity of the induced image.
pub fn xi_left(iota: &RingHom, j_elems: &[usize]) -> Result<XiReport, Error> {
    let s = &iota.cod;
    let (j_mod, j_embed) = j_as_bimodule(iota, j_elems)?;
    let s_mod = bimodule_via_right(s, iota)?;
    let t = crate::tensor::tensor_over(&iota.dom, &s_mod, &j_mod)?;
    // Images of the tensor basis under s (x) j -> s * j.
    let images: Vec<usize> = (0..t.presentation.factors.len())
        .map(|b| {
            t.presentation.basis_pure(b).iter().fold(s.zero, |acc, &(coeff, p, q)| {
                let prod = s.mul(p, j_embed[q]);
                s.add(acc, multiple(&**s, prod, coeff))
            })
        })
        .collect();
    Ok(xi_verdict(iota, &t, &images))
}

/// The right multiplication map J (x)_R S -> S.
pub fn xi_right(iota: &RingHom, j_elems: &[usize]) -> Result<XiReport, Error> {
    let s = &iota.cod;
    let (j_mod, j_embed) = j_as_bimodule(iota, j_elems)?;
    let s_mod = bimodule_via_left(s, iota)?;
    let t = crate::tensor::tensor_over(&iota.dom, &j_mod, &s_mod)?;
    let images: Vec<usize> = (0..t.presentation.factors.len())
        .map(|b| {
            t.presentation.basis_pure(b).iter().fold(s.zero, |acc, &(coeff, p, q)| {
                let prod = s.mul(j_embed[p], q);
                s.add(acc, multiple(&**s, prod, coeff))
            })
        })
        .collect();
    Ok(xi_verdict(iota, &t, &images))
}

/// The group of invertible sub-bimodules of S along an injective iota: R -> S,
/// under the product "additive span of pairwise products". Each product is also
/// certified against the tensor route J (x)_R K -> S.
pub struct InvertibleSubmodules {
    pub group: crate::group::FiniteGroup,
    /// group element index -> literal subset of S
    pub subsets: Vec<Vec<usize>>,
    /// index of the identity element iota(R)
    pub identity: usize,
}

pub fn invertible_submodule_group(iota: &RingHom) -> Result<InvertibleSubmodules, Error> {
    if !iota.is_injective() {
        return Err(Error::NotInjective);
    }
    let s = &iota.cod;
    if s.order > 64 {
        return Err(Error::BoundExceeded {
            what: "invertible submodule search",
            limit: 64,
            got: s.order,
        });
    }
    let ambient = restricted_bimodule(iota)?;
    let subs = submodules(&ambient)?;
    let mut invertible: Vec<Vec<usize>> = Vec::new();
    for j in subs {
        let xl = xi_left(iota, &j)?;
        let xr = xi_right(iota, &j)?;
        if xl.bijective && xr.bijective {
            invertible.push(j);
        }
    }
    invertible.sort();
    let identity_subset = iota.image_elems();
    let Some(identity) = invertible.iter().position(|j| *j == identity_subset) else {
        return Err(Error::PropertyFailed(String::from(
            "image of the base ring is not invertible",
        )));
    };
    let k = invertible.len();
    let mut op = vec![vec![0usize; k]; k];
    for a in 0..k {
        for b in 0..k {
            let prod = submodule_product(iota, &invertible[a], &invertible[b])?;
            let Some(idx) = invertible.iter().position(|j| *j == prod) else {
                return Err(Error::PropertyFailed(String::from(
                    "product of invertible submodules is not invertible",
                )));
            };
            op[a][b] = idx;
        }
    }
    let group = crate::group::FiniteGroup::from_table(&op)?;
    if group.identity != identity {
        return Err(Error::PropertyFailed(String::from(
            "group identity is not the base image",
        )));
    }
    Ok(InvertibleSubmodules {
        group,
        subsets: invertible,
        identity,
    })
}

/// Product of two sub-bimodules: additive span of pairwise products, certified
/// to agree with the image of J (x)_R K -> S.
fn submodule_product(iota: &RingHom, j: &[usize], kk: &[usize]) -> Result<Vec<usize>, Error> {
    let s = &iota.cod;
    let ambient = restricted_bimodule(iota)?;
    let mut seed = Vec::new();
    for &x in j {
        for &y in kk {
            seed.push(s.mul(x, y));
        }
    }
    let span = closure_submodule(&ambient, &seed);
    // Tensor route: image of J (x)_R K under multiplication.
    let (j_mod, j_embed) = submodule_on(&ambient, j)?;
    let (k_mod, k_embed) = submodule_on(&ambient, kk)?;
    let t = crate::tensor::tensor_over(&iota.dom, &j_mod, &k_mod)?;
    let images: Vec<usize> = (0..t.presentation.factors.len())
        .map(|b| {
            t.presentation.basis_pure(b).iter().fold(s.zero, |acc, &(coeff, p, q)| {
                let prod = s.mul(j_embed[p], k_embed[q]);
                s.add(acc, multiple(&**s, prod, coeff))
            })
        })
        .collect();
    let tensor_span = closure_submodule(&ambient, &images);
    if tensor_span != span {
        return Err(Error::PropertyFailed(String::from(
            "tensor image disagrees with the pairwise product span",
        )));
    }
    Ok(span)
}

/// The sub-bimodule attached to an automorphism of S: everything it carries
/// into the image of iota.
pub fn lambda_to_submodule(lambda: &ModuleMap, iota: &RingHom) -> Vec<usize> {
    let image = iota.image_elems();
    (0..lambda.map.len())
        .filter(|&a| image.binary_search(&lambda.map[a]).is_ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::invariant_factors;
    use crate::ring::{mk_galois_field, mk_product, mk_zmod, units};
    use alloc::rc::Rc;

    fn rc(r: FiniteRing) -> RingRef {
        Rc::new(r)
    }

    fn f4() -> RingRef {
        rc(mk_galois_field(2, &[1, 1, 1]).unwrap())
    }

    fn f2_into_f4() -> RingHom {
        let f2 = rc(mk_zmod(2).unwrap());
        RingHom::new(&f2, &f4(), vec![0, 1]).unwrap()
    }

    fn diag_into_z2sq() -> RingHom {
        let z2 = rc(mk_zmod(2).unwrap());
        let p = mk_product(&z2, &z2).unwrap();
        p.diagonal.unwrap()
    }

    #[test]
    fn regular_module_audits() {
        let z6 = rc(mk_zmod(6).unwrap());
        let m = regular(&z6);
        assert_eq!(m.order, 6);
        assert_eq!(m.act_left(2, 5), 4);
        assert_eq!(m.act_right(5, 2), 4);
    }

    #[test]
    fn aut_group_of_regular_z8_is_the_unit_group() {
        let z8 = rc(mk_zmod(8).unwrap());
        let m = regular(&z8);
        let (g, auts) = aut_group(&m).unwrap();
        assert_eq!(g.order, 4);
        assert_eq!(invariant_factors(&g).unwrap(), vec![2, 2]);
        // every automorphism is multiplication by a unit
        let u = units(&z8).unwrap();
        for f in &auts {
            assert!(u.index_of[f.apply(1)].is_some());
        }
    }

    #[test]
    fn aut_group_of_plane_over_f2_has_order_six() {
        let z2 = rc(mk_zmod(2).unwrap());
        let line = regular(&z2);
        let plane = direct_sum(&line, &line).unwrap();
        let (g, _) = aut_group(&plane).unwrap();
        assert_eq!(g.order, 6);
        assert!(!g.abelian);
    }

    #[test]
    fn hom_count_for_regular_f4() {
        let m = regular(&f4());
        let homs = hom_enumerate(&m, &m).unwrap();
        assert_eq!(homs.len(), 4);
        for f in &homs {
            audit_module_hom(&m, &m, &f.map).unwrap();
        }
    }

    #[test]
    fn hom_rejects_mismatched_rings() {
        let m = regular(&f4());
        let n = regular(&rc(mk_zmod(4).unwrap()));
        assert!(matches!(hom_enumerate(&m, &n), Err(Error::RingMismatch)));
    }

    #[test]
    fn submodule_lattices() {
        // F4 over itself: only 0 and the whole thing.
        let m = regular(&f4());
        assert_eq!(submodules(&m).unwrap().len(), 2);

        // F4 over F2: five subspaces (0, three lines, the plane).
        let iota = f2_into_f4();
        let over_f2 = restricted_bimodule(&iota).unwrap();
        let subs = submodules(&over_f2).unwrap();
        assert_eq!(subs.len(), 5);
    }

    #[test]
    fn submodule_on_rejects_unclosed_sets() {
        let m = regular(&f4());
        assert!(submodule_on(&m, &[0, 2]).is_err());
        let iota = f2_into_f4();
        let over_f2 = restricted_bimodule(&iota).unwrap();
        assert!(submodule_on(&over_f2, &[0, 2]).is_ok());
    }

    #[test]
    fn ring_generator_sets_are_small() {
        assert_eq!(ring_generators(&mk_zmod(12).unwrap()), vec![]);
        assert_eq!(ring_generators(&f4()), vec![2]);
    }

    #[test]
    fn twisted_bimodule_is_not_isomorphic_to_the_regular_one() {
        // Frobenius on F4 fixes 0, 1 and swaps g with 1+g.
        let s = f4();
        let frob = RingHom::new(&s, &s, vec![0, 1, 3, 2]).unwrap();
        let m = regular(&s);
        let tw = twist_right(&m, &frob).unwrap();
        assert!(is_isomorphic_modules(&m, &tw).unwrap().is_none());
        // As left modules only they agree.
        assert!(is_isomorphic_modules(&m.forget_right(), &tw.forget_right())
            .unwrap()
            .is_some());
    }

    #[test]
    fn xi_maps_for_lines_in_f4() {
        let iota = f2_into_f4();
        // Every line is carried bijectively: the base line, and both others.
        for line in [vec![0, 1], vec![0, 2], vec![0, 3]] {
            let xl = xi_left(&iota, &line).unwrap();
            let xr = xi_right(&iota, &line).unwrap();
            assert!(xl.bijective, "left map for {line:?}");
            assert!(xr.bijective, "right map for {line:?}");
        }
        // The full field has too large a tensor: 16 elements against 4.
        let full = xi_left(&iota, &[0, 1, 2, 3]).unwrap();
        assert_eq!(full.tensor_order, 16);
        assert!(!full.bijective);
    }

    #[test]
    fn xi_map_fails_off_the_diagonal() {
        let iota = diag_into_z2sq();
        // The axis {(0,0),(1,0)} has the right size but misses surjectivity.
        let axis = xi_left(&iota, &[0, 2]).unwrap();
        assert_eq!(axis.tensor_order, 4);
        assert_eq!(axis.image_order, 2);
        assert!(!axis.bijective);
        let diag = xi_left(&iota, &[0, 3]).unwrap();
        assert!(diag.bijective);
    }

    #[test]
    fn invertible_submodules_of_f4_form_a_cyclic_group_of_order_three() {
        let iota = f2_into_f4();
        let inv = invertible_submodule_group(&iota).unwrap();
        assert_eq!(inv.group.order, 3);
        assert_eq!(inv.subsets.len(), 3);
        assert_eq!(inv.subsets[inv.identity], vec![0, 1]);
        assert_eq!(invariant_factors(&inv.group).unwrap(), vec![3]);
    }

    #[test]
    fn invertible_submodules_over_the_diagonal_are_trivial() {
        let iota = diag_into_z2sq();
        let inv = invertible_submodule_group(&iota).unwrap();
        assert_eq!(inv.group.order, 1);
        assert_eq!(inv.subsets, vec![vec![0, 3]]);
    }

    #[test]
    fn invertible_submodule_group_requires_injectivity() {
        let z4 = rc(mk_zmod(4).unwrap());
        let z2 = rc(mk_zmod(2).unwrap());
        let q = RingHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        assert!(matches!(
            invertible_submodule_group(&q),
            Err(Error::NotInjective)
        ));
    }

    #[test]
    fn lambda_preimages_of_the_base() {
        // Multiplication by g on F4: the preimage of F2 is the line through g^2.
        let s = f4();
        let mul_g = ModuleMap {
            map: (0..4).map(|a| s.mul(2, a)).collect(),
        };
        let iota = f2_into_f4();
        assert_eq!(lambda_to_submodule(&mul_g, &iota), vec![0, 3]);

        // The swap on (Z/2)^2 pulls the diagonal back to itself.
        let iota = diag_into_z2sq();
        let swap = ModuleMap {
            map: vec![0, 2, 1, 3],
        };
        assert_eq!(lambda_to_submodule(&swap, &iota), vec![0, 3]);
    }

    #[test]
    fn direct_sum_indexing_is_first_major() {
        let z3 = rc(mk_zmod(3).unwrap());
        let m = regular(&z3);
        let s = direct_sum(&m, &m).unwrap();
        assert_eq!(s.order, 9);
        // (1,2) + (2,2) = (0,1)
        let a = 1 * 3 + 2;
        let b = 2 * 3 + 2;
        assert_eq!(s.add(a, b), 1);
        assert_eq!(s.act_left(2, a), 2 * 3 + 1);
    }
}
