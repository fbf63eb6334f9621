//! Finite commutative rings as explicit operation tables, plus the standard
//! constructors: residue rings Z/n, Galois fields from an irreducible polynomial,
//! and binary products. Ring homomorphisms carry their own audit, and every
//! constructed ring is checked against the ring axioms before use: fully when the
//! carrier is small, by seeded random triples when it is not.

use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::error::Error;
use crate::group::{FiniteGroup, GroupHom};
use crate::{AUDIT_SAMPLES, FULL_AUDIT_BOUND, TABLE_BOUND};

/// Shared handle to a ring. Engines hold these so that homomorphisms and modules
/// can reference their base rings without copying the tables around.
pub type RingRef = Rc<FiniteRing>;

/// A finite ring with unit, described by full addition and multiplication tables
/// over element indices `0..order`. Entries are stored as u16, which is enough
/// for every carrier this crate admits.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    pub order: usize,
    pub zero: usize,
    pub one: usize,
    pub commutative: bool,
    pub labels: Vec<String>,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    neg_t: Vec<u16>,
}

impl PartialEq for FiniteRing {
    /// Rings are equal exactly when their tables are: same carrier indexing, same
    /// operations. Labels are presentation only and do not participate.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.zero == other.zero
            && self.one == other.one
            && self.add_t == other.add_t
            && self.mul_t == other.mul_t
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add_t[a * self.order + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_t[a * self.order + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg_t[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.one;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn label(&self, a: usize) -> &str {
        self.labels.get(a).map_or("?", String::as_str)
    }

    /// Two-sided multiplicative inverse, by scan.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.order).find(|&y| self.mul(a, y) == self.one && self.mul(y, a) == self.one)
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.inverse(a).is_some()
    }

    /// Builds a ring from nested addition and multiplication tables. The additive
    /// and multiplicative identities are located by scan; absence of either is an
    /// axiom failure. The commutativity flag is derived from the tables.
    pub fn from_tables(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<Self, Error> {
        let n = add.len();
        if n == 0 || n > TABLE_BOUND {
            return Err(Error::BoundExceeded {
                what: "ring order",
                limit: TABLE_BOUND,
                got: n,
            });
        }
        if mul.len() != n || add.iter().chain(mul).any(|row| row.len() != n) {
            return Err(Error::ShapeMismatch);
        }
        let in_range =
            |t: &[Vec<usize>]| t.iter().all(|row| row.iter().all(|&x| x < n));
        if !in_range(add) || !in_range(mul) {
            return Err(Error::InvalidInput(String::from(
                "table entry out of carrier range",
            )));
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|x| add[z][x] == x && add[x][z] == x))
            .ok_or(Error::AxiomFailed {
                law: "additive identity",
            })?;
        let one = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or(Error::AxiomFailed {
                law: "multiplicative identity",
            })?;
        let mut neg_t = vec![0u16; n];
        for x in 0..n {
            let nx = (0..n).find(|&y| add[x][y] == zero).ok_or(Error::AxiomFailed {
                law: "additive inverses",
            })?;
            neg_t[x] = nx as u16;
        }
        let commutative = (0..n).all(|a| (0..n).all(|b| mul[a][b] == mul[b][a]));
        let flatten = |t: &[Vec<usize>]| {
            t.iter()
                .flat_map(|row| row.iter().map(|&x| x as u16))
                .collect::<Vec<u16>>()
        };
        let ring = FiniteRing {
            order: n,
            zero,
            one,
            commutative,
            labels: (0..n).map(|i| i.to_string()).collect(),
            add_t: flatten(add),
            mul_t: flatten(mul),
            neg_t,
        };
        ring.audit()?;
        Ok(ring)
    }

    /// Checks the ring axioms. Carriers up to [`FULL_AUDIT_BOUND`] get the full
    /// triple loops; larger ones get seeded random triples, at least
    /// [`AUDIT_SAMPLES`] per law, so a run is reproducible for a given order.
    pub fn audit(&self) -> Result<(), Error> {
        let n = self.order;
        for x in 0..n {
            if self.add(self.zero, x) != x || self.add(x, self.zero) != x {
                return Err(Error::AxiomFailed { law: "additive identity" });
            }
            if self.mul(self.one, x) != x || self.mul(x, self.one) != x {
                return Err(Error::AxiomFailed {
                    law: "multiplicative identity",
                });
            }
            if self.add(x, self.neg(x)) != self.zero {
                return Err(Error::AxiomFailed { law: "additive inverses" });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::AxiomFailed {
                        law: "commutativity of addition",
                    });
                }
            }
        }
        let check_triple = |a: usize, b: usize, c: usize| -> Result<(), Error> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(Error::AxiomFailed {
                    law: "associativity of addition",
                });
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::AxiomFailed {
                    law: "associativity of multiplication",
                });
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Err(Error::AxiomFailed {
                    law: "left distributivity",
                });
            }
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                return Err(Error::AxiomFailed {
                    law: "right distributivity",
                });
            }
            Ok(())
        };
        if n <= FULL_AUDIT_BOUND {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check_triple(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xA1335 ^ n as u64);
            for _ in 0..AUDIT_SAMPLES {
                let a = (rng.next_u64() % n as u64) as usize;
                let b = (rng.next_u64() % n as u64) as usize;
                let c = (rng.next_u64() % n as u64) as usize;
                check_triple(a, b, c)?;
            }
        }
        if self.commutative {
            let sym = if n <= FULL_AUDIT_BOUND {
                (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
            } else {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xA1335 ^ n as u64);
                (0..AUDIT_SAMPLES).all(|_| {
                    let a = (rng.next_u64() % n as u64) as usize;
                    let b = (rng.next_u64() % n as u64) as usize;
                    self.mul(a, b) == self.mul(b, a)
                })
            };
            if !sym {
                return Err(Error::NotCommutative);
            }
        }
        Ok(())
    }
}

/// Builds raw tables from closures; shared by the concrete constructors, which
/// are trusted for well-formedness and then audited anyway.
fn build_ring(
    n: usize,
    zero: usize,
    one: usize,
    add: impl Fn(usize, usize) -> usize,
    mul: impl Fn(usize, usize) -> usize,
    labels: Vec<String>,
) -> Result<FiniteRing, Error> {
    let mut add_t = vec![0u16; n * n];
    let mut mul_t = vec![0u16; n * n];
    let mut neg_t = vec![0u16; n];
    for a in 0..n {
        let mut found_neg = false;
        for b in 0..n {
            let s = add(a, b);
            add_t[a * n + b] = s as u16;
            mul_t[a * n + b] = mul(a, b) as u16;
            if s == zero {
                neg_t[a] = b as u16;
                found_neg = true;
            }
        }
        if !found_neg {
            return Err(Error::AxiomFailed { law: "additive inverses" });
        }
    }
    let ring = FiniteRing {
        order: n,
        zero,
        one,
        commutative: true,
        labels,
        add_t,
        mul_t,
        neg_t,
    };
    ring.audit()?;
    Ok(ring)
}

/// The residue ring Z/n, for 1 <= n <= the table bound.
pub fn mk_zmod(n: usize) -> Result<FiniteRing, Error> {
    if n == 0 {
        return Err(Error::InvalidInput(String::from("modulus must be >= 1")));
    }
    if n > TABLE_BOUND {
        return Err(Error::BoundExceeded {
            what: "zmod modulus",
            limit: TABLE_BOUND,
            got: n,
        });
    }
    let one = if n == 1 { 0 } else { 1 };
    build_ring(
        n,
        0,
        one,
        |a, b| (a + b) % n,
        |a, b| (a * b) % n,
        (0..n).map(|i| i.to_string()).collect(),
    )
}

fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial remainder over F_p; coefficients ascending, divisor monic.
fn poly_rem(mut a: Vec<usize>, b: &[usize], p: usize) -> Vec<usize> {
    let db = b.len() - 1;
    while a.len() > db {
        let lead = a[a.len() - 1];
        if lead != 0 {
            let shift = a.len() - 1 - db;
            for i in 0..db {
                let sub = (lead * b[i]) % p;
                let idx = shift + i;
                a[idx] = (a[idx] + p - sub) % p;
            }
        }
        a.pop();
    }
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn is_irreducible(poly: &[usize], p: usize) -> bool {
    let d = poly.len() - 1;
    if d == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=d/2.
    for deg in 1..=d / 2 {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                divisor.push(c % p);
                c /= p;
            }
            divisor.push(1);
            let rem = poly_rem(poly.to_vec(), &divisor, p);
            if rem.len() == 1 && rem[0] == 0 {
                return false;
            }
        }
    }
    true
}

fn gf_label(digits: &[usize]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (i, &c) in digits.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let t = match (i, c) {
            (0, _) => c.to_string(),
            (1, 1) => String::from("g"),
            (1, _) => format!("{c}g"),
            (_, 1) => format!("g^{i}"),
            _ => format!("{c}g^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        String::from("0")
    } else {
        terms.join("+")
    }
}

/// The field with p^d elements presented as F_p[g] with g a root of the given
/// monic irreducible polynomial (coefficients ascending, degree 1 through 4).
/// Element index i encodes the coefficient vector of the residue in base p,
/// constant digit first.
pub fn mk_galois_field(p: usize, poly: &[usize]) -> Result<FiniteRing, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime);
    }
    if poly.len() < 2 || poly.len() > 5 {
        return Err(Error::InvalidInput(String::from(
            "polynomial degree must be between 1 and 4",
        )));
    }
    if *poly.last().unwrap() != 1 {
        return Err(Error::InvalidInput(String::from("polynomial must be monic")));
    }
    let poly: Vec<usize> = poly.iter().map(|&c| c % p).collect();
    let poly = {
        let mut q = poly;
        let last = q.len() - 1;
        q[last] = 1;
        q
    };
    if !is_irreducible(&poly, p) {
        return Err(Error::NotIrreducible);
    }
    let d = poly.len() - 1;
    let n = p.checked_pow(d as u32).unwrap_or(usize::MAX);
    if n > TABLE_BOUND {
        return Err(Error::BoundExceeded {
            what: "field order",
            limit: TABLE_BOUND,
            got: n,
        });
    }
    let digits_of = |mut i: usize| -> Vec<usize> {
        let mut out = Vec::with_capacity(d);
        for _ in 0..d {
            out.push(i % p);
            i /= p;
        }
        out
    };
    let index_of = |digits: &[usize]| -> usize {
        digits.iter().rev().fold(0, |acc, &c| acc * p + c)
    };
    let add = |a: usize, b: usize| -> usize {
        let (da, db) = (digits_of(a), digits_of(b));
        let sum: Vec<usize> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
        index_of(&sum)
    };
    let mul = |a: usize, b: usize| -> usize {
        let (da, db) = (digits_of(a), digits_of(b));
        let mut prod = vec![0usize; 2 * d - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut rem = poly_rem(prod, &poly, p);
        rem.resize(d, 0);
        index_of(&rem)
    };
    let labels = (0..n).map(|i| gf_label(&digits_of(i))).collect();
    build_ring(n, 0, 1, add, mul, labels)
}

/// Product of two rings with the canonical projections. When the factors are the
/// same ring, the diagonal is also returned; it is the only injection that is a
/// unital ring homomorphism. Indexing is first-factor major: (a, b) sits at
/// a * |S| + b.
pub struct ProductRing {
    pub ring: RingRef,
    pub proj_left: RingHom,
    pub proj_right: RingHom,
    pub diagonal: Option<RingHom>,
}

pub fn mk_product(r: &RingRef, s: &RingRef) -> Result<ProductRing, Error> {
    let n = r
        .order
        .checked_mul(s.order)
        .filter(|&n| n <= TABLE_BOUND)
        .ok_or(Error::BoundExceeded {
            what: "product ring order",
            limit: TABLE_BOUND,
            got: usize::MAX,
        })?;
    let so = s.order;
    let labels = (0..n)
        .map(|i| format!("({},{})", r.label(i / so), s.label(i % so)))
        .collect();
    let ring = build_ring(
        n,
        r.zero * so + s.zero,
        r.one * so + s.one,
        |a, b| r.add(a / so, b / so) * so + s.add(a % so, b % so),
        |a, b| r.mul(a / so, b / so) * so + s.mul(a % so, b % so),
        labels,
    )?;
    let ring = Rc::new(ring);
    let proj_left = RingHom::new(&ring, r, (0..n).map(|i| i / so).collect())?;
    let proj_right = RingHom::new(&ring, s, (0..n).map(|i| i % so).collect())?;
    let diagonal = if r == s {
        Some(RingHom::new(r, &ring, (0..r.order).map(|a| a * so + a).collect())?)
    } else {
        None
    };
    Ok(ProductRing {
        ring,
        proj_left,
        proj_right,
        diagonal,
    })
}

/// A unital ring homomorphism given by its value table. Construction audits
/// preservation of 1, sums, and products (fully on small domains, sampled pairs
/// on large ones), so a held value is always a certified homomorphism.
#[derive(Debug, Clone)]
pub struct RingHom {
    pub dom: RingRef,
    pub cod: RingRef,
    map: Vec<usize>,
}

impl PartialEq for RingHom {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.map == other.map
    }
}

impl RingHom {
    pub fn new(dom: &RingRef, cod: &RingRef, map: Vec<usize>) -> Result<Self, Error> {
        if map.len() != dom.order {
            return Err(Error::ShapeMismatch);
        }
        if map.iter().any(|&y| y >= cod.order) {
            return Err(Error::InvalidInput(String::from(
                "homomorphism value out of range",
            )));
        }
        if map[dom.one] != cod.one {
            return Err(Error::NotAHom { law: "unit" });
        }
        if map[dom.zero] != cod.zero {
            return Err(Error::NotAHom { law: "zero" });
        }
        let check_pair = |a: usize, b: usize| -> Result<(), Error> {
            if map[dom.add(a, b)] != cod.add(map[a], map[b]) {
                return Err(Error::NotAHom { law: "addition" });
            }
            if map[dom.mul(a, b)] != cod.mul(map[a], map[b]) {
                return Err(Error::NotAHom { law: "multiplication" });
            }
            Ok(())
        };
        let n = dom.order;
        if n <= FULL_AUDIT_BOUND {
            for a in 0..n {
                for b in 0..n {
                    check_pair(a, b)?;
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xA1335 ^ n as u64);
            for _ in 0..AUDIT_SAMPLES {
                let a = (rng.next_u64() % n as u64) as usize;
                let b = (rng.next_u64() % n as u64) as usize;
                check_pair(a, b)?;
            }
        }
        Ok(RingHom {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
    }

    pub fn identity(r: &RingRef) -> Self {
        RingHom {
            dom: r.clone(),
            cod: r.clone(),
            map: (0..r.order).collect(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }

    /// Composite `other . self` (apply self first).
    pub fn then(&self, other: &RingHom) -> Result<RingHom, Error> {
        if *self.cod != *other.dom {
            return Err(Error::NotComposable);
        }
        Ok(RingHom {
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

    /// Image as a sorted list of codomain elements.
    pub fn image_elems(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.map.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Kernel ideal as a sorted list of domain elements.
    pub fn kernel_elems(&self) -> Vec<usize> {
        (0..self.dom.order)
            .filter(|&x| self.map[x] == self.cod.zero)
            .collect()
    }
}

/// The unit group of a ring, with the carrier embedding in both directions.
pub struct UnitsGroup {
    pub group: Rc<FiniteGroup>,
    /// group element index -> ring element index
    pub embed: Vec<usize>,
    /// ring element index -> group element index, when the element is a unit
    pub index_of: Vec<Option<usize>>,
}

/// Collects the units of `r` into a [`FiniteGroup`] under multiplication.
pub fn units(r: &RingRef) -> Result<UnitsGroup, Error> {
    let n = r.order;
    let mut embed = Vec::new();
    let mut index_of = vec![None; n];
    for x in 0..n {
        if r.is_unit(x) {
            index_of[x] = Some(embed.len());
            embed.push(x);
        }
    }
    let k = embed.len();
    let mut op = vec![vec![0usize; k]; k];
    for i in 0..k {
        for j in 0..k {
            let prod = r.mul(embed[i], embed[j]);
            op[i][j] = index_of[prod].ok_or(Error::AxiomFailed {
                law: "units closed under multiplication",
            })?;
        }
    }
    let mut group = FiniteGroup::from_table(&op)?;
    group.labels = embed.iter().map(|&x| r.label(x).to_string()).collect();
    Ok(UnitsGroup {
        group: Rc::new(group),
        embed,
        index_of,
    })
}

/// A ring homomorphism restricted to unit groups, as an audited group
/// homomorphism between the two [`UnitsGroup`]s.
pub fn units_functor_on_hom(
    f: &RingHom,
    dom_units: &UnitsGroup,
    cod_units: &UnitsGroup,
) -> Result<GroupHom, Error> {
    let mut map = Vec::with_capacity(dom_units.embed.len());
    for &x in &dom_units.embed {
        let y = f.apply(x);
        let Some(gy) = cod_units.index_of[y] else {
            return Err(Error::NotAHom {
                law: "units carried to units",
            });
        };
        map.push(gy);
    }
    GroupHom::new(&dom_units.group, &cod_units.group, map)
}

/// One local factor of a ring: the ideal generated by a primitive idempotent,
/// viewed as a ring with that idempotent as its unit.
pub struct LocalFactor {
    pub ring: RingRef,
    /// factor element index -> element of the ambient ring
    pub carrier: Vec<usize>,
    pub projection: RingHom,
}

/// A complete orthogonal system of primitive idempotents together with the local
/// factors they generate.
pub struct IdempotentDecomposition {
    pub idempotents: Vec<usize>,
    pub factors: Vec<LocalFactor>,
}

/// Decomposes a commutative ring into local factors along its primitive
/// idempotents. Each factor is certified local by checking that its non-units
/// form an ideal.
pub fn local_decomposition(r: &RingRef) -> Result<IdempotentDecomposition, Error> {
    if !r.commutative {
        return Err(Error::NotCommutative);
    }
    let idem: Vec<usize> = (0..r.order).filter(|&e| r.mul(e, e) == e).collect();
    let primitive: Vec<usize> = idem
        .iter()
        .copied()
        .filter(|&e| e != r.zero)
        .filter(|&e| {
            idem.iter()
                .all(|&f| f == r.zero || f == e || r.mul(e, f) != f)
        })
        .collect();
    // Certify the system: pairwise orthogonal and summing to 1.
    for (i, &e) in primitive.iter().enumerate() {
        for &f in &primitive[i + 1..] {
            if r.mul(e, f) != r.zero {
                return Err(Error::PropertyFailed(String::from(
                    "primitive idempotents are not orthogonal",
                )));
            }
        }
    }
    let total = primitive.iter().fold(r.zero, |acc, &e| r.add(acc, e));
    if total != r.one {
        return Err(Error::PropertyFailed(String::from(
            "primitive idempotents do not sum to 1",
        )));
    }
    let mut factors = Vec::new();
    for &e in &primitive {
        let mut carrier: Vec<usize> = (0..r.order).map(|x| r.mul(x, e)).collect();
        carrier.sort_unstable();
        carrier.dedup();
        let mut index_of = vec![usize::MAX; r.order];
        for (i, &x) in carrier.iter().enumerate() {
            index_of[x] = i;
        }
        let k = carrier.len();
        let add: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| index_of[r.add(carrier[i], carrier[j])]).collect())
            .collect();
        let mul: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| index_of[r.mul(carrier[i], carrier[j])]).collect())
            .collect();
        let mut ring = FiniteRing::from_tables(&add, &mul)?;
        ring.labels = carrier.iter().map(|&x| r.label(x).to_string()).collect();
        if ring.one != index_of[e] {
            return Err(Error::PropertyFailed(String::from(
                "factor unit is not the idempotent",
            )));
        }
        // Local certificate: non-units closed under addition and absorbing.
        let non_units: Vec<usize> = (0..k).filter(|&x| !ring.is_unit(x)).collect();
        for &a in &non_units {
            for &b in &non_units {
                if ring.is_unit(ring.add(a, b)) {
                    return Err(Error::PropertyFailed(String::from(
                        "factor is not local: non-units not closed under addition",
                    )));
                }
            }
            for x in 0..k {
                if ring.is_unit(ring.mul(a, x)) {
                    return Err(Error::PropertyFailed(String::from(
                        "factor is not local: non-units do not absorb",
                    )));
                }
            }
        }
        let ring = Rc::new(ring);
        let projection = RingHom::new(r, &ring, (0..r.order).map(|x| index_of[r.mul(x, e)]).collect())?;
        factors.push(LocalFactor {
            ring,
            carrier,
            projection,
        });
    }
    Ok(IdempotentDecomposition {
        idempotents: primitive,
        factors,
    })
}
