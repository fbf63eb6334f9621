//! Canonical decomposition of a finite abelian group presented as an operation
//! table. The decomposition fixes a basis with invariant-factor orders
//! d_1 | d_2 | ... and a bijection between carrier elements and mixed-radix
//! coordinate vectors. Downstream code builds tensor products, homomorphism
//! spaces, and linear extensions of maps on top of these coordinates instead of
//! walking tables, which is what keeps the larger computations tractable.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::ring::FiniteRing;

/// Additive view of a finite abelian group: just enough structure to decompose
/// a carrier without caring whether it is a ring, a module, or a group.
pub trait AddView {
    fn order(&self) -> usize;
    fn zero(&self) -> usize;
    fn add(&self, a: usize, b: usize) -> usize;
    fn neg(&self, a: usize) -> usize;
}

impl AddView for FiniteRing {
    fn order(&self) -> usize {
        self.order
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn add(&self, a: usize, b: usize) -> usize {
        FiniteRing::add(self, a, b)
    }
    fn neg(&self, a: usize) -> usize {
        FiniteRing::neg(self, a)
    }
}

/// Invariant-factor basis of a finite abelian carrier, with coordinate lookups
/// in both directions.
#[derive(Debug, Clone)]
pub struct AbelianDecomp {
    /// Invariant factors d_1 | d_2 | ..., each > 1. Empty for the trivial group.
    pub orders: Vec<u64>,
    /// Carrier elements realizing the basis; basis[j] has additive order orders[j].
    pub basis: Vec<usize>,
    elem_of_rank: Vec<usize>,
    rank_of_elem: Vec<usize>,
}

impl AbelianDecomp {
    /// Computes the decomposition. The procedure is: greedily pick generators of
    /// maximal additive order, collect every relation among them that lies in the
    /// coordinate box, reduce the relation lattice to Smith form, and read off a
    /// canonical basis. A final full enumeration certifies that the claimed basis
    /// really parametrizes the carrier bijectively.
    pub fn compute(v: &impl AddView) -> Result<Self, Error> {
        let n = v.order();
        let zero = v.zero();
        if n == 1 {
            return Ok(AbelianDecomp {
                orders: vec![],
                basis: vec![],
                elem_of_rank: vec![zero],
                rank_of_elem: vec![0],
            });
        }
        let elem_order = |x: usize| -> u64 {
            let mut k = 1u64;
            let mut acc = x;
            while acc != zero {
                acc = v.add(acc, x);
                k += 1;
            }
            k
        };
        let orders_of: Vec<u64> = (0..n).map(elem_order).collect();
        // Greedy generators: highest additive order outside the current span,
        // smallest index on ties.
        let mut span = vec![false; n];
        span[zero] = true;
        let mut span_list = vec![zero];
        let mut gens: Vec<usize> = Vec::new();
        let mut gen_orders: Vec<u64> = Vec::new();
        while span_list.len() < n {
            let mut pick = None;
            for x in 0..n {
                if span[x] {
                    continue;
                }
                match pick {
                    None => pick = Some(x),
                    Some(p) => {
                        if orders_of[x] > orders_of[p] {
                            pick = Some(x);
                        }
                    }
                }
            }
            let g = pick.expect("span not full yet");
            gens.push(g);
            gen_orders.push(orders_of[g]);
            // Extend the span by all multiples of g.
            let mut new_list = Vec::new();
            let mut mult = zero;
            for _ in 0..orders_of[g] {
                for &s in &span_list {
                    let y = v.add(s, mult);
                    if !span[y] {
                        span[y] = true;
                        new_list.push(y);
                    }
                }
                mult = v.add(mult, g);
            }
            span_list.extend(new_list);
        }
        let t = gens.len();
        // Relation rows: the coordinate box is finite, so enumerate it with an
        // odometer and record every tuple that sums to zero, plus the order rows.
        let box_size: u64 = gen_orders.iter().product();
        if box_size > (1 << 22) {
            return Err(Error::BoundExceeded {
                what: "relation box for abelian decomposition",
                limit: 1 << 22,
                got: box_size as usize,
            });
        }
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (i, &o) in gen_orders.iter().enumerate() {
            let mut row = vec![0u64; t];
            row[i] = o;
            rows.push(row);
        }
        let mut digits = vec![0u64; t];
        // partial[i] = sum of digits[i..] * gens[i..]; partial[t] = zero
        let mut partial = vec![zero; t + 1];
        loop {
            if partial[0] == zero && digits.iter().any(|&d| d != 0) {
                rows.push(digits.clone());
            }
            // advance odometer, least significant at the back
            let mut i = t;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < gen_orders[i] {
                    partial[i] = v.add(partial[i + 1], multiple(v, gens[i], digits[i]));
                    // positions after i keep digits but partial must rebuild
                    for j in (0..i).rev() {
                        partial[j] = v.add(partial[j + 1], multiple(v, gens[j], digits[j]));
                    }
                    break;
                }
                digits[i] = 0;
                partial[i] = partial[i + 1];
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
        let rel = IntMatrix::from_u64_rows(&rows);
        let snf = smith_normal_form(&rel);
        // Basis h_j = sum_i (V^-1)[j][i] * g_i for the j with diagonal entry > 1.
        let mut orders: Vec<u64> = Vec::new();
        let mut basis: Vec<usize> = Vec::new();
        for (j, d) in snf.diag.iter().enumerate() {
            if d.is_zero() {
                return Err(Error::PropertyFailed(String::from(
                    "relation lattice not of full rank",
                )));
            }
            let d = d
                .to_u64()
                .ok_or_else(|| Error::PropertyFailed(String::from("invariant factor overflow")))?;
            if d == 1 {
                continue;
            }
            let mut h = zero;
            for i in 0..t {
                let coeff = snf.v_inv.at(j, i);
                let o = BigInt::from(gen_orders[i]);
                let reduced = ((coeff % &o) + &o) % &o;
                let k = reduced.to_u64().expect("reduced coefficient fits");
                h = v.add(h, multiple(v, gens[i], k));
            }
            orders.push(d);
            basis.push(h);
        }
        let total: u64 = orders.iter().product();
        if total != n as u64 {
            return Err(Error::PropertyFailed(String::from(
                "invariant factors do not enumerate the carrier",
            )));
        }
        // Certify bijectivity by walking every coordinate tuple.
        let k = orders.len();
        let mut elem_of_rank = vec![zero; n];
        let mut rank_of_elem = vec![usize::MAX; n];
        let mut coords = vec![0u64; k];
        let mut partial = vec![zero; k + 1];
        let mut rank = 0usize;
        loop {
            let e = partial[0];
            if rank_of_elem[e] != usize::MAX {
                return Err(Error::PropertyFailed(String::from(
                    "basis coordinates collide on the carrier",
                )));
            }
            elem_of_rank[rank] = e;
            rank_of_elem[e] = rank;
            rank += 1;
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                coords[i] += 1;
                if coords[i] < orders[i] {
                    for j in (0..=i).rev() {
                        partial[j] = v.add(partial[j + 1], multiple(v, basis[j], coords[j]));
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
        if rank != n {
            return Err(Error::PropertyFailed(String::from(
                "coordinate walk did not cover the carrier",
            )));
        }
        Ok(AbelianDecomp {
            orders,
            basis,
            elem_of_rank,
            rank_of_elem,
        })
    }

    /// Number of basis coordinates.
    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    pub fn carrier_order(&self) -> usize {
        self.elem_of_rank.len()
    }

    /// Largest invariant factor; 1 for the trivial group.
    pub fn exponent(&self) -> u64 {
        self.orders.last().copied().unwrap_or(1)
    }

    pub fn rank_of(&self, elem: usize) -> usize {
        self.rank_of_elem[elem]
    }

    pub fn elem_of(&self, rank: usize) -> usize {
        self.elem_of_rank[rank]
    }

    /// Mixed-radix digits of an element, first coordinate major.
    pub fn coords(&self, elem: usize) -> Vec<u64> {
        let mut rank = self.rank_of_elem[elem] as u64;
        let mut out = vec![0u64; self.orders.len()];
        for (i, &d) in self.orders.iter().enumerate().rev() {
            out[i] = rank % d;
            rank /= d;
        }
        out
    }

    pub fn elem_at(&self, coords: &[u64]) -> usize {
        debug_assert_eq!(coords.len(), self.orders.len());
        let mut rank = 0u64;
        for (i, &d) in self.orders.iter().enumerate() {
            debug_assert!(coords[i] < d);
            rank = rank * d + coords[i];
        }
        self.elem_of_rank[rank as usize]
    }

    /// Element for coordinates that may be unreduced or negative-free large
    /// values; digits are reduced mod the factor orders first.
    pub fn elem_at_unreduced(&self, coords: &[i64]) -> usize {
        let reduced: Vec<u64> = coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &d)| (((c % d as i64) + d as i64) % d as i64) as u64)
            .collect();
        self.elem_at(&reduced)
    }
}

/// k-fold sum of x under the view.
pub fn multiple(v: &impl AddView, x: usize, k: u64) -> usize {
    let mut acc = v.zero();
    let mut base = x;
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = v.add(acc, base);
        }
        base = v.add(base, base);
        k >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{mk_product, mk_zmod};
    use alloc::rc::Rc;

    #[test]
    fn cyclic_ring_decomposes_as_one_factor() {
        let z6 = mk_zmod(6).unwrap();
        let d = AbelianDecomp::compute(&z6).unwrap();
        assert_eq!(d.orders, vec![6]);
        assert_eq!(d.carrier_order(), 6);
        for e in 0..6 {
            assert_eq!(d.elem_at(&d.coords(e)), e);
        }
    }

    #[test]
    fn trivial_ring_decomposes_empty() {
        let z1 = mk_zmod(1).unwrap();
        let d = AbelianDecomp::compute(&z1).unwrap();
        assert_eq!(d.orders, vec![]);
        assert_eq!(d.exponent(), 1);
        assert_eq!(d.elem_at(&[]), 0);
    }

    #[test]
    fn z4_times_z6_has_invariant_factors_2_12() {
        // Matches the invariant factors of the cokernel of diag(4, 6).
        let z4 = Rc::new(mk_zmod(4).unwrap());
        let z6 = Rc::new(mk_zmod(6).unwrap());
        let p = mk_product(&z4, &z6).unwrap();
        let d = AbelianDecomp::compute(&*p.ring).unwrap();
        assert_eq!(d.orders, vec![2, 12]);
        // basis element orders match the claimed factors
        for (j, &b) in d.basis.iter().enumerate() {
            let mut acc = b;
            let mut k = 1;
            while acc != 0 {
                acc = p.ring.add(acc, b);
                k += 1;
            }
            assert_eq!(k, d.orders[j]);
        }
    }

    #[test]
    fn elementary_abelian_square() {
        let z2 = Rc::new(mk_zmod(2).unwrap());
        let p = mk_product(&z2, &z2).unwrap();
        let d = AbelianDecomp::compute(&*p.ring).unwrap();
        assert_eq!(d.orders, vec![2, 2]);
    }

    #[test]
    fn coordinates_are_additive() {
        let z8 = mk_zmod(8).unwrap();
        let d = AbelianDecomp::compute(&z8).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                let ca = d.coords(a);
                let cb = d.coords(b);
                let sum: Vec<u64> = ca
                    .iter()
                    .zip(&cb)
                    .zip(&d.orders)
                    .map(|((&x, &y), &m)| (x + y) % m)
                    .collect();
                assert_eq!(d.elem_at(&sum), z8.add(a, b));
            }
        }
    }

    #[test]
    fn unreduced_coordinates_wrap() {
        let z6 = mk_zmod(6).unwrap();
        let d = AbelianDecomp::compute(&z6).unwrap();
        let g = d.basis[0];
        assert_eq!(d.elem_at_unreduced(&[7]), g);
        assert_eq!(d.elem_at_unreduced(&[-1]), z6.neg(g));
    }
}
