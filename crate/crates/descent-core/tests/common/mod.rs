//! Shared extension builders for the integration tests.
#![allow(dead_code)]

use std::rc::Rc;

use descent_core::ring::{mk_galois_field, mk_product, mk_zmod, FiniteRing, RingHom, RingRef};

pub fn rc(r: FiniteRing) -> RingRef {
    Rc::new(r)
}

pub fn f2_to_f4() -> RingHom {
    let f2 = rc(mk_zmod(2).unwrap());
    let f4 = rc(mk_galois_field(2, &[1, 1, 1]).unwrap());
    RingHom::new(&f2, &f4, vec![0, 1]).unwrap()
}

pub fn f3_to_f9() -> RingHom {
    let f3 = rc(mk_zmod(3).unwrap());
    let f9 = rc(mk_galois_field(3, &[1, 0, 1]).unwrap());
    let minus_one = f9.neg(f9.one);
    RingHom::new(&f3, &f9, vec![0, 1, minus_one]).unwrap()
}

pub fn z2_diagonal() -> RingHom {
    let z2 = rc(mk_zmod(2).unwrap());
    mk_product(&z2, &z2).unwrap().diagonal.unwrap()
}

pub fn z3_diagonal() -> RingHom {
    let z3 = rc(mk_zmod(3).unwrap());
    mk_product(&z3, &z3).unwrap().diagonal.unwrap()
}

pub fn mod4_to_mod2() -> RingHom {
    let z4 = rc(mk_zmod(4).unwrap());
    let z2 = rc(mk_zmod(2).unwrap());
    RingHom::new(&z4, &z2, vec![0, 1, 0, 1]).unwrap()
}
