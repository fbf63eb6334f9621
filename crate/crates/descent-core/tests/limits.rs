//! Bound enforcement and failure-path behavior through the public interface.

mod common;

use std::rc::Rc;

use common::{f3_to_f9, mod4_to_mod2};
use descent_core::amitsur::{build_amitsur, coring_of, hn_abelian};
use descent_core::coalg::{grouplike_coalgebra, grouplike_morphism};
use descent_core::descent::{is_faithfully_flat, is_separable};
use descent_core::group::HypStatus;
use descent_core::ring::mk_zmod;
use descent_core::Error;

#[test]
fn quotient_extension_fails_both_descent_hypotheses() {
    let iota = mod4_to_mod2();
    let flat = is_faithfully_flat(&iota).unwrap();
    assert!(!flat.flat);
    assert!(flat.certificates.iter().any(|c| !c.injective));
    let sep = is_separable(&iota).unwrap();
    assert!(!sep.separable);
    assert!(sep.witness.is_none());
}

#[test]
fn cubic_tower_stops_materializing_past_the_square_level() {
    let iota = f3_to_f9();
    let cx = build_amitsur(&iota, 2).unwrap();
    assert_eq!(cx.levels[2].order, 6561);
    assert!(!cx.levels[2].is_materialized());
    // unit enumeration and degree-two cohomology need that level as a ring
    assert!(matches!(cx.units_at(2), Err(Error::BoundExceeded { .. })));
    assert!(matches!(
        hn_abelian(&cx, 2),
        Err(Error::BoundExceeded { .. })
    ));
    // degree one is still fine from the first two levels
    assert_eq!(hn_abelian(&cx, 1).unwrap().group.order, 1);
}

#[test]
fn cubic_coring_reports_unverified_coassociativity() {
    // the triple tensor level is out of bounds, so the counit laws are
    // certified but coassociativity is only reported, not silently assumed
    let cor = coring_of(&f3_to_f9()).unwrap();
    assert_eq!(cor.coassociativity, HypStatus::Unverified);
    let quartic = coring_of(&common::f2_to_f4()).unwrap();
    assert_eq!(quartic.coassociativity, HypStatus::Verified);
}

#[test]
fn coalgebra_towers_respect_the_ambient_dimension_cap() {
    let f2 = Rc::new(mk_zmod(2).unwrap());
    let d = Rc::new(grouplike_coalgebra(2, &f2).unwrap());
    let c = Rc::new(grouplike_coalgebra(1, &f2).unwrap());
    let phi = grouplike_morphism(&d, &c, &[0, 0]).unwrap();
    assert!(matches!(
        descent_core::coalg::coalg_amitsur(&phi, 9),
        Err(Error::DimensionBound)
    ));
    assert!(descent_core::coalg::coalg_amitsur(&phi, 3).is_ok());
}
