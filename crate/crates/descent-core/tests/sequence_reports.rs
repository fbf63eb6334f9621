//! End-to-end exactness reports for the bundled ring extensions, checked for
//! internal consistency as well as for the pinned group orders.

mod common;

use common::{f2_to_f4, f3_to_f9, mod4_to_mod2, z2_diagonal};
use descent_core::descent::{verify_dual_sequence, verify_invertible_sequence, verify_seq5};
use descent_core::group::{ExactnessReport, HypStatus};
use descent_core::ring::RingHom;
use descent_core::Error;

fn orders(report: &ExactnessReport) -> Vec<usize> {
    report.groups.iter().map(|g| g.order).collect()
}

fn assert_internally_consistent(report: &ExactnessReport) {
    assert!(report.exact_everywhere());
    for p in &report.positions {
        assert!(p.exact);
        assert_eq!(p.image_order, p.kernel_order);
        assert!(p.kernel_order <= report.groups[p.at].order);
        // for honest group homomorphisms, kernels satisfy Lagrange
        if !report.pointed {
            assert!(report.groups[p.at].order % p.kernel_order == 0);
        }
    }
    assert_eq!(report.sequence.len(), report.groups.len());
    for (name, g) in report.sequence.iter().zip(&report.groups) {
        assert_eq!(name, &g.name);
    }
}

#[test]
fn five_object_reports_for_the_bundled_extensions() {
    let cases: [(RingHom, Vec<usize>); 3] = [
        (f2_to_f4(), vec![1, 1, 3, 3, 1, 1]),
        (f3_to_f9(), vec![1, 2, 8, 4, 1, 1]),
        (z2_diagonal(), vec![1, 1, 1, 1, 1, 1]),
    ];
    for (iota, expected) in cases {
        let report = verify_seq5(&iota).unwrap();
        assert_internally_consistent(&report);
        assert_eq!(orders(&report), expected);
        assert_eq!(report.sequence[1], "U(R)");
        assert_eq!(report.sequence[3], "AutCor(S/R)");
        assert!(!report.hypotheses.is_empty());
        assert!(report
            .hypotheses
            .iter()
            .all(|h| h.status == HypStatus::Verified));
    }
}

#[test]
fn five_object_report_rejects_non_injective_maps() {
    assert!(matches!(verify_seq5(&mod4_to_mod2()), Err(Error::NotMono)));
}

#[test]
fn invertible_submodule_reports() {
    let report = verify_invertible_sequence(&f2_to_f4()).unwrap();
    assert_internally_consistent(&report);
    assert!(report.pointed);
    assert_eq!(orders(&report), vec![1, 1, 3, 3, 1]);

    let report = verify_invertible_sequence(&z2_diagonal()).unwrap();
    assert_internally_consistent(&report);
    assert_eq!(orders(&report), vec![1, 1, 1, 1, 1]);

    let f4 = f2_to_f4().cod;
    let report = verify_invertible_sequence(&RingHom::identity(&f4)).unwrap();
    assert_internally_consistent(&report);
    // a ring is its own unique invertible submodule
    assert_eq!(orders(&report)[3], 1);
}

#[test]
fn dual_sequence_reports() {
    let report = verify_dual_sequence(&f2_to_f4()).unwrap();
    assert_internally_consistent(&report);
    assert_eq!(orders(&report), vec![1, 3, 3, 2, 2]);
    // the nontrivial tail: a ring automorphism of order two and the twisted
    // bimodule class it generates
    assert_eq!(
        report.groups[3].invariant_factors.as_ref().unwrap(),
        &vec![2]
    );

    let report = verify_dual_sequence(&z2_diagonal()).unwrap();
    assert_internally_consistent(&report);
    assert_eq!(orders(&report), vec![1, 1, 1, 2, 2]);
}
