mod common;

use pruferlab::decide::{
    classify_ring, is_arithmetical, is_gaussian, is_prufer, is_total_quotient_ring, strongly_prufer_and_ch,
};
use pruferlab::poly::content_equality_scan;
use pruferlab::Limits;

#[test]
fn reports_respect_the_chain() {
    let limits = Limits::default();
    for r in common::rings(32) {
        let report = classify_ring(&r, &limits).unwrap();
        assert!(report.flags.chain_violations().is_empty(), "{}", r.name());
        let f = &report.flags;
        assert!(!f.ch_ring || f.strongly_prufer, "{}: CH without strongly Prüfer", r.name());
        assert!(!f.total_quotient_ring || f.prufer, "{}", r.name());
    }
}

#[test]
fn finite_rings_are_total_quotient_rings() {
    for r in common::rings(64) {
        assert!(is_total_quotient_ring(&r).holds, "{}", r.name());
        assert!(is_prufer(&r).unwrap().holds, "{}", r.name());
    }
}

#[test]
fn gaussian_decider_is_sound_against_the_scan() {
    let limits = Limits::default();
    for r in common::rings(16) {
        let scan = content_equality_scan(&r, 1, 1, &limits).unwrap();
        if !scan.holds {
            assert!(!is_gaussian(&r).holds, "{}", r.name());
        }
    }
}

#[test]
fn arithmetical_deciders_agree() {
    let limits = Limits::default();
    for r in common::rings(32) {
        let v = is_arithmetical(&r, &limits).unwrap();
        if let Some(oracle) = v.oracle {
            assert_eq!(v.holds, oracle, "{}", r.name());
        }
        let d = strongly_prufer_and_ch(&r, &limits).unwrap();
        assert!(!d.ch_ring || d.strongly_prufer, "{}", r.name());
    }
}
