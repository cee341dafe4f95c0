use pruferlab::zoo::{build_catalog, parse_predicate, search_catalog, UniverseParams};
use pruferlab::Limits;

#[test]
fn no_ring_is_flat_without_being_arithmetical() {
    let p = parse_predicate("wdim_le_one && !arithmetical").unwrap();
    for max_order in [1, 4, 8, 16, 32] {
        let params = UniverseParams { max_order, max_depth: 2 };
        let c = build_catalog(params, &Limits::default().with_enumeration_cap(64)).unwrap();
        assert!(search_catalog(&p, &c).matches.is_empty(), "order ≤ {max_order}");
        for e in &c.entries {
            let report = e.report.as_ref().unwrap();
            assert!(report.flags.chain_violations().is_empty(), "{}", e.spec);
        }
    }
}

#[test]
fn predicates_round_trip_through_display() {
    for text in ["prufer && !gaussian", "!(gaussian || ch_ring) && prufer", "true || wdim_le_one && arithmetical", "!!ch_ring"] {
        let p = parse_predicate(text).unwrap();
        assert_eq!(parse_predicate(&p.to_string()).unwrap(), p, "{text}");
    }
}
