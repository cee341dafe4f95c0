#![allow(dead_code)]

use pruferlab::dsl::eval_spec;
use pruferlab::ring::FiniteRing;
use pruferlab::zoo::{universe, UniverseParams};
use pruferlab::Limits;

/// Every universe ring of order at most `max_order`, named by its spec.
pub fn rings(max_order: usize) -> Vec<FiniteRing> {
    let limits = Limits::default();
    universe(UniverseParams { max_order, max_depth: 2 })
        .iter()
        .map(|s| eval_spec(s, &limits).unwrap())
        .collect()
}

pub fn ring(spec: &str) -> FiniteRing {
    pruferlab::dsl::ring_from_spec(spec, &Limits::default()).unwrap()
}
