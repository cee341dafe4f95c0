mod common;

use pruferlab::homology::{is_flat_ideal, resolution_cycle_probe, tensor_over_ring};
use pruferlab::ideal::enumerate_ideals;
use pruferlab::module::{make_module, FiniteModule, ModuleKind};
use pruferlab::ring::FiniteRing;
use pruferlab::Limits;

fn modules(r: &FiniteRing) -> Vec<FiniteModule> {
    let mut out = vec![make_module(r, ModuleKind::Regular).unwrap()];
    for i in enumerate_ideals(r, &Limits::default()).unwrap() {
        out.push(FiniteModule::from_ideal(&i).unwrap());
        out.push(make_module(r, ModuleKind::Quotient(i)).unwrap());
    }
    out
}

#[test]
fn tensoring_with_the_ring_preserves_order() {
    for r in common::rings(16) {
        let reg = make_module(&r, ModuleKind::Regular).unwrap();
        for m in modules(&r) {
            let t = tensor_over_ring(&m, &reg).unwrap();
            assert_eq!(t.order().unwrap(), m.order() as u64, "{} ⊗ {}", m.name(), r.name());
        }
    }
}

#[test]
fn tensor_is_symmetric() {
    for r in common::rings(12) {
        let ms = modules(&r);
        for (k, m) in ms.iter().enumerate() {
            for n in &ms[k..] {
                let a = tensor_over_ring(m, n).unwrap().invariant_factors().unwrap();
                let b = tensor_over_ring(n, m).unwrap().invariant_factors().unwrap();
                assert_eq!(a, b, "{} ⊗ {} over {}", m.name(), n.name(), r.name());
            }
        }
    }
}

#[test]
fn flat_ideals_never_have_infinite_flat_dimension() {
    let limits = Limits::default();
    for r in common::rings(16).into_iter().filter(|r| r.order() > 1 && r.is_local()) {
        for i in enumerate_ideals(&r, &limits).unwrap() {
            let flat = is_flat_ideal(&r, &i, &limits).unwrap().flat;
            assert_eq!(flat, i.is_zero() || i.is_whole(), "{}: {}", r.name(), i.describe());
            if flat && !i.is_zero() {
                let probe = resolution_cycle_probe(&r, &i, 4, &limits).unwrap();
                assert!(!probe.certifies_infinite(), "{}: {}", r.name(), i.describe());
            }
        }
    }
}
