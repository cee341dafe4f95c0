use fixedbitset::FixedBitSet;

use super::{make_quotient_ring, FiniteRing};
use crate::ideal::{ideal_generated_by, Ideal};

pub(crate) struct FactorData {
    /// `None` when the ring is itself local.
    ring: Option<FiniteRing>,
    projection: Vec<usize>,
    idempotent: usize,
}

/// One factor `eR ≅ R/(1-e)R` of the decomposition of a finite ring into
/// local rings.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub ring: FiniteRing,
    /// `projection[x]` is the image of `x ∈ R` in this factor.
    pub projection: Vec<usize>,
    /// The primitive idempotent of `R` that maps to 1 here and to 0 in
    /// every other factor.
    pub idempotent: usize,
}

impl LocalFactor {
    /// The image of a subset of `R` in this factor.
    pub fn image(&self, elements: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.ring.order());
        for x in elements.ones() {
            out.insert(self.projection[x]);
        }
        out
    }
}

fn nontrivial_idempotent(r: &FiniteRing) -> Option<usize> {
    r.idempotents()
        .iter()
        .copied()
        .find(|&e| e != 0 && e != r.one())
}

/// Recursive splitting at the smallest nontrivial idempotent.
fn split(r: &FiniteRing) -> Vec<(FiniteRing, Vec<usize>)> {
    if r.is_zero_ring() {
        return Vec::new();
    }
    let Some(e) = nontrivial_idempotent(r) else {
        return vec![(r.clone(), r.elements().collect())];
    };
    let f = r.sub(r.one(), e);
    let mut out = Vec::new();
    // R/(1-e)R ≅ eR first, then R/eR ≅ (1-e)R.
    for killer in [f, e] {
        let ideal = ideal_generated_by(r, &[killer]).expect("same ring");
        let (q, proj) = make_quotient_ring(r, &ideal).expect("same ring");
        for (factor, inner) in split(&q) {
            let composed = proj.iter().map(|&x| inner[x]).collect();
            out.push((factor, composed));
        }
    }
    out
}

impl FiniteRing {
    fn factor_data(&self) -> &[FactorData] {
        self.0.factors.get_or_init(|| {
            let parts = split(self);
            let single = parts.len() == 1;
            let mut data = Vec::with_capacity(parts.len());
            for (i, (ring, projection)) in parts.iter().enumerate() {
                let idempotent = self
                    .idempotents()
                    .iter()
                    .copied()
                    .find(|&x| {
                        parts.iter().enumerate().all(|(j, (rj, pj))| {
                            pj[x] == if i == j { rj.one() } else { 0 }
                        })
                    })
                    .expect("primitive idempotent for each factor");
                data.push(FactorData {
                    ring: if single { None } else { Some(ring.clone()) },
                    projection: projection.clone(),
                    idempotent,
                });
            }
            data
        })
    }

    /// Decomposition `R ≅ R₁ × … × Rₖ` into local rings. A local ring is its
    /// own single factor; the zero ring has none.
    pub fn local_decomposition(&self) -> Vec<LocalFactor> {
        self.factor_data()
            .iter()
            .map(|d| LocalFactor {
                ring: d.ring.clone().unwrap_or_else(|| self.clone()),
                projection: d.projection.clone(),
                idempotent: d.idempotent,
            })
            .collect()
    }

    pub fn local_factor_count(&self) -> usize {
        self.factor_data().len()
    }

    /// The maximal ideals, one per local factor: the preimage of the
    /// non-units of that factor.
    pub fn maximal_ideals(&self) -> Vec<Ideal> {
        self.local_decomposition()
            .iter()
            .map(|f| {
                let mut set = FixedBitSet::with_capacity(self.order());
                for x in self.elements() {
                    if !f.ring.is_unit(f.projection[x]) {
                        set.insert(x);
                    }
                }
                Ideal::from_bitset(self, set)
            })
            .collect()
    }

    /// Exactly one maximal ideal.
    pub fn is_local(&self) -> bool {
        self.local_factor_count() == 1
    }

    pub fn maximal_ideals_and_locality(&self) -> (Vec<Ideal>, bool) {
        let m = self.maximal_ideals();
        let local = m.len() == 1;
        (m, local)
    }

    /// The unique maximal ideal of a local ring.
    pub fn maximal_ideal(&self) -> crate::Result<Ideal> {
        if !self.is_local() {
            return Err(crate::Error::NotLocal);
        }
        Ok(self.maximal_ideals().remove(0))
    }

    /// True when the non-units are closed under addition (and hence form
    /// an ideal). Independent of the idempotent-based locality test.
    pub fn non_units_form_ideal(&self) -> bool {
        if self.is_zero_ring() {
            return false;
        }
        let non_units: Vec<usize> = self.elements().filter(|&a| !self.is_unit(a)).collect();
        non_units
            .iter()
            .all(|&a| non_units.iter().all(|&b| !self.is_unit(self.add(a, b))))
    }
}

#[cfg(test)]
mod tests {
    use crate::module::{make_module, ModuleKind};
    use crate::ring::*;

    #[test]
    fn z12_maximal_ideals() {
        let r = make_cyclic_ring(12).unwrap();
        let (m, local) = r.maximal_ideals_and_locality();
        assert!(!local);
        let mut sets: Vec<Vec<usize>> = m.iter().map(|i| i.elements()).collect();
        sets.sort();
        assert_eq!(sets[0], (0..12).step_by(2).collect::<Vec<_>>());
        assert_eq!(sets[1], (0..12).step_by(3).collect::<Vec<_>>());
    }

    #[test]
    fn z12_factors_are_z4_and_z3() {
        let r = make_cyclic_ring(12).unwrap();
        let f = r.local_decomposition();
        assert_eq!(f.len(), 2);
        let orders: Vec<usize> = f.iter().map(|x| x.ring.order()).collect();
        assert_eq!(orders.iter().product::<usize>(), 12);
        let z4 = make_cyclic_ring(4).unwrap();
        let z3 = make_cyclic_ring(3).unwrap();
        assert!(f.iter().any(|x| are_isomorphic(&x.ring, &z4)));
        assert!(f.iter().any(|x| are_isomorphic(&x.ring, &z3)));
    }

    #[test]
    fn f2_triv_f4_is_local() {
        let k = make_cyclic_ring(2).unwrap();
        let big = make_poly_quotient_ring(2, &[1, 1, 1]).unwrap();
        let e = make_module(&k, ModuleKind::Extension(big)).unwrap();
        let r = make_trivial_extension(&k, &e).unwrap();
        let m = r.maximal_ideal().unwrap();
        // 0 ∝ F4, and it squares to zero
        assert_eq!(m.elements(), vec![0, 1, 2, 3]);
        for &a in &m.elements() {
            for &b in &m.elements() {
                assert_eq!(r.mul(a, b), 0);
            }
        }
    }

    #[test]
    fn z4_triv_z4_local_with_expected_maximal_ideal() {
        let z4 = make_cyclic_ring(4).unwrap();
        let e = make_module(&z4, ModuleKind::Regular).unwrap();
        let r = make_trivial_extension(&z4, &e).unwrap();
        assert_eq!(r.local_decomposition().len(), 1);
        let m = r.maximal_ideal().unwrap();
        // 2Z/4 ∝ Z/4: first coordinate even
        let expected: Vec<usize> = (0..16).filter(|x| (x / 4) % 2 == 0).collect();
        assert_eq!(m.elements(), expected);
    }

    #[test]
    fn three_field_factors() {
        let f2 = make_cyclic_ring(2).unwrap();
        let f3 = make_cyclic_ring(3).unwrap();
        let r = make_product_ring(&make_product_ring(&f2, &f2).unwrap(), &f3).unwrap();
        let factors = r.local_decomposition();
        assert_eq!(factors.len(), 3);
        for f in &factors {
            assert!(f.ring.elements().skip(1).all(|a| f.ring.is_unit(a)));
        }
    }

    #[test]
    fn decomposition_is_a_ring_isomorphism() {
        for n in 1..=40u64 {
            let r = make_cyclic_ring(n).unwrap();
            let factors = r.local_decomposition();
            let order: usize = factors.iter().map(|f| f.ring.order()).product();
            assert_eq!(order, r.order());
            let image = |x: usize| factors.iter().map(|f| f.projection[x]).collect::<Vec<_>>();
            let mut seen = std::collections::HashSet::new();
            for x in r.elements() {
                assert!(seen.insert(image(x)), "not injective on Z/{n}");
                for y in r.elements() {
                    for f in &factors {
                        assert_eq!(f.projection[r.add(x, y)], f.ring.add(f.projection[x], f.projection[y]));
                        assert_eq!(f.projection[r.mul(x, y)], f.ring.mul(f.projection[x], f.projection[y]));
                    }
                }
            }
            for f in &factors {
                assert_eq!(f.idempotent, r.mul(f.idempotent, f.idempotent));
                assert!(f.ring.idempotents().len() == 2 || f.ring.is_zero_ring());
            }
        }
    }

    #[test]
    fn locality_agrees_with_non_unit_closure() {
        for n in 1..=40u64 {
            let r = make_cyclic_ring(n).unwrap();
            assert_eq!(r.is_local(), r.non_units_form_ideal(), "Z/{n}");
        }
    }
}
