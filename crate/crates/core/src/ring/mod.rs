//! Finite commutative unital rings stored as flat operation tables.
//!
//! A [`FiniteRing`] is a cheap, clonable handle around immutable data: the
//! addition and multiplication tables over element indices `0..order`, the
//! construction that produced it, and a classification of every element
//! (units, zero divisors, nilpotents, idempotents) computed at build time.
//! Index `0` is always the additive identity.
//!
//! Rings are built by the constructors in this module:
//! [`make_cyclic_ring`], [`make_poly_quotient_ring`], [`make_product_ring`],
//! [`make_quotient_ring`] and [`make_trivial_extension`].

mod build;
mod iso;
mod local;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::module::FiniteModule;

pub use build::{
    make_cyclic_ring, make_poly_quotient_ring, make_product_ring, make_quotient_ring,
    make_trivial_extension, poly_to_string,
};
pub(crate) use build::cosets as build_cosets;
pub(crate) use build::{is_prime, make_poly_quotient_ring_named};
pub use iso::{are_isomorphic, find_isomorphism};
pub use local::LocalFactor;

/// Tables use 16-bit indices.
pub const HARD_MAX_ORDER: usize = 1 << 16;

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> u64 {
    NEXT_RING_ID.fetch_add(1, Ordering::Relaxed)
}

/// How a ring was built. Retained for display, for the DSL round-trip and
/// for the transfer-theorem harness (which needs to recognise `A ∝ A/M`).
#[derive(Clone, Debug)]
pub enum Construction {
    Cyclic {
        modulus: u64,
    },
    /// `(Z/p)[x]/(modulus)`, coefficients listed constant term first.
    PolyQuotient {
        p: u64,
        modulus: Vec<u64>,
    },
    Product(FiniteRing, FiniteRing),
    /// `representatives[c]` is the smallest base element of coset `c`.
    Quotient {
        base: FiniteRing,
        generators: Vec<usize>,
        representatives: Vec<usize>,
    },
    TrivialExtension {
        base: FiniteRing,
        module: FiniteModule,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    ring: u64,
    index: usize,
}

impl Element {
    pub fn index(self) -> usize {
        self.index
    }
}

pub(crate) struct Classes {
    pub units: FixedBitSet,
    pub zero_divisors: FixedBitSet,
    pub nilpotents: FixedBitSet,
    pub idempotents: Vec<usize>,
    pub inverse: Vec<Option<u16>>,
}

pub(crate) struct RingData {
    id: u64,
    order: usize,
    one: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    name: String,
    labels: Vec<String>,
    construction: Construction,
    classes: Classes,
    principal: OnceLock<Vec<FixedBitSet>>,
    pub(crate) ideals: OnceLock<Vec<(FixedBitSet, Vec<usize>)>>,
    factors: OnceLock<Vec<local::FactorData>>,
}

/// A finite commutative ring with identity.
#[derive(Clone)]
pub struct FiniteRing(Arc<RingData>);

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.0.name, self.0.order)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Assembles a ring from tables. The caller guarantees the ring axioms;
    /// [`FiniteRing::verify_axioms`] checks them exhaustively.
    pub(crate) fn from_tables(
        order: usize,
        one: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        name: String,
        labels: Vec<String>,
        construction: Construction,
    ) -> FiniteRing {
        debug_assert_eq!(add.len(), order * order);
        debug_assert_eq!(mul.len(), order * order);
        let neg = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| add[a * order + b] == 0)
                    .expect("additive inverse") as u16
            })
            .collect();
        let classes = classify(order, one, &mul);
        FiniteRing(Arc::new(RingData {
            id: fresh_id(),
            order,
            one,
            add,
            mul,
            neg,
            name,
            labels,
            construction,
            classes,
            principal: OnceLock::new(),
            ideals: OnceLock::new(),
            factors: OnceLock::new(),
        }))
    }

    /// Same tables under a different display name. The result is a distinct ring.
    pub(crate) fn renamed(&self, name: String) -> FiniteRing {
        FiniteRing::from_tables(
            self.0.order,
            self.0.one,
            self.0.add.clone(),
            self.0.mul.clone(),
            name,
            self.0.labels.clone(),
            self.0.construction.clone(),
        )
    }

    /// Unique identity tag; two handles compare equal iff the tags agree.
    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.0.one
    }

    pub fn is_zero_ring(&self) -> bool {
        self.0.order == 1
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn construction(&self) -> &Construction {
        &self.0.construction
    }

    /// Construction-aware rendering of an element; also valid DSL syntax.
    pub fn label(&self, a: usize) -> &str {
        &self.0.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.0.add[a * self.0.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul[a * self.0.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.0.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `n · a` computed by repeated doubling.
    pub fn times(&self, mut n: u64, a: usize) -> usize {
        let mut base = a;
        let mut acc = 0;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    /// The image of the integer `n` under `Z → R`.
    pub fn from_int(&self, n: u64) -> usize {
        self.times(n, self.one())
    }

    pub fn additive_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Additive order of the identity.
    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one())
    }

    pub(crate) fn mul_row(&self, a: usize) -> &[u16] {
        let n = self.0.order;
        &self.0.mul[a * n..(a + 1) * n]
    }

    pub(crate) fn add_row(&self, a: usize) -> &[u16] {
        let n = self.0.order;
        &self.0.add[a * n..(a + 1) * n]
    }

    // -- tagged elements --------------------------------------------------

    pub fn element(&self, index: usize) -> Result<Element> {
        if index >= self.order() {
            return Err(Error::InvalidArgument(format!(
                "element index {index} out of range for a ring of order {}",
                self.order()
            )));
        }
        Ok(Element {
            ring: self.id(),
            index,
        })
    }

    fn check(&self, e: Element) -> Result<usize> {
        if e.ring != self.id() {
            return Err(Error::RingMismatch);
        }
        Ok(e.index)
    }

    pub fn add_elements(&self, a: Element, b: Element) -> Result<Element> {
        let s = self.add(self.check(a)?, self.check(b)?);
        self.element(s)
    }

    pub fn mul_elements(&self, a: Element, b: Element) -> Result<Element> {
        let p = self.mul(self.check(a)?, self.check(b)?);
        self.element(p)
    }

    pub fn display(&self, e: Element) -> Result<&str> {
        Ok(self.label(self.check(e)?))
    }

    /// Finds the element whose label is `label`.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    // -- element classification -----------------------------------------

    pub fn is_unit(&self, a: usize) -> bool {
        self.0.classes.units.contains(a)
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.0.classes.inverse[a].map(usize::from)
    }

    pub fn is_zero_divisor(&self, a: usize) -> bool {
        self.0.classes.zero_divisors.contains(a)
    }

    /// Not a zero divisor.
    pub fn is_regular(&self, a: usize) -> bool {
        !self.is_zero_divisor(a)
    }

    pub fn is_nilpotent(&self, a: usize) -> bool {
        self.0.classes.nilpotents.contains(a)
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.0.classes.idempotents
    }

    /// Full element classification. Fails only if the finite-ring fact
    /// "regular implies unit" is broken, which signals corrupt tables.
    pub fn element_classification(&self) -> Result<ElementClassification> {
        let c = &self.0.classes;
        let units: Vec<usize> = c.units.ones().collect();
        let zero_divisors: Vec<usize> = c.zero_divisors.ones().collect();
        let regular: Vec<usize> = self.elements().filter(|&a| self.is_regular(a)).collect();
        for a in self.elements() {
            let u = c.units.contains(a);
            let z = c.zero_divisors.contains(a);
            if u == z {
                return Err(Error::Consistency(format!(
                    "element {} is {} a unit and a zero divisor",
                    self.label(a),
                    if u { "both" } else { "neither" }
                )));
            }
        }
        Ok(ElementClassification {
            units,
            zero_divisors,
            regular_is_unit: regular.iter().all(|&a| self.is_unit(a)),
            regular,
            nilradical: crate::ideal::Ideal::from_bitset(self, c.nilpotents.clone()),
            idempotents: c.idempotents.clone(),
        })
    }

    /// `Ra` for every element `a`, computed once.
    pub(crate) fn principal_sets(&self) -> &[FixedBitSet] {
        self.0.principal.get_or_init(|| {
            let n = self.order();
            (0..n)
                .map(|a| {
                    let mut set = FixedBitSet::with_capacity(n);
                    for &x in self.mul_row(a) {
                        set.insert(x as usize);
                    }
                    set
                })
                .collect()
        })
    }

    pub(crate) fn ideal_cache(&self) -> &OnceLock<Vec<(FixedBitSet, Vec<usize>)>> {
        &self.0.ideals
    }

    /// Exhaustive check of the commutative ring axioms.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order();
        let one = self.one();
        if n > 1 && one == 0 {
            return Err(Error::Axiom("0 = 1 in a nonzero ring".into()));
        }
        for a in 0..n {
            if self.add(a, 0) != a {
                return Err(Error::Axiom(format!("{} + 0 != {}", self.label(a), self.label(a))));
            }
            if self.mul(a, one) != a {
                return Err(Error::Axiom(format!("{} * 1 != {}", self.label(a), self.label(a))));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(Error::Axiom(format!("no additive inverse for {}", self.label(a))));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::Axiom(format!(
                        "commutativity fails at ({}, {})",
                        self.label(a),
                        self.label(b)
                    )));
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return Err(Error::Axiom(format!(
                            "associativity fails at ({}, {}, {})",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        )));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(Error::Axiom(format!(
                            "distributivity fails at ({}, {}, {})",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Result of [`FiniteRing::element_classification`].
#[derive(Clone, Debug)]
pub struct ElementClassification {
    pub units: Vec<usize>,
    pub zero_divisors: Vec<usize>,
    /// Non-zero-divisors.
    pub regular: Vec<usize>,
    /// Always true for a finite ring; computed rather than assumed.
    pub regular_is_unit: bool,
    pub nilradical: crate::ideal::Ideal,
    pub idempotents: Vec<usize>,
}

fn classify(order: usize, one: usize, mul: &[u16]) -> Classes {
    let mut units = FixedBitSet::with_capacity(order);
    let mut zero_divisors = FixedBitSet::with_capacity(order);
    let mut nilpotents = FixedBitSet::with_capacity(order);
    let mut inverse = vec![None; order];
    let mut idempotents = Vec::new();
    for a in 0..order {
        let row = &mul[a * order..(a + 1) * order];
        if let Some(b) = row.iter().position(|&x| x as usize == one) {
            units.insert(a);
            inverse[a] = Some(b as u16);
        }
        if row.iter().enumerate().any(|(b, &x)| b != 0 && x == 0) {
            zero_divisors.insert(a);
        }
        if row[a] as usize == a {
            idempotents.push(a);
        }
        // a^k = 0 for some k <= order
        let mut x = a;
        for _ in 0..=order {
            if x == 0 {
                nilpotents.insert(a);
                break;
            }
            x = mul[x * order + a] as usize;
        }
    }
    Classes {
        units,
        zero_divisors,
        nilpotents,
        idempotents,
        inverse,
    }
}
