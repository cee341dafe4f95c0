//! Ideals of a finite ring, carried as a generator list plus the full
//! element set as a bit mask.
//!
//! Closure is computed from the cached principal ideals `Ra`: the ideal
//! generated by `g₁, …, gₖ` is the sum `Rg₁ + … + Rgₖ`, and a sum of two
//! ideals is the set of pairwise sums. Enumeration runs a breadth-first
//! search over sums of principal ideals.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ring::FiniteRing;

#[derive(Clone)]
pub struct Ideal {
    ring: FiniteRing,
    bits: FixedBitSet,
    generators: Vec<usize>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.bits == other.bits
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.id().hash(state);
        self.bits.hash(state);
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal[{}]", self.describe())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// `Ra + Rb + …` as a raw set.
pub(crate) fn closure(r: &FiniteRing, gens: &[usize]) -> FixedBitSet {
    let principal = r.principal_sets();
    let mut acc = FixedBitSet::with_capacity(r.order());
    acc.insert(0);
    for &g in gens {
        acc = sum_sets(r, &acc, &principal[g]);
    }
    acc
}

/// `I + J` for two ideals given as sets.
pub(crate) fn sum_sets(r: &FiniteRing, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    if b.is_subset(a) {
        return a.clone();
    }
    if a.is_subset(b) {
        return b.clone();
    }
    let mut out = FixedBitSet::with_capacity(r.order());
    let bs: Vec<usize> = b.ones().collect();
    for x in a.ones() {
        let row = r.add_row(x);
        for &y in &bs {
            out.insert(row[y] as usize);
        }
    }
    out
}

/// A small generating set, chosen greedily by smallest missing element.
fn greedy_generators(r: &FiniteRing, bits: &FixedBitSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = closure(r, &gens);
    let principal = r.principal_sets();
    while current != *bits {
        // Prefer the element generating the largest principal ideal.
        let g = bits
            .ones()
            .filter(|&x| !current.contains(x))
            .max_by_key(|&x| (principal[x].count_ones(..), std::cmp::Reverse(x)))
            .expect("bits is a superset of the current closure");
        gens.push(g);
        current = sum_sets(r, &current, &principal[g]);
    }
    gens
}

impl Ideal {
    /// Wraps a set already known to be an ideal.
    pub(crate) fn from_bitset(r: &FiniteRing, bits: FixedBitSet) -> Ideal {
        let generators = greedy_generators(r, &bits);
        Ideal {
            ring: r.clone(),
            bits,
            generators,
        }
    }

    pub(crate) fn from_parts(r: &FiniteRing, bits: FixedBitSet, generators: Vec<usize>) -> Ideal {
        Ideal {
            ring: r.clone(),
            bits,
            generators,
        }
    }

    /// Validates that `elements` is an ideal of `r`.
    pub fn from_elements(r: &FiniteRing, elements: &[usize]) -> Result<Ideal> {
        let mut bits = FixedBitSet::with_capacity(r.order());
        for &x in elements {
            if x >= r.order() {
                return Err(Error::InvalidArgument(format!("element index {x} out of range")));
            }
            bits.insert(x);
        }
        if !bits.contains(0) {
            return Err(Error::NotAnIdeal("does not contain 0".into()));
        }
        for x in bits.ones() {
            for y in bits.ones() {
                if !bits.contains(r.add(x, y)) {
                    return Err(Error::NotAnIdeal(format!(
                        "{} + {} escapes the set",
                        r.label(x),
                        r.label(y)
                    )));
                }
            }
            for a in r.elements() {
                if !bits.contains(r.mul(a, x)) {
                    return Err(Error::NotAnIdeal(format!(
                        "{} · {} escapes the set",
                        r.label(a),
                        r.label(x)
                    )));
                }
            }
        }
        Ok(Ideal::from_bitset(r, bits))
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Sorted element indices.
    pub fn elements(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn size(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_zero(&self) -> bool {
        self.size() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.size() == self.ring.order()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// `(g₁, g₂) = {e₁, e₂, …}`.
    pub fn describe(&self) -> String {
        let r = &self.ring;
        let gens = if self.generators.is_empty() {
            "0".to_string()
        } else {
            self.generators
                .iter()
                .map(|&g| r.label(g))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let elems = self.bits.ones().map(|x| r.label(x)).collect::<Vec<_>>().join(", ");
        format!("({gens}) = {{{elems}}}")
    }

    /// The generator labels.
    pub fn generator_labels(&self) -> Vec<String> {
        self.generators.iter().map(|&g| self.ring.label(g).to_string()).collect()
    }
}

fn same_ring(i: &Ideal, j: &Ideal) -> Result<()> {
    if i.ring != j.ring {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// The smallest ideal containing `gens`.
pub fn ideal_generated_by(r: &FiniteRing, gens: &[usize]) -> Result<Ideal> {
    if let Some(&g) = gens.iter().find(|&&g| g >= r.order()) {
        return Err(Error::InvalidArgument(format!("element index {g} out of range")));
    }
    let mut generators: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
    generators.dedup();
    Ok(Ideal {
        ring: r.clone(),
        bits: closure(r, &generators),
        generators,
    })
}

/// The principal ideal `Ra`.
pub fn principal_ideal(r: &FiniteRing, a: usize) -> Ideal {
    Ideal {
        ring: r.clone(),
        bits: r.principal_sets()[a].clone(),
        generators: if a == 0 { Vec::new() } else { vec![a] },
    }
}

fn enumerate_raw(r: &FiniteRing) -> Vec<(FixedBitSet, Vec<usize>)> {
    let principal = r.principal_sets();
    let mut gens_of: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
    let mut list: Vec<FixedBitSet> = Vec::new();
    let mut prin: Vec<(usize, &FixedBitSet)> = Vec::new();

    let mut zero = FixedBitSet::with_capacity(r.order());
    zero.insert(0);
    gens_of.insert(zero.clone(), Vec::new());
    list.push(zero);
    for a in r.elements() {
        if !gens_of.contains_key(&principal[a]) {
            gens_of.insert(principal[a].clone(), vec![a]);
            list.push(principal[a].clone());
            prin.push((a, &principal[a]));
        }
    }
    let mut i = 0;
    while i < list.len() {
        let current = list[i].clone();
        for &(a, p) in &prin {
            if p.is_subset(&current) {
                continue;
            }
            let s = sum_sets(r, &current, p);
            if !gens_of.contains_key(&s) {
                let mut g = gens_of[&current].clone();
                g.push(a);
                gens_of.insert(s.clone(), g);
                list.push(s);
            }
        }
        i += 1;
    }
    let mut out: Vec<(FixedBitSet, Vec<usize>)> = list
        .into_iter()
        .map(|b| {
            let g = gens_of.remove(&b).expect("recorded");
            (b, g)
        })
        .collect();
    out.sort_by(|x, y| {
        x.0.count_ones(..)
            .cmp(&y.0.count_ones(..))
            .then_with(|| x.0.ones().cmp(y.0.ones()))
    });
    out
}

/// Every ideal of `r`, ordered by size and then lexicographically by
/// element list. Fails when `r` exceeds the enumeration cap.
pub fn enumerate_ideals(r: &FiniteRing, limits: &Limits) -> Result<Vec<Ideal>> {
    if r.order() > limits.max_enumeration_order {
        return Err(Error::OrderCap {
            order: r.order(),
            cap: limits.max_enumeration_order,
        });
    }
    let raw = r.ideal_cache().get_or_init(|| enumerate_raw(r));
    Ok(raw
        .iter()
        .map(|(b, g)| Ideal::from_parts(r, b.clone(), g.clone()))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    /// `(I : J) = {x : xJ ⊆ I}`.
    Colon,
    Intersection,
}

pub fn ideal_arithmetic(op: IdealOp, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    match op {
        IdealOp::Sum => ideal_sum(i, j),
        IdealOp::Product => ideal_product(i, j),
        IdealOp::Colon => ideal_colon(i, j),
        IdealOp::Intersection => ideal_intersection(i, j),
    }
}

pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    let mut generators = i.generators.clone();
    generators.extend(j.generators.iter().copied().filter(|g| !i.generators.contains(g)));
    Ok(Ideal {
        ring: i.ring.clone(),
        bits: sum_sets(&i.ring, &i.bits, &j.bits),
        generators,
    })
}

pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    let r = &i.ring;
    let mut prods: Vec<usize> = Vec::new();
    for &a in &i.generators {
        for &b in &j.generators {
            let p = r.mul(a, b);
            if p != 0 && !prods.contains(&p) {
                prods.push(p);
            }
        }
    }
    ideal_generated_by(r, &prods)
}

pub fn ideal_colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    let r = &i.ring;
    let mut bits = FixedBitSet::with_capacity(r.order());
    for x in r.elements() {
        if j.generators.iter().all(|&g| i.bits.contains(r.mul(x, g))) {
            bits.insert(x);
        }
    }
    Ok(Ideal::from_bitset(r, bits))
}

pub fn ideal_intersection(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    let mut bits = i.bits.clone();
    bits.intersect_with(&j.bits);
    Ok(Ideal::from_bitset(&i.ring, bits))
}

/// `Ann(I) = (0 : I)`.
pub fn annihilator(i: &Ideal) -> Ideal {
    let r = &i.ring;
    let mut bits = FixedBitSet::with_capacity(r.order());
    for x in r.elements() {
        let row = r.mul_row(x);
        if i.generators.iter().all(|&g| row[g] == 0) {
            bits.insert(x);
        }
    }
    Ideal::from_bitset(r, bits)
}

/// `Ann(a)`.
pub fn element_annihilator(r: &FiniteRing, a: usize) -> Ideal {
    annihilator(&principal_ideal(r, a))
}

/// A generator `a` with `Ra = I`, if any.
pub fn principal_generator(i: &Ideal) -> Option<usize> {
    let principal = i.ring.principal_sets();
    i.bits.ones().find(|&a| principal[a] == i.bits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealPredicates {
    pub is_principal: bool,
    pub principal_generator: Option<usize>,
    /// Contains a non-zero-divisor (properness not required).
    pub is_regular: bool,
    pub regular_element: Option<usize>,
    /// `Ann(I) = 0`.
    pub is_dense: bool,
    pub is_proper: bool,
}

pub fn ideal_predicates(i: &Ideal) -> IdealPredicates {
    let r = &i.ring;
    let principal_generator = principal_generator(i);
    let regular_element = i.bits.ones().find(|&a| r.is_regular(a));
    IdealPredicates {
        is_principal: principal_generator.is_some(),
        principal_generator,
        is_regular: regular_element.is_some(),
        regular_element,
        is_dense: annihilator(i).is_zero(),
        is_proper: !i.is_whole(),
    }
}

#[derive(Clone, Debug)]
pub struct InvertibilityCertificate {
    pub invertible: bool,
    /// `(R : I)`; integral because a finite ring is its own total ring of
    /// quotients.
    pub colon: Ideal,
    /// `I · (R : I)`.
    pub product: Ideal,
}

impl InvertibilityCertificate {
    pub fn describe(&self) -> String {
        format!(
            "(R : I) = {}; I·(R : I) = {} {} R (fractional ideals taken in Tot(R) = R)",
            self.colon.describe(),
            self.product.describe(),
            if self.invertible { "=" } else { "≠" }
        )
    }
}

/// `I` is invertible iff `I·(R : I) = R`.
pub fn is_invertible(i: &Ideal) -> Result<InvertibilityCertificate> {
    let whole = ideal_generated_by(&i.ring, &[i.ring.one()])?;
    let colon = ideal_colon(&whole, i)?;
    let product = ideal_product(i, &colon)?;
    Ok(InvertibilityCertificate {
        invertible: product.is_whole(),
        colon,
        product,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorPrincipality {
    pub factor: String,
    pub image_size: usize,
    /// A generator of the image, as a label in the factor.
    pub generator: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalPrincipality {
    pub locally_principal: bool,
    pub factors: Vec<FactorPrincipality>,
}

/// Principal image in every local factor of the ring.
pub fn is_locally_principal(i: &Ideal) -> LocalPrincipality {
    let mut factors = Vec::new();
    let mut ok = true;
    for f in i.ring.local_decomposition() {
        let image = f.image(&i.bits);
        let principal = f.ring.principal_sets();
        let generator = image.ones().find(|&a| principal[a] == image);
        ok &= generator.is_some();
        factors.push(FactorPrincipality {
            factor: f.ring.name().to_string(),
            image_size: image.count_ones(..),
            generator: generator.map(|g| f.ring.label(g).to_string()),
        });
    }
    LocalPrincipality {
        locally_principal: ok,
        factors,
    }
}
