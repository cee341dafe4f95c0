//! Homological oracles on finite modules, all reduced to integer Smith
//! normal forms of explicit presentations.
//!
//! * [`AbelianDecomposition`] writes the additive group of a module as
//!   `⊕ Z/dⱼ` with explicit basis elements and coordinates.
//! * [`tensor_over_ring`] presents `M ⊗_R N` on the pairs of basis
//!   elements, modulo the additive orders and the balance relations
//!   `am ⊗ n = m ⊗ an`.
//! * [`is_flat_ideal`] compares `|J ⊗ I|` with `|JI|` for every ideal `J`.
//! * [`resolution_cycle_probe`] walks a minimal free resolution over a
//!   local ring until a syzygy repeats, a syzygy becomes free, or the
//!   budget runs out.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideals, ideal_product, Ideal};
use crate::limits::Limits;
use crate::module::FiniteModule;
use crate::ring::FiniteRing;
use crate::snf::{invariant_factors, smith_normal_form, IntegerMatrix, Lattice};

/// Largest module on which [`modules_isomorphic`] runs its exhaustive search.
pub const ISO_SEARCH_MAX_ORDER: usize = 64;

/// Work units (partial-map extensions) the isomorphism search may spend.
const ISO_SEARCH_BUDGET: u64 = 20_000_000;

/// Largest number of coefficient tuples enumerated for one syzygy.
const PROBE_TUPLE_BUDGET: usize = 1 << 22;

fn multiple(add: &impl Fn(usize, usize) -> usize, x: usize, mut n: u64) -> usize {
    let (mut acc, mut base) = (0, x);
    while n > 0 {
        if n & 1 == 1 {
            acc = add(acc, base);
        }
        base = add(base, base);
        n >>= 1;
    }
    acc
}

/// A finite abelian group written as `Z/d₁ ⊕ … ⊕ Z/dₖ` with `d₁ | d₂ | …`
/// and every `dⱼ > 1`.
#[derive(Clone, Debug)]
pub struct AbelianDecomposition {
    pub invariants: Vec<u64>,
    /// `basis[j]` generates the `Z/dⱼ` summand.
    pub basis: Vec<usize>,
    coords: Vec<u64>,
}

impl AbelianDecomposition {
    /// Coordinates of element `x`, each reduced modulo its invariant.
    pub fn coords(&self, x: usize) -> &[u64] {
        let k = self.invariants.len();
        &self.coords[x * k..(x + 1) * k]
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    /// Decomposes the group with elements `0..order` (0 the identity)
    /// under `add`.
    pub fn of_group(order: usize, add: impl Fn(usize, usize) -> usize) -> Result<Self> {
        // Grow H = ⟨g₁, …, gᵢ⟩ one cyclic extension at a time; each step
        // contributes one relation tᵢ·eᵢ − coords(tᵢ·gᵢ), and those relations
        // generate all of them.
        let mut raw: Vec<Option<Vec<i64>>> = vec![None; order];
        raw[0] = Some(Vec::new());
        let mut members = vec![0usize];
        let mut gens: Vec<usize> = Vec::new();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        let additive_order = |x: usize| {
            let (mut y, mut k) = (x, 1usize);
            while y != 0 {
                y = add(y, x);
                k += 1;
            }
            k
        };
        while members.len() < order {
            let g = (0..order)
                .filter(|&x| raw[x].is_none())
                .max_by_key(|&x| (additive_order(x), std::cmp::Reverse(x)))
                .expect("H is a proper subgroup");
            let k = gens.len();
            let (mut y, mut t) = (g, 1i64);
            while raw[y].is_none() {
                y = add(y, g);
                t += 1;
            }
            let mut rel: Vec<i64> = raw[y].clone().expect("member");
            rel.iter_mut().for_each(|c| *c = -*c);
            rel.resize(k, 0);
            rel.push(t);
            relations.push(rel);
            let old = members.clone();
            let mut shifted = g;
            for s in 1..t {
                for &h in &old {
                    let z = add(h, shifted);
                    let mut c = raw[h].clone().expect("member");
                    c.resize(k, 0);
                    c.push(s);
                    raw[z] = Some(c);
                    members.push(z);
                }
                shifted = add(shifted, g);
            }
            gens.push(g);
        }
        let k = gens.len();
        let rows: Vec<Vec<i64>> = relations
            .into_iter()
            .map(|mut r| {
                r.resize(k, 0);
                r
            })
            .collect();
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&rows, k)?)?;
        let diag = snf.diagonal();
        let keep: Vec<usize> = (0..k).filter(|&j| diag[j] > 1).collect();
        let invariants: Vec<u64> = keep.iter().map(|&j| diag[j] as u64).collect();
        let gen_orders: Vec<i128> = gens.iter().map(|&g| additive_order(g) as i128).collect();
        let basis = keep
            .iter()
            .map(|&j| {
                (0..k).fold(0, |acc, i| {
                    let c = snf.v_inv.get(j, i).rem_euclid(gen_orders[i]) as u64;
                    add(acc, multiple(&add, gens[i], c))
                })
            })
            .collect();
        let mut coords = Vec::with_capacity(order * keep.len());
        for x in 0..order {
            let mut c = raw[x].clone().expect("every element reached");
            c.resize(k, 0);
            for (&j, &d) in keep.iter().zip(&invariants) {
                let d = d as i128;
                let v = (0..k).fold(0, |acc, i| (acc + c[i] as i128 * snf.v.get(i, j).rem_euclid(d)).rem_euclid(d));
                coords.push(v as u64);
            }
        }
        Ok(AbelianDecomposition {
            invariants,
            basis,
            coords,
        })
    }

    pub fn of_module(m: &FiniteModule) -> Result<Self> {
        Self::of_group(m.order(), |x, y| m.add(x, y))
    }

    pub fn of_ring(r: &FiniteRing) -> Result<Self> {
        Self::of_group(r.order(), |x, y| r.add(x, y))
    }
}

/// A finitely generated module presented over the integers: generators
/// `g₁, …, gₙ` and integer relation rows.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    pub base: FiniteRing,
    pub generators: usize,
    pub relations: IntegerMatrix,
}

impl PresentedModule {
    /// The invariant factors greater than 1. Errors if the presented group
    /// is infinite.
    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        let f = invariant_factors(&self.relations)?;
        if f.len() < self.generators {
            return Err(Error::InvalidArgument("presented group is infinite".into()));
        }
        Ok(f.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect())
    }

    pub fn order(&self) -> Result<u64> {
        Ok(self.invariant_factors()?.iter().product())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Presentation of `M ⊗_R N` from precomputed group decompositions.
fn tensor_presentation(
    ring_basis: &[usize],
    m: &FiniteModule,
    dm: &AbelianDecomposition,
    n: &FiniteModule,
    dn: &AbelianDecomposition,
) -> Result<PresentedModule> {
    let (p, q) = (dm.rank(), dn.rank());
    let cols = p * q;
    let mut lattice = Lattice::new(cols);
    let mut row = vec![0i64; cols];
    for i in 0..p {
        for j in 0..q {
            row.iter_mut().for_each(|x| *x = 0);
            row[i * q + j] = gcd(dm.invariants[i], dn.invariants[j]) as i64;
            lattice.insert(&row)?;
        }
    }
    for &a in ring_basis {
        for i in 0..p {
            let am = dm.coords(m.act(a, dm.basis[i]));
            for j in 0..q {
                let an = dn.coords(n.act(a, dn.basis[j]));
                row.iter_mut().for_each(|x| *x = 0);
                for (k, &c) in am.iter().enumerate() {
                    row[k * q + j] += c as i64;
                }
                for (l, &c) in an.iter().enumerate() {
                    row[i * q + l] -= c as i64;
                }
                lattice.insert(&row)?;
            }
        }
    }
    Ok(PresentedModule {
        base: m.base().clone(),
        generators: cols,
        relations: lattice.basis()?,
    })
}

/// `M ⊗_R N` presented on the pairs of group basis elements.
pub fn tensor_over_ring(m: &FiniteModule, n: &FiniteModule) -> Result<PresentedModule> {
    if m.base() != n.base() {
        return Err(Error::RingMismatch);
    }
    let ring_basis = AbelianDecomposition::of_ring(m.base())?.basis;
    let dm = AbelianDecomposition::of_module(m)?;
    let dn = AbelianDecomposition::of_module(n)?;
    tensor_presentation(&ring_basis, m, &dm, n, &dn)
}

#[derive(Clone, Debug)]
pub struct FlatnessWitness {
    pub j: Ideal,
    pub tensor_order: u64,
    pub product_order: usize,
}

#[derive(Clone, Debug)]
pub struct FlatnessCertificate {
    pub flat: bool,
    /// An ideal `J` with `|J ⊗ I| ≠ |JI|`.
    pub witness: Option<FlatnessWitness>,
}

/// Precomputed group structure of every ideal, shared by flatness checks.
pub(crate) struct IdealModules {
    ring_basis: Vec<usize>,
    pub ideals: Vec<Ideal>,
    modules: Vec<(FiniteModule, AbelianDecomposition)>,
}

impl IdealModules {
    pub(crate) fn new(r: &FiniteRing, limits: &Limits) -> Result<Self> {
        let ideals = enumerate_ideals(r, limits)?;
        let modules = ideals
            .iter()
            .map(|i| {
                let m = FiniteModule::from_ideal(i)?;
                let d = AbelianDecomposition::of_module(&m)?;
                Ok((m, d))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealModules {
            ring_basis: AbelianDecomposition::of_ring(r)?.basis,
            ideals,
            modules,
        })
    }

    /// `J ⊗ I → JI` fails to be injective, compared by orders.
    pub(crate) fn flatness_failure(&self, i: usize, j: usize) -> Result<Option<FlatnessWitness>> {
        let (mi, di) = &self.modules[i];
        let (mj, dj) = &self.modules[j];
        let tensor_order = tensor_presentation(&self.ring_basis, mj, dj, mi, di)?.order()?;
        let product_order = ideal_product(&self.ideals[j], &self.ideals[i])?.size();
        Ok((tensor_order != product_order as u64).then(|| FlatnessWitness {
            j: self.ideals[j].clone(),
            tensor_order,
            product_order,
        }))
    }

    pub(crate) fn index_of(&self, i: &Ideal) -> usize {
        self.ideals.iter().position(|x| x == i).expect("every ideal is enumerated")
    }
}

/// `I` is flat iff `J ⊗ I → JI` is injective for every ideal `J`.
pub fn is_flat_ideal(r: &FiniteRing, i: &Ideal, limits: &Limits) -> Result<FlatnessCertificate> {
    if i.ring() != r {
        return Err(Error::RingMismatch);
    }
    let table = IdealModules::new(r, limits)?;
    let idx = table.index_of(i);
    for j in 0..table.ideals.len() {
        if let Some(w) = table.flatness_failure(idx, j)? {
            return Ok(FlatnessCertificate {
                flat: false,
                witness: Some(w),
            });
        }
    }
    Ok(FlatnessCertificate {
        flat: true,
        witness: None,
    })
}

/// A pair of ideals `(I, J)` with `J ⊗ I → JI` not injective, or `None`
/// when every ideal is flat.
pub fn non_flat_ideal(r: &FiniteRing, limits: &Limits) -> Result<Option<(Ideal, FlatnessWitness)>> {
    let table = IdealModules::new(r, limits)?;
    let n = table.ideals.len();
    for i in 0..n {
        for j in 0..n {
            if let Some(w) = table.flatness_failure(i, j)? {
                return Ok(Some((table.ideals[i].clone(), w)));
            }
        }
    }
    Ok(None)
}

/// `S + Rx` for a submodule `S` given as a bit set.
fn extend_submodule(m: &FiniteModule, s: &FixedBitSet, x: usize) -> FixedBitSet {
    let r = m.base();
    let mut orbit = FixedBitSet::with_capacity(m.order());
    for a in r.elements() {
        orbit.insert(m.act(a, x));
    }
    let mut out = s.clone();
    for y in s.ones() {
        for z in orbit.ones() {
            out.insert(m.add(y, z));
        }
    }
    out
}

fn zero_submodule(m: &FiniteModule) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(m.order());
    s.insert(0);
    s
}

/// Greedy `R`-generators: repeatedly the element with the largest span.
fn module_generators(m: &FiniteModule) -> Vec<usize> {
    let mut s = zero_submodule(m);
    let mut gens = Vec::new();
    while s.count_ones(..) < m.order() {
        let (x, next) = m
            .elements()
            .filter(|&x| !s.contains(x))
            .map(|x| (x, extend_submodule(m, &s, x)))
            .max_by_key(|(x, t)| (t.count_ones(..), std::cmp::Reverse(*x)))
            .expect("proper submodule");
        gens.push(x);
        s = next;
    }
    gens
}

struct IsoSearch<'a> {
    m: &'a FiniteModule,
    n: &'a FiniteModule,
    gens: Vec<usize>,
    phi: Vec<Option<usize>>,
    hit: Vec<bool>,
    work: u64,
}

impl IsoSearch<'_> {
    /// Extends φ from the current domain `S` to `S + R·gens[level]`.
    fn descend(&mut self, level: usize, domain: &[usize]) -> Option<bool> {
        if level == self.gens.len() {
            return Some(true);
        }
        let x = self.gens[level];
        let r = self.m.base().clone();
        for y in self.n.elements() {
            let mut assigned: Vec<usize> = Vec::new();
            let mut ok = true;
            'outer: for a in r.elements() {
                let (ax, ay) = (self.m.act(a, x), self.n.act(a, y));
                for &s in domain {
                    self.work += 1;
                    let (u, v) = (self.m.add(s, ax), self.n.add(self.phi[s].expect("domain"), ay));
                    match self.phi[u] {
                        Some(w) if w != v => {
                            ok = false;
                            break 'outer;
                        }
                        Some(_) => {}
                        None => {
                            if self.hit[v] {
                                ok = false;
                                break 'outer;
                            }
                            self.phi[u] = Some(v);
                            self.hit[v] = true;
                            assigned.push(u);
                        }
                    }
                }
            }
            if self.work > ISO_SEARCH_BUDGET {
                return None;
            }
            if ok {
                let mut next: Vec<usize> = domain.to_vec();
                next.extend(&assigned);
                match self.descend(level + 1, &next) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            for u in assigned {
                let v = self.phi[u].take().expect("assigned");
                self.hit[v] = false;
            }
        }
        Some(false)
    }
}

/// Decides `M ≅ N` as `R`-modules: group invariants first, then an
/// exhaustive search for an action-preserving bijection. `None` when the
/// modules are too large or the search budget runs out.
pub fn modules_isomorphic(m: &FiniteModule, n: &FiniteModule) -> Result<Option<bool>> {
    if m.base() != n.base() {
        return Err(Error::RingMismatch);
    }
    if m.order() != n.order() {
        return Ok(Some(false));
    }
    if AbelianDecomposition::of_module(m)?.invariants != AbelianDecomposition::of_module(n)?.invariants {
        return Ok(Some(false));
    }
    if m.order() > ISO_SEARCH_MAX_ORDER {
        return Ok(None);
    }
    let mut phi = vec![None; m.order()];
    phi[0] = Some(0);
    let mut hit = vec![false; n.order()];
    hit[0] = true;
    let mut search = IsoSearch {
        m,
        n,
        gens: module_generators(m),
        phi,
        hit,
        work: 0,
    };
    Ok(search.descend(0, &[0]))
}

/// `MK`: the additive closure of all products `m·k`.
fn maximal_times(k: &FiniteModule, max_ideal: &Ideal) -> FixedBitSet {
    let mut s = zero_submodule(k);
    let mut list = vec![0usize];
    for a in max_ideal.elements() {
        for x in k.elements() {
            let p = k.act(a, x);
            if s.contains(p) {
                continue;
            }
            // S ← S + Zp
            let mut y = p;
            let base = list.clone();
            while !s.contains(y) {
                for &b in &base {
                    let z = k.add(b, y);
                    if !s.contains(z) {
                        s.insert(z);
                        list.push(z);
                    }
                }
                y = k.add(y, p);
            }
        }
    }
    s
}

/// A minimal generating set over a local ring: elements chosen outside
/// `MK + (chosen)` until they span.
fn minimal_generators(k: &FiniteModule, max_ideal: &Ideal) -> Vec<usize> {
    let mut s = maximal_times(k, max_ideal);
    let mut gens = Vec::new();
    while s.count_ones(..) < k.order() {
        let x = k.elements().find(|&x| !s.contains(x)).expect("proper");
        s = extend_submodule(k, &s, x);
        gens.push(x);
    }
    gens
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyStep {
    pub order: usize,
    /// Minimal number of generators.
    pub generators: usize,
    pub free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ProbeOutcome {
    /// The syzygy at step `fd` is free (or zero).
    FiniteFlatDimension { fd: usize },
    /// Syzygy `step` is isomorphic to syzygy `matches < step`, so the
    /// resolution never terminates.
    Periodic { step: usize, matches: usize, period: usize },
    Inconclusive { steps: usize, reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionProbe {
    pub outcome: ProbeOutcome,
    pub syzygies: Vec<SyzygyStep>,
}

impl ResolutionProbe {
    pub fn certifies_infinite(&self) -> bool {
        matches!(self.outcome, ProbeOutcome::Periodic { .. })
    }

    pub fn describe(&self) -> String {
        let chain = self
            .syzygies
            .iter()
            .enumerate()
            .map(|(i, s)| format!("K{i}: order {}, {} generator(s)", s.order, s.generators))
            .collect::<Vec<_>>()
            .join("; ");
        match &self.outcome {
            ProbeOutcome::FiniteFlatDimension { fd } => format!("finite flat dimension {fd} ({chain})"),
            ProbeOutcome::Periodic { step, matches, period } => format!(
                "syzygy K{step} ≅ K{matches} (period {period}), flat dimension infinite ({chain})"
            ),
            ProbeOutcome::Inconclusive { steps, reason } => {
                format!("inconclusive after {steps} step(s): {reason} ({chain})")
            }
        }
    }
}

/// Kernel of `R^μ → K`, `(a₁, …, a_μ) ↦ Σ aᵢ·gᵢ`, as coefficient tuples.
fn kernel_tuples(k: &FiniteModule, gens: &[usize]) -> Vec<Vec<usize>> {
    let r = k.base();
    let mut out = Vec::new();
    let mut tuple = vec![0usize; gens.len()];
    fn rec(
        k: &FiniteModule,
        r: &FiniteRing,
        gens: &[usize],
        level: usize,
        acc: usize,
        tuple: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if level == gens.len() {
            if acc == 0 {
                out.push(tuple.clone());
            }
            return;
        }
        for a in r.elements() {
            tuple[level] = a;
            rec(k, r, gens, level + 1, k.add(acc, k.act(a, gens[level])), tuple, out);
        }
    }
    rec(k, r, gens, 0, 0, &mut tuple, &mut out);
    out
}

/// Minimal free resolution of the ideal `I` over the local ring `R`,
/// tracking syzygies until one is free, one repeats up to isomorphism, or
/// `max_steps` kernels have been computed.
pub fn resolution_cycle_probe(
    r: &FiniteRing,
    i: &Ideal,
    max_steps: usize,
    limits: &Limits,
) -> Result<ResolutionProbe> {
    if i.ring() != r {
        return Err(Error::RingMismatch);
    }
    resolution_cycle_probe_module(&FiniteModule::from_ideal(i)?, max_steps, limits)
}

/// [`resolution_cycle_probe`] for an arbitrary module.
pub fn resolution_cycle_probe_module(
    start: &FiniteModule,
    max_steps: usize,
    limits: &Limits,
) -> Result<ResolutionProbe> {
    let r = start.base().clone();
    if max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
    }
    let max_ideal = r.maximal_ideal()?;
    let mut syzygies: Vec<FiniteModule> = vec![start.clone()];
    let mut steps: Vec<SyzygyStep> = Vec::new();
    let inconclusive = |steps: Vec<SyzygyStep>, reason: String| ResolutionProbe {
        outcome: ProbeOutcome::Inconclusive {
            steps: steps.len().saturating_sub(1),
            reason,
        },
        syzygies: steps,
    };
    loop {
        let n = syzygies.len() - 1;
        let k = syzygies[n].clone();
        let gens = minimal_generators(&k, &max_ideal);
        let free_order = (r.order() as u128).checked_pow(gens.len() as u32);
        let free = free_order == Some(k.order() as u128);
        steps.push(SyzygyStep {
            order: k.order(),
            generators: gens.len(),
            free,
        });
        if free {
            return Ok(ResolutionProbe {
                outcome: ProbeOutcome::FiniteFlatDimension { fd: n },
                syzygies: steps,
            });
        }
        for m in 0..n {
            match modules_isomorphic(&syzygies[m], &k)? {
                Some(true) => {
                    return Ok(ResolutionProbe {
                        outcome: ProbeOutcome::Periodic {
                            step: n,
                            matches: m,
                            period: n - m,
                        },
                        syzygies: steps,
                    })
                }
                Some(false) => {}
                None => {
                    return Ok(inconclusive(
                        steps,
                        format!("isomorphism of K{m} and K{n} undecided within budget"),
                    ))
                }
            }
        }
        if n == max_steps {
            return Ok(inconclusive(steps, format!("no repetition within {max_steps} step(s)")));
        }
        let tuples = free_order.filter(|&t| t <= PROBE_TUPLE_BUDGET as u128);
        let Some(tuples) = tuples else {
            return Ok(inconclusive(steps, "free cover too large to enumerate".into()));
        };
        let kernel_order = tuples as usize / k.order();
        if kernel_order > limits.max_probe_module_order {
            return Ok(inconclusive(
                steps,
                format!(
                    "syzygy of order {kernel_order} exceeds the cap of {}",
                    limits.max_probe_module_order
                ),
            ));
        }
        let kernel = kernel_tuples(&k, &gens);
        syzygies.push(FiniteModule::from_tuples(&r, gens.len(), kernel)?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{ideal_generated_by, principal_ideal};
    use crate::module::{make_module, ModuleKind};
    use crate::ring::{make_cyclic_ring, make_poly_quotient_ring, make_trivial_extension};

    fn dual_numbers() -> FiniteRing {
        let k = make_cyclic_ring(2).unwrap();
        let e = make_module(&k, ModuleKind::Regular).unwrap();
        make_trivial_extension(&k, &e).unwrap()
    }

    #[test]
    fn decomposition_of_small_groups() {
        let z12 = make_cyclic_ring(12).unwrap();
        let d = AbelianDecomposition::of_ring(&z12).unwrap();
        assert_eq!(d.invariants, vec![12]);
        let gf4 = make_poly_quotient_ring(2, &[1, 1, 1]).unwrap();
        assert_eq!(AbelianDecomposition::of_ring(&gf4).unwrap().invariants, vec![2, 2]);
        let z4 = make_cyclic_ring(4).unwrap();
        let e = make_module(&z4, ModuleKind::Regular).unwrap();
        let r = make_trivial_extension(&z4, &e).unwrap();
        assert_eq!(AbelianDecomposition::of_ring(&r).unwrap().invariants, vec![4, 4]);
        assert_eq!(AbelianDecomposition::of_ring(&make_cyclic_ring(1).unwrap()).unwrap().invariants, Vec::<u64>::new());
    }

    #[test]
    fn coordinates_rebuild_elements() {
        let z6 = make_cyclic_ring(6).unwrap();
        let z2 = make_cyclic_ring(2).unwrap();
        let r = crate::ring::make_product_ring(&z6, &z2).unwrap();
        let d = AbelianDecomposition::of_ring(&r).unwrap();
        assert_eq!(d.invariants, vec![2, 6]);
        for x in r.elements() {
            let rebuilt = d
                .coords(x)
                .iter()
                .zip(&d.basis)
                .fold(0, |acc, (&c, &b)| r.add(acc, r.times(c, b)));
            assert_eq!(rebuilt, x);
        }
    }

    #[test]
    fn tensor_examples() {
        let z4 = make_cyclic_ring(4).unwrap();
        let two = ideal_generated_by(&z4, &[2]).unwrap();
        let q = make_module(&z4, ModuleKind::Quotient(two)).unwrap();
        assert_eq!(tensor_over_ring(&q, &q).unwrap().invariant_factors().unwrap(), vec![2]);
        let reg = make_module(&z4, ModuleKind::Regular).unwrap();
        assert_eq!(tensor_over_ring(&reg, &q).unwrap().order().unwrap(), 2);

        let f2 = make_cyclic_ring(2).unwrap();
        let reg = make_module(&f2, ModuleKind::Regular).unwrap();
        assert_eq!(tensor_over_ring(&reg, &reg).unwrap().invariant_factors().unwrap(), vec![2]);

        // GF(4) ⊗_{F2} GF(4) has order 16; over GF(4) itself it has order 4.
        let gf4 = make_poly_quotient_ring(2, &[1, 1, 1]).unwrap();
        let ext = make_module(&f2, ModuleKind::Extension(gf4.clone())).unwrap();
        assert_eq!(tensor_over_ring(&ext, &ext).unwrap().order().unwrap(), 16);
        let reg4 = make_module(&gf4, ModuleKind::Regular).unwrap();
        assert_eq!(tensor_over_ring(&reg4, &reg4).unwrap().order().unwrap(), 4);
    }

    #[test]
    fn flatness_in_z4() {
        let z4 = make_cyclic_ring(4).unwrap();
        let two = ideal_generated_by(&z4, &[2]).unwrap();
        let cert = is_flat_ideal(&z4, &two, &Limits::default()).unwrap();
        assert!(!cert.flat);
        let w = cert.witness.unwrap();
        assert_eq!(w.j, two);
        assert_eq!((w.tensor_order, w.product_order), (2, 1));
        let whole = ideal_generated_by(&z4, &[1]).unwrap();
        assert!(is_flat_ideal(&z4, &whole, &Limits::default()).unwrap().flat);
    }

    #[test]
    fn flatness_in_dual_numbers_and_fields() {
        let r = dual_numbers();
        let i = principal_ideal(&r, 1);
        assert!(!is_flat_ideal(&r, &i, &Limits::default()).unwrap().flat);
        let gf4 = make_poly_quotient_ring(2, &[1, 1, 1]).unwrap();
        assert!(non_flat_ideal(&gf4, &Limits::default()).unwrap().is_none());
        let z6 = make_cyclic_ring(6).unwrap();
        assert!(non_flat_ideal(&z6, &Limits::default()).unwrap().is_none());
    }

    #[test]
    fn isomorphism_search() {
        let z4 = make_cyclic_ring(4).unwrap();
        let two = ideal_generated_by(&z4, &[2]).unwrap();
        let q = make_module(&z4, ModuleKind::Quotient(two.clone())).unwrap();
        let i = FiniteModule::from_ideal(&two).unwrap();
        assert_eq!(modules_isomorphic(&q, &i).unwrap(), Some(true));

        // Same group Z/2 ⊕ Z/2, different actions over F2 ∝ F2.
        let r = dual_numbers();
        let reg = make_module(&r, ModuleKind::Regular).unwrap();
        let m = r.maximal_ideal().unwrap();
        let k = make_module(&r, ModuleKind::Quotient(m.clone())).unwrap();
        let kk = make_module(&r, ModuleKind::DirectSum(vec![k.clone(), k])).unwrap();
        assert_eq!(modules_isomorphic(&reg, &kk).unwrap(), Some(false));
        assert_eq!(modules_isomorphic(&reg, &reg).unwrap(), Some(true));
    }

    #[test]
    fn probe_dual_numbers_period_one() {
        let r = dual_numbers();
        let i = principal_ideal(&r, 1);
        let p = resolution_cycle_probe(&r, &i, 4, &Limits::default()).unwrap();
        assert_eq!(p.outcome, ProbeOutcome::Periodic { step: 1, matches: 0, period: 1 });
        assert!(p.certifies_infinite());
    }

    #[test]
    fn probe_z4_period_one() {
        let z4 = make_cyclic_ring(4).unwrap();
        let two = ideal_generated_by(&z4, &[2]).unwrap();
        let p = resolution_cycle_probe(&z4, &two, 4, &Limits::default()).unwrap();
        assert_eq!(p.outcome, ProbeOutcome::Periodic { step: 1, matches: 0, period: 1 });
    }

    #[test]
    fn probe_free_cases() {
        let gf4 = make_poly_quotient_ring(2, &[1, 1, 1]).unwrap();
        let whole = ideal_generated_by(&gf4, &[1]).unwrap();
        let p = resolution_cycle_probe(&gf4, &whole, 3, &Limits::default()).unwrap();
        assert_eq!(p.outcome, ProbeOutcome::FiniteFlatDimension { fd: 0 });
    }

    #[test]
    fn probe_rejects_non_local_and_zero_steps() {
        let z6 = make_cyclic_ring(6).unwrap();
        let i = ideal_generated_by(&z6, &[2]).unwrap();
        assert!(matches!(resolution_cycle_probe(&z6, &i, 3, &Limits::default()), Err(Error::NotLocal)));
        let z4 = make_cyclic_ring(4).unwrap();
        let i = ideal_generated_by(&z4, &[2]).unwrap();
        assert!(resolution_cycle_probe(&z4, &i, 0, &Limits::default()).is_err());
    }

    #[test]
    fn probe_z8_ideal_four() {
        // 0 → (2) → Z/8 → (4) → 0, then Ann(2) = (4): period 2.
        let z8 = make_cyclic_ring(8).unwrap();
        let four = ideal_generated_by(&z8, &[4]).unwrap();
        let p = resolution_cycle_probe(&z8, &four, 5, &Limits::default()).unwrap();
        assert_eq!(p.outcome, ProbeOutcome::Periodic { step: 2, matches: 0, period: 2 });
        assert_eq!(p.syzygies.iter().map(|s| s.order).collect::<Vec<_>>(), vec![2, 4, 2]);
    }
}
