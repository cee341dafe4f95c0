//! Decision procedures for the Prüfer-like hierarchy
//!
//! ```text
//! semihereditary ⇒ wdim ≤ 1 ⇒ arithmetical ⇒ Gaussian ⇒ Prüfer
//! ```
//!
//! together with the total-quotient-ring, strongly Prüfer and (CH)
//! properties. Every decider returns its verdict with a witness when the
//! property fails. [`classify_ring`] runs all of them, cross-checks the
//! primary criteria against the independent oracles on small rings, and
//! assembles a [`PropertyReport`].

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{non_flat_ideal, resolution_cycle_probe, FlatnessWitness, ResolutionProbe};
use crate::ideal::{
    annihilator, enumerate_ideals, ideal_colon, ideal_generated_by, ideal_predicates, ideal_product,
    is_invertible, is_locally_principal, sum_sets, Ideal,
};
use crate::limits::Limits;
use crate::poly::{content_equality_scan, ContentWitness};
use crate::ring::{Construction, FiniteRing, LocalFactor};

pub const REPORT_SCHEMA: u32 = 1;

/// Syzygy steps the wdim probe walks per candidate ideal.
const PROBE_STEPS: usize = 4;
/// Principal ideals tried per non-field local factor.
const PROBE_CANDIDATES: usize = 4;
/// Largest ring on which `classify_ring` runs the degree-(1,1) content scan.
const CLASSIFY_SCAN_ORDER: usize = 16;

#[derive(Clone, Debug)]
pub struct TotalQuotientVerdict {
    pub holds: bool,
    /// A regular element that is not a unit.
    pub witness: Option<usize>,
}

/// Every element is a unit or a zero divisor.
pub fn is_total_quotient_ring(r: &FiniteRing) -> TotalQuotientVerdict {
    let witness = r.elements().find(|&a| r.is_regular(a) && !r.is_unit(a));
    TotalQuotientVerdict {
        holds: witness.is_none(),
        witness,
    }
}

/// The distinct ideals `(a, b)` for `a ≤ b`, in order of first appearance.
fn two_generated_ideals(r: &FiniteRing) -> Vec<Ideal> {
    let principal = r.principal_sets();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut out = Vec::new();
    for a in r.elements() {
        for b in a..r.order() {
            let bits = sum_sets(r, &principal[a], &principal[b]);
            if seen.insert(bits.clone()) {
                let gens: Vec<usize> = [a, b].into_iter().filter(|&g| g != 0).collect();
                let mut gens = gens;
                gens.dedup();
                out.push(Ideal::from_parts(r, bits, gens));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct PruferVerdict {
    pub holds: bool,
    /// The distinct regular two-generated ideals that were checked.
    pub examined: Vec<Ideal>,
    pub witness: Option<Ideal>,
}

/// Every two-generated regular ideal is invertible.
pub fn is_prufer(r: &FiniteRing) -> Result<PruferVerdict> {
    let mut examined = Vec::new();
    for i in two_generated_ideals(r) {
        if !ideal_predicates(&i).is_regular {
            continue;
        }
        let cert = is_invertible(&i)?;
        if !cert.invertible {
            return Ok(PruferVerdict {
                holds: false,
                examined,
                witness: Some(i),
            });
        }
        examined.push(i);
    }
    Ok(PruferVerdict {
        holds: true,
        examined,
        witness: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TsangCondition {
    /// `(a, b)² ∉ {(a²), (b²)}`.
    SquareNotPrincipal,
    /// `(a, b)² = (a²)` and `ab = 0` but `b² ≠ 0`.
    ZeroProductSquare,
}

#[derive(Clone, Debug)]
pub struct TsangWitness {
    pub factor: FiniteRing,
    /// Elements of the local factor.
    pub a: usize,
    pub b: usize,
    /// Lifts to `R` supported on the factor.
    pub lift_a: usize,
    pub lift_b: usize,
    pub condition: TsangCondition,
}

#[derive(Clone, Debug)]
pub struct GaussianVerdict {
    pub holds: bool,
    pub witness: Option<TsangWitness>,
}

fn lift(r: &FiniteRing, f: &LocalFactor, a: usize) -> usize {
    r.elements()
        .find(|&x| f.projection[x] == a && r.mul(f.idempotent, x) == x)
        .expect("every factor element lifts into eR")
}

/// Tsang's criterion on a local ring `(F, M)`.
fn tsang_local(f: &FiniteRing) -> Option<(usize, usize, TsangCondition)> {
    let m: Vec<usize> = f.elements().filter(|&a| !f.is_unit(a)).collect();
    let principal = f.principal_sets();
    for &a in &m {
        for &b in &m {
            let (aa, ab, bb) = (f.mul(a, a), f.mul(a, b), f.mul(b, b));
            let sq = sum_sets(f, &sum_sets(f, &principal[aa], &principal[ab]), &principal[bb]);
            let is_a = sq == principal[aa];
            if !is_a && sq != principal[bb] {
                return Some((a, b, TsangCondition::SquareNotPrincipal));
            }
            if is_a && ab == 0 && bb != 0 {
                return Some((a, b, TsangCondition::ZeroProductSquare));
            }
        }
    }
    None
}

/// Gaussian iff every local factor satisfies Tsang's criterion.
pub fn is_gaussian(r: &FiniteRing) -> GaussianVerdict {
    for f in r.local_decomposition() {
        if let Some((a, b, condition)) = tsang_local(&f.ring) {
            return GaussianVerdict {
                holds: false,
                witness: Some(TsangWitness {
                    lift_a: lift(r, &f, a),
                    lift_b: lift(r, &f, b),
                    factor: f.ring.clone(),
                    a,
                    b,
                    condition,
                }),
            };
        }
    }
    GaussianVerdict {
        holds: true,
        witness: None,
    }
}

#[derive(Clone, Debug)]
pub struct ArithmeticalVerdict {
    pub holds: bool,
    /// A two-generated ideal that is not locally principal.
    pub witness: Option<Ideal>,
    /// Outcome of the `I = (I : J)·J` oracle, when it ran.
    pub oracle: Option<bool>,
    /// `I ⊆ J` with `I ≠ (I : J)·J`.
    pub oracle_witness: Option<(Ideal, Ideal)>,
}

/// A pair `I ⊆ J` admitting no `H` with `I = HJ`. Such an `H` exists iff
/// `(I : J)·J = I`.
pub fn factorization_oracle(r: &FiniteRing, limits: &Limits) -> Result<Option<(Ideal, Ideal)>> {
    let ideals = enumerate_ideals(r, limits)?;
    for j in &ideals {
        for i in ideals.iter().filter(|i| i.is_subset(j)) {
            let h = ideal_colon(i, j)?;
            if ideal_product(&h, j)? != *i {
                return Ok(Some((i.clone(), j.clone())));
            }
        }
    }
    Ok(None)
}

/// Every two-generated ideal is locally principal; cross-checked against
/// [`factorization_oracle`] when the ring is within the oracle cap.
pub fn is_arithmetical(r: &FiniteRing, limits: &Limits) -> Result<ArithmeticalVerdict> {
    let witness = two_generated_ideals(r)
        .into_iter()
        .find(|i| !is_locally_principal(i).locally_principal);
    let holds = witness.is_none();
    let (oracle, oracle_witness) = if r.order() <= limits.max_oracle_order {
        let w = factorization_oracle(r, limits)?;
        (Some(w.is_none()), w)
    } else {
        (None, None)
    };
    if oracle.is_some_and(|o| o != holds) {
        return Err(Error::Consistency(format!(
            "arithmetical deciders disagree on {}: locally principal {holds}, factorization {}",
            r.name(),
            !holds
        )));
    }
    Ok(ArithmeticalVerdict {
        holds,
        witness,
        oracle,
        oracle_witness,
    })
}

#[derive(Clone, Debug)]
pub struct WdimVerdict {
    pub wdim_le_one: bool,
    /// Equal to `wdim_le_one` for finite rings.
    pub semihereditary: bool,
    /// `None` when `wdim ≤ 1`; `Some(true)` when a periodic syzygy
    /// certifies infinite flat dimension; `Some(false)` when the probe was
    /// inconclusive.
    pub wdim_infinite_certified: Option<bool>,
    /// A local factor that is not a field.
    pub non_field_factor: Option<FiniteRing>,
    /// A nonzero proper ideal of `R` living in that factor; not flat.
    pub non_flat: Option<Ideal>,
    /// Result of the all-ideals flatness oracle, when it ran.
    pub flatness_oracle: Option<bool>,
    pub flatness_witness: Option<(Ideal, FlatnessWitness)>,
    /// The certifying (or last attempted) probe, with the ideal of the
    /// local factor it ran on.
    pub probe: Option<(String, ResolutionProbe)>,
}

fn is_field(f: &FiniteRing) -> bool {
    !f.is_zero_ring() && f.elements().all(|a| a == 0 || f.is_unit(a))
}

/// `wdim(R) ≤ 1`, decided as: every local factor is a field.
pub fn wdim_le_one(r: &FiniteRing) -> bool {
    r.local_decomposition().iter().all(|f| is_field(&f.ring))
}

/// `wdim(R) ≤ 1` iff every local factor is a field. Cross-checked against
/// the flatness oracle within the oracle cap; a trivial extension by a
/// nonzero module must land on `wdim > 1`.
pub fn wdim_classification(r: &FiniteRing, limits: &Limits) -> Result<WdimVerdict> {
    let factors = r.local_decomposition();
    let bad = factors.iter().find(|f| !is_field(&f.ring));
    let wdim_le_one = bad.is_none();

    let (flatness_oracle, flatness_witness) = if r.order() <= limits.max_oracle_order {
        let w = non_flat_ideal(r, limits)?;
        (Some(w.is_none()), w)
    } else {
        (None, None)
    };
    if flatness_oracle.is_some_and(|o| o != wdim_le_one) {
        return Err(Error::Consistency(format!(
            "wdim criteria disagree on {}: product of fields {wdim_le_one}, flatness oracle {}",
            r.name(),
            !wdim_le_one
        )));
    }
    if let Construction::TrivialExtension { module, .. } = r.construction() {
        if !module.is_zero() && wdim_le_one {
            return Err(Error::Consistency(format!(
                "{} is a trivial extension by a nonzero module but has wdim ≤ 1",
                r.name()
            )));
        }
    }

    let mut verdict = WdimVerdict {
        wdim_le_one,
        semihereditary: wdim_le_one,
        wdim_infinite_certified: None,
        non_field_factor: bad.map(|f| f.ring.clone()),
        non_flat: None,
        flatness_oracle,
        flatness_witness,
        probe: None,
    };
    if wdim_le_one {
        return Ok(verdict);
    }
    let f = bad.expect("a non-field factor");
    let a = f.ring.elements().find(|&a| a != 0 && !f.ring.is_unit(a)).expect("non-field local ring");
    verdict.non_flat = Some(ideal_generated_by(r, &[lift(r, f, a)])?);

    let mut certified = false;
    'factors: for f in factors.iter().filter(|f| !is_field(&f.ring)) {
        let fr = &f.ring;
        let candidates: Vec<usize> = fr
            .elements()
            .filter(|&a| a != 0 && !fr.is_unit(a))
            .take(PROBE_CANDIDATES)
            .collect();
        for a in candidates {
            let i = ideal_generated_by(fr, &[a])?;
            let probe = resolution_cycle_probe(fr, &i, PROBE_STEPS, limits)?;
            if let crate::homology::ProbeOutcome::FiniteFlatDimension { .. } = probe.outcome {
                return Err(Error::Consistency(format!(
                    "nonzero proper ideal {} of the local ring {} has a finite free resolution",
                    i.describe(),
                    fr.name()
                )));
            }
            let done = probe.certifies_infinite();
            verdict.probe = Some((format!("{} in {}", i.describe(), fr.name()), probe));
            if done {
                certified = true;
                break 'factors;
            }
        }
    }
    verdict.wdim_infinite_certified = Some(certified);
    Ok(verdict)
}

#[derive(Clone, Debug)]
pub struct DenseIdealVerdict {
    pub strongly_prufer: bool,
    /// A dense ideal that is not locally principal.
    pub strongly_prufer_witness: Option<Ideal>,
    pub dense_ideals: usize,
    pub ch_ring: bool,
    /// A proper ideal with zero annihilator.
    pub ch_witness: Option<Ideal>,
}

/// Strongly Prüfer: every dense ideal is locally principal. (CH): every
/// proper ideal has a nonzero annihilator.
pub fn strongly_prufer_and_ch(r: &FiniteRing, limits: &Limits) -> Result<DenseIdealVerdict> {
    let mut v = DenseIdealVerdict {
        strongly_prufer: true,
        strongly_prufer_witness: None,
        dense_ideals: 0,
        ch_ring: true,
        ch_witness: None,
    };
    for i in enumerate_ideals(r, limits)? {
        if !annihilator(&i).is_zero() {
            continue;
        }
        v.dense_ideals += 1;
        if v.ch_ring && !i.is_whole() {
            v.ch_ring = false;
            v.ch_witness = Some(i.clone());
        }
        if v.strongly_prufer && !is_locally_principal(&i).locally_principal {
            v.strongly_prufer = false;
            v.strongly_prufer_witness = Some(i);
        }
    }
    if v.ch_ring && !v.strongly_prufer {
        return Err(Error::Consistency(format!("{} is (CH) but not strongly Prüfer", r.name())));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NagataReport {
    pub ring: String,
    pub nagata_prufer: bool,
    pub text: String,
}

/// Whether the Nagata ring `A(X)` is Prüfer, read off from the criterion
/// "`A(X)` is Prüfer iff `A` is strongly Prüfer". `A(X)` itself is never
/// built.
pub fn nagata_prufer_report(a: &FiniteRing, limits: &Limits) -> Result<NagataReport> {
    let v = strongly_prufer_and_ch(a, limits)?;
    let text = if v.strongly_prufer {
        format!(
            "A(X) is Prüfer: A = {} is strongly Prüfer (every dense ideal, {} in total, is locally principal). \
             Verdict from the criterion A(X) Prüfer iff A strongly Prüfer; A(X) is not constructed.",
            a.name(),
            v.dense_ideals
        )
    } else {
        format!(
            "A(X) is not Prüfer: A = {} is not strongly Prüfer (dense ideal {} is not locally principal). \
             Verdict from the criterion A(X) Prüfer iff A strongly Prüfer; A(X) is not constructed.",
            a.name(),
            v.strongly_prufer_witness.as_ref().expect("witness").describe()
        )
    };
    Ok(NagataReport {
        ring: a.name().to_string(),
        nagata_prufer: v.strongly_prufer,
        text,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyFlags {
    pub semihereditary: bool,
    pub wdim_le_one: bool,
    pub wdim_infinite_certified: Option<bool>,
    pub arithmetical: bool,
    pub gaussian: bool,
    pub prufer: bool,
    pub total_quotient_ring: bool,
    pub strongly_prufer: bool,
    pub ch_ring: bool,
}

impl PropertyFlags {
    pub const NAMES: [&'static str; 9] = [
        "semihereditary",
        "wdim_le_one",
        "wdim_infinite_certified",
        "arithmetical",
        "gaussian",
        "prufer",
        "total_quotient_ring",
        "strongly_prufer",
        "ch_ring",
    ];

    /// Boolean value of a flag by name; `wdim_infinite_certified` reads as
    /// true only when certified.
    pub fn get(&self, name: &str) -> Option<bool> {
        Some(match name {
            "semihereditary" => self.semihereditary,
            "wdim_le_one" => self.wdim_le_one,
            "wdim_infinite_certified" => self.wdim_infinite_certified == Some(true),
            "arithmetical" => self.arithmetical,
            "gaussian" => self.gaussian,
            "prufer" => self.prufer,
            "total_quotient_ring" => self.total_quotient_ring,
            "strongly_prufer" => self.strongly_prufer,
            "ch_ring" => self.ch_ring,
            _ => return None,
        })
    }

    /// The implication chain and the side implications, as
    /// `(premise, conclusion)` pairs that fail.
    pub fn chain_violations(&self) -> Vec<(&'static str, &'static str)> {
        let links = [
            ("semihereditary", "wdim_le_one"),
            ("wdim_le_one", "arithmetical"),
            ("arithmetical", "gaussian"),
            ("gaussian", "prufer"),
            ("ch_ring", "strongly_prufer"),
            ("total_quotient_ring", "prufer"),
        ];
        links
            .into_iter()
            .filter(|(p, c)| self.get(p) == Some(true) && self.get(c) == Some(false))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Ideal {
        generators: Vec<String>,
        elements: Vec<String>,
        detail: String,
    },
    PolynomialPair {
        f: String,
        g: String,
        detail: String,
    },
    ElementPair {
        a: String,
        b: String,
        detail: String,
    },
    Element {
        element: String,
        detail: String,
    },
}

impl Witness {
    pub fn ideal(i: &Ideal, detail: impl Into<String>) -> Witness {
        let r = i.ring();
        Witness::Ideal {
            generators: i.generator_labels(),
            elements: i.elements().iter().map(|&x| r.label(x).to_string()).collect(),
            detail: detail.into(),
        }
    }

    pub fn polynomials(w: &ContentWitness) -> Witness {
        Witness::PolynomialPair {
            f: w.f.to_string(),
            g: w.g.to_string(),
            detail: format!(
                "C(fg) = {} but C(f)C(g) = {}",
                w.content_of_product.describe(),
                w.product_of_contents.describe()
            ),
        }
    }

    /// One-line summary used by the catalog.
    pub fn summary(&self) -> String {
        match self {
            Witness::Ideal { generators, .. } => format!("ideal ({})", generators.join(", ")),
            Witness::PolynomialPair { f, g, .. } => format!("f = {f}; g = {g}"),
            Witness::ElementPair { a, b, .. } => format!("a = {a}; b = {b}"),
            Witness::Element { element, .. } => format!("element {element}"),
        }
    }

    pub fn detail(&self) -> &str {
        match self {
            Witness::Ideal { detail, .. }
            | Witness::PolynomialPair { detail, .. }
            | Witness::ElementPair { detail, .. }
            | Witness::Element { detail, .. } => detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub schema: u32,
    pub spec: String,
    pub order: usize,
    pub flags: PropertyFlags,
    /// One entry per false flag.
    pub witnesses: BTreeMap<String, Witness>,
    /// One entry per true flag.
    pub certificates: BTreeMap<String, String>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<String, f64>,
}

impl PropertyReport {
    pub fn to_text(&self) -> String {
        let mut out = format!("ring: {}\norder: {}\n", self.spec, self.order);
        for name in PropertyFlags::NAMES {
            let value = match name {
                "wdim_infinite_certified" => match self.flags.wdim_infinite_certified {
                    None => "n/a".to_string(),
                    Some(b) => b.to_string(),
                },
                _ => self.flags.get(name).expect("known flag").to_string(),
            };
            out.push_str(&format!("{name}: {value}\n"));
            if let Some(w) = self.witnesses.get(name) {
                out.push_str(&format!("  witness: {}\n  {}\n", w.summary(), w.detail()));
            }
            if let Some(c) = self.certificates.get(name) {
                out.push_str(&format!("  certificate: {c}\n"));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

fn timed<T>(timings: &mut BTreeMap<String, f64>, name: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.insert(name.to_string(), start.elapsed().as_secs_f64() * 1000.0);
    out
}

/// Runs every decider on `r`, cross-checks against the oracles within the
/// configured caps, and enforces the implication chain.
pub fn classify_ring(r: &FiniteRing, limits: &Limits) -> Result<PropertyReport> {
    if r.order() > limits.max_enumeration_order {
        return Err(Error::OrderCap {
            order: r.order(),
            cap: limits.max_enumeration_order,
        });
    }
    let mut timings = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    let mut certificates = BTreeMap::new();
    let mut notes = vec![
        "Tot(R) = R: every element of a finite ring is a unit or a zero divisor, so regular ideals \
         equal R and fractional ideals are ideals."
            .to_string(),
        "semihereditary and wdim ≤ 1 coincide for finite rings (Noetherian, so finitely generated \
         flat ideals are projective)."
            .to_string(),
        "(CH) is quantified over proper ideals; R itself always has zero annihilator.".to_string(),
    ];

    let tq = timed(&mut timings, "total_quotient_ring", || is_total_quotient_ring(r));
    match tq.witness {
        Some(a) => {
            witnesses.insert(
                "total_quotient_ring".into(),
                Witness::Element {
                    element: r.label(a).into(),
                    detail: "regular element that is not a unit".into(),
                },
            );
        }
        None => {
            certificates.insert(
                "total_quotient_ring".into(),
                "every element is a unit or a zero divisor".into(),
            );
        }
    }

    let prufer = timed(&mut timings, "prufer", || is_prufer(r))?;
    match &prufer.witness {
        Some(i) => {
            witnesses.insert("prufer".into(), Witness::ideal(i, "regular two-generated ideal that is not invertible"));
        }
        None => {
            certificates.insert(
                "prufer".into(),
                format!(
                    "{} distinct regular two-generated ideal(s), all invertible (each equals R)",
                    prufer.examined.len()
                ),
            );
        }
    }

    let gaussian = timed(&mut timings, "gaussian", || is_gaussian(r));
    if r.order() <= CLASSIFY_SCAN_ORDER {
        let scan = timed(&mut timings, "gaussian_scan", || content_equality_scan(r, 1, 1, limits))?;
        if let Some(w) = &scan.witness {
            if gaussian.holds {
                return Err(Error::Consistency(format!(
                    "{} passes Tsang's criterion but C(fg) ≠ C(f)C(g) for f = {}, g = {}",
                    r.name(),
                    w.f,
                    w.g
                )));
            }
            notes.push(format!(
                "content scan (degrees ≤ 1): C(fg) ≠ C(f)C(g) for f = {}, g = {}",
                w.f, w.g
            ));
        }
    }
    match &gaussian.witness {
        Some(w) => {
            let detail = match w.condition {
                TsangCondition::SquareNotPrincipal => format!(
                    "in the local factor {}: (a, b)² is neither (a²) nor (b²)",
                    w.factor.name()
                ),
                TsangCondition::ZeroProductSquare => format!(
                    "in the local factor {}: (a, b)² = (a²) and ab = 0 but b² ≠ 0",
                    w.factor.name()
                ),
            };
            witnesses.insert(
                "gaussian".into(),
                Witness::ElementPair {
                    a: r.label(w.lift_a).into(),
                    b: r.label(w.lift_b).into(),
                    detail,
                },
            );
        }
        None => {
            certificates.insert(
                "gaussian".into(),
                format!(
                    "Tsang's criterion holds in each of the {} local factor(s)",
                    r.local_factor_count()
                ),
            );
        }
    }

    let arith = timed(&mut timings, "arithmetical", || is_arithmetical(r, limits))?;
    match &arith.witness {
        Some(i) => {
            let lp = is_locally_principal(i);
            let bad = lp
                .factors
                .iter()
                .find(|f| f.generator.is_none())
                .map(|f| f.factor.clone())
                .unwrap_or_default();
            witnesses.insert(
                "arithmetical".into(),
                Witness::ideal(i, format!("two-generated ideal whose image in the local factor {bad} is not principal")),
            );
        }
        None => {
            certificates.insert(
                "arithmetical".into(),
                format!(
                    "every two-generated ideal is locally principal{}",
                    if arith.oracle.is_some() {
                        "; I = (I : J)J for all ideals I ⊆ J"
                    } else {
                        ""
                    }
                ),
            );
        }
    }

    let wdim = timed(&mut timings, "wdim", || wdim_classification(r, limits))?;
    if wdim.wdim_le_one {
        let cert = format!(
            "every local factor is a field{}",
            if wdim.flatness_oracle.is_some() {
                "; |J ⊗ I| = |JI| for all ideals I, J"
            } else {
                ""
            }
        );
        certificates.insert("wdim_le_one".into(), cert.clone());
        certificates.insert("semihereditary".into(), cert);
    } else {
        let factor = wdim.non_field_factor.as_ref().expect("non-field factor");
        let ideal = wdim.non_flat.as_ref().expect("non-flat ideal");
        let detail = match &wdim.flatness_witness {
            Some((i, w)) => format!(
                "local factor {} is not a field; flatness oracle: I = {} with J = {}: |J ⊗ I| = {} ≠ |JI| = {}",
                factor.name(),
                i.describe(),
                w.j.describe(),
                w.tensor_order,
                w.product_order
            ),
            None => format!(
                "local factor {} is not a field, so this nonzero proper ideal supported on it is not flat",
                factor.name()
            ),
        };
        let w = Witness::ideal(ideal, detail);
        witnesses.insert("wdim_le_one".into(), w.clone());
        witnesses.insert("semihereditary".into(), w);
        if let Construction::TrivialExtension { module, .. } = r.construction() {
            if !module.is_zero() {
                notes.push("trivial extension by a nonzero module: wdim > 1".into());
            }
        }
        match (&wdim.probe, wdim.wdim_infinite_certified) {
            (Some((on, p)), Some(true)) => {
                certificates.insert("wdim_infinite_certified".into(), format!("{on}: {}", p.describe()));
            }
            (probe, _) => notes.push(format!(
                "wdim = ∞ not certified: {}",
                probe
                    .as_ref()
                    .map(|(on, p)| format!("{on}: {}", p.describe()))
                    .unwrap_or_else(|| "no probe ran".into())
            )),
        }
    }

    let dense = timed(&mut timings, "dense_ideals", || strongly_prufer_and_ch(r, limits))?;
    match &dense.strongly_prufer_witness {
        Some(i) => {
            witnesses.insert("strongly_prufer".into(), Witness::ideal(i, "dense ideal that is not locally principal"));
        }
        None => {
            certificates.insert(
                "strongly_prufer".into(),
                format!("all {} dense ideal(s) are locally principal", dense.dense_ideals),
            );
        }
    }
    match &dense.ch_witness {
        Some(i) => {
            witnesses.insert("ch_ring".into(), Witness::ideal(i, "proper ideal with zero annihilator"));
        }
        None => {
            certificates.insert("ch_ring".into(), "every proper ideal has a nonzero annihilator".into());
        }
    }

    let flags = PropertyFlags {
        semihereditary: wdim.semihereditary,
        wdim_le_one: wdim.wdim_le_one,
        wdim_infinite_certified: wdim.wdim_infinite_certified,
        arithmetical: arith.holds,
        gaussian: gaussian.holds,
        prufer: prufer.holds,
        total_quotient_ring: tq.holds,
        strongly_prufer: dense.strongly_prufer,
        ch_ring: dense.ch_ring,
    };
    let violations = flags.chain_violations();
    if !violations.is_empty() {
        return Err(Error::Consistency(format!(
            "{}: implication chain broken: {}",
            r.name(),
            violations
                .iter()
                .map(|(p, c)| format!("{p} without {c}"))
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    Ok(PropertyReport {
        schema: REPORT_SCHEMA,
        spec: r.name().to_string(),
        order: r.order(),
        flags,
        witnesses,
        certificates,
        notes,
        timings_ms: timings,
    })
}
