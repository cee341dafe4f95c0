//! Reference fixtures for the hierarchy, and the transfer audit over
//! canonical trivial-extension retracts.

use serde::Serialize;

use crate::decide::{
    is_arithmetical, is_gaussian, is_prufer, is_total_quotient_ring, wdim_le_one,
};
use crate::dsl::ring_from_spec;
use crate::error::{Error, Result};
use crate::homology::{resolution_cycle_probe, ProbeOutcome};
use crate::ideal::{ideal_product, principal_ideal, Ideal};
use crate::limits::Limits;
use crate::poly::{content_ideal, poly_arithmetic, PolyOp, Polynomial};
use crate::retract::{retract_of_trivial_extension, verify_transfer_theorems, TransferStatus, TransferVerdict};
use crate::ring::FiniteRing;
use crate::zoo::{universe, UniverseParams};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub ring: String,
    pub checks: Vec<Check>,
    pub error: Option<String>,
}

impl FixtureResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferAudit {
    pub ring: String,
    pub verdicts: Vec<TransferVerdict>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub fixtures: Vec<FixtureResult>,
    pub transfer: Vec<TransferAudit>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.fixtures.iter().all(FixtureResult::passed)
            && self.transfer.iter().all(|t| {
                t.error.is_none() && t.verdicts.iter().all(|v| v.status != TransferStatus::Violated)
            })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.fixtures {
            let mark = if f.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {} [{}]\n", f.name, f.ring));
            for c in &f.checks {
                let m = if c.passed { "ok" } else { "FAILED" };
                out.push_str(&format!("  {m}: {} ({})\n", c.name, c.detail));
            }
            if let Some(e) = &f.error {
                out.push_str(&format!("  error: {e}\n"));
            }
        }
        let (mut holds, mut vacuous) = (0, 0);
        for t in &self.transfer {
            for v in &t.verdicts {
                match v.status {
                    TransferStatus::Holds => holds += 1,
                    TransferStatus::Vacuous => vacuous += 1,
                    TransferStatus::Violated => {
                        out.push_str(&format!("FAIL transfer {} on {}: {}\n", v.theorem, t.ring, v.detail))
                    }
                }
            }
            if let Some(e) = &t.error {
                out.push_str(&format!("FAIL transfer on {}: {e}\n", t.ring));
            }
        }
        out.push_str(&format!(
            "transfer audit: {} retract(s), {holds} holding and {vacuous} vacuous verdict(s)\n",
            self.transfer.len()
        ));
        out.push_str(if self.passed() { "suite passed\n" } else { "suite FAILED\n" });
        out
    }
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

fn fixture(name: &str, spec: &str, limits: &Limits, body: impl FnOnce(&FiniteRing, &mut Builder) -> Result<()>) -> FixtureResult {
    let mut b = Builder { checks: Vec::new() };
    let error = ring_from_spec(spec, limits)
        .and_then(|r| body(&r, &mut b))
        .err()
        .map(|e| e.to_string());
    FixtureResult {
        name: name.into(),
        ring: spec.into(),
        checks: b.checks,
        error,
    }
}

fn label_ideal(r: &FiniteRing, label: &str) -> Result<Ideal> {
    let a = r
        .find_label(label)
        .ok_or_else(|| Error::InvalidArgument(format!("no element {label} in {}", r.name())))?;
    Ok(principal_ideal(r, a))
}

/// `R = Z/2^i ∝ Z/2^i` with `f = (2^{i-1}, 0) + (2^{i-1}, 1)X`: `f² = 0`
/// while `C(f)² = R(0, 2^{i-1}) ≠ 0`, so `R` is Prüfer and a total
/// quotient ring but not Gaussian.
pub fn square_zero_content_fixture(i: u32, limits: &Limits) -> FixtureResult {
    let n = 1u64 << i;
    let h = n / 2;
    let spec = format!("Triv(Z/{n}, Self)");
    fixture(&format!("nilpotent content, i = {i}"), &spec, limits, |r, b| {
        let f = Polynomial::from_labels(r, &[&format!("({h}, 0)"), &format!("({h}, 1)")])?;
        let f2 = poly_arithmetic(PolyOp::Mul, &f, &f)?;
        b.check("f² = 0", f2.is_zero(), format!("f = {f}, f² = {f2}"));
        let c = content_ideal(&f);
        let c2 = ideal_product(&c, &c)?;
        let target = label_ideal(r, &format!("(0, {h})"))?;
        b.check(
            &format!("C(f)² = R(0, {h}) ≠ 0"),
            c2 == target && !c2.is_zero(),
            format!("C(f) = {}, C(f)² = {}", c.describe(), c2.describe()),
        );
        let g = is_gaussian(r);
        b.check(
            "not Gaussian",
            !g.holds,
            g.witness
                .map(|w| format!("Tsang witness a = {}, b = {}", r.label(w.lift_a), r.label(w.lift_b)))
                .unwrap_or_else(|| "no witness".into()),
        );
        let tq = is_total_quotient_ring(r);
        b.check("total quotient ring", tq.holds, "every element is a unit or a zero divisor");
        let p = is_prufer(r)?;
        b.check(
            "Prüfer",
            p.holds,
            format!("{} regular two-generated ideal(s) examined", p.examined.len()),
        );
        Ok(())
    })
}

/// `F₂ ∝ F₂`: arithmetical, yet `R(0, 1)` has a periodic minimal resolution.
pub fn dual_numbers_fixture(limits: &Limits) -> FixtureResult {
    fixture("arithmetical with infinite weak dimension", "Triv(GF(2), Self)", limits, |r, b| {
        let a = is_arithmetical(r, limits)?;
        b.check("arithmetical", a.holds, "every two-generated ideal is locally principal");
        b.check("wdim > 1", !wdim_le_one(r), "R is local and not a field");
        let i = label_ideal(r, "(0, 1)")?;
        let probe = resolution_cycle_probe(r, &i, 4, limits)?;
        let period_one = matches!(probe.outcome, ProbeOutcome::Periodic { period: 1, .. });
        b.check(
            "fd(R(0, 1)) = ∞ via a period-1 syzygy",
            probe.certifies_infinite() && period_one,
            probe.describe(),
        );
        Ok(())
    })
}

/// `F₂ ∝ F₄`: Gaussian, not arithmetical, and the failing ideal is `0 ∝ F₄`.
pub fn subfield_fixture(limits: &Limits) -> FixtureResult {
    fixture("Gaussian but not arithmetical", "Triv(GF(2), ExtMod(GF(4)))", limits, |r, b| {
        let g = is_gaussian(r);
        b.check("Gaussian", g.holds, "Tsang's criterion holds");
        let a = is_arithmetical(r, limits)?;
        b.check("not arithmetical", !a.holds, "some two-generated ideal is not locally principal");
        let zero_ext: Vec<usize> = r.elements().filter(|&x| x < 4).collect();
        let expected = Ideal::from_elements(r, &zero_ext)?;
        let detail = a.witness.as_ref().map(Ideal::describe).unwrap_or_default();
        b.check("witness is 0 ∝ F₄", a.witness.as_ref() == Some(&expected), detail);
        Ok(())
    })
}

/// `Z/4 ∝ (Z/4)/(2)` is Gaussian exactly when `Z/4` is.
pub fn residue_extension_fixture(limits: &Limits) -> FixtureResult {
    fixture("Gaussian ascent to A ∝ A/M", "Triv(Z/4, QuotMod(2))", limits, |r, b| {
        let z4 = ring_from_spec("Z/4", limits)?;
        let (gr, ga) = (is_gaussian(r).holds, is_gaussian(&z4).holds);
        b.check("Gaussian(A ∝ A/M) = Gaussian(A)", gr == ga, format!("both {gr}"));
        b.check("Z/4 is Gaussian", ga, "chain ring");
        Ok(())
    })
}

/// `Z/4 ∝ Z/2` is a total quotient ring.
pub fn total_quotient_fixture(limits: &Limits) -> FixtureResult {
    fixture("total quotient ring", "Triv(Z/4, ExtMod(Z/2))", limits, |r, b| {
        let tq = is_total_quotient_ring(r);
        b.check(
            "total quotient ring",
            tq.holds,
            tq.witness
                .map(|w| format!("regular non-unit {}", r.label(w)))
                .unwrap_or_else(|| "every element is a unit or a zero divisor".into()),
        );
        Ok(())
    })
}

pub fn fixtures(limits: &Limits) -> Vec<FixtureResult> {
    vec![
        square_zero_content_fixture(2, limits),
        square_zero_content_fixture(3, limits),
        dual_numbers_fixture(limits),
        subfield_fixture(limits),
        residue_extension_fixture(limits),
        total_quotient_fixture(limits),
    ]
}

/// Transfer verdicts for the canonical retract of every trivial extension
/// in the universe.
pub fn transfer_audit(params: UniverseParams, limits: &Limits) -> Vec<TransferAudit> {
    use rayon::prelude::*;
    let specs: Vec<_> = universe(params)
        .into_iter()
        .filter(|s| matches!(s, crate::dsl::RingSpec::Triv(..)))
        .collect();
    specs
        .par_iter()
        .map(|s| {
            let name = s.to_string();
            let run = || -> Result<Vec<TransferVerdict>> {
                let r = crate::dsl::eval_spec(s, limits)?;
                let ret = retract_of_trivial_extension(&r)
                    .ok_or_else(|| Error::InvalidArgument(format!("{name} has no canonical retract")))?;
                verify_transfer_theorems(&ret, limits)
            };
            match run() {
                Ok(verdicts) => TransferAudit {
                    ring: name,
                    verdicts,
                    error: None,
                },
                Err(e) => TransferAudit {
                    ring: name,
                    verdicts: Vec::new(),
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

/// Every fixture plus the transfer audit over the given universe.
pub fn run_suite(params: UniverseParams, limits: &Limits) -> SuiteReport {
    SuiteReport {
        fixtures: fixtures(limits),
        transfer: transfer_audit(params, limits),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_pass() {
        for f in fixtures(&Limits::default()) {
            assert!(f.passed(), "{f:?}");
        }
    }

    #[test]
    fn small_transfer_audit_is_clean() {
        let params = UniverseParams { max_order: 8, max_depth: 2 };
        let audit = transfer_audit(params, &Limits::default());
        assert!(audit.iter().any(|t| t.ring == "Triv(GF(2), Self)"));
        for t in &audit {
            assert!(t.error.is_none(), "{t:?}");
        }
    }
}
