//! Subring retracts `A ⊆ R` with an `A`-linear retraction `φ: R → A`, and a
//! harness that checks the transfer theorems on concrete instances.
//!
//! The canonical example is a trivial extension `R = A ∝ E`, with
//! `ι(a) = (a, 0)`, `φ(a, e) = a` and `Ker(φ) = 0 ∝ E`.

use serde::Serialize;

use crate::decide::{is_arithmetical, is_gaussian, is_prufer, is_total_quotient_ring, strongly_prufer_and_ch, wdim_le_one};
use crate::error::{Error, Result};
use crate::ideal::ideal_generated_by;
use crate::limits::Limits;
use crate::module::{FiniteModule, ModuleConstruction};
use crate::ring::{make_trivial_extension, Construction, FiniteRing};

#[derive(Clone, Debug)]
pub struct SubringRetract {
    a: FiniteRing,
    r: FiniteRing,
    embed: Vec<usize>,
    retraction: Vec<usize>,
    kernel: Vec<usize>,
}

fn axiom(msg: String) -> Error {
    Error::Axiom(msg)
}

/// Checks that `ι: A → R` is an injective unital ring homomorphism and that
/// `φ: R → A` is additive, `A`-linear through `ι`, and restricts to the
/// identity on `A`.
pub fn build_retract(
    a: &FiniteRing,
    r: &FiniteRing,
    embed: Vec<usize>,
    retraction: Vec<usize>,
) -> Result<SubringRetract> {
    if embed.len() != a.order() || embed.iter().any(|&x| x >= r.order()) {
        return Err(Error::InvalidArgument("embedding must map every element of A into R".into()));
    }
    if retraction.len() != r.order() || retraction.iter().any(|&x| x >= a.order()) {
        return Err(Error::InvalidArgument("retraction must map every element of R into A".into()));
    }
    let (la, lr) = (|x: usize| a.label(x).to_string(), |x: usize| r.label(x).to_string());
    if embed[a.one()] != r.one() {
        return Err(axiom(format!("ι(1) = {} is not 1", lr(embed[a.one()]))));
    }
    for x in a.elements() {
        for y in a.elements() {
            if embed[a.add(x, y)] != r.add(embed[x], embed[y]) {
                return Err(axiom(format!("ι({} + {}) ≠ ι({}) + ι({})", la(x), la(y), la(x), la(y))));
            }
            if embed[a.mul(x, y)] != r.mul(embed[x], embed[y]) {
                return Err(axiom(format!("ι({} · {}) ≠ ι({}) · ι({})", la(x), la(y), la(x), la(y))));
            }
            if x < y && embed[x] == embed[y] {
                return Err(axiom(format!("ι({}) = ι({}): not injective", la(x), la(y))));
            }
        }
        if retraction[embed[x]] != x {
            return Err(axiom(format!("φ(ι({})) = {} ≠ {}", la(x), la(retraction[embed[x]]), la(x))));
        }
    }
    for x in r.elements() {
        for y in r.elements() {
            if retraction[r.add(x, y)] != a.add(retraction[x], retraction[y]) {
                return Err(axiom(format!("φ({} + {}) ≠ φ({}) + φ({})", lr(x), lr(y), lr(x), lr(y))));
            }
        }
        for s in a.elements() {
            if retraction[r.mul(embed[s], x)] != a.mul(s, retraction[x]) {
                return Err(axiom(format!("φ(ι({}) · {}) ≠ {} · φ({})", la(s), lr(x), la(s), lr(x))));
            }
        }
    }
    let kernel = r.elements().filter(|&x| retraction[x] == 0).collect();
    Ok(SubringRetract {
        a: a.clone(),
        r: r.clone(),
        embed,
        retraction,
        kernel,
    })
}

/// `ι(a) = (a, 0)`, `φ(a, e) = a` for a ring built as `A ∝ E`.
pub fn retract_of_trivial_extension(r: &FiniteRing) -> Option<SubringRetract> {
    let Construction::TrivialExtension { base, module } = r.construction() else {
        return None;
    };
    let n = module.order();
    let embed = base.elements().map(|x| x * n).collect();
    let retraction = r.elements().map(|x| x / n).collect();
    Some(build_retract(base, r, embed, retraction).expect("canonical retract satisfies the axioms"))
}

/// Builds `R = A ∝ E` together with its canonical retract.
pub fn canonical_trivial_retract(a: &FiniteRing, e: &FiniteModule) -> Result<SubringRetract> {
    let r = make_trivial_extension(a, e)?;
    Ok(retract_of_trivial_extension(&r).expect("built as a trivial extension"))
}

impl SubringRetract {
    pub fn subring(&self) -> &FiniteRing {
        &self.a
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.r
    }

    pub fn embed(&self) -> &[usize] {
        &self.embed
    }

    pub fn retraction(&self) -> &[usize] {
        &self.retraction
    }

    /// `Ker(φ)` as sorted elements of `R`.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    /// `Ker(φ)` as an `A`-module, `A` acting through `ι`.
    pub fn kernel_module(&self) -> Result<FiniteModule> {
        let mut index = vec![usize::MAX; self.r.order()];
        for (k, &x) in self.kernel.iter().enumerate() {
            index[x] = k;
        }
        let (r, ker, embed) = (&self.r, &self.kernel, &self.embed);
        FiniteModule::build(
            &self.a,
            ker.len(),
            |x, y| index[r.add(ker[x], ker[y])],
            |s, x| index[r.mul(embed[s], ker[x])],
            "Ker".into(),
            ker.iter().map(|&x| r.label(x).to_string()).collect(),
            ModuleConstruction::FreeSubmodule { rank: 0 },
        )
    }

    /// The canonical retract of `A ∝ E` (as opposed to a user-supplied one).
    pub fn trivial_extension_module(&self) -> Option<&FiniteModule> {
        match self.r.construction() {
            Construction::TrivialExtension { base, module } if *base == self.a => {
                let n = module.order();
                let canonical = self.embed.iter().enumerate().all(|(x, &y)| y == x * n)
                    && self.retraction.iter().enumerate().all(|(x, &y)| y == x / n);
                canonical.then_some(module)
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelConditions {
    /// `ι(a)·e = 0` forces `e = 0` for regular `a ∈ A` and `e ∈ Ker(φ)`.
    pub kernel_torsion_free: bool,
    pub torsion_witness: Option<(String, String)>,
    /// `M·Ker(φ) = 0`; `None` when `A` is not local.
    pub m_kills_kernel: Option<bool>,
    pub kernel_in_nil: bool,
    pub interpretation: String,
}

pub fn kernel_conditions(ret: &SubringRetract) -> KernelConditions {
    let (a, r) = (&ret.a, &ret.r);
    let mut torsion_witness = None;
    'outer: for s in a.elements().filter(|&s| a.is_regular(s)) {
        for &e in &ret.kernel {
            if e != 0 && r.mul(ret.embed[s], e) == 0 {
                torsion_witness = Some((a.label(s).to_string(), r.label(e).to_string()));
                break 'outer;
            }
        }
    }
    let m_kills_kernel = m_kills_kernel(ret).ok();
    KernelConditions {
        kernel_torsion_free: torsion_witness.is_none(),
        torsion_witness,
        m_kills_kernel,
        kernel_in_nil: ret.kernel.iter().all(|&x| r.is_nilpotent(x)),
        interpretation: "torsion-free: for regular a in A and e in Ker(φ), ι(a)e = 0 implies e = 0. \
                         Regular elements of a finite ring are units, so this always holds here."
            .into(),
    }
}

/// `M·Ker(φ) = 0` for the maximal ideal `M` of the local ring `A`.
pub fn m_kills_kernel(ret: &SubringRetract) -> Result<bool> {
    let m = ret.a.maximal_ideal()?;
    Ok(m
        .elements()
        .iter()
        .all(|&s| ret.kernel.iter().all(|&e| ret.r.mul(ret.embed[s], e) == 0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TransferStatus {
    Holds,
    Vacuous,
    Violated,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferVerdict {
    pub theorem: &'static str,
    pub statement: &'static str,
    pub status: TransferStatus,
    pub detail: String,
}

fn verdict(theorem: &'static str, statement: &'static str, hyp: bool, concl: bool, detail: String) -> TransferVerdict {
    TransferVerdict {
        theorem,
        statement,
        status: match (hyp, concl) {
            (false, _) => TransferStatus::Vacuous,
            (true, true) => TransferStatus::Holds,
            (true, false) => TransferStatus::Violated,
        },
        detail,
    }
}

/// Evaluates each transfer statement on this retract. Any `Violated`
/// verdict is returned as [`Error::Consistency`].
pub fn verify_transfer_theorems(ret: &SubringRetract, limits: &Limits) -> Result<Vec<TransferVerdict>> {
    let (a, r) = (&ret.a, &ret.r);
    let mut out = Vec::new();

    let (ga, gr) = (is_gaussian(a).holds, is_gaussian(r).holds);
    out.push(verdict(
        "gaussian_descent",
        "if R is Gaussian then so is A",
        gr,
        ga,
        format!("Gaussian(R) = {gr}, Gaussian(A) = {ga}"),
    ));

    let module = ret.trivial_extension_module();
    let residue = module.and_then(|e| match e.construction() {
        ModuleConstruction::Quotient { generators } => {
            let ideal = ideal_generated_by(a, generators).ok()?;
            a.maximal_ideals().contains(&ideal).then_some(())
        }
        _ => None,
    });
    out.push(verdict(
        "gaussian_residue_extension",
        "for R = A ∝ A/M with M maximal, R is Gaussian iff A is",
        residue.is_some(),
        ga == gr,
        format!("Gaussian(R) = {gr}, Gaussian(A) = {ga}"),
    ));

    let kc = kernel_conditions(ret);
    let (pa, pr) = (is_prufer(a)?.holds, is_prufer(r)?.holds);
    out.push(verdict(
        "prufer_descent",
        "if Ker(φ) is torsion-free and R is Prüfer then A is Prüfer",
        kc.kernel_torsion_free && pr,
        pa,
        format!("Ker(φ) torsion-free = {}, Prüfer(R) = {pr}, Prüfer(A) = {pa}", kc.kernel_torsion_free),
    ));

    let tqa = is_total_quotient_ring(a).holds;
    let tqr = is_total_quotient_ring(r).holds;
    let local_a = a.is_local();
    out.push(verdict(
        "total_quotient_ascent",
        "if (A, M) is a local total ring of quotients, M·Ker(φ) = 0 and Ker(φ) ⊆ Nil(R), then R is a total ring of quotients and Prüfer",
        local_a && tqa && kc.m_kills_kernel == Some(true) && kc.kernel_in_nil,
        tqr && pr,
        format!(
            "A local = {local_a}, A total quotient = {tqa}, M·Ker(φ) = 0: {:?}, Ker(φ) ⊆ Nil(R) = {}, R total quotient = {tqr}, Prüfer(R) = {pr}",
            kc.m_kills_kernel, kc.kernel_in_nil
        ),
    ));

    let me_zero = local_a
        && module.is_some_and(|e| {
            let m = a.maximal_ideal().expect("local");
            m.elements().iter().all(|&s| e.elements().all(|x| e.act(s, x) == 0))
        });
    let ch = if me_zero {
        strongly_prufer_and_ch(r, limits)?.ch_ring
    } else {
        false
    };
    out.push(verdict(
        "local_square_zero_extension",
        "for R = A ∝ E with (A, M) local and ME = 0, R is a total ring of quotients, Prüfer and (CH)",
        me_zero,
        tqr && pr && ch,
        format!("ME = 0: {me_zero}, R total quotient = {tqr}, Prüfer(R) = {pr}, (CH)(R) = {ch}"),
    ));

    let (aa, ar) = (is_arithmetical(a, limits)?.holds, is_arithmetical(r, limits)?.holds);
    out.push(verdict(
        "arithmetical_descent",
        "if R is arithmetical then so is A",
        ar,
        aa,
        format!("arithmetical(R) = {ar}, arithmetical(A) = {aa}"),
    ));

    let nonzero_e = module.is_some_and(|e| !e.is_zero());
    let wr = wdim_le_one(r);
    out.push(verdict(
        "trivial_extension_wdim",
        "for R = A ∝ E with E ≠ 0, wdim(R) > 1",
        nonzero_e,
        !wr,
        format!("E ≠ 0: {nonzero_e}, wdim(R) ≤ 1: {wr}"),
    ));

    let violated: Vec<String> = out
        .iter()
        .filter(|v| v.status == TransferStatus::Violated)
        .map(|v| format!("{} ({})", v.theorem, v.detail))
        .collect();
    if !violated.is_empty() {
        return Err(Error::Consistency(format!(
            "transfer statement violated on {} over {}: {}",
            r.name(),
            a.name(),
            violated.join("; ")
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{make_module, ModuleKind};
    use crate::ring::{make_cyclic_ring, make_poly_quotient_ring, make_product_ring};

    fn status(vs: &[TransferVerdict], id: &str) -> TransferStatus {
        vs.iter().find(|v| v.theorem == id).unwrap().status
    }

    #[test]
    fn diagonal_in_product() {
        let f2 = make_cyclic_ring(2).unwrap();
        let r = make_product_ring(&f2, &f2).unwrap();
        let diag = vec![r.find_label("(0, 0)").unwrap(), r.find_label("(1, 1)").unwrap()];
        let proj = r.elements().map(|x| if r.label(x).starts_with("(1") { 1 } else { 0 }).collect();
        let ret = build_retract(&f2, &r, diag, proj).unwrap();
        assert_eq!(ret.kernel().len(), 2);
        let vs = verify_transfer_theorems(&ret, &Limits::default()).unwrap();
        assert_eq!(status(&vs, "arithmetical_descent"), TransferStatus::Holds);
        assert_eq!(status(&vs, "trivial_extension_wdim"), TransferStatus::Vacuous);
    }

    #[test]
    fn identity_retract() {
        let z4 = make_cyclic_ring(4).unwrap();
        let id: Vec<usize> = z4.elements().collect();
        let ret = build_retract(&z4, &z4, id.clone(), id).unwrap();
        assert_eq!(ret.kernel(), &[0]);
        let kc = kernel_conditions(&ret);
        assert!(kc.kernel_torsion_free && kc.kernel_in_nil && kc.m_kills_kernel == Some(true));
    }

    #[test]
    fn broken_retractions_are_reported() {
        let z4 = make_cyclic_ring(4).unwrap();
        let id: Vec<usize> = z4.elements().collect();
        // x ↦ 2x is not unital
        let err = build_retract(&z4, &z4, vec![0, 2, 0, 2], id.clone()).unwrap_err();
        assert!(matches!(err, Error::Axiom(_)));
        // φ = 0 fails φ∘ι = id
        assert!(matches!(build_retract(&z4, &z4, id, vec![0; 4]), Err(Error::Axiom(_))));
    }

    #[test]
    fn canonical_retracts() {
        let z4 = make_cyclic_ring(4).unwrap();
        let m = ideal_generated_by(&z4, &[2]).unwrap();
        let e = make_module(&z4, ModuleKind::Quotient(m)).unwrap();
        let ret = canonical_trivial_retract(&z4, &e).unwrap();
        let r = ret.ring();
        assert_eq!(ret.kernel().iter().map(|&x| r.label(x)).collect::<Vec<_>>(), vec!["(0, 0)", "(0, 1)"]);
        let kc = kernel_conditions(&ret);
        assert!(kc.kernel_torsion_free && kc.kernel_in_nil && kc.m_kills_kernel == Some(true));
        let vs = verify_transfer_theorems(&ret, &Limits::default()).unwrap();
        assert_eq!(status(&vs, "gaussian_residue_extension"), TransferStatus::Holds);
        assert_eq!(status(&vs, "total_quotient_ascent"), TransferStatus::Holds);

        let gf4 = make_poly_quotient_ring(2, &[1, 1, 1]).unwrap();
        let f2 = make_cyclic_ring(2).unwrap();
        let e = make_module(&f2, ModuleKind::Extension(gf4)).unwrap();
        let ret = canonical_trivial_retract(&f2, &e).unwrap();
        let r = ret.ring();
        for &x in ret.kernel() {
            for &y in ret.kernel() {
                assert_eq!(r.mul(x, y), 0);
            }
        }
        assert_eq!(ret.kernel_module().unwrap().order(), 4);
    }

    #[test]
    fn zero_module_gives_identity_retract() {
        let z4 = make_cyclic_ring(4).unwrap();
        let whole = ideal_generated_by(&z4, &[1]).unwrap();
        let e = make_module(&z4, ModuleKind::Quotient(whole)).unwrap();
        let ret = canonical_trivial_retract(&z4, &e).unwrap();
        assert_eq!(ret.ring().order(), 4);
        assert_eq!(ret.embed(), &[0, 1, 2, 3]);
        assert_eq!(ret.kernel(), &[0]);
    }

    #[test]
    fn z4_triv_z4_verdicts() {
        let z4 = make_cyclic_ring(4).unwrap();
        let e = make_module(&z4, ModuleKind::Regular).unwrap();
        let ret = canonical_trivial_retract(&z4, &e).unwrap();
        let vs = verify_transfer_theorems(&ret, &Limits::default()).unwrap();
        assert_eq!(status(&vs, "gaussian_descent"), TransferStatus::Vacuous);
        assert_eq!(status(&vs, "trivial_extension_wdim"), TransferStatus::Holds);
    }

    #[test]
    fn dual_numbers_arithmetical_descent() {
        let f2 = make_cyclic_ring(2).unwrap();
        let e = make_module(&f2, ModuleKind::Regular).unwrap();
        let ret = canonical_trivial_retract(&f2, &e).unwrap();
        let vs = verify_transfer_theorems(&ret, &Limits::default()).unwrap();
        assert_eq!(status(&vs, "arithmetical_descent"), TransferStatus::Holds);
    }
}
