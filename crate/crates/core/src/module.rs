//! Finite modules over a [`FiniteRing`], stored as an addition table and
//! an action table `A × E → E`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{fresh_id, FiniteRing, HARD_MAX_ORDER};

/// What to build with [`make_module`].
#[derive(Clone, Debug)]
pub enum ModuleKind {
    /// `A` as a module over itself.
    Regular,
    /// `A/I`.
    Quotient(Ideal),
    DirectSum(Vec<FiniteModule>),
    /// A ring `S` containing the image of `A`, viewed as an `A`-module.
    /// Only the prime-ring embedding is supported: `A` must be additively
    /// generated by 1 (`A ≅ Z/n`) and `n·1_S = 0`; then `k·s` is the
    /// integer multiple.
    Extension(FiniteRing),
}

#[derive(Clone, Debug)]
pub enum ModuleConstruction {
    Regular,
    Quotient { generators: Vec<usize> },
    DirectSum(Vec<FiniteModule>),
    Extension(FiniteRing),
    /// An ideal of the base ring viewed as a module.
    Ideal { generators: Vec<usize> },
    /// Submodule of a free module `A^rank` (syzygies in the resolution probe).
    FreeSubmodule { rank: usize },
}

struct ModuleData {
    id: u64,
    base: FiniteRing,
    order: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    action: Vec<u16>,
    name: String,
    labels: Vec<String>,
    construction: ModuleConstruction,
}

#[derive(Clone)]
pub struct FiniteModule(Arc<ModuleData>);

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteModule({} over {}, order {})",
            self.0.name,
            self.0.base.name(),
            self.0.order
        )
    }
}

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl FiniteModule {
    pub(crate) fn build(
        base: &FiniteRing,
        order: usize,
        add: impl Fn(usize, usize) -> usize,
        act: impl Fn(usize, usize) -> usize,
        name: String,
        labels: Vec<String>,
        construction: ModuleConstruction,
    ) -> Result<FiniteModule> {
        if order > HARD_MAX_ORDER {
            return Err(Error::OrderCap {
                order,
                cap: HARD_MAX_ORDER,
            });
        }
        let mut add_t = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                add_t.push(add(x, y) as u16);
            }
        }
        let mut action = Vec::with_capacity(base.order() * order);
        for a in base.elements() {
            for x in 0..order {
                action.push(act(a, x) as u16);
            }
        }
        let neg = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| add_t[x * order + y] == 0)
                    .expect("additive inverse") as u16
            })
            .collect();
        Ok(FiniteModule(Arc::new(ModuleData {
            id: fresh_id(),
            base: base.clone(),
            order,
            add: add_t,
            neg,
            action,
            name,
            labels,
            construction,
        })))
    }

    pub fn base(&self) -> &FiniteRing {
        &self.0.base
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn is_zero(&self) -> bool {
        self.0.order == 1
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn label(&self, e: usize) -> &str {
        &self.0.labels[e]
    }

    pub fn construction(&self) -> &ModuleConstruction {
        &self.0.construction
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.0.add[x * self.0.order + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.0.neg[x] as usize
    }

    /// The scalar action `a · x`.
    #[inline]
    pub fn act(&self, a: usize, x: usize) -> usize {
        self.0.action[a * self.0.order + x] as usize
    }

    pub fn additive_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.add(y, x);
            k += 1;
        }
        k
    }

    /// Exhaustive check of the module axioms (and of the abelian group
    /// axioms on the addition table).
    pub fn verify_axioms(&self) -> Result<()> {
        let r = self.base();
        let n = self.order();
        for x in 0..n {
            if self.act(r.one(), x) != x {
                return Err(Error::Axiom(format!("1·{} != {}", self.label(x), self.label(x))));
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return Err(Error::Axiom("module addition is not commutative".into()));
                }
                for z in 0..n {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return Err(Error::Axiom("module addition is not associative".into()));
                    }
                }
            }
        }
        for a in r.elements() {
            for x in 0..n {
                for y in 0..n {
                    if self.act(a, self.add(x, y)) != self.add(self.act(a, x), self.act(a, y)) {
                        return Err(Error::Axiom(format!(
                            "a(e+e') != ae+ae' for a = {}",
                            r.label(a)
                        )));
                    }
                }
                for b in r.elements() {
                    if self.act(r.add(a, b), x) != self.add(self.act(a, x), self.act(b, x)) {
                        return Err(Error::Axiom("(a+a')e != ae+a'e".into()));
                    }
                    if self.act(r.mul(a, b), x) != self.act(a, self.act(b, x)) {
                        return Err(Error::Axiom("(aa')e != a(a'e)".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// An ideal `I` of the base ring viewed as a module; element `k` of the
    /// module is the `k`-th smallest element of `I`.
    pub fn from_ideal(ideal: &Ideal) -> Result<FiniteModule> {
        let r = ideal.ring().clone();
        let members = ideal.elements();
        let mut index = vec![usize::MAX; r.order()];
        for (k, &x) in members.iter().enumerate() {
            index[x] = k;
        }
        let gens = ideal.generators().to_vec();
        let name = format!(
            "Ideal({})",
            gens.iter().map(|&g| r.label(g)).collect::<Vec<_>>().join(", ")
        );
        let labels = members.iter().map(|&x| r.label(x).to_string()).collect();
        FiniteModule::build(
            &r,
            members.len(),
            |x, y| index[r.add(members[x], members[y])],
            |a, x| index[r.mul(a, members[x])],
            name,
            labels,
            ModuleConstruction::Ideal { generators: gens },
        )
    }

    /// A submodule of the free module `base^rank`, listed as coordinate
    /// tuples. The tuples must be closed under addition and scaling and
    /// contain the zero tuple first.
    pub fn from_tuples(base: &FiniteRing, rank: usize, tuples: Vec<Vec<usize>>) -> Result<FiniteModule> {
        let index: HashMap<&[usize], usize> =
            tuples.iter().enumerate().map(|(k, t)| (t.as_slice(), k)).collect();
        if tuples.first().map_or(true, |t| t.iter().any(|&c| c != 0)) {
            return Err(Error::InvalidArgument("tuple list must start with zero".into()));
        }
        let lookup = |t: Vec<usize>| -> usize {
            *index.get(t.as_slice()).expect("tuple set closed under the module operations")
        };
        let labels = tuples
            .iter()
            .map(|t| {
                format!(
                    "[{}]",
                    t.iter().map(|&c| base.label(c)).collect::<Vec<_>>().join(", ")
                )
            })
            .collect();
        FiniteModule::build(
            base,
            tuples.len(),
            |x, y| {
                lookup(
                    tuples[x]
                        .iter()
                        .zip(&tuples[y])
                        .map(|(&a, &b)| base.add(a, b))
                        .collect(),
                )
            },
            |a, x| lookup(tuples[x].iter().map(|&c| base.mul(a, c)).collect()),
            format!("Sub(A^{rank})"),
            labels,
            ModuleConstruction::FreeSubmodule { rank },
        )
    }
}

/// Builds a module of the requested kind over `base`, verifying the module
/// axioms exhaustively when the action table is small enough.
pub fn make_module(base: &FiniteRing, kind: ModuleKind) -> Result<FiniteModule> {
    let module = match kind {
        ModuleKind::Regular => FiniteModule::build(
            base,
            base.order(),
            |x, y| base.add(x, y),
            |a, x| base.mul(a, x),
            "Self".into(),
            base.labels().to_vec(),
            ModuleConstruction::Regular,
        )?,
        ModuleKind::Quotient(ideal) => {
            if ideal.ring() != base {
                return Err(Error::RingMismatch);
            }
            let members = ideal.elements();
            let (coset_of, reps) =
                crate::ring::build_cosets(base.order(), &members, |x, y| base.add(x, y));
            let gens = ideal.generators().to_vec();
            let gen_text = if gens.is_empty() {
                "0".to_string()
            } else {
                gens.iter().map(|&g| base.label(g)).collect::<Vec<_>>().join(", ")
            };
            FiniteModule::build(
                base,
                reps.len(),
                |x, y| coset_of[base.add(reps[x], reps[y])],
                |a, x| coset_of[base.mul(a, reps[x])],
                format!("QuotMod({gen_text})"),
                reps.iter().map(|&r| base.label(r).to_string()).collect(),
                ModuleConstruction::Quotient { generators: gens },
            )?
        }
        ModuleKind::DirectSum(parts) => direct_sum(base, &parts)?,
        ModuleKind::Extension(ext) => {
            let n = base.order();
            if base.additive_order(base.one()) != n {
                return Err(Error::InvalidArgument(format!(
                    "{} is not additively generated by 1; no canonical embedding",
                    base.name()
                )));
            }
            if ext.from_int(n as u64) != 0 {
                return Err(Error::InvalidArgument(format!(
                    "characteristic of {} does not divide {n}",
                    ext.name()
                )));
            }
            // k such that k·1 = a
            let mut as_int = vec![0u64; n];
            let mut x = 0;
            for k in 0..n {
                as_int[x] = k as u64;
                x = base.add(x, base.one());
            }
            FiniteModule::build(
                base,
                ext.order(),
                |x, y| ext.add(x, y),
                |a, x| ext.times(as_int[a], x),
                format!("ExtMod({})", ext.name()),
                ext.labels().to_vec(),
                ModuleConstruction::Extension(ext.clone()),
            )?
        }
    };
    if base.order() * module.order() <= 4096 {
        module.verify_axioms()?;
    }
    Ok(module)
}

fn direct_sum(base: &FiniteRing, parts: &[FiniteModule]) -> Result<FiniteModule> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("empty direct sum".into()));
    }
    if parts.iter().any(|m| m.base() != base) {
        return Err(Error::RingMismatch);
    }
    if parts.len() == 1 {
        return Ok(parts[0].clone());
    }
    let (first, rest) = (&parts[0], direct_sum(base, &parts[1..])?);
    let order = first
        .order()
        .checked_mul(rest.order())
        .filter(|&o| o <= HARD_MAX_ORDER)
        .ok_or(Error::OrderCap {
            order: usize::MAX,
            cap: HARD_MAX_ORDER,
        })?;
    let nr = rest.order();
    let split = |x: usize| (x / nr, x % nr);
    let labels = (0..order)
        .map(|x| {
            let (a, b) = split(x);
            format!("({}, {})", first.label(a), rest.label(b))
        })
        .collect();
    FiniteModule::build(
        base,
        order,
        |x, y| {
            let ((x1, x2), (y1, y2)) = (split(x), split(y));
            first.add(x1, y1) * nr + rest.add(x2, y2)
        },
        |a, x| {
            let (x1, x2) = split(x);
            first.act(a, x1) * nr + rest.act(a, x2)
        },
        format!("Sum({}, {})", first.name(), rest.name()),
        labels,
        ModuleConstruction::DirectSum(vec![first.clone(), rest.clone()]),
    )
}
