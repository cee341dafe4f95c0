//! Bounded universes of ring specs, flag predicates, search and catalog export.
//!
//! The universe at depth 1 consists of the atoms `Z/n`, `GF(q)` and
//! `PolyQ(p, x^d)` (`d ≥ 2`). Depth `k` adds `Prod(s, t)` and `Triv(s, m)`
//! built from rings of depth below `k`, at least one of depth `k - 1`.
//! Modules `m` range over `Self`, `QuotMod(g)` for each nonzero proper
//! principal ideal `(g)` of `s`, pairwise sums of those, and `ExtMod(t)` for
//! atoms `t` that admit the prime-field embedding. `Quot` is not enumerated.
//! Everything is bounded by the order cap and sorted by spec string.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decide::{classify_ring, PropertyFlags, PropertyReport, REPORT_SCHEMA};
use crate::dsl::{
    eval_spec, gf_modulus, parse_element, ElemSpec, ModSpec, ParseError, ParseErrorKind, RingSpec,
};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::{make_module, ModuleKind};
use crate::ring::FiniteRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseParams {
    pub max_order: usize,
    pub max_depth: usize,
}

impl Default for UniverseParams {
    fn default() -> Self {
        UniverseParams {
            max_order: 16,
            max_depth: 2,
        }
    }
}

fn prime_power(q: usize) -> Option<(usize, u32)> {
    let p = (2..=q).find(|&p| q % p == 0)?;
    let mut k = 0;
    let mut m = q;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn atoms(max_order: usize) -> Vec<RingSpec> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(RingSpec::Cyclic(n as u64));
        if let Some((p, d)) = prime_power(n) {
            if gf_modulus(n as u64).is_some() {
                out.push(RingSpec::Galois(n as u64));
            }
            if d >= 2 {
                let mut modulus = vec![0; d as usize];
                modulus.push(1);
                out.push(RingSpec::PolyQ {
                    p: p as u64,
                    modulus,
                });
            }
        }
    }
    out
}

/// Nonzero proper principal ideals of `r`, each by its smallest generator.
fn principal_generators(r: &FiniteRing) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 1..r.order() {
        let mut set: Vec<usize> = r.elements().map(|b| r.mul(a, b)).collect();
        set.sort_unstable();
        set.dedup();
        if set.len() < r.order() && seen.insert(set) {
            out.push(a);
        }
    }
    out
}

fn label_elem(r: &FiniteRing, a: usize) -> ElemSpec {
    parse_element(r.label(a)).expect("ring labels are valid elements")
}

/// Module candidates over `s` of order at most `bound`.
fn modules(
    s: &RingSpec,
    ring: &FiniteRing,
    atoms: &[(RingSpec, FiniteRing)],
    bound: usize,
) -> Vec<ModSpec> {
    let mut simple = vec![(ModSpec::Regular, ring.order())];
    for g in principal_generators(ring) {
        let size = ring.elements().map(|b| ring.mul(g, b)).collect::<BTreeSet<_>>().len();
        simple.push((ModSpec::QuotMod(vec![label_elem(ring, g)]), ring.order() / size));
    }
    let mut out = simple.clone();
    for i in 0..simple.len() {
        for j in i..simple.len() {
            out.push((
                ModSpec::Sum(Box::new(simple[i].0.clone()), Box::new(simple[j].0.clone())),
                simple[i].1 * simple[j].1,
            ));
        }
    }
    for (t, tr) in atoms {
        if t == s || tr.order() < 2 || tr.order() > bound {
            continue;
        }
        if make_module(ring, ModuleKind::Extension(tr.clone())).is_ok() {
            out.push((ModSpec::ExtMod(Box::new(t.clone())), tr.order()));
        }
    }
    out.into_iter().filter(|(_, o)| *o <= bound).map(|(m, _)| m).collect()
}

/// The spec universe, sorted by spec string.
pub fn universe(params: UniverseParams) -> Vec<RingSpec> {
    let limits = Limits {
        max_ring_order: params.max_order.max(1),
        ..Limits::default()
    };
    let build = |s: RingSpec| {
        let r = eval_spec(&s, &limits).ok()?;
        Some((s, r))
    };
    let base: Vec<(RingSpec, FiniteRing)> = atoms(params.max_order).into_iter().filter_map(build).collect();
    let mut levels: Vec<Vec<(RingSpec, FiniteRing)>> = vec![base.clone()];
    for depth in 2..=params.max_depth {
        let lower: Vec<&(RingSpec, FiniteRing)> = levels.iter().flatten().collect();
        let mut next = Vec::new();
        for (i, (s, rs)) in lower.iter().enumerate() {
            for (t, rt) in &lower[i..] {
                if s.depth().max(t.depth()) != depth - 1 || rs.order() < 2 || rt.order() < 2 {
                    continue;
                }
                if rs.order() * rt.order() > params.max_order {
                    continue;
                }
                let (a, b) = if s.to_string() <= t.to_string() { (s, t) } else { (t, s) };
                next.push(RingSpec::Prod(Box::new(a.clone()), Box::new(b.clone())));
            }
            if s.depth() == depth - 1 && rs.order() >= 2 {
                for m in modules(s, rs, &base, params.max_order / rs.order()) {
                    next.push(RingSpec::Triv(Box::new(s.clone()), Box::new(m)));
                }
            }
        }
        let built: Vec<(RingSpec, FiniteRing)> = next.into_par_iter().filter_map(build).collect();
        levels.push(built);
    }
    let mut all: Vec<(String, RingSpec)> = levels
        .into_iter()
        .flatten()
        .map(|(s, _)| (s.to_string(), s))
        .collect();
    all.sort_by(|a, b| a.0.cmp(&b.0));
    all.dedup_by(|a, b| a.0 == b.0);
    all.into_iter().map(|(_, s)| s).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    Const(bool),
    Flag(String),
    Not(Box<Predicate>),
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
}

impl Predicate {
    pub fn eval(&self, flags: &PropertyFlags) -> bool {
        match self {
            Predicate::Const(b) => *b,
            Predicate::Flag(f) => flags.get(f).unwrap_or(false),
            Predicate::Not(p) => !p.eval(flags),
            Predicate::And(a, b) => a.eval(flags) && b.eval(flags),
            Predicate::Or(a, b) => a.eval(flags) || b.eval(flags),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Const(b) => write!(f, "{b}"),
            Predicate::Flag(n) => f.write_str(n),
            Predicate::Not(p) => match **p {
                Predicate::Const(_) | Predicate::Flag(_) | Predicate::Not(_) => write!(f, "!{p}"),
                _ => write!(f, "!({p})"),
            },
            Predicate::And(a, b) => {
                let left = match **a {
                    Predicate::Or(..) => format!("({a})"),
                    _ => a.to_string(),
                };
                match **b {
                    Predicate::And(..) | Predicate::Or(..) => write!(f, "{left} && ({b})"),
                    _ => write!(f, "{left} && {b}"),
                }
            }
            Predicate::Or(a, b) => match **b {
                Predicate::Or(..) => write!(f, "{a} || ({b})"),
                _ => write!(f, "{a} || {b}"),
            },
        }
    }
}

/// Boolean expressions over flag names with `!`, `&&`, `||`, parentheses and
/// the constants `true` and `false`.
pub fn parse_predicate(text: &str) -> std::result::Result<Predicate, ParseError> {
    let mut p = PredParser { src: text, pos: 0 };
    let out = p.or()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error(p.pos, ParseErrorKind::Syntax, "trailing input".into(), &["&&", "||", "end of input"]));
    }
    Ok(out)
}

struct PredParser<'a> {
    src: &'a str,
    pos: usize,
}

impl PredParser<'_> {
    fn skip_ws(&mut self) {
        let rest = self.src[self.pos..].trim_start();
        self.pos = self.src.len() - rest.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn error(&self, at: usize, kind: ParseErrorKind, message: String, expected: &[&str]) -> ParseError {
        ParseError {
            kind,
            offset: at,
            column: self.src[..at].chars().count() + 1,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn or(&mut self) -> std::result::Result<Predicate, ParseError> {
        let mut acc = self.and()?;
        while self.eat("||") {
            acc = Predicate::Or(Box::new(acc), Box::new(self.and()?));
        }
        Ok(acc)
    }

    fn and(&mut self) -> std::result::Result<Predicate, ParseError> {
        let mut acc = self.unary()?;
        while self.eat("&&") {
            acc = Predicate::And(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> std::result::Result<Predicate, ParseError> {
        if self.eat("!") {
            return Ok(Predicate::Not(Box::new(self.unary()?)));
        }
        if self.eat("(") {
            let inner = self.or()?;
            if !self.eat(")") {
                return Err(self.error(self.pos, ParseErrorKind::Syntax, "unclosed parenthesis".into(), &[")", "&&", "||"]));
            }
            return Ok(inner);
        }
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        let word = &self.src[start..start + len];
        let mut expected: Vec<&str> = vec!["!", "(", "true", "false"];
        expected.extend(PropertyFlags::NAMES);
        if word.is_empty() {
            return Err(self.error(start, ParseErrorKind::Syntax, "expected a flag name".into(), &expected));
        }
        self.pos += len;
        match word {
            "true" => Ok(Predicate::Const(true)),
            "false" => Ok(Predicate::Const(false)),
            w if PropertyFlags::NAMES.contains(&w) => Ok(Predicate::Flag(w.to_string())),
            w => Err(self.error(start, ParseErrorKind::Semantic, format!("unknown flag '{w}'"), &PropertyFlags::NAMES)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub spec: String,
    pub order: Option<usize>,
    pub report: Option<PropertyReport>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZooCatalog {
    pub schema: u32,
    pub parameters: UniverseParams,
    pub entries: Vec<CatalogEntry>,
}

fn classify_entry(spec: &RingSpec, limits: &Limits) -> CatalogEntry {
    let name = spec.to_string();
    let ring = match eval_spec(spec, limits) {
        Ok(r) => r,
        Err(e) => {
            return CatalogEntry {
                spec: name,
                order: None,
                report: None,
                error: Some(e.to_string()),
            }
        }
    };
    match classify_ring(&ring, limits) {
        Ok(mut report) => {
            report.timings_ms.clear();
            CatalogEntry {
                spec: name,
                order: Some(ring.order()),
                report: Some(report),
                error: None,
            }
        }
        Err(e) => CatalogEntry {
            spec: name,
            order: Some(ring.order()),
            report: None,
            error: Some(e.to_string()),
        },
    }
}

/// Classifies the whole universe. Per-entry failures (caps included) are
/// recorded in the entry. A consistency failure anywhere aborts.
pub fn build_catalog(params: UniverseParams, limits: &Limits) -> Result<ZooCatalog> {
    let specs = universe(params);
    let entries: Vec<CatalogEntry> = specs.par_iter().map(|s| classify_entry(s, limits)).collect();
    for e in &entries {
        if let Some(err) = &e.error {
            if err.starts_with("internal consistency") {
                return Err(Error::Consistency(format!("{}: {err}", e.spec)));
            }
        }
        if let Some(r) = &e.report {
            if let Some((p, c)) = r.flags.chain_violations().first() {
                return Err(Error::Consistency(format!("{}: {p} holds but {c} fails", e.spec)));
            }
        }
    }
    Ok(ZooCatalog {
        schema: REPORT_SCHEMA,
        parameters: params,
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub predicate: String,
    pub parameters: UniverseParams,
    /// Entries classified successfully.
    pub examined: usize,
    /// Entries skipped because of an error (usually a cap).
    pub skipped: usize,
    pub matches: Vec<String>,
}

pub fn search_catalog(pred: &Predicate, catalog: &ZooCatalog) -> SearchOutcome {
    let mut out = SearchOutcome {
        predicate: pred.to_string(),
        parameters: catalog.parameters,
        examined: 0,
        skipped: 0,
        matches: Vec::new(),
    };
    for e in &catalog.entries {
        match &e.report {
            Some(r) => {
                out.examined += 1;
                if pred.eval(&r.flags) {
                    out.matches.push(e.spec.clone());
                }
            }
            None => out.skipped += 1,
        }
    }
    out
}

/// Enumerates, classifies and filters in one step.
pub fn search(pred: &Predicate, params: UniverseParams, limits: &Limits) -> Result<SearchOutcome> {
    Ok(search_catalog(pred, &build_catalog(params, limits)?))
}

impl ZooCatalog {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("catalog serializes");
        s.push('\n');
        s
    }

    /// One row per entry: spec, order, every flag, a witness summary per
    /// flag, and the error if classification failed.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["spec".to_string(), "order".to_string()];
        header.extend(PropertyFlags::NAMES.iter().map(|s| s.to_string()));
        header.extend(PropertyFlags::NAMES.iter().map(|s| format!("{s}_witness")));
        header.push("error".into());
        w.write_record(&header).map_err(csv_err)?;
        for e in &self.entries {
            let mut row = vec![e.spec.clone(), e.order.map(|o| o.to_string()).unwrap_or_default()];
            match &e.report {
                Some(r) => {
                    for name in PropertyFlags::NAMES {
                        row.push(match name {
                            "wdim_infinite_certified" => r
                                .flags
                                .wdim_infinite_certified
                                .map(|b| b.to_string())
                                .unwrap_or_default(),
                            _ => r.flags.get(name).unwrap_or(false).to_string(),
                        });
                    }
                    for name in PropertyFlags::NAMES {
                        row.push(r.witnesses.get(name).map(|w| w.summary()).unwrap_or_default());
                    }
                }
                None => row.extend(std::iter::repeat(String::new()).take(2 * PropertyFlags::NAMES.len())),
            }
            row.push(e.error.clone().unwrap_or_default());
            w.write_record(&row).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(params: UniverseParams) -> Vec<String> {
        universe(params).iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn order_one_universe_is_the_zero_ring() {
        for depth in 1..=3 {
            assert_eq!(names(UniverseParams { max_order: 1, max_depth: depth }), vec!["Z/1"]);
        }
    }

    #[test]
    fn small_universe_contents() {
        let u = names(UniverseParams { max_order: 8, max_depth: 2 });
        for s in [
            "Z/8",
            "GF(4)",
            "GF(8)",
            "PolyQ(2, x^2)",
            "Prod(Z/2, Z/4)",
            "Triv(GF(2), Self)",
            "Triv(GF(2), ExtMod(GF(4)))",
            "Triv(Z/2, Sum(Self, Self))",
            "Triv(Z/4, QuotMod(2))",
        ] {
            assert!(u.contains(&s.to_string()), "{s}");
        }
        assert!(!u.iter().any(|s| s.starts_with("Quot(")));
        let mut sorted = u.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, u);
        let limits = Limits::default();
        for s in universe(UniverseParams { max_order: 8, max_depth: 2 }) {
            assert!(eval_spec(&s, &limits).unwrap().order() <= 8, "{s}");
        }
    }

    #[test]
    fn predicate_parsing() {
        let p = parse_predicate("prufer && !gaussian").unwrap();
        assert_eq!(p.to_string(), "prufer && !gaussian");
        let p = parse_predicate("!(a_flag)").unwrap_err();
        assert_eq!(p.kind, ParseErrorKind::Semantic);
        assert_eq!(p.column, 3);
        let e = parse_predicate("prufer &&").unwrap_err();
        assert_eq!(e.column, 10);
        let e = parse_predicate("(prufer").unwrap_err();
        assert_eq!(e.expected[0], ")");
        let p = parse_predicate("true || false && false").unwrap();
        assert!(p.eval(&PropertyFlags::default()));
        let p = parse_predicate("(true || false) && false").unwrap();
        assert!(!p.eval(&PropertyFlags::default()));
        assert_eq!(parse_predicate(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn catalog_is_deterministic() {
        let params = UniverseParams { max_order: 6, max_depth: 2 };
        let limits = Limits::default();
        let a = build_catalog(params, &limits).unwrap();
        let b = build_catalog(params, &limits).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        assert!(!a.to_json().contains("timings_ms"));
        let back: ZooCatalog = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn cap_errors_are_recorded_per_entry() {
        let params = UniverseParams { max_order: 8, max_depth: 1 };
        let limits = Limits::default().with_enumeration_cap(4);
        let c = build_catalog(params, &limits).unwrap();
        let z8 = c.entries.iter().find(|e| e.spec == "Z/8").unwrap();
        assert!(z8.report.is_none());
        assert!(z8.error.as_deref().unwrap().contains("cap"));
        assert!(c.entries.iter().find(|e| e.spec == "Z/4").unwrap().report.is_some());
    }
}
