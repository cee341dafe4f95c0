//! The ring-spec language.
//!
//! ```text
//! spec  := ring
//! ring  := "Z/" int
//!        | "GF(" int ")"
//!        | "PolyQ(" int "," poly ")"
//!        | "Prod(" ring "," ring ")"
//!        | "Quot(" ring "," gens ")"
//!        | "Triv(" ring "," mod ")"
//! mod   := "Self"
//!        | "QuotMod(" gens ")"
//!        | "Sum(" mod "," mod ")"
//!        | "ExtMod(" ring ")"
//! gens  := elem ("," elem)*
//! elem  := poly | "(" elem ("," elem)* ")"
//! poly  := term ("+" term)*
//! term  := int | [int ["*"]] "x" ["^" int]
//! ```
//!
//! Elements are written in the ring they live in. An integer `n` means
//! `n·1`, `x` is the class of the indeterminate in `PolyQ`/`GF` rings (and
//! its image in quotients), and a pair `(a, b)` is an element of a product
//! `Prod(s, t)` or of a trivial extension `Triv(s, m)`, where `b` is read in
//! the module `m`.
//!
//! `GF(q)` is `PolyQ(p, f)` for the modulus `f` in [`gf_modulus`]; `GF(p)`
//! for a prime `p` is `Z/p`. `ExtMod(S)` over a base ring `A` is `S` viewed
//! as an `A`-module through the prime-field embedding `k·1_A ↦ k·1_S`, which
//! requires `A` to be additively generated by `1` and `char S` to divide `|A|`.

use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::ideal::{ideal_generated_by, Ideal};
use crate::limits::Limits;
use crate::module::{make_module, FiniteModule, ModuleConstruction, ModuleKind};
use crate::ring::{
    build_cosets, is_prime, make_cyclic_ring, make_poly_quotient_ring_named, make_product_ring,
    make_quotient_ring, make_trivial_extension, poly_to_string, Construction, FiniteRing,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{} error at column {column}: {message}", match kind { ParseErrorKind::Syntax => "syntax", ParseErrorKind::Semantic => "semantic" })]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub offset: usize,
    /// 1-based character column.
    pub column: usize,
    pub message: String,
    /// Tokens that would have been accepted at `offset` (syntax errors only).
    pub expected: Vec<String>,
}

impl ParseError {
    /// The input line with a caret under the error position.
    pub fn render(&self, input: &str) -> String {
        format!("{input}\n{}^ {self}", " ".repeat(self.column.saturating_sub(1)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Cyclic(u64),
    Galois(u64),
    /// Coefficients constant term first, trailing zeros trimmed.
    PolyQ { p: u64, modulus: Vec<u64> },
    Prod(Box<RingSpec>, Box<RingSpec>),
    Quot(Box<RingSpec>, Vec<ElemSpec>),
    Triv(Box<RingSpec>, Box<ModSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModSpec {
    Regular,
    QuotMod(Vec<ElemSpec>),
    Sum(Box<ModSpec>, Box<ModSpec>),
    ExtMod(Box<RingSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElemSpec {
    /// Coefficients constant term first, trailing zeros trimmed.
    Poly(Vec<u64>),
    Tuple(Vec<ElemSpec>),
}

impl ElemSpec {
    pub fn int(n: u64) -> ElemSpec {
        ElemSpec::Poly(trim(vec![n]))
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for ElemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemSpec::Poly(c) => f.write_str(&poly_to_string(c)),
            ElemSpec::Tuple(parts) => write!(f, "({})", join(parts)),
        }
    }
}

impl fmt::Display for ModSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModSpec::Regular => f.write_str("Self"),
            ModSpec::QuotMod(g) => write!(f, "QuotMod({})", join(g)),
            ModSpec::Sum(a, b) => write!(f, "Sum({a}, {b})"),
            ModSpec::ExtMod(s) => write!(f, "ExtMod({s})"),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Cyclic(n) => write!(f, "Z/{n}"),
            RingSpec::Galois(q) => write!(f, "GF({q})"),
            RingSpec::PolyQ { p, modulus } => write!(f, "PolyQ({p}, {})", poly_to_string(modulus)),
            RingSpec::Prod(a, b) => write!(f, "Prod({a}, {b})"),
            RingSpec::Quot(a, g) => write!(f, "Quot({a}, {})", join(g)),
            RingSpec::Triv(a, m) => write!(f, "Triv({a}, {m})"),
        }
    }
}

impl RingSpec {
    /// Replaces every `GF(q)` by the `PolyQ` (or `Z/p`) it stands for.
    pub fn desugar(&self) -> RingSpec {
        match self {
            RingSpec::Galois(q) => match gf_modulus(*q) {
                Some((p, m)) if m.len() == 2 && m[0] == 0 => RingSpec::Cyclic(p),
                Some((p, m)) => RingSpec::PolyQ { p, modulus: m },
                None => self.clone(),
            },
            RingSpec::Prod(a, b) => RingSpec::Prod(Box::new(a.desugar()), Box::new(b.desugar())),
            RingSpec::Quot(a, g) => RingSpec::Quot(Box::new(a.desugar()), g.clone()),
            RingSpec::Triv(a, m) => RingSpec::Triv(Box::new(a.desugar()), Box::new(m.desugar())),
            _ => self.clone(),
        }
    }

    /// Number of nested ring constructors; atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            RingSpec::Cyclic(_) | RingSpec::Galois(_) | RingSpec::PolyQ { .. } => 1,
            RingSpec::Prod(a, b) => 1 + a.depth().max(b.depth()),
            RingSpec::Quot(a, _) => 1 + a.depth(),
            RingSpec::Triv(a, m) => 1 + a.depth().max(m.depth()),
        }
    }
}

impl ModSpec {
    fn desugar(&self) -> ModSpec {
        match self {
            ModSpec::Sum(a, b) => ModSpec::Sum(Box::new(a.desugar()), Box::new(b.desugar())),
            ModSpec::ExtMod(s) => ModSpec::ExtMod(Box::new(s.desugar())),
            _ => self.clone(),
        }
    }

    fn depth(&self) -> usize {
        match self {
            ModSpec::Regular | ModSpec::QuotMod(_) => 0,
            ModSpec::Sum(a, b) => a.depth().max(b.depth()),
            ModSpec::ExtMod(s) => s.depth(),
        }
    }
}

/// Fixed moduli for `GF(q)`, `q ≤ 64`, as `(p, coefficients)` with the
/// constant term first. Each is a Conway polynomial, so `x` generates the
/// multiplicative group. Primes map to the modulus `x`.
pub fn gf_modulus(q: u64) -> Option<(u64, Vec<u64>)> {
    let table: &[(u64, u64, &[u64])] = &[
        (4, 2, &[1, 1, 1]),
        (8, 2, &[1, 1, 0, 1]),
        (16, 2, &[1, 1, 0, 0, 1]),
        (32, 2, &[1, 0, 1, 0, 0, 1]),
        (64, 2, &[1, 1, 0, 1, 1, 0, 1]),
        (9, 3, &[2, 2, 1]),
        (27, 3, &[1, 2, 0, 1]),
        (25, 5, &[2, 4, 1]),
        (49, 7, &[3, 6, 1]),
    ];
    if let Some(&(_, p, m)) = table.iter().find(|(k, _, _)| *k == q) {
        return Some((p, m.to_vec()));
    }
    (q <= 64 && is_prime(q)).then(|| (q, vec![0, 1]))
}

pub fn parse_ring_spec(text: &str) -> std::result::Result<RingSpec, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let spec = p.ring()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.syntax("trailing input", &["end of input"]));
    }
    Ok(spec)
}

/// Parses a single element, e.g. a ring label such as `(2, x+1)`.
pub fn parse_element(text: &str) -> std::result::Result<ElemSpec, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.elem()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.syntax("trailing input", &["end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

const RING_START: &[&str] = &["Z/", "GF(", "PolyQ(", "Prod(", "Quot(", "Triv("];
const MOD_START: &[&str] = &["Self", "QuotMod(", "Sum(", "ExtMod("];

impl<'a> Parser<'a> {
    fn column(&self, offset: usize) -> usize {
        self.src[..offset].chars().count() + 1
    }

    fn error_at(&self, offset: usize, kind: ParseErrorKind, message: String, expected: &[&str]) -> ParseError {
        ParseError {
            kind,
            offset,
            column: self.column(offset),
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn syntax(&self, message: &str, expected: &[&str]) -> ParseError {
        let found = match self.rest().chars().next() {
            Some(c) => format!("{message}: found '{c}'"),
            None => format!("{message}: found end of input"),
        };
        let list = expected.iter().map(|e| format!("'{e}'")).collect::<Vec<_>>().join(", ");
        let message = if expected.is_empty() { found } else { format!("{found}, expected one of {list}") };
        self.error_at(self.pos, ParseErrorKind::Syntax, message, expected)
    }

    fn semantic(&self, offset: usize, message: String) -> ParseError {
        self.error_at(offset, ParseErrorKind::Semantic, message, &[])
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> std::result::Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.syntax("unexpected input", &[token]))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        let word = &self.rest()[..len];
        self.pos += len;
        word
    }

    fn int(&mut self) -> std::result::Result<(u64, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.syntax("expected an integer", &["integer"]));
        }
        let value = self.rest()[..len]
            .parse::<u64>()
            .map_err(|_| self.semantic(start, "integer literal too large".into()))?;
        self.pos += len;
        Ok((value, start))
    }

    fn positive(&mut self) -> std::result::Result<(u64, usize), ParseError> {
        let (v, at) = self.int()?;
        if v == 0 {
            return Err(self.semantic(at, "literal must be positive".into()));
        }
        Ok((v, at))
    }

    fn ring(&mut self) -> std::result::Result<RingSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let word = self.ident();
        let spec = match word {
            "Z" => {
                self.expect("/")?;
                let (n, _) = self.positive()?;
                return Ok(RingSpec::Cyclic(n));
            }
            "GF" => {
                self.expect("(")?;
                let (q, at) = self.positive()?;
                if gf_modulus(q).is_none() {
                    return Err(self.semantic(
                        at,
                        format!("GF({q}) is not supported: need a prime power at most 64"),
                    ));
                }
                RingSpec::Galois(q)
            }
            "PolyQ" => {
                self.expect("(")?;
                let (p, at) = self.positive()?;
                if !is_prime(p) {
                    return Err(self.semantic(at, format!("{p} is not prime")));
                }
                self.expect(",")?;
                self.skip_ws();
                let at = self.pos;
                let modulus: Vec<u64> = trim(self.poly()?.iter().map(|c| c % p).collect());
                if modulus.len() < 2 || modulus.last() != Some(&1) {
                    return Err(self.semantic(
                        at,
                        "modulus must be monic of degree at least 1 over Z/p".into(),
                    ));
                }
                RingSpec::PolyQ { p, modulus }
            }
            "Prod" => {
                self.expect("(")?;
                let a = self.ring()?;
                self.expect(",")?;
                let b = self.ring()?;
                RingSpec::Prod(Box::new(a), Box::new(b))
            }
            "Quot" => {
                self.expect("(")?;
                let a = self.ring()?;
                self.expect(",")?;
                let g = self.gens()?;
                RingSpec::Quot(Box::new(a), g)
            }
            "Triv" => {
                self.expect("(")?;
                let a = self.ring()?;
                self.expect(",")?;
                let m = self.module()?;
                RingSpec::Triv(Box::new(a), Box::new(m))
            }
            _ => {
                self.pos = start;
                return Err(self.syntax("expected a ring", RING_START));
            }
        };
        self.expect(")")?;
        Ok(spec)
    }

    fn module(&mut self) -> std::result::Result<ModSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let spec = match self.ident() {
            "Self" => return Ok(ModSpec::Regular),
            "QuotMod" => {
                self.expect("(")?;
                ModSpec::QuotMod(self.gens()?)
            }
            "Sum" => {
                self.expect("(")?;
                let a = self.module()?;
                self.expect(",")?;
                let b = self.module()?;
                ModSpec::Sum(Box::new(a), Box::new(b))
            }
            "ExtMod" => {
                self.expect("(")?;
                ModSpec::ExtMod(Box::new(self.ring()?))
            }
            _ => {
                self.pos = start;
                return Err(self.syntax("expected a module", MOD_START));
            }
        };
        self.expect(")")?;
        Ok(spec)
    }

    fn gens(&mut self) -> std::result::Result<Vec<ElemSpec>, ParseError> {
        let mut out = vec![self.elem()?];
        while self.eat(",") {
            out.push(self.elem()?);
        }
        Ok(out)
    }

    fn elem(&mut self) -> std::result::Result<ElemSpec, ParseError> {
        if self.eat("(") {
            let mut parts = vec![self.elem()?];
            while self.eat(",") {
                parts.push(self.elem()?);
            }
            if !self.eat(")") {
                return Err(self.syntax("unexpected input", &[",", ")"]));
            }
            return Ok(if parts.len() == 1 { parts.pop().unwrap() } else { ElemSpec::Tuple(parts) });
        }
        Ok(ElemSpec::Poly(trim(self.poly()?)))
    }

    fn poly(&mut self) -> std::result::Result<Vec<u64>, ParseError> {
        let mut coeffs: Vec<u64> = Vec::new();
        loop {
            let (c, k) = self.term()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = coeffs[k]
                .checked_add(c)
                .ok_or_else(|| self.semantic(self.pos, "coefficient too large".into()))?;
            if !self.eat("+") {
                return Ok(coeffs);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<(u64, usize), ParseError> {
        self.skip_ws();
        let coef = if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            let (c, _) = self.int()?;
            self.eat("*");
            Some(c)
        } else {
            None
        };
        self.skip_ws();
        if self.rest().starts_with('x') {
            self.pos += 1;
            let k = if self.eat("^") {
                let (k, at) = self.int()?;
                usize::try_from(k)
                    .ok()
                    .filter(|&k| k <= 64)
                    .ok_or_else(|| self.semantic(at, "exponent too large".into()))?
            } else {
                1
            };
            Ok((coef.unwrap_or(1), k))
        } else if let Some(c) = coef {
            Ok((c, 0))
        } else {
            Err(self.syntax("expected a term", &["integer", "x"]))
        }
    }
}

fn check_cap(order: usize, limits: &Limits) -> Result<()> {
    if order > limits.max_ring_order {
        return Err(Error::OrderCap {
            order,
            cap: limits.max_ring_order,
        });
    }
    Ok(())
}

/// Builds the ring a spec describes. The ring's name is the printed spec.
pub fn eval_spec(spec: &RingSpec, limits: &Limits) -> Result<FiniteRing> {
    let ring = build_ring(spec, limits)?;
    let name = spec.to_string();
    Ok(if ring.name() == name { ring } else { ring.renamed(name) })
}

/// Parses and evaluates in one step.
pub fn ring_from_spec(text: &str, limits: &Limits) -> Result<FiniteRing> {
    eval_spec(&parse_ring_spec(text)?, limits)
}

fn build_ring(spec: &RingSpec, limits: &Limits) -> Result<FiniteRing> {
    let ring = match spec {
        RingSpec::Cyclic(n) => {
            check_cap(usize::try_from(*n).unwrap_or(usize::MAX), limits)?;
            make_cyclic_ring(*n)?
        }
        RingSpec::Galois(q) => {
            let (p, modulus) = gf_modulus(*q)
                .ok_or_else(|| Error::InvalidArgument(format!("GF({q}) is not supported")))?;
            check_cap(*q as usize, limits)?;
            make_poly_quotient_ring_named(p, &modulus, spec.to_string())?
        }
        RingSpec::PolyQ { p, modulus } => {
            let order = (*p as usize)
                .checked_pow(modulus.len().saturating_sub(1) as u32)
                .unwrap_or(usize::MAX);
            check_cap(order, limits)?;
            make_poly_quotient_ring_named(*p, modulus, spec.to_string())?
        }
        RingSpec::Prod(a, b) => {
            let (ra, rb) = (eval_spec(a, limits)?, eval_spec(b, limits)?);
            check_cap(ra.order().saturating_mul(rb.order()), limits)?;
            make_product_ring(&ra, &rb)?
        }
        RingSpec::Quot(a, gens) => {
            let base = eval_spec(a, limits)?;
            let ideal = ideal_of(a, &base, gens)?;
            make_quotient_ring(&base, &ideal)?.0
        }
        RingSpec::Triv(a, m) => {
            let base = eval_spec(a, limits)?;
            let module = eval_module(a, &base, m, limits)?;
            check_cap(base.order().saturating_mul(module.order()), limits)?;
            make_trivial_extension(&base, &module)?
        }
    };
    Ok(ring)
}

fn ideal_of(spec: &RingSpec, ring: &FiniteRing, gens: &[ElemSpec]) -> Result<Ideal> {
    let idx = gens
        .iter()
        .map(|g| eval_element(spec, ring, g))
        .collect::<Result<Vec<_>>>()?;
    ideal_generated_by(ring, &idx)
}

fn eval_module(base_spec: &RingSpec, base: &FiniteRing, m: &ModSpec, limits: &Limits) -> Result<FiniteModule> {
    match m {
        ModSpec::Regular => make_module(base, ModuleKind::Regular),
        ModSpec::QuotMod(gens) => make_module(base, ModuleKind::Quotient(ideal_of(base_spec, base, gens)?)),
        ModSpec::Sum(a, b) => {
            let ma = eval_module(base_spec, base, a, limits)?;
            let mb = eval_module(base_spec, base, b, limits)?;
            check_cap(ma.order().saturating_mul(mb.order()), limits)?;
            make_module(base, ModuleKind::DirectSum(vec![ma, mb]))
        }
        ModSpec::ExtMod(s) => make_module(base, ModuleKind::Extension(eval_spec(s, limits)?)),
    }
}

fn bad(msg: String) -> Error {
    Error::InvalidArgument(msg)
}

/// Index of the element `e` of `ring`, which must have been built from `spec`.
pub fn eval_element(spec: &RingSpec, ring: &FiniteRing, e: &ElemSpec) -> Result<usize> {
    match e {
        ElemSpec::Poly(c) if c.len() <= 1 => Ok(ring.from_int(c.first().copied().unwrap_or(0))),
        ElemSpec::Poly(c) => {
            let x = indeterminate(spec, ring)?;
            let mut acc = 0;
            for (k, &ck) in c.iter().enumerate() {
                acc = ring.add(acc, ring.times(ck, ring.pow(x, k as u64)));
            }
            Ok(acc)
        }
        ElemSpec::Tuple(parts) => {
            if parts.len() != 2 {
                return Err(bad(format!("{e} has {} components, expected 2", parts.len())));
            }
            match (spec, ring.construction()) {
                (RingSpec::Prod(sa, sb), Construction::Product(ra, rb)) => {
                    let a = eval_element(sa, ra, &parts[0])?;
                    let b = eval_element(sb, rb, &parts[1])?;
                    Ok(a * rb.order() + b)
                }
                (RingSpec::Triv(sa, m), Construction::TrivialExtension { base, module }) => {
                    let a = eval_element(sa, base, &parts[0])?;
                    let x = eval_module_element(sa, m, module, &parts[1])?;
                    Ok(a * module.order() + x)
                }
                _ => Err(bad(format!("{e} is not an element of {spec}: pairs need Prod or Triv"))),
            }
        }
    }
}

fn indeterminate(spec: &RingSpec, ring: &FiniteRing) -> Result<usize> {
    match (spec, ring.construction()) {
        (_, Construction::PolyQuotient { p, modulus }) => {
            if modulus.len() > 2 {
                ring.find_label("x").ok_or_else(|| bad("missing x".into()))
            } else {
                Ok(ring.from_int((p - modulus[0] % p) % p))
            }
        }
        (RingSpec::Prod(sa, sb), Construction::Product(ra, rb)) => {
            Ok(indeterminate(sa, ra)? * rb.order() + indeterminate(sb, rb)?)
        }
        (RingSpec::Quot(sa, _), Construction::Quotient { base, generators, .. }) => {
            let x = indeterminate(sa, base)?;
            Ok(project(base, generators)?[x])
        }
        (RingSpec::Triv(sa, _), Construction::TrivialExtension { base, module }) => {
            Ok(indeterminate(sa, base)? * module.order())
        }
        _ => Err(bad(format!("x is not an element of {spec}"))),
    }
}

fn project(base: &FiniteRing, generators: &[usize]) -> Result<Vec<usize>> {
    let ideal = ideal_generated_by(base, generators)?;
    Ok(build_cosets(base.order(), &ideal.elements(), |x, y| base.add(x, y)).0)
}

fn eval_module_element(base_spec: &RingSpec, m: &ModSpec, module: &FiniteModule, e: &ElemSpec) -> Result<usize> {
    let base = module.base();
    match (m, module.construction()) {
        (ModSpec::Regular, _) => eval_element(base_spec, base, e),
        (ModSpec::QuotMod(_), ModuleConstruction::Quotient { generators }) => {
            let a = eval_element(base_spec, base, e)?;
            Ok(project(base, generators)?[a])
        }
        (ModSpec::Sum(ma, mb), ModuleConstruction::DirectSum(parts)) if parts.len() == 2 => match e {
            ElemSpec::Tuple(xs) if xs.len() == 2 => {
                let a = eval_module_element(base_spec, ma, &parts[0], &xs[0])?;
                let b = eval_module_element(base_spec, mb, &parts[1], &xs[1])?;
                Ok(a * parts[1].order() + b)
            }
            _ => Err(bad(format!("{e} is not an element of {m}: expected a pair"))),
        },
        (ModSpec::ExtMod(s), ModuleConstruction::Extension(ext)) => eval_element(s, ext, e),
        _ => Err(bad(format!("{e} is not an element of {m}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn parses_trivial_extension() {
        let s = parse_ring_spec("Triv(Z/4, Self)").unwrap();
        assert_eq!(s, RingSpec::Triv(Box::new(RingSpec::Cyclic(4)), Box::new(ModSpec::Regular)));
        let s = parse_ring_spec(" Triv( Z/4 ,QuotMod(2) ) ").unwrap();
        assert_eq!(s.to_string(), "Triv(Z/4, QuotMod(2))");
    }

    #[test]
    fn gf4_desugars_to_poly_quotient() {
        let s = parse_ring_spec("GF(4)").unwrap();
        assert_eq!(s.desugar(), RingSpec::PolyQ { p: 2, modulus: vec![1, 1, 1] });
        assert_eq!(parse_ring_spec("GF(7)").unwrap().desugar(), RingSpec::Cyclic(7));
    }

    #[test]
    fn gf_table_moduli_are_primitive() {
        for q in 2..=64u64 {
            let Some((p, m)) = gf_modulus(q) else { continue };
            let r = eval_spec(&RingSpec::Galois(q), &lim()).unwrap();
            assert_eq!(r.order() as u64, q);
            assert_eq!(r.characteristic() as u64, p);
            for a in 1..r.order() {
                assert!(r.is_unit(a), "GF({q})");
            }
            if m.len() > 2 {
                let x = r.find_label("x").unwrap();
                let ord = (1..q).find(|&k| r.pow(x, k) == r.one()).unwrap();
                assert_eq!(ord, q - 1, "GF({q})");
            }
        }
    }

    #[test]
    fn evaluated_orders_and_names() {
        for (text, order) in [
            ("Triv(Z/4, Self)", 16),
            ("Prod(Z/2, Z/3)", 6),
            ("Triv(GF(2), ExtMod(GF(4)))", 8),
            ("Quot(Z/12, 4)", 4),
            ("Quot(PolyQ(2, x^3), x^2)", 4),
            ("Triv(Z/4, Sum(QuotMod(2), Self))", 32),
            ("Z/1", 1),
        ] {
            let r = ring_from_spec(text, &lim()).unwrap();
            assert_eq!(r.order(), order, "{text}");
            assert_eq!(r.name(), text);
            r.verify_axioms().unwrap();
        }
    }

    #[test]
    fn elements_in_nested_rings() {
        let spec = parse_ring_spec("Triv(Z/8, Self)").unwrap();
        let r = eval_spec(&spec, &lim()).unwrap();
        let e = parse_ring_spec("Quot(Z/2, (4, 1))").unwrap();
        let RingSpec::Quot(_, g) = e else { panic!() };
        let x = eval_element(&spec, &r, &g[0]).unwrap();
        assert_eq!(r.label(x), "(4, 1)");

        let q = parse_ring_spec("Quot(PolyQ(3, x^3), x^2)").unwrap();
        let r = eval_spec(&q, &lim()).unwrap();
        let x = eval_element(&q, &r, &ElemSpec::Poly(vec![0, 1])).unwrap();
        assert_ne!(x, 0);
        assert_eq!(r.mul(x, x), 0);
        assert!(eval_element(&RingSpec::Cyclic(4), &make_cyclic_ring(4).unwrap(), &ElemSpec::Poly(vec![0, 1])).is_err());
    }

    #[test]
    fn gf_p_is_named_and_prime() {
        let r = ring_from_spec("GF(5)", &lim()).unwrap();
        assert_eq!(r.order(), 5);
        assert_eq!(r.name(), "GF(5)");
    }

    #[test]
    fn syntax_errors_carry_position_and_expected() {
        let e = parse_ring_spec("Triv(Z/4, Slf)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        assert_eq!(e.column, 11);
        assert!(e.expected.contains(&"Self".to_string()));

        let e = parse_ring_spec("Prod(Z/2 Z/3)").unwrap_err();
        assert_eq!(e.column, 10);
        assert_eq!(e.expected, vec![","]);

        let e = parse_ring_spec("Z/4)").unwrap_err();
        assert_eq!(e.column, 4);
        let e = parse_ring_spec("").unwrap_err();
        assert_eq!(e.column, 1);
        assert_eq!(e.expected.len(), RING_START.len());
    }

    #[test]
    fn semantic_errors() {
        for (text, col) in [("GF(6)", 4), ("GF(128)", 4), ("Z/0", 3), ("PolyQ(4, x^2)", 7), ("PolyQ(3, 2x^2+1)", 10)] {
            let e = parse_ring_spec(text).unwrap_err();
            assert_eq!(e.kind, ParseErrorKind::Semantic, "{text}");
            assert_eq!(e.column, col, "{text}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let small = Limits { max_ring_order: 16, ..Limits::default() };
        assert!(matches!(
            ring_from_spec("Triv(Z/8, Self)", &small),
            Err(Error::OrderCap { order: 64, cap: 16 })
        ));
    }

    #[test]
    fn bad_generators_are_rejected() {
        assert!(ring_from_spec("Quot(Z/4, (1, 2))", &lim()).is_err());
        assert!(ring_from_spec("Triv(Z/3, ExtMod(GF(4)))", &lim()).is_err());
    }
}
