//! Polynomials over a finite ring and their content ideals.
//!
//! The content `C(f)` is the ideal generated by the coefficients of `f`.
//! A ring is Gaussian when `C(fg) = C(f)C(g)` for all `f, g`;
//! [`content_equality_scan`] checks that identity exhaustively up to a
//! degree bound.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideals, ideal_generated_by, ideal_product, sum_sets, Ideal};
use crate::limits::Limits;
use crate::ring::FiniteRing;

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: FiniteRing,
    /// Constant term first, no trailing zeros.
    coeffs: Vec<usize>,
}

impl Polynomial {
    pub fn new(ring: &FiniteRing, coeffs: &[usize]) -> Result<Polynomial> {
        if let Some(&c) = coeffs.iter().find(|&&c| c >= ring.order()) {
            return Err(Error::InvalidArgument(format!("coefficient index {c} out of range")));
        }
        let mut coeffs = coeffs.to_vec();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(Polynomial {
            ring: ring.clone(),
            coeffs,
        })
    }

    /// Coefficients given by their labels, constant term first.
    pub fn from_labels(ring: &FiniteRing, labels: &[&str]) -> Result<Polynomial> {
        let coeffs = labels
            .iter()
            .map(|l| {
                ring.find_label(l)
                    .ok_or_else(|| Error::InvalidArgument(format!("no element labelled {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Polynomial::new(ring, &coeffs)
    }

    pub fn zero(ring: &FiniteRing) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    /// `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let l = self.ring.label(c);
                match i {
                    0 => l.to_string(),
                    1 => format!("{l}X"),
                    _ => format!("{l}X^{i}"),
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{self}]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

pub fn poly_arithmetic(op: PolyOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.ring != g.ring {
        return Err(Error::RingMismatch);
    }
    let r = &f.ring;
    let coeffs = match op {
        PolyOp::Add => (0..f.coeffs.len().max(g.coeffs.len()))
            .map(|i| {
                r.add(
                    f.coeffs.get(i).copied().unwrap_or(0),
                    g.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect(),
        PolyOp::Mul => {
            if f.is_zero() || g.is_zero() {
                Vec::new()
            } else {
                convolve(r, &f.coeffs, &g.coeffs)
            }
        }
    };
    Polynomial::new(r, &coeffs)
}

fn convolve(r: &FiniteRing, f: &[usize], g: &[usize]) -> Vec<usize> {
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        let row = r.mul_row(a);
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = r.add(out[i + j], row[b] as usize);
        }
    }
    out
}

pub fn content_ideal(f: &Polynomial) -> Ideal {
    ideal_generated_by(&f.ring, &f.coeffs).expect("coefficients belong to the ring")
}

#[derive(Clone, Debug)]
pub struct ContentWitness {
    pub f: Polynomial,
    pub g: Polynomial,
    /// `C(fg)`, strictly inside `C(f)C(g)`.
    pub content_of_product: Ideal,
    pub product_of_contents: Ideal,
}

#[derive(Clone, Debug)]
pub struct ContentScan {
    pub holds: bool,
    pub witness: Option<ContentWitness>,
    pub pairs_checked: u64,
}

/// Ideal lattice with interned ids and precomputed sum/product tables.
struct IdealTable {
    ideals: Vec<Ideal>,
    principal: Vec<u16>,
    sum: Vec<u16>,
    product: Vec<u16>,
    subset: Vec<bool>,
}

impl IdealTable {
    fn new(r: &FiniteRing, limits: &Limits) -> Result<IdealTable> {
        let ideals = enumerate_ideals(r, limits)?;
        let n = ideals.len();
        let index: HashMap<&FixedBitSet, u16> =
            ideals.iter().enumerate().map(|(k, i)| (i.bits(), k as u16)).collect();
        let principal = r
            .principal_sets()
            .iter()
            .map(|p| index[p])
            .collect();
        let mut sum = vec![0; n * n];
        let mut product = vec![0; n * n];
        let mut subset = vec![false; n * n];
        for (a, i) in ideals.iter().enumerate() {
            for (b, j) in ideals.iter().enumerate() {
                sum[a * n + b] = index[&sum_sets(r, i.bits(), j.bits())];
                product[a * n + b] = index[ideal_product(i, j)?.bits()];
                subset[a * n + b] = i.is_subset(j);
            }
        }
        Ok(IdealTable {
            ideals,
            principal,
            sum,
            product,
            subset,
        })
    }

    fn content(&self, coeffs: &[usize]) -> u16 {
        let n = self.ideals.len();
        coeffs
            .iter()
            .fold(0u16, |acc, &c| self.sum[acc as usize * n + self.principal[c] as usize])
    }
}

fn decode(r: &FiniteRing, mut index: usize, len: usize) -> Vec<usize> {
    let n = r.order();
    (0..len)
        .map(|_| {
            let c = index % n;
            index /= n;
            c
        })
        .collect()
}

/// Checks `C(fg) = C(f)C(g)` for every `f` of degree at most `max_deg_f`
/// and `g` of degree at most `max_deg_g`. Polynomials are numbered by their
/// coefficient vectors read as base-`|R|` numerals (constant term least
/// significant), and the reported witness is the first pair in that order.
pub fn content_equality_scan(
    r: &FiniteRing,
    max_deg_f: usize,
    max_deg_g: usize,
    limits: &Limits,
) -> Result<ContentScan> {
    let count = |d: usize| (r.order() as u128).checked_pow(d as u32 + 1);
    let (nf, ng) = match (count(max_deg_f), count(max_deg_g)) {
        (Some(a), Some(b))
            if a <= limits.max_scan_polynomials as u128 && b <= limits.max_scan_polynomials as u128 =>
        {
            (a as usize, b as usize)
        }
        _ => {
            return Err(Error::Budget(format!(
                "content scan over {} with degrees ({max_deg_f}, {max_deg_g}) exceeds {} polynomials per side",
                r.name(),
                limits.max_scan_polynomials
            )))
        }
    };
    let lat = IdealTable::new(r, limits)?;
    let n_ideals = lat.ideals.len();
    let fs: Vec<Vec<usize>> = (0..nf).map(|i| decode(r, i, max_deg_f + 1)).collect();
    let gs: Vec<Vec<usize>> = (0..ng).map(|i| decode(r, i, max_deg_g + 1)).collect();
    let cf: Vec<u16> = fs.iter().map(|f| lat.content(f)).collect();
    let cg: Vec<u16> = gs.iter().map(|g| lat.content(g)).collect();
    // Content is symmetric in f and g, so with equal bounds only g ≥ f is
    // visited.
    let symmetric = max_deg_f == max_deg_g;

    let outcome = (0..nf).into_par_iter().map(|i| -> Result<Option<usize>> {
        let mut prod = vec![0usize; max_deg_f + max_deg_g + 1];
        let f = &fs[i];
        let start = if symmetric { i } else { 0 };
        for j in start..ng {
            let g = &gs[j];
            prod.iter_mut().for_each(|c| *c = 0);
            for (a, &x) in f.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let row = r.mul_row(x);
                for (b, &y) in g.iter().enumerate() {
                    prod[a + b] = r.add(prod[a + b], row[y] as usize);
                }
            }
            let c = lat.content(&prod) as usize;
            let expected = lat.product[cf[i] as usize * n_ideals + cg[j] as usize] as usize;
            if c != expected {
                if !lat.subset[c * n_ideals + expected] {
                    return Err(Error::Consistency(format!(
                        "C(fg) ⊄ C(f)C(g) over {} at f = {:?}, g = {:?}",
                        r.name(),
                        f,
                        g
                    )));
                }
                return Ok(Some(j));
            }
        }
        Ok(None)
    });
    let first = outcome
        .map(|res| match res {
            Ok(None) => None,
            other => Some(other),
        })
        .enumerate()
        .filter_map(|(i, x)| x.map(|x| (i, x)))
        .find_first(|_| true);
    let pairs_checked = if symmetric {
        (nf as u64) * (nf as u64 + 1) / 2
    } else {
        nf as u64 * ng as u64
    };
    match first {
        None => Ok(ContentScan {
            holds: true,
            witness: None,
            pairs_checked,
        }),
        Some((_, Err(e))) => Err(e),
        Some((i, Ok(j))) => {
            let j = j.expect("only failures are kept");
            let f = Polynomial::new(r, &fs[i])?;
            let g = Polynomial::new(r, &gs[j])?;
            let content_of_product = content_ideal(&poly_arithmetic(PolyOp::Mul, &f, &g)?);
            let product_of_contents = ideal_product(&content_ideal(&f), &content_ideal(&g))?;
            Ok(ContentScan {
                holds: false,
                witness: Some(ContentWitness {
                    f,
                    g,
                    content_of_product,
                    product_of_contents,
                }),
                pairs_checked,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{make_module, ModuleKind};
    use crate::ring::{make_cyclic_ring, make_poly_quotient_ring, make_trivial_extension};

    fn triv_self(n: u64) -> FiniteRing {
        let a = make_cyclic_ring(n).unwrap();
        let e = make_module(&a, ModuleKind::Regular).unwrap();
        make_trivial_extension(&a, &e).unwrap()
    }

    #[test]
    fn square_of_the_nilpotent_linear_polynomial_vanishes() {
        let r = triv_self(4);
        let f = Polynomial::from_labels(&r, &["(2, 0)", "(2, 1)"]).unwrap();
        assert_eq!(f.to_string(), "(2, 0) + (2, 1)X");
        let sq = poly_arithmetic(PolyOp::Mul, &f, &f).unwrap();
        assert!(sq.is_zero());
        assert_eq!(sq.degree(), -1);
        let c = content_ideal(&f);
        let c2 = ideal_product(&c, &c).unwrap();
        assert_eq!(c2.elements(), vec![0, 2]); // R(0, 2)
        assert!(content_ideal(&sq).is_zero());
    }

    #[test]
    fn z4_char_four_square() {
        let z4 = make_cyclic_ring(4).unwrap();
        let f = Polynomial::new(&z4, &[2, 2]).unwrap();
        assert!(poly_arithmetic(PolyOp::Mul, &f, &f).unwrap().is_zero());
        let one = Polynomial::new(&z4, &[1]).unwrap();
        assert_eq!(poly_arithmetic(PolyOp::Mul, &f, &one).unwrap(), f);
        assert!(content_ideal(&one).is_whole());
        assert!(content_ideal(&Polynomial::zero(&z4)).is_zero());
    }

    #[test]
    fn trimming_and_addition() {
        let z4 = make_cyclic_ring(4).unwrap();
        let f = Polynomial::new(&z4, &[1, 3, 0, 0]).unwrap();
        assert_eq!(f.degree(), 1);
        let g = Polynomial::new(&z4, &[0, 1]).unwrap();
        let s = poly_arithmetic(PolyOp::Add, &f, &g).unwrap();
        assert_eq!(s.coeffs(), &[1]);
        let other = make_cyclic_ring(4).unwrap();
        let h = Polynomial::new(&other, &[1]).unwrap();
        assert!(matches!(poly_arithmetic(PolyOp::Add, &f, &h), Err(Error::RingMismatch)));
    }

    #[test]
    fn scan_finds_witness_in_z4_triv_z4() {
        let r = triv_self(4);
        let scan = content_equality_scan(&r, 1, 1, &Limits::default()).unwrap();
        assert!(!scan.holds);
        let w = scan.witness.unwrap();
        assert!(w.content_of_product.is_subset(&w.product_of_contents));
        assert_ne!(w.content_of_product, w.product_of_contents);
    }

    #[test]
    fn scan_holds_over_fields() {
        let gf4 = make_poly_quotient_ring(2, &[1, 1, 1]).unwrap();
        assert!(content_equality_scan(&gf4, 2, 2, &Limits::default()).unwrap().holds);
    }

    #[test]
    fn scan_budget() {
        let r = make_cyclic_ring(64).unwrap();
        let err = content_equality_scan(&r, 2, 2, &Limits::default()).unwrap_err();
        assert!(err.is_resource_cap());
    }

    #[test]
    fn first_witness_is_deterministic() {
        let r = triv_self(4);
        let a = content_equality_scan(&r, 1, 1, &Limits::default()).unwrap();
        let b = content_equality_scan(&r, 1, 1, &Limits::default()).unwrap();
        let (wa, wb) = (a.witness.unwrap(), b.witness.unwrap());
        assert_eq!((wa.f, wa.g), (wb.f, wb.g));
    }
}
