use super::{Construction, FiniteRing, HARD_MAX_ORDER};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::FiniteModule;

fn check_order(order: usize) -> Result<()> {
    if order > HARD_MAX_ORDER {
        return Err(Error::OrderCap {
            order,
            cap: HARD_MAX_ORDER,
        });
    }
    Ok(())
}

fn table(order: usize, f: impl Fn(usize, usize) -> usize) -> Vec<u16> {
    let mut t = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            t.push(f(a, b) as u16);
        }
    }
    t
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Z/n`.
pub fn make_cyclic_ring(n: u64) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::InvalidArgument("Z/0 is not a finite ring".into()));
    }
    let order = usize::try_from(n).map_err(|_| Error::OrderCap {
        order: usize::MAX,
        cap: HARD_MAX_ORDER,
    })?;
    check_order(order)?;
    let add = table(order, |a, b| (a + b) % order);
    let mul = table(order, |a, b| (a * b) % order);
    let labels = (0..order).map(|a| a.to_string()).collect();
    Ok(FiniteRing::from_tables(
        order,
        1 % order,
        add,
        mul,
        format!("Z/{n}"),
        labels,
        Construction::Cyclic { modulus: n },
    ))
}

/// Renders a coefficient vector (constant term first) as `x^2+2x+1`.
pub fn poly_to_string(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && k > 0 { String::new() } else { c.to_string() };
        let term = match k {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{k}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// `(Z/p)[x]/(modulus)` for a monic `modulus` of degree at least one,
/// coefficients listed constant term first.
pub fn make_poly_quotient_ring(p: u64, modulus: &[u64]) -> Result<FiniteRing> {
    let name = format!("PolyQ({p}, {})", poly_to_string(&reduce_coeffs(p, modulus)));
    make_poly_quotient_ring_named(p, modulus, name)
}

fn reduce_coeffs(p: u64, coeffs: &[u64]) -> Vec<u64> {
    let mut v: Vec<u64> = coeffs.iter().map(|c| c % p.max(1)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn make_poly_quotient_ring_named(
    p: u64,
    modulus: &[u64],
    name: String,
) -> Result<FiniteRing> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not a prime")));
    }
    let m = reduce_coeffs(p, modulus);
    if m.len() < 2 {
        return Err(Error::InvalidArgument(
            "modulus must have degree at least one".into(),
        ));
    }
    if *m.last().unwrap() != 1 {
        return Err(Error::InvalidArgument("modulus must be monic".into()));
    }
    let d = m.len() - 1;
    let order = (p as u128)
        .checked_pow(d as u32)
        .filter(|&o| o <= HARD_MAX_ORDER as u128)
        .ok_or(Error::OrderCap {
            order: usize::MAX,
            cap: HARD_MAX_ORDER,
        })? as usize;
    let pu = p as usize;
    let digits: Vec<Vec<u64>> = (0..order)
        .map(|mut i| {
            (0..d)
                .map(|_| {
                    let c = (i % pu) as u64;
                    i /= pu;
                    c
                })
                .collect()
        })
        .collect();
    let encode = |c: &[u64]| c.iter().rev().fold(0usize, |acc, &x| acc * pu + x as usize);
    let add = table(order, |a, b| {
        let s: Vec<u64> = (0..d).map(|k| (digits[a][k] + digits[b][k]) % p).collect();
        encode(&s)
    });
    let mul = table(order, |a, b| {
        let mut prod = vec![0u64; 2 * d - 1];
        for i in 0..d {
            for j in 0..d {
                prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p;
            }
        }
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..=d {
                let t = k - d + i;
                prod[t] = (prod[t] + (p - c) * m[i] % p) % p;
            }
        }
        encode(&prod[..d])
    });
    let labels = digits.iter().map(|c| poly_to_string(c)).collect();
    let one = if order == 1 { 0 } else { 1 };
    Ok(FiniteRing::from_tables(
        order,
        one,
        add,
        mul,
        name,
        labels,
        Construction::PolyQuotient { p, modulus: m },
    ))
}

/// `A × B` with componentwise operations; `(a, b)` has index `a·|B| + b`.
pub fn make_product_ring(a: &FiniteRing, b: &FiniteRing) -> Result<FiniteRing> {
    let (na, nb) = (a.order(), b.order());
    let order = na * nb;
    check_order(order)?;
    let split = |x: usize| (x / nb, x % nb);
    let add = table(order, |x, y| {
        let ((xa, xb), (ya, yb)) = (split(x), split(y));
        a.add(xa, ya) * nb + b.add(xb, yb)
    });
    let mul = table(order, |x, y| {
        let ((xa, xb), (ya, yb)) = (split(x), split(y));
        a.mul(xa, ya) * nb + b.mul(xb, yb)
    });
    let labels = (0..order)
        .map(|x| {
            let (xa, xb) = split(x);
            format!("({}, {})", a.label(xa), b.label(xb))
        })
        .collect();
    Ok(FiniteRing::from_tables(
        order,
        a.one() * nb + b.one(),
        add,
        mul,
        format!("Prod({}, {})", a.name(), b.name()),
        labels,
        Construction::Product(a.clone(), b.clone()),
    ))
}

/// Partition of `0..n` into cosets of an additive subgroup given by `member`.
/// Cosets are numbered in order of their smallest element.
pub(crate) fn cosets(
    n: usize,
    subgroup: &[usize],
    add: impl Fn(usize, usize) -> usize,
) -> (Vec<usize>, Vec<usize>) {
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &s in subgroup {
            coset_of[add(x, s)] = c;
        }
    }
    (coset_of, reps)
}

/// `A/I` together with the quotient surjection `A → A/I`.
pub fn make_quotient_ring(a: &FiniteRing, ideal: &Ideal) -> Result<(FiniteRing, Vec<usize>)> {
    if ideal.ring() != a {
        return Err(Error::RingMismatch);
    }
    let members = ideal.elements();
    let (coset_of, reps) = cosets(a.order(), &members, |x, y| a.add(x, y));
    let order = reps.len();
    let add = table(order, |x, y| coset_of[a.add(reps[x], reps[y])]);
    let mul = table(order, |x, y| coset_of[a.mul(reps[x], reps[y])]);
    let labels = reps.iter().map(|&r| a.label(r).to_string()).collect();
    let gens = ideal.generators().to_vec();
    let gen_text = if gens.is_empty() {
        "0".to_string()
    } else {
        gens.iter()
            .map(|&g| a.label(g).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let ring = FiniteRing::from_tables(
        order,
        coset_of[a.one()],
        add,
        mul,
        format!("Quot({}, {})", a.name(), gen_text),
        labels,
        Construction::Quotient {
            base: a.clone(),
            generators: gens,
            representatives: reps,
        },
    );
    Ok((ring, coset_of))
}

/// The trivial ring extension `A ∝ E`: pairs `(a, e)` with
/// `(a, e)(a', e') = (aa', ae' + a'e)`. The pair `(a, e)` has index
/// `a·|E| + e`.
pub fn make_trivial_extension(a: &FiniteRing, e: &FiniteModule) -> Result<FiniteRing> {
    if e.base() != a {
        return Err(Error::RingMismatch);
    }
    let (na, ne) = (a.order(), e.order());
    let order = na * ne;
    check_order(order)?;
    let split = |x: usize| (x / ne, x % ne);
    let add = table(order, |x, y| {
        let ((xa, xe), (ya, ye)) = (split(x), split(y));
        a.add(xa, ya) * ne + e.add(xe, ye)
    });
    let mul = table(order, |x, y| {
        let ((xa, xe), (ya, ye)) = (split(x), split(y));
        a.mul(xa, ya) * ne + e.add(e.act(xa, ye), e.act(ya, xe))
    });
    let labels = (0..order)
        .map(|x| {
            let (xa, xe) = split(x);
            format!("({}, {})", a.label(xa), e.label(xe))
        })
        .collect();
    Ok(FiniteRing::from_tables(
        order,
        a.one() * ne,
        add,
        mul,
        format!("Triv({}, {})", a.name(), e.name()),
        labels,
        Construction::TrivialExtension {
            base: a.clone(),
            module: e.clone(),
        },
    ))
}
