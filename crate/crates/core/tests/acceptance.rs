//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::Instant;

use pruferlab::decide::{is_arithmetical, is_gaussian, wdim_classification};
use pruferlab::dsl::eval_spec;
use pruferlab::poly::content_equality_scan;
use pruferlab::retract::TransferStatus;
use pruferlab::snf::{smith_normal_form, IntegerMatrix};
use pruferlab::suite::{
    dual_numbers_fixture, residue_extension_fixture, square_zero_content_fixture, subfield_fixture,
    total_quotient_fixture, transfer_audit, FixtureResult,
};
use pruferlab::zoo::{build_catalog, parse_predicate, search_catalog, universe, UniverseParams, ZooCatalog};
use pruferlab::Limits;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn limits() -> Limits {
    Limits::default()
}

fn catalog(max_order: usize) -> &'static ZooCatalog {
    static SMALL: OnceLock<ZooCatalog> = OnceLock::new();
    static FULL: OnceLock<ZooCatalog> = OnceLock::new();
    let cell = match max_order {
        16 => &SMALL,
        64 => &FULL,
        _ => unreachable!(),
    };
    cell.get_or_init(|| {
        build_catalog(UniverseParams { max_order, max_depth: 2 }, &limits()).expect("catalog builds without consistency failures")
    })
}

fn fixtures_ok(fs: &[FixtureResult]) -> Result<String, String> {
    let failed: Vec<String> = fs
        .iter()
        .filter(|f| !f.passed())
        .map(|f| format!("{}: {:?} {:?}", f.ring, f.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>(), f.error))
        .collect();
    if failed.is_empty() {
        Ok(fs.iter().map(|f| f.ring.as_str()).collect::<Vec<_>>().join(", "))
    } else {
        Err(failed.join("; "))
    }
}

fn criterion_1() -> Result<String, String> {
    let mut parts = Vec::new();
    for i in [2, 3] {
        let t = Instant::now();
        let f = square_zero_content_fixture(i, &limits());
        fixtures_ok(&[f])?;
        parts.push(format!("i = {i} in {:.2}s", t.elapsed().as_secs_f64()));
    }
    Ok(parts.join(", "))
}

fn criterion_2() -> Result<String, String> {
    fixtures_ok(&[dual_numbers_fixture(&limits())])
}

fn criterion_3() -> Result<String, String> {
    fixtures_ok(&[subfield_fixture(&limits())])
}

fn criterion_4() -> Result<String, String> {
    fixtures_ok(&[residue_extension_fixture(&limits()), total_quotient_fixture(&limits())])
}

fn criterion_5() -> Result<String, String> {
    let c = catalog(64);
    let mut violations = Vec::new();
    let mut classified = 0;
    for e in &c.entries {
        match &e.report {
            Some(r) => {
                classified += 1;
                for (p, q) in r.flags.chain_violations() {
                    violations.push(format!("{}: {p} but not {q}", e.spec));
                }
            }
            None => violations.push(format!("{}: unclassified ({:?})", e.spec, e.error)),
        }
    }
    let audit = transfer_audit(UniverseParams { max_order: 64, max_depth: 2 }, &limits());
    let mut verdicts = 0;
    for t in &audit {
        if let Some(err) = &t.error {
            violations.push(format!("{}: {err}", t.ring));
        }
        for v in &t.verdicts {
            verdicts += 1;
            if v.status == TransferStatus::Violated {
                violations.push(format!("{}: {} violated", t.ring, v.theorem));
            }
        }
    }
    if violations.is_empty() {
        Ok(format!(
            "{classified} rings, chain clean; {} retracts, {verdicts} transfer verdicts, none violated",
            audit.len()
        ))
    } else {
        Err(violations.join("; "))
    }
}

fn criterion_6() -> Result<String, String> {
    let lim = limits();
    let mut mismatches = Vec::new();
    let (mut a, mut b) = (0, 0);
    for spec in universe(UniverseParams { max_order: 32, max_depth: 2 }) {
        let r = eval_spec(&spec, &lim).map_err(|e| e.to_string())?;
        if r.order() <= 16 {
            a += 1;
            let tsang = is_gaussian(&r).holds;
            let scan = content_equality_scan(&r, 2, 2, &lim).map_err(|e| format!("{spec}: {e}"))?;
            if tsang != scan.holds {
                mismatches.push(format!("{spec}: Tsang {tsang}, scan {}", scan.holds));
            }
        }
        b += 1;
        let ar = is_arithmetical(&r, &lim).map_err(|e| format!("{spec}: {e}"))?;
        if ar.oracle != Some(ar.holds) {
            mismatches.push(format!("{spec}: arithmetical {} vs factorization oracle {:?}", ar.holds, ar.oracle));
        }
        let w = wdim_classification(&r, &lim).map_err(|e| format!("{spec}: {e}"))?;
        if w.flatness_oracle != Some(w.wdim_le_one) {
            mismatches.push(format!("{spec}: wdim_le_one {} vs flatness oracle {:?}", w.wdim_le_one, w.flatness_oracle));
        }
    }
    if mismatches.is_empty() {
        Ok(format!("(a) {a} rings of order ≤ 16, (b, c) {b} rings of order ≤ 32, exact agreement"))
    } else {
        Err(mismatches.join("; "))
    }
}

fn criterion_7() -> Result<String, String> {
    let c = catalog(16);
    let mut found = Vec::new();
    for (pred, want_some) in [
        ("prufer && !gaussian", true),
        ("gaussian && !arithmetical", true),
        ("arithmetical && !wdim_le_one", true),
        ("wdim_le_one && !arithmetical", false),
    ] {
        let p = parse_predicate(pred).map_err(|e| e.to_string())?;
        let out = search_catalog(&p, c);
        if out.matches.is_empty() == want_some {
            return Err(format!("{pred}: {} match(es)", out.matches.len()));
        }
        found.push(match out.matches.first() {
            Some(m) => format!("{pred} → {m}"),
            None => format!("{pred} → none"),
        });
    }
    Ok(found.join("; "))
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn big(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
}

fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| (0..b[0].len()).map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum()).collect())
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k = gcd of all k×k minors`; invariant factors are `d_k / d_{k-1}`.
fn determinantal_invariants(m: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (m.len(), m[0].len());
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=r.min(c) {
        let mut g = 0;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<BigInt>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| BigInt::from(m[i][j])).collect()).collect();
                let d = i128::try_from(det(&minor)).expect("6×6 minors of small entries fit");
                g = gcd(g, d);
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn criterion_8() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..1000 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let m = IntegerMatrix::from_rows(&rows, c).map_err(|e| e.to_string())?;
        let s = smith_normal_form(&m).map_err(|e| format!("case {case}: {e} for {rows:?}"))?;
        if mul(&mul(&big(&s.u), &big(&m)), &big(&s.v)) != big(&s.d) {
            return Err(format!("case {case}: U·M·V ≠ D for {rows:?}"));
        }
        for (name, x) in [("U", &s.u), ("V", &s.v)] {
            if det(&big(x)).abs() != BigInt::one() {
                return Err(format!("case {case}: det {name} ≠ ±1"));
            }
        }
        let diag = s.diagonal();
        for i in 0..r {
            for j in 0..c {
                if i != j && s.d.get(i, j) != 0 {
                    return Err(format!("case {case}: D not diagonal"));
                }
            }
        }
        if diag.iter().any(|&d| d < 0) || diag.windows(2).any(|w| (w[0] == 0 && w[1] != 0) || (w[0] != 0 && w[1] % w[0] != 0)) {
            return Err(format!("case {case}: divisibility chain fails on {diag:?}"));
        }
        let nonzero: Vec<i128> = diag.iter().copied().filter(|&d| d != 0).collect();
        if nonzero != determinantal_invariants(&rows) {
            return Err(format!("case {case}: {nonzero:?} disagrees with determinantal divisors"));
        }
    }
    Ok("1000 matrices up to 6×6, entries in [−20, 20]".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<String, String>); 8] = [
        ("nilpotent content in Z/2^i ∝ Z/2^i, i = 2, 3", criterion_1),
        ("F2 ∝ F2 arithmetical with infinite weak dimension", criterion_2),
        ("F2 ∝ F4 Gaussian, not arithmetical, witness 0 ∝ F4", criterion_3),
        ("Z/4 ∝ Z/4/(2) Gaussian as Z/4 is; Z/4 ∝ Z/2 total quotient ring", criterion_4),
        ("hierarchy and transfer audit, order ≤ 64, depth ≤ 2", criterion_5),
        ("decider and oracle agreement", criterion_6),
        ("separation witnesses, order ≤ 16", criterion_7),
        ("Smith normal form properties", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({secs:.2}s) {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({secs:.2}s) {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
