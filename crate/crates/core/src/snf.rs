//! Smith normal form over the integers.
//!
//! Entries are `i128` and every operation is checked, so growth in the
//! transforms surfaces as [`Error::Overflow`] instead of wrapping.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a `rows × cols` matrix; every row must have `cols` entries.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::InvalidArgument(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat().into_iter().map(i128::from).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument("dimension mismatch".into()));
        }
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc = self
                        .get(i, k)
                        .checked_mul(other.get(k, j))
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, non-negative,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: IntegerMatrix,
}

impl SmithForm {
    /// The `min(rows, cols)` diagonal entries.
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i)).collect()
    }
}

struct Work {
    rows: usize,
    cols: usize,
    a: Vec<i128>,
    u: Option<Vec<i128>>,
    v: Option<Vec<i128>>,
    v_inv: Option<Vec<i128>>,
}

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow)
}

/// `q` with `|a − q·p| ≤ |p|/2`.
fn nearest_quotient(a: i128, p: i128) -> i128 {
    let q = a / p;
    let r = a - q * p;
    if 2 * r.abs() > p.abs() {
        q + r.signum() * p.signum()
    } else {
        q
    }
}

fn ident(n: usize) -> Vec<i128> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

impl Work {
    fn at(&self, i: usize, j: usize) -> i128 {
        self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (c, m) = (self.cols, self.rows);
        for k in 0..c {
            self.a.swap(i * c + k, j * c + k);
        }
        if let Some(u) = &mut self.u {
            for k in 0..m {
                u.swap(i * m + k, j * m + k);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (c, m) = (self.cols, self.rows);
        for k in 0..m {
            self.a.swap(k * c + i, k * c + j);
        }
        if let (Some(v), Some(w)) = (&mut self.v, &mut self.v_inv) {
            for k in 0..c {
                v.swap(k * c + i, k * c + j);
                w.swap(i * c + k, j * c + k);
            }
        }
    }

    /// row_i ← row_i − q·row_j
    fn row_op(&mut self, i: usize, j: usize, q: i128) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        let (c, m) = (self.cols, self.rows);
        for k in 0..c {
            let t = ck(q.checked_mul(self.a[j * c + k]))?;
            self.a[i * c + k] = ck(self.a[i * c + k].checked_sub(t))?;
        }
        if let Some(u) = &mut self.u {
            for k in 0..m {
                let t = ck(q.checked_mul(u[j * m + k]))?;
                u[i * m + k] = ck(u[i * m + k].checked_sub(t))?;
            }
        }
        Ok(())
    }

    /// col_i ← col_i − q·col_j, and the inverse row operation on `v_inv`:
    /// row_j ← row_j + q·row_i.
    fn col_op(&mut self, i: usize, j: usize, q: i128) -> Result<()> {
        if q == 0 {
            return Ok(());
        }
        let (c, m) = (self.cols, self.rows);
        for k in 0..m {
            let t = ck(q.checked_mul(self.a[k * c + j]))?;
            self.a[k * c + i] = ck(self.a[k * c + i].checked_sub(t))?;
        }
        if let (Some(v), Some(w)) = (&mut self.v, &mut self.v_inv) {
            for k in 0..c {
                let t = ck(q.checked_mul(v[k * c + j]))?;
                v[k * c + i] = ck(v[k * c + i].checked_sub(t))?;
                let t = ck(q.checked_mul(w[i * c + k]))?;
                w[j * c + k] = ck(w[j * c + k].checked_add(t))?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        let (c, m) = (self.cols, self.rows);
        for k in 0..c {
            self.a[i * c + k] = -self.a[i * c + k];
        }
        if let Some(u) = &mut self.u {
            for k in 0..m {
                u[i * m + k] = -u[i * m + k];
            }
        }
    }

    fn run(&mut self) -> Result<()> {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            loop {
                // Smallest non-zero entry of the trailing block becomes the pivot.
                let mut best: Option<(usize, usize, i128)> = None;
                for i in t..self.rows {
                    for j in t..self.cols {
                        let x = self.at(i, j);
                        if x != 0 && best.is_none_or(|(_, _, b)| x.abs() < b) {
                            best = Some((i, j, x.abs()));
                        }
                    }
                }
                let Some((pi, pj, _)) = best else {
                    return Ok(());
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.at(t, t);
                let mut clean = true;
                for i in t + 1..self.rows {
                    let q = nearest_quotient(self.at(i, t), p);
                    self.row_op(i, t, q)?;
                    clean &= self.at(i, t) == 0;
                }
                for j in t + 1..self.cols {
                    let q = nearest_quotient(self.at(t, j), p);
                    self.col_op(j, t, q)?;
                    clean &= self.at(t, j) == 0;
                }
                if !clean {
                    continue;
                }
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| self.at(i, j) % p != 0));
                match bad {
                    Some(i) => self.row_op(t, i, -1)?,
                    None => break,
                }
            }
            if self.at(t, t) < 0 {
                self.negate_row(t);
            }
        }
        Ok(())
    }
}

/// Which transform rows/columns a reduction step touches.
#[derive(Clone, Copy)]
struct Step {
    i: usize,
    j: usize,
    /// Multiplier unit on `U`: row_i(U) += k·s·row_j(U).
    s: i128,
    /// Multiplier unit on `V`: col_j(V) −= k·t·col_i(V), row_i(V⁻¹) += k·t·row_j(V⁻¹).
    t: i128,
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Work {
    fn u_row(&self, i: usize) -> impl Iterator<Item = f64> + '_ {
        let m = self.rows;
        self.u.as_ref().expect("tracked")[i * m..(i + 1) * m].iter().map(|&x| x as f64)
    }

    fn v_col(&self, i: usize) -> impl Iterator<Item = f64> + '_ {
        let n = self.cols;
        self.v.as_ref().expect("tracked").iter().skip(i).step_by(n).map(|&x| x as f64)
    }

    fn w_row(&self, i: usize) -> impl Iterator<Item = f64> + '_ {
        let n = self.cols;
        self.v_inv.as_ref().expect("tracked")[i * n..(i + 1) * n].iter().map(|&x| x as f64)
    }

    /// Best multiple `k` of the step, if it shrinks the transforms.
    fn best_multiple(&self, st: Step) -> Option<i128> {
        let dot = |a: &mut dyn Iterator<Item = f64>, b: &mut dyn Iterator<Item = f64>| a.zip(b).map(|(x, y)| x * y).sum::<f64>();
        let (s, t) = (st.s as f64, st.t as f64);
        let (mut a, mut b) = (0.0, 0.0);
        if st.s != 0 {
            a += s * s * dot(&mut self.u_row(st.j), &mut self.u_row(st.j));
            b += s * dot(&mut self.u_row(st.i), &mut self.u_row(st.j));
        }
        if st.t != 0 {
            a += t * t * (dot(&mut self.v_col(st.i), &mut self.v_col(st.i)) + dot(&mut self.w_row(st.j), &mut self.w_row(st.j)));
            b += t * (dot(&mut self.w_row(st.i), &mut self.w_row(st.j)) - dot(&mut self.v_col(st.j), &mut self.v_col(st.i)));
        }
        if a == 0.0 {
            return None;
        }
        let opt = -b / a;
        let k = opt.round();
        (k != 0.0 && a * k * (k - 2.0 * opt) < -0.5 && k.abs() < 1e30).then_some(k as i128)
    }

    fn apply(&mut self, st: Step, k: i128) -> Result<()> {
        let (m, n) = (self.rows, self.cols);
        let c = ck(k.checked_mul(st.s))?;
        let c2 = ck(k.checked_mul(st.t))?;
        if c != 0 {
            let u = self.u.as_mut().expect("tracked");
            for x in 0..m {
                u[st.i * m + x] = ck(u[st.i * m + x].checked_add(ck(c.checked_mul(u[st.j * m + x]))?))?;
            }
        }
        if c2 != 0 {
            let v = self.v.as_mut().expect("tracked");
            for x in 0..n {
                v[x * n + st.j] = ck(v[x * n + st.j].checked_sub(ck(c2.checked_mul(v[x * n + st.i]))?))?;
            }
            let w = self.v_inv.as_mut().expect("tracked");
            for x in 0..n {
                w[st.i * n + x] = ck(w[st.i * n + x].checked_add(ck(c2.checked_mul(w[st.j * n + x]))?))?;
            }
        }
        Ok(())
    }

    /// Shrinks `U`, `V` and `V⁻¹` without changing `D`. Adding `c·row_j` to
    /// row `i` of `U` is compensated by subtracting `c'·col_i` from column
    /// `j` of `V` whenever `c·d_j = c'·d_i`; rows of `U` (columns of `V`)
    /// facing a zero row (column) of `D` move freely.
    fn reduce_transforms(&mut self) -> Result<()> {
        let (m, n) = (self.rows, self.cols);
        let r = m.min(n);
        let d: Vec<i128> = (0..r).map(|i| self.at(i, i)).collect();
        let dd = |i: usize| if i < r { d[i] } else { 0 };
        let mut steps = Vec::new();
        for i in 0..m.max(n) {
            for j in 0..m.max(n) {
                if i == j {
                    continue;
                }
                if i < m && j < m && dd(j) == 0 {
                    steps.push(Step { i, j, s: 1, t: 0 });
                }
                if i < n && j < n && dd(i) == 0 {
                    steps.push(Step { i, j, s: 0, t: 1 });
                }
                if i < r && j < r && d[i] != 0 && d[j] != 0 {
                    let s = d[i] / gcd(d[i], d[j]);
                    steps.push(Step { i, j, s, t: s * d[j] / d[i] });
                }
            }
        }
        for _ in 0..64 {
            let mut changed = false;
            for &st in &steps {
                if let Some(k) = self.best_multiple(st) {
                    self.apply(st, k)?;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(())
    }
}

fn to_matrix(rows: usize, cols: usize, data: &[i128]) -> IntegerMatrix {
    IntegerMatrix {
        rows,
        cols,
        data: data.to_vec(),
    }
}

fn work(m: &IntegerMatrix, transforms: bool) -> Work {
    Work {
        rows: m.rows,
        cols: m.cols,
        a: m.data.clone(),
        u: transforms.then(|| ident(m.rows)),
        v: transforms.then(|| ident(m.cols)),
        v_inv: transforms.then(|| ident(m.cols)),
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> Result<SmithForm> {
    let mut w = work(m, true);
    w.run()?;
    w.reduce_transforms()?;
    Ok(SmithForm {
        d: to_matrix(w.rows, w.cols, &w.a),
        u: to_matrix(w.rows, w.rows, w.u.as_ref().expect("tracked")),
        v: to_matrix(w.cols, w.cols, w.v.as_ref().expect("tracked")),
        v_inv: to_matrix(w.cols, w.cols, w.v_inv.as_ref().expect("tracked")),
    })
}

/// The non-zero diagonal entries of the Smith form, without transforms.
pub fn invariant_factors(m: &IntegerMatrix) -> Result<Vec<i64>> {
    let mut w = work(m, false);
    w.run()?;
    (0..w.rows.min(w.cols))
        .map(|i| w.at(i, i))
        .filter(|&x| x != 0)
        .map(|x| i64::try_from(x).map_err(|_| Error::Overflow))
        .collect()
}

/// A sublattice of `Zⁿ` kept as a row-echelon basis.
#[derive(Clone, Debug)]
pub struct Lattice {
    n: usize,
    /// `pivots[j]` is the basis row whose leading entry sits in column `j`.
    pivots: Vec<Option<Vec<i128>>>,
}

impl Lattice {
    pub fn new(n: usize) -> Self {
        Lattice {
            n,
            pivots: vec![None; n],
        }
    }

    pub fn insert(&mut self, v: &[i64]) -> Result<()> {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for j in 0..self.n {
            if v[j] == 0 {
                continue;
            }
            match self.pivots[j].take() {
                None => {
                    if v[j] < 0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                    self.pivots[j] = Some(v);
                    return Ok(());
                }
                Some(mut p) => {
                    // Euclid on the leading entries of p and v.
                    while v[j] != 0 {
                        let q = p[j] / v[j];
                        for k in j..self.n {
                            p[k] = ck(p[k].checked_sub(ck(q.checked_mul(v[k]))?))?;
                        }
                        std::mem::swap(&mut p, &mut v);
                    }
                    if p[j] < 0 {
                        p.iter_mut().for_each(|x| *x = -*x);
                    }
                    // Keep entries to the right of the pivot small.
                    for k in j + 1..self.n {
                        if let Some(r) = &self.pivots[k] {
                            let q = p[k].div_euclid(r[k]);
                            if q != 0 {
                                for l in k..self.n {
                                    p[l] = ck(p[l].checked_sub(ck(q.checked_mul(r[l]))?))?;
                                }
                            }
                        }
                    }
                    self.pivots[j] = Some(p);
                }
            }
        }
        Ok(())
    }

    pub fn basis(&self) -> Result<IntegerMatrix> {
        let rows: Vec<&Vec<i128>> = self.pivots.iter().flatten().collect();
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols: self.n,
            data: rows.into_iter().flatten().copied().collect(),
        })
    }
}
