//! Exact integer linear algebra on matrices and symmetric forms.
//!
//! Everything here is arbitrary-precision integer or exact rational arithmetic;
//! no floating point is used anywhere in the module.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A dense `rows × cols` integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    /// All-zero matrix. Panics on an empty shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Dimension("matrix has no rows".into()));
        }
        let c = rows[0].len();
        if c == 0 {
            return Err(Error::Dimension("matrix has no columns".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as machine integers, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&BigInt::from(-1))
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m: Vec<Vec<BigInt>> = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(sign * &m[n - 1][n - 1])
    }

    /// Inverse of a unimodular matrix; `None` when the inverse is not integral.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    self.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
                row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(piv, col);
            let p = aug[col][col].clone();
            for x in aug[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in 0..2 * n {
                        let d = &f * &aug[col][c];
                        aug[r][c] -= d;
                    }
                }
            }
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let x = &aug[i][n + j];
                if !x.is_integer() {
                    return None;
                }
                inv.set(i, j, x.to_integer());
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = f * &self.data[src * self.cols + j];
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = f * &self.data[i * self.cols + src];
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self.data[r * self.cols + j];
            self.data[r * self.cols + j] = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Serializes as row-major nested arrays of JSON integers of unbounded size.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Number>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| serde_json::Number::from_str(&x.to_string()).expect("integer literal"))
                    .collect()
            })
            .collect();
        rows.serialize(serializer)
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    /// Parses the JSON literal form, e.g. `[[1,2],[3,-4]]`.
    fn from_str(s: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Syntax {
            offset: 0,
            message: format!("matrix literal: {e}"),
        })?;
        let bad = |m: &str| Error::Syntax { offset: 0, message: format!("matrix literal: {m}") };
        let rows = value.as_array().ok_or_else(|| bad("expected an array of rows"))?;
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("expected each row to be an array"))?;
            let mut r = Vec::with_capacity(row.len());
            for x in row {
                let n = x.as_number().ok_or_else(|| bad("entries must be integers"))?;
                let v = BigInt::from_str(&n.to_string()).map_err(|_| bad("entries must be integers"))?;
                r.push(v);
            }
            out.push(r);
        }
        IntMatrix::from_rows(out)
    }
}

/// A symmetric integer matrix representing a bilinear form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntForm(IntMatrix);

impl IntForm {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!("form must be square, got {}x{}", m.rows, m.cols)));
        }
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(IntForm(m))
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows)?)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = IntMatrix::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, BigInt::from(e));
        }
        IntForm(m)
    }

    pub fn hyperbolic() -> Self {
        IntForm::from_i64(&[[0, 1], [1, 0]]).expect("hyperbolic plane")
    }

    pub fn order(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        self.0.get(i, j)
    }

    pub fn determinant(&self) -> BigInt {
        self.0.determinant().expect("forms are square")
    }

    pub fn scale(&self, k: &BigInt) -> IntForm {
        IntForm(self.0.scale(k))
    }

    pub fn neg(&self) -> IntForm {
        IntForm(self.0.neg())
    }

    /// `vᵗ A w`
    pub fn pair(&self, v: &[BigInt], w: &[BigInt]) -> BigInt {
        let n = self.order();
        let mut s = BigInt::zero();
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !w[j].is_zero() {
                    s += &v[i] * self.get(i, j) * &w[j];
                }
            }
        }
        s
    }

    pub fn inertia(&self) -> Inertia {
        inertia(self)
    }

    pub fn parity(&self) -> Parity {
        parity(self)
    }

    pub fn signature(&self) -> i64 {
        let i = self.inertia();
        i.positive as i64 - i.negative as i64
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }
}

impl fmt::Display for IntForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for IntForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// `Pᵗ A P`, with `P` having as many rows as `A` has.
pub fn congruence(p: &IntMatrix, a: &IntForm) -> Result<IntForm> {
    if p.rows != a.order() {
        return Err(Error::Dimension(format!(
            "P has {} rows but the form has order {}",
            p.rows,
            a.order()
        )));
    }
    let ap = a.0.mul(p)?;
    let c = p.transpose().mul(&ap)?;
    Ok(IntForm(c))
}

pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    m.determinant()
}

pub fn direct_sum(a: &IntForm, b: &IntForm) -> IntForm {
    IntForm(a.0.block_diag(&b.0))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    /// Inertia of `-A`.
    pub fn swapped(self) -> Inertia {
        Inertia { positive: self.negative, negative: self.positive, zero: self.zero }
    }
}

/// Sylvester inertia by exact symmetric elimination over the rationals.
///
/// A nonzero diagonal pivot is eliminated on its own; when every remaining
/// diagonal entry vanishes but some off-diagonal `s_pq` does not, the pair
/// `{p, q}` spans a hyperbolic block of inertia (1, 1) and is eliminated as a
/// 2×2 step.
pub fn inertia(a: &IntForm) -> Inertia {
    let n = a.order();
    let mut s: Vec<Vec<BigRational>> = (0..n)
        .map(|i| a.0.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0usize, 0usize);

    while !active.is_empty() {
        if let Some(pi) = active.iter().position(|&i| !s[i][i].is_zero()) {
            let p = active.swap_remove(pi);
            let d = s[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for &i in &active {
                if s[i][p].is_zero() {
                    continue;
                }
                let f = &s[i][p] / &d;
                for &j in &active {
                    let delta = &f * &s[p][j];
                    s[i][j] -= delta;
                }
            }
            continue;
        }
        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..].iter().find(|&&j| !s[i][j].is_zero()).map(|&j| (i, j))
        });
        let Some((p, q)) = pair else { break };
        pos += 1;
        neg += 1;
        active.retain(|&i| i != p && i != q);
        // Schur complement against [[0, b], [b, 0]], whose inverse is [[0, 1/b], [1/b, 0]].
        let b = s[p][q].clone();
        let rows: Vec<(BigRational, BigRational)> =
            active.iter().map(|&i| (s[i][p].clone(), s[i][q].clone())).collect();
        for (x, &i) in active.iter().enumerate() {
            for (y, &j) in active.iter().enumerate() {
                let (ip, iq) = &rows[x];
                let (jp, jq) = &rows[y];
                let delta = (ip * jq + iq * jp) / &b;
                s[i][j] -= delta;
            }
        }
    }
    Inertia { positive: pos, negative: neg, zero: n - pos - neg }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Even iff every diagonal entry is even.
pub fn parity(a: &IntForm) -> Parity {
    if (0..a.order()).all(|i| a.get(i, i).is_even()) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `U · A · V = D` with `U`, `V` unimodular and `D` in Smith normal form.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Classic gcd-driven Smith normal form.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block goes to the pivot
        let Some((pi, pj)) = min_abs_entry(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                let nq = -q;
                d.add_row(i, t, &nq);
                u.add_row(i, t, &nq);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                let nq = -q;
                d.add_col(j, t, &nq);
                v.add_col(j, t, &nq);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = min_abs_in_cross(&d, t);
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let piv = d.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&piv)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry among the pivot, its column below and its row to the right.
fn min_abs_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_val = d.get(t, t).abs();
    for i in t + 1..d.rows {
        let x = d.get(i, t).abs();
        if !x.is_zero() && x < best_val {
            best = (i, t);
            best_val = x;
        }
    }
    for j in t + 1..d.cols {
        let x = d.get(t, j).abs();
        if !x.is_zero() && x < best_val {
            best = (t, j);
            best_val = x;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    fn f(rows: &[&[i64]]) -> IntForm {
        IntForm::from_i64(rows).unwrap()
    }

    #[test]
    fn congruence_examples() {
        let c = congruence(&m(&[&[1], &[0]]), &IntForm::diagonal(&[1, -1])).unwrap();
        assert_eq!(c, f(&[&[1]]));

        let c = congruence(&m(&[&[2, 1], &[1, -2]]), &IntForm::diagonal(&[1, 1])).unwrap();
        assert_eq!(c, IntForm::diagonal(&[5, 5]));

        // quaternion matrix for (1,1,1,0): all ten distinct entries of PᵗP
        let q = m(&[&[1, 1, 1, 0], &[1, -1, 0, 1], &[1, 0, -1, -1], &[0, -1, 1, -1]]);
        let c = congruence(&q, &IntForm::diagonal(&[1, 1, 1, 1])).unwrap();
        for i in 0..4 {
            for j in i..4 {
                let want = if i == j { 3 } else { 0 };
                assert_eq!(c.get(i, j), &BigInt::from(want), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn congruence_dimension_mismatch() {
        let err = congruence(&m(&[&[1, 0]]), &IntForm::diagonal(&[1, 1])).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(IntForm::diagonal(&[1, -1]).determinant(), BigInt::from(-1));
        assert_eq!(IntForm::hyperbolic().determinant(), BigInt::from(-1));
        let a = direct_sum(&IntForm::diagonal(&[1, 1, -1]), &IntForm::hyperbolic());
        assert_eq!(a.determinant(), BigInt::from(1));
        assert_eq!(m(&[&[2, 3], &[4, 6]]).determinant().unwrap(), BigInt::zero());
        assert_eq!(m(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]]).determinant().unwrap(), BigInt::from(-3));
        assert!(m(&[&[1, 2]]).determinant().is_err());
    }

    #[test]
    fn inertia_examples() {
        let i3 = IntForm::diagonal(&[1, 1, 1]);
        assert_eq!(i3.inertia(), Inertia { positive: 3, negative: 0, zero: 0 });
        assert_eq!(IntForm::hyperbolic().inertia(), Inertia { positive: 1, negative: 1, zero: 0 });
        let h = IntForm::hyperbolic();
        let a = direct_sum(
            &direct_sum(&IntForm::diagonal(&[1, 1, -1]), &h),
            &direct_sum(&h, &h),
        );
        assert_eq!(a.inertia(), Inertia { positive: 5, negative: 4, zero: 0 });
        let degenerate = f(&[&[1, 1], &[1, 1]]);
        assert_eq!(degenerate.inertia(), Inertia { positive: 1, negative: 0, zero: 1 });
        let zero = f(&[&[0, 0], &[0, 0]]);
        assert_eq!(zero.inertia(), Inertia { positive: 0, negative: 0, zero: 2 });
    }

    #[test]
    fn parity_examples() {
        assert_eq!(IntForm::hyperbolic().parity(), Parity::Even);
        assert_eq!(IntForm::diagonal(&[1, -1]).parity(), Parity::Odd);
        let h = IntForm::hyperbolic();
        let four = direct_sum(&direct_sum(&h, &h), &direct_sum(&h, &h));
        assert_eq!(four.parity(), Parity::Even);
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum(&f(&[&[1]]), &f(&[&[-1]])), IntForm::diagonal(&[1, -1]));
        assert_eq!(
            direct_sum(&IntForm::diagonal(&[1, 1]), &IntForm::diagonal(&[1, 1])),
            IntForm::diagonal(&[1, 1, 1, 1])
        );
    }

    fn check_snf(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.determinant().unwrap().abs().is_one());
        assert!(s.v.determinant().unwrap().abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let fs = s.invariant_factors();
        for w in fs.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn smith_examples() {
        let s = check_snf(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.d, m(&[&[1, 0], &[0, 6]]));
        let s = check_snf(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let s = check_snf(&m(&[&[0]]));
        assert_eq!(s.d, m(&[&[0]]));
        let s = check_snf(&m(&[&[1, 0, -1], &[0, 1, -1]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::one(), BigInt::one()]);
        let s = check_snf(&m(&[&[4, 6, 2], &[6, 9, 3], &[2, 3, 7]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn unimodular_inverse() {
        let q = m(&[&[1, 1, 1], &[1, 0, 1], &[0, -1, -1]]);
        let inv = q.inverse_unimodular().unwrap();
        assert_eq!(q.mul(&inv).unwrap(), IntMatrix::identity(3));
        assert!(m(&[&[2, 0], &[0, 1]]).inverse_unimodular().is_none());
    }

    #[test]
    fn matrix_literal_round_trip() {
        let a = m(&[&[1, -2], &[30, 0]]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "[[1,-2],[30,0]]");
        assert_eq!(json.parse::<IntMatrix>().unwrap(), a);
        let big: IntMatrix = "[[123456789012345678901234567890]]".parse().unwrap();
        assert_eq!(serde_json::to_string(&big).unwrap(), "[[123456789012345678901234567890]]");
        assert!("[[1,2],[3]]".parse::<IntMatrix>().is_err());
        assert!("[[1.5]]".parse::<IntMatrix>().is_err());
    }
}
