//! Exact integer matrices and the normal forms built on them.
//!
//! Every entry is a [`BigInt`]; nothing here ever rounds or wraps. The Smith
//! normal form is the workhorse: Bowen–Franks groups, kernels and integer
//! solvability are all read off from it.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("empty {rows}x{cols} matrix")));
        }
        Ok(IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n.max(1), n.max(1)).expect("nonempty");
        for i in 0..m.rows {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Result<Self> {
        let mut m = IntMatrix::zeros(rows, cols)?;
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from rows of machine integers; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        IntMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j].into())
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone()).expect("nonempty")
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols)?;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `id - self`, for square matrices.
    pub fn identity_minus(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("identity_minus needs a square matrix".into()));
        }
        IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            let delta = if i == j { BigInt::one() } else { BigInt::zero() };
            delta - &self[(i, j)]
        })
    }

    pub fn pow(&self, mut exp: u32) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            if self[(src, j)].is_zero() {
                continue;
            }
            let delta = factor * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            if self[(i, src)].is_zero() {
                continue;
            }
            let delta = factor * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = -x;
        }
    }

    /// Position of a smallest-magnitude nonzero entry in the block `[t.., t..]`.
    fn min_abs_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let mag = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                    let unit = mag.is_one();
                    best = Some((i, j, mag));
                    if unit {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        struct Row<'a>(&'a [BigInt]);
        impl Serialize for Row<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                crate::serde_int::ints(self.0, s)
            }
        }
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&Row(self.row(i)))?;
        }
        seq.end()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal of `D`: nonnegative, each entry dividing the next, zeros last.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with transforms.
///
/// Each round moves a smallest-magnitude nonzero entry of the trailing block to
/// the pivot and clears its row and column by Euclidean division. Rounds repeat
/// until the pivot divides the whole block.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    if let Some(r) = small::smith_normal_form(m) {
        return r;
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = a.min_abs_nonzero(t) else {
                // trailing block is zero; remaining diagonal stays zero
                return SnfResult { d: a, u, v };
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { d: a, u, v }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} matrix",
            m.rows, m.cols
        )));
    }
    if let Some(d) = small::determinant(m) {
        return Ok(d);
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if negate { -det } else { det })
}

/// A basis of the integer kernel `{v : M v = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    (snf.rank()..m.cols).map(|j| snf.v.column(j)).collect()
}

/// Some integer `x` with `M x = b`, or `None` when no integer solution exists.
pub fn solve_linear(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows {
        return Err(Error::Shape(format!(
            "right-hand side of length {} against {} rows",
            b.len(),
            m.rows
        )));
    }
    let snf = smith_normal_form(m);
    Ok(solve_with_snf(&snf, b))
}

pub(crate) fn solve_with_snf(snf: &SnfResult, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.u.mul_vec(b).expect("U is rows x rows");
    let diag = snf.d.diagonal();
    let mut y = vec![BigInt::zero(); snf.v.rows];
    for (i, ci) in c.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                let (q, r) = ci.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            _ => {
                if !ci.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(snf.v.mul_vec(&y).expect("V is cols x cols"))
}

/// Machine-word versions of the two eliminations above, step for step the
/// same algorithms; `None` as soon as any intermediate value overflows.
mod small {
    use super::*;
    use num_traits::{PrimInt, ToPrimitive};

    struct Dense<T> {
        rows: usize,
        cols: usize,
        data: Vec<T>,
    }

    impl<T: Copy + Default + From<i8>> Dense<T> {
        fn from_int(m: &IntMatrix, conv: impl Fn(&BigInt) -> Option<T>) -> Option<Self> {
            let data = m.data.iter().map(conv).collect::<Option<Vec<T>>>()?;
            Some(Dense { rows: m.rows, cols: m.cols, data })
        }

        fn identity(n: usize) -> Self {
            let mut data = vec![T::default(); n * n];
            for i in 0..n {
                data[i * n + i] = T::from(1);
            }
            Dense { rows: n, cols: n, data }
        }

        fn at(&self, i: usize, j: usize) -> T {
            self.data[i * self.cols + j]
        }

        fn set(&mut self, i: usize, j: usize, x: T) {
            self.data[i * self.cols + j] = x;
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

        fn to_int(&self) -> IntMatrix
        where
            BigInt: From<T>,
        {
            IntMatrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|&x| BigInt::from(x)).collect(),
            }
        }
    }

    impl Dense<i64> {
        fn add_row_multiple(&mut self, dst: usize, src: usize, q: i64) -> Option<()> {
            for j in 0..self.cols {
                let s = self.at(src, j);
                if s != 0 {
                    let v = self.at(dst, j).checked_add(q.checked_mul(s)?)?;
                    self.set(dst, j, v);
                }
            }
            Some(())
        }

        fn add_col_multiple(&mut self, dst: usize, src: usize, q: i64) -> Option<()> {
            for i in 0..self.rows {
                let s = self.at(i, src);
                if s != 0 {
                    let v = self.at(i, dst).checked_add(q.checked_mul(s)?)?;
                    self.set(i, dst, v);
                }
            }
            Some(())
        }

        fn negate_row(&mut self, i: usize) -> Option<()> {
            for j in 0..self.cols {
                let v = self.at(i, j).checked_neg()?;
                self.set(i, j, v);
            }
            Some(())
        }

        fn min_abs_nonzero(&self, t: usize) -> Option<(usize, usize)> {
            let mut best: Option<(usize, usize, u64)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    let x = self.at(i, j);
                    if x == 0 {
                        continue;
                    }
                    let mag = x.unsigned_abs();
                    if best.is_none_or(|(_, _, b)| mag < b) {
                        if mag == 1 {
                            return Some((i, j));
                        }
                        best = Some((i, j, mag));
                    }
                }
            }
            best.map(|(i, j, _)| (i, j))
        }
    }

    fn floor_div(x: i64, d: i64) -> Option<i64> {
        x.checked_div(d)?;
        Some(Integer::div_floor(&x, &d))
    }

    pub(super) fn smith_normal_form(m: &IntMatrix) -> Option<SnfResult> {
        let (rows, cols) = (m.rows, m.cols);
        let mut a = Dense::<i64>::from_int(m, |x| x.to_i64())?;
        let mut u = Dense::<i64>::identity(rows);
        let mut v = Dense::<i64>::identity(cols);
        let done = |a: &Dense<i64>, u: &Dense<i64>, v: &Dense<i64>| SnfResult {
            d: a.to_int(),
            u: u.to_int(),
            v: v.to_int(),
        };

        for t in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = a.min_abs_nonzero(t) else {
                    return Some(done(&a, &u, &v));
                };
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);

                let pivot = a.at(t, t);
                let mut clean = true;
                for i in t + 1..rows {
                    let x = a.at(i, t);
                    if x == 0 {
                        continue;
                    }
                    let q = floor_div(x, pivot)?.checked_neg()?;
                    a.add_row_multiple(i, t, q)?;
                    u.add_row_multiple(i, t, q)?;
                    clean &= a.at(i, t) == 0;
                }
                for j in t + 1..cols {
                    let x = a.at(t, j);
                    if x == 0 {
                        continue;
                    }
                    let q = floor_div(x, pivot)?.checked_neg()?;
                    a.add_col_multiple(j, t, q)?;
                    v.add_col_multiple(j, t, q)?;
                    clean &= a.at(t, j) == 0;
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a.at(i, j) % pivot != 0));
                match offender {
                    Some(i) => {
                        a.add_row_multiple(t, i, 1)?;
                        u.add_row_multiple(t, i, 1)?;
                    }
                    None => break,
                }
            }
            if a.at(t, t) < 0 {
                a.negate_row(t)?;
                u.negate_row(t)?;
            }
        }
        Some(done(&a, &u, &v))
    }

    pub(super) fn determinant(m: &IntMatrix) -> Option<BigInt> {
        bareiss::<i64>(m, |x| x.to_i64()).or_else(|| bareiss::<i128>(m, |x| x.to_i128()))
    }

    fn bareiss<T>(m: &IntMatrix, conv: impl Fn(&BigInt) -> Option<T>) -> Option<BigInt>
    where
        T: PrimInt + Default + From<i8>,
        BigInt: From<T>,
    {
        let n = m.rows;
        let mut a = Dense::<T>::from_int(m, conv)?;
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.at(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Some(BigInt::zero()),
                }
            }
            let akk = a.at(k, k);
            for i in k + 1..n {
                let aik = a.at(i, k);
                for j in k + 1..n {
                    let num = a.at(i, j).checked_mul(&akk)?.checked_sub(&aik.checked_mul(&a.at(k, j))?)?;
                    a.set(i, j, num.checked_div(&prev)?);
                }
            }
            prev = akk;
        }
        let det = BigInt::from(a.at(n - 1, n - 1));
        Some(if negate { -det } else { det })
    }
}

pub fn to_bigints<T: Into<BigInt> + Copy>(v: &[T]) -> Vec<BigInt> {
    v.iter().map(|&x| x.into()).collect()
}
