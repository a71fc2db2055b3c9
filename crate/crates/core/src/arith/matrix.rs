use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::{ArithError, Field, Scalar};

/// A dense row-major matrix whose entries all live in one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one(field);
        }
        m
    }

    /// A 1×1 matrix holding `s`.
    pub fn scalar(s: Scalar) -> Matrix {
        Matrix {
            field: s.field(),
            rows: 1,
            cols: 1,
            data: vec![s],
        }
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let s = f(r, c);
                debug_assert_eq!(s.field(), field);
                data.push(s);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows, checking that they are rectangular and
    /// share the field.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, ArithError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * m);
        for row in rows {
            if row.len() != m {
                return Err(ArithError::DimensionMismatch("ragged rows".into()));
            }
            for s in row {
                if s.field() != field {
                    return Err(ArithError::FieldMismatch(field, s.field()));
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: n,
            cols: m,
            data,
        })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let r: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|row| row.iter().map(|&v| Scalar::from_i64(field, v)).collect())
            .collect();
        Matrix::from_rows(field, r).expect("rectangular literal")
    }

    /// A column vector.
    pub fn column(field: Field, v: Vec<Scalar>) -> Matrix {
        Matrix {
            field,
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    /// A row vector.
    pub fn row(field: Field, v: Vec<Scalar>) -> Matrix {
        Matrix {
            field,
            rows: 1,
            cols: v.len(),
            data: v,
        }
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.data
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vec(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    fn check_field(&self, other: &Matrix) -> Result<(), ArithError> {
        if self.field != other.field {
            Err(ArithError::FieldMismatch(self.field, other.field))
        } else {
            Ok(())
        }
    }

    /// Exact product; zero entries of `self` are skipped.
    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, ArithError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(ArithError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                let orow = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o = &*o + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, ArithError> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(ArithError::DimensionMismatch("sum of unequal shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix, ArithError> {
        self.try_add(&other.scale(&Scalar::from_i64(self.field, -1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self
            .data
            .iter()
            .map(|a| if a.is_zero() { a.clone() } else { a * s })
            .collect();
        Matrix { data, ..*self }
    }

    /// Kronecker product; the left factor indexes the most significant block.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "kron across fields");
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(self.field, rows, cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if b.is_zero() {
                            continue;
                        }
                        let r = r1 * other.rows + r2;
                        let c = c1 * other.cols + c2;
                        out.data[r * cols + c] = a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(field: Field, parts: &[Matrix]) -> Result<Matrix, ArithError> {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(ArithError::DimensionMismatch("vstack column count".into()));
            }
            if p.field != field {
                return Err(ArithError::FieldMismatch(field, p.field));
            }
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero(self.field);
                for (a, b) in self.data[r * self.cols..(r + 1) * self.cols].iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form with unit pivots, plus the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let p = m.get(row, c);
                    if p.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &(&factor * p);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : A v = 0}`.
    ///
    /// One vector per free column, in increasing column order; the vector for
    /// free column `f` has a 1 at `f`, zeros at the other free columns, and
    /// `-rref[i][f]` at the `i`-th pivot column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(self.field); self.cols];
                v[f] = Scalar::one(self.field);
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(self.field, n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Scalar::one(self.field)
            } else {
                Scalar::zero(self.field)
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(ArithError::SingularMatrix);
        }
        Ok(Matrix::from_fn(self.field, n, n, |r, c| red.get(r, n + c).clone()))
    }

    pub fn trace(&self) -> Result<Scalar, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch("trace of non-square matrix".into()));
        }
        let mut acc = Scalar::zero(self.field);
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        Ok(acc)
    }

    /// Integer power of a square matrix; negative powers invert first.
    pub fn pow(&self, e: i64) -> Result<Matrix, ArithError> {
        if !self.is_square() {
            return Err(ArithError::DimensionMismatch("power of non-square matrix".into()));
        }
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

// Operator forms panic on shape or field mismatch; they are for internal
// code whose shapes are correct by construction.

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product shape")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix sum shape")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix difference shape")
    }
}
