use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field, FieldAutomorphism};

/// Dense row-major matrix over a finite field.
#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && self.field == other.field
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{}]({})", self.rows, self.cols, self)
    }
}

/// Rows separated by `;`, entries by a space, each entry a comma-separated
/// little-endian coefficient list.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|&x| self.field.format_elem(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        f.write_str(&rows.join(";"))
    }
}

/// Reduced row echelon form with zero rows removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::FieldMismatch(format!(
                "entry {} not in {field}",
                bad.0
            )));
        }
        Ok(Matrix {
            field: Arc::clone(field),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: Arc::clone(field),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Self::scalar(field, n, Elem::ONE)
    }

    pub fn scalar(field: &Field, n: usize, value: Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, value);
        }
        m
    }

    pub fn diagonal(field: &Field, entries: &[Elem]) -> Self {
        let mut m = Self::zeros(field, entries.len(), entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Build from explicit rows; all rows must have length `cols`.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    /// Build from integer entries mapped into the prime field.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Self::from_rows(field, cols, &rows)
    }

    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        let rows = text
            .split(';')
            .map(|row| {
                row.split_whitespace()
                    .map(|e| field.parse_elem(e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let cols = rows[0].len();
        Self::from_rows(field, cols, &rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(
        &self,
        other: &Matrix,
        op: impl Fn(&crate::fields::FiniteField, Elem, Elem) -> Elem,
    ) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| op(&self.field, a, b))
            .collect();
        Ok(Matrix {
            field: Arc::clone(&self.field),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: Elem) -> Matrix {
        self.map(|x| self.field.mul(s, x))
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            field: Arc::clone(&self.field),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Apply a field automorphism entrywise.
    pub fn conjugate(&self, sigma: &FieldAutomorphism) -> Matrix {
        self.map(|x| sigma.apply(x))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// `Some(λ)` when the matrix equals `λ·I`.
    pub fn scalar_value(&self) -> Option<Elem> {
        if !self.is_square() {
            return None;
        }
        let lambda = if self.rows == 0 {
            Elem::ONE
        } else {
            self.get(0, 0)
        };
        (*self == Matrix::scalar(&self.field, self.rows, lambda)).then_some(lambda)
    }

    /// `Some(λ)` with `self = λ·other`, λ nonzero.
    pub fn proportionality(&self, other: &Matrix) -> Option<Elem> {
        if self.field != other.field || self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let idx = other.data.iter().position(|x| !x.is_zero())?;
        let lambda = self.field.div(self.data[idx], other.data[idx])?;
        if lambda.is_zero() {
            return None;
        }
        (*self == other.scale(lambda)).then_some(lambda)
    }

    pub fn pow(&self, mut e: u128) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(r, c)));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for r in rows.clone() {
            data.extend_from_slice(&self.row(r)[cols.clone()]);
        }
        Matrix {
            field: Arc::clone(&self.field),
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix {
            field: Arc::clone(&self.field),
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: Arc::clone(&self.field),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diagonal(a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.check_field(b)?;
        let n = a.rows + b.rows;
        let m = a.cols + b.cols;
        let mut out = Matrix::zeros(&a.field, n, m);
        for r in 0..a.rows {
            for c in 0..a.cols {
                out.set(r, c, a.get(r, c));
            }
        }
        for r in 0..b.rows {
            for c in 0..b.cols {
                out.set(a.rows + r, a.cols + c, b.get(r, c));
            }
        }
        Ok(out)
    }

    /// Unique reduced row echelon form; zero rows are dropped.
    pub fn rref(&self) -> RowEchelon {
        let f = &self.field;
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
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(inv, m.get(row, c));
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        let matrix = m.submatrix(0..rank, 0..m.cols);
        RowEchelon {
            matrix,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let ech = aug.rref();
        if ech.rank < n || ech.pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(ech.matrix.submatrix(0..n, n..2 * n))
    }

    /// Rows form a basis (in RREF) of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Matrix {
        let f = &self.field;
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &j in &free {
            let mut v = vec![Elem::ZERO; self.cols];
            v[j] = Elem::ONE;
            for (i, &p) in ech.pivots.iter().enumerate() {
                v[p] = f.neg(ech.matrix.get(i, j));
            }
            rows.push(v);
        }
        let k = Matrix::from_rows(f, self.cols, &rows).expect("kernel rows have matching length");
        k.rref().matrix
    }
}
