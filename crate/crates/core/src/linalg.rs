//! Dense linear algebra over GF(q).
//!
//! Elimination is always leftmost-pivot, first-nonzero-row, so every
//! derived matrix is bit-for-bit reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gf::{Fe, Field};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrices are over different fields")]
    FieldMismatch,
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("invalid matrix text: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Result of [`Matrix::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// JSON form: the field spec plus an array of rows of canonical integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: String,
    pub rows: Vec<Vec<u64>>,
}

impl Matrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<Fe>>) -> Result<Matrix, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            if let Some(bad) = r.iter().find(|&&a| !field.contains(a)) {
                return Err(LinalgError::Dimension(format!("entry {} outside GF({})", bad.0, field.order())));
            }
            data.extend(r);
        }
        Ok(Matrix { field: field.clone(), rows: n, cols, data })
    }

    pub fn from_u64_rows(field: &Field, cols: usize, rows: &[Vec<u64>]) -> Result<Matrix, LinalgError> {
        Matrix::from_rows(field, cols, rows.iter().map(|r| r.iter().map(|&v| Fe(v)).collect()).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows
    }
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Fe]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[Fe]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    /// `M v^T` for a vector `v` of length `ncols`.
    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        self.rows().map(|r| f.sum(r.iter().zip(v).map(|(&a, &b)| f.mul(a, b)))).collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(LinalgError::Dimension(format!("{} vs {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Submatrix formed by the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    /// Multiplies column `j` by `c[j]`.
    pub fn scale_columns(&self, c: &[Fe]) -> Matrix {
        assert_eq!(c.len(), self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.field.mul(self.get(i, j), c[j]));
            }
        }
        out
    }

    /// Reduced row echelon form, with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_reduced(&self) -> Matrix {
        let r = self.rref();
        let mut m = r.matrix;
        m.data.truncate(r.rank * m.cols);
        m.rows = r.rank;
        m
    }

    /// Rows spanning the right null space, one per free column, with a 1 in
    /// that free column.
    pub fn kernel_basis(&self) -> Matrix {
        let f = &self.field;
        let Rref { matrix: m, rank, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Matrix::zero(f, 0, self.cols);
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Fe::ZERO; self.cols];
            v[free] = Fe::ONE;
            for (i, &p) in pivots.iter().enumerate().take(rank) {
                v[p] = f.neg(m.get(i, free));
            }
            out.push_row(&v);
        }
        out
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Fe, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Dimension(format!("det of {}x{}", self.rows, self.cols)));
        }
        let f = &self.field;
        let mut m = self.clone();
        let mut det = Fe::ONE;
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Fe::ZERO);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            for i in c + 1..m.rows {
                let factor = f.mul(m.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// `det(G G^T)`; requires full row rank.
    pub fn gram_det(&self) -> Result<Fe, LinalgError> {
        let rank = self.rank();
        if rank != self.rows {
            return Err(LinalgError::RankDeficient { rank, rows: self.rows });
        }
        self.mul(&self.transpose())?.det()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zero(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fe::ONE);
        }
        let r = aug.rref();
        if r.pivots.iter().take_while(|&&p| p < n).count() != n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.matrix.select_columns(&cols))
    }

    /// Whether `A` and `B` have the same row space.
    pub fn row_space_equal(a: &Matrix, b: &Matrix) -> Result<bool, LinalgError> {
        if a.field != b.field {
            return Err(LinalgError::FieldMismatch);
        }
        if a.cols != b.cols {
            return Err(LinalgError::Dimension(format!("{} vs {} columns", a.cols, b.cols)));
        }
        Ok(a.row_reduced() == b.row_reduced())
    }

    /// One row per line, canonical integers separated by commas.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in self.rows() {
            let line: Vec<String> = r.iter().map(|a| a.0.to_string()).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }

    pub fn from_text(field: &Field, text: &str) -> Result<Matrix, LinalgError> {
        let mut rows = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let row: Result<Vec<u64>, _> = line.split(',').map(|t| t.trim().parse::<u64>()).collect();
            rows.push(row.map_err(|e| LinalgError::Parse(e.to_string()))?);
        }
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_u64_rows(field, cols, &rows)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            field: self.field.spec_string(),
            rows: self.rows().map(|r| r.iter().map(|a| a.0).collect()).collect(),
        }
    }

    pub fn from_json(j: &MatrixJson) -> Result<Matrix, LinalgError> {
        let field = Field::parse(&j.field).map_err(|e| LinalgError::Parse(e.to_string()))?;
        let cols = j.rows.first().map_or(0, Vec::len);
        Matrix::from_u64_rows(&field, cols, &j.rows)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        write!(f, "{}", self.to_text())
    }
}
