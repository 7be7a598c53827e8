use std::fmt;

use serde_json::{json, Value};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::galois::{Embedding, FieldElement, FiniteField};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(
        field: &FiniteField,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            field.check_same(e.field())?;
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(field: &FiniteField, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.field.check_same(&rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + &(a * rhs.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.field.check_same(&rhs.field)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Matrix::new(&self.field, self.rows, self.cols, entries)
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// `[self | rhs]`.
    pub fn hconcat(&self, rhs: &Matrix) -> Result<Matrix> {
        self.field.check_same(&rhs.field)?;
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch("hconcat row counts".into()));
        }
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(rhs.row(i)).cloned().collect())
            .collect();
        Matrix::from_rows(&self.field, rows)
    }

    /// `[self ; rhs]`.
    pub fn vconcat(&self, rhs: &Matrix) -> Result<Matrix> {
        self.field.check_same(&rhs.field)?;
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("vconcat column counts".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(rhs.entries.iter().cloned());
        Matrix::new(&self.field, self.rows + rhs.rows, self.cols, entries)
    }

    /// Entrywise image in the superfield of `emb`.
    pub fn map_into(&self, emb: &Embedding) -> Result<Matrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| emb.embed(e))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(emb.sup(), self.rows, self.cols, entries)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
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
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullspace_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right nullspace `{v : self * v = 0}`, one vector per row.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(&self.field, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, self.field.one());
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(k, pc, -r.get(i, f));
            }
        }
        basis
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> Result<FieldElement> {
        self.require_square()?;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let aug = self.hconcat(&Matrix::identity(&self.field, n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let rows = (0..n).map(|i| r.row(i)[n..].to_vec()).collect();
        Matrix::from_rows(&self.field, rows)
    }

    /// `λ -> det(self - λI)`, leading coefficient `(-1)^n`.
    ///
    /// Computed by evaluating the determinant at `n + 1` distinct points and
    /// interpolating; when the field has at most `n` elements the points are
    /// drawn from an extension and the coefficients pulled back.
    pub fn char_poly(&self) -> Result<Poly> {
        self.require_square()?;
        let n = self.rows;
        let q = self.field.order_u64();
        let emb = if q.is_some_and(|q| q > n as u64) {
            Embedding::identity(&self.field)
        } else {
            let q = q.expect("fields with at most n elements fit in u64");
            let mut t = 1;
            let mut size = q;
            while size <= n as u64 {
                size *= q;
                t += 1;
            }
            let ext = FiniteField::new(self.field.characteristic(), self.field.degree() * t, None)?;
            Embedding::new(&self.field, &ext)?
        };
        let ext = emb.sup().clone();
        let lifted = self.map_into(&emb)?;
        let mut xs = Vec::with_capacity(n + 1);
        let mut ys = Vec::with_capacity(n + 1);
        for i in 0..=n as u64 {
            let lambda = ext.from_index(i);
            let shifted = lifted.try_add(&Matrix::identity(&ext, n).scale(&-&lambda))?;
            ys.push(shifted.determinant()?);
            xs.push(lambda);
        }
        let lifted_poly = Poly::interpolate(&ext, &xs, &ys)?;
        lifted_poly.pull_back(&emb)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.entries.iter().map(|e| e.to_coeff_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {:?}",
            self.rows, self.cols, self.field
        )?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
