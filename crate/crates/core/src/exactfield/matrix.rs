use std::fmt;

use super::arith::Arith;
use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// A dense matrix over one field of the tower, stored row-major.
#[derive(Clone)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of Gauss–Jordan elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rank: usize,
    /// Pivot column of each nonzero row of `reduced`.
    pub pivots: Vec<usize>,
    pub reduced: ExactMatrix,
}

impl ExactMatrix {
    pub fn from_entries(field: &Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            field.check(e).map_err(|_| Error::FieldMismatch(format!("entry not in {}", field)))?;
        }
        Ok(ExactMatrix { field: field.clone(), rows, cols, entries })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_entries(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: &Field, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        ExactMatrix { field: field.clone(), rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Self::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &Field, n: usize, c: &Scalar) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = c.clone();
        }
        m
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

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    fn same_shape(&self, other: &ExactMatrix, op: &str) -> Result<()> {
        self.field.ensure_same(&other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{op} of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_shape(other, "sum")?;
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f.add(a, b)).collect();
        Ok(ExactMatrix { entries, ..self.clone() })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.same_shape(other, "difference")?;
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f.sub(a, b)).collect();
        Ok(ExactMatrix { entries, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        let f = &self.field;
        ExactMatrix { entries: self.entries.iter().map(|a| f.mul(a, c)).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> ExactMatrix {
        let f = &self.field;
        ExactMatrix { entries: self.entries.iter().map(|a| f.neg(a)).collect(), ..self.clone() }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.field.ensure_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(&out.entries[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { field: self.field.clone(), rows: self.cols, cols: self.rows, entries }
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.field.ensure_same(&other.field)?;
        if self.cols != other.cols {
            return Err(Error::Shape("vstack with different column counts".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(ExactMatrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: r, pivots, reduced: m }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.rref().kernel_basis()
    }

    /// Determinant by elimination; `Shape` error if not square.
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let f = &self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("pivot is nonzero");
            for i in c + 1..m.rows {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Monic minimal polynomial, constant term first.
    pub fn minimal_polynomial(&self) -> Result<Vec<Scalar>> {
        if !self.is_square() {
            return Err(Error::Shape(format!("minimal polynomial of a {}x{} matrix", self.rows, self.cols)));
        }
        let f = &self.field;
        let mut powers = vec![ExactMatrix::identity(f, self.rows)];
        loop {
            let k = powers.len();
            // Columns are the flattened powers I, A, …, A^{k-1}.
            let mut cols = ExactMatrix::zeros(f, self.rows * self.cols, k);
            for (j, p) in powers.iter().enumerate() {
                for (i, e) in p.entries.iter().enumerate() {
                    cols.set(i, j, e.clone());
                }
            }
            if let Some(dep) = cols.kernel_basis().into_iter().next() {
                let lead = f.inv(&dep[k - 1]).expect("the first dependency involves the top power");
                return Ok(dep.iter().map(|c| f.mul(c, &lead)).collect());
            }
            let next = powers[k - 1].mul(self)?;
            powers.push(next);
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl Rref {
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let m = &self.reduced;
        let f = &m.field;
        let mut is_pivot = vec![false; m.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..m.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); m.cols];
                v[free] = f.one();
                for (row, &p) in self.pivots.iter().enumerate() {
                    v[p] = f.neg(m.get(row, free));
                }
                v
            })
            .collect()
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_arithmetic(&other.field)
            && self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
    }
}

impl Eq for ExactMatrix {}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.field.format(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Whether the row spaces of `a` and `b` coincide.
pub fn same_row_space(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    let ra = a.rank();
    let rb = b.rank();
    Ok(ra == rb && a.vstack(b)?.rank() == ra)
}
