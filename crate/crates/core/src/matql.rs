//! Dense exact matrices over a [`SmallField`].
//!
//! Text form: one row per line, entries as element indices separated by a
//! single space.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::smallfield::{Fq, SmallField};

#[derive(Clone)]
pub struct MatrixFq {
    field: Arc<SmallField>,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl PartialEq for MatrixFq {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && *self.field == *other.field
    }
}

impl Eq for MatrixFq {}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "MatrixFq {}x{} over F_{}",
            self.rows,
            self.cols,
            self.field.order()
        )?;
        write!(f, "{self}")
    }
}

impl fmt::Display for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            let row = self.row(r);
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl MatrixFq {
    pub fn new(field: Arc<SmallField>, rows: usize, cols: usize, data: Vec<Fq>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| x.index() >= field.order()) {
            return Err(Error::ShapeMismatch(format!(
                "entry {bad} is not an element of F_{}",
                field.order()
            )));
        }
        Ok(MatrixFq {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Arc<SmallField>, rows: usize, cols: usize) -> Self {
        MatrixFq {
            field,
            rows,
            cols,
            data: vec![Fq::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Arc<SmallField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    /// Builds a matrix from integer rows; `cols` is needed to describe
    /// matrices with no rows.
    pub fn from_rows(field: Arc<SmallField>, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for &x in row {
                if x as usize >= field.order() {
                    return Err(Error::ShapeMismatch(format!(
                        "entry {x} in row {i} is not an element of F_{}",
                        field.order()
                    )));
                }
                data.push(Fq::new(x as u8));
            }
        }
        Self::new(field, rows.len(), cols, data)
    }

    /// Parses the text form. Blank lines are ignored; `cols` fixes the
    /// width of a matrix with no rows.
    pub fn parse(field: Arc<SmallField>, cols: usize, text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<u32>().map_err(|_| {
                        Error::Parse(format!("line {}: bad matrix entry {tok:?}", lineno + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(field, cols, &rows)
    }

    pub fn field(&self) -> &Arc<SmallField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fq {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: Fq) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Fq] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.index() as u32).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            if r >= self.rows {
                return Err(Error::ShapeMismatch(format!(
                    "row {r} out of range for {} rows",
                    self.rows
                )));
            }
            data.extend_from_slice(self.row(r));
        }
        Self::new(self.field.clone(), rows.len(), self.cols, data)
    }

    pub fn select_cols(&self, cols: std::ops::Range<usize>) -> Result<Self> {
        if cols.end > self.cols || cols.start > cols.end {
            return Err(Error::ShapeMismatch(format!(
                "column range {cols:?} out of range for {} columns",
                self.cols
            )));
        }
        let width = cols.end - cols.start;
        let mut data = Vec::with_capacity(self.rows * width);
        for r in 0..self.rows {
            data.extend_from_slice(&self.row(r)[cols.clone()]);
        }
        Self::new(self.field.clone(), self.rows, width, data)
    }

    /// Copies `block` into this matrix with its top-left corner at (r0, c0).
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &MatrixFq) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<Self> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &*self.field;
        let mut out = Self::zeros(self.field.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[Fq]) -> Result<Vec<Fq>> {
        if v.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let f = &*self.field;
        let mut out = vec![Fq::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(a, x));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and the pivot columns.
    ///
    /// Pivots are chosen column by column, left to right, taking the first
    /// row at or below the current pivot row with a nonzero entry.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &*self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(sel) = (pr..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if sel != pr {
                for j in 0..m.cols {
                    m.data.swap(sel * m.cols + j, pr * m.cols + j);
                }
            }
            let inv = f.inv(m.get(pr, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(pr, j), inv);
                m.set(pr, j, v);
            }
            for r in 0..m.rows {
                if r == pr {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(pr, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Nonzero rows of the RREF.
    pub fn row_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        r.select_rows(&keep).expect("pivot rows are in range")
    }

    /// Basis of `{x : x * self = 0}` as the rows of a matrix in RREF.
    pub fn left_kernel_basis(&self) -> Self {
        let f = &*self.field;
        let t = self.transpose();
        let (reduced, pivots) = t.rref();
        let n = self.rows;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.field.clone(), free.len(), n);
        for (i, &fc) in free.iter().enumerate() {
            k.set(i, fc, Fq::ONE);
            for (pr, &pc) in pivots.iter().enumerate() {
                k.set(i, pc, f.neg(reduced.get(pr, fc)));
            }
        }
        k.rref().0
    }

    /// True iff both matrices span the same row space.
    pub fn row_space_equal(&self, other: &MatrixFq) -> Result<bool> {
        if *self.field != *other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{} columns against {}",
                self.cols, other.cols
            )));
        }
        Ok(self.row_basis() == other.row_basis())
    }

    pub fn vstack(&self, other: &MatrixFq) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "cannot stack {} columns on {}",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self::new(self.field.clone(), self.rows + other.rows, self.cols, data)
    }
}
