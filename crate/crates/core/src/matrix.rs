//! Dense matrices over an exact [`Field`]: rank, kernel, linear solve.

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-major dense matrix. All entries are canonical elements of `field`,
/// which is checked on construction; the mixed-modulus case shows up as two
/// matrices over unequal fields and is rejected by every binary operation.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !field.is_canonical(e)) {
            return Err(Error::InvalidMatrix(format!(
                "entry {bad:?} is not an element of {}",
                field.mode()
            )));
        }
        Ok(ExactMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        ExactMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.field.one();
        }
        m
    }

    /// Builds a matrix from explicit rows. `cols` is needed for the 0-row case.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Self::new(field, nrows, cols, entries)
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, cols, converted)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                if !m.field.is_canonical(x) {
                    return Err(Error::InvalidMatrix(format!("entry {x:?} not canonical")));
                }
                m.entries[i * cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::InvalidMatrix(format!(
                "mixed modes: {} and {}",
                self.field.mode(),
                other.field.mode()
            )));
        }
        Ok(())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(ExactMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.entries[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !f.is_zero(a) {
                    f.axpy(dst, a, other.row(k));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    /// Exact rank. Works on an internal copy.
    pub fn rank(&self) -> usize {
        self.field.rank_of(self.to_rows(), self.cols)
    }

    /// `cols - rank`.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the right kernel `{x : M x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (rref, pivots) = rref(f, self.to_rows(), self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (row, &p) in rref.iter().zip(&pivots) {
                    v[p] = f.neg(&row[free]);
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let f = &self.field;
        let augmented = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let (rref, pivots) = rref(f, augmented, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &p) in rref.iter().zip(&pivots) {
            x[p] = row[self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Reduced row echelon form: the nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
        rref(&self.field, self.to_rows(), self.cols)
    }
}

/// Rank by inserting rows one at a time into an echelon basis indexed by
/// pivot column. Stops as soon as the rank reaches `cols`.
pub(crate) fn incremental_rank<F: Field>(f: &F, rows: Vec<Vec<F::Elem>>, cols: usize) -> usize {
    let mut pivots: Vec<Option<Vec<F::Elem>>> = vec![None; cols];
    let mut rank = 0;
    for mut row in rows {
        if rank == cols {
            break;
        }
        for c in 0..cols {
            if f.is_zero(&row[c]) {
                continue;
            }
            match &pivots[c] {
                Some(prow) => {
                    let factor = f.neg(&row[c]);
                    f.axpy(&mut row[c..], &factor, &prow[c..]);
                }
                None => {
                    let inv = f.inv(&row[c]).expect("nonzero entry");
                    f.scale(&mut row[c..], &inv);
                    pivots[c] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Gauss-Jordan elimination with row swaps. Returns the nonzero reduced rows
/// (leading entry 1) and their pivot columns in increasing order.
pub(crate) fn rref<F: Field>(
    f: &F,
    mut rows: Vec<Vec<F::Elem>>,
    cols: usize,
) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        f.scale(&mut rows[r], &inv);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let factor = f.neg(&row[c]);
                f.axpy(row, &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}
