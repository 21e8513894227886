//! Dense exact matrices with deterministic echelon-form routines.

use crate::field::Field;
use crate::{Error, Result};

/// Row-major dense matrix over an exact field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(rows: usize, cols: usize, witness: &F) -> Self {
        Matrix { rows, cols, data: vec![witness.zero(); rows * cols] }
    }

    pub fn identity(n: usize, witness: &F) -> Self {
        let mut m = Matrix::zero(n, n, witness);
        for i in 0..n {
            m[(i, i)] = witness.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, witness: &F) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        let _ = witness;
        Matrix { rows: r, cols: c, data }
    }

    fn witness(&self) -> F {
        self.data.first().cloned().unwrap_or_else(|| panic!("empty matrix has no witness"))
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        if self.data.is_empty() {
            return Matrix { rows: self.cols, cols: self.rows, data: vec![] };
        }
        let w = self.witness();
        let mut t = Matrix::zero(self.cols, self.rows, &w);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        if self.rows == 0 || other.cols == 0 {
            return Matrix { rows: self.rows, cols: other.cols, data: vec![] };
        }
        if self.cols == 0 {
            let w = if !self.data.is_empty() { self.witness() } else { other.witness() };
            return Matrix::zero(self.rows, other.cols, &w);
        }
        let w = self.witness();
        let mut out = Matrix::zero(self.rows, other.cols, &w);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            data.extend_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        Matrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    /// Vertical concatenation of several blocks.
    pub fn vstack(blocks: &[&Matrix<F>]) -> Self {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            rows += b.rows;
            data.extend_from_slice(&b.data);
        }
        Matrix { rows, cols, data }
    }

    pub fn column_block(&self, from: usize, to: usize) -> Self {
        assert!(from <= to && to <= self.cols);
        let mut data = Vec::with_capacity(self.rows * (to - from));
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols + from..r * self.cols + to]);
        }
        Matrix { rows: self.rows, cols: to - from, data }
    }

    pub fn row_block(&self, from: usize, to: usize) -> Self {
        assert!(from <= to && to <= self.rows);
        Matrix {
            rows: to - from,
            cols: self.cols,
            data: self.data[from * self.cols..to * self.cols].to_vec(),
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for r in 0..self.rows {
            for &c in idx {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix { rows: self.rows, cols: idx.len(), data }
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    /// Pivot choice is the first nonzero entry in column order, so the result
    /// is deterministic.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        if self.rows == 0 || self.cols == 0 {
            return pivots;
        }
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let mut sel = None;
            for r in row..self.rows {
                if !self[(r, col)].is_zero() {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            self.swap_rows(row, sel);
            let inv = self[(row, col)].inv().expect("nonzero pivot");
            for c in col..self.cols {
                self[(row, c)] = self[(row, c)].mul(&inv);
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for c in col..self.cols {
                        let t = self[(row, c)].mul(&factor);
                        self[(r, c)] = self[(r, c)].sub(&t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
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
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{v : self * v = 0}`, returned as the
    /// columns of a matrix. One basis vector per free column of the echelon
    /// form, in column order.
    pub fn right_kernel(&self, witness: &F) -> Matrix<F> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut ker = Matrix::zero(self.cols, free.len(), witness);
        for (k, &fc) in free.iter().enumerate() {
            ker[(fc, k)] = witness.one();
            for (pr, &pc) in pivots.iter().enumerate() {
                ker[(pc, k)] = m[(pr, fc)].neg();
            }
        }
        ker
    }

    /// Canonical projection onto the quotient by the column span of `self`.
    ///
    /// Returns `q` of shape `(rows - rank) x rows` with `q * self = 0` and
    /// `q` of full row rank; the quotient coordinates are the non-pivot
    /// coordinates of the row space of `self^T`.
    pub fn cokernel_projection(&self, witness: &F) -> Matrix<F> {
        let mut rt = self.transpose();
        let pivots = rt.rref();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.rows).filter(|r| !pivots.contains(r)).collect();
        let mut q = Matrix::zero(self.rows - rank, self.rows, witness);
        for (a, &fa) in free.iter().enumerate() {
            q[(a, fa)] = witness.one();
            for (j, &pj) in pivots.iter().enumerate() {
                q[(a, pj)] = rt[(j, fa)].neg();
            }
        }
        q
    }

    /// Solves `x * self = rhs` when the rows of `self` are independent.
    pub fn solve_left(&self, rhs: &Matrix<F>, witness: &F) -> Result<Matrix<F>> {
        assert_eq!(rhs.cols, self.cols);
        let mut m = self.clone();
        let pivots = m.rref();
        if pivots.len() != self.rows {
            return Err(Error::Validation("solve_left: dependent rows".into()));
        }
        // self restricted to pivot columns is invertible.
        let cj = self.select_columns(&pivots);
        let bj = rhs.select_columns(&pivots);
        let inv = cj.inverse(witness)?;
        let x = bj.mul(&inv);
        // Consistency on the remaining columns.
        let check = x.mul(self);
        if &check != rhs {
            return Err(Error::Validation("solve_left: inconsistent system".into()));
        }
        Ok(x)
    }

    pub fn inverse(&self, witness: &F) -> Result<Matrix<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(n, witness));
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Validation("inverse: singular matrix".into()));
        }
        Ok(aug.column_block(n, 2 * n))
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.into_iter().map(|r| r.into_iter().map(Rat::from_i64).collect()).collect(),
            &Rat::from_i64(0),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.right_kernel(&Rat::from_i64(0));
        assert_eq!(k.cols, 1);
        assert!(a.mul(&k).is_zero_matrix());
    }

    #[test]
    fn cokernel_annihilates_columns() {
        let a = m(vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 3]]);
        let q = a.cokernel_projection(&Rat::from_i64(0));
        assert_eq!(q.rows, 2);
        assert!(q.mul(&a).is_zero_matrix());
        assert_eq!(q.rank(), 2);
    }

    #[test]
    fn solve_left_roundtrip() {
        let c = m(vec![vec![1, 2, 0, 1], vec![0, 1, 1, 3]]);
        let x = m(vec![vec![3, 5], vec![-1, 2], vec![0, 7]]);
        let b = x.mul(&c);
        let got = c.solve_left(&b, &Rat::from_i64(0)).unwrap();
        assert_eq!(got, x);
    }

    #[test]
    fn inverse_small() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        let inv = a.inverse(&Rat::from_i64(0)).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2, &Rat::from_i64(0)));
    }
}
