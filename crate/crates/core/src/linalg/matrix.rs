use std::fmt;

use super::{Field, FieldElem, LinalgError};

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from residues; values are reduced mod p.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| field.reduce(x)));
        }
        Matrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < field.p()));
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn column_vector(field: Field, v: &[u32]) -> Self {
        Matrix::from_vec(field, v.len(), 1, v.to_vec())
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn elem(&self, r: usize, c: usize) -> FieldElem {
        self.field.elem(self.get(r, c) as i64)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.field.p());
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            Err(LinalgError::CharacteristicMismatch(
                self.field.p(),
                other.field.p(),
            ))
        } else {
            Ok(())
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = self.field;
        let p = f.p();
        let mut out = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b) % p;
                }
            }
        }
        Ok(Matrix {
            field: f,
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    /// Product; panics on shape or characteristic mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.p();
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                row.iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| (acc + a * b) % p)
            })
            .collect()
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::DimensionMismatch {
                op: "add",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).expect("matrix sum")
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.field.neg(1))
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Matrix, c: u32) {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(b, c));
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            m.data[i * m.cols..i * m.cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * m.cols + self.cols..(i + 1) * m.cols].copy_from_slice(other.row(i));
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut m = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            let src = (r0 + i) * self.cols + c0;
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.data[i * idx.len() + j] = self.get(i, c);
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut m = Matrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m.data[(i * other.rows + k) * c + j * other.cols + l] =
                            f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        m
    }

    /// In-place Gauss-Jordan elimination. Pivots are taken in the leftmost
    /// nonzero column, using the topmost available nonzero row. Returns the
    /// pivot columns; row `i` of the result carries pivot `pivots[i]`.
    pub fn row_reduce_in_place(&mut self) -> Vec<usize> {
        self.row_reduce_columns(self.cols)
    }

    /// Gauss-Jordan elimination choosing pivots only among the first
    /// `pivot_cols` columns; the remaining columns are carried along.
    pub fn row_reduce_columns(&mut self, pivot_cols: usize) -> Vec<usize> {
        let f = self.field;
        let p = f.p();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols.min(cols) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for k in c..cols {
                    let x = &mut self.data[r * cols + k];
                    *x = (*x * inv) % p;
                }
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (pivot_row, rest) = tail.split_at_mut(cols);
            let pivot_row = &*pivot_row;
            let eliminate = |row: &mut [u32]| {
                let factor = row[c];
                if factor == 0 {
                    return;
                }
                let m = p - factor;
                for k in c..cols {
                    let b = pivot_row[k];
                    if b != 0 {
                        row[k] = (row[k] + m * b) % p;
                    }
                }
            };
            for row in head.chunks_mut(cols) {
                eliminate(row);
            }
            for row in rest.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let pivots = reduced.row_reduce_in_place();
        Rref { reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, as the columns of the returned matrix.
    pub fn kernel(&self) -> Matrix {
        let Rref { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let f = self.field;
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(reduced.get(i, fc)));
            }
        }
        k
    }

    /// Checked kernel: fails only if the matrix is internally inconsistent.
    pub fn try_kernel(&self) -> Result<Matrix, LinalgError> {
        Ok(self.kernel())
    }

    /// One solution of `self · x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                left: self.shape(),
                right: (b.len(), 1),
            });
        }
        let aug = self.hstack(&Matrix::column_vector(self.field, b));
        let mut red = aug;
        let pivots = red.row_reduce_columns(self.cols);
        let r = pivots.len();
        if (r..self.rows).any(|i| red.get(i, self.cols) != 0) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = red.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Columns forming a basis of the column space (a subset of the original columns).
    pub fn column_space(&self) -> Matrix {
        let pivots = self.rref().pivots;
        self.select_columns(&pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(self.field, n));
        let pivots = aug.row_reduce_columns(n);
        if pivots.len() < n {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Precomputes an elimination for repeated solves against this matrix.
    pub fn elimination(&self) -> Elimination {
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(self.field, n));
        let pivots = aug.row_reduce_columns(self.cols);
        let transform = aug.block(0, self.cols, n, n);
        Elimination {
            cols: self.cols,
            pivots,
            transform,
        }
    }
}

/// Stored row reduction `T · A = R` supporting repeated right-hand sides.
#[derive(Clone, Debug)]
pub struct Elimination {
    cols: usize,
    pivots: Vec<usize>,
    transform: Matrix,
}

impl Elimination {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let tb = self.transform.mul_vec(b);
        let r = self.pivots.len();
        if tb[r..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &c) in self.pivots.iter().enumerate() {
            x[c] = tb[i];
        }
        Some(x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
