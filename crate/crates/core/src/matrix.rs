//! Dense matrices over a finite field.
//!
//! Vectors are rows. A matrix `m` acts on a row vector `v` by `v * m`, which
//! is the convention used for right modules throughout the crate.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Which kernel to compute: `Left` gives row vectors `x` with `x * m = 0`,
/// `Right` gives column vectors `x` with `m * x = 0` (returned as rows).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Result of a row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![Scalar::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::ONE;
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend_from_slice(r);
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn from_flat(field: &Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds a matrix from integer entries reduced into the prime field.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect();
        Self::from_rows(field, cols, &rows)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [Scalar] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let (lhs, dst) = (self.row(r), &mut out.data[r * other.cols..(r + 1) * other.cols]);
            for (k, &a) in lhs.iter().enumerate() {
                if !a.is_zero() {
                    self.field.axpy(dst, a, other.row(k));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut out = vec![Scalar::ZERO; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if !a.is_zero() {
                self.field.axpy(&mut out, a, self.row(k));
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        out.add_scaled(Scalar::ONE, other);
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        out.add_scaled(self.field.neg(Scalar::ONE), other);
        Ok(out)
    }

    /// `self += c * other`; shapes must agree.
    pub fn add_scaled(&mut self, c: Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let field = self.field.clone();
        field.axpy(&mut self.data, c, &other.data);
    }

    pub fn scaled(&self, c: Scalar) -> Matrix {
        let mut out = self.clone();
        self.field.scale(&mut out.data, c);
        out
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Stacks matrices with equal column counts vertically.
    pub fn vstack(field: &Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Concatenates matrices with equal row counts horizontally.
    pub fn hstack(field: &Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            for r in 0..rows {
                out.data[r * cols + offset..r * cols + offset + p.cols].copy_from_slice(p.row(r));
            }
            offset += p.cols;
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            let src = self.row(r);
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = src[c];
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let field = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..cols {
            if prow == rows {
                break;
            }
            let Some(sel) = (prow..rows).find(|&r| !self.data[r * cols + col].is_zero()) else {
                continue;
            };
            if sel != prow {
                for c in col..cols {
                    self.data.swap(sel * cols + c, prow * cols + c);
                }
            }
            let inv = field.inv(self.data[prow * cols + col]).expect("nonzero pivot");
            if inv != Scalar::ONE {
                field.scale(&mut self.data[prow * cols + col..(prow + 1) * cols], inv);
            }
            let pivot_row: Vec<Scalar> = self.data[prow * cols + col..(prow + 1) * cols].to_vec();
            for r in 0..rows {
                if r == prow {
                    continue;
                }
                let factor = self.data[r * cols + col];
                if factor.is_zero() {
                    continue;
                }
                let neg = field.neg(factor);
                field.axpy(&mut self.data[r * cols + col..(r + 1) * cols], neg, &pivot_row);
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            self.transpose().rref().rank
        } else {
            self.rref().rank
        }
    }

    /// The nonzero rows of the reduced row echelon form.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_rows(self)
    }

    /// Basis of the left or right kernel. Left kernel vectors have length
    /// `rows`, right kernel vectors have length `cols`. The basis comes from
    /// the free columns of an echelon form, so restricting it to those
    /// columns gives an identity matrix.
    pub fn kernel_basis(&self, side: Side) -> Vec<Vec<Scalar>> {
        self.kernel(side).basis.to_rows()
    }

    pub fn kernel(&self, side: Side) -> Subspace {
        match side {
            Side::Right => right_kernel(self),
            Side::Left => right_kernel(&self.transpose()),
        }
    }

    /// Finds `x` with `x * self = target` (target is a row vector).
    pub fn solve(&self, target: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if target.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "target of length {} for a matrix with {} columns",
                target.len(),
                self.cols
            )));
        }
        Ok(Solver::new(self).solve(target))
    }

    /// Finds `x` with `x * self = target` for a matrix of targets (one per row).
    pub fn solve_matrix(&self, target: &Matrix) -> Result<Option<Matrix>> {
        if target.cols != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "targets have {} columns, matrix has {}",
                target.cols, self.cols
            )));
        }
        let solver = Solver::new(self);
        let mut rows = Vec::with_capacity(target.rows);
        for r in 0..target.rows {
            match solver.solve(target.row(r)) {
                Some(x) => rows.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_rows(&self.field, self.rows, &rows)))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rref().rank == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let id = Matrix::identity(&self.field, n);
        let mut aug = Matrix::hstack(&self.field, n, &[self, &id]);
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    /// Checks `self^k == 0` for some k <= rows.
    pub fn is_nilpotent(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut power = self.clone();
        let mut steps = 1;
        while !power.is_zero() {
            if steps >= self.rows.max(1) {
                return false;
            }
            power = power.mul(self).expect("square");
            steps += 1;
        }
        true
    }
}

fn right_kernel(m: &Matrix) -> Subspace {
    let r = m.rref();
    let cols = m.cols;
    let free: Vec<usize> = {
        let mut is_pivot = vec![false; cols];
        for &p in &r.pivots {
            is_pivot[p] = true;
        }
        (0..cols).filter(|&c| !is_pivot[c]).collect()
    };
    let field = m.field();
    let mut basis = Matrix::zeros(field, free.len(), cols);
    for (k, &f) in free.iter().enumerate() {
        basis.set(k, f, Scalar::ONE);
        for (i, &p) in r.pivots.iter().enumerate() {
            let v = r.matrix.get(i, f);
            if !v.is_zero() {
                basis.set(k, p, field.neg(v));
            }
        }
    }
    Subspace { basis, coord_cols: free }
}

/// Reusable solver for `x * m = t` with many targets `t`.
pub struct Solver {
    field: Field,
    /// Nonzero rows of rref(m).
    echelon: Matrix,
    pivots: Vec<usize>,
    /// transform rows: transform.row(i) * m = echelon.row(i)
    transform: Matrix,
}

impl Solver {
    pub fn new(m: &Matrix) -> Self {
        let field = m.field().clone();
        let id = Matrix::identity(&field, m.rows());
        let mut aug = Matrix::hstack(&field, m.rows(), &[m, &id]);
        let pivots: Vec<usize> = aug.rref_in_place().into_iter().take_while(|&p| p < m.cols()).collect();
        let k = pivots.len();
        let echelon = aug.block(0, 0, k, m.cols());
        let transform = aug.block(0, m.cols(), k, m.rows());
        Solver { field, echelon, pivots, transform }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, target: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut residual = target.to_vec();
        let mut x = vec![Scalar::ZERO; self.transform.cols()];
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = residual[p];
            if c.is_zero() {
                continue;
            }
            self.field.axpy(&mut residual, self.field.neg(c), self.echelon.row(i));
            self.field.axpy(&mut x, c, self.transform.row(i));
        }
        residual.iter().all(|v| v.is_zero()).then_some(x)
    }
}

/// A subspace of a row space given by a basis whose restriction to
/// `coord_cols` is the identity. Coordinates of a member vector are then
/// read off at those columns.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub basis: Matrix,
    pub coord_cols: Vec<usize>,
}

impl Subspace {
    pub fn from_rows(m: &Matrix) -> Self {
        let r = m.rref();
        let basis = r.matrix.block(0, 0, r.rank, m.cols());
        Subspace { basis, coord_cols: r.pivots }
    }

    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, ambient), coord_cols: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(field, ambient), coord_cols: (0..ambient).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of `v` if it lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.coord_cols.iter().map(|&i| v[i]).collect();
        let recon = self.basis.vec_mul(&c);
        (recon.as_slice() == v).then_some(c)
    }

    /// Coordinates of `v`, assuming membership.
    pub fn coords_unchecked(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.coord_cols.iter().map(|&i| v[i]).collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let f = self.basis.field().clone();
        Subspace::from_rows(&Matrix::vstack(&f, self.ambient(), &[&self.basis, &other.basis]))
    }
}
