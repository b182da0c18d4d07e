//! Dense exact matrices over a [`Field`], plus integer matrices for
//! Grothendieck-group bookkeeping.
//!
//! All eliminations are plain Gauss-Jordan with first-nonzero pivoting, so
//! every operation is a deterministic function of its input. Zero-sized
//! matrices (0 rows and/or 0 columns) are first-class citizens: empty
//! representations produce them constantly.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Build from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimMismatch { ctx: "from_rows" });
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and literals: integer entries.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_fn(r, c, |i, j| F::from_i64(rows[i][j]))
    }

    /// Column vector from a slice.
    pub fn col_vec(entries: Vec<F>) -> Self {
        let rows = entries.len();
        Mat { rows, cols: 1, data: entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        *self.at(i, j) == F::one()
                    } else {
                        self.at(i, j).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat::from_fn(self.rows, self.cols, |i, j| f(self.at(i, j)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch { ctx: "add" });
        }
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() + other.at(i, j).clone()
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch { ctx: "sub" });
        }
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() - other.at(i, j).clone()
        }))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch { ctx: "mul" });
        }
        let mut out: Mat<F> = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    out.set(i, j, cur + a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimMismatch { ctx: "hstack" });
        }
        Ok(Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        }))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimMismatch { ctx: "vstack" });
        }
        Ok(Mat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        }))
    }

    /// Assemble a block matrix from a grid of blocks. Row heights and column
    /// widths are taken from the first block in each row/column; every block
    /// must match them.
    pub fn block(grid: &[Vec<Mat<F>>]) -> Result<Self> {
        if grid.is_empty() || grid[0].is_empty() {
            return Ok(Mat::zero(0, 0));
        }
        let heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::DimMismatch { ctx: "block grid ragged" });
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::DimMismatch { ctx: "block shape" });
                }
            }
        }
        let total_r: usize = heights.iter().sum();
        let total_c: usize = widths.iter().sum();
        let mut out = Mat::zero(total_r, total_c);
        let mut roff = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut coff = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..heights[bi] {
                    for j in 0..widths[bj] {
                        out.set(roff + i, coff + j, b.at(i, j).clone());
                    }
                }
                coff += widths[bj];
            }
            roff += heights[bi];
        }
        Ok(out)
    }

    pub fn submatrix(&self, row_range: core::ops::Range<usize>, col_range: core::ops::Range<usize>) -> Self {
        Mat::from_fn(row_range.len(), col_range.len(), |i, j| {
            self.at(row_range.start + i, col_range.start + j).clone()
        })
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Reduced row echelon form together with the pivot-column list.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // first nonzero entry in column c at or below row r
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.at(r, c).inv().expect("pivot nonzero");
            for j in c..m.cols {
                let v = m.at(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let factor = m.at(i, c).clone();
                    for j in c..m.cols {
                        let v = m.at(i, j).clone() - factor.clone() * m.at(r, j).clone();
                        m.set(i, j, v);
                    }
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
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the kernel; column count = cols − rank.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, F::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, -r.at(prow, fc).clone());
            }
        }
        out
    }

    /// Solve `self · x = b` for a matrix of right-hand sides.
    /// `Ok(None)` when inconsistent; errors on row-count mismatch.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>> {
        if self.rows != b.rows {
            return Err(Error::DimMismatch { ctx: "solve" });
        }
        let aug = self.hstack(b)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None); // a pivot in the RHS block: inconsistent
        }
        let mut x = Mat::zero(self.cols, b.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.at(prow, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<Self>> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let inv = self.solve(&Mat::identity(self.rows))?;
        // rank-deficient square systems may still be "consistent"; verify.
        Ok(inv.filter(|m| self.mul(m).expect("shape").is_identity()))
    }

    /// Indices of a maximal independent subset of columns (the RREF pivots).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    /// Data of the cokernel of `self : F^cols → F^rows`: a projection
    /// `proj : F^rows → F^(rows−rank)` with `proj·self = 0`, and a section
    /// `incl` of it whose columns are standard basis vectors spanning a
    /// complement of the column space (`proj·incl = id`).
    pub fn cokernel(&self) -> Coker<F> {
        // Row-reduce the transpose: its row space is our column space.
        let (r, pivots) = self.transpose().rref();
        let comp: Vec<usize> = (0..self.rows).filter(|i| !pivots.contains(i)).collect();
        let mut proj = Mat::zero(comp.len(), self.rows);
        // e_i reduced modulo the row space, then restricted to `comp`:
        // subtract e_i[p_k] times rref-row k (which is 1 at p_k, 0 at other
        // pivots), i.e. coordinates at non-pivot positions pick up
        // -r[k][t] whenever i = p_k, and e_i itself when i ∈ comp.
        for (t_idx, &t) in comp.iter().enumerate() {
            proj.set(t_idx, t, F::one());
            for (k, &p) in pivots.iter().enumerate() {
                proj.set(t_idx, p, -r.at(k, t).clone());
            }
        }
        let mut incl = Mat::zero(self.rows, comp.len());
        for (t_idx, &t) in comp.iter().enumerate() {
            incl.set(t, t_idx, F::one());
        }
        Coker { proj, incl, complement: comp }
    }
}

/// Cokernel data for a matrix `d : F^n → F^m`; see [`Mat::cokernel`].
pub struct Coker<F> {
    /// `(m−r) × m`, kills the image of `d`.
    pub proj: Mat<F>,
    /// `m × (m−r)` section of `proj` (standard basis vectors).
    pub incl: Mat<F>,
    /// Row indices of `F^m` chosen as the complement basis.
    pub complement: Vec<usize>,
}

impl<F: Field> fmt::Display for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer matrix (Euler forms, Coxeter matrices, K₀ transfer matrices).
/// Entries are machine integers; the determinant is computed in `BigInt`, so
/// unimodularity checks never overflow.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl ZMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ZMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ZMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ZMat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        ZMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch { ctx: "zmat mul" });
        }
        Ok(ZMat::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.at(i, k) * other.at(k, j)).sum()
        }))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.at(i, j) == i64::from(i == j)))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination in `BigInt`.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m: Vec<BigInt> = self.data.iter().map(|&x| BigInt::from(x)).collect();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !at(&m, i, k).is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (at(&m, i, j) * at(&m, k, k) - at(&m, i, k) * at(&m, k, j)) / &prev;
                    m[i * n + j] = v;
                }
            }
            prev = at(&m, k, k);
        }
        Ok(sign * at(&m, n - 1, n - 1))
    }

    /// True iff the determinant is ±1.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.det()?.abs().is_one())
    }

    pub fn to_mat<F: Field>(&self) -> Mat<F> {
        Mat::from_fn(self.rows, self.cols, |i, j| F::from_i64(self.at(i, j)))
    }
}
