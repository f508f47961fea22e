//! Dense exact matrices, reduced echelon forms, and canonical subspaces.
//!
//! A `Matrix` is a linear map from a `cols`-dimensional space to a
//! `rows`-dimensional space acting on column vectors. Empty matrices (zero
//! rows or columns) are legal everywhere and behave as the unique maps to or
//! from the zero space.

use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Scalar>, // row-major
}

/// Output of row reduction: rank, pivot columns (ascending), and the reduced
/// row-echelon form itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub r: Matrix,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            field,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|row| row.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field, "field mismatch in product");
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let acc = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !f.is_zero(a) && !f.is_zero(&v[j]) {
                    out[i] = f.add(&out[i], &f.mul(a, &v[j]));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sum");
        let f = self.field;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| f.mul(c, a)).collect(),
        }
    }

    /// Stack side by side: `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        let mut out = Matrix::zero(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Stack on top of each other: `[self; rhs]`.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "col mismatch in vstack");
        let mut entries = self.entries.clone();
        entries.extend(rhs.entries.iter().cloned());
        Matrix { field: self.field, rows: self.rows + rhs.rows, cols: self.cols, entries }
    }

    /// Assemble a block matrix. `row_dims`/`col_dims` fix the grid; `blocks`
    /// places `(block_row, block_col, matrix)` entries, everything else is
    /// zero. Sizes are checked against the grid.
    pub fn from_blocks(
        field: FieldSpec,
        row_dims: &[usize],
        col_dims: &[usize],
        blocks: &[(usize, usize, Matrix)],
    ) -> Matrix {
        let row_off: Vec<usize> = std::iter::once(0)
            .chain(row_dims.iter().scan(0, |acc, d| {
                *acc += d;
                Some(*acc)
            }))
            .collect();
        let col_off: Vec<usize> = std::iter::once(0)
            .chain(col_dims.iter().scan(0, |acc, d| {
                *acc += d;
                Some(*acc)
            }))
            .collect();
        let mut out = Matrix::zero(field, *row_off.last().unwrap(), *col_off.last().unwrap());
        for (bi, bj, m) in blocks {
            assert_eq!(m.rows, row_dims[*bi], "block row size mismatch");
            assert_eq!(m.cols, col_dims[*bj], "block col size mismatch");
            assert_eq!(m.field, field, "block field mismatch");
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(row_off[*bi] + i, col_off[*bj] + j, m.get(i, j).clone());
                }
            }
        }
        out
    }

    /// Extract the block at the given grid cell of a block matrix.
    pub fn block(
        &self,
        row_dims: &[usize],
        col_dims: &[usize],
        bi: usize,
        bj: usize,
    ) -> Matrix {
        assert_eq!(row_dims.iter().sum::<usize>(), self.rows);
        assert_eq!(col_dims.iter().sum::<usize>(), self.cols);
        let r0: usize = row_dims[..bi].iter().sum();
        let c0: usize = col_dims[..bj].iter().sum();
        let mut out = Matrix::zero(self.field, row_dims[bi], col_dims[bj]);
        for i in 0..row_dims[bi] {
            for j in 0..col_dims[bj] {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    /// Reduced row-echelon form with deterministic pivoting: columns are
    /// scanned left to right, and within a column the first nonzero entry
    /// from the top (at or below the current pivot row) is chosen.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut r = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pr = 0usize; // next pivot row
        for pc in 0..r.cols {
            let Some(row) = (pr..r.rows).find(|&i| !f.is_zero(r.get(i, pc))) else {
                continue;
            };
            // Swap into place.
            if row != pr {
                for j in 0..r.cols {
                    let a = r.get(pr, j).clone();
                    let b = r.get(row, j).clone();
                    r.set(pr, j, b);
                    r.set(row, j, a);
                }
            }
            // Normalize the pivot row.
            let inv = f.inv(r.get(pr, pc));
            for j in pc..r.cols {
                let v = f.mul(r.get(pr, j), &inv);
                r.set(pr, j, v);
            }
            // Eliminate everywhere else.
            for i in 0..r.rows {
                if i == pr || f.is_zero(r.get(i, pc)) {
                    continue;
                }
                let c = r.get(i, pc).clone();
                for j in pc..r.cols {
                    let v = f.sub(r.get(i, j), &f.mul(&c, r.get(pr, j)));
                    r.set(i, j, v);
                }
            }
            pivot_cols.push(pc);
            pr += 1;
            if pr == r.rows {
                break;
            }
        }
        Rref { rank: pivot_cols.len(), pivot_cols, r }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Kernel as a canonical subspace of the domain.
    pub fn kernel_basis(&self) -> Subspace {
        let Rref { pivot_cols, r, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivot_cols.contains(j)).collect();
        let f = self.field;
        let mut basis = Matrix::zero(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, f.one());
            for (pi, &pc) in pivot_cols.iter().enumerate() {
                basis.set(pc, k, f.neg(r.get(pi, fc)));
            }
        }
        Subspace::from_span(&basis)
    }

    /// Column space as a canonical subspace of the codomain.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_span(self)
    }

    /// One solution of `self · x = b`, if any (free variables set to zero).
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let f = self.field;
        let mut bm = Matrix::zero(f, self.rows, 1);
        for (i, v) in b.iter().enumerate() {
            bm.set(i, 0, v.clone());
        }
        let aug = self.hstack(&bm);
        let Rref { pivot_cols, r, rank } = aug.rref();
        if pivot_cols.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![f.zero(); self.cols];
        for (pi, &pc) in pivot_cols.iter().enumerate().take(rank) {
            x[pc] = r.get(pi, self.cols).clone();
        }
        Some(x)
    }

    /// Solve `self · X = B` columnwise; `None` if any column is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "rhs height mismatch");
        let f = self.field;
        let mut out = Matrix::zero(f, self.cols, b.cols);
        for j in 0..b.cols {
            let x = self.solve(&b.col(j))?;
            for (i, v) in x.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }

    /// Inverse of a square invertible matrix. Panics when singular; callers
    /// only invert matrices that are invertible by construction.
    pub fn inverse(&self) -> Matrix {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let aug = self.hstack(&Matrix::identity(self.field, self.rows));
        let Rref { rank, r, .. } = aug.rref();
        assert_eq!(rank, self.rows, "inverse of a singular matrix");
        let mut out = Matrix::zero(self.field, self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                out.set(i, j, r.get(i, self.rows + j).clone());
            }
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// A subspace of a coordinate space, held in reduced column-echelon form so
/// that two values are equal exactly when they span the same subspace.
///
/// The canonical basis is the transpose of the reduced row-echelon form of
/// the transposed spanning matrix: each basis column starts with a leading 1
/// whose row is zero in every other basis column, and leading rows increase
/// strictly left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Matrix, // ambient_dim × dim, canonical
}

impl Subspace {
    /// Canonicalize the span of the columns of `m`.
    pub fn from_span(m: &Matrix) -> Subspace {
        let Rref { rank, r, .. } = m.transpose().rref();
        let mut basis = Matrix::zero(m.field, m.rows, rank);
        for i in 0..rank {
            for j in 0..m.rows {
                basis.set(j, i, r.get(i, j).clone());
            }
        }
        Subspace { ambient_dim: m.rows, basis }
    }

    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: Matrix::zero(field, ambient_dim, 0) }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Subspace {
        Subspace { ambient_dim, basis: Matrix::identity(field, ambient_dim) }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    pub fn contains_vec(&self, v: &[Scalar]) -> bool {
        self.basis.solve(v).is_some()
    }

    /// Does this subspace contain every column of `m`?
    pub fn contains_cols(&self, m: &Matrix) -> bool {
        (0..m.cols).all(|j| self.contains_vec(&m.col(j)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && other.contains_cols(&self.basis)
    }

    /// Rows holding the leading 1 of each canonical basis column.
    pub fn pivot_rows(&self) -> Vec<usize> {
        let f = self.basis.field;
        (0..self.basis.cols)
            .map(|j| (0..self.ambient_dim).find(|&i| !f.is_zero(self.basis.get(i, j))).unwrap())
            .collect()
    }
}

/// Quotient of the ambient space by `sub`: the quotient dimension and a
/// surjective projection matrix whose kernel is exactly `sub`.
///
/// The construction is deterministic: complete the canonical basis by the
/// standard vectors at non-pivot rows, invert that basis change, and keep
/// the coordinate rows of the completion.
pub fn quotient(ambient_dim: usize, sub: &Subspace) -> (usize, Matrix) {
    assert_eq!(sub.ambient_dim, ambient_dim, "quotient ambient mismatch");
    let f = sub.basis.field;
    let k = sub.dim();
    let dim = ambient_dim - k;
    let pivots = sub.pivot_rows();
    let complement: Vec<usize> =
        (0..ambient_dim).filter(|i| !pivots.contains(i)).collect();
    let mut t = Matrix::zero(f, ambient_dim, ambient_dim);
    for j in 0..k {
        for i in 0..ambient_dim {
            t.set(i, j, sub.basis.get(i, j).clone());
        }
    }
    for (j, &c) in complement.iter().enumerate() {
        t.set(c, k + j, f.one());
    }
    let t_inv = t.inverse();
    let mut proj = Matrix::zero(f, dim, ambient_dim);
    for i in 0..dim {
        for j in 0..ambient_dim {
            proj.set(i, j, t_inv.get(k + i, j).clone());
        }
    }
    (dim, proj)
}

/// A deterministic right inverse of a surjective matrix: column `j` is the
/// first solution of `m · x = e_j`.
pub fn section(m: &Matrix) -> Matrix {
    m.solve_matrix(&Matrix::identity(m.field, m.rows))
        .expect("section of a non-surjective matrix")
}
