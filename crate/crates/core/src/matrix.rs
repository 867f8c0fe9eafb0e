//! Dense exact matrices and Gaussian elimination.
//!
//! Everything is fraction-free in the sense that no rounding ever happens:
//! elimination works over the exact field, pivots are chosen as the first
//! nonzero entry of a column, and zero entries are skipped so the sparse
//! differentials that dominate this crate stay cheap.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::{FieldSpec, Scalar};

/// A dense row-major matrix over a fixed ground field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        assert!(entries.iter().all(|e| e.field() == field), "entry field mismatch");
        Matrix { rows: r, cols: c, field, entries }
    }

    /// Builds a matrix from integer entries, mapped into the field.
    pub fn from_ints(field: FieldSpec, rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|n| field.from_integer(*n)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry field mismatch");
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zero(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = &(a * b) + out.at(i, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn hcat(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hcat");
        let mut out = Matrix::zero(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.at(i, j).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn from_columns(field: FieldSpec, rows: usize, cols: Vec<Vec<Scalar>>) -> Matrix {
        let mut m = Matrix::zero(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.at(row, col).inv();
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    m.row_sub_scaled(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `ker(self)` as column vectors; the basis is the standard
    /// one read off the reduced echelon form, with free variables set to 1
    /// in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(i);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.at(i, free);
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let rhs = Matrix::from_columns(self.field, self.rows, vec![b.to_vec()]);
        let (r, pivots) = self.hcat(&rhs).rref();
        // Inconsistent iff some pivot lands in the appended column.
        if pivots.iter().any(|&c| c == self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Selects a maximal subset of `candidates` whose images are linearly
    /// independent modulo the column span of `fixed`; returns their indices.
    pub fn independent_over(fixed: &Matrix, candidates: &Matrix) -> Vec<usize> {
        assert_eq!(fixed.rows, candidates.rows);
        let mut acc = fixed.clone();
        let mut rank = acc.rank();
        let mut chosen = Vec::new();
        for j in 0..candidates.cols {
            let cand = Matrix::from_columns(fixed.field, fixed.rows, vec![candidates.column(j)]);
            let next = acc.hcat(&cand);
            let next_rank = next.rank();
            if next_rank > rank {
                rank = next_rank;
                acc = next;
                chosen.push(j);
            }
        }
        chosen
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, f: &Scalar) {
        for j in 0..self.cols {
            if !self.at(r, j).is_zero() {
                let v = self.at(r, j) * f;
                self.set(r, j, v);
            }
        }
    }

    fn row_sub_scaled(&mut self, dst: usize, src: usize, f: &Scalar) {
        for j in 0..self.cols {
            if !self.at(src, j).is_zero() {
                let v = self.at(dst, j) - &(self.at(src, j) * f);
                self.set(dst, j, v);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = Matrix::identity(Q, 2);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let m = Matrix::zero(Q, 2, 3);
        assert_eq!(m.kernel_basis().len(), 3);
    }

    #[test]
    fn kernel_of_row_sum() {
        // (1 1): solved by hand, kernel spanned by (1, -1).
        let m = Matrix::from_ints(Q, &[&[1, 1]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert_eq!(&v[0] + &v[1], Q.zero());
        assert!(!v[0].is_zero());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_ints(Q, &[&[1, 2], &[2, 4]]);
        let sol = m.solve(&[Q.from_integer(3), Q.from_integer(6)]).unwrap();
        assert_eq!(m.mul_vec(&sol), vec![Q.from_integer(3), Q.from_integer(6)]);
        assert!(m.solve(&[Q.from_integer(3), Q.from_integer(7)]).is_none());
    }

    #[test]
    fn zero_column_matrix() {
        let m = Matrix::zero(Q, 3, 0);
        assert!(m.kernel_basis().is_empty());
        assert_eq!(m.rank(), 0);
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| {
            let rows_vec: Vec<Vec<Scalar>> =
                v.chunks(cols).map(|ch| ch.iter().map(|n| Q.from_integer(*n)).collect()).collect();
            Matrix::from_rows(Q, rows_vec)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| arb_matrix(r, c))) {
            prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
        }

        #[test]
        fn kernel_vectors_are_killed(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| arb_matrix(r, c))) {
            for v in m.kernel_basis() {
                prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
            }
        }
    }
}
