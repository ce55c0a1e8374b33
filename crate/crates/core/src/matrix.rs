//! Dense matrices with exact Gaussian elimination over a field scalar.
//!
//! Elimination keeps everything exact; the pivot choice (smallest
//! [`FieldScalar::pivot_weight`] in the column) keeps rational entries from
//! blowing up on the structured systems this crate produces. Rank, kernel
//! and determinant all come out of the same routine.

use num_rational::BigRational;

use crate::error::Error;
use crate::scalar::FieldScalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(entry(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    /// Copy with one row removed.
    pub fn without_row(&self, row: usize) -> Self {
        assert!(row < self.rows);
        let mut rows = Vec::with_capacity(self.rows - 1);
        for r in 0..self.rows {
            if r != row {
                rows.push(self.row(r).to_vec());
            }
        }
        Matrix::from_rows(rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<T: FieldScalar> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                if self.at(r, k).is_zero() || rhs.at(k, c).is_zero() {
                    continue;
                }
                acc = acc + self.at(r, k).clone() * rhs.at(k, c).clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (entry, x) in self.row(r).iter().zip(v) {
                    if entry.is_zero() || x.is_zero() {
                        continue;
                    }
                    acc = acc + entry.clone() * x.clone();
                }
                acc
            })
            .collect()
    }

    fn echelonize(&self, jordan: bool) -> Echelon<T> {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_product = T::one();
        let mut swaps = 0usize;
        let mut r = 0usize;
        for c in 0..m.cols {
            let mut best: Option<(usize, u64)> = None;
            for i in r..m.rows {
                if !m.at(i, c).is_zero() {
                    let w = m.at(i, c).pivot_weight();
                    if best.is_none_or(|(_, bw)| w < bw) {
                        best = Some((i, w));
                    }
                }
            }
            let Some((p, _)) = best else { continue };
            if p != r {
                m.swap_rows(p, r);
                swaps += 1;
            }
            let pivot = m.at(r, c).clone();
            pivot_product = pivot_product * pivot.clone();
            for j in c..m.cols {
                let v = m.at(r, j).clone() / pivot.clone();
                *m.at_mut(r, j) = v;
            }
            let others: Box<dyn Iterator<Item = usize>> = if jordan {
                Box::new((0..m.rows).filter(move |&i| i != r))
            } else {
                Box::new(r + 1..m.rows)
            };
            for i in others {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let factor = m.at(i, c).clone();
                for j in c..m.cols {
                    if m.at(r, j).is_zero() {
                        continue;
                    }
                    let v = m.at(i, j).clone() - factor.clone() * m.at(r, j).clone();
                    *m.at_mut(i, j) = v;
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        Echelon {
            matrix: m,
            pivot_cols,
            swaps,
            pivot_product,
        }
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        self.echelonize(false).pivot_cols.len()
    }

    /// Basis of the right kernel, in reduced echelon form: one vector per
    /// free column, with a 1 in that column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let ech = self.echelonize(true);
        let pivot_cols = &ech.pivot_cols;
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                let entry = ech.matrix.at(row, free);
                if !entry.is_zero() {
                    v[pc] = -entry.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Exact determinant via elimination.
    pub fn det(&self) -> Result<T, Error> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(T::one());
        }
        let ech = self.echelonize(false);
        if ech.pivot_cols.len() < self.rows {
            return Ok(T::zero());
        }
        let det = if ech.swaps.is_multiple_of(2) {
            ech.pivot_product
        } else {
            -ech.pivot_product
        };
        Ok(det)
    }
}

struct Echelon<T> {
    matrix: Matrix<T>,
    pivot_cols: Vec<usize>,
    swaps: usize,
    pivot_product: T,
}

impl Matrix<BigRational> {
    /// Convenience constructor from integer rows.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {

    use crate::{rat_int, RatMatrix, Rational};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    /// Independent determinant oracle: cofactor expansion along the first row.
    fn det_cofactor(m: &RatMatrix) -> Rational {
        let n = m.rows();
        assert_eq!(n, m.cols());
        if n == 0 {
            return Rational::one();
        }
        if n == 1 {
            return m.at(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for c in 0..n {
            if m.at(0, c).is_zero() {
                continue;
            }
            let minor = RatMatrix::from_fn(n - 1, n - 1, |i, j| {
                m.at(i + 1, if j < c { j } else { j + 1 }).clone()
            });
            let term = m.at(0, c).clone() * det_cofactor(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn rank_of_identity() {
        assert_eq!(RatMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn det_of_triangular() {
        let m = RatMatrix::from_int_rows(&[&[1, 1], &[0, 3]]);
        assert_eq!(m.det().unwrap(), rat_int(3));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = RatMatrix::zero(2, 3);
        assert!(matches!(
            m.det(),
            Err(crate::Error::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn kernel_of_single_relation() {
        let m = RatMatrix::from_int_rows(&[&[1, 1]]);
        let kernel = m.kernel();
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0], vec![rat_int(-1), rat_int(1)]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = RatMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        for v in m.kernel() {
            assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
        }
        assert_eq!(m.rank() + m.kernel().len(), m.cols());
    }

    proptest! {
        #[test]
        fn rank_plus_nullity_is_cols(entries in proptest::collection::vec(-5i64..=5, 12)) {
            let m = RatMatrix::from_fn(3, 4, |r, c| rat_int(entries[r * 4 + c]));
            prop_assert_eq!(m.rank() + m.kernel().len(), 4);
            for v in m.kernel() {
                prop_assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
            }
        }

        #[test]
        fn det_matches_cofactor_expansion(entries in proptest::collection::vec(-9i64..=9, 16)) {
            let m = RatMatrix::from_fn(4, 4, |r, c| rat_int(entries[r * 4 + c]));
            prop_assert_eq!(m.det().unwrap(), det_cofactor(&m));
        }

        #[test]
        fn det_of_transpose_is_equal(entries in proptest::collection::vec(-9i64..=9, 9)) {
            let m = RatMatrix::from_fn(3, 3, |r, c| rat_int(entries[r * 3 + c]));
            prop_assert_eq!(m.det().unwrap(), m.transpose().det().unwrap());
        }
    }
}
