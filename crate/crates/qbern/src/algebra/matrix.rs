use std::fmt;
use std::ops::{Index, IndexMut};

use super::AlgebraError;
use crate::scalar::Scalar;

/// Dense row-major matrix over an exact scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Exact matrix product; inner dimensions must agree.
    pub fn multiply(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * rhs[(k, j)].clone();
                }
            }
        }
        Ok(out)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    ///
    /// Pivot choice: first row at or below the diagonal with a nonzero entry
    /// (exact arithmetic needs no magnitude pivoting).
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv: Matrix<T> = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(AlgebraError::SingularMatrix)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[(r, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].clone() - factor.clone() * a[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - factor.clone() * inv[(col, j)].clone();
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// Plain-text table with columns aligned on their widest entry.
    pub fn to_aligned_string(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_string()).collect())
            .collect();
        let mut widths = vec![0usize; self.cols];
        for row in &cells {
            for (j, cell) in row.iter().enumerate() {
                widths[j] = widths[j].max(cell.len());
            }
        }
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, cell)| format!("{:>width$}", cell, width = widths[j]))
                .collect();
            out.push_str(&line.join("  "));
            out.push('\n');
        }
        out
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_aligned_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn mat(rows: &[&[(i64, i64)]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| rat(n, d)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_multiplicative_identity() {
        let a = mat(&[&[(1, 2), (3, 1)], &[(0, 1), (-5, 7)]]);
        assert_eq!(Matrix::identity(2).multiply(&a).unwrap(), a);
        assert_eq!(a.multiply(&Matrix::identity(2)).unwrap(), a);
    }

    #[test]
    fn inverse_of_identity() {
        assert_eq!(Matrix::<Rational>::identity(4).inverse().unwrap(), Matrix::identity(4));
    }

    #[test]
    fn quadratic_conversion_matrix_round_trips() {
        // the 3x3 lower-triangular conversion matrix at q = 1/2 ([2]_q = 3/2)
        let m = mat(&[
            &[(1, 1), (0, 1), (0, 1)],
            &[(-3, 2), (3, 2), (0, 1)],
            &[(1, 2), (-3, 2), (1, 1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.multiply(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(inv.multiply(&m).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Matrix::<Rational>::zeros(2, 3);
        let b = Matrix::<Rational>::zeros(2, 3);
        assert!(matches!(a.multiply(&b), Err(AlgebraError::DimensionMismatch(_))));
    }

    #[test]
    fn singular_matrix_is_an_error() {
        let m = mat(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
        assert_eq!(m.inverse(), Err(AlgebraError::SingularMatrix));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn inverse_round_trip_is_exact(
            n in 1usize..=8,
            entries in prop::collection::vec((-9i64..=9, 1i64..=5), 64),
        ) {
            let m = Matrix::from_rows(
                (0..n)
                    .map(|i| (0..n).map(|j| rat(entries[i * 8 + j].0, entries[i * 8 + j].1)).collect())
                    .collect(),
            ).unwrap();
            match m.inverse() {
                Err(AlgebraError::SingularMatrix) => {}
                Err(e) => prop_assert!(false, "unexpected error {e:?}"),
                Ok(inv) => {
                    prop_assert_eq!(m.multiply(&inv).unwrap(), Matrix::identity(n));
                    prop_assert_eq!(inv.multiply(&m).unwrap(), Matrix::identity(n));
                }
            }
        }
    }
}
