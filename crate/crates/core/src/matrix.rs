//! Dense matrices and labelled boundary matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{invalid, Result};
use crate::scalar::{Coefficient, ExactField, IntegerScalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<S>(&self, f: impl Fn(&T) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + j, i * self.cols + k);
        }
    }
}

impl<T: Coefficient> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Submatrix on the given rows and columns (in the given order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (oi, &i) in rows.iter().enumerate() {
            for (oj, &j) in cols.iter().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant<T: IntegerScalar>(m: &Matrix<T>) -> T {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j).clone() * a.get(k, k).clone()
                    - a.get(i, k).clone() * a.get(k, j).clone())
                    / prev.clone();
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1).clone()
}

/// A solution of `A·x = b` over a field by Gauss-Jordan elimination, free
/// variables set to zero; `None` if the system is inconsistent.
pub fn solve_linear<F: ExactField>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(a.rows, b.len(), "rhs length");
    let (rows, cols) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(r, p);
        rhs.swap(r, p);
        let inv = F::one() / m.get(r, c).clone();
        for j in c..cols {
            let v = m.get(r, j).clone() * inv.clone();
            m.set(r, j, v);
        }
        rhs[r] = rhs[r].clone() * inv;
        for i in 0..rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in c..cols {
                let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                m.set(i, j, v);
            }
            rhs[i] = rhs[i].clone() - f * rhs[r].clone();
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Some(x)
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for j in 0..self.cols {
                write!(f, " {:>3?}", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// An integer matrix whose rows and columns are indexed by simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub row_simplices: Vec<Simplex>,
    pub col_simplices: Vec<Simplex>,
    pub entries: Matrix<i64>,
    row_index: BTreeMap<Simplex, usize>,
    col_index: BTreeMap<Simplex, usize>,
}

impl IntegerMatrix {
    /// Boundary matrix restricted to the given (canonically ordered) rows and columns.
    pub fn boundary_between(rows: Vec<Simplex>, cols: Vec<Simplex>) -> Self {
        let row_index: BTreeMap<Simplex, usize> = rows
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let col_index: BTreeMap<Simplex, usize> = cols
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut entries = Matrix::zeros(rows.len(), cols.len());
        for (j, sigma) in cols.iter().enumerate() {
            for (face, sign) in sigma.boundary() {
                if let Some(&i) = row_index.get(&face) {
                    entries.set(i, j, sign);
                }
            }
        }
        IntegerMatrix {
            row_simplices: rows,
            col_simplices: cols,
            entries,
            row_index,
            col_index,
        }
    }

    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }

    pub fn row_of(&self, s: &Simplex) -> Option<usize> {
        self.row_index.get(s).copied()
    }

    pub fn col_of(&self, s: &Simplex) -> Option<usize> {
        self.col_index.get(s).copied()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        *self.entries.get(i, j)
    }

    /// Converts to another integer type.
    pub fn to_scalar<T: IntegerScalar>(&self) -> Matrix<T> {
        self.entries.map(|&v| T::from_int(v))
    }
}

/// `[∂_p]`: rows are the `(p-1)`-simplices, columns the `p`-simplices,
/// both in canonical order.
pub fn boundary_matrix(complex: &SimplicialComplex, p: usize) -> Result<IntegerMatrix> {
    let dim = complex.dim().unwrap_or(0);
    if p < 1 || p > dim {
        return invalid(format!("boundary dimension {p} outside 1..={dim}"));
    }
    Ok(boundary_matrix_unchecked(complex, p))
}

/// `[∂_p]` for any `p ≥ 1`, empty when there are no `p`-simplices.
pub(crate) fn boundary_matrix_unchecked(complex: &SimplicialComplex, p: usize) -> IntegerMatrix {
    let rows = complex.simplices_of_dim(p - 1).cloned().collect();
    let cols = complex.simplices_of_dim(p).cloned().collect();
    IntegerMatrix::boundary_between(rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_bigint::BigInt;

    #[test]
    fn triangle_boundary() {
        let k = SimplicialComplex::from_maximal([[1, 2, 3]]).unwrap();
        let d1 = boundary_matrix(&k, 1).unwrap();
        assert_eq!(
            d1.entries,
            Matrix::from_rows(vec![vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]])
        );
        let d2 = boundary_matrix(&k, 2).unwrap();
        assert_eq!(
            d2.entries,
            Matrix::from_rows(vec![vec![1], vec![-1], vec![1]])
        );
        assert!(boundary_matrix(&k, 3).is_err());
        assert!(boundary_matrix(&k, 0).is_err());
    }

    #[test]
    fn boundary_composition_vanishes_on_mobius() {
        let k = fixtures::mobius(5).unwrap();
        let d1 = boundary_matrix(&k, 1).unwrap().entries;
        let d2 = boundary_matrix(&k, 2).unwrap().entries;
        assert_eq!((d2.rows(), d2.cols()), (10, 5));
        assert!(d1.mul(&d2).is_zero_matrix());
    }

    #[test]
    fn empty_boundary_dimension() {
        let mut k = SimplicialComplex::from_maximal([[1, 2, 3, 4]])
            .unwrap()
            .skeleton(1);
        k.insert_closed(&Simplex::new([5, 6, 7]).unwrap());
        // dimension 2 but [∂_2] has a single column; a skeleton has none
        let d = boundary_matrix_unchecked(&SimplicialComplex::from_maximal([[1, 2]]).unwrap(), 2);
        assert_eq!((d.rows(), d.cols()), (1, 0));
        assert_eq!(boundary_matrix(&k, 2).unwrap().cols(), 1);
    }

    #[test]
    fn bareiss_determinants() {
        let m = Matrix::from_rows(vec![vec![2i64, 0], vec![0, 3]]);
        assert_eq!(determinant(&m), 6);
        let m = Matrix::from_rows(vec![vec![0i64, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(determinant(&m), 2);
        let m: Matrix<BigInt> =
            Matrix::from_rows(vec![vec![1.into(), 2.into()], vec![2.into(), 4.into()]]);
        assert_eq!(determinant(&m), BigInt::from(0));
    }

    #[test]
    fn gauss_jordan_solves_consistent_systems() {
        let q = |n: i64| crate::Rational::from_integer(n.into());
        let a = Matrix::from_rows(vec![
            vec![q(1), q(1), q(0)],
            vec![q(2), q(2), q(0)],
            vec![q(0), q(1), q(2)],
        ]);
        let x = solve_linear(&a, &[q(1), q(2), q(3)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(1), q(2), q(3)]);
        assert_eq!(solve_linear(&a, &[q(1), q(3), q(0)]), None);
        assert_eq!(
            solve_linear(&Matrix::<crate::Rational>::zeros(0, 2), &[]),
            Some(vec![q(0), q(0)])
        );
    }
}
