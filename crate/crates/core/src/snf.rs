//! Smith normal form over a Euclidean integer type.

use crate::matrix::{IntegerMatrix, Matrix};
use crate::scalar::IntegerScalar;

/// `U·A·V = D` with `D` diagonal and `d1 | d2 | ... | dr`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult<T> {
    pub diag: Vec<T>,
    pub rank: usize,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

// row_i += k * row_j
fn add_row<T: IntegerScalar>(m: &mut Matrix<T>, i: usize, j: usize, k: &T) {
    for c in 0..m.cols() {
        let v = m.get(i, c).clone() + k.clone() * m.get(j, c).clone();
        m.set(i, c, v);
    }
}

// col_i += k * col_j
fn add_col<T: IntegerScalar>(m: &mut Matrix<T>, i: usize, j: usize, k: &T) {
    for r in 0..m.rows() {
        let v = m.get(r, i).clone() + k.clone() * m.get(r, j).clone();
        m.set(r, i, v);
    }
}

fn negate_row<T: IntegerScalar>(m: &mut Matrix<T>, i: usize) {
    for c in 0..m.cols() {
        let v = -m.get(i, c).clone();
        m.set(i, c, v);
    }
}

/// Smallest nonzero entry (by absolute value) in the trailing block, first in row-major order.
fn min_pivot<T: IntegerScalar>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                let done = abs.is_one();
                best = Some((i, j, abs));
                if done {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Computes the Smith normal form with exact arithmetic.
///
/// Pivots are chosen with minimal absolute value, which keeps coefficient
/// growth small and makes the result deterministic.
pub fn smith_normal_form<T: IntegerScalar>(m: &Matrix<T>) -> SnfResult<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_pivot(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -(a.get(i, t).clone() / a.get(t, t).clone());
                add_row(&mut a, i, t, &q);
                add_row(&mut u, i, t, &q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -(a.get(t, j).clone() / a.get(t, t).clone());
                add_col(&mut a, j, t, &q);
                add_col(&mut v, j, t, &q);
                dirty |= !a.get(t, j).is_zero();
            }
            if !dirty {
                // Enforce divisibility: pull an offending row into row t.
                let d = a.get(t, t).clone();
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !(a.get(i, j).clone() % d.clone()).is_zero()));
                match bad {
                    Some(i) => {
                        add_row(&mut a, t, i, &T::one());
                        add_row(&mut u, t, i, &T::one());
                    }
                    None => break,
                }
            }
            // Re-pivot on the smallest entry of row t / column t.
            let mut best = (t, t);
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() && a.get(i, t).abs() < a.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() && a.get(t, j).abs() < a.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            a.swap_rows(t, best.0);
            u.swap_rows(t, best.0);
            a.swap_cols(t, best.1);
            v.swap_cols(t, best.1);
        }
        if a.get(t, t).is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut u, t);
        }
        t += 1;
    }
    let diag: Vec<T> = (0..t).map(|i| a.get(i, i).clone()).collect();
    SnfResult {
        rank: diag.len(),
        diag,
        u,
        v,
    }
}

/// Smith normal form of a labelled boundary matrix over `T`.
pub fn smith_normal_form_of<T: IntegerScalar>(m: &IntegerMatrix) -> SnfResult<T> {
    smith_normal_form(&m.to_scalar::<T>())
}

impl<T: IntegerScalar> SnfResult<T> {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<T> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.diag.iter().any(|d| !d.is_one())
    }

    /// An integer solution `y` of `A·y = rhs`, if one exists.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        let ur = self.u.mul_vec(rhs);
        let mut z = vec![T::zero(); self.v.rows()];
        for (i, r) in ur.iter().enumerate() {
            if i < self.rank {
                if !(r.clone() % self.diag[i].clone()).is_zero() {
                    return None;
                }
                z[i] = r.clone() / self.diag[i].clone();
            } else if !r.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&z))
    }
}
