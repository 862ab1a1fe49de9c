//! Dense two-phase primal simplex with Bland's rule over an exact field.

use crate::matrix::Matrix;
use crate::scalar::ExactField;

/// `min c·x` subject to `A x = b`, `x >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<F> {
    pub a: Matrix<F>,
    pub b: Vec<F>,
    pub c: Vec<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// Pivot or node budget exhausted.
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpResult<F> {
    pub status: LpStatus,
    /// Primal values (meaningful when optimal; best incumbent otherwise).
    pub x: Vec<F>,
    pub objective: F,
    pub pivots: u64,
}

impl<F: ExactField> LinearProgram<F> {
    pub fn new(a: Matrix<F>, b: Vec<F>, c: Vec<F>) -> Self {
        assert_eq!(a.rows(), b.len(), "rhs length");
        assert_eq!(a.cols(), c.len(), "cost length");
        LinearProgram { a, b, c }
    }

    pub fn vars(&self) -> usize {
        self.a.cols()
    }

    pub fn constraints(&self) -> usize {
        self.a.rows()
    }

    /// Objective value of `x`.
    pub fn value(&self, x: &[F]) -> F {
        self.c
            .iter()
            .zip(x)
            .fold(F::zero(), |acc, (c, x)| acc + c.clone() * x.clone())
    }

    /// True if `x` satisfies `A x = b`, `x >= 0` exactly.
    pub fn is_feasible(&self, x: &[F]) -> bool {
        x.iter().all(|v| *v >= F::zero()) && self.a.mul_vec(x) == self.b
    }
}

struct Tableau<F> {
    // rows × (cols + 1); the last column is the right-hand side.
    t: Vec<Vec<F>>,
    basis: Vec<usize>,
    cols: usize,
}

impl<F: ExactField> Tableau<F> {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for v in self.t[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs `c_j - c_B B^{-1} A_j` for columns allowed by `allowed`.
    fn reduced_costs(&self, cost: &[F]) -> Vec<F> {
        let mut d: Vec<F> = cost.to_vec();
        for (r, &bv) in self.basis.iter().enumerate() {
            let cb = &cost[bv];
            if cb.is_zero() {
                continue;
            }
            for (dj, t) in d.iter_mut().zip(&self.t[r]) {
                if !t.is_zero() {
                    *dj = dj.clone() - cb.clone() * t.clone();
                }
            }
        }
        d
    }

    /// Runs Bland's rule on `cost` over columns `< limit`.
    fn optimize(&mut self, cost: &[F], limit: usize, pivots: &mut u64, budget: u64) -> LpStatus {
        loop {
            let d = self.reduced_costs(cost);
            let Some(enter) = (0..limit).find(|&j| d[j] < F::zero()) else {
                return LpStatus::Optimal;
            };
            let mut leave: Option<(usize, F)> = None;
            for r in 0..self.t.len() {
                let a = &self.t[r][enter];
                if *a <= F::zero() {
                    continue;
                }
                let ratio = self.t[r][self.cols].clone() / a.clone();
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return LpStatus::Unbounded;
            };
            if *pivots >= budget {
                return LpStatus::BudgetExceeded;
            }
            *pivots += 1;
            self.pivot(r, enter);
        }
    }
}

/// Solves the program exactly; deterministic for a given input.
pub fn solve<F: ExactField>(lp: &LinearProgram<F>, budget: u64) -> LpResult<F> {
    let (m, n) = (lp.constraints(), lp.vars());
    let cols = n + m;
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let neg = lp.b[i] < F::zero();
        let s = |v: &F| if neg { -v.clone() } else { v.clone() };
        let mut row: Vec<F> = (0..n).map(|j| s(lp.a.get(i, j))).collect();
        row.extend((0..m).map(|k| if k == i { F::one() } else { F::zero() }));
        row.push(s(&lp.b[i]));
        t.push(row);
    }
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        cols,
    };
    let mut pivots = 0u64;
    let fail = |status, pivots| LpResult {
        status,
        x: vec![F::zero(); n],
        objective: F::zero(),
        pivots,
    };

    // Phase 1: minimise the sum of artificials.
    let phase1: Vec<F> = (0..cols)
        .map(|j| if j >= n { F::one() } else { F::zero() })
        .collect();
    match tab.optimize(&phase1, cols, &mut pivots, budget) {
        LpStatus::Optimal => {}
        LpStatus::BudgetExceeded => return fail(LpStatus::BudgetExceeded, pivots),
        s => unreachable!("phase 1 is bounded, got {s:?}"),
    }
    let infeasibility = tab
        .basis
        .iter()
        .enumerate()
        .fold(F::zero(), |acc, (r, &bv)| {
            if bv >= n {
                acc + tab.t[r][cols].clone()
            } else {
                acc
            }
        });
    if !infeasibility.is_zero() {
        return fail(LpStatus::Infeasible, pivots);
    }
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < tab.t.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| !tab.t[r][j].is_zero()) {
                Some(j) => {
                    pivots += 1;
                    tab.pivot(r, j);
                }
                None => {
                    tab.t.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase 2 over the original columns only.
    let mut cost = lp.c.clone();
    cost.extend((0..m).map(|_| F::zero()));
    let status = tab.optimize(&cost, n, &mut pivots, budget);
    if status != LpStatus::Optimal {
        return fail(status, pivots);
    }
    let mut x = vec![F::zero(); n];
    for (r, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.t[r][cols].clone();
        }
    }
    let objective = lp.value(&x);
    LpResult {
        status,
        x,
        objective,
        pivots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn lp(a: Vec<Vec<i64>>, b: Vec<i64>, c: Vec<i64>) -> LinearProgram<Rational> {
        LinearProgram::new(
            Matrix::from_rows(a).map(|&v| q(v, 1)),
            b.into_iter().map(|v| q(v, 1)).collect(),
            c.into_iter().map(|v| q(v, 1)).collect(),
        )
    }

    #[test]
    fn small_optimum() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6  -> x = 8/5, y = 6/5.
        let p = lp(
            vec![vec![1, 2, 1, 0], vec![3, 1, 0, 1]],
            vec![4, 6],
            vec![-1, -1, 0, 0],
        );
        let r = solve(&p, 1000);
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.objective, q(-14, 5));
        assert_eq!(&r.x[..2], &[q(8, 5), q(6, 5)]);
        assert!(p.is_feasible(&r.x));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = lp(vec![vec![1, 1]], vec![-1], vec![1, 1]);
        assert_eq!(solve(&p, 100).status, LpStatus::Infeasible);
        let p = lp(vec![vec![1, -1]], vec![1], vec![0, -1]);
        assert_eq!(solve(&p, 100).status, LpStatus::Unbounded);
        let p = lp(
            vec![vec![1, 2, 1, 0], vec![3, 1, 0, 1]],
            vec![4, 6],
            vec![-1, -1, 0, 0],
        );
        assert_eq!(solve(&p, 0).status, LpStatus::BudgetExceeded);
    }

    #[test]
    fn redundant_rows_and_negative_rhs() {
        let p = lp(
            vec![vec![1, 1, 0], vec![2, 2, 0], vec![0, -1, -1]],
            vec![2, 4, -1],
            vec![1, 2, 3],
        );
        let r = solve(&p, 100);
        assert_eq!(r.status, LpStatus::Optimal);
        assert!(p.is_feasible(&r.x));
        // x1 + x2 = 2, x2 + x3 = 1: best is x1 = 1, x2 = 1, x3 = 0 (cost 3) vs x1 = 2, x3 = 1 (cost 5).
        assert_eq!(r.objective, q(3, 1));
    }

    #[test]
    fn degenerate_problem_terminates() {
        // A classic cycling example for the textbook rule (Beale).
        let a = vec![
            vec![
                q(1, 4),
                q(-8, 1),
                q(-1, 1),
                q(9, 1),
                q(1, 1),
                q(0, 1),
                q(0, 1),
            ],
            vec![
                q(1, 2),
                q(-12, 1),
                q(-1, 2),
                q(3, 1),
                q(0, 1),
                q(1, 1),
                q(0, 1),
            ],
            vec![
                q(0, 1),
                q(0, 1),
                q(1, 1),
                q(0, 1),
                q(0, 1),
                q(0, 1),
                q(1, 1),
            ],
        ];
        let p = LinearProgram::new(
            Matrix::from_rows(a),
            vec![q(0, 1), q(0, 1), q(1, 1)],
            vec![
                q(-3, 4),
                q(20, 1),
                q(-1, 2),
                q(6, 1),
                q(0, 1),
                q(0, 1),
                q(0, 1),
            ],
        );
        let r = solve(&p, 1000);
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.objective, q(-5, 4));
    }
}
