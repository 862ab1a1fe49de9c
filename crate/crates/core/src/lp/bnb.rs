//! Depth-first branch and bound on top of the exact simplex.

use crate::matrix::Matrix;
use crate::scalar::ExactField;

use super::simplex::{solve, LinearProgram, LpResult, LpStatus};

/// Pivot cap for each relaxation solved inside the tree.
pub const NODE_PIVOT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
enum Bound<F> {
    Upper(usize, F),
    Lower(usize, F),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IlpResult<F> {
    /// `BudgetExceeded` keeps the best incumbent in `x`, if any was found.
    pub status: LpStatus,
    pub x: Option<Vec<F>>,
    pub objective: Option<F>,
    /// Relaxations solved.
    pub nodes: u64,
}

/// Adds each bound as a row with its own slack column.
fn with_bounds<F: ExactField>(lp: &LinearProgram<F>, bounds: &[Bound<F>]) -> LinearProgram<F> {
    if bounds.is_empty() {
        return lp.clone();
    }
    let (m, n, k) = (lp.constraints(), lp.vars(), bounds.len());
    let mut a = Matrix::zeros(m + k, n + k);
    for i in 0..m {
        for j in 0..n {
            a.set(i, j, lp.a.get(i, j).clone());
        }
    }
    let mut b = lp.b.clone();
    for (t, bound) in bounds.iter().enumerate() {
        let (j, v, slack) = match bound {
            Bound::Upper(j, v) => (*j, v, F::one()),
            Bound::Lower(j, v) => (*j, v, -F::one()),
        };
        a.set(m + t, j, F::one());
        a.set(m + t, n + t, slack);
        b.push(v.clone());
    }
    let mut c = lp.c.clone();
    c.extend((0..k).map(|_| F::zero()));
    LinearProgram::new(a, b, c)
}

/// Most fractional variable, lowest index on ties.
fn branching_variable<F: ExactField>(x: &[F]) -> Option<usize> {
    let mut best: Option<(usize, F)> = None;
    for (j, v) in x.iter().enumerate() {
        let f = v.fractionality();
        if f.is_zero() {
            continue;
        }
        if best.as_ref().is_none_or(|(_, b)| f > *b) {
            best = Some((j, f));
        }
    }
    best.map(|(j, _)| j)
}

/// Minimises over integral `x`; `node_budget` caps the relaxations solved.
pub fn solve_integer<F: ExactField>(lp: &LinearProgram<F>, node_budget: u64) -> IlpResult<F> {
    let n = lp.vars();
    let mut incumbent: Option<(Vec<F>, F)> = None;
    let mut stack: Vec<Vec<Bound<F>>> = vec![Vec::new()];
    let mut nodes = 0u64;
    let mut status = LpStatus::Optimal;
    let mut root_status = None;
    while let Some(bounds) = stack.pop() {
        if nodes >= node_budget {
            status = LpStatus::BudgetExceeded;
            break;
        }
        nodes += 1;
        let relaxed: LpResult<F> = solve(&with_bounds(lp, &bounds), NODE_PIVOT_BUDGET);
        root_status.get_or_insert(relaxed.status);
        match relaxed.status {
            LpStatus::Optimal => {}
            LpStatus::Infeasible => continue,
            LpStatus::Unbounded => {
                if bounds.is_empty() {
                    return IlpResult {
                        status: LpStatus::Unbounded,
                        x: None,
                        objective: None,
                        nodes,
                    };
                }
                continue;
            }
            LpStatus::BudgetExceeded => {
                status = LpStatus::BudgetExceeded;
                continue;
            }
        }
        if incumbent
            .as_ref()
            .is_some_and(|(_, best)| relaxed.objective >= *best)
        {
            continue;
        }
        let x: Vec<F> = relaxed.x[..n].to_vec();
        match branching_variable(&x) {
            None => incumbent = Some((x, relaxed.objective)),
            Some(j) => {
                let mut up = bounds.clone();
                up.push(Bound::Lower(j, x[j].ceil()));
                let mut down = bounds;
                down.push(Bound::Upper(j, x[j].floor()));
                stack.push(up);
                stack.push(down);
            }
        }
    }
    if status == LpStatus::Optimal && incumbent.is_none() {
        status = match root_status {
            Some(LpStatus::Unbounded) => LpStatus::Unbounded,
            _ => LpStatus::Infeasible,
        };
    }
    let (x, objective) = match incumbent {
        Some((x, v)) => (Some(x), Some(v)),
        None => (None, None),
    };
    IlpResult {
        status,
        x,
        objective,
        nodes,
    }
}
