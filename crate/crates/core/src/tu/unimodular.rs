//! Total unimodularity by chordless b-odd cycles or by minors.

use crate::matrix::{determinant, Matrix};

use super::graph::{find_chordless_b_odd_circuit, Circuit, SearchOutcome, SignedBipartiteGraph};

/// Largest square order the determinant strategy enumerates by default.
pub const DEFAULT_MAX_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TuStrategy {
    /// Search the bipartite graph for a chordless b-odd cycle.
    Circuit,
    /// Enumerate square submatrices up to [`DEFAULT_MAX_ORDER`].
    Determinant,
}

/// Why a matrix is not totally unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TuWitness {
    /// An entry outside `{0, ±1}`.
    Entry { row: usize, col: usize, value: i64 },
    /// A chordless b-odd circuit of the bipartite graph (rows, cols).
    Circuit(Circuit),
    /// A square submatrix with `|det| >= 2`.
    Submatrix {
        rows: Vec<usize>,
        cols: Vec<usize>,
        det: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TuVerdict {
    Unimodular,
    NotUnimodular(TuWitness),
    /// Budget or order limit reached without a witness.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuReport {
    pub verdict: TuVerdict,
    pub strategy: TuStrategy,
    /// Search steps (circuit) or determinants evaluated (determinant).
    pub work: u64,
}

impl TuReport {
    pub fn decided(&self) -> Option<bool> {
        match self.verdict {
            TuVerdict::Unimodular => Some(true),
            TuVerdict::NotUnimodular(_) => Some(false),
            TuVerdict::Inconclusive => None,
        }
    }
}

fn bad_entry(m: &Matrix<i64>) -> Option<TuWitness> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = *m.get(i, j);
            if !(-1..=1).contains(&v) {
                return Some(TuWitness::Entry {
                    row: i,
                    col: j,
                    value: v,
                });
            }
        }
    }
    None
}

pub fn is_totally_unimodular(m: &Matrix<i64>, strategy: TuStrategy, budget: u64) -> TuReport {
    if let Some(w) = bad_entry(m) {
        return TuReport {
            verdict: TuVerdict::NotUnimodular(w),
            strategy,
            work: 0,
        };
    }
    match strategy {
        TuStrategy::Circuit => {
            let g = SignedBipartiteGraph::from_matrix(m).expect("entries checked");
            let (outcome, work) = find_chordless_b_odd_circuit(&g, budget);
            let verdict = match outcome {
                SearchOutcome::Found(c) => TuVerdict::NotUnimodular(TuWitness::Circuit(c)),
                SearchOutcome::Absent => TuVerdict::Unimodular,
                SearchOutcome::Inconclusive => TuVerdict::Inconclusive,
            };
            TuReport {
                verdict,
                strategy,
                work,
            }
        }
        TuStrategy::Determinant => determinant_tu(m, DEFAULT_MAX_ORDER, budget),
    }
}

/// Checks every square submatrix up to order `max_order`, smallest orders
/// first. Conclusive only when `max_order` covers the smaller dimension.
pub fn determinant_tu(m: &Matrix<i64>, max_order: usize, budget: u64) -> TuReport {
    let strategy = TuStrategy::Determinant;
    if let Some(w) = bad_entry(m) {
        return TuReport {
            verdict: TuVerdict::NotUnimodular(w),
            strategy,
            work: 0,
        };
    }
    let top = m.rows().min(m.cols());
    let mut work = 0u64;
    for k in 2..=top.min(max_order) {
        let mut cols: Vec<usize> = (0..k).collect();
        loop {
            let support: Vec<usize> = (0..m.rows())
                .filter(|&i| cols.iter().any(|&j| *m.get(i, j) != 0))
                .collect();
            if support.len() >= k {
                let mut pick: Vec<usize> = (0..k).collect();
                loop {
                    let rows: Vec<usize> = pick.iter().map(|&i| support[i]).collect();
                    work += 1;
                    if work > budget {
                        return TuReport {
                            verdict: TuVerdict::Inconclusive,
                            strategy,
                            work: budget,
                        };
                    }
                    let det = determinant(&m.select(&rows, &cols));
                    if det.abs() >= 2 {
                        let w = TuWitness::Submatrix { rows, cols, det };
                        return TuReport {
                            verdict: TuVerdict::NotUnimodular(w),
                            strategy,
                            work,
                        };
                    }
                    if !next_combination(&mut pick, support.len()) {
                        break;
                    }
                }
            }
            if !next_combination(&mut cols, m.cols()) {
                break;
            }
        }
    }
    let verdict = if top <= max_order {
        TuVerdict::Unimodular
    } else {
        TuVerdict::Inconclusive
    };
    TuReport {
        verdict,
        strategy,
        work,
    }
}

/// Next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
